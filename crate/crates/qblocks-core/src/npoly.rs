//! Polynomials in the formal color variable n, over a number field.
//!
//! These are the coefficients of the ħ-power series Φₙ(ħ): the WKB ansatz
//! produces, at each order in ħ, a polynomial in n (in fact in n²).

use crate::field::{FieldElement, NumberField};
use crate::rational::rat_int;
use crate::Result;
use rug::Rational;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub struct NPolynomial {
    pub field: NumberField,
    /// coefficient of n^i at index i; no trailing zeros
    c: Vec<FieldElement>,
}

impl NPolynomial {
    pub fn zero(field: NumberField) -> Self {
        NPolynomial { field, c: Vec::new() }
    }

    pub fn constant(x: FieldElement) -> Self {
        let field = x.field;
        let mut p = NPolynomial { field, c: vec![x] };
        p.normalize();
        p
    }

    /// Construct from a plain coefficient vector (index = power of n).
    pub fn from_coeffs(field: NumberField, coeffs: Vec<FieldElement>) -> Self {
        let mut p = NPolynomial {
            field,
            c: coeffs
                .into_iter()
                .map(|c| c.lift(field).expect("field mismatch"))
                .collect(),
        };
        p.normalize();
        p
    }

    pub fn monomial(field: NumberField, deg: usize, x: FieldElement) -> Self {
        let mut c = vec![FieldElement::zero(field); deg + 1];
        c[deg] = x.lift(field).expect("field mismatch");
        let mut p = NPolynomial { field, c };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.c.last().map(|x| x.is_zero()).unwrap_or(false) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.c.get(i).cloned().unwrap_or_else(|| FieldElement::zero(self.field))
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.c
    }

    pub fn lift(&self, field: NumberField) -> Result<Self> {
        let f = self.field.join(field)?;
        Ok(NPolynomial {
            field: f,
            c: self.c.iter().map(|x| x.lift(f)).collect::<Result<Vec<_>>>()?,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let field = self.field.join(other.field)?;
        let len = self.c.len().max(other.c.len());
        let mut c = Vec::with_capacity(len);
        for i in 0..len {
            c.push(&self.coeff(i).lift(field)? + &other.coeff(i).lift(field)?);
        }
        let mut p = NPolynomial { field, c };
        p.normalize();
        Ok(p)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        NPolynomial { field: self.field, c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let field = self.field.join(other.field)?;
        if self.is_zero() || other.is_zero() {
            return Ok(NPolynomial::zero(field));
        }
        let mut c = vec![FieldElement::zero(field); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let a = a.lift(field)?;
            for (j, b) in other.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                c[i + j] += &(&a * &b.lift(field)?);
            }
        }
        let mut p = NPolynomial { field, c };
        p.normalize();
        Ok(p)
    }

    pub fn scale(&self, x: &FieldElement) -> Result<Self> {
        let field = self.field.join(x.field)?;
        let xl = x.lift(field)?;
        let mut p = NPolynomial {
            field,
            c: self
                .c
                .iter()
                .map(|a| Ok(&a.lift(field)? * &xl))
                .collect::<Result<Vec<_>>>()?,
        };
        p.normalize();
        Ok(p)
    }

    pub fn scale_rat(&self, r: &Rational) -> Self {
        NPolynomial { field: self.field, c: self.c.iter().map(|a| a.scale(r)).collect() }
    }

    /// Horner evaluation at an integer color.
    pub fn eval_int(&self, n: i64) -> FieldElement {
        let nf = FieldElement::from_rat(self.field, rat_int(n));
        let mut acc = FieldElement::zero(self.field);
        for a in self.c.iter().rev() {
            acc = &(&acc * &nf) + a;
        }
        acc
    }

    /// Substitute n ↦ n + s.
    pub fn shift_n(&self, s: i64) -> Self {
        let deg = match self.degree() {
            None => return self.clone(),
            Some(d) => d,
        };
        let mut c = vec![FieldElement::zero(self.field); deg + 1];
        for (k, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            // (n+s)^k = Σ_j C(k,j) s^(k−j) n^j, walking j from k down to 0
            let mut coef = Rational::from(1);
            let mut j = k as i64;
            loop {
                c[j as usize] += &a.scale(&coef);
                if j == 0 {
                    break;
                }
                coef *= Rational::from((j, k as i64 - j + 1));
                coef *= Rational::from(s);
                j -= 1;
            }
        }
        let mut p = NPolynomial { field: self.field, c };
        p.normalize();
        p
    }

    /// True when only even powers of n appear.
    pub fn is_even(&self) -> bool {
        self.c.iter().enumerate().all(|(i, a)| i % 2 == 0 || a.is_zero())
    }
}

impl fmt::Display for NPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            if i == 0 {
                write!(f, "({a})")?;
            } else {
                write!(f, "({a})n^{i}")?;
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn horner_agrees_with_expansion() {
        // p(n) = 2n³ − n + 5/3
        let f = NumberField::Rational;
        let p = NPolynomial {
            field: f,
            c: vec![
                FieldElement::from_rat(f, rat(5, 3)),
                FieldElement::from_i64(f, -1),
                FieldElement::zero(f),
                FieldElement::from_i64(f, 2),
            ],
        };
        let v = p.eval_int(4);
        assert_eq!(v.to_rat().unwrap(), rat(2 * 64 * 3 - 4 * 3 + 5, 3));
    }

    #[test]
    fn shift_consistency() {
        let f = NumberField::Rational;
        let p = NPolynomial::monomial(f, 3, FieldElement::from_i64(f, 1));
        let q = p.shift_n(2);
        for n in -3..4 {
            assert_eq!(q.eval_int(n), p.eval_int(n + 2));
        }
    }
}
