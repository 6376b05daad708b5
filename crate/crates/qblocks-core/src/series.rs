//! Truncated Laurent series in q^(1/2) with exact coefficients.
//!
//! Exponents are stored doubled (the key `e` represents q^(e/2)), which keeps
//! all the half-integer powers of the blocks exact without a branch choice.
//! Every series carries an explicit truncation: a series with `Trunc::Order(T)`
//! promises that every coefficient with doubled exponent ≤ T is known exactly
//! and says nothing about larger exponents. Reading past the truncation is an
//! error, never a silent zero. `Trunc::Entire` marks exact Laurent polynomials
//! (all unstated coefficients are genuinely zero).

use crate::field::{FieldElement, NumberField};
use crate::{CoreError, Result};
use rug::Rational;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trunc {
    /// An exact Laurent polynomial.
    Entire,
    /// Coefficients known exactly for doubled exponents ≤ T.
    Order(i64),
}

impl Trunc {
    pub fn min(self, other: Trunc) -> Trunc {
        match (self, other) {
            (Trunc::Entire, t) | (t, Trunc::Entire) => t,
            (Trunc::Order(a), Trunc::Order(b)) => Trunc::Order(a.min(b)),
        }
    }

    pub fn covers(self, e: i64) -> bool {
        match self {
            Trunc::Entire => true,
            Trunc::Order(t) => e <= t,
        }
    }

    pub fn order(self) -> Option<i64> {
        match self {
            Trunc::Entire => None,
            Trunc::Order(t) => Some(t),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HalfLaurentSeries {
    field: NumberField,
    /// doubled exponent → nonzero coefficient
    coeffs: BTreeMap<i64, FieldElement>,
    trunc: Trunc,
}

impl HalfLaurentSeries {
    pub fn zero(field: NumberField, trunc: Trunc) -> Self {
        HalfLaurentSeries { field, coeffs: BTreeMap::new(), trunc }
    }

    pub fn one(field: NumberField, trunc: Trunc) -> Self {
        Self::monomial(field, 0, FieldElement::one(field), trunc)
    }

    pub fn monomial(field: NumberField, e2: i64, c: FieldElement, trunc: Trunc) -> Self {
        let mut s = Self::zero(field, trunc);
        if !c.is_zero() && trunc.covers(e2) {
            s.coeffs.insert(e2, c.lift(field).expect("field mismatch"));
        }
        s
    }

    /// q^(e2/2) as an exact monomial.
    pub fn q_pow(field: NumberField, e2: i64) -> Self {
        Self::monomial(field, e2, FieldElement::one(field), Trunc::Entire)
    }

    pub fn field(&self) -> NumberField {
        self.field
    }

    pub fn trunc(&self) -> Trunc {
        self.trunc
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &FieldElement)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero_known(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Minimum doubled exponent with a nonzero known coefficient.
    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_stored_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// The coefficient of q^(e2/2); an error past the truncation.
    pub fn coeff(&self, e2: i64) -> Result<FieldElement> {
        if !self.trunc.covers(e2) {
            return Err(CoreError::TruncationExceeded {
                wanted: e2,
                have: self.trunc.order().unwrap_or(i64::MAX),
            });
        }
        Ok(self.coeffs.get(&e2).cloned().unwrap_or_else(|| FieldElement::zero(self.field)))
    }

    pub fn set_coeff(&mut self, e2: i64, c: FieldElement) {
        if !self.trunc.covers(e2) {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&e2);
        } else {
            self.coeffs.insert(e2, c.lift(self.field).expect("field mismatch"));
        }
    }

    pub fn add_to_coeff(&mut self, e2: i64, c: &FieldElement) {
        if !self.trunc.covers(e2) || c.is_zero() {
            return;
        }
        let entry = self
            .coeffs
            .entry(e2)
            .or_insert_with(|| FieldElement::zero(self.field));
        *entry += &c.lift(self.field).expect("field mismatch");
        if entry.is_zero() {
            self.coeffs.remove(&e2);
        }
    }

    /// Restrict to a (smaller) truncation order.
    pub fn truncate_to(&self, trunc: Trunc) -> Self {
        let t = self.trunc.min(trunc);
        let mut s = Self::zero(self.field, t);
        for (&e, c) in &self.coeffs {
            if t.covers(e) {
                s.coeffs.insert(e, c.clone());
            }
        }
        s
    }

    /// Move the series into a larger coefficient field.
    pub fn lift(&self, field: NumberField) -> Result<Self> {
        let f = self.field.join(field)?;
        let mut s = Self::zero(f, self.trunc);
        for (&e, c) in &self.coeffs {
            s.coeffs.insert(e, c.lift(f)?);
        }
        Ok(s)
    }

    fn join_field(&self, other: &Self) -> Result<NumberField> {
        self.field.join(other.field)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let field = self.join_field(other)?;
        let t = self.trunc.min(other.trunc);
        let mut s = self.truncate_to(t).lift(field)?;
        for (&e, c) in &other.coeffs {
            if t.covers(e) {
                s.add_to_coeff(e, c);
            }
        }
        Ok(s)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        for c in s.coeffs.values_mut() {
            *c = -&*c;
        }
        s
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Self> {
        let field = self.field.join(c.field)?;
        let mut s = Self::zero(field, self.trunc);
        if c.is_zero() {
            return Ok(s);
        }
        let cl = c.lift(field)?;
        for (&e, x) in &self.coeffs {
            s.coeffs.insert(e, &x.lift(field)? * &cl);
        }
        s.coeffs.retain(|_, v| !v.is_zero());
        Ok(s)
    }

    pub fn scale_rat(&self, r: &Rational) -> Self {
        self.scale(&FieldElement::from_rat(NumberField::Rational, r.clone()))
            .expect("rational scaling cannot mismatch")
    }

    /// Multiply by q^(d/2): shifts exponents and the truncation together.
    pub fn shift(&self, d: i64) -> Self {
        let trunc = match self.trunc {
            Trunc::Entire => Trunc::Entire,
            Trunc::Order(t) => Trunc::Order(t + d),
        };
        let mut s = Self::zero(self.field, trunc);
        for (&e, c) in &self.coeffs {
            s.coeffs.insert(e + d, c.clone());
        }
        s
    }

    /// Valuation used in the product truncation rule: the exact minimum
    /// degree when a term is known, otherwise the optimistic bound T+1 for a
    /// series with no known term (all its known coefficients vanish).
    fn valuation_bound(&self) -> Option<i64> {
        match (self.min_degree(), self.trunc) {
            (Some(v), _) => Some(v),
            (None, Trunc::Order(t)) => Some(t + 1),
            (None, Trunc::Entire) => None, // exactly zero
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let field = self.join_field(other)?;
        // exact zero short-circuits
        let (va, vb) = match (self.valuation_bound(), other.valuation_bound()) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                let t = self.trunc.min(other.trunc);
                return Ok(Self::zero(field, t));
            }
        };
        let trunc = match (self.trunc, other.trunc) {
            (Trunc::Entire, Trunc::Entire) => Trunc::Entire,
            (Trunc::Order(ta), Trunc::Entire) => Trunc::Order(ta + vb),
            (Trunc::Entire, Trunc::Order(tb)) => Trunc::Order(tb + va),
            (Trunc::Order(ta), Trunc::Order(tb)) => Trunc::Order((ta + vb).min(tb + va)),
        };
        let mut s = Self::zero(field, trunc);
        for (&ea, ca) in &self.coeffs {
            let ca = ca.lift(field)?;
            for (&eb, cb) in &other.coeffs {
                let e = ea + eb;
                if !trunc.covers(e) {
                    break; // BTreeMap iterates in increasing order
                }
                s.add_to_coeff(e, &(&ca * &cb.lift(field)?));
            }
        }
        Ok(s)
    }

    /// Series division. The divisor needs a known nonzero leading term.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let field = self.join_field(other)?;
        let v = other.min_degree().ok_or(CoreError::DivisionByZeroSeries)?;
        let lead = other.coeff(v)?;
        let lead_inv = lead.inv()?;
        // result truncation: standard quotient validity
        let va = self.valuation_bound().unwrap_or(0);
        let trunc = match (self.trunc, other.trunc) {
            (Trunc::Entire, Trunc::Entire) => {
                // only exact when the division is exact; compute generously and check
                Trunc::Order(
                    self.max_stored_degree().unwrap_or(0) - v
                        + other.max_stored_degree().unwrap_or(0).max(8),
                )
            }
            (Trunc::Order(ta), Trunc::Entire) => Trunc::Order(ta - v),
            (Trunc::Entire, Trunc::Order(tb)) => {
                Trunc::Order(tb - 2 * v + self.min_degree().unwrap_or(0))
            }
            (Trunc::Order(ta), Trunc::Order(tb)) => {
                Trunc::Order((ta - v).min(tb - 2 * v + va))
            }
        };
        let tmax = match trunc {
            Trunc::Order(t) => t,
            Trunc::Entire => unreachable!(),
        };
        let mut quot = Self::zero(field, trunc);
        let mut rem = self.lift(field)?;
        let start = va - v;
        for e in start..=tmax {
            let c = match rem.coeffs.get(&(e + v)) {
                Some(c) => c.clone(),
                None => continue,
            };
            let qc = &c * &lead_inv.lift(field)?;
            quot.set_coeff(e, qc.clone());
            // rem -= qc * q^{e/2} * other
            for (&eo, co) in &other.coeffs {
                let target = e + eo;
                if target > tmax + v {
                    break;
                }
                let delta = -&(&qc * &co.lift(field)?);
                let entry = rem
                    .coeffs
                    .entry(target)
                    .or_insert_with(|| FieldElement::zero(field));
                *entry += &delta;
                if entry.is_zero() {
                    rem.coeffs.remove(&target);
                }
            }
        }
        Ok(quot)
    }

    /// Substitute q ↦ 1/q. Only well-defined for exact Laurent polynomials.
    pub fn invert_variable(&self) -> Result<Self> {
        if self.trunc != Trunc::Entire {
            return Err(CoreError::NotImplemented(
                "q -> 1/q substitution on a truncated series".into(),
            ));
        }
        let mut s = Self::zero(self.field, Trunc::Entire);
        for (&e, c) in &self.coeffs {
            s.coeffs.insert(-e, c.clone());
        }
        Ok(s)
    }

    /// Coefficients agree everywhere both truncations are valid.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let t = self.trunc.min(other.trunc);
        let a = self.truncate_to(t);
        let b = other.truncate_to(t);
        a.coeffs == b.coeffs
    }

    /// True when every known coefficient vanishes (to the common truncation).
    pub fn is_zero_to_truncation(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Display with q^(k) / q^(k/2) exponent formatting, lowest degree first.
    pub fn to_display(&self, max_terms: usize) -> String {
        let mut out = String::new();
        for (i, (&e, c)) in self.coeffs.iter().enumerate() {
            if i >= max_terms {
                out.push_str(" + ...");
                break;
            }
            if i > 0 {
                out.push_str(" + ");
            }
            let pow = if e % 2 == 0 {
                format!("q^{}", e / 2)
            } else {
                format!("q^{}/2", e)
            };
            out.push_str(&format!("({}){}", c, pow));
        }
        if self.coeffs.is_empty() {
            out.push('0');
        }
        if let Trunc::Order(t) = self.trunc {
            out.push_str(&format!(" + O(q^{}/2)", t + 1));
        }
        out
    }
}

impl fmt::Display for HalfLaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_display(24))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn qrat() -> NumberField {
        NumberField::Rational
    }

    fn poly(pairs: &[(i64, i64)]) -> HalfLaurentSeries {
        let mut s = HalfLaurentSeries::zero(qrat(), Trunc::Entire);
        for &(e, c) in pairs {
            s.set_coeff(e, FieldElement::from_i64(qrat(), c));
        }
        s
    }

    #[test]
    fn difference_of_squares() {
        // (1−q)(1+q) = 1 − q²
        let a = poly(&[(0, 1), (2, -1)]);
        let b = poly(&[(0, 1), (2, 1)]);
        assert_eq!(a.mul(&b).unwrap(), poly(&[(0, 1), (4, -1)]));
    }

    #[test]
    fn half_exponent_bookkeeping() {
        // q^(1/2) · q^(1/2) = q
        let h = HalfLaurentSeries::q_pow(qrat(), 1);
        assert_eq!(h.mul(&h).unwrap(), HalfLaurentSeries::q_pow(qrat(), 2));
    }

    #[test]
    fn truncation_rule() {
        // (q^3 + O(q^11)) · (q^2 + O(q^6)) is valid to O(q^9): min(10+4, 12+6)=14 doubled...
        let mut a = HalfLaurentSeries::zero(qrat(), Trunc::Order(20));
        a.set_coeff(6, FieldElement::from_i64(qrat(), 1));
        let mut b = HalfLaurentSeries::zero(qrat(), Trunc::Order(12));
        b.set_coeff(4, FieldElement::from_i64(qrat(), 1));
        let p = a.mul(&b).unwrap();
        assert_eq!(p.trunc(), Trunc::Order(18)); // min(20+4, 12+6)
        assert_eq!(p.coeff(10).unwrap(), FieldElement::from_i64(qrat(), 1));
        assert!(p.coeff(19).is_err());
    }

    #[test]
    fn read_past_truncation_is_error() {
        let s = HalfLaurentSeries::one(qrat(), Trunc::Order(4));
        assert!(matches!(
            s.coeff(5),
            Err(CoreError::TruncationExceeded { wanted: 5, have: 4 })
        ));
    }

    #[test]
    fn division_roundtrip() {
        let a = poly(&[(0, 1), (2, -3), (4, 5), (7, -2)]);
        let b = poly(&[(0, 2), (1, 1), (3, -1)]).truncate_to(Trunc::Order(30));
        let q = a.mul(&b).unwrap().div(&b).unwrap();
        assert!(q.agrees_with(&a));
    }

    #[test]
    fn invert_variable_polynomial() {
        let a = poly(&[(-3, 2), (0, 1), (5, -7)]);
        let inv = a.invert_variable().unwrap();
        assert_eq!(inv, poly(&[(3, 2), (0, 1), (-5, -7)]));
        let t = a.truncate_to(Trunc::Order(9));
        assert!(t.invert_variable().is_err());
    }

    #[test]
    fn scaling_and_fields() {
        let a = poly(&[(0, 1), (2, 2)]);
        let g = FieldElement::generator(NumberField::SqrtM3).unwrap();
        let s = a.scale(&g).unwrap();
        assert_eq!(s.field(), NumberField::SqrtM3);
        assert_eq!(s.coeff(2).unwrap(), g.scale(&rat(2, 1)));
    }
}
