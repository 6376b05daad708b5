//! The three concrete number fields of the artifact.
//!
//! Every exact coefficient in this crate lives in one of ℚ, ℚ(√−3), or the
//! cubic field ℚ(ξ) with ξ³ − ξ² + 1 = 0 (discriminant −23, the trace field
//! of the 5₂ knot). Elements are stored as coefficient vectors in the power
//! basis of the generator and reduced modulo the minimal polynomial; there is
//! deliberately no generic field-tower machinery.

use crate::rational::{rat_from_string, rat_to_string};
use crate::{CoreError, Result};
use rug::Rational;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NumberField {
    /// ℚ.
    Rational,
    /// ℚ(√−3), generator g with g² = −3.
    SqrtM3,
    /// ℚ(ξ), generator ξ with ξ³ = ξ² − 1.
    XiCubic,
}

impl NumberField {
    pub fn degree(self) -> usize {
        match self {
            NumberField::Rational => 1,
            NumberField::SqrtM3 => 2,
            NumberField::XiCubic => 3,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            NumberField::Rational => "RAT",
            NumberField::SqrtM3 => "SQRT_M3",
            NumberField::XiCubic => "XI_CUBIC",
        }
    }

    pub fn from_tag(s: &str) -> Result<Self> {
        match s {
            "RAT" => Ok(NumberField::Rational),
            "SQRT_M3" => Ok(NumberField::SqrtM3),
            "XI_CUBIC" => Ok(NumberField::XiCubic),
            other => Err(CoreError::Parse(format!("unknown field tag {other:?}"))),
        }
    }

    /// The smaller field embeds in nothing here: mixing fields is an error,
    /// except that ℚ embeds everywhere.
    pub fn join(self, other: NumberField) -> Result<NumberField> {
        if self == other {
            return Ok(self);
        }
        match (self, other) {
            (NumberField::Rational, f) | (f, NumberField::Rational) => Ok(f),
            (a, b) => Err(CoreError::FieldMismatch(a, b)),
        }
    }

    /// Trace of g^k over ℚ for k = 0, 1, 2 (power sums of the conjugate
    /// roots of the minimal polynomial).
    fn power_trace(self, k: usize) -> Rational {
        match self {
            NumberField::Rational => Rational::from(1),
            // roots ±√−3: sums 2, 0, −6
            NumberField::SqrtM3 => Rational::from([2, 0, -6][k]),
            // ξ³ − ξ² + 1: e1 = 1, e2 = 0, e3 = −1 → p1 = 1, p2 = 1
            NumberField::XiCubic => Rational::from([3, 1, 1][k]),
        }
    }
}

/// An exact element of one of the three fields, as coefficients of
/// 1, g, g² (unused slots stay zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElement {
    pub field: NumberField,
    c: [Rational; 3],
}

impl FieldElement {
    pub fn zero(field: NumberField) -> Self {
        FieldElement { field, c: [Rational::new(), Rational::new(), Rational::new()] }
    }

    pub fn one(field: NumberField) -> Self {
        let mut e = Self::zero(field);
        e.c[0] = Rational::from(1);
        e
    }

    pub fn from_rat(field: NumberField, r: Rational) -> Self {
        let mut e = Self::zero(field);
        e.c[0] = r;
        e
    }

    pub fn from_i64(field: NumberField, n: i64) -> Self {
        Self::from_rat(field, Rational::from(n))
    }

    /// The generator g of the field (errors on ℚ).
    pub fn generator(field: NumberField) -> Result<Self> {
        if field == NumberField::Rational {
            return Err(CoreError::NotImplemented("Q has no generator".into()));
        }
        let mut e = Self::zero(field);
        e.c[1] = Rational::from(1);
        Ok(e)
    }

    pub fn from_coeffs(field: NumberField, coeffs: &[Rational]) -> Result<Self> {
        if coeffs.len() > field.degree() {
            return Err(CoreError::Parse(format!(
                "{} coefficients in a degree-{} field",
                coeffs.len(),
                field.degree()
            )));
        }
        let mut e = Self::zero(field);
        for (i, r) in coeffs.iter().enumerate() {
            e.c[i] = r.clone();
        }
        Ok(e)
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.c[i]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|r| *r == 0)
    }

    pub fn is_rational(&self) -> bool {
        self.c[1] == 0 && self.c[2] == 0
    }

    /// The rational part, failing if a generator coefficient is nonzero.
    pub fn to_rat(&self) -> Result<Rational> {
        if self.is_rational() {
            Ok(self.c[0].clone())
        } else {
            Err(CoreError::Parse(format!("{self} is not rational")))
        }
    }

    /// Move an element into a larger field (only ℚ → anything).
    pub fn lift(&self, field: NumberField) -> Result<Self> {
        if self.field == field {
            return Ok(self.clone());
        }
        if self.field == NumberField::Rational {
            let mut e = Self::zero(field);
            e.c = self.c.clone();
            return Ok(e);
        }
        Err(CoreError::FieldMismatch(self.field, field))
    }

    fn check(&self, other: &Self) -> Result<NumberField> {
        self.field.join(other.field)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut e = self.clone();
        for x in e.c.iter_mut() {
            *x *= r;
        }
        e
    }

    /// Reduce the product of power-basis vectors modulo the minimal polynomial.
    fn mul_impl(field: NumberField, a: &[Rational; 3], b: &[Rational; 3]) -> [Rational; 3] {
        let mut raw = [
            Rational::new(),
            Rational::new(),
            Rational::new(),
            Rational::new(),
            Rational::new(),
        ];
        let deg = field.degree();
        for i in 0..deg {
            if a[i] == 0 {
                continue;
            }
            for j in 0..deg {
                if b[j] == 0 {
                    continue;
                }
                raw[i + j] += a[i].clone() * &b[j];
            }
        }
        match field {
            NumberField::Rational => {}
            NumberField::SqrtM3 => {
                // g² = −3
                let t = raw[2].clone();
                raw[0] -= t * 3;
                raw[2] = Rational::new();
            }
            NumberField::XiCubic => {
                // ξ³ = ξ² − 1, then reduce the ξ⁴ term: ξ⁴ = ξ³ − ξ = ξ² − ξ − 1
                let t4 = raw[4].clone();
                raw[2] += &t4;
                raw[1] -= &t4;
                raw[0] -= &t4;
                raw[4] = Rational::new();
                let t3 = raw[3].clone();
                raw[2] += &t3;
                raw[0] -= &t3;
                raw[3] = Rational::new();
            }
        }
        [raw[0].clone(), raw[1].clone(), raw[2].clone()]
    }

    /// Multiplicative inverse, by solving the 3×3 linear system x·self = 1
    /// in the power basis.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(CoreError::SingularSystem("inverse of zero".into()));
        }
        let deg = self.field.degree();
        if deg == 1 {
            let mut e = Self::zero(self.field);
            e.c[0] = Rational::from(1) / self.c[0].clone();
            return Ok(e);
        }
        // columns: self · g^j expressed in the power basis
        let mut cols: Vec<[Rational; 3]> = Vec::with_capacity(deg);
        for j in 0..deg {
            let mut gj = [Rational::new(), Rational::new(), Rational::new()];
            gj[j] = Rational::from(1);
            cols.push(Self::mul_impl(self.field, &self.c, &gj));
        }
        // solve cols * x = e0 by Gaussian elimination
        let mut m = vec![vec![Rational::new(); deg + 1]; deg];
        for (j, col) in cols.iter().enumerate() {
            for i in 0..deg {
                m[i][j] = col[i].clone();
            }
        }
        m[0][deg] = Rational::from(1);
        for col in 0..deg {
            let piv = (col..deg)
                .find(|&r| m[r][col] != 0)
                .ok_or_else(|| CoreError::SingularSystem("field inverse".into()))?;
            m.swap(col, piv);
            let p = m[col][col].clone();
            for x in m[col].iter_mut() {
                *x /= &p;
            }
            for r in 0..deg {
                if r != col && m[r][col] != 0 {
                    let f = m[r][col].clone();
                    for cx in 0..=deg {
                        let s = m[col][cx].clone() * &f;
                        m[r][cx] -= s;
                    }
                }
            }
        }
        let mut e = Self::zero(self.field);
        for i in 0..deg {
            e.c[i] = m[i][deg].clone();
        }
        Ok(e)
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut acc = Self::one(self.field);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// The nontrivial automorphism g ↦ −g of ℚ(√−3).
    pub fn conj_sqrt(&self) -> Result<Self> {
        if self.field != NumberField::SqrtM3 {
            return Err(CoreError::FieldMismatch(self.field, NumberField::SqrtM3));
        }
        let mut e = self.clone();
        e.c[1] = -e.c[1].clone();
        Ok(e)
    }

    /// Field trace over ℚ (sum over all embeddings).
    pub fn trace(&self) -> Rational {
        let mut acc = Rational::new();
        for k in 0..self.field.degree() {
            acc += self.c[k].clone() * self.field.power_trace(k);
        }
        acc
    }

    /// Canonical exact string: rationals as "n/d", otherwise power-basis
    /// coefficients joined by ';' (e.g. "0;1/2" for √−3/2).
    pub fn to_coeff_string(&self) -> String {
        if self.field == NumberField::Rational || self.is_rational() {
            return rat_to_string(&self.c[0]);
        }
        let deg = self.field.degree();
        (0..deg).map(|i| rat_to_string(&self.c[i])).collect::<Vec<_>>().join(";")
    }

    pub fn from_coeff_string(field: NumberField, s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(';').collect();
        if parts.len() > field.degree() {
            return Err(CoreError::Parse(format!("{s:?} has too many components for {field:?}")));
        }
        let coeffs = parts.iter().map(|p| rat_from_string(p)).collect::<Result<Vec<_>>>()?;
        Self::from_coeffs(field, &coeffs)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = match self.field {
            NumberField::Rational => ["", "", ""],
            NumberField::SqrtM3 => ["", "*r3", "*r3^2"],
            NumberField::XiCubic => ["", "*x", "*x^2"],
        };
        let mut first = true;
        for i in 0..self.field.degree() {
            if self.c[i] == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{}{}", rat_to_string(&self.c[i]), names[i])?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl<'a, 'b> $trait<&'b FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'b FieldElement) -> FieldElement {
                let field = self.check(rhs).expect("field mismatch");
                let mut e = FieldElement::zero(field);
                for i in 0..3 {
                    e.c[i] = self.c[i].clone() $op &rhs.c[i];
                }
                e
            }
        }
    };
}
forward_binop!(Add, add, +);
forward_binop!(Sub, sub, -);

impl<'a, 'b> Mul<&'b FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &'b FieldElement) -> FieldElement {
        let field = self.check(rhs).expect("field mismatch");
        FieldElement { field, c: FieldElement::mul_impl(field, &self.c, &rhs.c) }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let mut e = self.clone();
        for x in e.c.iter_mut() {
            *x = -x.clone();
        }
        e
    }
}

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        let field = self.check(rhs).expect("field mismatch");
        self.field = field;
        for i in 0..3 {
            self.c[i] += &rhs.c[i];
        }
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        let field = self.check(rhs).expect("field mismatch");
        self.field = field;
        for i in 0..3 {
            self.c[i] -= &rhs.c[i];
        }
    }
}

impl MulAssign<&FieldElement> for FieldElement {
    fn mul_assign(&mut self, rhs: &FieldElement) {
        *self = &*self * rhs;
    }
}
