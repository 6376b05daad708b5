//! Arbitrary-precision complex arithmetic on top of MPFR reals.
//!
//! Precision is part of a value's identity: binary operations produce results
//! at the minimum precision of their inputs, and nothing widens silently.

use rug::float::Round;
use rug::ops::Pow;
use rug::Float;
use std::cmp::Ordering;
use std::fmt;

/// Working precision in bits for a decimal-digit target, with guard bits.
pub fn prec_for_digits(digits: u32) -> u32 {
    (digits as f64 * 3.3219280948873626).ceil() as u32 + 32
}

/// Decimal digits faithfully carried by a binary precision.
pub fn digits_for_prec(prec: u32) -> u32 {
    ((prec.saturating_sub(32)) as f64 / 3.3219280948873626).floor() as u32
}

#[derive(Clone, PartialEq)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
}

impl BigComplex {
    pub fn new(re: Float, im: Float) -> Self {
        assert_eq!(re.prec(), im.prec(), "mixed precisions in a complex value");
        BigComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        BigComplex { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn one(prec: u32) -> Self {
        BigComplex { re: Float::with_val(prec, 1), im: Float::new(prec) }
    }

    pub fn i(prec: u32) -> Self {
        BigComplex { re: Float::new(prec), im: Float::with_val(prec, 1) }
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        BigComplex { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn from_real(re: Float) -> Self {
        let prec = re.prec();
        BigComplex { re, im: Float::new(prec) }
    }

    pub fn from_rational(prec: u32, r: &rug::Rational) -> Self {
        BigComplex { re: Float::with_val(prec, r), im: Float::new(prec) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    /// The joint precision of a binary operation.
    fn join(&self, other: &Self) -> u32 {
        self.prec().min(other.prec())
    }

    /// A copy at the given (usually lower) precision.
    pub fn with_prec(&self, prec: u32) -> Self {
        BigComplex {
            re: Float::with_val(prec, &self.re),
            im: Float::with_val(prec, &self.im),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.join(other);
        BigComplex {
            re: Float::with_val(p, &self.re + &other.re),
            im: Float::with_val(p, &self.im + &other.im),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.join(other);
        BigComplex {
            re: Float::with_val(p, &self.re - &other.re),
            im: Float::with_val(p, &self.im - &other.im),
        }
    }

    pub fn neg(&self) -> Self {
        BigComplex { re: Float::with_val(self.prec(), -&self.re), im: Float::with_val(self.prec(), -&self.im) }
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: Float::with_val(self.prec(), -&self.im) }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.join(other);
        let re = Float::with_val(p, &self.re * &other.re) - Float::with_val(p, &self.im * &other.im);
        let im = Float::with_val(p, &self.re * &other.im) + Float::with_val(p, &self.im * &other.re);
        BigComplex { re: Float::with_val(p, re), im: Float::with_val(p, im) }
    }

    pub fn mul_real(&self, x: &Float) -> Self {
        let p = self.prec().min(x.prec());
        BigComplex {
            re: Float::with_val(p, &self.re * x),
            im: Float::with_val(p, &self.im * x),
        }
    }

    pub fn mul_i(&self) -> Self {
        BigComplex { re: Float::with_val(self.prec(), -&self.im), im: self.re.clone() }
    }

    pub fn div(&self, other: &Self) -> Self {
        let p = self.join(other);
        let d = Float::with_val(p, other.re.clone().square() + other.im.clone().square());
        let re = Float::with_val(p, &self.re * &other.re) + Float::with_val(p, &self.im * &other.im);
        let im = Float::with_val(p, &self.im * &other.re) - Float::with_val(p, &self.re * &other.im);
        BigComplex { re: Float::with_val(p, re / &d), im: Float::with_val(p, im / &d) }
    }

    pub fn abs(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.clone().square() + self.im.clone().square()).sqrt()
    }

    pub fn abs2(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.clone().square() + self.im.clone().square())
    }

    pub fn arg(&self) -> Float {
        self.im.clone().atan2(&self.re)
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let r = self.re.clone().exp();
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        BigComplex { re: Float::with_val(p, &r * &c), im: Float::with_val(p, &r * &s) }
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        let p = self.prec();
        BigComplex { re: Float::with_val(p, self.abs().ln()), im: self.arg() }
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.im.is_zero() && self.re.is_sign_positive() {
            return BigComplex { re: self.re.clone().sqrt(), im: Float::new(p) };
        }
        self.ln().mul_real(&Float::with_val(p, 0.5)).exp()
    }

    /// Principal z^s for real s.
    pub fn pow_real(&self, s: &Float) -> Self {
        self.ln().mul_real(s).exp()
    }

    pub fn powi(&self, mut n: i64) -> Self {
        let p = self.prec();
        let mut base = if n < 0 { BigComplex::one(p).div(self) } else { self.clone() };
        if n < 0 {
            n = -n;
        }
        let mut acc = BigComplex::one(p);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    pub fn sin(&self) -> Self {
        // sin z = (e^{iz} − e^{−iz}) / 2i
        let p = self.prec();
        let iz = self.mul_i();
        let a = iz.exp();
        let b = iz.neg().exp();
        a.sub(&b).div(&BigComplex::from_f64(p, 0.0, 2.0))
    }

    pub fn cos(&self) -> Self {
        let iz = self.mul_i();
        let a = iz.exp();
        let b = iz.neg().exp();
        a.add(&b).mul_real(&Float::with_val(self.prec(), 0.5))
    }

    /// Round-trip decimal string with the stated number of digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        format!(
            "{} {} {}i",
            float_dec(&self.re, digits),
            if self.im.is_sign_negative() { "-" } else { "+" },
            float_dec(&self.im.clone().abs(), digits)
        )
    }
}

/// Decimal rendering without exponent-notation surprises for moderate values.
pub fn float_dec(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let (sign, mantissa, exp) = x.to_sign_string_exp_round(10, Some(digits), Round::Nearest);
    let s = if sign { "-" } else { "" };
    format!("{s}0.{mantissa}e{}", exp.unwrap_or(0))
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigComplex({}, prec={})", self.to_decimal(20), self.prec())
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(digits_for_prec(self.prec()) as usize))
    }
}

/// |a − b| as a float at joint precision.
pub fn distance(a: &BigComplex, b: &BigComplex) -> Float {
    a.sub(b).abs()
}

/// Agreement in decimal digits relative to the size of `b` (0 when |a−b| is
/// as large as |b|).
pub fn agreement_digits(a: &BigComplex, b: &BigComplex) -> f64 {
    let d = distance(a, b);
    if d.is_zero() {
        return digits_for_prec(a.prec().min(b.prec())) as f64;
    }
    let scale = b.abs();
    let ratio = Float::with_val(64, &d / &scale);
    let l = -ratio.log10();
    l.to_f64()
}

/// Sort key for floats (total order, NaN last).
pub fn float_cmp(a: &Float, b: &Float) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

/// x^(1/2) for a positive real float.
pub fn sqrt_f(x: &Float) -> Float {
    x.clone().sqrt()
}

/// Integer power for floats.
pub fn powi_f(x: &Float, n: i32) -> Float {
    x.clone().pow(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_discipline() {
        let a = BigComplex::from_f64(128, 1.5, 2.5);
        let b = BigComplex::from_f64(256, -0.5, 1.0);
        assert_eq!(a.mul(&b).prec(), 128);
        assert_eq!(b.add(&a).prec(), 128);
    }

    #[test]
    fn exp_ln_roundtrip() {
        let z = BigComplex::from_f64(200, 0.7, -1.3);
        let w = z.exp().ln();
        assert!(distance(&z, &w).to_f64() < 1e-55);
    }

    #[test]
    fn sqrt_squares() {
        let z = BigComplex::from_f64(200, -2.0, 0.5);
        let s = z.sqrt();
        assert!(distance(&s.mul(&s), &z).to_f64() < 1e-55);
    }

    #[test]
    fn agreement_counts_digits() {
        let a = BigComplex::from_f64(200, 1.0 + 1e-12, 0.0);
        let b = BigComplex::from_f64(200, 1.0, 0.0);
        let d = agreement_digits(&a, &b);
        assert!((11.0..13.0).contains(&d), "got {d}");
    }
}
