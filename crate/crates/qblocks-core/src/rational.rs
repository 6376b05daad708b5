//! Exact rational helpers on top of GMP rationals.
//!
//! `rug::Rational` already maintains the reduced, positive-denominator
//! canonical form required of the `Rational` domain type; this module adds
//! the handful of constructions the rest of the crate needs: literals,
//! factorials, Bernoulli numbers and exact fraction strings.

use crate::{CoreError, Result};
use rug::{Integer, Rational};

/// Shorthand for an exact fraction.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from(n)
}

pub fn factorial(n: u32) -> Integer {
    Integer::factorial(n).into()
}

/// (2k−1)!! = (2k)!/(k! 2^k), with (−1)!! = 1.
pub fn double_factorial_odd(k: u32) -> Integer {
    let mut acc = Integer::from(1);
    let mut j = 1i64;
    while j <= 2 * k as i64 - 1 {
        acc *= j;
        j += 2;
    }
    acc
}

/// Bernoulli numbers B_0, B_1, …, B_n with B_1 = −1/2, by the defining
/// recurrence Σ_{j=0}^{m} C(m+1,j) B_j = 0.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if m == 0 {
            b.push(Rational::from(1));
            continue;
        }
        let mut acc = Rational::new();
        for (j, bj) in b.iter().enumerate() {
            let c = Integer::from(Integer::binomial_u(m as u32 + 1, j as u32));
            acc += bj.clone() * c;
        }
        acc /= Integer::from(-(m as i64 + 1));
        b.push(acc);
    }
    b
}

/// ζ(1−ℓ)/2 for ℓ ≥ 1: −1/4 for ℓ = 1, −B_ℓ/(2ℓ) otherwise.
pub fn half_zeta_one_minus(ell: u32) -> Rational {
    if ell == 1 {
        return rat(-1, 4);
    }
    let b = bernoulli_numbers(ell as usize);
    let mut v = b[ell as usize].clone();
    v /= Integer::from(2 * ell);
    -v
}

/// Exact fraction string "n/d" (or "n" when d = 1).
pub fn rat_to_string(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_from_string(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| CoreError::Parse(format!("bad rational {s:?}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_small() {
        let b = bernoulli_numbers(8);
        assert_eq!(b[0], rat_int(1));
        assert_eq!(b[1], rat(-1, 2));
        assert_eq!(b[2], rat(1, 6));
        assert_eq!(b[3], rat_int(0));
        assert_eq!(b[4], rat(-1, 30));
        assert_eq!(b[8], rat(-1, 30));
    }

    #[test]
    fn zeta_constants() {
        // ζ(0)/2 = −1/4 and ζ(−1)/2 = −1/24.
        assert_eq!(half_zeta_one_minus(1), rat(-1, 4));
        assert_eq!(half_zeta_one_minus(2), rat(-1, 24));
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial_odd(0), Integer::from(1));
        assert_eq!(double_factorial_odd(2), Integer::from(3));
        assert_eq!(double_factorial_odd(3), Integer::from(15));
        assert_eq!(double_factorial_odd(4), Integer::from(105));
    }

    #[test]
    fn fraction_strings() {
        let r = rat(-22, 8);
        assert_eq!(rat_to_string(&r), "-11/4");
        assert_eq!(rat_from_string("-11/4").unwrap(), r);
    }
}
