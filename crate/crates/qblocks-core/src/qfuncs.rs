//! Elementary q-building blocks: finite Pochhammer products, the Lambert-type
//! series E_ℓ(q), q-harmonic sums, and the Euler/pentagonal series used as
//! independent oracles in tests.

use crate::field::{FieldElement, NumberField};
use crate::rational::{half_zeta_one_minus, rat_int};
use crate::series::{HalfLaurentSeries, Trunc};
use crate::{CoreError, Result};
use rug::Rational;

fn qf() -> NumberField {
    NumberField::Rational
}

fn int_mono(e2: i64, c: i64) -> HalfLaurentSeries {
    HalfLaurentSeries::monomial(qf(), e2, FieldElement::from_i64(qf(), c), Trunc::Entire)
}

/// (q;q)_k as an exact polynomial; k = 0 gives 1.
pub fn pochhammer(k: u32) -> HalfLaurentSeries {
    let mut acc = HalfLaurentSeries::one(qf(), Trunc::Entire);
    for j in 1..=k as i64 {
        let factor = int_mono(0, 1).sub(&int_mono(2 * j, 1)).unwrap();
        acc = acc.mul(&factor).unwrap();
    }
    acc
}

/// (q;q)_k with q ↦ q^(-1): (q⁻¹;q⁻¹)_k = (−1)^k q^(−k(k+1)/2) (q;q)_k,
/// an exact Laurent polynomial.
pub fn pochhammer_inv(k: u32) -> HalfLaurentSeries {
    pochhammer(k).invert_variable().unwrap()
}

/// The infinite product (q;q)_∞ truncated at doubled order `t2`, by the
/// pentagonal number theorem: Σ_k (−1)^k q^{k(3k−1)/2}.
pub fn euler_product(t2: i64) -> HalfLaurentSeries {
    let mut s = HalfLaurentSeries::zero(qf(), Trunc::Order(t2));
    let mut k: i64 = 0;
    loop {
        let e1 = k * (3 * k - 1); // doubled exponent of q^{k(3k-1)/2}
        let e2 = k * (3 * k + 1);
        if e1 > t2 && e2 > t2 && k > 0 {
            break;
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        if e1 <= t2 {
            s.add_to_coeff(e1, &FieldElement::from_i64(qf(), sign));
        }
        if k > 0 && e2 <= t2 {
            s.add_to_coeff(e2, &FieldElement::from_i64(qf(), sign));
        }
        k += 1;
    }
    s
}

/// 1/(q;q)_∞ truncated at doubled order `t2`, via Euler's recurrence for the
/// partition numbers. Serves as the brute-force oracle for the stable limit
/// of h^(0).
pub fn partition_series(t2: i64) -> HalfLaurentSeries {
    let nmax = (t2 / 2).max(0) as usize;
    let mut p = vec![Rational::new(); nmax + 1];
    p[0] = rat_int(1);
    for n in 1..=nmax {
        let mut acc = Rational::new();
        let mut k = 1i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g1 > n && g2 > n {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            if g1 <= n {
                acc += p[n - g1].clone() * sign;
            }
            if g2 <= n {
                acc += p[n - g2].clone() * sign;
            }
            k += 1;
        }
        p[n] = acc;
    }
    let mut s = HalfLaurentSeries::zero(qf(), Trunc::Order(t2));
    for (n, v) in p.iter().enumerate() {
        s.set_coeff(2 * n as i64, FieldElement::from_rat(qf(), v.clone()));
    }
    s
}

/// E_ℓ(q) = ζ(1−ℓ)/2 + Σ_{s≥1} s^(ℓ−1) q^s/(1−q^s), truncated at doubled
/// order `t2`. The coefficient of q^n is the divisor power sum σ_{ℓ−1}(n).
pub fn e_series(ell: u32, t2: i64) -> Result<HalfLaurentSeries> {
    if ell == 0 {
        return Err(CoreError::NotImplemented("E_0 is not defined".into()));
    }
    let mut s = HalfLaurentSeries::zero(qf(), Trunc::Order(t2));
    s.set_coeff(0, FieldElement::from_rat(qf(), half_zeta_one_minus(ell)));
    let nmax = t2 / 2;
    for n in 1..=nmax {
        let mut sigma = Rational::new();
        let mut d = 1i64;
        while d <= n {
            if n % d == 0 {
                let mut term = rat_int(1);
                for _ in 1..ell {
                    term *= Rational::from(d);
                }
                sigma += term;
            }
            d += 1;
        }
        s.add_to_coeff(2 * n, &FieldElement::from_rat(qf(), sigma));
    }
    Ok(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QHarmonicKind {
    /// H_m(q) = Σ_{j=1}^m q^j/(1−q^j)
    H,
    /// H^(2)_m(q) = Σ_{j=1}^m q^j/(1−q^j)²
    H2,
}

/// q-harmonic sums, truncated at doubled order `t2`; m = 0 gives 0.
pub fn q_harmonic(kind: QHarmonicKind, m: u32, t2: i64) -> HalfLaurentSeries {
    let mut s = HalfLaurentSeries::zero(qf(), Trunc::Order(t2));
    for j in 1..=m as i64 {
        // q^j/(1−q^j) = Σ_{r≥1} q^{jr}; q^j/(1−q^j)² = Σ_{r≥1} r q^{jr}
        let mut r = 1i64;
        while 2 * j * r <= t2 {
            let c = match kind {
                QHarmonicKind::H => 1,
                QHarmonicKind::H2 => r,
            };
            s.add_to_coeff(2 * j * r, &FieldElement::from_i64(qf(), c));
            r += 1;
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs_of(s: &HalfLaurentSeries, upto: i64) -> Vec<Rational> {
        (0..=upto)
            .map(|n| s.coeff(2 * n).unwrap().to_rat().unwrap())
            .collect()
    }

    #[test]
    fn pochhammer_small() {
        // (q;q)_2 = 1 − q − q² + q³; (q;q)_3 = 1 − q − q² + q⁴ + q⁵ − q⁶
        assert_eq!(
            coeffs_of(&pochhammer(2).truncate_to(Trunc::Order(8)), 4),
            [1, -1, -1, 1, 0].map(Rational::from)
        );
        assert_eq!(
            coeffs_of(&pochhammer(3).truncate_to(Trunc::Order(12)), 6),
            [1, -1, -1, 0, 1, 1, -1].map(Rational::from)
        );
        assert!(pochhammer(0).agrees_with(&HalfLaurentSeries::one(qf(), Trunc::Entire)));
    }

    #[test]
    fn pochhammer_degree_law() {
        for k in 0..=12u32 {
            let p = pochhammer(k);
            let expect = (k as i64) * (k as i64 + 1); // doubled k(k+1)/2
            assert_eq!(p.max_stored_degree().unwrap(), expect);
        }
    }

    #[test]
    fn e1_is_divisor_count() {
        // brute-force divisor enumeration oracle for n = 1..50
        let s = e_series(1, 100).unwrap();
        for n in 1i64..=50 {
            let d = (1..=n).filter(|k| n % k == 0).count() as i64;
            assert_eq!(s.coeff(2 * n).unwrap().to_rat().unwrap(), rat_int(d));
        }
        assert_eq!(s.coeff(0).unwrap().to_rat().unwrap(), Rational::from((-1, 4)));
    }

    #[test]
    fn e2_is_divisor_sum() {
        // −1/24 + q + 3q² + 4q³ + 7q⁴
        let s = e_series(2, 8).unwrap();
        assert_eq!(s.coeff(0).unwrap().to_rat().unwrap(), Rational::from((-1, 24)));
        assert_eq!(
            coeffs_of(&s, 4)[1..].to_vec(),
            [1, 3, 4, 7].map(Rational::from)
        );
    }

    #[test]
    fn q_harmonic_values() {
        // H_0 = 0; H_2 to q⁴: q + 2q² + q³ + 2q⁴; H2_1 to q⁴: q + 2q² + 3q³ + 4q⁴
        assert!(q_harmonic(QHarmonicKind::H, 0, 8).is_zero_known());
        assert_eq!(
            coeffs_of(&q_harmonic(QHarmonicKind::H, 2, 8), 4),
            [0, 1, 2, 1, 2].map(Rational::from)
        );
        assert_eq!(
            coeffs_of(&q_harmonic(QHarmonicKind::H2, 1, 8), 4),
            [0, 1, 2, 3, 4].map(Rational::from)
        );
    }

    #[test]
    fn euler_and_partitions_are_inverse() {
        let t = 60;
        let prod = euler_product(t).mul(&partition_series(t)).unwrap();
        let one = HalfLaurentSeries::one(qf(), prod.trunc());
        assert!(prod.agrees_with(&one));
    }
}
