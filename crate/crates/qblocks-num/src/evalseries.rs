//! Numeric evaluation of exact truncated series, with a tail bound attached.

use crate::complex::BigComplex;
use crate::functions::embed;
use qblocks_core::series::{HalfLaurentSeries, Trunc};
use rug::Float;

/// Evaluate Σ c_e q^(e/2) at |q| < 1. Field-element coefficients embed at
/// σ₁. Returns the value and a tail bound |q|^((T+1)/2) scaled by the
/// observed coefficient magnitude of the stored tail (zero for exact
/// polynomials).
pub fn eval_series(s: &HalfLaurentSeries, q: &BigComplex) -> (BigComplex, Float) {
    let prec = q.prec();
    let qh = q.sqrt();
    let mut acc = BigComplex::zero(prec);
    let mut last_e: Option<i64> = None;
    let mut pow = BigComplex::one(prec);
    let mut cmax = Float::new(53);
    let n_terms = s.num_terms();
    for (i, (&e, c)) in s.iter().enumerate() {
        pow = match last_e {
            None => qh.powi(e),
            Some(prev) => pow.mul(&qh.powi(e - prev)),
        };
        last_e = Some(e);
        let cv = embed(c, 0, prec);
        acc = acc.add(&cv.mul(&pow));
        if i + 3 * n_terms / 4 >= n_terms {
            let a = Float::with_val(53, cv.abs());
            if a > cmax {
                cmax = a;
            }
        }
    }
    let bound = match s.trunc() {
        Trunc::Entire => Float::new(prec),
        Trunc::Order(t) => {
            let qabs = q.abs();
            let tail_pow = qh.abs().to_f64().powi((t + 1).max(0) as i32);
            let denom = (1.0 - qabs.to_f64()).max(1e-6);
            Float::with_val(prec, 4.0 * cmax.to_f64().max(1.0) * tail_pow / denom)
        }
    };
    (acc, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::prec_for_digits;
    use qblocks_core::qfuncs::pochhammer;

    #[test]
    fn constant_series() {
        let prec = prec_for_digits(30);
        let one = HalfLaurentSeries::one(qblocks_core::field::NumberField::Rational, Trunc::Entire);
        let q = BigComplex::from_f64(prec, 0.3, 0.2);
        let (v, b) = eval_series(&one, &q);
        assert!(crate::complex::distance(&v, &BigComplex::one(prec)).to_f64() < 1e-28);
        assert!(b.is_zero());
    }

    #[test]
    fn pochhammer_partial_vs_product() {
        // (q;q)_40 evaluated as an exact polynomial vs the literal product
        let prec = prec_for_digits(40);
        let q = BigComplex::from_f64(prec, 1.0 / 20.0, 0.04);
        let (v, _) = eval_series(&pochhammer(40), &q);
        let mut prod = BigComplex::one(prec);
        for j in 1..=40 {
            prod = prod.mul(&BigComplex::one(prec).sub(&q.powi(j)));
        }
        assert!(crate::complex::agreement_digits(&v, &prod) > 35.0);
    }

    #[test]
    fn order_doubling_stability() {
        // I^mer(0,0) of 4₁ at a modest q: value stable under doubling the
        // series order, within the attached bound
        let prec = prec_for_digits(40);
        let q = BigComplex::from_f64(prec, 0.28, 0.0);
        let s1 = qblocks_core::index::meromorphic_index(qblocks_core::KnotId::FourOne, 0, 0, 60).unwrap();
        let s2 = qblocks_core::index::meromorphic_index(qblocks_core::KnotId::FourOne, 0, 0, 120).unwrap();
        let (v1, b1) = eval_series(&s1, &q);
        let (v2, _) = eval_series(&s2, &q);
        assert!(crate::complex::distance(&v1, &v2).to_f64() <= b1.to_f64());
    }
}
