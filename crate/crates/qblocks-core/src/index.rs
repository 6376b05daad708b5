//! The rotated, meromorphic and original 3D-index assembled from colored
//! holomorphic blocks, with their symmetries and the 5₂ quadratic relations.

use crate::blocks::{block_at, block_degree, Regime};
use crate::field::NumberField;
use crate::series::{HalfLaurentSeries, Trunc};
use crate::{CoreError, KnotId, Result};
use rug::Rational;

/// Arguments of one index evaluation: colors (n, n′) — or (m, e), (ℓ, ℓ′)
/// depending on the flavor — and a doubled truncation order.
#[derive(Debug, Clone, Copy)]
pub struct IndexRequest {
    pub knot: KnotId,
    pub n: i64,
    pub np: i64,
    pub trunc: i64,
}

/// The bilinear pairing defining I^rot: a list of (rational coefficient,
/// block index paired at q, block index paired at q⁻¹).
fn rotated_pairing(knot: KnotId) -> Vec<(Rational, u8, u8)> {
    match knot {
        // −½ h^(1)_{n'}(q⁻¹) h^(0)_n(q) + ½ h^(0)_{n'}(q⁻¹) h^(1)_n(q)
        KnotId::FourOne => vec![
            (Rational::from((-1, 2)), 0, 1),
            (Rational::from((1, 2)), 1, 0),
        ],
        // −½ h^(0)_{n'}(q⁻¹) h^(2)_n(q) − h^(1)_{n'}(q⁻¹) h^(1)_n(q)
        //   − ½ h^(2)_{n'}(q⁻¹) h^(0)_n(q)
        KnotId::FiveTwo => vec![
            (Rational::from((-1, 2)), 2, 0),
            (Rational::from(-1), 1, 1),
            (Rational::from((-1, 2)), 0, 2),
        ],
    }
}

/// I^rot(n,n′)(q) to doubled order `trunc`.
pub fn rotated_index(req: IndexRequest) -> Result<HalfLaurentSeries> {
    let IndexRequest { knot, n, np, trunc } = req;
    let mut acc = HalfLaurentSeries::zero(NumberField::Rational, Trunc::Order(trunc));
    for (coef, alpha_q, alpha_inv) in rotated_pairing(knot) {
        let v_q = block_degree(knot, alpha_q, n, Regime::Q);
        let v_inv = block_degree(knot, alpha_inv, np, Regime::QInverse);
        if v_q + v_inv > trunc {
            continue; // this pairing starts above the window
        }
        let hq = block_at(knot, alpha_q, n, Regime::Q, trunc - v_inv + 2)?;
        let hinv = block_at(knot, alpha_inv, np, Regime::QInverse, trunc - v_q + 2)?;
        let prod = hq.mul(&hinv)?.truncate_to(Trunc::Order(trunc)).scale_rat(&coef);
        acc = acc.add(&prod)?;
    }
    Ok(acc)
}

pub fn rotated_index_at(knot: KnotId, n: i64, np: i64, trunc: i64) -> Result<HalfLaurentSeries> {
    rotated_index(IndexRequest { knot, n, np, trunc })
}

/// I^mer(ℓ,ℓ′)(q) = q^(−2ℓℓ′) Σ_n q^(2ℓn) I^rot(n, n−2ℓ′)(q).
///
/// For (ℓ,ℓ′) = (0,0) the color sum has the provable cutoff
/// deg I^rot(n,n) = |n|; otherwise the window is widened until the
/// coefficients freeze across two consecutive enlargements.
pub fn meromorphic_index(knot: KnotId, l: i64, lp: i64, trunc: i64) -> Result<HalfLaurentSeries> {
    if l == 0 && lp == 0 {
        let nmax = trunc / 2 + 1;
        let mut acc = HalfLaurentSeries::zero(NumberField::Rational, Trunc::Order(trunc));
        for n in -nmax..=nmax {
            acc = acc.add(&rotated_index_at(knot, n, n, trunc)?)?;
        }
        return Ok(acc);
    }
    let assemble = |window: i64| -> Result<HalfLaurentSeries> {
        let mut acc = HalfLaurentSeries::zero(NumberField::Rational, Trunc::Order(trunc));
        for n in -window..=window {
            let term = rotated_index_at(knot, n, n - 2 * lp, trunc + 4 * l.abs() * window + 2)?
                .shift(4 * l * n)
                .truncate_to(Trunc::Order(trunc));
            acc = acc.add(&term)?;
        }
        Ok(acc.shift(-4 * l * lp).truncate_to(Trunc::Order(trunc)))
    };
    let mut window = trunc / 2 + 2;
    let mut prev = assemble(window)?;
    let window_cap = 8 * (trunc.abs() + 4) + 16 * (l.abs() + lp.abs() + 1);
    loop {
        window += trunc / 2 + 2;
        let next = assemble(window)?;
        if next.agrees_with(&prev) {
            return Ok(next);
        }
        prev = next;
        if window > window_cap {
            return Err(CoreError::NonStabilization(window));
        }
    }
}

/// I(m,e)(q) = q^(−me/2) Σ_k I^rot(m+k,k)(q) q^(−ke), reconstructed from the
/// rotated index by the inversion lemma. The k-window is widened until the
/// coefficients up to the truncation stabilize across two consecutive
/// enlargements; directions of linear growth never stabilize and are
/// reported as `NonStabilization`.
pub fn original_index(
    knot: KnotId,
    m: i64,
    e: i64,
    trunc: i64,
    k_cap: Option<i64>,
) -> Result<HalfLaurentSeries> {
    let cap = k_cap.unwrap_or(6 * (trunc.abs() + 4) + 8 * (m.abs() + e.abs() + 1));
    let assemble = |window: i64| -> Result<HalfLaurentSeries> {
        let mut acc = HalfLaurentSeries::zero(NumberField::Rational, Trunc::Order(trunc));
        for k in -window..=window {
            // request the rotated entry deep enough to survive the q^{-ke} shift
            let need = trunc + 2 * (e.abs() * window + 1);
            let term = rotated_index_at(knot, m + k, k, need)?
                .shift(-2 * k * e)
                .truncate_to(Trunc::Order(trunc));
            acc = acc.add(&term)?;
        }
        Ok(acc.shift(-m * e).truncate_to(Trunc::Order(trunc)))
    };
    let mut window = trunc / 2 + 2;
    let mut prev = assemble(window)?;
    loop {
        window += trunc / 2 + 2;
        if window > cap {
            return Err(CoreError::NonStabilization(window));
        }
        let next = assemble(window)?;
        if next.agrees_with(&prev) {
            return Ok(next);
        }
        prev = next;
    }
}

/// One line of a symmetry report.
#[derive(Debug, Clone)]
pub struct SymmetryCheck {
    pub description: String,
    pub pass: bool,
}

/// Verifies I^rot(n,n′) = I^rot(±n,±n′) and I^rot(n,n′)(q⁻¹) = I^rot(n′,n)(q)
/// for n,n′ ∈ {−2..2} to the given order.
pub fn symmetry_checks(knot: KnotId, trunc: i64) -> Result<Vec<SymmetryCheck>> {
    let mut out = Vec::new();
    for n in -2..=2i64 {
        for np in -2..=2i64 {
            let base = rotated_index_at(knot, n, np, trunc)?;
            for (sn, snp) in [(-n, np), (n, -np), (-n, -np)] {
                let other = rotated_index_at(knot, sn, snp, trunc)?;
                out.push(SymmetryCheck {
                    description: format!(
                        "{} I^rot({n},{np}) = I^rot({sn},{snp}) to q^{trunc}/2",
                        knot.label()
                    ),
                    pass: base.agrees_with(&other),
                });
            }
            // I^rot(n,n')(q^{-1}) = I^rot(n',n)(q): swap the regimes in the
            // bilinear pairing instead of substituting into a truncated series.
            let swapped = rotated_index_inverse_q(knot, n, np, trunc)?;
            let target = rotated_index_at(knot, np, n, trunc)?;
            out.push(SymmetryCheck {
                description: format!(
                    "{} I^rot({n},{np})(1/q) = I^rot({np},{n})(q) to q^{trunc}/2",
                    knot.label()
                ),
                pass: swapped.agrees_with(&target),
            });
        }
    }
    Ok(out)
}

/// I^rot(n,n′)(q⁻¹) as a series in q: the bilinear pairing with the two
/// regimes exchanged.
fn rotated_index_inverse_q(knot: KnotId, n: i64, np: i64, trunc: i64) -> Result<HalfLaurentSeries> {
    let mut acc = HalfLaurentSeries::zero(NumberField::Rational, Trunc::Order(trunc));
    for (coef, alpha_q, alpha_inv) in rotated_pairing(knot) {
        // h^(a)_n(q) ↦ h^(a)_n(q⁻¹) and vice versa
        let v_q = block_degree(knot, alpha_q, n, Regime::QInverse);
        let v_inv = block_degree(knot, alpha_inv, np, Regime::Q);
        if v_q + v_inv > trunc {
            continue;
        }
        let hq = block_at(knot, alpha_q, n, Regime::QInverse, trunc - v_inv + 2)?;
        let hinv = block_at(knot, alpha_inv, np, Regime::Q, trunc - v_q + 2)?;
        let prod = hq.mul(&hinv)?.truncate_to(Trunc::Order(trunc)).scale_rat(&coef);
        acc = acc.add(&prod)?;
    }
    Ok(acc)
}

/// The 5₂ quadratic combination
/// h^(0)_{n′}(q⁻¹)h^(2)_n(q) − 2h^(1)_{n′}(q⁻¹)h^(1)_n(q) + h^(2)_{n′}(q⁻¹)h^(0)_n(q);
/// zero when n = n′, a Laurent polynomial otherwise.
pub fn quadratic_relation_52(n: i64, np: i64, trunc: i64) -> Result<HalfLaurentSeries> {
    let knot = KnotId::FiveTwo;
    let mut acc = HalfLaurentSeries::zero(NumberField::Rational, Trunc::Order(trunc));
    for (coef, alpha_q, alpha_inv) in [
        (Rational::from(1), 2u8, 0u8),
        (Rational::from(-2), 1, 1),
        (Rational::from(1), 0, 2),
    ] {
        let v_q = block_degree(knot, alpha_q, n, Regime::Q);
        let v_inv = block_degree(knot, alpha_inv, np, Regime::QInverse);
        if v_q + v_inv > trunc {
            continue;
        }
        let hq = block_at(knot, alpha_q, n, Regime::Q, trunc - v_inv + 2)?;
        let hinv = block_at(knot, alpha_inv, np, Regime::QInverse, trunc - v_q + 2)?;
        acc = acc.add(&hq.mul(&hinv)?.truncate_to(Trunc::Order(trunc)).scale_rat(&coef))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_coeffs(s: &HalfLaurentSeries, from: i64, upto: i64) -> Vec<i64> {
        (from..=upto)
            .map(|e| s.coeff(2 * e).unwrap().to_rat().unwrap().to_f64() as i64)
            .collect()
    }

    #[test]
    fn rotated_41_diagonal_values() {
        let s = rotated_index_at(KnotId::FourOne, 0, 0, 18).unwrap();
        assert_eq!(
            int_coeffs(&s, 0, 9),
            vec![1, -8, -9, 18, 46, 90, 62, 10, -170, -424]
        );
        let s = rotated_index_at(KnotId::FourOne, 1, 1, 18).unwrap();
        assert_eq!(int_coeffs(&s, 0, 9), vec![0, 2, 2, 7, 8, 3, -22, -67, -132, -206]);
        let s = rotated_index_at(KnotId::FourOne, 2, 2, 18).unwrap();
        assert_eq!(int_coeffs(&s, 0, 9), vec![0, 0, 2, 0, 2, 0, 4, 2, 8, 8]);
    }

    #[test]
    fn rotated_52_diagonal_values() {
        let s = rotated_index_at(KnotId::FiveTwo, 0, 0, 18).unwrap();
        assert_eq!(
            int_coeffs(&s, 0, 9),
            vec![1, -12, 3, 74, 90, 33, -288, -684, -1095, -1140]
        );
        let s = rotated_index_at(KnotId::FiveTwo, 1, 1, 20).unwrap();
        assert_eq!(
            int_coeffs(&s, 0, 10),
            vec![0, 2, 7, 7, -13, -68, -154, -220, -165, 157, 898]
        );
        let s = rotated_index_at(KnotId::FiveTwo, 2, 2, 22).unwrap();
        assert_eq!(
            int_coeffs(&s, 0, 11),
            vec![0, 0, 2, 0, 6, 2, 17, 14, 36, 21, 6, -110]
        );
    }

    #[test]
    fn rotated_degree_law() {
        for knot in [KnotId::FourOne, KnotId::FiveTwo] {
            for n in 0..=4i64 {
                let s = rotated_index_at(knot, n, n, 2 * n + 12).unwrap();
                assert_eq!(s.min_degree().unwrap(), 2 * n, "deg I^rot(n,n) = |n| at {knot:?} n={n}");
            }
        }
    }

    #[test]
    fn meromorphic_printed_series() {
        let s = meromorphic_index(KnotId::FourOne, 0, 0, 18).unwrap();
        assert_eq!(
            int_coeffs(&s, 0, 9),
            vec![1, -4, -1, 36, 70, 100, 34, -116, -410, -808]
        );
        let s = meromorphic_index(KnotId::FiveTwo, 0, 0, 18).unwrap();
        assert_eq!(
            int_coeffs(&s, 0, 9),
            vec![1, -8, 21, 92, 80, -95, -546, -1092, -1333, -756]
        );
    }

    #[test]
    fn quadratic_relation_diagonal_vanishes() {
        for n in 0..=2i64 {
            let s = quadratic_relation_52(n, n, 16).unwrap();
            assert!(s.is_zero_to_truncation(), "Q({n},{n}) should vanish");
        }
    }

    #[test]
    fn rotated_52_diagonal_equals_minus_two_h1_h1() {
        // I^rot(n,n) = −2 h^(1)_n(q⁻¹) h^(1)_n(q)
        for n in 0..=2i64 {
            let t2 = 16;
            let lhs = rotated_index_at(KnotId::FiveTwo, n, n, t2).unwrap();
            let v_q = block_degree(KnotId::FiveTwo, 1, n, Regime::Q);
            let v_i = block_degree(KnotId::FiveTwo, 1, n, Regime::QInverse);
            let a = block_at(KnotId::FiveTwo, 1, n, Regime::QInverse, t2 - v_q + 2).unwrap();
            let b = block_at(KnotId::FiveTwo, 1, n, Regime::Q, t2 - v_i + 2).unwrap();
            let rhs = a
                .mul(&b)
                .unwrap()
                .truncate_to(Trunc::Order(t2))
                .scale_rat(&Rational::from(-2));
            assert!(lhs.agrees_with(&rhs));
        }
    }
}
