//! Colored holomorphic blocks h^(α)_n(q) of the 4₁ and 5₂ knots as exact
//! truncated series, in both the |q| < 1 and |q| > 1 regimes.
//!
//! The 4₁ blocks come from the two q-hypergeometric sums of the second-order
//! equation; the |q| > 1 regime is the symmetry h^(0)(q⁻¹) = h^(0)(q),
//! h^(1)(q⁻¹) = −h^(1)(q). The three 5₂ blocks are the explicit
//! q-hypergeometric sums (with q-harmonic weights and finite correction sums
//! over k < |n|), evaluated at q or at q⁻¹; either way the result is a series
//! in q^(1/2) bounded below.
//!
//! Truncation bookkeeping: a k-th summand is assembled from exact Laurent
//! monomials/polynomials (whose valuation may be negative) and inverse
//! Pochhammer series; each series factor is produced with the valuations of
//! its cofactors compensated, so every block returned is valid to exactly the
//! requested order. The k-sums stop two terms after the summand's minimum
//! degree leaves the window.

use crate::field::{FieldElement, NumberField};
use crate::qfuncs::{self, QHarmonicKind};
use crate::rational::rat;
use crate::series::{HalfLaurentSeries, Trunc};
use crate::{CoreError, KnotId, Result};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::RwLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regime {
    Q,
    QInverse,
}

impl Regime {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "q" => Ok(Regime::Q),
            "qinv" | "q-inverse" | "qbar" => Ok(Regime::QInverse),
            other => Err(CoreError::Parse(format!("unknown regime {other:?}"))),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Regime::Q => "q",
            Regime::QInverse => "qinv",
        }
    }
}

/// Identifies one colored block series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockKey {
    pub knot: KnotId,
    pub alpha: u8,
    pub n: i64,
    pub regime: Regime,
    /// doubled truncation order
    pub trunc: i64,
}

/// Doubled minimum q-exponent of h^(α)_n in the given regime.
pub fn block_degree(knot: KnotId, alpha: u8, n: i64, regime: Regime) -> i64 {
    let m = n.abs();
    match (knot, alpha, regime) {
        (KnotId::FourOne, 0, _) => 2 * m * m + m,
        (KnotId::FourOne, 1, _) => -2 * m * m + m,
        (KnotId::FiveTwo, 0, Regime::Q) => m,
        (KnotId::FiveTwo, 0, Regime::QInverse) => m * (5 * m + 2),
        (KnotId::FiveTwo, 1, Regime::Q) => -m * (2 * m - 1),
        (KnotId::FiveTwo, 1, Regime::QInverse) => m * (2 * m + 1),
        (KnotId::FiveTwo, 2, Regime::Q) => -m * (5 * m - 2),
        (KnotId::FiveTwo, 2, Regime::QInverse) => m,
        _ => panic!("invalid block index {alpha} for {knot:?}"),
    }
}

fn qf() -> NumberField {
    NumberField::Rational
}

fn rat_el(n: i64, d: i64) -> FieldElement {
    FieldElement::from_rat(qf(), rat(n, d))
}

/// q^(e2/2), direction-aware.
fn mono(e2: i64, inv: bool) -> HalfLaurentSeries {
    HalfLaurentSeries::q_pow(qf(), if inv { -e2 } else { e2 })
}

/// Σ_{r≥0} q^{jr} = 1/(1−q^j), truncated at doubled order t2.
fn geom(j: i64, t2: i64) -> HalfLaurentSeries {
    let mut s = HalfLaurentSeries::zero(qf(), Trunc::Order(t2));
    let mut e = 0;
    while e <= t2 {
        s.set_coeff(e, FieldElement::from_i64(qf(), 1));
        e += 2 * j;
    }
    s
}

/// 1/(q;q)_m in the chosen direction, valid to t2.
/// Inverted: 1/(q⁻¹;q⁻¹)_m = (−1)^m q^(m(m+1)/2) / (q;q)_m.
fn ipoch(m: u32, inv: bool, t2: i64) -> HalfLaurentSeries {
    if t2 < 0 {
        // empty window: nothing to know, and chained products of empty
        // series would only erode the reported validity
        return HalfLaurentSeries::zero(qf(), Trunc::Order(t2));
    }
    let mut acc = if inv {
        let shift = (m as i64) * (m as i64 + 1);
        let sign = if m % 2 == 0 { 1 } else { -1 };
        HalfLaurentSeries::monomial(qf(), shift, FieldElement::from_i64(qf(), sign), Trunc::Order(t2))
    } else {
        HalfLaurentSeries::one(qf(), Trunc::Order(t2))
    };
    for j in 1..=m as i64 {
        let g = geom(j, t2 - acc.min_degree().unwrap_or(0));
        acc = acc.mul(&g).unwrap().truncate_to(Trunc::Order(t2));
    }
    acc
}

/// (q;q)_m in the chosen direction (exact Laurent polynomial).
fn poch(m: u32, inv: bool) -> HalfLaurentSeries {
    if inv {
        qfuncs::pochhammer_inv(m)
    } else {
        qfuncs::pochhammer(m)
    }
}

/// q^j/(1−q^j) in the chosen direction: inverted form is −1 − q^j/(1−q^j).
fn lambert(j: i64, inv: bool, t2: i64) -> HalfLaurentSeries {
    let mut l = geom(j, t2).shift(2 * j).truncate_to(Trunc::Order(t2));
    if inv {
        l = l.neg();
        l.add_to_coeff(0, &rat_el(-1, 1));
    }
    l
}

/// q^j/(1−q^j)² in either direction (invariant under q ↦ 1/q).
fn lambert2(j: i64, t2: i64) -> HalfLaurentSeries {
    let mut s = HalfLaurentSeries::zero(qf(), Trunc::Order(t2));
    let mut r = 1i64;
    while 2 * j * r <= t2 {
        s.set_coeff(2 * j * r, FieldElement::from_i64(qf(), r));
        r += 1;
    }
    s
}

/// E_ℓ in the chosen direction: E_ℓ(q⁻¹) = −E_ℓ(q).
fn e_dir(ell: u32, inv: bool, t2: i64) -> HalfLaurentSeries {
    let e = qfuncs::e_series(ell, t2).unwrap();
    if inv {
        e.neg()
    } else {
        e
    }
}

/// H_m / H^(2)_m in the chosen direction: H_m(q⁻¹) = −m − H_m(q),
/// H^(2)_m(q⁻¹) = H^(2)_m(q).
fn harmonic_dir(kind: QHarmonicKind, m: u32, inv: bool, t2: i64) -> HalfLaurentSeries {
    let h = qfuncs::q_harmonic(kind, m, t2);
    match (kind, inv) {
        (_, false) | (QHarmonicKind::H2, true) => h,
        (QHarmonicKind::H, true) => {
            let mut s = h.neg();
            s.add_to_coeff(0, &rat_el(-(m as i64), 1));
            s
        }
    }
}

fn check_trunc(key: &BlockKey) -> Result<()> {
    let deg = block_degree(key.knot, key.alpha, key.n, key.regime);
    if key.trunc < deg {
        return Err(CoreError::DegenerateTruncation { trunc: key.trunc, degree: deg });
    }
    Ok(())
}

/// h^(0)_n and h^(1)_n of the 4₁ knot at |q| < 1.
fn block_41_q(alpha: u8, n: i64, t2: i64) -> HalfLaurentSeries {
    let m = n.abs();
    let sign_n = if n % 2 == 0 { 1 } else { -1 };
    let pref = 2 * m * m + m; // doubled |n|(2|n|+1)/2
    let tw = t2 - pref + 2; // working window before the prefactor shift

    let mut out = if tw < 0 {
        // the whole q-hypergeometric sum sits above the requested window
        HalfLaurentSeries::zero(qf(), Trunc::Order(t2))
    } else {
        // running summand q^(k(k+1)/2+|n|k) / ((q;q)_k (q;q)_{k+2|n|}); the
        // alternating sign is applied per term.
        let mut term = ipoch(2 * m as u32, false, tw);
        let mut acc = HalfLaurentSeries::zero(qf(), Trunc::Order(tw));
        // h^(1) weight: −4E₁ + Σ_{ℓ≤k+2|n|}(1+q^ℓ)/(1−q^ℓ) + Σ_{ℓ≤k}(1+q^ℓ)/(1−q^ℓ)
        let mut weight = e_dir(1, false, tw).scale_rat(&rat(-4, 1));
        for l in 1..=2 * m {
            weight = weight.add(&lambert(l, false, tw).scale_rat(&rat(2, 1))).unwrap();
            weight.add_to_coeff(0, &rat_el(1, 1));
        }
        let mut k: i64 = 0;
        loop {
            let signed = if k % 2 == 0 { term.clone() } else { term.neg() };
            let contrib = match alpha {
                0 => signed,
                1 => signed.mul(&weight).unwrap().truncate_to(Trunc::Order(tw)),
                _ => unreachable!(),
            };
            acc = acc.add(&contrib).unwrap();
            let k1 = k + 1;
            // doubled minimal degree of the next summand, plus two guard terms
            if k1 * (k1 + 1) + 2 * m * k1 > tw + 2 * (k1 + m) {
                break;
            }
            term = term
                .shift(2 * (k1 + m))
                .truncate_to(Trunc::Order(tw))
                .mul(&geom(k1, tw))
                .unwrap()
                .mul(&geom(k1 + 2 * m, tw))
                .unwrap()
                .truncate_to(Trunc::Order(tw));
            weight = weight
                .add(&lambert(k1, false, tw).scale_rat(&rat(2, 1)))
                .unwrap()
                .add(&lambert(k1 + 2 * m, false, tw).scale_rat(&rat(2, 1)))
                .unwrap();
            weight.add_to_coeff(0, &rat_el(2, 1));
            k = k1;
        }
        acc.shift(pref).truncate_to(Trunc::Order(t2))
    };
    if sign_n < 0 {
        out = out.neg();
    }
    if alpha == 0 {
        return out;
    }
    // finite correction sum of h^(1):
    // −2(−1)^n q^(|n|(2|n|−1)/2) Σ_{k=0}^{2|n|−1} (−1)^k q^(k(k+1)/2−|n|k)
    //   (q⁻¹;q⁻¹)_{2|n|−1−k} / (q;q)_k
    let shift2 = 2 * m * m - m;
    let window = t2 - shift2;
    let mut corr = HalfLaurentSeries::zero(qf(), Trunc::Order(window));
    // walk k downward so (q⁻¹;q⁻¹)_{2|n|−1−k} grows by one factor per step
    let mut entire = HalfLaurentSeries::one(qf(), Trunc::Entire);
    let mut k = 2 * m - 1;
    loop {
        let sgn = if k % 2 == 0 { 1 } else { -1 };
        let shifted = entire.shift(k * (k + 1) - 2 * m * k);
        let v = shifted.min_degree();
        if let Some(v) = v {
            if v <= window {
                let t = shifted
                    .scale(&FieldElement::from_i64(qf(), sgn))
                    .unwrap()
                    .mul(&ipoch(k as u32, false, window - v))
                    .unwrap()
                    .truncate_to(Trunc::Order(window));
                corr = corr.add(&t).unwrap();
            }
        }
        if k == 0 || m == 0 {
            break;
        }
        // extend to (q⁻¹;q⁻¹)_{j+1} with j+1 = 2m−k
        let j1 = 2 * m - k;
        let factor = HalfLaurentSeries::one(qf(), Trunc::Entire)
            .sub(&HalfLaurentSeries::q_pow(qf(), -2 * j1))
            .unwrap();
        entire = entire.mul(&factor).unwrap();
        k -= 1;
    }
    let corr = corr
        .shift(shift2)
        .scale(&FieldElement::from_i64(qf(), -2 * sign_n))
        .unwrap()
        .truncate_to(Trunc::Order(t2));
    out.add(&corr).unwrap()
}

/// Doubled minimum degree of the k-th summand of the 5₂ infinite sums.
fn deg52_term(m: i64, k: i64, inv: bool) -> i64 {
    if !inv {
        m + 2 * m * k + k * (k + 1)
    } else {
        -(m + 2 * m * k) + (k + 2 * m) * (k + 2 * m + 1) + (k + m) * (k + m + 1)
    }
}

/// The three 5₂ blocks from Lemma-style explicit sums, in the direction
/// `inv` (false: at q, true: at q⁻¹).
fn block_52_dir(alpha: u8, n: i64, inv: bool, t2: i64) -> HalfLaurentSeries {
    let m = n.abs();
    let mu = m as u32;
    let tw = t2 + 2;
    let trunc = Trunc::Order(tw);
    let sign_n = if n % 2 == 0 { 1 } else { -1 };

    // weight series shared by α = 1, 2:
    // W_k = k+|n| − 1/4 − 3E₁ + H_k + H_{k+|n|} + H_{k+2|n|}
    // V-part = E₂ + 1/8 − H2_k − H2_{k+|n|} − H2_{k+2|n|}
    // built at a window wide enough for the worst (most negative) summand
    // valuation in the k-range we will touch.
    let mut k_max = 0i64;
    while deg52_term(m, k_max, inv) <= tw + 2 * (k_max + 2 * m) + 4 {
        k_max += 1;
    }
    k_max += 2;
    let worst_val: i64 = (0..=k_max).map(|k| deg52_term(m, k, inv).min(0)).min().unwrap_or(0);
    let wt = tw - worst_val;

    let mut w = e_dir(1, inv, wt).scale_rat(&rat(-3, 1));
    w.add_to_coeff(0, &rat_el(4 * m - 1, 4));
    w = w
        .add(&harmonic_dir(QHarmonicKind::H, mu, inv, wt))
        .unwrap()
        .add(&harmonic_dir(QHarmonicKind::H, 2 * mu, inv, wt))
        .unwrap();
    let mut v_base = e_dir(2, inv, wt);
    v_base.add_to_coeff(0, &rat_el(1, 8));
    v_base = v_base
        .sub(&harmonic_dir(QHarmonicKind::H2, mu, inv, wt))
        .unwrap()
        .sub(&harmonic_dir(QHarmonicKind::H2, 2 * mu, inv, wt))
        .unwrap();

    let mut acc = HalfLaurentSeries::zero(qf(), trunc);
    for k in 0..=k_max {
        let dmin = deg52_term(m, k, inv);
        if dmin > tw {
            continue;
        }
        // per-factor windows compensating the valuations of the cofactors
        let v1 = if inv { 0 } else { k * (k + 1) };
        let v2 = if inv { (k + 2 * m) * (k + 2 * m + 1) } else { 0 };
        let v3 = if inv { (k + m) * (k + m + 1) } else { 0 };
        let need = |vi: i64| tw - dmin + vi + 2;
        let base = mono(2 * m * k + m, inv)
            .mul(&ipoch(k as u32, !inv, need(v1)))
            .unwrap()
            .mul(&ipoch(k as u32 + 2 * mu, inv, need(v2)))
            .unwrap()
            .mul(&ipoch(k as u32 + mu, inv, need(v3)))
            .unwrap()
            .truncate_to(trunc);
        let contrib = match alpha {
            0 => base,
            1 => {
                let v = base.min_degree().unwrap_or(0).min(0);
                base.mul(&w.truncate_to(Trunc::Order(tw - v)))
                    .unwrap()
                    .truncate_to(trunc)
                    .neg()
            }
            2 => {
                let v = base.min_degree().unwrap_or(0).min(0);
                let wloc = w.truncate_to(Trunc::Order(tw - v));
                let vloc = v_base
                    .truncate_to(Trunc::Order(tw - v))
                    .sub(&wloc.mul(&wloc).unwrap().truncate_to(Trunc::Order(tw - v)))
                    .unwrap();
                base.mul(&vloc).unwrap().truncate_to(trunc)
            }
            _ => unreachable!(),
        };
        acc = acc.add(&contrib).unwrap();
        // advance the harmonic weights to k+1
        let k1 = k + 1;
        w = w
            .add(&lambert(k1, inv, wt))
            .unwrap()
            .add(&lambert(k1 + m, inv, wt))
            .unwrap()
            .add(&lambert(k1 + 2 * m, inv, wt))
            .unwrap();
        w.add_to_coeff(0, &rat_el(1, 1));
        v_base = v_base
            .sub(&lambert2(k1, wt))
            .unwrap()
            .sub(&lambert2(k1 + m, wt))
            .unwrap()
            .sub(&lambert2(k1 + 2 * m, wt))
            .unwrap();
    }
    let mut out = if sign_n < 0 { acc.neg() } else { acc };

    if alpha >= 1 && m >= 1 {
        // first finite sum: q^(−n²/2) Σ_{k<|n|} (q⁻¹;q⁻¹)_{|n|−1−k} /
        //   ((q⁻¹;q⁻¹)_k (q;q)_{k+|n|}), weighted for α = 2 by
        //   2(|n| − 3/4 − 3E₁ + H_k + H_{k+|n|} + H_{|n|−k−1})
        let mono_shift = mono(-m * m, inv);
        let vshift = mono_shift.min_degree().unwrap();
        let window = tw - vshift;
        let mut fin = HalfLaurentSeries::zero(qf(), Trunc::Order(window));
        for k in 0..m {
            let ve = if inv { 0 } else { -(m - 1 - k) * (m - k) };
            let v1 = if inv { 0 } else { k * (k + 1) };
            let v2 = if inv { (k + m) * (k + m + 1) } else { 0 };
            let dmin = ve + v1 + v2;
            if dmin > window {
                continue;
            }
            let need = |vi: i64| window - dmin + vi + 2;
            let t = poch((m - 1 - k) as u32, !inv)
                .mul(&ipoch(k as u32, !inv, need(v1)))
                .unwrap()
                .mul(&ipoch(k as u32 + mu, inv, need(v2)))
                .unwrap()
                .truncate_to(Trunc::Order(window));
            let t = match alpha {
                1 => t,
                2 => {
                    let needw = window - dmin.min(0) + 2;
                    let mut wf = e_dir(1, inv, needw).scale_rat(&rat(-3, 1));
                    wf.add_to_coeff(0, &rat_el(4 * m - 3, 4));
                    wf = wf
                        .add(&harmonic_dir(QHarmonicKind::H, k as u32, inv, needw))
                        .unwrap()
                        .add(&harmonic_dir(QHarmonicKind::H, k as u32 + mu, inv, needw))
                        .unwrap()
                        .add(&harmonic_dir(QHarmonicKind::H, (m - k - 1) as u32, inv, needw))
                        .unwrap();
                    t.mul(&wf)
                        .unwrap()
                        .truncate_to(Trunc::Order(window))
                        .scale_rat(&rat(2, 1))
                }
                _ => unreachable!(),
            };
            fin = fin.add(&t).unwrap();
        }
        let fin = fin.mul(&mono_shift).unwrap().truncate_to(trunc);
        out = out.add(&fin).unwrap();
    }

    if alpha == 2 && m >= 1 {
        // last finite sum: −2(−1)^n q^(−|n|/2) Σ_{k<|n|} q^(−|n|k)
        //   (q⁻¹;q⁻¹)_{2|n|−k−1} (q⁻¹;q⁻¹)_{|n|−k−1} / (q⁻¹;q⁻¹)_k
        let mut fin = HalfLaurentSeries::zero(qf(), trunc);
        for k in 0..m {
            let entire = poch((2 * m - k - 1) as u32, !inv)
                .mul(&poch((m - k - 1) as u32, !inv))
                .unwrap()
                .mul(&mono(-2 * m * k - m, inv))
                .unwrap();
            let ve = entire.min_degree().unwrap();
            if ve > tw {
                continue;
            }
            let t = entire
                .mul(&ipoch(k as u32, !inv, tw - ve + 2))
                .unwrap()
                .truncate_to(trunc);
            fin = fin.add(&t).unwrap();
        }
        let fin = fin.scale(&FieldElement::from_i64(qf(), -2 * sign_n)).unwrap();
        out = out.add(&fin).unwrap();
    }
    out.truncate_to(Trunc::Order(t2))
}

static BLOCK_CACHE: Lazy<RwLock<HashMap<(KnotId, u8, i64, Regime), HalfLaurentSeries>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

fn compute_block(key: &BlockKey) -> Result<HalfLaurentSeries> {
    match key.knot {
        KnotId::FourOne => {
            if key.alpha > 1 {
                return Err(CoreError::Parse(format!("4_1 has blocks 0,1, got {}", key.alpha)));
            }
            let s = block_41_q(key.alpha, key.n, key.trunc);
            Ok(match (key.alpha, key.regime) {
                (1, Regime::QInverse) => s.neg(),
                _ => s,
            })
        }
        KnotId::FiveTwo => {
            if key.alpha > 2 {
                return Err(CoreError::Parse(format!("5_2 has blocks 0,1,2, got {}", key.alpha)));
            }
            Ok(block_52_dir(key.alpha, key.n, key.regime == Regime::QInverse, key.trunc))
        }
    }
}

/// Exact colored block, memoized. The cache keeps the widest truncation seen.
pub fn block(key: BlockKey) -> Result<HalfLaurentSeries> {
    check_trunc(&key)?;
    let map_key = (key.knot, key.alpha, key.n, key.regime);
    if let Some(hit) = BLOCK_CACHE.read().unwrap().get(&map_key) {
        if hit.trunc().min(Trunc::Order(key.trunc)) == Trunc::Order(key.trunc) {
            return Ok(hit.truncate_to(Trunc::Order(key.trunc)));
        }
    }
    let computed = compute_block(&key)?;
    let mut w = BLOCK_CACHE.write().unwrap();
    match w.get(&map_key) {
        Some(entry) if entry.trunc().min(computed.trunc()) == computed.trunc() => {}
        _ => {
            w.insert(map_key, computed.clone());
        }
    }
    Ok(computed)
}

/// Convenience wrapper used throughout the index assembly.
pub fn block_at(
    knot: KnotId,
    alpha: u8,
    n: i64,
    regime: Regime,
    t2: i64,
) -> Result<HalfLaurentSeries> {
    block(BlockKey { knot, alpha, n, regime, trunc: t2 })
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
    fn h0_of_41_printed_values() {
        // h^(0)_0 = 1 − q − 2q² − 2q³ − 2q⁴ + q⁶ + 5q⁷ + 7q⁸ + 11q⁹ + …
        let s = block_at(KnotId::FourOne, 0, 0, Regime::Q, 18).unwrap();
        assert_eq!(int_coeffs(&s, 0, 9), vec![1, -1, -2, -2, -2, 0, 1, 5, 7, 11]);
        // h^(0)_2 = q⁵ + q⁶ + 2q⁷ + 2q⁸ + 3q⁹ + …
        let s = block_at(KnotId::FourOne, 0, 2, Regime::Q, 18).unwrap();
        assert_eq!(s.min_degree().unwrap(), 10);
        assert_eq!(int_coeffs(&s, 5, 9), vec![1, 1, 2, 2, 3]);
    }

    #[test]
    fn h0_of_41_half_power_row() {
        // h^(0)_1 = q^(1/2)(−q − q² − q³ + q⁵ + 3q⁶ + 5q⁷ + 7q⁸ + 9q⁹ + …)
        let s = block_at(KnotId::FourOne, 0, 1, Regime::Q, 21).unwrap();
        let vals: Vec<i64> = (1..=9)
            .map(|e| s.coeff(2 * e + 1).unwrap().to_rat().unwrap().to_f64() as i64)
            .collect();
        assert_eq!(vals, vec![-1, -1, -1, 0, 1, 3, 5, 7, 9]);
    }

    #[test]
    fn h1_of_41_printed_values() {
        // h^(1)_0 = 1 − 7q − 14q² − 8q³ − 2q⁴ + 30q⁵ + 43q⁶ + 95q⁷ + 109q⁸ + 137q⁹
        let s = block_at(KnotId::FourOne, 1, 0, Regime::Q, 18).unwrap();
        assert_eq!(int_coeffs(&s, 0, 9), vec![1, -7, -14, -8, -2, 30, 43, 95, 109, 137]);
        // h^(1)_2 = 2q⁻³ − 2q⁻² + 2q + 2q² + 2q³ + 2q⁴ + 11q⁵ + 9q⁶ + 14q⁷ + 6q⁸ + 3q⁹
        let s = block_at(KnotId::FourOne, 1, 2, Regime::Q, 18).unwrap();
        assert_eq!(int_coeffs(&s, -3, 9), vec![2, -2, 0, 0, 2, 2, 2, 2, 11, 9, 14, 6, 3]);
    }

    #[test]
    fn h1_of_41_one_half_powers() {
        // h^(1)_1 = q^(1/2)(−2q⁻¹ − 5q − 3q² + 3q³ + 16q⁴ + 33q⁵ + 51q⁶ + 73q⁷ + 77q⁸ + 81q⁹)
        let s = block_at(KnotId::FourOne, 1, 1, Regime::Q, 21).unwrap();
        let get = |e2: i64| s.coeff(e2).unwrap().to_rat().unwrap().to_f64() as i64;
        assert_eq!(get(-1), -2);
        assert_eq!(get(1), 0);
        assert_eq!(get(3), -5);
        assert_eq!(get(5), -3);
        assert_eq!(get(7), 3);
        assert_eq!(get(9), 16);
        assert_eq!(get(11), 33);
        assert_eq!(get(19), 81);
    }

    #[test]
    fn degree_law_41() {
        for n in 0..=4i64 {
            for alpha in 0..=1u8 {
                let t2 = 2 * n * n + n + 30;
                let s = block_at(KnotId::FourOne, alpha, n, Regime::Q, t2).unwrap();
                assert_eq!(
                    s.min_degree().unwrap(),
                    block_degree(KnotId::FourOne, alpha, n, Regime::Q),
                    "degree mismatch at alpha={alpha} n={n}"
                );
            }
        }
    }

    #[test]
    fn degenerate_truncation_rejected() {
        let r = block_at(KnotId::FourOne, 0, 3, Regime::Q, 10);
        assert!(matches!(r, Err(CoreError::DegenerateTruncation { .. })));
    }

    #[test]
    fn symmetry_in_n() {
        for n in 1..=3i64 {
            for alpha in 0..=1u8 {
                let a = block_at(KnotId::FourOne, alpha, n, Regime::Q, 30).unwrap();
                let b = block_at(KnotId::FourOne, alpha, -n, Regime::Q, 30).unwrap();
                assert!(a.agrees_with(&b));
            }
        }
    }
}
