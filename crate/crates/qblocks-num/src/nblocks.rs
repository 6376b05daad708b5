//! Numeric evaluation of the colored holomorphic blocks at a complex q with
//! |q| < 1 (the |q| > 1 regime is reached through the same base-inversion
//! identities as the exact construction, so the supplied q always sits
//! inside the unit disk).
//!
//! The Lambert-type sums E₁, E₂ are evaluated through their
//! divisor-pair resummation Σ_d q^(d²)(…), which converges like q^(d²) and
//! stays cheap on near-unit rays where the naive Lambert series would need
//! millions of terms.

use crate::complex::BigComplex;
use qblocks_core::blocks::Regime;
use qblocks_core::KnotId;
use rug::Float;

fn eps_for(prec: u32) -> Float {
    Float::with_val(prec, 1) >> (prec + 6)
}

/// E₁(q) = −1/4 + Σ_{s≥1} q^s/(1−q^s) = −1/4 + Σ_{d≥1} q^(d²)(1+q^d)/(1−q^d).
pub fn e1(q: &BigComplex) -> BigComplex {
    let prec = q.prec();
    let eps = eps_for(prec);
    let mut acc = BigComplex::from_f64(prec, -0.25, 0.0);
    let mut qd = BigComplex::one(prec); // q^d
    let mut qd2 = BigComplex::one(prec); // q^(d²)
    let one = BigComplex::one(prec);
    let mut d = 0u64;
    loop {
        d += 1;
        // q^(d²) = q^((d−1)²) · q^(2d−1)
        qd2 = qd2.mul(&qd).mul(&qd).mul(q);
        qd = qd.mul(q);
        let term = qd2.mul(&one.add(&qd)).div(&one.sub(&qd));
        acc = acc.add(&term);
        if term.abs() < eps || d > 1_000_000 {
            break;
        }
    }
    acc
}

/// E₂(q) = −1/24 + Σ s q^s/(1−q^s)
///       = −1/24 + Σ_d q^(d²) [d(1+q^d)/(1−q^d) + q^d/(1−q^d)²].
pub fn e2(q: &BigComplex) -> BigComplex {
    let prec = q.prec();
    let eps = eps_for(prec);
    let mut acc = BigComplex::from_rational(prec, &rug::Rational::from((-1, 24)));
    let mut qd = BigComplex::one(prec);
    let mut qd2 = BigComplex::one(prec);
    let one = BigComplex::one(prec);
    let mut d = 0u64;
    loop {
        d += 1;
        qd2 = qd2.mul(&qd).mul(&qd).mul(q);
        qd = qd.mul(q);
        let denom = one.sub(&qd);
        let df = BigComplex::from_f64(prec, d as f64, 0.0);
        let part = df.mul(&one.add(&qd)).div(&denom).add(&qd.div(&denom.mul(&denom)));
        let term = qd2.mul(&part);
        acc = acc.add(&term);
        if term.abs() < eps || d > 1_000_000 {
            break;
        }
    }
    acc
}

/// q^(e2/2) with a precomputed principal square root of q.
fn q_half_pow(qh: &BigComplex, e2: i64) -> BigComplex {
    qh.powi(e2)
}

/// Running direction-aware state for the q-harmonic weights.
struct Harmonic {
    value: BigComplex,
    inv: bool,
}

impl Harmonic {
    fn new(prec: u32, inv: bool) -> Self {
        Harmonic { value: BigComplex::zero(prec), inv }
    }

    /// Add the j-th Lambert term in the chosen direction.
    fn push(&mut self, q: &BigComplex, j: i64) {
        let prec = q.prec();
        let one = BigComplex::one(prec);
        let qj = q.powi(j);
        let l = qj.div(&one.sub(&qj));
        if self.inv {
            // q^{-j}/(1-q^{-j}) = −1 − q^j/(1−q^j)
            self.value = self.value.sub(&one).sub(&l);
        } else {
            self.value = self.value.add(&l);
        }
    }
}

/// H²-direction is inversion-invariant.
struct Harmonic2 {
    value: BigComplex,
}

impl Harmonic2 {
    fn new(prec: u32) -> Self {
        Harmonic2 { value: BigComplex::zero(prec) }
    }

    fn push(&mut self, q: &BigComplex, j: i64) {
        let prec = q.prec();
        let one = BigComplex::one(prec);
        let qj = q.powi(j);
        let d = one.sub(&qj);
        self.value = self.value.add(&qj.div(&d.mul(&d)));
    }
}

/// 1/(q;q)_m or the inverted-base variant (−1)^m q^(m(m+1)/2)/(q;q)_m.
fn ipoch_value(q: &BigComplex, qh: &BigComplex, m: i64, inv: bool) -> BigComplex {
    let prec = q.prec();
    let one = BigComplex::one(prec);
    let mut acc = BigComplex::one(prec);
    for j in 1..=m {
        acc = acc.div(&one.sub(&q.powi(j)));
    }
    if inv {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        acc = acc
            .mul(&q_half_pow(qh, m * (m + 1)))
            .mul_real(&Float::with_val(prec, sign));
    }
    acc
}

/// (q;q)_m or (q⁻¹;q⁻¹)_m.
fn poch_value(q: &BigComplex, qh: &BigComplex, m: i64, inv: bool) -> BigComplex {
    let prec = q.prec();
    let one = BigComplex::one(prec);
    let mut acc = BigComplex::one(prec);
    for j in 1..=m {
        let f = if inv {
            one.sub(&q_half_pow(qh, -2 * j))
        } else {
            one.sub(&q.powi(j))
        };
        acc = acc.mul(&f);
    }
    acc
}

/// h^(0) and h^(1) of 4₁ at |q| < 1 by direct hypergeometric summation.
/// The |q| > 1 regime follows from h^(0)(q⁻¹) = h^(0)(q), h^(1)(q⁻¹) = −h^(1)(q).
fn block_41(alpha: u8, n: i64, q: &BigComplex, qh: &BigComplex) -> BigComplex {
    let prec = q.prec();
    let eps = eps_for(prec);
    let one = BigComplex::one(prec);
    let m = n.abs();
    let sign_n = if n % 2 == 0 { 1.0 } else { -1.0 };

    let mut term = ipoch_value(q, qh, 2 * m, false);
    let mut weight = if alpha == 1 {
        let mut w = e1(q).mul_real(&Float::with_val(prec, -4));
        for l in 1..=2 * m {
            let ql = q.powi(l);
            w = w.add(&one.add(&ql).div(&one.sub(&ql)));
        }
        w
    } else {
        BigComplex::zero(prec)
    };
    let mut acc = BigComplex::zero(prec);
    let mut k: i64 = 0;
    let mut small = 0;
    loop {
        let signed = if k % 2 == 0 { term.clone() } else { term.neg() };
        let contrib = if alpha == 0 { signed } else { signed.mul(&weight) };
        acc = acc.add(&contrib);
        let scale = acc.abs().max(&Float::with_val(prec, 1e-300));
        if contrib.abs() < Float::with_val(prec, &eps * &scale) {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
        let k1 = k + 1;
        term = term
            .mul(&q.powi(k1 + m))
            .div(&one.sub(&q.powi(k1)))
            .div(&one.sub(&q.powi(k1 + 2 * m)));
        if alpha == 1 {
            let q1 = q.powi(k1);
            let q2 = q.powi(k1 + 2 * m);
            weight = weight
                .add(&one.add(&q1).div(&one.sub(&q1)))
                .add(&one.add(&q2).div(&one.sub(&q2)));
        }
        k = k1;
        if k > 4_000_000 {
            break;
        }
    }
    let mut out = acc
        .mul(&q_half_pow(qh, 2 * m * m + m))
        .mul_real(&Float::with_val(prec, sign_n));
    if alpha == 1 {
        // finite correction sum
        let mut corr = BigComplex::zero(prec);
        for k in 0..2 * m {
            let sgn = if k % 2 == 0 { 1.0 } else { -1.0 };
            let t = poch_value(q, qh, 2 * m - 1 - k, true)
                .mul(&q_half_pow(qh, k * (k + 1) - 2 * m * k))
                .mul(&ipoch_value(q, qh, k, false))
                .mul_real(&Float::with_val(prec, sgn));
            corr = corr.add(&t);
        }
        let corr = corr
            .mul(&q_half_pow(qh, 2 * m * m - m))
            .mul_real(&Float::with_val(prec, -2.0 * sign_n));
        out = out.add(&corr);
    }
    out
}

/// The three 5₂ blocks at |q| < 1 in the direction `inv` (false: at q,
/// true: at q⁻¹), mirroring the exact construction term by term.
fn block_52(alpha: u8, n: i64, inv: bool, q: &BigComplex, qh: &BigComplex) -> BigComplex {
    let prec = q.prec();
    let eps = eps_for(prec);
    let one = BigComplex::one(prec);
    let m = n.abs();
    let sign_n = if n % 2 == 0 { 1.0 } else { -1.0 };
    let dir = |e2: i64| if inv { -e2 } else { e2 };

    let e1v = if alpha >= 1 {
        let v = e1(q);
        if inv {
            v.neg()
        } else {
            v
        }
    } else {
        BigComplex::zero(prec)
    };
    let e2v = if alpha == 2 {
        let v = e2(q);
        if inv {
            v.neg()
        } else {
            v
        }
    } else {
        BigComplex::zero(prec)
    };

    // W_k = k + m − 1/4 − 3E₁ + H_k + H_{k+m} + H_{k+2m}
    let mut h_k = Harmonic::new(prec, inv);
    let mut h_km = Harmonic::new(prec, inv);
    let mut h_k2m = Harmonic::new(prec, inv);
    for j in 1..=m {
        h_km.push(q, j);
    }
    for j in 1..=2 * m {
        h_k2m.push(q, j);
    }
    let mut h2_k = Harmonic2::new(prec);
    let mut h2_km = Harmonic2::new(prec);
    let mut h2_k2m = Harmonic2::new(prec);
    if alpha == 2 {
        for j in 1..=m {
            h2_km.push(q, j);
        }
        for j in 1..=2 * m {
            h2_k2m.push(q, j);
        }
    }

    let mut acc = BigComplex::zero(prec);
    let mut k: i64 = 0;
    let mut small = 0;
    loop {
        let base = q_half_pow(qh, dir(2 * m * k + m))
            .mul(&ipoch_value(q, qh, k, !inv))
            .mul(&ipoch_value(q, qh, k + 2 * m, inv))
            .mul(&ipoch_value(q, qh, k + m, inv));
        let contrib = match alpha {
            0 => base,
            1 => {
                let w = wk(prec, k, m, &e1v, &h_k, &h_km, &h_k2m);
                base.mul(&w).neg()
            }
            2 => {
                let w = wk(prec, k, m, &e1v, &h_k, &h_km, &h_k2m);
                let v = e2v
                    .add(&BigComplex::from_f64(prec, 0.125, 0.0))
                    .sub(&h2_k.value)
                    .sub(&h2_km.value)
                    .sub(&h2_k2m.value)
                    .sub(&w.mul(&w));
                base.mul(&v)
            }
            _ => unreachable!(),
        };
        acc = acc.add(&contrib);
        let scale = acc.abs().max(&Float::with_val(prec, 1e-300));
        if contrib.abs() < Float::with_val(prec, &eps * &scale) {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
        let k1 = k + 1;
        h_k.push(q, k1);
        h_km.push(q, k1 + m);
        h_k2m.push(q, k1 + 2 * m);
        if alpha == 2 {
            h2_k.push(q, k1);
            h2_km.push(q, k1 + m);
            h2_k2m.push(q, k1 + 2 * m);
        }
        k = k1;
        if k > 4_000_000 {
            break;
        }
    }
    let mut out = acc.mul_real(&Float::with_val(prec, sign_n));

    if alpha >= 1 && m >= 1 {
        let mut fin = BigComplex::zero(prec);
        for k in 0..m {
            let t = poch_value(q, qh, m - 1 - k, !inv)
                .mul(&ipoch_value(q, qh, k, !inv))
                .mul(&ipoch_value(q, qh, k + m, inv));
            let t = match alpha {
                1 => t,
                2 => {
                    // 2(m − 3/4 − 3E₁ + H_k + H_{k+m} + H_{m−k−1})
                    let mut w = e1v.mul_real(&Float::with_val(prec, -3));
                    w = w.add(&BigComplex::from_f64(prec, m as f64 - 0.75, 0.0));
                    let mut hk = Harmonic::new(prec, inv);
                    let mut hkm = Harmonic::new(prec, inv);
                    let mut hmk = Harmonic::new(prec, inv);
                    for j in 1..=k {
                        hk.push(q, j);
                    }
                    for j in 1..=k + m {
                        hkm.push(q, j);
                    }
                    for j in 1..=(m - k - 1) {
                        hmk.push(q, j);
                    }
                    w = w.add(&hk.value).add(&hkm.value).add(&hmk.value);
                    t.mul(&w).mul_real(&Float::with_val(prec, 2))
                }
                _ => unreachable!(),
            };
            fin = fin.add(&t);
        }
        out = out.add(&fin.mul(&q_half_pow(qh, dir(-m * m))));
    }

    if alpha == 2 && m >= 1 {
        let mut fin = BigComplex::zero(prec);
        for k in 0..m {
            let t = poch_value(q, qh, 2 * m - k - 1, !inv)
                .mul(&poch_value(q, qh, m - k - 1, !inv))
                .mul(&q_half_pow(qh, dir(-2 * m * k - m)))
                .mul(&ipoch_value(q, qh, k, !inv));
            fin = fin.add(&t);
        }
        out = out.add(&fin.mul_real(&Float::with_val(prec, -2.0 * sign_n)));
    }
    out
}

fn wk(
    prec: u32,
    k: i64,
    m: i64,
    e1v: &BigComplex,
    h_k: &Harmonic,
    h_km: &Harmonic,
    h_k2m: &Harmonic,
) -> BigComplex {
    e1v.mul_real(&Float::with_val(prec, -3))
        .add(&BigComplex::from_f64(prec, (k + m) as f64 - 0.25, 0.0))
        .add(&h_k.value)
        .add(&h_km.value)
        .add(&h_k2m.value)
}

/// Numeric colored block h^(α)_n in the requested regime, at the supplied
/// |q| < 1 (the regime decides whether the formulas are read at q or q⁻¹).
pub fn block_value(knot: KnotId, alpha: u8, n: i64, regime: Regime, q: &BigComplex) -> BigComplex {
    let qh = q.sqrt();
    match knot {
        KnotId::FourOne => {
            let v = block_41(alpha, n, q, &qh);
            match (alpha, regime) {
                (1, Regime::QInverse) => v.neg(),
                _ => v,
            }
        }
        KnotId::FiveTwo => block_52(alpha, n, regime == Regime::QInverse, q, &qh),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::prec_for_digits;
    use crate::evalseries::eval_series;
    use qblocks_core::blocks::block_at;

    /// the numeric block must agree with the exact series evaluated at a
    /// moderate q (two-route oracle)
    #[test]
    fn numeric_matches_exact_series() {
        let prec = prec_for_digits(40);
        let q = BigComplex::from_f64(prec, 0.11, 0.07);
        for (knot, alphas) in [(KnotId::FourOne, 2u8), (KnotId::FiveTwo, 3u8)] {
            for alpha in 0..alphas {
                for n in [0i64, 1, 2, -2] {
                    for regime in [Regime::Q, Regime::QInverse] {
                        let t2 = 2 * qblocks_core::blocks::block_degree(knot, alpha, n, regime).abs() + 260;
                        let exact = block_at(knot, alpha, n, regime, t2).unwrap();
                        let (val, bound) = eval_series(&exact, &q);
                        let num = block_value(knot, alpha, n, regime, &q);
                        let d = crate::complex::distance(&val, &num).to_f64();
                        assert!(
                            d < bound.to_f64().max(1e-25) * 10.0,
                            "{knot:?} a={alpha} n={n} {regime:?}: |exact−numeric| = {d:.3e}, bound {:.3e}",
                            bound.to_f64()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn e_series_against_exact() {
        let prec = prec_for_digits(40);
        let q = BigComplex::from_f64(prec, 0.2, -0.1);
        let e1_exact = qblocks_core::qfuncs::e_series(1, 400).unwrap();
        let (v, bound) = eval_series(&e1_exact, &q);
        let n = e1(&q);
        assert!(crate::complex::distance(&v, &n).to_f64() < bound.to_f64().max(1e-30) * 10.0);
        let e2_exact = qblocks_core::qfuncs::e_series(2, 400).unwrap();
        let (v2, bound2) = eval_series(&e2_exact, &q);
        let n2 = e2(&q);
        assert!(crate::complex::distance(&v2, &n2).to_f64() < bound2.to_f64().max(1e-30) * 10.0);
    }
}
