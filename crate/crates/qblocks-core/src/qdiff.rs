//! Linear q-difference operators annihilating the colored holomorphic
//! blocks: exact coefficient data, annihilation residuals, the third-order
//! recursion of the 4₁ diagonal, and the q → 0 stability limits.

use crate::blocks::{block_at, block_degree, Regime};
use crate::field::{FieldElement, NumberField};
use crate::index::rotated_index_at;
use crate::qfuncs;
use crate::series::{HalfLaurentSeries, Trunc};
use crate::{KnotId, Result};
use rug::Rational;
use std::collections::BTreeMap;
use std::fmt;

/// Exact bivariate Laurent polynomial in (x, q^(1/2)):
/// maps (x-power, doubled q-power) to a rational coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentXQ {
    terms: BTreeMap<(i64, i64), Rational>,
}

impl LaurentXQ {
    pub fn zero() -> Self {
        LaurentXQ { terms: BTreeMap::new() }
    }

    pub fn term(c: i64, xpow: i64, q2pow: i64) -> Self {
        let mut t = Self::zero();
        t.add_term(Rational::from(c), xpow, q2pow);
        t
    }

    pub fn add_term(&mut self, c: Rational, xpow: i64, q2pow: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry((xpow, q2pow)).or_insert_with(Rational::new);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&(xpow, q2pow));
        }
    }

    /// Build from (coefficient, x-power, doubled q-power) triples.
    pub fn from_terms(list: &[(i64, i64, i64)]) -> Self {
        let mut t = Self::zero();
        for &(c, xp, q2) in list {
            t.add_term(Rational::from(c), xp, q2);
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((xa, qa), ca) in &self.terms {
            for ((xb, qb), cb) in &other.terms {
                out.add_term(ca.clone() * cb, xa + xb, qa + qb);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentXQ { terms: self.terms.iter().map(|(k, v)| (*k, -v.clone())).collect() }
    }

    pub fn product(factors: &[LaurentXQ]) -> Self {
        let mut acc = LaurentXQ::term(1, 0, 0);
        for f in factors {
            acc = acc.mul(f);
        }
        acc
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i64, i64), &Rational)> {
        self.terms.iter()
    }

    /// Substitute x ↦ q^(e2/2) x^(−1) (used to verify the Weyl symmetry of
    /// the operator data).
    pub fn sub_x_inv(&self, e2: i64) -> Self {
        let mut out = Self::zero();
        for ((xp, q2), coef) in &self.terms {
            out.add_term(coef.clone(), -xp, q2 + e2 * xp);
        }
        out
    }

    /// Multiply by c x^a q^(e2/2).
    pub fn mul_mono(&self, c: &Rational, a: i64, e2: i64) -> Self {
        let mut out = Self::zero();
        for ((xp, q2), coef) in &self.terms {
            out.add_term(coef.clone() * c, xp + a, q2 + e2);
        }
        out
    }

    /// Evaluate at x = q^(±n): an exact Laurent polynomial in q^(1/2).
    pub fn eval_at_qn(&self, n: i64, inverted: bool) -> HalfLaurentSeries {
        let mut s = HalfLaurentSeries::zero(NumberField::Rational, Trunc::Entire);
        let sign = if inverted { -1 } else { 1 };
        for ((xp, q2), coef) in &self.terms {
            let e2 = sign * (2 * n * xp + q2);
            s.add_to_coeff(e2, &FieldElement::from_rat(NumberField::Rational, coef.clone()));
        }
        s
    }
}

impl fmt::Display for LaurentXQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((xp, q2), c)| format!("({c}) x^{xp} q^{q2}/2"))
            .collect();
        write!(f, "{}", if parts.is_empty() { "0".into() } else { parts.join(" + ") })
    }
}

/// A linear q-difference operator Σ_i P_i(x,q) σ^(s_i), where σ shifts the
/// color n by s_i and x stands for q^n.
#[derive(Debug, Clone)]
pub struct QDiffOperator {
    pub knot: KnotId,
    pub shifts: Vec<i64>,
    pub coeffs: Vec<LaurentXQ>,
}

/// The second-order 4₁ operator: P₀ h_n + P₁ h_{n+1} + P₂ h_{n+2} = 0.
pub fn operator_41() -> QDiffOperator {
    // P₀ = q²x²(q³x²−1)
    let p0 = LaurentXQ::from_terms(&[(1, 4, 10), (-1, 2, 4)]);
    // P₁ = −q^(1/2)(1−q²x²)(1−qx−qx²−q³x²−q³x³+q⁴x⁴)
    let p1 = LaurentXQ::product(&[
        LaurentXQ::from_terms(&[(1, 0, 0), (-1, 2, 4)]),
        LaurentXQ::from_terms(&[
            (1, 0, 0),
            (-1, 1, 2),
            (-1, 2, 2),
            (-1, 2, 6),
            (-1, 3, 6),
            (1, 4, 8),
        ]),
    ])
    .mul_mono(&Rational::from(-1), 0, 1);
    // P₂ = q³x²(−1+qx²)
    let p2 = LaurentXQ::from_terms(&[(-1, 2, 6), (1, 4, 8)]);
    QDiffOperator { knot: KnotId::FourOne, shifts: vec![0, 1, 2], coeffs: vec![p0, p1, p2] }
}

/// The third-order 5₂ operator with backward shifts:
/// P₀ h_n + P₁ h_{n−1} + P₂ h_{n−2} + P₃ h_{n−3} = 0.
pub fn operator_52() -> QDiffOperator {
    let one = LaurentXQ::term(1, 0, 0);
    // (1 − q⁻² x)(1 + q⁻² x) = 1 − q⁻⁴x²
    let a22 = LaurentXQ::from_terms(&[(1, 0, 0), (-1, 2, -8)]);
    // (1 − q⁻¹ x)(1 + q⁻¹ x) = 1 − q⁻²x²
    let a11 = LaurentXQ::from_terms(&[(1, 0, 0), (-1, 2, -4)]);
    let b5 = LaurentXQ::from_terms(&[(1, 0, 0), (-1, 2, -10)]); // 1 − q⁻⁵x²
    let b1 = LaurentXQ::from_terms(&[(1, 0, 0), (-1, 2, -2)]); // 1 − q⁻¹x²

    // long factor of P₁ (the doubled monomials of the source display are
    // genuine coefficient-2 terms: the pair (F₁, F₂) satisfies the Weyl
    // symmetry F₂(x) = −q⁻⁹x⁵ F₁(q³/x) term by term)
    let f1 = LaurentXQ::from_terms(&[
        (1, 0, 0),
        (-1, 1, -2),
        (-1, 2, -2),
        (-1, 2, -8),
        (1, 2, -4),
        (1, 2, -6),
        (1, 3, -4),
        (1, 3, -10),
        (2, 4, -10),
        (-1, 5, -12),
    ]);
    let f2 = LaurentXQ::from_terms(&[
        (1, 0, 0),
        (-2, 1, -4),
        (-1, 2, -4),
        (-1, 2, -10),
        (1, 3, -8),
        (1, 3, -14),
        (-1, 3, -10),
        (-1, 3, -12),
        (1, 4, -14),
        (-1, 5, -18),
    ]);

    let p0 = LaurentXQ::product(&[a22.clone(), b5.clone()]).mul_mono(&Rational::from(-1), 2, -4);
    let p1 = LaurentXQ::product(&[a11.clone(), b5, f1]).mul_mono(&Rational::from(1), -3, 3);
    let p2 = LaurentXQ::product(&[a22, b1.clone(), f2]).mul_mono(&Rational::from(1), -5, 10);
    let p3 = LaurentXQ::product(&[a11, b1, one]).mul_mono(&Rational::from(1), -5, 11);
    QDiffOperator {
        knot: KnotId::FiveTwo,
        shifts: vec![0, -1, -2, -3],
        coeffs: vec![p0, p1, p2, p3],
    }
}

pub fn operator_for(knot: KnotId) -> QDiffOperator {
    match knot {
        KnotId::FourOne => operator_41(),
        KnotId::FiveTwo => operator_52(),
    }
}

/// Σ_i P_i(q^(±n), q) h^(α)_{n+s_i} to doubled order `trunc`. Zero for the
/// block families; insufficient block truncation degrades the reported
/// validity, never silently.
pub fn annihilation_residual(
    op: &QDiffOperator,
    alpha: u8,
    n: i64,
    regime: Regime,
    trunc: i64,
) -> Result<HalfLaurentSeries> {
    let inverted = regime == Regime::QInverse;
    let mut acc = HalfLaurentSeries::zero(NumberField::Rational, Trunc::Order(trunc));
    for (i, p) in op.coeffs.iter().enumerate() {
        let shift = op.shifts[i];
        let pe = p.eval_at_qn(n, inverted);
        let v = match pe.min_degree() {
            Some(v) => v,
            None => continue, // a factor like (1 − q^(n+s)) vanished at this n
        };
        let t2 = trunc - v + 2;
        let deg = block_degree(op.knot, alpha, n + shift, regime);
        let hk = block_at(op.knot, alpha, n + shift, regime, t2.max(deg))?;
        acc = acc.add(&pe.mul(&hk)?.truncate_to(Trunc::Order(trunc)))?;
    }
    Ok(acc)
}

/// Σ_i P_i applied to an arbitrary family of series (used for the
/// zero-family and symmetry tests).
pub fn apply_operator(
    op: &QDiffOperator,
    family: &dyn Fn(i64) -> Result<HalfLaurentSeries>,
    n: i64,
    trunc: i64,
) -> Result<HalfLaurentSeries> {
    let mut acc = HalfLaurentSeries::zero(NumberField::Rational, Trunc::Order(trunc));
    for (i, p) in op.coeffs.iter().enumerate() {
        let pe = p.eval_at_qn(n, false);
        let h = family(n + op.shifts[i])?;
        acc = acc.add(&pe.mul(&h)?.truncate_to(Trunc::Order(trunc)))?;
    }
    Ok(acc)
}

/// One coefficient factor of the displayed third-order recursion for the 4₁
/// diagonal: a list of (c, a, b) triples meaning Σ c·q^(a+bn).
fn diag_factor(n: i64, triples: &[(i64, i64, i64)]) -> HalfLaurentSeries {
    let mut s = HalfLaurentSeries::zero(NumberField::Rational, Trunc::Entire);
    for &(c, a, b) in triples {
        s.add_to_coeff(2 * (a + b * n), &FieldElement::from_i64(NumberField::Rational, c));
    }
    s
}

/// The displayed third-order recursion on I^rot(n,n): returns the residual,
/// which is zero to the requested order for every integer n.
pub fn diagonal_recursion_check_41(n: i64, trunc: i64) -> Result<HalfLaurentSeries> {
    // shared long factor of the two middle coefficients
    let s2: &[(i64, i64, i64)] = &[
        (1, 0, 0),
        (-1, 1, 1),
        (-1, 2, 1),
        (-1, 1, 2),
        (-1, 2, 2),
        (1, 3, 2),
        (-1, 4, 2),
        (-1, 5, 2),
        (1, 3, 3),
        (1, 6, 3),
        (1, 3, 4),
        (1, 5, 4),
        (3, 6, 4),
        (1, 7, 4),
        (1, 9, 4),
        (1, 6, 5),
        (1, 9, 5),
        (-1, 7, 6),
        (-1, 8, 6),
        (1, 9, 6),
        (-1, 10, 6),
        (-1, 11, 6),
        (-1, 10, 7),
        (-1, 11, 7),
        (1, 12, 8),
    ];
    let d1: &[(i64, i64, i64)] =
        &[(1, 0, 0), (-1, 2, 1), (-1, 3, 2), (-1, 5, 2), (-1, 6, 3), (1, 8, 4)];
    let d0: &[(i64, i64, i64)] =
        &[(1, 0, 0), (-1, 1, 1), (-1, 1, 2), (-1, 3, 2), (-1, 3, 3), (1, 4, 4)];

    let c0 = vec![
        diag_factor(n, &[(-1, 4, 4)]),
        diag_factor(n, &[(-1, 0, 0), (1, 2, 1)]),
        diag_factor(n, &[(1, 0, 0), (1, 2, 1)]),
        diag_factor(n, &[(-1, 0, 0), (1, 5, 2)]),
        diag_factor(n, d1),
    ];
    let c1 = vec![
        diag_factor(n, &[(1, 1, 0)]),
        diag_factor(n, &[(-1, 0, 0), (1, 1, 1)]),
        diag_factor(n, &[(1, 0, 0), (1, 1, 1)]),
        diag_factor(n, &[(-1, 0, 0), (1, 5, 2)]),
        diag_factor(n, d0),
        diag_factor(n, s2),
    ];
    let c2 = vec![
        diag_factor(n, &[(-1, 0, 0)]),
        diag_factor(n, &[(-1, 0, 0), (1, 2, 1)]),
        diag_factor(n, &[(1, 0, 0), (1, 2, 1)]),
        diag_factor(n, &[(-1, 0, 0), (1, 1, 2)]),
        diag_factor(n, d1),
        diag_factor(n, s2),
    ];
    let c3 = vec![
        diag_factor(n, &[(1, 9, 4)]),
        diag_factor(n, &[(-1, 0, 0), (1, 1, 1)]),
        diag_factor(n, &[(1, 0, 0), (1, 1, 1)]),
        diag_factor(n, &[(-1, 0, 0), (1, 1, 2)]),
        diag_factor(n, d0),
    ];

    let mut acc = HalfLaurentSeries::zero(NumberField::Rational, Trunc::Order(trunc));
    for (j, factors) in [c0, c1, c2, c3].into_iter().enumerate() {
        let mut coef = HalfLaurentSeries::one(NumberField::Rational, Trunc::Entire);
        for f in &factors {
            coef = coef.mul(f)?;
        }
        let v = match coef.min_degree() {
            Some(v) => v,
            None => continue, // coefficient vanishes identically at this n
        };
        let nn = (n + j as i64).abs(); // I^rot(−m,−m) = I^rot(m,m)
        let term = rotated_index_at(KnotId::FourOne, nn, nn, trunc - v + 2)?;
        acc = acc.add(&coef.mul(&term)?.truncate_to(Trunc::Order(trunc)))?;
    }
    Ok(acc)
}

/// Stability report for one normalized block family of the 4₁ knot.
#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub alpha: u8,
    /// for each doubled order d ≤ T: smallest n₀ at which the coefficients
    /// below d froze (checked against the horizon)
    pub freeze_at: Vec<(i64, i64)>,
    pub stable: HalfLaurentSeries,
    /// the predicted limit: 1/(q;q)_∞ for α = 0, 2(q;q)_∞ for α = 1
    pub matches_prediction: bool,
}

/// Verifies the stability of the 4₁ blocks: (−1)^n h^(0)_n(q) q^(−n(2n+1)/2)
/// freezes to 1/(q;q)_∞ and (−1)^n h^(1)_n(q) q^(n(2n−1)/2) to 2(q;q)_∞.
pub fn stability_check_41(trunc: i64) -> Result<Vec<StabilityReport>> {
    let horizon = trunc / 2 + 4;
    let mut out = Vec::new();
    for alpha in 0..=1u8 {
        let normalized = |n: i64| -> Result<HalfLaurentSeries> {
            let deg = block_degree(KnotId::FourOne, alpha, n, Regime::Q);
            let h = block_at(KnotId::FourOne, alpha, n, Regime::Q, trunc + deg)?;
            let sign = if n % 2 == 0 { 1 } else { -1 };
            Ok(h.shift(-deg).scale_rat(&Rational::from(sign)))
        };
        let series: Vec<HalfLaurentSeries> =
            (0..=horizon).map(normalized).collect::<Result<_>>()?;
        let last = &series[horizon as usize];
        let mut freeze_at = Vec::new();
        for d in 0..=trunc {
            let mut n0 = horizon;
            for n in (0..horizon).rev() {
                let a = series[n as usize].truncate_to(Trunc::Order(d));
                let b = last.truncate_to(Trunc::Order(d));
                if a.agrees_with(&b) {
                    n0 = n;
                } else {
                    break;
                }
            }
            freeze_at.push((d, n0));
        }
        let prediction = match alpha {
            0 => qfuncs::partition_series(trunc),
            _ => qfuncs::euler_product(trunc).scale_rat(&Rational::from(2)),
        };
        out.push(StabilityReport {
            alpha,
            freeze_at,
            stable: last.clone(),
            matches_prediction: last.agrees_with(&prediction),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_weyl_symmetry_41() {
        // P_i(1/(q²x)) q⁶x⁶ = −P_{2−i}(x)
        let op = operator_41();
        for i in 0..3 {
            let lhs = op.coeffs[i].sub_x_inv(-4).mul_mono(&Rational::from(1), 6, 12);
            assert_eq!(lhs, op.coeffs[2 - i].neg(), "Weyl symmetry at i={i}");
        }
    }

    #[test]
    fn operator_weyl_symmetry_52() {
        // P_i(q³/x) = −q^(3/2) x⁻¹ P_{3−i}(x)
        let op = operator_52();
        for i in 0..4 {
            let lhs = op.coeffs[i].sub_x_inv(6);
            let rhs = op.coeffs[3 - i].neg().mul_mono(&Rational::from(1), -1, 3);
            assert_eq!(lhs, rhs, "Weyl symmetry at i={i}");
        }
    }

    #[test]
    fn annihilates_41_blocks() {
        let op = operator_41();
        for alpha in 0..=1u8 {
            for n in -3..=3i64 {
                for regime in [Regime::Q, Regime::QInverse] {
                    let r = annihilation_residual(&op, alpha, n, regime, 24).unwrap();
                    assert!(
                        r.is_zero_to_truncation(),
                        "nonzero residual alpha={alpha} n={n} {regime:?}: {r}"
                    );
                }
            }
        }
    }

    #[test]
    fn annihilates_52_blocks() {
        let op = operator_52();
        for alpha in 0..=2u8 {
            for n in -3..=3i64 {
                for regime in [Regime::Q, Regime::QInverse] {
                    let r = annihilation_residual(&op, alpha, n, regime, 20).unwrap();
                    assert!(
                        r.is_zero_to_truncation(),
                        "nonzero residual alpha={alpha} n={n} {regime:?}: {r}"
                    );
                }
            }
        }
    }

    #[test]
    fn zero_family_trivially_annihilated() {
        let op = operator_41();
        let zero = |_: i64| Ok(HalfLaurentSeries::zero(NumberField::Rational, Trunc::Order(40)));
        let r = apply_operator(&op, &zero, 0, 20).unwrap();
        assert!(r.is_zero_to_truncation());
    }

    #[test]
    fn diagonal_recursion_holds() {
        for n in [-2i64, 0, 1] {
            let r = diagonal_recursion_check_41(n, 20).unwrap();
            assert!(r.is_zero_to_truncation(), "diagonal recursion fails at n={n}: {r}");
        }
    }

    #[test]
    fn stability_of_41_blocks() {
        let reports = stability_check_41(16).unwrap();
        for rep in &reports {
            assert!(rep.matches_prediction, "alpha={} stable limit mismatch", rep.alpha);
        }
    }

    #[test]
    fn stable_ratio_identity() {
        // I^rot(n,n)/((q;q)_∞ h^(0)_n) = h^(1)_n/(q;q)_∞ at n = 1
        let t2 = 16;
        let lhs = rotated_index_at(KnotId::FourOne, 1, 1, t2)
            .unwrap()
            .div(
                &qfuncs::euler_product(t2)
                    .mul(&block_at(KnotId::FourOne, 0, 1, Regime::Q, t2).unwrap())
                    .unwrap(),
            )
            .unwrap();
        let rhs = block_at(KnotId::FourOne, 1, 1, Regime::Q, t2)
            .unwrap()
            .div(&qfuncs::euler_product(t2))
            .unwrap();
        assert!(lhs.agrees_with(&rhs));
    }
}
