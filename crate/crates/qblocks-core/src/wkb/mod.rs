//! The discrete WKB series Φₙ(ħ): exponent solve on the q̂-difference
//! equations, materialized asymptotic series with polynomial-in-n
//! coefficients, their exact relations, and the x-deformed data of 4₁.

pub mod data;
pub mod solver;

use crate::field::{FieldElement, NumberField};
use crate::npoly::NPolynomial;
use crate::qdiff::{operator_for, QDiffOperator};
use crate::rational::rat;
use crate::{CoreError, KnotId, Result};
use rug::{Integer, Rational};
use std::collections::BTreeMap;

/// Branch label: σ₁ is the geometric representation, σ₂ its conjugate, σ₃
/// the real embedding (5₂ only).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Sigma1,
    Sigma2,
    Sigma3,
}

impl Branch {
    pub fn index(self) -> usize {
        match self {
            Branch::Sigma1 => 0,
            Branch::Sigma2 => 1,
            Branch::Sigma3 => 2,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "1" | "sigma1" => Ok(Branch::Sigma1),
            "2" | "sigma2" => Ok(Branch::Sigma2),
            "3" | "sigma3" => Ok(Branch::Sigma3),
            other => Err(CoreError::Parse(format!("unknown branch {other:?}"))),
        }
    }
}

/// A completed asymptotic series Φ̂ₙ(ħ) = (1/√δ) e^(V/ħ) e^(a_{2,−1} n²ħ)
/// × Σ_j coeffs[j] ħ^j, with coefficients polynomials in n over the trace
/// field. For 5₂ the three branches share the same exact data and differ by
/// the embedding used at evaluation time.
#[derive(Debug, Clone)]
pub struct PhiSeries {
    pub knot: KnotId,
    pub branch: Branch,
    pub field: NumberField,
    /// symbolic tag of the exponential datum V_σ (numeric value supplied by
    /// the evaluation layer)
    pub v_tag: String,
    /// a_{2,−1}, the quadratic-exponent coefficient
    pub quad: FieldElement,
    /// δ_σ (the 1/√δ prefactor datum)
    pub delta: FieldElement,
    /// all solved exponents a_{k,ℓ}, including (2,−1)
    pub exponents: BTreeMap<(u32, i32), FieldElement>,
    /// ħ-series coefficients of the bracket (constant term 1)
    pub coeffs: Vec<NPolynomial>,
    /// the n = 0 input series
    pub phi0: Vec<FieldElement>,
}

/// ħ-series with NPolynomial coefficients; small helper for materialization.
#[derive(Debug, Clone)]
pub struct NSeries {
    pub field: NumberField,
    pub coeffs: Vec<NPolynomial>,
}

impl NSeries {
    pub fn one(field: NumberField, k: usize) -> Self {
        let mut coeffs = vec![NPolynomial::zero(field); k + 1];
        coeffs[0] = NPolynomial::constant(FieldElement::one(field));
        NSeries { field, coeffs }
    }

    pub fn zero(field: NumberField, k: usize) -> Self {
        NSeries { field, coeffs: vec![NPolynomial::zero(field); k + 1] }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let k = self.order().min(other.order());
        let mut out = Self::zero(self.field, k);
        for i in 0..=k {
            out.coeffs[i] = self.coeffs[i].add(&other.coeffs[i])?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let k = self.order().min(other.order());
        let mut out = Self::zero(self.field, k);
        for i in 0..=k {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(k - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let t = self.coeffs[i].mul(&other.coeffs[j])?;
                out.coeffs[i + j] = out.coeffs[i + j].add(&t)?;
            }
        }
        Ok(out)
    }

    /// exp of a series with no ħ⁰ term.
    pub fn exp(&self) -> Result<Self> {
        assert!(self.coeffs[0].is_zero());
        let k = self.order();
        let mut acc = Self::one(self.field, k);
        let mut pow = Self::one(self.field, k);
        let mut fac = Integer::from(1);
        for j in 1..=k {
            pow = pow.mul(self)?;
            fac *= j as i64;
            let inv = Rational::from((Integer::from(1), fac.clone()));
            let mut term = Self::zero(self.field, k);
            for (i, c) in pow.coeffs.iter().enumerate() {
                term.coeffs[i] = c.scale_rat(&inv);
            }
            acc = acc.add(&term)?;
            if pow.coeffs.iter().all(|c| c.is_zero()) {
                break;
            }
        }
        Ok(acc)
    }

    /// Substitute ħ ↦ −ħ.
    pub fn flip_sign(&self) -> Self {
        let mut out = self.clone();
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            if i % 2 == 1 {
                *c = c.neg();
            }
        }
        out
    }

    /// Map every coefficient through a field-element function.
    pub fn map(&self, f: &dyn Fn(&FieldElement) -> FieldElement) -> Self {
        NSeries {
            field: self.field,
            coeffs: self
                .coeffs
                .iter()
                .map(|p| {
                    let mapped: Vec<FieldElement> = p.coeffs().iter().map(|x| f(x)).collect();
                    NPolynomial::from_coeffs(self.field, mapped)
                })
                .collect(),
        }
    }
}

/// The a_{2,−1} candidates: roots of the cusp polynomial obtained from the
/// q → 1 limit of the q̂-difference equation.
pub fn cusp_polynomial_roots(knot: KnotId) -> Vec<FieldElement> {
    match knot {
        KnotId::FourOne => {
            // 4a² + 3 = 0: a = ±√−3/2
            let g = FieldElement::generator(NumberField::SqrtM3).unwrap();
            vec![g.scale(&rat(1, 2)), g.scale(&rat(-1, 2))]
        }
        KnotId::FiveTwo => {
            // −32a³ − 112a² − 120a − 68 = 0: a = ξ − 3/2 (all three embeddings)
            let xi = FieldElement::generator(NumberField::XiCubic).unwrap();
            vec![&xi - &FieldElement::from_rat(NumberField::XiCubic, rat(3, 2))]
        }
    }
}

fn builtin_phi0(knot: KnotId, branch: Branch) -> Result<Vec<FieldElement>> {
    match (knot, branch) {
        (KnotId::FourOne, Branch::Sigma1) => Ok(data::phi0_41()),
        (KnotId::FourOne, Branch::Sigma2) => {
            Ok(data::phi0_41().into_iter().map(|c| c.conj_sqrt().unwrap()).collect())
        }
        (KnotId::FourOne, Branch::Sigma3) => Err(CoreError::Parse("4_1 has two branches".into())),
        (KnotId::FiveTwo, _) => Ok(data::phi0_52()),
    }
}

fn branch_quad(knot: KnotId, branch: Branch) -> Result<FieldElement> {
    let roots = cusp_polynomial_roots(knot);
    match (knot, branch) {
        (KnotId::FourOne, Branch::Sigma1) => Ok(roots[0].clone()),
        (KnotId::FourOne, Branch::Sigma2) => Ok(roots[1].clone()),
        (KnotId::FourOne, Branch::Sigma3) => Err(CoreError::Parse("4_1 has two branches".into())),
        (KnotId::FiveTwo, _) => Ok(roots[0].clone()),
    }
}

fn branch_delta(knot: KnotId, branch: Branch) -> FieldElement {
    match knot {
        KnotId::FourOne => {
            let g = FieldElement::generator(NumberField::SqrtM3).unwrap();
            match branch {
                Branch::Sigma2 => -&g,
                _ => g,
            }
        }
        KnotId::FiveTwo => {
            // δ = 3ξ − 2
            let xi = FieldElement::generator(NumberField::XiCubic).unwrap();
            &xi.scale(&rat(3, 1)) - &FieldElement::from_i64(NumberField::XiCubic, 2)
        }
    }
}

fn v_tag(knot: KnotId, branch: Branch) -> String {
    format!("V_sigma{}({})", branch.index() + 1, knot.label())
}

/// Solve the discrete WKB ansatz to ħ-order K with a supplied initial
/// series. `phi0` must reach order K (longer initial series can be loaded
/// from a data file and passed here).
pub fn solve_wkb(
    knot: KnotId,
    branch: Branch,
    phi0: &[FieldElement],
    k: usize,
) -> Result<PhiSeries> {
    if phi0.len() <= k {
        return Err(CoreError::NotImplemented(format!(
            "phi0 supplies {} coefficients, need {} for order {k}",
            phi0.len(),
            k + 1
        )));
    }
    let field = match knot {
        KnotId::FourOne => NumberField::SqrtM3,
        KnotId::FiveTwo => NumberField::XiCubic,
    };
    let op: QDiffOperator = operator_for(knot);
    let quad = branch_quad(knot, branch)?;
    let stages = if k >= 2 { k - 1 } else { 1 };
    let exponents = solver::solve_exponents(&op, field, &quad, stages)?;

    // materialize: coeffs = phi0(ħ) · exp(Σ_{(k,ℓ) ≠ (2,−1), k+ℓ ≤ K} a n^k ħ^{k+ℓ})
    let mut e = NSeries::zero(field, k);
    for (&(kk, ll), a) in &exponents {
        if (kk, ll) == (2, -1) {
            continue;
        }
        let h_ord = (kk as i64 + ll as i64) as usize;
        if h_ord > k {
            continue;
        }
        let mono = NPolynomial::monomial(field, kk as usize, a.clone());
        let mut w = NSeries::zero(field, k);
        w.coeffs[h_ord] = mono;
        e = e.add(&w)?;
    }
    let mut b = NSeries::zero(field, k);
    for (i, c) in phi0.iter().take(k + 1).enumerate() {
        b.coeffs[i] = NPolynomial::constant(c.clone());
    }
    let coeffs = b.mul(&e.exp()?)?.coeffs;

    Ok(PhiSeries {
        knot,
        branch,
        field,
        v_tag: v_tag(knot, branch),
        quad,
        delta: branch_delta(knot, branch),
        exponents,
        coeffs,
        phi0: phi0.to_vec(),
    })
}

/// Solve with the built-in printed initial series (ħ-order ≤ 6).
pub fn phi_series(knot: KnotId, branch: Branch, k: usize) -> Result<PhiSeries> {
    solve_wkb(knot, branch, &builtin_phi0(knot, branch)?, k)
}

impl PhiSeries {
    /// The bracket series as an NSeries.
    pub fn bracket(&self) -> NSeries {
        NSeries { field: self.field, coeffs: self.coeffs.clone() }
    }

    /// Exponent a_{k,ℓ}, zero when absent.
    pub fn exponent(&self, k: u32, l: i32) -> FieldElement {
        self.exponents
            .get(&(k, l))
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(self.field))
    }
}

/// Report of the exact series relations.
#[derive(Debug, Clone)]
pub struct PhiRelationReport {
    /// 4₁ only: a^{σ₂}_{k,ℓ} = (−1)^{k+ℓ} a^{σ₁}_{k,ℓ} and the conjugation
    /// match (the series-level content of Φ̂^{σ₂}ₙ(ħ) = i Φ̂^{σ₁}ₙ(−ħ))
    pub sigma2_flip: Option<bool>,
    /// Σ_σ Φ̂^{σ}ₙ(ħ) Φ̂^{σ}ₙ(−ħ) = 0 to the solved order (trace over the
    /// embeddings)
    pub quadratic_zero: bool,
}

/// Verify the exact relations among the asymptotic series to ħ-order K.
pub fn phi_relations(knot: KnotId, k: usize) -> Result<PhiRelationReport> {
    let phi1 = phi_series(knot, Branch::Sigma1, k)?;
    let sigma2_flip = match knot {
        KnotId::FourOne => {
            let phi2 = phi_series(knot, Branch::Sigma2, k)?;
            let mut ok = true;
            for (&(kk, ll), a1) in &phi1.exponents {
                let a2 = phi2.exponent(kk, ll);
                let sign_flip = (kk as i64 + ll as i64) % 2 != 0;
                let expect = if sign_flip { -a1 } else { a1.clone() };
                ok &= a2 == expect;
                ok &= a1.conj_sqrt()? == a2;
            }
            for (j, c1) in phi1.coeffs.iter().enumerate() {
                let c2 = &phi2.coeffs[j];
                let flipped = if j % 2 == 1 { c1.neg() } else { c1.clone() };
                ok &= &flipped == c2;
            }
            Some(ok)
        }
        KnotId::FiveTwo => None,
    };

    // quadratic relation: trace over embeddings of (1/δ) B(ħ) B(−ħ); the
    // materialized bracket already carries exp(E), and E(ħ) + E(−ħ) doubles
    // exactly the even part (the e^{V/ħ} and quadratic-exponent factors
    // cancel between ħ and −ħ)
    let b = phi1.bracket();
    let delta_inv = phi1.delta.inv()?;
    let prod = b.mul(&b.flip_sign())?.map(&|x| &x.clone() * &delta_inv);
    let mut quadratic_zero = true;
    for c in &prod.coeffs {
        for x in c.coeffs() {
            if x.trace() != 0 {
                quadratic_zero = false;
            }
        }
    }
    Ok(PhiRelationReport { sigma2_flip, quadratic_zero })
}
