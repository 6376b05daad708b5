//! Stage-by-stage exact solver for the discrete WKB ansatz.
//!
//! The ansatz Φₙ(ħ) = Φ₀(ħ) exp(Σ a_{k,ℓ} (nħ)^k ħ^ℓ) is substituted into
//! the q-difference operator with x = e^{nħ}, q = e^ħ, and the residual is
//! expanded as a series in ħ whose coefficients are polynomials in n.
//! Coefficients carry affine "ε-slots" for not-yet-determined a_{k,ℓ};
//! products of two ε's only mark the coefficient dirty (unusable as an
//! equation) instead of being tracked, which is exactly the block-triangular
//! structure of the system. At stage N the unknowns {a_{k,ℓ} : k+2ℓ = 2N}
//! are read off from the clean equations in the window ħ^(≤ 2N+3) and solved
//! by Gaussian elimination over the number field; inconsistency or rank
//! deficiency is an error, never silently absorbed.

use crate::field::{FieldElement, NumberField};
use crate::qdiff::QDiffOperator;
use crate::rational::rat_int;
use crate::{CoreError, Result};
use rug::{Integer, Rational};
use std::collections::BTreeMap;

/// One affine coefficient: c + Σ λ_u ε_u, with a dirty flag for dropped
/// quadratic ε-terms.
#[derive(Debug, Clone)]
pub struct Aff {
    pub c: FieldElement,
    pub eps: BTreeMap<u32, FieldElement>,
    pub dirty: bool,
}

impl Aff {
    pub fn zero(field: NumberField) -> Self {
        Aff { c: FieldElement::zero(field), eps: BTreeMap::new(), dirty: false }
    }

    pub fn constant(c: FieldElement) -> Self {
        Aff { c, eps: BTreeMap::new(), dirty: false }
    }

    pub fn symbol(field: NumberField, id: u32) -> Self {
        let mut eps = BTreeMap::new();
        eps.insert(id, FieldElement::one(field));
        Aff { c: FieldElement::zero(field), eps, dirty: false }
    }

    pub fn is_zero(&self) -> bool {
        !self.dirty && self.c.is_zero() && self.eps.values().all(|x| x.is_zero())
    }

    fn add(&self, other: &Self) -> Self {
        let mut eps = self.eps.clone();
        for (id, v) in &other.eps {
            let e = eps.entry(*id).or_insert_with(|| FieldElement::zero(v.field));
            *e += v;
            if e.is_zero() {
                eps.remove(id);
            }
        }
        Aff { c: &self.c + &other.c, eps, dirty: self.dirty || other.dirty }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut dirty = self.dirty || other.dirty;
        if !self.eps.is_empty() && !other.eps.is_empty() {
            dirty = true;
        }
        let mut eps = BTreeMap::new();
        for (id, v) in &self.eps {
            let t = v * &other.c;
            if !t.is_zero() {
                eps.insert(*id, t);
            }
        }
        for (id, v) in &other.eps {
            let t = v * &self.c;
            if !t.is_zero() {
                let e = eps.entry(*id).or_insert_with(|| FieldElement::zero(t.field));
                *e += &t;
                if e.is_zero() {
                    eps.remove(id);
                }
            }
        }
        Aff { c: &self.c * &other.c, eps, dirty }
    }

    fn scale_rat(&self, r: &Rational) -> Self {
        Aff {
            c: self.c.scale(r),
            eps: self.eps.iter().map(|(id, v)| (*id, v.scale(r))).collect(),
            dirty: self.dirty,
        }
    }
}

/// Series in ħ whose coefficients are polynomials in n over `Aff`.
/// coeffs[i][j] is the coefficient of ħ^i n^j.
#[derive(Debug, Clone)]
pub struct ASeries {
    pub field: NumberField,
    pub hmax: usize,
    pub coeffs: Vec<Vec<Aff>>,
}

impl ASeries {
    pub fn zero(field: NumberField, hmax: usize) -> Self {
        ASeries { field, hmax, coeffs: vec![Vec::new(); hmax + 1] }
    }

    pub fn one(field: NumberField, hmax: usize) -> Self {
        let mut s = Self::zero(field, hmax);
        s.coeffs[0] = vec![Aff::constant(FieldElement::one(field))];
        s
    }

    fn add_assign(&mut self, other: &Self) {
        for i in 0..=self.hmax.min(other.hmax) {
            let (a, b) = (&self.coeffs[i], &other.coeffs[i]);
            let len = a.len().max(b.len());
            let mut out = Vec::with_capacity(len);
            for j in 0..len {
                let x = a.get(j).cloned().unwrap_or_else(|| Aff::zero(self.field));
                let y = b.get(j).cloned().unwrap_or_else(|| Aff::zero(self.field));
                out.push(x.add(&y));
            }
            while out.last().map(|v| v.is_zero()).unwrap_or(false) {
                out.pop();
            }
            self.coeffs[i] = out;
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.field, self.hmax.min(other.hmax));
        for i in 0..=out.hmax {
            for i2 in 0..=(out.hmax - i) {
                let pa = &self.coeffs[i];
                let pb = &other.coeffs[i2];
                if pa.is_empty() || pb.is_empty() {
                    continue;
                }
                let target = i + i2;
                let mut prod = vec![Aff::zero(self.field); pa.len() + pb.len() - 1];
                for (ja, xa) in pa.iter().enumerate() {
                    if xa.is_zero() {
                        continue;
                    }
                    for (jb, xb) in pb.iter().enumerate() {
                        if xb.is_zero() {
                            continue;
                        }
                        let t = xa.mul(xb);
                        prod[ja + jb] = prod[ja + jb].add(&t);
                    }
                }
                let mut wrapped = Self::zero(self.field, out.hmax);
                wrapped.coeffs[target] = prod;
                out.add_assign(&wrapped);
            }
        }
        out
    }

    /// exp of a series with no ħ⁰ term.
    pub fn exp(&self) -> Self {
        assert!(self.coeffs[0].is_empty(), "exp needs a series with no constant term");
        let mut acc = Self::one(self.field, self.hmax);
        let mut power = Self::one(self.field, self.hmax);
        let mut kfac = Integer::from(1);
        for k in 1..=self.hmax {
            power = power.mul(self);
            kfac *= k as i64;
            let mut term = power.clone();
            let inv = Rational::from((Integer::from(1), kfac.clone()));
            for row in term.coeffs.iter_mut() {
                for a in row.iter_mut() {
                    *a = a.scale_rat(&inv);
                }
            }
            acc.add_assign(&term);
            if power.coeffs.iter().all(|r| r.is_empty()) {
                break;
            }
        }
        acc
    }
}

/// e^{(j·n + d/2)ħ} expanded to ħ^hmax (exact rational coefficients).
fn exp_linear(field: NumberField, j: i64, d2: i64, hmax: usize) -> ASeries {
    // (jn + d/2)^t / t!
    let mut s = ASeries::zero(field, hmax);
    s.coeffs[0] = vec![Aff::constant(FieldElement::one(field))];
    let mut tfac = Integer::from(1);
    for t in 1..=hmax {
        tfac *= t as i64;
        // binomial expansion of (jn + d/2)^t in n
        let mut row = Vec::with_capacity(t + 1);
        for p in 0..=t {
            // C(t,p) j^p (d/2)^(t−p) / t!
            let mut c = Rational::from((Integer::from(Integer::binomial_u(t as u32, p as u32)), tfac.clone()));
            for _ in 0..p {
                c *= Rational::from(j);
            }
            for _ in 0..(t - p) {
                c *= Rational::from((d2, 2));
            }
            row.push(Aff::constant(FieldElement::from_rat(field, c)));
        }
        while row.last().map(|v| v.is_zero()).unwrap_or(false) {
            row.pop();
        }
        s.coeffs[t] = row;
    }
    s
}

/// ((n+s)^k − n^k) as an exact integer polynomial in n.
fn shift_power_diff(field: NumberField, k: u32, s: i64) -> Vec<Aff> {
    let mut row = vec![Aff::zero(field); k as usize + 1];
    for p in 0..=k {
        // C(k,p) s^(k−p), minus the p = k term
        let mut c = Rational::from(Integer::from(Integer::binomial_u(k, p)));
        for _ in 0..(k - p) {
            c *= Rational::from(s);
        }
        if p == k {
            c -= rat_int(1);
        }
        row[p as usize] = Aff::constant(FieldElement::from_rat(field, c));
    }
    while row.last().map(|v| v.is_zero()).unwrap_or(false) {
        row.pop();
    }
    row
}

/// A value for one exponent slot a_{k,ℓ}: already solved, or a fresh symbol.
#[derive(Debug, Clone)]
pub enum SlotValue {
    Known(FieldElement),
    Symbol(u32),
}



/// Exact WKB solve: returns all a_{k,ℓ} with k even, ℓ ≥ −1,
/// k + 2ℓ ≤ 2·stages, given a_{2,−1}.
pub fn solve_exponents(
    op: &QDiffOperator,
    field: NumberField,
    a2m1: &FieldElement,
    stages: usize,
) -> Result<BTreeMap<(u32, i32), FieldElement>> {
    solve_exponents_opt(op, field, a2m1, stages, false)
}

/// As `solve_exponents`; with `include_odd` the odd-k slots are solved too
/// (the Weyl symmetry of the operator forces them all to zero, which the
/// property suite checks).
pub fn solve_exponents_opt(
    op: &QDiffOperator,
    field: NumberField,
    a2m1: &FieldElement,
    stages: usize,
    include_odd: bool,
) -> Result<BTreeMap<(u32, i32), FieldElement>> {
    let mut solved: BTreeMap<(u32, i32), FieldElement> = BTreeMap::new();
    solved.insert((2, -1), a2m1.clone());

    for stage in 1..=stages {
        let mut widen = 0usize;
        'attempt: loop {
            let hmax = 2 * stage + 3 + 2 * widen;
            // unknowns of this stage
            let stage_unknowns: Vec<(u32, i32)> = slot_list(stage, include_odd)
                .into_iter()
                .filter(|kl| !solved.contains_key(kl))
                .collect();
        // every later unknown whose first ħ-order (k+ℓ) is within the window
        // gets a symbol too, so contaminated equations can be recognized
        let mut symbols: Vec<(u32, i32)> = stage_unknowns.clone();
        for later in (stage + 1)..=(hmax + 1) {
            for (k, l) in slot_list(later, include_odd) {
                if (k as i64 + l as i64) <= hmax as i64
                    && !solved.contains_key(&(k, l))
                    && !symbols.contains(&(k, l))
                {
                    symbols.push((k, l));
                }
            }
        }
        let ids: BTreeMap<(u32, i32), u32> =
            symbols.iter().enumerate().map(|(i, kl)| (*kl, i as u32)).collect();

        // assemble the exponent slots visible in this window
        let mut slots: Vec<((u32, i32), SlotValue)> = Vec::new();
        for (&kl, v) in &solved {
            slots.push((kl, SlotValue::Known(v.clone())));
        }
        for (kl, id) in &ids {
            slots.push((*kl, SlotValue::Symbol(*id)));
        }

        let residual = wkb_residual(op, field, &slots, hmax);

        // clean equations: sensitive only to this stage's unknowns
        let stage_ids: Vec<u32> = stage_unknowns.iter().map(|kl| ids[kl]).collect();
        let mut rows: Vec<(Vec<FieldElement>, FieldElement)> = Vec::new();
        let mut provenance: Vec<(usize, usize)> = Vec::new();
        for (hord, row) in residual.coeffs.iter().enumerate() {
            for (ndeg, a) in row.iter().enumerate() {
                if a.dirty || a.is_zero() {
                    continue;
                }
                if a.eps.keys().any(|id| !stage_ids.contains(id)) {
                    continue;
                }
                if a.eps.is_empty() {
                    if !a.c.is_zero() {
                        return Err(CoreError::SingularSystem(format!(
                            "stage {stage}: inconsistent constant residual {}",
                            a.c
                        )));
                    }
                    continue;
                }
                let coeffs: Vec<FieldElement> = stage_ids
                    .iter()
                    .map(|id| a.eps.get(id).cloned().unwrap_or_else(|| FieldElement::zero(field)))
                    .collect();
                rows.push((coeffs, -&a.c));
                provenance.push((hord, ndeg));
            }
        }
        let _ = &provenance;
        match solve_linear(field, &rows, stage_unknowns.len()) {
            Ok(sol) => {
                for (kl, v) in stage_unknowns.iter().zip(sol) {
                    solved.insert(*kl, v);
                }
                break 'attempt;
            }
            Err(e) if e.starts_with("rank") && widen < 3 => {
                // the operator may vanish to higher order at (x,q) = (1,1);
                // widen the equation window and retry
                widen += 1;
                continue 'attempt;
            }
            Err(e) => {
                return Err(CoreError::SingularSystem(format!("stage {stage}: {e}")));
            }
        }
        }
    }
    Ok(solved)
}

/// The stage-N slot list {(k, ℓ) : k ≥ 2, ℓ ≥ −1, k + 2ℓ = 2N}, excluding
/// (2,−1); k is even unless `include_odd` is set (the Weyl-symmetry property
/// test solves with odd slots included and checks they all come out zero).
pub fn slot_list(n: usize, include_odd: bool) -> Vec<(u32, i32)> {
    let mut out = Vec::new();
    let two_n = 2 * n as i32;
    let step = if include_odd { 1 } else { 2 };
    let mut k = 2i32;
    loop {
        if two_n - k < -2 {
            break;
        }
        if (two_n - k) % 2 == 0 {
            let l = (two_n - k) / 2;
            if l >= -1 && !(k == 2 && l == -1) {
                out.push((k as u32, l));
            }
        }
        k += step;
    }
    if include_odd {
        // odd k with k + 2ℓ = 2N ± 1 sit between the even stages; fold the
        // two adjacent half-stages in
        for parity in [-1i32, 1] {
            let target = two_n + parity;
            let mut k = 3i32;
            while target - k >= -2 {
                if (target - k) % 2 == 0 {
                    let l = (target - k) / 2;
                    if l >= -1 {
                        out.push((k as u32, l));
                    }
                }
                k += 2;
            }
        }
    }
    out
}

/// The full residual Σ_i P_i(e^{nħ}, e^ħ) exp(A(n+s_i) − A(n)) over Aff.
fn wkb_residual(
    op: &QDiffOperator,
    field: NumberField,
    slots: &[((u32, i32), SlotValue)],
    hmax: usize,
) -> ASeries {
    let mut acc = ASeries::zero(field, hmax);
    for (i, p) in op.coeffs.iter().enumerate() {
        let s = op.shifts[i];
        // D = Σ slots a_{k,ℓ} ħ^{k+ℓ} ((n+s)^k − n^k)
        let mut d = ASeries::zero(field, hmax);
        for ((k, l), v) in slots {
            let h_ord = (*k as i64 + *l as i64) as usize;
            if h_ord > hmax {
                continue;
            }
            let poly = shift_power_diff(field, *k, s);
            if poly.is_empty() {
                continue;
            }
            let factor = match v {
                SlotValue::Known(x) => Aff::constant(x.clone()),
                SlotValue::Symbol(id) => Aff::symbol(field, *id),
            };
            let mut wrapped = ASeries::zero(field, hmax);
            wrapped.coeffs[h_ord] = poly.iter().map(|c| c.mul(&factor)).collect();
            d.add_assign(&wrapped);
        }
        let expd = d.exp();
        // P_i(e^{nħ}, e^ħ) = Σ monomials c · e^{(xp·n + q2/2)ħ}
        let mut pser = ASeries::zero(field, hmax);
        for ((xp, q2), c) in p.iter() {
            let mono = exp_linear(field, *xp, *q2, hmax);
            let mut scaled = mono;
            for row in scaled.coeffs.iter_mut() {
                for a in row.iter_mut() {
                    *a = a.scale_rat(c);
                }
            }
            pser.add_assign(&scaled);
        }
        acc.add_assign(&pser.mul(&expd));
    }
    acc
}

/// Exact Gaussian elimination for an overdetermined consistent system.
fn solve_linear(
    field: NumberField,
    rows: &[(Vec<FieldElement>, FieldElement)],
    vars: usize,
) -> std::result::Result<Vec<FieldElement>, String> {
    let mut m: Vec<Vec<FieldElement>> = rows
        .iter()
        .map(|(a, b)| {
            let mut r = a.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let nrows = m.len();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..vars {
        let piv = (rank..nrows).find(|&r| !m[r][col].is_zero());
        let piv = match piv {
            Some(p) => p,
            None => continue,
        };
        m.swap(rank, piv);
        let inv = m[rank][col].inv().map_err(|e| e.to_string())?;
        for x in m[rank].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..nrows {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for cx in 0..=vars {
                    let t = &m[rank][cx] * &f;
                    m[r][cx] -= &t;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == vars {
            break;
        }
    }
    if rank < vars {
        return Err(format!("rank {rank} < {vars} unknowns"));
    }
    // consistency of the remaining rows
    for r in rank..nrows {
        if !m[r][vars].is_zero() {
            return Err("inconsistent system".into());
        }
    }
    let mut out = vec![FieldElement::zero(field); vars];
    for (i, &col) in pivots.iter().enumerate() {
        out[col] = m[i][vars].clone();
    }
    Ok(out)
}

/// Check that a residual with all solved values (no symbols) vanishes to the
/// window; used as an internal verification of a finished solve.
pub fn residual_check(
    op: &QDiffOperator,
    field: NumberField,
    solved: &BTreeMap<(u32, i32), FieldElement>,
    hmax: usize,
) -> bool {
    let slots: Vec<((u32, i32), SlotValue)> = solved
        .iter()
        .map(|(&kl, v)| (kl, SlotValue::Known(v.clone())))
        .collect();
    let r = wkb_residual(op, field, &slots, hmax);
    // all orders that only involve fully-determined data must vanish;
    // orders touched by undetermined exponents (k+2l > solved range) are
    // excluded by bounding the usable window
    let max_stage = solved.keys().map(|(k, l)| (*k as i64 + 2 * *l as i64) / 2).max().unwrap_or(0);
    // beyond max_stage+1 the first undetermined exponent can contribute
    let usable = ((max_stage as usize) + 1).min(hmax);
    r.coeffs.iter().take(usable + 1).all(|row| row.iter().all(|a| a.is_zero()))
}
