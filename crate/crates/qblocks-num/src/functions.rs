//! Special values and functions: constants, roots of the trace fields,
//! numeric embedding of exact field elements, Clausen/dilogarithm values,
//! the complex gamma function, and the Jacobi theta sum.

use crate::complex::BigComplex;
use qblocks_core::field::{FieldElement, NumberField};
use qblocks_core::gaussian::GaussScalar;
use qblocks_core::rational::bernoulli_numbers;
use rug::float::Constant;
use rug::Float;

/// 2^(−prec−8), the convergence epsilon for a working precision.
fn eps_for(prec: u32) -> Float {
    Float::with_val(prec, 1) >> (prec + 8)
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// e(x) = exp(2πix) for real x.
pub fn e_of(prec: u32, x: &Float) -> BigComplex {
    let two_pi_x = Float::with_val(prec, 2 * pi(prec) * x);
    BigComplex::new(Float::new(prec), two_pi_x).exp()
}

/// ζ₈ = e(1/8).
pub fn zeta8(prec: u32) -> BigComplex {
    let eighth = Float::with_val(prec, 0.125);
    e_of(prec, &eighth)
}

/// The real root of ξ³ − ξ² + 1 (≈ −0.7548776662), by Newton iteration.
pub fn xi_real_root(prec: u32) -> Float {
    let mut x = Float::with_val(prec, -0.7548776662466927);
    for _ in 0..64 {
        let f = x.clone().square() * &x - x.clone().square() + 1u32;
        let df = Float::with_val(prec, 3 * x.clone().square() - 2 * x.clone());
        let step = f / df;
        x -= &step;
        if step.clone().abs() < Float::with_val(prec, Float::parse("1e-400").unwrap()) {
            break;
        }
    }
    x
}

/// The three embeddings of ξ, ordered σ₁ (Im > 0), σ₂ (conjugate), σ₃ (real).
pub fn xi_embeddings(prec: u32) -> [BigComplex; 3] {
    let r = xi_real_root(prec);
    // ξ³−ξ²+1 = (ξ−r)(ξ² + bξ + c) with b = r−1, c = r²−r; complex pair
    // = (−b ± √(b²−4c))/2 with negative discriminant
    let b = Float::with_val(prec, &r - &Float::with_val(prec, 1));
    let c = Float::with_val(prec, r.clone().square() - &r);
    let disc = Float::with_val(prec, b.clone().square() - Float::with_val(prec, 4 * &c));
    let s = Float::with_val(prec, -&disc).sqrt();
    let re = Float::with_val(prec, -&b) / 2u32;
    let im = s / 2u32;
    let s1 = BigComplex::new(re.clone(), im);
    let s2 = s1.conj();
    [s1, s2, BigComplex::from_real(r)]
}

/// Numeric embedding of an exact field element into ℂ at the given branch
/// index (0-based; irrelevant for ℚ; 0/1 = ±√−3 for ℚ(√−3)).
pub fn embed(x: &FieldElement, sigma: usize, prec: u32) -> BigComplex {
    let gen: BigComplex = match x.field {
        NumberField::Rational => BigComplex::zero(prec),
        NumberField::SqrtM3 => {
            let s3 = Float::with_val(prec, 3u32).sqrt();
            let sign = if sigma == 0 { s3 } else { -s3 };
            BigComplex::new(Float::new(prec), sign)
        }
        NumberField::XiCubic => xi_embeddings(prec)[sigma].clone(),
    };
    let mut acc = BigComplex::zero(prec);
    for k in (0..x.field.degree()).rev() {
        acc = acc.mul(&gen);
        acc = acc.add(&BigComplex::from_rational(prec, x.coeff(k)));
    }
    acc
}

/// Numeric embedding of a composite-field scalar: the base field maps by
/// σ = `s1`, and the adjoined second root y maps by σ = `s2`.
pub fn embed_pair(x: &GaussScalar, s1: usize, s2: usize, prec: u32) -> BigComplex {
    let (c0, c1) = x.parts();
    let y = match c0.field {
        NumberField::SqrtM3 => embed(&FieldElement::generator(NumberField::SqrtM3).unwrap(), s2, prec),
        NumberField::XiCubic => xi_embeddings(prec)[s2].clone(),
        NumberField::Rational => BigComplex::zero(prec),
    };
    embed(c0, s1, prec).add(&embed(c1, s1, prec).mul(&y))
}

/// Clausen function Cl₂(θ) = −∫₀^θ ln|2 sin(t/2)| dt for 0 < θ < 2π, by the
/// Bernoulli expansion θ − θ ln θ + Σ (−1)^(n+1) B_{2n} θ^{2n+1}/(2n (2n+1)!)
/// (all terms positive since B_{2n} alternates).
pub fn clausen2(prec: u32, theta: &Float) -> Float {
    let bern = bernoulli_numbers(200);
    let mut acc = Float::with_val(prec, theta * Float::with_val(prec, 1 - theta.clone().ln()));
    let theta2 = Float::with_val(prec, theta.clone().square());
    let mut theta_pow = theta.clone(); // θ^{2n+1} running
    let mut fact = Float::with_val(prec, 1); // (2n+1)! running
    for n in 1..=99u32 {
        theta_pow *= &theta2;
        fact *= Float::with_val(prec, (2 * n) * (2 * n + 1));
        let sign = if n % 2 == 1 { 1 } else { -1 };
        let b = Float::with_val(prec, &bern[2 * n as usize]) * sign;
        let term = Float::with_val(prec, &b * &theta_pow)
            / Float::with_val(prec, Float::with_val(prec, 2 * n) * &fact);
        acc += &term;
        if term.clone().abs() < eps_for(prec) {
            break;
        }
    }
    acc
}

/// Vol(4₁) = 2 Cl₂(π/3) = 2 Im Li₂(e(1/6)).
pub fn volume_41(prec: u32) -> Float {
    let p3 = pi(prec) / 3u32;
    Float::with_val(prec, 2 * clausen2(prec, &p3))
}

/// Complex dilogarithm by series with inversion/reflection reduction.
pub fn dilog(z: &BigComplex) -> BigComplex {
    let prec = z.prec();
    let one = BigComplex::one(prec);
    let pi2_6 = BigComplex::from_real(Float::with_val(prec, pi(prec).square() / 6u32));
    let r = z.abs().to_f64();
    if r > 1.0 {
        // Li₂(z) = −Li₂(1/z) − π²/6 − ln²(−z)/2
        let inv = one.div(z);
        let ln_mz = z.neg().ln();
        let half_ln2 = ln_mz.mul(&ln_mz).mul_real(&Float::with_val(prec, 0.5));
        return dilog(&inv).neg().sub(&pi2_6).sub(&half_ln2);
    }
    if z.re.to_f64() > 0.5 && r > 0.5 {
        // Li₂(z) = π²/6 − ln(z)ln(1−z) − Li₂(1−z)
        let omz = one.sub(z);
        let cross = z.ln().mul(&omz.ln());
        return pi2_6.sub(&cross).sub(&dilog(&omz));
    }
    // series
    let mut acc = BigComplex::zero(prec);
    let mut zk = BigComplex::one(prec);
    let eps = eps_for(prec);
    for k in 1..200_000u64 {
        zk = zk.mul(z);
        let term = zk.mul_real(&Float::with_val(prec, rug::Rational::from((1, (k * k) as i64))));
        acc = acc.add(&term);
        if term.abs() < eps {
            break;
        }
    }
    acc
}

/// Bloch–Wigner dilogarithm D(z) = Im Li₂(z) + arg(1 − z) ln|z|.
pub fn bloch_wigner(z: &BigComplex) -> Float {
    let prec = z.prec();
    let li2 = dilog(z);
    let one = BigComplex::one(prec);
    let arg = one.sub(z).arg();
    Float::with_val(prec, &li2.im + Float::with_val(prec, arg * z.abs().ln()))
}

/// Vol(5₂): three ideal tetrahedra of shape ξ^{σ₁}.
pub fn volume_52(prec: u32) -> Float {
    let z = xi_embeddings(prec)[0].clone();
    Float::with_val(prec, 3 * bloch_wigner(&z))
}

/// ln Γ(z) by the Stirling series with argument shifting; principal branch
/// for Re z > 0 after shifts.
pub fn ln_gamma(z: &BigComplex) -> BigComplex {
    let prec = z.prec();
    let digits = crate::complex::digits_for_prec(prec) as f64;
    // shift until |z| is comfortably large for the asymptotic series
    let threshold = (digits * 0.4).max(20.0);
    let mut shift = 0u32;
    let zabs = z.abs().to_f64();
    if zabs < threshold {
        shift = (threshold - zabs).ceil() as u32 + 2;
    }
    let zs = z.add(&BigComplex::from_f64(prec, shift as f64, 0.0));
    // Stirling at zs
    let half = Float::with_val(prec, 0.5);
    let two_pi = Float::with_val(prec, 2 * pi(prec));
    let ln2pi_2 = Float::with_val(prec, two_pi.ln() / 2u32);
    let lnz = zs.ln();
    let mut acc = zs
        .sub(&BigComplex::from_real(half.clone()))
        .mul(&lnz)
        .sub(&zs)
        .add(&BigComplex::from_real(ln2pi_2));
    let bern = bernoulli_numbers(200);
    let z2inv = BigComplex::one(prec).div(&zs.mul(&zs));
    let mut zpow = BigComplex::one(prec).div(&zs); // z^{−(2n−1)}
    let eps = eps_for(prec);
    for n in 1..=96u32 {
        let b = &bern[2 * n as usize];
        let denom = rug::Rational::from(((2 * n) * (2 * n - 1), 1u32));
        let coef = rug::Rational::from(b / denom);
        let term = zpow.mul_real(&Float::with_val(prec, coef));
        acc = acc.add(&term);
        if term.abs() < eps {
            break;
        }
        zpow = zpow.mul(&z2inv);
    }
    // remove the shift: ln Γ(z) = ln Γ(z+m) − Σ ln(z+j)
    for j in 0..shift {
        let f = z.add(&BigComplex::from_f64(prec, j as f64, 0.0));
        acc = acc.sub(&f.ln());
    }
    acc
}

pub fn gamma(z: &BigComplex) -> BigComplex {
    ln_gamma(z).exp()
}

/// Euler beta B(a,b) = Γ(a)Γ(b)/Γ(a+b), in logarithms.
pub fn beta(a: &BigComplex, b: &BigComplex) -> BigComplex {
    ln_gamma(a).add(&ln_gamma(b)).sub(&ln_gamma(&a.add(b))).exp()
}

/// Θ(q) = Σ_{n ∈ ℤ} q^(n²/2) by direct summation (|q| < 1).
pub fn theta_sum(q: &BigComplex) -> BigComplex {
    let prec = q.prec();
    let mut acc = BigComplex::one(prec);
    let eps = eps_for(prec);
    let sqrt_q = q.sqrt();
    let mut n = 1u64;
    loop {
        // q^(n²/2) = sqrt(q)^(n²)
        let term = sqrt_q.powi((n * n) as i64);
        let t2 = term.mul_real(&Float::with_val(prec, 2));
        acc = acc.add(&t2);
        if term.abs() < eps || n > 100_000 {
            break;
        }
        n += 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use qblocks_core::rational::rat;

    #[test]
    fn xi_roots_satisfy_cubic() {
        let prec = 256;
        for z in xi_embeddings(prec) {
            let v = z.powi(3).sub(&z.powi(2)).add(&BigComplex::one(prec));
            assert!(v.abs().to_f64() < 1e-60);
        }
        let [s1, _, _] = xi_embeddings(prec);
        assert!(s1.im.is_sign_positive());
        assert!((s1.re.to_f64() - 0.877438833).abs() < 1e-8);
        assert!((s1.im.to_f64() - 0.744861766).abs() < 1e-8);
    }

    #[test]
    fn norm_of_xi_is_minus_one() {
        // product over the three embeddings to 30 digits
        let prec = prec_for_digits(40);
        let [a, b, c] = xi_embeddings(prec);
        let norm = a.mul(&b).mul(&c);
        let expect = BigComplex::from_f64(prec, -1.0, 0.0);
        assert!(crate::complex::distance(&norm, &expect).to_f64() < 1e-25);
    }

    use crate::complex::prec_for_digits;

    #[test]
    fn volume_41_value() {
        // 2.029883212819307250042405108549…
        let v = volume_41(prec_for_digits(40));
        let expect = Float::with_val(256, Float::parse("2.029883212819307250042405108549").unwrap());
        assert!(Float::with_val(64, &v - &expect).abs().to_f64() < 1e-28);
    }

    #[test]
    fn volume_52_value() {
        // 2.8281220883307827…
        let v = volume_52(prec_for_digits(40));
        assert!((v.to_f64() - 2.8281220883307827).abs() < 1e-12);
    }

    #[test]
    fn embedding_of_field_elements() {
        let prec = 256;
        let g = FieldElement::generator(NumberField::SqrtM3).unwrap();
        let e = embed(&g, 0, prec);
        assert!((e.im.to_f64() - 3f64.sqrt()).abs() < 1e-14);
        // δ = 3ξ − 2 at the real embedding: 3(−0.754877…) − 2 < 0
        let xi = FieldElement::generator(NumberField::XiCubic).unwrap();
        let d = &xi.scale(&rat(3, 1)) - &FieldElement::from_i64(NumberField::XiCubic, 2);
        let e3 = embed(&d, 2, prec);
        assert!(e3.re.to_f64() < -4.0 && e3.im.to_f64().abs() < 1e-40);
    }

    #[test]
    fn gamma_reflection() {
        // Γ(z)Γ(1−z) = π / sin(πz)
        let prec = prec_for_digits(50);
        let z = BigComplex::from_f64(prec, 0.3, 1.7);
        let lhs = gamma(&z).mul(&gamma(&BigComplex::one(prec).sub(&z)));
        let piz = z.mul_real(&pi(prec));
        let rhs = BigComplex::from_real(pi(prec)).div(&piz.sin());
        assert!(crate::complex::agreement_digits(&lhs, &rhs) > 40.0);
    }

    #[test]
    fn gamma_half() {
        let prec = prec_for_digits(50);
        let half = BigComplex::from_f64(prec, 0.5, 0.0);
        let g = gamma(&half);
        let sqrt_pi = pi(prec).sqrt();
        assert!(Float::with_val(64, &g.re - &sqrt_pi).abs().to_f64() < 1e-45);
    }

    #[test]
    fn dilog_at_one_half() {
        // Li₂(1/2) = π²/12 − ln²2/2
        let prec = prec_for_digits(50);
        let z = BigComplex::from_f64(prec, 0.5, 0.0);
        let v = dilog(&z);
        let expect = Float::with_val(prec, pi(prec).square() / 12u32)
            - Float::with_val(prec, Float::with_val(prec, 2u32).ln().square() / 2u32);
        assert!(Float::with_val(64, &v.re - &expect).abs().to_f64() < 1e-45);
    }
}
