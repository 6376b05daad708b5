//! Exact data tables: the n = 0 initial series Φ₀(ħ) for both knots, and the
//! x-deformed series data of the 4₁ knot (ħ-coefficients as Laurent
//! polynomials in x over powers of δ).

use crate::field::{FieldElement, NumberField};
use crate::rational::rat;
use rug::Rational;

/// (√−3)^(−3k) as an exact element of ℚ(√−3).
fn g_pow_m3k(k: u32) -> FieldElement {
    let g = FieldElement::generator(NumberField::SqrtM3).unwrap();
    // g⁻¹ = −g/3
    let ginv = g.scale(&rat(-1, 3));
    ginv.pow(3 * k)
}

/// Φ₀ of the 4₁ knot: the ħ-series multiplying (−3)^(−1/4) e^(iVol/ħ),
/// with coefficients c_k · (√−3)^(−3k).
pub fn phi0_41() -> Vec<FieldElement> {
    let f = NumberField::SqrtM3;
    let rats = [
        rat(1, 1),
        rat(-11, 24),
        rat(697, 1152),
        rat(-724351, 414720),
        Rational::from((278392949i64, 39813120i64)),
        Rational::from((-17049329117i64, 209018880i64)),
        Rational::from((39021801798779i64, 75246796800i64)),
    ];
    rats.iter()
        .enumerate()
        .map(|(k, c)| &FieldElement::from_rat(f, c.clone()) * &g_pow_m3k(k as u32))
        .collect()
}

fn xi_el(c2: Rational, c1: Rational, c0: Rational) -> FieldElement {
    // c2·ξ² + c1·ξ + c0
    FieldElement::from_coeffs(NumberField::XiCubic, &[c0, c1, c2]).unwrap()
}

/// Φ₀ of the 5₂ knot: the ħ-series multiplying δ^(−1/2) e^(V/ħ) at n = 0
/// (the n-independent parts of the printed expansion).
pub fn phi0_52() -> Vec<FieldElement> {
    vec![
        FieldElement::one(NumberField::XiCubic),
        xi_el(rat(-33, 2116), rat(-121, 1058), rat(245, 2116)),
        xi_el(
            Rational::from((10025, 389344)),
            Rational::from((-12643, 389344)),
            Rational::from((683, 97336)),
        ),
        xi_el(
            Rational::from((50198891i64, 12357778560i64)),
            Rational::from((-3544387i64, 1235777856i64)),
            Rational::from((6584729i64, 1029814880i64)),
        ),
        xi_el(
            Rational::from((-952485893i64, 1136915627520i64)),
            Rational::from((1861268771i64, 4547662510080i64)),
            Rational::from((203137333i64, 909532502016i64)),
        ),
        xi_el(
            Rational::from((-12690681719899i64, 4393041984737280i64)),
            Rational::from((32954346270143i64, 8786083969474560i64)),
            Rational::from((-3038166526261i64, 2196520992368640i64)),
        ),
        xi_el(
            Rational::from((-8106425420368231i64, 2694399083972198400i64)),
            Rational::from((25148935902272269i64, 8083197251916595200i64)),
            Rational::from((-4471134896235023i64, 898133027990732800i64)),
        ),
    ]
}

/// A Laurent polynomial in x with rational coefficients: (x-power, coeff).
pub type XPoly = Vec<(i64, Rational)>;

fn xpoly(terms: &[(i64, i64)]) -> XPoly {
    terms.iter().map(|&(p, c)| (p, Rational::from(c))).collect()
}

/// The x-deformed series of the 4₁ knot:
/// √δ · Φ(x,y,ħ) = 1 + Σ_k N_k(x)/(c_k δ^(3k)) ħ^k, returned as
/// (numerator, rational scale, power of δ) triples for k = 1, 2.
pub fn xy_series_41() -> Vec<(XPoly, Rational, u32)> {
    vec![
        (
            xpoly(&[(-3, 1), (-2, -1), (-1, -2), (0, 15), (1, -2), (2, -1), (3, 1)]),
            rat(-1, 24),
            3,
        ),
        (
            xpoly(&[
                (-6, 1),
                (-5, -2),
                (-4, -3),
                (-3, 610),
                (-2, -606),
                (-1, -1210),
                (0, 3117),
                (1, -1210),
                (2, -606),
                (3, 610),
                (4, -3),
                (5, -2),
                (6, 1),
            ]),
            rat(1, 1152),
            6,
        ),
    ]
}

/// ħ² coefficient of the bilinear product δ · Φ̂(x,y,ħ)Φ̂(x,y,−ħ):
/// N(x)/δ⁶ with the numerator below (this is also the κ′ period integrand's
/// numerator).
pub fn bilinear_hbar2_numerator_41() -> XPoly {
    xpoly(&[(-3, 1), (-2, -1), (-1, -2), (0, 5), (1, -2), (2, -1), (3, 1)])
}

/// Evaluate an XPoly at an exact rational x (used by tests).
pub fn eval_xpoly_rat(p: &XPoly, x: &Rational) -> Rational {
    let mut acc = Rational::new();
    for (pow, c) in p {
        let mut term = c.clone();
        let mut e = pow.unsigned_abs();
        let base = if *pow >= 0 { x.clone() } else { Rational::from(1) / x.clone() };
        while e > 0 {
            term *= base.clone();
            e -= 1;
        }
        acc += term;
    }
    acc
}
