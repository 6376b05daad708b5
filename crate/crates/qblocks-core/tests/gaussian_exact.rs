//! Exact horizontal series B(ħ) from formal Gaussian summation, pinned to
//! the printed coefficients over the trace fields (symbolic equality).

use qblocks_core::field::{FieldElement, NumberField};
use qblocks_core::gaussian::{bilinear_product, gaussian_sum, GaussScalar};
use qblocks_core::rational::{rat, rat_from_string};
use qblocks_core::wkb::{phi_series, Branch};
use qblocks_core::KnotId;
use rug::Rational;

fn g() -> FieldElement {
    FieldElement::generator(NumberField::SqrtM3).unwrap()
}

#[test]
fn b_series_41_exact() {
    // B(ħ) = 1 − 19/(24√−3³) ħ + 1333/(1152√−3⁶) ħ² + …
    let phi = phi_series(KnotId::FourOne, Branch::Sigma1, 6).unwrap();
    let bs = bilinear_product(&phi, 6).unwrap();
    let b = gaussian_sum(&bs, 2).unwrap();
    assert_eq!(b[0], GaussScalar::one(NumberField::SqrtM3));
    // −19/(24√−3³) = −19/(24·(−3)√−3) = 19/(72√−3) = −19√−3/216
    let b1_expect = GaussScalar::from_base(g().scale(&rat(-19, 216)));
    assert_eq!(b[1], b1_expect, "hbar coefficient of B");
    // 1333/(1152√−3⁶) = 1333/(1152·(−27)) = −1333/31104
    let b2_expect = GaussScalar::from_base(FieldElement::from_rat(
        NumberField::SqrtM3,
        rat(-1333, 31104),
    ));
    assert_eq!(b[2], b2_expect, "hbar^2 coefficient of B");
}

#[test]
fn b_series_52_exact() {
    // printed ħ-coefficient: −1258/13225 d + 7/1840 d³ − 963/211600 d⁵,
    // and ħ²: −226591/19467200 + 88839/7786880 d² + 38187/155737600 d⁴,
    // in d = ξ^{σ₁} − ξ^{σ₂}
    let phi = phi_series(KnotId::FiveTwo, Branch::Sigma1, 6).unwrap();
    let bs = bilinear_product(&phi, 6).unwrap();
    let b = gaussian_sum(&bs, 2).unwrap();
    assert_eq!(b[0], GaussScalar::one(NumberField::XiCubic));
    let d1: Vec<(u32, Rational)> = vec![
        (1, rat_from_string("-1258/13225").unwrap()),
        (3, rat_from_string("7/1840").unwrap()),
        (5, rat_from_string("-963/211600").unwrap()),
    ];
    assert!(b[1].equals_poly_in_diff(&d1).unwrap(), "hbar coefficient of B for 5_2");
    let d2: Vec<(u32, Rational)> = vec![
        (0, rat_from_string("-226591/19467200").unwrap()),
        (2, rat_from_string("88839/7786880").unwrap()),
        (4, rat_from_string("38187/155737600").unwrap()),
    ];
    assert!(b[2].equals_poly_in_diff(&d2).unwrap(), "hbar^2 coefficient of B for 5_2");
}

#[test]
fn depth_shortfall_is_reported() {
    let phi = phi_series(KnotId::FourOne, Branch::Sigma1, 4).unwrap();
    let bs = bilinear_product(&phi, 4).unwrap();
    assert!(gaussian_sum(&bs, 2).is_err());
}
