//! The full table of printed 5₂ colored-block expansions, both regimes.
//! Coefficients are exact rationals; a single mismatch fails with the
//! offending exponent.

use qblocks_core::blocks::{block_at, block_degree, Regime};
use qblocks_core::rational::rat_from_string;
use qblocks_core::KnotId;

/// assert the series matches `(doubled_exponent, coeff)` pairs and has zero
/// coefficients at every other doubled exponent in `[lo, hi]`.
fn check(knot: KnotId, alpha: u8, n: i64, regime: Regime, t2: i64, expect: &[(i64, &str)]) {
    let s = block_at(knot, alpha, n, regime, t2).unwrap();
    for &(e2, c) in expect {
        let got = s.coeff(e2).unwrap();
        let want = rat_from_string(c).unwrap();
        assert_eq!(
            got.to_rat().unwrap(),
            want,
            "{knot:?} alpha={alpha} n={n} {regime:?}: coefficient of q^{e2}/2"
        );
    }
    let listed: std::collections::BTreeSet<i64> = expect.iter().map(|&(e, _)| e).collect();
    let lo = expect.iter().map(|&(e, _)| e).min().unwrap();
    let hi = expect.iter().map(|&(e, _)| e).max().unwrap();
    for e2 in lo..=hi {
        if !listed.contains(&e2) {
            assert!(
                s.coeff(e2).unwrap().is_zero(),
                "{knot:?} alpha={alpha} n={n} {regime:?}: unexpected term at q^{e2}/2"
            );
        }
    }
    assert_eq!(
        s.min_degree().unwrap(),
        block_degree(knot, alpha, n, regime),
        "degree law violated for {knot:?} alpha={alpha} n={n} {regime:?}"
    );
}

#[test]
fn h0_52_at_q() {
    check(
        KnotId::FiveTwo,
        0,
        0,
        Regime::Q,
        18,
        &[
            (0, "1"),
            (2, "-1"),
            (4, "-3"),
            (6, "-5"),
            (8, "-7"),
            (10, "-6"),
            (12, "-3"),
            (14, "8"),
            (16, "24"),
            (18, "52"),
        ],
    );
    check(
        KnotId::FiveTwo,
        0,
        1,
        Regime::Q,
        17,
        &[
            (1, "-1"),
            (3, "-2"),
            (5, "-3"),
            (7, "-3"),
            (9, "-1"),
            (11, "4"),
            (13, "14"),
            (15, "29"),
            (17, "51"),
        ],
    );
    check(
        KnotId::FiveTwo,
        0,
        2,
        Regime::Q,
        18,
        &[
            (2, "1"),
            (4, "2"),
            (6, "5"),
            (8, "8"),
            (10, "14"),
            (12, "19"),
            (14, "26"),
            (16, "29"),
            (18, "30"),
        ],
    );
}

#[test]
fn h1_52_at_q() {
    check(
        KnotId::FiveTwo,
        1,
        0,
        Regime::Q,
        18,
        &[
            (0, "-1/2"),
            (2, "9/2"),
            (4, "21/2"),
            (6, "19/2"),
            (8, "9/2"),
            (10, "-27"),
            (12, "-133/2"),
            (14, "-156"),
            (16, "-252"),
            (18, "-384"),
        ],
    );
    check(
        KnotId::FiveTwo,
        1,
        1,
        Regime::Q,
        17,
        &[
            (-1, "1"),
            (1, "5/2"),
            (3, "3"),
            (5, "-1/2"),
            (7, "-23/2"),
            (9, "-73/2"),
            (11, "-74"),
            (13, "-133"),
            (15, "-393/2"),
            (17, "-529/2"),
        ],
    );
    check(
        KnotId::FiveTwo,
        1,
        2,
        Regime::Q,
        18,
        &[
            (-6, "-1"),
            (-2, "-2"),
            (0, "-2"),
            (2, "-15/2"),
            (4, "-11"),
            (6, "-41/2"),
            (8, "-23"),
            (10, "-27"),
            (12, "-19/2"),
            (14, "30"),
            (16, "237/2"),
            (18, "272"),
        ],
    );
}

#[test]
fn h2_52_at_q() {
    check(
        KnotId::FiveTwo,
        2,
        0,
        Regime::Q,
        18,
        &[
            (0, "-1/6"),
            (2, "37/6"),
            (4, "17/2"),
            (6, "-115/6"),
            (8, "-389/6"),
            (10, "-181"),
            (12, "-579/2"),
            (14, "-1414/3"),
            (16, "-548"),
            (18, "-1418/3"),
        ],
    );
    check(
        KnotId::FiveTwo,
        2,
        1,
        Regime::Q,
        15,
        &[
            (-3, "-2"),
            (-1, "4"),
            (1, "1/6"),
            (3, "-29/3"),
            (5, "-59/2"),
            (7, "-139/2"),
            (9, "-755/6"),
            (11, "-560/3"),
            (13, "-673/3"),
            (15, "-941/6"),
        ],
    );
    check(
        KnotId::FiveTwo,
        2,
        2,
        Regime::Q,
        2,
        &[
            (-16, "-2"),
            (-14, "4"),
            (-8, "-2"),
            (-6, "-6"),
            (-4, "6"),
            (-2, "-4"),
            (0, "4"),
            (2, "11/6"),
        ],
    );
}

#[test]
fn h0_52_at_q_inverse() {
    check(
        KnotId::FiveTwo,
        0,
        0,
        Regime::QInverse,
        18,
        &[
            (0, "1"),
            (4, "1"),
            (6, "3"),
            (8, "6"),
            (10, "10"),
            (12, "16"),
            (14, "24"),
            (16, "37"),
            (18, "55"),
        ],
    );
    check(
        KnotId::FiveTwo,
        0,
        1,
        Regime::QInverse,
        25,
        &[
            (7, "1"),
            (9, "2"),
            (11, "4"),
            (13, "6"),
            (15, "10"),
            (17, "15"),
            (19, "24"),
            (21, "37"),
            (23, "58"),
            (25, "88"),
        ],
    );
    check(
        KnotId::FiveTwo,
        0,
        2,
        Regime::QInverse,
        42,
        &[
            (24, "1"),
            (26, "2"),
            (28, "5"),
            (30, "9"),
            (32, "17"),
            (34, "27"),
            (36, "45"),
            (38, "68"),
            (40, "105"),
            (42, "154"),
        ],
    );
}

#[test]
fn h1_52_at_q_inverse() {
    check(
        KnotId::FiveTwo,
        1,
        0,
        Regime::QInverse,
        18,
        &[
            (0, "1"),
            (2, "-3"),
            (4, "-3"),
            (6, "3"),
            (8, "6"),
            (10, "12"),
            (12, "5"),
            (14, "3"),
            (16, "-12"),
            (18, "-25"),
        ],
    );
    check(
        KnotId::FiveTwo,
        1,
        1,
        Regime::QInverse,
        21,
        &[
            (3, "-1"),
            (5, "-1"),
            (7, "2"),
            (9, "4"),
            (11, "6"),
            (13, "3"),
            (15, "-1"),
            (17, "-9"),
            (19, "-18"),
            (21, "-23"),
        ],
    );
    check(
        KnotId::FiveTwo,
        1,
        2,
        Regime::QInverse,
        28,
        &[
            (10, "1"),
            (14, "1"),
            (16, "-1"),
            (18, "-1"),
            (20, "-4"),
            (22, "-6"),
            (24, "-6"),
            (26, "-6"),
            (28, "-2"),
        ],
    );
}

#[test]
fn h2_52_at_q_inverse() {
    check(
        KnotId::FiveTwo,
        2,
        0,
        Regime::QInverse,
        18,
        &[
            (0, "-5/6"),
            (2, "5"),
            (4, "-53/6"),
            (6, "-117/2"),
            (8, "-117"),
            (10, "-601/3"),
            (12, "-865/3"),
            (14, "-449"),
            (16, "-4523/6"),
            (18, "-7547/6"),
        ],
    );
    check(
        KnotId::FiveTwo,
        2,
        1,
        Regime::QInverse,
        19,
        &[
            (1, "2"),
            (3, "1"),
            (5, "-1"),
            (7, "-119/6"),
            (9, "-107/3"),
            (11, "-172/3"),
            (13, "-62"),
            (15, "-304/3"),
            (17, "-349/2"),
            (19, "-370"),
        ],
    );
    check(
        KnotId::FiveTwo,
        2,
        2,
        Regime::QInverse,
        18,
        &[
            (2, "-2"),
            (4, "4"),
            (6, "-2"),
            (8, "-2"),
            (10, "-5"),
            (12, "2"),
            (14, "5"),
            (16, "15"),
            (18, "25"),
        ],
    );
}

#[test]
fn symmetry_in_n_52() {
    for alpha in 0..=2u8 {
        for n in 1..=3i64 {
            for regime in [Regime::Q, Regime::QInverse] {
                let deg = block_degree(KnotId::FiveTwo, alpha, n, regime);
                let t2 = deg + 30;
                let a = block_at(KnotId::FiveTwo, alpha, n, regime, t2).unwrap();
                let b = block_at(KnotId::FiveTwo, alpha, -n, regime, t2).unwrap();
                assert!(a.agrees_with(&b), "alpha={alpha} n={n} {regime:?}");
            }
        }
    }
}
