//! Exact q-series kernel for the rotated and meromorphic 3D-index of the
//! 4₁ and 5₂ knots.
//!
//! Everything in this crate is exact: arbitrary-size rationals, the three
//! number fields that occur (ℚ, ℚ(√−3) and the cubic field of discriminant
//! −23), truncated Laurent series in q^(1/2), the colored holomorphic blocks
//! and the q-series they assemble into, the q-difference operators that
//! annihilate them, the discrete WKB series Φₙ(ħ), and the formal Gaussian
//! summation producing the horizontal asymptotic series of the meromorphic
//! 3D-index.
//!
//! Floating-point evaluation, extrapolation, quadrature and resummation live
//! in the companion crate `qblocks-num`.

pub mod blocks;
pub mod field;
pub mod gaussian;
pub mod index;
pub mod json;
pub mod npoly;
pub mod qdiff;
pub mod qfuncs;
pub mod rational;
pub mod series;
pub mod wkb;

pub use field::{FieldElement, NumberField};
pub use series::{HalfLaurentSeries, Trunc};

/// Errors shared across the exact kernel.
#[derive(Debug, thiserror::Error)]
pub enum CoreError {
    #[error("field mismatch: {0:?} vs {1:?}")]
    FieldMismatch(NumberField, NumberField),
    #[error("coefficient of q^{}/2 requested beyond truncation order {}/2", .wanted, .have)]
    TruncationExceeded { wanted: i64, have: i64 },
    #[error("truncation order {trunc}/2 cannot hold the leading term at q^{degree}/2")]
    DegenerateTruncation { trunc: i64, degree: i64 },
    #[error("not implemented: {0}")]
    NotImplemented(String),
    #[error("singular linear stage while solving: {0}")]
    SingularSystem(String),
    #[error("sum over colors did not stabilize within window {0}")]
    NonStabilization(i64),
    #[error("division by a series with no known nonzero coefficient")]
    DivisionByZeroSeries,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;

/// The two knots covered by this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KnotId {
    FourOne,
    FiveTwo,
}

impl KnotId {
    /// Number of colored holomorphic blocks (rank of the block vector).
    pub fn block_count(self) -> usize {
        match self {
            KnotId::FourOne => 2,
            KnotId::FiveTwo => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            KnotId::FourOne => "41",
            KnotId::FiveTwo => "52",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "41" | "4_1" => Ok(KnotId::FourOne),
            "52" | "5_2" => Ok(KnotId::FiveTwo),
            other => Err(CoreError::Parse(format!("unknown knot {other:?}"))),
        }
    }
}
