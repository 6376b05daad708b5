//! Arbitrary-precision numerics for the 3D-index artifact: evaluation of
//! the exact q-series on rays, asymptotic extrapolation, Turaev-Viro state
//! sums, period quadrature, and Borel-Pade resummation.

pub mod complex;
pub mod evalseries;
pub mod functions;
pub mod nblocks;
