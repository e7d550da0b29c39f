//! Exact arithmetic in the coefficient field ℚ(q, z, X, Y)[B]/(B² − z₋/z).
//!
//! Layered as integer polynomials ([`MultiPoly`]), their fractions
//! ([`RationalFn`]), and the rank-two extension by the stabilization
//! parameter B ([`ExtScalar`]). All values are immutable and all operations
//! are pure; everything is `Send + Sync`.

mod ext;
mod poly;
mod ratfn;

pub use ext::ExtScalar;
pub use poly::{EvalPoint, Mono, MultiPoly, Var};
pub use ratfn::{z_minus, RationalFn};

/// Errors from the coefficient layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoeffError {
    #[error("division by the zero fraction")]
    DivisionByZero,
    #[error("element is not invertible (norm vanishes)")]
    NotInvertible,
    #[error("invalid evaluation point: {0}")]
    InvalidPoint(String),
}
