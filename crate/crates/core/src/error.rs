//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty domain")]
    EmptyDomain,
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("non-finite coordinate or value")]
    NonFinite,
    #[error("duplicate points in set (distance below tolerance)")]
    DuplicatePoints,
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("lattice requires real values")]
    LatticeRequiresReal,
    #[error("zero scale factor in affine map")]
    ZeroScale,
    #[error("search guard exceeded: {0}")]
    SearchGuard(String),
    #[error("not diagonalizable within tolerance (residual {residual:.3e})")]
    NotDiagonalizable { residual: f64 },
    #[error("spectrum not contained in \u{3c3}: eigenvalue {re}+{im}i off the point set")]
    SpectrumNotInSigma { re: f64, im: f64 },
    #[error("eigenvalue collision after transform")]
    EigenvalueCollision,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
