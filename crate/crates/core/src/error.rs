use thiserror::Error;

use crate::coeff::GaussianInt;
use crate::series::Rat;

/// Failures of the series kernel and the builders layered on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("constant term {0} is not a unit of Z[i]")]
    NonUnitConstantTerm(GaussianInt),
    #[error("infinite product ({arg}; {base})_inf needs a positive argument exponent")]
    DivergentProduct { arg: String, base: String },
    #[error("z-embedding of {0} has an unbounded window at fixed order")]
    DivergentEmbedding(String),
    #[error("negative q-exponent {0} cannot be represented")]
    NegativeExponent(Rat),
    #[error("Pochhammer base {0} must be q^s with s > 0")]
    InvalidBase(String),
    #[error("cannot substitute z := {0} into a series with negative z-powers")]
    NegativeZPower(String),
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("z-twists differ: {0} vs {1}")]
    TwistMismatch(Rat, Rat),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}
