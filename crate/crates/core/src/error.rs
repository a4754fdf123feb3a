use thiserror::Error;

use crate::bounds::Family;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension must be at least {min}, got {found}")]
    DimensionTooSmall { min: usize, found: usize },
    #[error("matrix has {found} entries, expected {expected} for a square matrix")]
    NotSquare { expected: usize, found: usize },
    #[error("matrix is not Hermitian: max deviation {deviation:e} exceeds tolerance {tolerance:e}")]
    NotHermitian { deviation: f64, tolerance: f64 },
    #[error("state is not normalized: norm {norm}")]
    NotNormalized { norm: f64 },
    #[error("non-finite value in input")]
    NonFinite,
    #[error("perp state is not orthogonal to the state: |overlap| = {overlap:e}")]
    NotOrthogonal { overlap: f64 },
    #[error("variance {value:e} is negative beyond rounding")]
    NegativeVariance { value: f64 },
    #[error("expectation value has imaginary residue {residue:e}")]
    ImaginaryExpectation { residue: f64 },
    #[error("residual {value:e} is negative beyond rounding")]
    NegativeResidual { value: f64 },
    #[error("⟨ψ⊥|ψ_A⟩ and ⟨ψ⊥|A|ψ⟩ disagree by {difference:e}")]
    SimplificationMismatch { difference: f64 },
    #[error("invalid spin quantum numbers: {0}")]
    InvalidSpin(String),
    #[error("family `{0}` does not depend on a perp state")]
    NotPerpDependent(Family),
    #[error("family `{0}` requires a perp state")]
    PerpRequired(Family),
    #[error("unknown bound family `{0}`")]
    UnknownFamily(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
