//! Numerical tolerances shared across the crate.

/// Max entrywise deviation from the conjugate transpose, relative to the
/// largest absolute entry.
pub const HERMITIAN: f64 = 1e-10;

/// Allowed deviation of ‖ψ‖ from one.
pub const NORMALIZATION: f64 = 1e-9;

/// Allowed |⟨ψ⊥|ψ⟩|.
pub const ORTHOGONALITY: f64 = 1e-9;

/// Variances in `[-VARIANCE_CLAMP·scale, 0)` are rounded up to zero.
pub const VARIANCE_CLAMP: f64 = 1e-12;

/// Imaginary residue allowed in expectations of Hermitian operators.
pub const EXPECTATION_RESIDUE: f64 = 1e-12;

/// A report is satisfied when `slack ≥ -SLACK · max(1, |lhs|, |rhs|)`.
pub const SLACK: f64 = 1e-9;

/// Lower limit for the overlap residuals.
pub const RESIDUAL: f64 = 1e-10;

/// `b_residual` at or below this (times scale) makes the optimal α undefined.
pub const DEGENERATE: f64 = 1e-12;

/// Tolerance for algebraic identities between two evaluation routes.
pub const IDENTITY: f64 = 1e-10;

/// `max(1, |a|, |b|)`: relative for large magnitudes, absolute near zero.
pub fn scale_of(values: &[f64]) -> f64 {
    values.iter().fold(1.0_f64, |acc, v| acc.max(v.abs()))
}

/// `|a - b| ≤ tol · max(1, |a|, |b|)`.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * scale_of(&[a, b])
}
