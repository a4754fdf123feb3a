//! Variance lower bounds for pairs of Hermitian operators on finite-dimensional
//! pure states.
//!
//! The crate evaluates the classical Schwarz, Heisenberg–Robertson and
//! Robertson–Schrödinger relations together with their generalizations that
//! involve an auxiliary state orthogonal to the prepared state: a one-parameter
//! family (real α), its minimized product and sum forms, the two-parameter
//! product and sum forms, and the two Maccone–Pati sum bounds.
//!
//! All inner products are conjugate-linear in the **first** argument, i.e.
//! `inner(x, y) = ⟨x|y⟩ = Σ conj(x_k) y_k`.
//!
//! Modules:
//! - [`hilbert`]: kets, normalized states, Hermitian matrices and the
//!   elementary statistics (expectation, variance, deviation vectors).
//! - [`operators`]: spin and truncated-oscillator presets.
//! - [`bounds`]: the bound families and their reports.
//! - [`optimizer`]: multistart pattern search over the orthogonal complement.
//! - [`sweep`]: θ-sweeps over the two spin-1 worked examples.
//! - [`verify`]: random instances, grid oracles and the invariant suite.

pub mod bounds;
pub mod error;
pub mod exec;
pub mod hilbert;
pub mod operators;
pub mod optimizer;
pub mod sweep;
pub mod tol;
pub mod verify;

pub use bounds::{BoundReport, Family, OptimalAlpha, PairStats, PerpContext};
pub use error::{Error, Result};
pub use exec::Execution;
pub use hilbert::{HermitianOperator, Ket, StateVector, C64};
pub use optimizer::{OptimizeConfig, OptimizeResult};
pub use sweep::{Preset, SweepRow, SweepTable};
