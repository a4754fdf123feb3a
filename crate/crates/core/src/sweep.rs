//! θ-sweeps over the two spin-1 worked examples (`A = J_x`, `B = J_y`, ħ = 1):
//!
//! - `example-1`: `ψ = cosθ|+⟩ + sinθ|−⟩`, `ψ⊥ = |0⟩`
//! - `example-2`: `ψ = |0⟩`, `ψ⊥ = cosθ|+⟩ + sinθ|−⟩`

use std::fmt;
use std::str::FromStr;

use crate::bounds::{Family, PairStats};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::hilbert::{HermitianOperator, StateVector};
use crate::operators::{spin1_theta_state, spin_basis_state, spin_operator, Axis, SpinLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    Example1,
    Example2,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::Example1 => "example-1",
            Preset::Example2 => "example-2",
        }
    }

    /// `(ψ, ψ⊥)` at angle `theta`.
    pub fn states(self, theta: f64) -> (StateVector, StateVector) {
        let zero = spin_basis_state(1.0, 0.0).expect("valid spin-1 state");
        let rotated = spin1_theta_state(theta);
        match self {
            Preset::Example1 => (rotated, zero),
            Preset::Example2 => (zero, rotated),
        }
    }

    /// `(J_x, J_y)` for spin 1 at ħ = 1.
    pub fn operators() -> (HermitianOperator, HermitianOperator) {
        let op = |axis| spin_operator(SpinLabel::new(1.0, axis, 1.0).expect("valid label"));
        (op(Axis::X), op(Axis::Y))
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "example-1" => Ok(Preset::Example1),
            "example-2" => Ok(Preset::Example2),
            other => Err(Error::UnknownPreset(other.to_string())),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub theta: f64,
    pub var_a: f64,
    pub var_b: f64,
    pub family: Family,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn all_satisfied(&self) -> bool {
        self.rows.iter().all(|r| r.satisfied)
    }

    pub fn family(&self, family: Family) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(move |r| r.family == family)
    }
}

/// Parses `start:stop:count` into `count` evenly spaced points, endpoints
/// included. `count = 1` yields `[start]`.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::InvalidConfig(format!("grid `{spec}` is not start:stop:count"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let stop: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if count == 0 || !start.is_finite() || !stop.is_finite() {
        return Err(bad());
    }
    Ok(linspace(start, stop, count))
}

pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![start];
    }
    let step = (stop - start) / (count - 1) as f64;
    (0..count)
        .map(|i| if i == count - 1 { stop } else { start + step * i as f64 })
        .collect()
}

/// Evaluates `families` along `grid`. Rows are ordered by θ (grid order),
/// then by family in canonical order; duplicate families are dropped.
pub fn sweep_theta(preset: Preset, families: &[Family], grid: &[f64]) -> Result<SweepTable> {
    if grid.is_empty() {
        return Err(Error::InvalidConfig("sweep grid is empty".into()));
    }
    let mut families = families.to_vec();
    families.sort();
    families.dedup();
    let (a, b) = Preset::operators();
    let per_theta = Execution::default().map_indices(grid.len(), |i| -> Result<Vec<SweepRow>> {
        let theta = grid[i];
        let (psi, perp) = preset.states(theta);
        let stats = PairStats::new(&a, &b, &psi)?;
        let ctx = stats.context(&perp)?;
        families
            .iter()
            .map(|&family| {
                let report = stats.report_with(family, &ctx, None)?;
                Ok(SweepRow {
                    theta,
                    var_a: stats.var_a,
                    var_b: stats.var_b,
                    family,
                    lhs: report.lhs,
                    rhs: report.rhs,
                    slack: report.slack,
                    satisfied: report.satisfied,
                })
            })
            .collect()
    });
    let mut rows = Vec::with_capacity(grid.len() * families.len());
    for chunk in per_theta {
        rows.extend(chunk?);
    }
    Ok(SweepTable { rows })
}
