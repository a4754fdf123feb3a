//! Multistart pattern search for the `ψ⊥` that maximizes a bound family's
//! right-hand side.
//!
//! `ψ⊥ = Σ_k (u_{2k} + i·u_{2k+1}) q_k` where `q_k` is the orthonormal
//! complement basis of `ψ` and `u` is a unit vector in `ℝ^{2(d−1)}`. Each
//! restart draws its own start from a ChaCha stream keyed by the restart
//! index, so restarts are independent of scheduling and parallel runs are
//! bitwise identical to serial ones.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::bounds::{BoundReport, Family, PairStats};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::hilbert::{orthonormal_complement_basis, HermitianOperator, Ket, StateVector, C64};

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeConfig {
    pub objective: Family,
    pub restarts: usize,
    pub initial_step: f64,
    pub shrink_factor: f64,
    pub step_floor: f64,
    pub seed: u64,
    /// Coordinate sweeps allowed per restart before giving up on convergence.
    pub max_sweeps: usize,
    pub execution: Execution,
}

impl OptimizeConfig {
    pub fn new(objective: Family) -> Self {
        OptimizeConfig {
            objective,
            restarts: 32,
            initial_step: 0.3,
            shrink_factor: 0.5,
            step_floor: 1e-8,
            seed: 0,
            max_sweeps: 20_000,
            execution: Execution::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.objective.is_objective() {
            return Err(Error::NotPerpDependent(self.objective));
        }
        if self.restarts == 0 {
            return Err(Error::InvalidConfig("restarts must be positive".into()));
        }
        if !(self.shrink_factor > 0.0 && self.shrink_factor < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "shrink_factor must lie in (0, 1), got {}",
                self.shrink_factor
            )));
        }
        if !(self.step_floor > 0.0 && self.step_floor < self.initial_step) {
            return Err(Error::InvalidConfig(format!(
                "need 0 < step_floor < initial_step, got {} and {}",
                self.step_floor, self.initial_step
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct OptimizeResult {
    pub best_perp: StateVector,
    pub best_rhs: f64,
    pub report: BoundReport,
    pub evaluations: usize,
    /// Every restart shrank its step below the floor.
    pub converged: bool,
    pub best_restart: usize,
}

struct RestartOutcome {
    u: Vec<f64>,
    value: f64,
    evaluations: usize,
    converged: bool,
}

fn normalize(u: &mut [f64]) -> bool {
    let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return false;
    }
    u.iter_mut().for_each(|x| *x /= norm);
    true
}

fn perp_from_coordinates(basis: &[StateVector], u: &[f64]) -> Result<StateVector> {
    let dim = basis[0].dim();
    let mut amps = vec![C64::new(0.0, 0.0); dim];
    for (q, pair) in basis.iter().zip(u.chunks(2)) {
        let coeff = C64::new(pair[0], pair[1]);
        for (a, qa) in amps.iter_mut().zip(q.amplitudes()) {
            *a += coeff * qa;
        }
    }
    StateVector::normalize(Ket::new(amps)?)
}

/// Start for restart `index`: a Gaussian direction from stream `index`.
fn random_start(seed: u64, index: usize, len: usize) -> Vec<f64> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    loop {
        let mut u: Vec<f64> = (0..len).map(|_| StandardNormal.sample(&mut rng)).collect();
        if normalize(&mut u) {
            return u;
        }
    }
}

fn pattern_search<F>(mut u: Vec<f64>, config: &OptimizeConfig, objective: F) -> Result<RestartOutcome>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let mut best = objective(&u)?;
    let mut evaluations = 1;
    let mut step = config.initial_step;
    let mut sweeps = 0;
    let mut converged = true;
    while step >= config.step_floor {
        if sweeps == config.max_sweeps {
            converged = false;
            break;
        }
        sweeps += 1;
        let mut improved = false;
        for i in 0..u.len() {
            for dir in [1.0, -1.0] {
                let mut candidate = u.clone();
                candidate[i] += dir * step;
                if !normalize(&mut candidate) {
                    continue;
                }
                let value = objective(&candidate)?;
                evaluations += 1;
                if value > best {
                    best = value;
                    u = candidate;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step *= config.shrink_factor;
        }
    }
    Ok(RestartOutcome {
        u,
        value: best,
        evaluations,
        converged,
    })
}

/// Maximizes the rhs of `config.objective` over unit `ψ⊥` orthogonal to `ψ`.
pub fn optimize_perp(
    a: &HermitianOperator,
    b: &HermitianOperator,
    psi: &StateVector,
    config: &OptimizeConfig,
) -> Result<OptimizeResult> {
    config.validate()?;
    if psi.dim() < 2 {
        return Err(Error::DimensionTooSmall {
            min: 2,
            found: psi.dim(),
        });
    }
    let stats = PairStats::new(a, b, psi)?;
    let basis = orthonormal_complement_basis(psi);
    let len = 2 * basis.len();
    let objective = |u: &[f64]| -> Result<f64> {
        let perp = perp_from_coordinates(&basis, u)?;
        let ctx = stats.context(&perp)?;
        Ok(stats.report_with(config.objective, &ctx, None)?.rhs)
    };

    let outcomes = config.execution.map_indices(config.restarts, |index| {
        pattern_search(random_start(config.seed, index, len), config, objective)
    });

    let mut best: Option<(usize, RestartOutcome)> = None;
    let mut evaluations = 0;
    let mut converged = true;
    for (index, outcome) in outcomes.into_iter().enumerate() {
        let outcome = outcome?;
        evaluations += outcome.evaluations;
        converged &= outcome.converged;
        // strict comparison keeps the lowest restart index on ties
        if best.as_ref().is_none_or(|(_, b)| outcome.value > b.value) {
            best = Some((index, outcome));
        }
    }
    let (best_restart, outcome) = best.expect("at least one restart");
    let best_perp = perp_from_coordinates(&basis, &outcome.u)?;
    let report = stats.report(config.objective, Some(&best_perp), None)?;
    Ok(OptimizeResult {
        best_rhs: report.rhs,
        best_perp,
        report,
        evaluations,
        converged,
        best_restart,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::evaluate;
    use crate::hilbert::inner;
    use crate::operators::{spin1_theta_state, spin_basis_state, spin_operator, Axis, SpinLabel};
    use std::f64::consts::FRAC_PI_8;

    fn spin1(axis: Axis) -> HermitianOperator {
        spin_operator(SpinLabel::new(1.0, axis, 1.0).unwrap())
    }

    #[test]
    fn rejects_perp_independent_objectives() {
        for family in [Family::Hr, Family::Hrs, Family::Schwarz, Family::GeneralAlpha] {
            assert_eq!(
                OptimizeConfig::new(family).validate(),
                Err(Error::NotPerpDependent(family))
            );
        }
        let mut config = OptimizeConfig::new(Family::GenSumHrs);
        config.shrink_factor = 1.0;
        assert!(config.validate().is_err());
        config.shrink_factor = 0.5;
        config.step_floor = 1.0;
        assert!(config.validate().is_err());
    }

    #[test]
    fn rejects_one_dimensional_state() {
        let op = HermitianOperator::identity(1);
        let psi = StateVector::basis(1, 0);
        let err = optimize_perp(&op, &op, &psi, &OptimizeConfig::new(Family::MpPlus)).unwrap_err();
        assert_eq!(err, Error::DimensionTooSmall { min: 2, found: 1 });
    }

    #[test]
    fn spin1_zero_state_envelope() {
        let (jx, jy) = (spin1(Axis::X), spin1(Axis::Y));
        let psi = spin_basis_state(1.0, 0.0).unwrap();
        let result = optimize_perp(&jx, &jy, &psi, &OptimizeConfig::new(Family::GenSumHrs)).unwrap();
        assert!((result.best_rhs - 2.0).abs() < 1e-6, "{}", result.best_rhs);
        assert!(result.report.satisfied);
        assert!(inner(result.best_perp.ket(), psi.ket()).unwrap().norm() < 1e-9);
    }

    #[test]
    fn mp_minus_reaches_preset_value() {
        let (jx, jy) = (spin1(Axis::X), spin1(Axis::Y));
        let psi = spin1_theta_state(FRAC_PI_8);
        let result = optimize_perp(&jx, &jy, &psi, &OptimizeConfig::new(Family::MpMinus)).unwrap();
        assert!(result.best_rhs >= 1.0 - 1e-6);
    }

    #[test]
    fn two_dimensional_complement_is_unique() {
        let a = HermitianOperator::from_rows(vec![
            vec![C64::new(0.3, 0.0), C64::new(1.0, -0.4)],
            vec![C64::new(1.0, 0.4), C64::new(-0.8, 0.0)],
        ])
        .unwrap();
        let b = HermitianOperator::from_rows(vec![
            vec![C64::new(1.1, 0.0), C64::new(0.2, 0.7)],
            vec![C64::new(0.2, -0.7), C64::new(0.5, 0.0)],
        ])
        .unwrap();
        let psi = StateVector::normalize(
            Ket::new(vec![C64::new(0.4, 0.1), C64::new(-0.3, 0.8)]).unwrap(),
        )
        .unwrap();
        let perp = orthonormal_complement_basis(&psi).remove(0);
        for family in [Family::GenSumHrs, Family::GenProductHr, Family::MpPlus] {
            let mut config = OptimizeConfig::new(family);
            config.restarts = 4;
            let result = optimize_perp(&a, &b, &psi, &config).unwrap();
            let direct = evaluate(family, &a, &b, &psi, Some(&perp)).unwrap();
            assert!((result.best_rhs - direct.rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn parallel_and_sequential_agree_bitwise() {
        let (jx, jz) = (spin1(Axis::X), spin1(Axis::Z));
        let psi = spin1_theta_state(0.37);
        let mut config = OptimizeConfig::new(Family::GenProductHrs);
        config.restarts = 8;
        config.seed = 42;
        config.execution = Execution::Sequential;
        let seq = optimize_perp(&jx, &jz, &psi, &config).unwrap();
        config.execution = Execution::Parallel;
        let par = optimize_perp(&jx, &jz, &psi, &config).unwrap();
        assert_eq!(seq.best_rhs.to_bits(), par.best_rhs.to_bits());
        assert_eq!(seq.best_perp, par.best_perp);
        assert_eq!(seq.evaluations, par.evaluations);
        assert_eq!(seq.best_restart, par.best_restart);
    }
}
