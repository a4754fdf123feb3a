//! Random instances, brute-force oracles and the invariant suite.
//!
//! Every instance is reproducible from `(dim, seed)`; suite failures carry
//! both so a single case can be replayed with [`random_instance`].

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::bounds::{Annotation, Family, OptimalAlpha, PairStats, PerpContext};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::hilbert::{
    inner, orthonormal_complement_basis, HermitianOperator, Ket, StateVector, C64,
};
use crate::operators::{spin_basis_state, spin_operator, Axis, SpinLabel};
use crate::sweep::{linspace, Preset};
use crate::tol;

#[derive(Debug, Clone, PartialEq)]
pub struct RandomInstance {
    pub a: HermitianOperator,
    pub b: HermitianOperator,
    pub psi: StateVector,
    pub psi_perp: StateVector,
    pub dim: usize,
    pub seed: u64,
}

fn gaussian_c64(rng: &mut ChaCha20Rng) -> C64 {
    C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

/// Haar-distributed direction: normalized i.i.d. complex Gaussians.
pub fn random_state(dim: usize, rng: &mut ChaCha20Rng) -> StateVector {
    loop {
        let amps = (0..dim).map(|_| gaussian_c64(rng)).collect();
        if let Ok(state) = StateVector::normalize(Ket::new(amps).expect("finite")) {
            return state;
        }
    }
}

/// `(M + M†)/2` for a complex Gaussian `M`.
pub fn random_hermitian(dim: usize, rng: &mut ChaCha20Rng) -> HermitianOperator {
    let m: Vec<C64> = (0..dim * dim).map(|_| gaussian_c64(rng)).collect();
    let mut entries = vec![C64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            entries[i * dim + j] = (m[i * dim + j] + m[j * dim + i].conj()) * 0.5;
        }
    }
    HermitianOperator::new(dim, entries).expect("symmetrized")
}

/// Uniformly random unit vector in the complement of `psi`.
pub fn random_perp(psi: &StateVector, rng: &mut ChaCha20Rng) -> StateVector {
    let basis = orthonormal_complement_basis(psi);
    loop {
        let mut amps = vec![C64::new(0.0, 0.0); psi.dim()];
        for q in &basis {
            let coeff = gaussian_c64(rng);
            for (a, qa) in amps.iter_mut().zip(q.amplitudes()) {
                *a += coeff * qa;
            }
        }
        if let Ok(state) = StateVector::normalize(Ket::new(amps).expect("finite")) {
            return state;
        }
    }
}

/// `count` random complement states from an independent stream.
pub fn random_perp_samples(psi: &StateVector, seed: u64, count: usize) -> Vec<StateVector> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX);
    (0..count).map(|_| random_perp(psi, &mut rng)).collect()
}

pub fn random_instance(dim: usize, seed: u64) -> Result<RandomInstance> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall { min: 2, found: dim });
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(dim as u64);
    let psi = random_state(dim, &mut rng);
    let a = random_hermitian(dim, &mut rng);
    let b = random_hermitian(dim, &mut rng);
    let psi_perp = random_perp(&psi, &mut rng);
    Ok(RandomInstance {
        a,
        b,
        psi,
        psi_perp,
        dim,
        seed,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridMinimum {
    pub alpha: f64,
    pub value: f64,
    /// The argmin is not an endpoint of the grid.
    pub interior: bool,
    pub step: f64,
}

/// Brute-force minimum of the one-parameter quadratic on `points` evenly
/// spaced α in `[lo, hi]`. Ties resolve to the first grid point.
pub fn grid_minimum(ctx: &PerpContext, lo: f64, hi: f64, points: usize) -> Result<GridMinimum> {
    if points < 3 || lo >= hi {
        return Err(Error::InvalidConfig(format!(
            "alpha grid needs points ≥ 3 and lo < hi, got {points} on [{lo}, {hi}]"
        )));
    }
    let grid = linspace(lo, hi, points);
    let mut best = (0, ctx.general_alpha_value(grid[0]));
    for (i, &alpha) in grid.iter().enumerate().skip(1) {
        let value = ctx.general_alpha_value(alpha);
        if value < best.1 {
            best = (i, value);
        }
    }
    Ok(GridMinimum {
        alpha: grid[best.0],
        value: best.1,
        interior: best.0 != 0 && best.0 != points - 1,
        step: (hi - lo) / (points - 1) as f64,
    })
}

pub fn alpha_grid_oracle(
    a: &HermitianOperator,
    b: &HermitianOperator,
    psi: &StateVector,
    psi_perp: &StateVector,
    lo: f64,
    hi: f64,
    points: usize,
) -> Result<GridMinimum> {
    let ctx = PairStats::new(a, b, psi)?.context(psi_perp)?;
    grid_minimum(&ctx, lo, hi, points)
}

/// `‖φ‖² − |⟨ψ⊥|φ⟩|²` with `φ = ψ_A + iα·ψ_B`, evaluated from the vectors
/// rather than the residual/cross-term decomposition.
pub fn projected_norm(stats: &PairStats<'_>, psi_perp: &StateVector, alpha: f64) -> Result<f64> {
    let phi = stats.dev_a.plus_scaled(C64::new(0.0, alpha), &stats.dev_b)?;
    Ok(phi.norm_sqr() - inner(psi_perp.ket(), &phi)?.norm_sqr())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Confirmed,
    Refuted,
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub name: String,
    pub verdict: Verdict,
    /// Verdict a correct implementation produces.
    pub expected: Verdict,
    pub detail: String,
}

impl Claim {
    fn new(name: &str, verdict: Verdict, expected: Verdict, detail: impl Into<String>) -> Self {
        Claim {
            name: name.to_string(),
            verdict,
            expected,
            detail: detail.into(),
        }
    }

    fn check(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        let verdict = if ok { Verdict::Confirmed } else { Verdict::Refuted };
        Claim::new(name, verdict, Verdict::Confirmed, detail)
    }
}

/// Spin-1 variances on `cosθ|+⟩ + sinθ|−⟩` along a 17-point grid over
/// `[0, π/2]`, compared against `ħ²(1 ± sin2θ)` and `(ħ²/2)(1 ± sin2θ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct VarianceClaims {
    /// `(θ, ΔJ_x², ΔJ_y²)`
    pub rows: Vec<(f64, f64, f64)>,
    pub claims: Vec<Claim>,
}

pub fn variance_claim_oracle() -> Result<VarianceClaims> {
    let (jx, jy) = Preset::operators();
    let mut rows = Vec::new();
    let (mut literal_err, mut halved_err, mut literal_sum_err, mut halved_sum_err) =
        (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    for theta in linspace(0.0, FRAC_PI_2, 17) {
        let (psi, perp) = Preset::Example1.states(theta);
        let stats = PairStats::new(&jx, &jy, &psi)?;
        let ctx = stats.context(&perp)?;
        let mp = stats.mp(&ctx, true)?.rhs.min(stats.mp(&ctx, false)?.rhs);
        let s2 = (2.0 * theta).sin();
        literal_err = literal_err
            .max((stats.var_a - (1.0 + s2)).abs())
            .max((stats.var_b - (1.0 - s2)).abs());
        halved_err = halved_err
            .max((stats.var_a - 0.5 * (1.0 + s2)).abs())
            .max((stats.var_b - 0.5 * (1.0 - s2)).abs());
        // equality in the sum bound under each candidate
        literal_sum_err = literal_sum_err.max(((1.0 + s2) + (1.0 - s2) - mp).abs());
        halved_sum_err = halved_sum_err.max((stats.var_a + stats.var_b - mp).abs());
        rows.push((theta, stats.var_a, stats.var_b));
    }
    let tol = tol::IDENTITY;
    let literal_verdict = if literal_err <= tol {
        Verdict::Confirmed
    } else {
        Verdict::Refuted
    };
    let claims = vec![
        Claim::new(
            "example-1-variance-literal",
            literal_verdict,
            Verdict::Refuted,
            format!(
                "ΔJx² = ħ²(1+sin2θ), ΔJy² = ħ²(1−sin2θ): max deviation {literal_err:.3e}; \
                 corrected value (ħ²/2)(1±sin2θ)"
            ),
        ),
        Claim::check(
            "example-1-variance-halved",
            halved_err <= tol,
            format!("ΔJx², ΔJy² = (ħ²/2)(1±sin2θ): max deviation {halved_err:.3e}"),
        ),
        Claim::check(
            "example-1-mp-equality",
            halved_sum_err <= tol,
            format!(
                "ΔJx² + ΔJy² equals the Maccone–Pati bound ħ²: max deviation {halved_sum_err:.3e} \
                 (literal factor would give {literal_sum_err:.3e})"
            ),
        ),
    ];
    Ok(VarianceClaims { rows, claims })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub dims: Vec<usize>,
    pub count: usize,
    pub seed: u64,
    /// Restricts family-specific invariants; `None` runs everything.
    pub families: Option<Vec<Family>>,
    pub execution: Execution,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            dims: vec![2, 3, 4, 6, 8],
            count: 1000,
            seed: 0,
            families: None,
            execution: Execution::default(),
        }
    }
}

impl SuiteConfig {
    fn wants(&self, families: &[Family]) -> bool {
        match &self.families {
            None => true,
            Some(selected) => families.iter().any(|f| selected.contains(f)),
        }
    }

    fn selected(&self) -> Vec<Family> {
        match &self.families {
            None => Family::ALL.to_vec(),
            Some(selected) => selected.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub invariant: String,
    pub seed: u64,
    pub dim: usize,
    /// Signed margin; negative means the check failed by that much
    /// (relative slack for validity checks).
    pub slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub instances_run: usize,
    pub failures: Vec<Failure>,
    /// Most negative relative slack over all validity checks.
    pub worst_slack: Option<f64>,
    /// Number of evaluations per invariant.
    pub checks: BTreeMap<String, usize>,
    pub claims: Vec<Claim>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn claim(&self, name: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.name == name)
    }
}

/// Accumulates per-instance check outcomes.
#[derive(Default)]
struct Checks {
    failures: Vec<Failure>,
    counts: BTreeMap<String, usize>,
    worst_slack: Option<f64>,
    seed: u64,
    dim: usize,
}

impl Checks {
    fn new(seed: u64, dim: usize) -> Self {
        Checks {
            seed,
            dim,
            ..Default::default()
        }
    }

    /// Records a check whose `margin` must be nonnegative.
    fn margin(&mut self, name: &str, margin: f64) {
        *self.counts.entry(name.to_string()).or_default() += 1;
        if margin.is_nan() || margin < 0.0 {
            self.failures.push(Failure {
                invariant: name.to_string(),
                seed: self.seed,
                dim: self.dim,
                slack: margin,
            });
        }
    }

    /// `|a − b| ≤ tol·max(1, |a|, |b|)`
    fn close(&mut self, name: &str, a: f64, b: f64, tol: f64) {
        self.margin(name, tol * tol::scale_of(&[a, b]) - (a - b).abs());
    }

    fn flag(&mut self, name: &str, ok: bool) {
        self.margin(name, if ok { 0.0 } else { -1.0 });
    }

    fn validity(&mut self, family: Family, relative_slack: f64) {
        self.worst_slack = Some(match self.worst_slack {
            Some(w) => w.min(relative_slack),
            None => relative_slack,
        });
        self.margin(&format!("{family}-validity"), relative_slack + tol::SLACK);
    }

    fn merge(&mut self, other: Checks) {
        self.failures.extend(other.failures);
        for (k, v) in other.counts {
            *self.counts.entry(k).or_default() += v;
        }
        if let Some(w) = other.worst_slack {
            self.validity_min(w);
        }
    }

    fn validity_min(&mut self, w: f64) {
        self.worst_slack = Some(self.worst_slack.map_or(w, |cur| cur.min(w)));
    }
}

const ALPHA_GRID: (f64, f64, usize) = (-10.0, 10.0, 101);
const ALPHA_ORACLE_GRID: (f64, f64, usize) = (-10.0, 10.0, 2001);

fn check_instance(inst: &RandomInstance, config: &SuiteConfig) -> Result<Checks> {
    let mut checks = Checks::new(inst.seed, inst.dim);
    let stats = PairStats::new(&inst.a, &inst.b, &inst.psi)?;
    let ctx = stats.context(&inst.psi_perp)?;
    let selected = config.selected();

    // elementary statistics
    checks.close("deviation-norm", stats.dev_a.norm_sqr(), stats.var_a, tol::IDENTITY);
    checks.close("deviation-norm", stats.dev_b.norm_sqr(), stats.var_b, tol::IDENTITY);
    let routed = stats.cross - stats.cross.conj();
    let comm_scale = inst.a.scale() * inst.b.scale();
    checks.margin(
        "commutator-identity",
        tol::IDENTITY * tol::scale_of(&[stats.commutator.norm()]) - (stats.commutator - routed).norm(),
    );
    checks.margin(
        "commutator-imaginary",
        tol::EXPECTATION_RESIDUE * comm_scale - stats.commutator.re.abs(),
    );
    let mut gram_vectors = vec![inst.psi.clone()];
    gram_vectors.extend(orthonormal_complement_basis(&inst.psi));
    let mut gram_dev = 0.0_f64;
    for (i, x) in gram_vectors.iter().enumerate() {
        for (j, y) in gram_vectors.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            gram_dev = gram_dev.max((inner(x.ket(), y.ket())? - C64::new(target, 0.0)).norm());
        }
    }
    checks.margin("complement-gram", tol::IDENTITY - gram_dev);
    let residual_floor = -tol::RESIDUAL * tol::scale_of(&[stats.var_a, stats.var_b]);
    checks.margin("residual-nonneg", ctx.a_residual - residual_floor);
    checks.margin("residual-nonneg", ctx.b_residual - residual_floor);

    // universal validity
    let mut reports = BTreeMap::new();
    for &family in &selected {
        let report = stats.report_with(family, &ctx, None)?;
        checks.validity(family, report.relative_slack());
        reports.insert(family, report);
    }
    let all = |f: Family| stats.report_with(f, &ctx, None);

    // identity chain and dominance
    if config.wants(&[Family::Hrs, Family::Schwarz]) {
        checks.close("identity-hrs-schwarz", stats.hrs().rhs, stats.schwarz().rhs, tol::IDENTITY);
        checks.close(
            "identity-hrs-cross",
            stats.hrs().rhs,
            stats.cross.norm_sqr(),
            tol::IDENTITY,
        );
    }
    if config.wants(&[Family::Hr, Family::Hrs]) {
        checks.margin("dominance-hrs-hr", stats.hrs().rhs - stats.hr().rhs);
    }
    if config.wants(&[Family::GenProductHr]) {
        let w_im = ctx.w.im;
        checks.close("identity-gen-product-hr", all(Family::GenProductHr)?.rhs, w_im * w_im, tol::IDENTITY);
    }
    if config.wants(&[Family::GenProductHrs]) {
        checks.close(
            "identity-gen-product-hrs",
            all(Family::GenProductHrs)?.rhs,
            ctx.w.norm_sqr(),
            tol::IDENTITY,
        );
    }
    if config.wants(&[Family::GenProductHr, Family::GenProductHrs]) {
        checks.margin(
            "dominance-gen-product",
            all(Family::GenProductHrs)?.rhs - all(Family::GenProductHr)?.rhs,
        );
    }
    if config.wants(&[Family::GenSumHrs]) {
        let closed = ctx.overlap_a.norm_sqr() + ctx.overlap_b.norm_sqr() + 2.0 * ctx.w.norm();
        checks.close("identity-gen-sum-hrs", all(Family::GenSumHrs)?.rhs, closed, tol::IDENTITY);
    }
    if config.wants(&[Family::MpPlus, Family::MpMinus]) {
        checks.close(
            "identity-mp-alpha",
            all(Family::MpPlus)?.slack,
            ctx.general_alpha_value(-1.0),
            tol::IDENTITY,
        );
        checks.close(
            "identity-mp-alpha",
            all(Family::MpMinus)?.slack,
            ctx.general_alpha_value(1.0),
            tol::IDENTITY,
        );
    }

    // one-parameter quadratic
    if config.wants(&[Family::GeneralAlpha]) {
        let value_scale = tol::scale_of(&[stats.var_a, stats.var_b]);
        let (lo, hi, n) = ALPHA_GRID;
        let mut grid_min = f64::INFINITY;
        for alpha in linspace(lo, hi, n) {
            let value = ctx.general_alpha_value(alpha);
            let scale = tol::scale_of(&[stats.var_a + alpha * alpha * stats.var_b]);
            checks.margin("alpha-nonneg", value + tol::SLACK * scale);
            grid_min = grid_min.min(value);
        }
        for alpha in [-1.3, 0.7] {
            checks.close(
                "alpha-quadratic-direct",
                ctx.general_alpha_value(alpha),
                projected_norm(&stats, &inst.psi_perp, alpha)?,
                tol::IDENTITY,
            );
        }
        if let OptimalAlpha::Minimizer(alpha_star) = ctx.optimal_alpha() {
            let at_star = ctx.general_alpha_value(alpha_star);
            checks.margin(
                "alpha-analytic-min",
                grid_min - at_star + tol::IDENTITY * value_scale,
            );
            let (lo, hi, n) = ALPHA_ORACLE_GRID;
            if (lo..=hi).contains(&alpha_star) {
                let oracle = grid_minimum(&ctx, lo, hi, n)?;
                checks.margin("alpha-oracle", oracle.step - (alpha_star - oracle.alpha).abs());
                checks.margin(
                    "alpha-analytic-min",
                    oracle.value - at_star + tol::IDENTITY * value_scale,
                );
            }
        }
    }

    // ψ⊥ phase invariance
    let rotated = inst.psi_perp.with_phase(2.1);
    let rotated_ctx = stats.context(&rotated)?;
    for &family in &selected {
        let base = &reports[&family];
        let turned = stats.report_with(family, &rotated_ctx, None)?;
        checks.close("phase-invariance", base.lhs, turned.lhs, tol::IDENTITY);
        checks.close("phase-invariance", base.rhs, turned.rhs, tol::IDENTITY);
    }

    // scaling covariance under (A, B) → (cA, cB)
    let c = 1.7_f64;
    let (ca, cb) = (inst.a.scaled(c), inst.b.scaled(c));
    let scaled_stats = PairStats::new(&ca, &cb, &inst.psi)?;
    let scaled_ctx = scaled_stats.context(&inst.psi_perp)?;
    for &family in &selected {
        let base = &reports[&family];
        let scaled = scaled_stats.report_with(family, &scaled_ctx, None)?;
        let factor = if family.is_product() { c.powi(4) } else { c * c };
        checks.close("scaling-covariance", scaled.lhs, factor * base.lhs, 1e-9);
        checks.close("scaling-covariance", scaled.rhs, factor * base.rhs, 1e-9);
    }

    // null-vector limit
    if config.wants(&[Family::GenSumHrs, Family::GenProductHrs, Family::Hrs]) {
        let hrs = stats.hrs();
        for family in [Family::GenSumHrs, Family::GenProductHrs] {
            let fallback = stats.report(family, None, None)?;
            checks.flag(
                "null-limit",
                fallback.lhs == hrs.lhs
                    && fallback.rhs == hrs.rhs
                    && fallback.slack == hrs.slack
                    && fallback.annotations == vec![Annotation::NullPerp { requested: family }],
            );
        }
    }

    // ψ⊥ along a deviation vector
    let limit_floor = 1e-6;
    if stats.var_b > limit_floor && config.wants(&[Family::GenSumHr, Family::MpPlus, Family::MpMinus]) {
        let along_b = StateVector::normalize(stats.dev_b.clone())?;
        let b_ctx = stats.context(&along_b)?;
        let expected = stats.var_b + stats.cross.norm_sqr() / stats.var_b;
        checks.close("limit-perp-psiB-sum", stats.gen_sum_hr(&b_ctx).rhs, expected, 1e-9);
        checks.flag("limit-perp-psiB-degenerate", b_ctx.optimal_alpha() == OptimalAlpha::Degenerate);
        let hrs_slack = stats.hrs().slack;
        for positive in [true, false] {
            let mp = stats.mp(&b_ctx, positive)?;
            checks.close("limit-perp-psiB-mp", mp.rhs, expected, 1e-9);
            checks.close("limit-perp-psiB-mp-hrs", mp.slack * stats.var_b, hrs_slack, 1e-9);
        }
    }
    if stats.var_a > limit_floor && config.wants(&[Family::GenSumHr]) {
        let along_a = StateVector::normalize(stats.dev_a.clone())?;
        let a_ctx = stats.context(&along_a)?;
        let expected = stats.var_a + stats.cross.norm_sqr() / stats.var_a;
        checks.close("limit-perp-psiA-sum", stats.gen_sum_hr(&a_ctx).rhs, expected, 1e-9);
        checks.margin(
            "limit-perp-psiA-w",
            tol::IDENTITY * tol::scale_of(&[stats.cross.norm()]) - a_ctx.w.norm(),
        );
    }
    Ok(checks)
}

fn fixed_scenario_claims() -> Result<Vec<Claim>> {
    let mut claims = Vec::new();

    // eigenstate triviality and nontriviality of the remaining pair
    let mut trivial_ok = true;
    let mut nontrivial_ok = true;
    let mut detail = String::new();
    for twice_j in 1..=3 {
        let j = twice_j as f64 / 2.0;
        let op = |axis| spin_operator(SpinLabel::new(j, axis, 1.0).expect("valid"));
        let (jx, jy, jz) = (op(Axis::X), op(Axis::Y), op(Axis::Z));
        let top = spin_basis_state(j, j)?;
        let zx = PairStats::new(&jz, &jx, &top)?.hr();
        trivial_ok &= zx.lhs.abs() <= 1e-12 && zx.rhs.abs() <= 1e-12;
        let xy = PairStats::new(&jx, &jy, &top)?.hr();
        nontrivial_ok &= (xy.rhs - 0.25 * j * j).abs() <= 1e-12 && xy.rhs > 0.0 && xy.satisfied;
        detail.push_str(&format!("j={j}: zx ({:.1e}, {:.1e}), xy rhs {:.4}; ", zx.lhs, zx.rhs, xy.rhs));
    }
    claims.push(Claim::check("eigenstate-hr-trivial", trivial_ok, detail.clone()));
    claims.push(Claim::check("hr-nontrivial-jx-jy", nontrivial_ok, detail));

    let (jx, jy) = Preset::operators();
    let grid = linspace(0.0, FRAC_PI_2, 17);
    let tol9 = 1e-9;

    // example 1: ψ = cosθ|+⟩ + sinθ|−⟩, ψ⊥ = |0⟩
    let (mut mp_err, mut sum_err, mut elem_err, mut sep_err) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    for &theta in &grid {
        let (psi, perp) = Preset::Example1.states(theta);
        let stats = PairStats::new(&jx, &jy, &psi)?;
        let ctx = stats.context(&perp)?;
        for positive in [true, false] {
            mp_err = mp_err.max((stats.mp(&ctx, positive)?.rhs - 1.0).abs());
        }
        sum_err = sum_err.max((stats.gen_sum_hrs(&ctx).rhs - 1.0).abs());
        let plus = inner(psi.ket(), &jx.apply(perp.ket())?)?
            + C64::i() * inner(psi.ket(), &jy.apply(perp.ket())?)?;
        let minus = inner(psi.ket(), &jx.apply(perp.ket())?)?
            - C64::i() * inner(psi.ket(), &jy.apply(perp.ket())?)?;
        let root2 = 2.0_f64.sqrt();
        elem_err = elem_err
            .max((plus.norm() - root2 * theta.cos().abs()).abs())
            .max((minus.norm() - root2 * theta.sin().abs()).abs());
        let s2 = (2.0 * theta).sin();
        sep_err = sep_err
            .max((ctx.overlap_a.norm_sqr() - 0.5 * (1.0 + s2)).abs())
            .max((ctx.overlap_b.norm_sqr() - 0.5 * (1.0 - s2)).abs());
    }
    claims.push(Claim::check(
        "example-1-mp-both-signs",
        mp_err <= tol9,
        format!("mp-plus = mp-minus = ħ²: max deviation {mp_err:.3e}"),
    ));
    claims.push(Claim::check(
        "example-1-gen-sum-hrs",
        sum_err <= tol9,
        format!("gen-sum-hrs rhs = ħ²: max deviation {sum_err:.3e}"),
    ));
    claims.push(Claim::check(
        "example-1-matrix-elements",
        elem_err <= tol9,
        format!("|⟨ψ|Jx±iJy|0⟩| = √2ħ{{cosθ, sinθ}}: max deviation {elem_err:.3e}"),
    ));
    claims.push(Claim::check(
        "example-1-separate-relations",
        sep_err <= tol9,
        format!("|⟨0|Jx|ψ⟩|², |⟨0|Jy|ψ⟩|² = (ħ²/2)(1±sin2θ): max deviation {sep_err:.3e}"),
    ));
    claims.extend(variance_claim_oracle()?.claims);

    // example 2: ψ = |0⟩, ψ⊥ = cosθ|+⟩ + sinθ|−⟩
    let (mut literal_err, mut lower_half_err, mut corrected_err) = (0.0_f64, 0.0_f64, 0.0_f64);
    let (mut mp_err, mut eq13_err, mut var_err) = (0.0_f64, 0.0_f64, 0.0_f64);
    for &theta in &grid {
        let (psi, perp) = Preset::Example2.states(theta);
        let stats = PairStats::new(&jx, &jy, &psi)?;
        let ctx = stats.context(&perp)?;
        let cos2 = theta.cos().powi(2);
        let sin2 = theta.sin().powi(2);
        let sum = stats.gen_sum_hrs(&ctx).rhs;
        literal_err = literal_err.max((sum - 2.0 * cos2).abs());
        if theta <= std::f64::consts::FRAC_PI_4 {
            lower_half_err = lower_half_err.max((sum - 2.0 * cos2).abs());
        }
        corrected_err = corrected_err.max((sum - 2.0 * cos2.max(sin2)).abs());
        let plus = stats.mp(&ctx, true)?.rhs;
        let minus = stats.mp(&ctx, false)?.rhs;
        mp_err = mp_err
            .max((minus - 2.0 * cos2).abs())
            .max((plus - 2.0 * sin2).abs());
        let s2 = (2.0 * theta).sin();
        let product = stats.gen_product_hr(&ctx);
        let lhs_closed = (1.0 - 0.5 * (1.0 + s2)) * (1.0 - 0.5 * (1.0 - s2));
        let rhs_closed = 0.25 * (2.0 * theta).cos().powi(2);
        eq13_err = eq13_err
            .max((product.lhs - lhs_closed).abs())
            .max((product.rhs - rhs_closed).abs())
            .max(product.slack.abs());
        var_err = var_err
            .max((stats.var_a - 1.0).abs())
            .max((stats.var_b - 1.0).abs());
    }
    let literal_verdict = if literal_err <= tol9 {
        Verdict::Confirmed
    } else {
        Verdict::Refuted
    };
    claims.push(Claim::new(
        "example-2-gen-sum-hrs",
        literal_verdict,
        Verdict::Refuted,
        format!(
            "gen-sum-hrs rhs = 2ħ²cos²θ on [0, π/2]: max deviation {literal_err:.3e} \
             ({lower_half_err:.3e} for θ ≤ π/4); corrected value ħ²(1 + |cos2θ|) = 2ħ²max(cos²θ, sin²θ)"
        ),
    ));
    claims.push(Claim::check(
        "example-2-gen-sum-hrs-corrected",
        corrected_err <= tol9 && lower_half_err <= tol9,
        format!("gen-sum-hrs rhs = 2ħ²max(cos²θ, sin²θ): max deviation {corrected_err:.3e}"),
    ));
    claims.push(Claim::check(
        "example-2-mp-pair",
        mp_err <= tol9,
        format!("{{mp-minus, mp-plus}} = {{2ħ²cos²θ, 2ħ²sin²θ}}: max deviation {mp_err:.3e}"),
    ));
    claims.push(Claim::check(
        "example-2-product-hr-equality",
        eq13_err <= tol9,
        format!("residual product = ¼ħ⁴cos²2θ with equality: max deviation {eq13_err:.3e}"),
    ));
    claims.push(Claim::check(
        "example-2-variances",
        var_err <= tol::IDENTITY,
        format!("ΔJx² = ΔJy² = ħ²: max deviation {var_err:.3e}"),
    ));
    Ok(claims)
}

/// Claim names backed by ensemble invariants.
const ENSEMBLE_CLAIMS: [(&str, &[&str], &str); 4] = [
    (
        "null-vector-reduces-to-hrs",
        &["null-limit"],
        "gen-sum-hrs and gen-product-hrs without ψ⊥ equal the hrs report",
    ),
    (
        "perp=psiB-reduces-to-schwarz",
        &["limit-perp-psiB-sum", "limit-perp-psiB-degenerate"],
        "ψ⊥ = ψ_B/ΔB gives gen-sum-hr rhs ΔB² + |⟨ψ_A|ψ_B⟩|²/ΔB² and a degenerate α*",
    ),
    (
        "perp=psiA-reduces-to-schwarz",
        &["limit-perp-psiA-sum", "limit-perp-psiA-w"],
        "ψ⊥ = ψ_A/ΔA gives gen-sum-hr rhs ΔA² + |⟨ψ_A|ψ_B⟩|²/ΔA² and w = 0",
    ),
    (
        "mp-reduces-to-hrs-at-perp=psiB",
        &["limit-perp-psiB-mp", "limit-perp-psiB-mp-hrs"],
        "ψ⊥ = ψ_B/ΔB turns both Maccone–Pati bounds into the Schwarz/HRS relation",
    ),
];

/// Runs every invariant over `count` instances per dimension plus the fixed
/// claim scenarios.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    if let Some(&dim) = config.dims.iter().find(|&&d| d < 2) {
        return Err(Error::DimensionTooSmall { min: 2, found: dim });
    }
    let jobs: Vec<(usize, u64)> = config
        .dims
        .iter()
        .flat_map(|&dim| (0..config.count).map(move |i| (dim, config.seed.wrapping_add(i as u64))))
        .collect();
    let outcomes = config.execution.map_indices(jobs.len(), |i| {
        let (dim, seed) = jobs[i];
        random_instance(dim, seed).and_then(|inst| check_instance(&inst, config))
    });
    let mut merged = Checks::default();
    for outcome in outcomes {
        merged.merge(outcome?);
    }

    let mut claims = Vec::new();
    for (name, invariants, detail) in ENSEMBLE_CLAIMS {
        let ran: usize = invariants
            .iter()
            .map(|inv| merged.counts.get(*inv).copied().unwrap_or(0))
            .sum();
        if ran == 0 {
            continue;
        }
        let failed = merged
            .failures
            .iter()
            .filter(|f| invariants.contains(&f.invariant.as_str()))
            .count();
        claims.push(Claim::check(
            name,
            failed == 0,
            format!("{detail} ({ran} checks, {failed} failed)"),
        ));
    }
    claims.extend(fixed_scenario_claims()?);
    for claim in &claims {
        if claim.verdict != claim.expected {
            merged.failures.push(Failure {
                invariant: format!("claim:{}", claim.name),
                seed: config.seed,
                dim: 3,
                slack: -1.0,
            });
        }
    }
    Ok(SuiteReport {
        instances_run: jobs.len(),
        failures: merged.failures,
        worst_slack: merged.worst_slack,
        checks: merged.counts,
        claims,
    })
}
