//! Variance lower bounds for a pair of Hermitian operators `A`, `B` on a pure
//! state `ψ`, optionally refined by a state `ψ⊥` orthogonal to `ψ`.
//!
//! With deviation vectors `ψ_A = (A − ⟨A⟩)ψ`, `ψ_B = (B − ⟨B⟩)ψ`, overlaps
//! `o_A = ⟨ψ⊥|ψ_A⟩`, `o_B = ⟨ψ⊥|ψ_B⟩`, cross terms `z = o_B·conj(o_A)` and
//! `w = ⟨ψ_A|ψ_B⟩ − z`, and residuals `a = ΔA² − |o_A|²`, `b = ΔB² − |o_B|²`,
//! the families are:
//!
//! | family            | lhs               | rhs                                                  |
//! |-------------------|-------------------|------------------------------------------------------|
//! | `schwarz`         | ΔA²ΔB²            | \|⟨ψ_A\|ψ_B⟩\|²                                       |
//! | `hr`              | ΔA²ΔB²            | ¼\|⟨[A,B]⟩\|²                                         |
//! | `hrs`             | ΔA²ΔB²            | ¼\|⟨[A,B]⟩\|² + ¼\|⟨{A,B}⟩ − 2⟨A⟩⟨B⟩\|²               |
//! | `general-alpha`   | ΔA² + α²ΔB²       | \|o_A\|² + α²\|o_B\|² − iα(w − w̄)                     |
//! | `gen-product-hr`  | a·b               | ¼\|⟨[A,B]⟩ − (z − z̄)\|²                               |
//! | `gen-sum-hr`      | ΔA² + ΔB²         | \|⟨[A,B]⟩ − (z − z̄)\| + \|o_A\|² + \|o_B\|²            |
//! | `gen-product-hrs` | a·b               | ¼\|⟨[A,B]⟩ − (z − z̄)\|² + ¼\|⟨{A,B}⟩ − 2⟨A⟩⟨B⟩ − (z + z̄)\|² |
//! | `gen-sum-hrs`     | ΔA² + ΔB²         | \|o_A\|² + \|o_B\|² + √(sum of the two squared moduli above) |
//! | `mp-plus/minus`   | ΔA² + ΔB²         | s·i⟨[A,B]⟩ + \|⟨ψ\|A + s·iB\|ψ⊥⟩\|², s = ±1             |
//!
//! The right-hand sides are evaluated from the commutator and anticommutator
//! expectations exactly as written above. The equivalent closed forms
//! (`gen-product-hr` rhs = (Im w)², `gen-product-hrs` rhs = |w|², …) are kept
//! as independent cross-checks in the tests and the verification suite.
//!
//! `mp-plus` (s = +1) coincides with `general-alpha` at α = −1 and `mp-minus`
//! with α = +1.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{
    anticommutator_expectation, commutator_expectation, expectation, inner, variance,
    HermitianOperator, Ket, StateVector, C64,
};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Schwarz,
    Hr,
    Hrs,
    GeneralAlpha,
    GenProductHr,
    GenSumHr,
    GenProductHrs,
    GenSumHrs,
    MpPlus,
    MpMinus,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::Schwarz,
        Family::Hr,
        Family::Hrs,
        Family::GeneralAlpha,
        Family::GenProductHr,
        Family::GenSumHr,
        Family::GenProductHrs,
        Family::GenSumHrs,
        Family::MpPlus,
        Family::MpMinus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Schwarz => "schwarz",
            Family::Hr => "hr",
            Family::Hrs => "hrs",
            Family::GeneralAlpha => "general-alpha",
            Family::GenProductHr => "gen-product-hr",
            Family::GenSumHr => "gen-sum-hr",
            Family::GenProductHrs => "gen-product-hrs",
            Family::GenSumHrs => "gen-sum-hrs",
            Family::MpPlus => "mp-plus",
            Family::MpMinus => "mp-minus",
        }
    }

    /// Whether the bound involves `ψ⊥` at all.
    pub fn uses_perp(self) -> bool {
        !matches!(self, Family::Schwarz | Family::Hr | Family::Hrs)
    }

    /// Families that may be evaluated without `ψ⊥` (the null-vector limit
    /// of the two-parameter forms reduces to `hrs`).
    pub fn allows_null_perp(self) -> bool {
        matches!(
            self,
            Family::Schwarz | Family::Hr | Family::Hrs | Family::GenSumHrs | Family::GenProductHrs
        )
    }

    /// Families usable as an optimizer objective.
    pub fn is_objective(self) -> bool {
        self.uses_perp() && self != Family::GeneralAlpha
    }

    /// Product forms scale as ħ⁴, sum forms as ħ².
    pub fn is_product(self) -> bool {
        matches!(
            self,
            Family::Schwarz | Family::Hr | Family::Hrs | Family::GenProductHr | Family::GenProductHrs
        )
    }

    pub fn parse_list(text: &str) -> Result<Vec<Family>> {
        text.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect()
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Minimizer of the one-parameter quadratic over real α.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OptimalAlpha {
    Minimizer(f64),
    /// `b` residual vanishes (`ψ⊥ ∥ ψ_B`); no finite minimizer is needed.
    Degenerate,
}

impl OptimalAlpha {
    pub fn value(self) -> Option<f64> {
        match self {
            OptimalAlpha::Minimizer(a) => Some(a),
            OptimalAlpha::Degenerate => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Annotation {
    /// `b` residual at or below the degeneracy threshold.
    Degenerate,
    /// Requested family evaluated without `ψ⊥`, reported as `hrs`.
    NullPerp { requested: Family },
}

/// `ψ⊥`-dependent intermediates shared by every generalized family.
#[derive(Debug, Clone, PartialEq)]
pub struct PerpContext {
    pub psi_perp: StateVector,
    /// `ΔA² − |⟨ψ⊥|ψ_A⟩|²`
    pub a_residual: f64,
    /// `ΔB² − |⟨ψ⊥|ψ_B⟩|²`
    pub b_residual: f64,
    /// `⟨ψ⊥|ψ_B⟩⟨ψ_A|ψ⊥⟩`
    pub z: C64,
    /// `⟨ψ_A|ψ_B⟩ − z`
    pub w: C64,
    pub overlap_a: C64,
    pub overlap_b: C64,
    pub degenerate: bool,
}

impl PerpContext {
    /// `a + α²b − 2α·Im w`; nonnegative for every real α.
    pub fn general_alpha_value(&self, alpha: f64) -> f64 {
        self.a_residual + alpha * alpha * self.b_residual - 2.0 * alpha * self.w.im
    }

    pub fn optimal_alpha(&self) -> OptimalAlpha {
        if self.degenerate {
            OptimalAlpha::Degenerate
        } else {
            OptimalAlpha::Minimizer(self.w.im / self.b_residual)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub family: Family,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub satisfied: bool,
    /// α at which `general-alpha` was evaluated.
    pub alpha: Option<f64>,
    pub alpha_star: Option<OptimalAlpha>,
    pub context: Option<PerpContext>,
    pub annotations: Vec<Annotation>,
}

impl BoundReport {
    fn new(family: Family, lhs: f64, rhs: f64) -> Self {
        let slack = lhs - rhs;
        BoundReport {
            family,
            lhs,
            rhs,
            slack,
            satisfied: slack >= -tol::SLACK * tol::scale_of(&[lhs, rhs]),
            alpha: None,
            alpha_star: None,
            context: None,
            annotations: Vec::new(),
        }
    }

    /// `max(1, |lhs|, |rhs|)`
    pub fn scale(&self) -> f64 {
        tol::scale_of(&[self.lhs, self.rhs])
    }

    /// Slack divided by [`BoundReport::scale`].
    pub fn relative_slack(&self) -> f64 {
        self.slack / self.scale()
    }

    pub fn is_degenerate(&self) -> bool {
        self.annotations.contains(&Annotation::Degenerate)
    }

    fn with_context(mut self, ctx: &PerpContext) -> Self {
        if ctx.degenerate {
            self.annotations.push(Annotation::Degenerate);
        }
        self.alpha_star = Some(ctx.optimal_alpha());
        self.context = Some(ctx.clone());
        self
    }
}

/// `ψ`-dependent statistics of an operator pair, computed once and reused
/// for every family and every `ψ⊥`.
#[derive(Debug, Clone)]
pub struct PairStats<'a> {
    pub a: &'a HermitianOperator,
    pub b: &'a HermitianOperator,
    pub psi: &'a StateVector,
    pub mean_a: f64,
    pub mean_b: f64,
    pub var_a: f64,
    pub var_b: f64,
    a_psi: Ket,
    b_psi: Ket,
    pub dev_a: Ket,
    pub dev_b: Ket,
    /// `⟨ψ_A|ψ_B⟩`
    pub cross: C64,
    /// `⟨[A,B]⟩`
    pub commutator: C64,
    /// `⟨{A,B}⟩`
    pub anticommutator: f64,
}

impl<'a> PairStats<'a> {
    pub fn new(
        a: &'a HermitianOperator,
        b: &'a HermitianOperator,
        psi: &'a StateVector,
    ) -> Result<Self> {
        let a_psi = a.apply(psi.ket())?;
        let b_psi = b.apply(psi.ket())?;
        let mean_a = expectation(a, psi)?;
        let mean_b = expectation(b, psi)?;
        let dev_a = a_psi.plus_scaled(C64::new(-mean_a, 0.0), psi.ket())?;
        let dev_b = b_psi.plus_scaled(C64::new(-mean_b, 0.0), psi.ket())?;
        Ok(PairStats {
            a,
            b,
            psi,
            mean_a,
            mean_b,
            var_a: variance(a, psi)?,
            var_b: variance(b, psi)?,
            cross: inner(&dev_a, &dev_b)?,
            commutator: commutator_expectation(a, b, psi)?,
            anticommutator: anticommutator_expectation(a, b, psi)?,
            a_psi,
            b_psi,
            dev_a,
            dev_b,
        })
    }

    /// `⟨{A,B}⟩ − 2⟨A⟩⟨B⟩`
    pub fn covariance_term(&self) -> f64 {
        self.anticommutator - 2.0 * self.mean_a * self.mean_b
    }

    fn variance_scale(&self) -> f64 {
        tol::scale_of(&[self.var_a, self.var_b])
    }

    pub fn context(&self, psi_perp: &StateVector) -> Result<PerpContext> {
        let overlap = inner(psi_perp.ket(), self.psi.ket())?.norm();
        if overlap > tol::ORTHOGONALITY {
            return Err(Error::NotOrthogonal { overlap });
        }
        let overlap_a = inner(psi_perp.ket(), &self.dev_a)?;
        let overlap_b = inner(psi_perp.ket(), &self.dev_b)?;
        // ⟨ψ⊥|ψ_A⟩ = ⟨ψ⊥|A|ψ⟩ − ⟨A⟩⟨ψ⊥|ψ⟩; the second term is bounded by the
        // orthogonality tolerance
        for (dev_overlap, image, mean) in [
            (overlap_a, &self.a_psi, self.mean_a),
            (overlap_b, &self.b_psi, self.mean_b),
        ] {
            let direct = inner(psi_perp.ket(), image)?;
            let difference = (dev_overlap - direct).norm();
            let allowed =
                tol::IDENTITY * tol::scale_of(&[direct.norm(), mean]) + mean.abs() * overlap;
            if difference > allowed {
                return Err(Error::SimplificationMismatch { difference });
            }
        }
        let a_residual = self.var_a - overlap_a.norm_sqr();
        let b_residual = self.var_b - overlap_b.norm_sqr();
        for value in [a_residual, b_residual] {
            if value < -tol::RESIDUAL * self.variance_scale() {
                return Err(Error::NegativeResidual { value });
            }
        }
        let z = overlap_b * overlap_a.conj();
        Ok(PerpContext {
            psi_perp: psi_perp.clone(),
            a_residual,
            b_residual,
            z,
            w: self.cross - z,
            overlap_a,
            overlap_b,
            degenerate: b_residual <= tol::DEGENERATE * tol::scale_of(&[self.var_b]),
        })
    }

    pub fn schwarz(&self) -> BoundReport {
        BoundReport::new(Family::Schwarz, self.var_a * self.var_b, self.cross.norm_sqr())
    }

    pub fn hr(&self) -> BoundReport {
        BoundReport::new(
            Family::Hr,
            self.var_a * self.var_b,
            0.25 * self.commutator.norm_sqr(),
        )
    }

    pub fn hrs(&self) -> BoundReport {
        let cov = self.covariance_term();
        BoundReport::new(
            Family::Hrs,
            self.var_a * self.var_b,
            0.25 * self.commutator.norm_sqr() + 0.25 * cov * cov,
        )
    }

    /// `⟨[A,B]⟩ − (z − z̄)`
    fn shifted_commutator(&self, ctx: &PerpContext) -> C64 {
        self.commutator - (ctx.z - ctx.z.conj())
    }

    /// `⟨{A,B}⟩ − 2⟨A⟩⟨B⟩ − (z + z̄)`
    fn shifted_covariance(&self, ctx: &PerpContext) -> C64 {
        C64::new(self.covariance_term(), 0.0) - (ctx.z + ctx.z.conj())
    }

    pub fn general_alpha(&self, ctx: &PerpContext, alpha: f64) -> BoundReport {
        let lhs = self.var_a + alpha * alpha * self.var_b;
        let cross = (C64::i() * alpha * (ctx.w - ctx.w.conj())).re;
        let rhs = ctx.overlap_a.norm_sqr() + alpha * alpha * ctx.overlap_b.norm_sqr() - cross;
        let mut report = BoundReport::new(Family::GeneralAlpha, lhs, rhs).with_context(ctx);
        report.alpha = Some(alpha);
        report
    }

    pub fn gen_product_hr(&self, ctx: &PerpContext) -> BoundReport {
        BoundReport::new(
            Family::GenProductHr,
            ctx.a_residual * ctx.b_residual,
            0.25 * self.shifted_commutator(ctx).norm_sqr(),
        )
        .with_context(ctx)
    }

    pub fn gen_sum_hr(&self, ctx: &PerpContext) -> BoundReport {
        BoundReport::new(
            Family::GenSumHr,
            self.var_a + self.var_b,
            self.shifted_commutator(ctx).norm()
                + ctx.overlap_a.norm_sqr()
                + ctx.overlap_b.norm_sqr(),
        )
        .with_context(ctx)
    }

    pub fn gen_product_hrs(&self, ctx: &PerpContext) -> BoundReport {
        BoundReport::new(
            Family::GenProductHrs,
            ctx.a_residual * ctx.b_residual,
            0.25 * self.shifted_commutator(ctx).norm_sqr()
                + 0.25 * self.shifted_covariance(ctx).norm_sqr(),
        )
        .with_context(ctx)
    }

    pub fn gen_sum_hrs(&self, ctx: &PerpContext) -> BoundReport {
        let root = (self.shifted_commutator(ctx).norm_sqr()
            + self.shifted_covariance(ctx).norm_sqr())
        .sqrt();
        BoundReport::new(
            Family::GenSumHrs,
            self.var_a + self.var_b,
            ctx.overlap_a.norm_sqr() + ctx.overlap_b.norm_sqr() + root,
        )
        .with_context(ctx)
    }

    /// Maccone–Pati sum bound with sign `s`; `positive` selects s = +1.
    pub fn mp(&self, ctx: &PerpContext, positive: bool) -> Result<BoundReport> {
        let s = if positive { 1.0 } else { -1.0 };
        let perp = ctx.psi_perp.ket();
        // ⟨ψ|(A + s·iB)|ψ⊥⟩
        let element = inner(self.psi.ket(), &self.a.apply(perp)?)?
            + C64::new(0.0, s) * inner(self.psi.ket(), &self.b.apply(perp)?)?;
        let commutator_term = (C64::new(0.0, s) * self.commutator).re;
        let family = if positive { Family::MpPlus } else { Family::MpMinus };
        Ok(BoundReport::new(
            family,
            self.var_a + self.var_b,
            commutator_term + element.norm_sqr(),
        )
        .with_context(ctx))
    }

    /// Evaluates `family`. `general-alpha` uses `alpha` when given, otherwise
    /// the optimal α (0 when degenerate). Without `ψ⊥`, `gen-sum-hrs` and
    /// `gen-product-hrs` fall back to the `hrs` report.
    pub fn report(
        &self,
        family: Family,
        psi_perp: Option<&StateVector>,
        alpha: Option<f64>,
    ) -> Result<BoundReport> {
        if !family.uses_perp() {
            return Ok(match family {
                Family::Schwarz => self.schwarz(),
                Family::Hr => self.hr(),
                _ => self.hrs(),
            });
        }
        let Some(perp) = psi_perp else {
            if family.allows_null_perp() {
                let mut report = self.hrs();
                report
                    .annotations
                    .push(Annotation::NullPerp { requested: family });
                return Ok(report);
            }
            return Err(Error::PerpRequired(family));
        };
        let ctx = self.context(perp)?;
        self.report_with(family, &ctx, alpha)
    }

    pub fn report_with(
        &self,
        family: Family,
        ctx: &PerpContext,
        alpha: Option<f64>,
    ) -> Result<BoundReport> {
        Ok(match family {
            Family::Schwarz => self.schwarz(),
            Family::Hr => self.hr(),
            Family::Hrs => self.hrs(),
            Family::GeneralAlpha => {
                let alpha = alpha.unwrap_or_else(|| ctx.optimal_alpha().value().unwrap_or(0.0));
                self.general_alpha(ctx, alpha)
            }
            Family::GenProductHr => self.gen_product_hr(ctx),
            Family::GenSumHr => self.gen_sum_hr(ctx),
            Family::GenProductHrs => self.gen_product_hrs(ctx),
            Family::GenSumHrs => self.gen_sum_hrs(ctx),
            Family::MpPlus => self.mp(ctx, true)?,
            Family::MpMinus => self.mp(ctx, false)?,
        })
    }
}

pub fn perp_context(
    a: &HermitianOperator,
    b: &HermitianOperator,
    psi: &StateVector,
    psi_perp: &StateVector,
) -> Result<PerpContext> {
    PairStats::new(a, b, psi)?.context(psi_perp)
}

pub fn schwarz_report(
    a: &HermitianOperator,
    b: &HermitianOperator,
    psi: &StateVector,
) -> Result<BoundReport> {
    Ok(PairStats::new(a, b, psi)?.schwarz())
}

pub fn hr_report(
    a: &HermitianOperator,
    b: &HermitianOperator,
    psi: &StateVector,
) -> Result<BoundReport> {
    Ok(PairStats::new(a, b, psi)?.hr())
}

pub fn hrs_report(
    a: &HermitianOperator,
    b: &HermitianOperator,
    psi: &StateVector,
) -> Result<BoundReport> {
    Ok(PairStats::new(a, b, psi)?.hrs())
}

pub fn general_alpha_value(
    a: &HermitianOperator,
    b: &HermitianOperator,
    psi: &StateVector,
    psi_perp: &StateVector,
    alpha: f64,
) -> Result<f64> {
    Ok(perp_context(a, b, psi, psi_perp)?.general_alpha_value(alpha))
}

pub fn optimal_alpha(
    a: &HermitianOperator,
    b: &HermitianOperator,
    psi: &StateVector,
    psi_perp: &StateVector,
) -> Result<OptimalAlpha> {
    Ok(perp_context(a, b, psi, psi_perp)?.optimal_alpha())
}

/// Evaluates one family from scratch.
pub fn evaluate(
    family: Family,
    a: &HermitianOperator,
    b: &HermitianOperator,
    psi: &StateVector,
    psi_perp: Option<&StateVector>,
) -> Result<BoundReport> {
    PairStats::new(a, b, psi)?.report(family, psi_perp, None)
}

pub fn gen_product_hr_report(
    a: &HermitianOperator,
    b: &HermitianOperator,
    psi: &StateVector,
    psi_perp: &StateVector,
) -> Result<BoundReport> {
    evaluate(Family::GenProductHr, a, b, psi, Some(psi_perp))
}

pub fn gen_sum_hr_report(
    a: &HermitianOperator,
    b: &HermitianOperator,
    psi: &StateVector,
    psi_perp: &StateVector,
) -> Result<BoundReport> {
    evaluate(Family::GenSumHr, a, b, psi, Some(psi_perp))
}

pub fn gen_product_hrs_report(
    a: &HermitianOperator,
    b: &HermitianOperator,
    psi: &StateVector,
    psi_perp: Option<&StateVector>,
) -> Result<BoundReport> {
    evaluate(Family::GenProductHrs, a, b, psi, psi_perp)
}

pub fn gen_sum_hrs_report(
    a: &HermitianOperator,
    b: &HermitianOperator,
    psi: &StateVector,
    psi_perp: Option<&StateVector>,
) -> Result<BoundReport> {
    evaluate(Family::GenSumHrs, a, b, psi, psi_perp)
}

/// `sign` must be +1 or −1.
pub fn mp_report(
    a: &HermitianOperator,
    b: &HermitianOperator,
    psi: &StateVector,
    psi_perp: &StateVector,
    sign: i8,
) -> Result<BoundReport> {
    let family = match sign {
        1 => Family::MpPlus,
        -1 => Family::MpMinus,
        other => {
            return Err(Error::InvalidConfig(format!(
                "Maccone–Pati sign must be ±1, got {other}"
            )))
        }
    };
    evaluate(family, a, b, psi, Some(psi_perp))
}
