//! Command implementations. Each writes its report to `out` and returns the
//! [`Outcome`] that decides the process exit code.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::Path;

use thiserror::Error;

use uncertainty::bounds::{Annotation, BoundReport, Family, PairStats};
use uncertainty::hilbert::{StateVector, C64};
use uncertainty::optimizer::optimize_perp;
use uncertainty::sweep::{parse_grid, sweep_theta, Preset, SweepTable};
use uncertainty::verify::{run_suite, SuiteConfig, SuiteReport, Verdict};
use uncertainty::{OptimalAlpha, OptimizeResult};

use crate::scenario::{parse_scenario, Perp, Scenario, ScenarioError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Satisfied,
    Violated,
}

impl Outcome {
    fn from_all(ok: bool) -> Self {
        if ok {
            Outcome::Satisfied
        } else {
            Outcome::Violated
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Satisfied => 0,
            Outcome::Violated => 1,
        }
    }
}

/// Usage and input errors; all map to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Scenario { path: String, source: ScenarioError },
    #[error(transparent)]
    Library(#[from] uncertainty::Error),
    #[error("{0}")]
    Usage(String),
    #[error("CSV output: {0}")]
    Csv(#[from] csv::Error),
    #[error("output: {0}")]
    Output(#[from] io::Error),
}

impl CliError {
    pub const EXIT_CODE: u8 = 2;
}

type Result<T> = std::result::Result<T, CliError>;

pub fn load_scenario(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_scenario(&text).map_err(|source| CliError::Scenario {
        path: path.display().to_string(),
        source,
    })
}

/// `%.12g`-style formatting: 12 significant digits, trailing zeros trimmed,
/// scientific notation outside `[1e-4, 1e12)`.
pub fn format_g(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..DIGITS).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn format_complex(z: C64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{sign}{}i", format_g(z.re), format_g(z.im.abs()))
}

fn render_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(header.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

fn report_row(report: &BoundReport) -> Vec<String> {
    let alpha_star = match report.alpha_star {
        Some(OptimalAlpha::Minimizer(a)) => format_g(a),
        Some(OptimalAlpha::Degenerate) => "degenerate".into(),
        None => "-".into(),
    };
    let (z, w) = match &report.context {
        Some(ctx) => (format_complex(ctx.z), format_complex(ctx.w)),
        None => ("-".into(), "-".into()),
    };
    let notes: Vec<String> = report
        .annotations
        .iter()
        .map(|a| match a {
            Annotation::Degenerate => "degenerate".to_string(),
            Annotation::NullPerp { requested } => format!("null perp: {requested} as hrs"),
        })
        .collect();
    vec![
        report.family.to_string(),
        format_g(report.lhs),
        format_g(report.rhs),
        format_g(report.slack),
        report.satisfied.to_string(),
        alpha_star,
        z,
        w,
        notes.join("; "),
    ]
}

const REPORT_HEADER: [&str; 9] = [
    "family", "lhs", "rhs", "slack", "satisfied", "alpha*", "z", "w", "notes",
];

fn optimize(scenario: &Scenario) -> Result<Option<OptimizeResult>> {
    match &scenario.perp {
        Perp::Optimize(config) => Ok(Some(optimize_perp(
            &scenario.a,
            &scenario.b,
            &scenario.psi,
            config,
        )?)),
        _ => Ok(None),
    }
}

fn write_amplitudes(out: &mut impl Write, label: &str, state: &StateVector) -> io::Result<()> {
    let amps: Vec<String> = state.amplitudes().iter().map(|&z| format_complex(z)).collect();
    writeln!(out, "{label}: [{}]", amps.join(", "))
}

/// Evaluates every requested family on the scenario.
pub fn cmd_bounds(scenario: &Scenario, out: &mut impl Write) -> Result<Outcome> {
    let optimized = optimize(scenario)?;
    let perp = match (&scenario.perp, &optimized) {
        (Perp::State(p), _) => Some(p),
        (Perp::Optimize(_), Some(result)) => Some(&result.best_perp),
        _ => None,
    };
    let stats = PairStats::new(&scenario.a, &scenario.b, &scenario.psi)?;
    let reports = scenario
        .doc
        .bounds
        .iter()
        .map(|&family| stats.report(family, perp, None))
        .collect::<uncertainty::Result<Vec<_>>>()?;

    writeln!(out, "ΔA² = {}  ΔB² = {}", format_g(stats.var_a), format_g(stats.var_b))?;
    if let Some(result) = &optimized {
        writeln!(
            out,
            "optimized perp for {} (rhs {})",
            result.report.family,
            format_g(result.best_rhs)
        )?;
        write_amplitudes(out, "perp", &result.best_perp)?;
    }
    let rows: Vec<Vec<String>> = reports.iter().map(report_row).collect();
    write!(out, "{}", render_table(&REPORT_HEADER, &rows))?;
    Ok(Outcome::from_all(reports.iter().all(|r| r.satisfied)))
}

/// Maximizes the objective over `ψ⊥` and prints the optimum.
pub fn cmd_optimize(scenario: &Scenario, out: &mut impl Write) -> Result<Outcome> {
    let result = match optimize(scenario)? {
        Some(result) => result,
        None => {
            return Err(CliError::Usage(
                "optimize needs `perp` set to {\"optimize\": {\"objective\": ...}}".into(),
            ))
        }
    };
    writeln!(out, "objective: {}", result.report.family)?;
    writeln!(out, "best_rhs: {}", format_g(result.best_rhs))?;
    write_amplitudes(out, "best_perp", &result.best_perp)?;
    writeln!(out, "evaluations: {}", result.evaluations)?;
    writeln!(out, "converged: {}", result.converged)?;
    writeln!(out, "best_restart: {}", result.best_restart)?;
    write!(out, "{}", render_table(&REPORT_HEADER, &[report_row(&result.report)]))?;
    Ok(Outcome::from_all(result.report.satisfied))
}

pub fn write_sweep_csv(table: &SweepTable, out: impl Write) -> Result<()> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    writer.write_record(["theta", "var_a", "var_b", "family", "lhs", "rhs", "slack", "satisfied"])?;
    for row in &table.rows {
        writer.write_record([
            format_g(row.theta),
            format_g(row.var_a),
            format_g(row.var_b),
            row.family.to_string(),
            format_g(row.lhs),
            format_g(row.rhs),
            format_g(row.slack),
            row.satisfied.to_string(),
        ])?;
    }
    writer.flush()?;
    Ok(())
}

/// Runs a θ-sweep and writes the CSV to `path`.
pub fn cmd_sweep(preset: &str, families: &str, grid: &str, path: &Path) -> Result<Outcome> {
    let preset: Preset = preset.parse()?;
    let families = Family::parse_list(families)?;
    let grid = parse_grid(grid)?;
    let table = sweep_theta(preset, &families, &grid)?;
    let mut buffer = Vec::new();
    write_sweep_csv(&table, &mut buffer)?;
    std::fs::write(path, buffer).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(Outcome::from_all(table.all_satisfied()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Table,
    Json,
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Confirmed => "confirmed",
        Verdict::Refuted => "refuted",
        Verdict::Degenerate => "degenerate",
    }
}

pub fn render_suite(report: &SuiteReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "instances: {}", report.instances_run);
    let worst = report.worst_slack.map_or("-".into(), format_g);
    let _ = writeln!(out, "worst relative slack: {worst}");
    let _ = writeln!(out, "failures: {}", report.failures.len());
    let _ = writeln!(out);
    let claims: Vec<Vec<String>> = report
        .claims
        .iter()
        .map(|c| {
            let verdict = match (c.verdict, c.expected) {
                (Verdict::Refuted, Verdict::Refuted) => "refuted, corrected".to_string(),
                (v, e) if v == e => verdict_name(v).to_string(),
                (v, e) => format!("{} (expected {})", verdict_name(v), verdict_name(e)),
            };
            vec![c.name.clone(), verdict, c.detail.clone()]
        })
        .collect();
    out.push_str(&render_table(&["claim", "verdict", "detail"], &claims));
    if !report.failures.is_empty() {
        let _ = writeln!(out);
        let failures: Vec<Vec<String>> = report
            .failures
            .iter()
            .map(|f| {
                vec![
                    f.invariant.clone(),
                    f.seed.to_string(),
                    f.dim.to_string(),
                    format_g(f.slack),
                ]
            })
            .collect();
        out.push_str(&render_table(&["invariant", "seed", "dim", "slack"], &failures));
    }
    out
}

/// Runs the randomized verification suite.
pub fn cmd_verify(config: &SuiteConfig, format: ReportFormat, out: &mut impl Write) -> Result<Outcome> {
    let report = run_suite(config)?;
    match format {
        ReportFormat::Table => write!(out, "{}", render_suite(&report))?,
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &report).map_err(io::Error::from)?;
            writeln!(out)?;
        }
    }
    Ok(Outcome::from_all(report.passed()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_g(0.0), "0");
        assert_eq!(format_g(1.0), "1");
        assert_eq!(format_g(2.0 / 3.0), "0.666666666667");
        assert_eq!(format_g(-1234.5), "-1234.5");
        assert_eq!(format_g(1.25), "1.25");
        assert_eq!(format_g(1e-5), "1e-05");
        assert_eq!(format_g(-2.5e-17), "-2.5e-17");
        assert_eq!(format_g(123456789012.0), "123456789012");
        assert_eq!(format_g(1234567890123.0), "1.23456789012e+12");
        assert_eq!(format_g(0.0001), "0.0001");
        assert_eq!(format_g(999999999999.9), "1e+12");
    }

    #[test]
    fn complex_formatting() {
        assert_eq!(format_complex(C64::new(0.5, -0.25)), "0.5-0.25i");
        assert_eq!(format_complex(C64::new(0.0, 1.0)), "0+1i");
    }

    #[test]
    fn table_columns_align() {
        let text = render_table(&["a", "bb"], &[vec!["long".into(), "x".into()]]);
        assert_eq!(text, "a     bb\nlong  x\n");
    }
}
