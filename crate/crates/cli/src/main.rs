use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use uncertainty::bounds::Family;
use uncertainty::exec::Execution;
use uncertainty::verify::SuiteConfig;
use uncertainty_cli::commands::{self, load_scenario};
use uncertainty_cli::{CliError, Outcome, ReportFormat};

/// Lower bounds on variance sums and products for Hermitian operator pairs.
///
/// Exit codes: 0 all bounds satisfied, 1 a violation was found, 2 usage or
/// input error.
#[derive(Parser)]
#[command(name = "uncertainty", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the bound families listed in a scenario file.
    Bounds { scenario: PathBuf },
    /// Sweep θ over a spin-1 preset and write a CSV table.
    Sweep {
        #[arg(long, value_parser = ["example-1", "example-2"])]
        preset: String,
        /// Comma-separated family names.
        #[arg(long)]
        families: String,
        /// start:stop:count, endpoints included, radians.
        #[arg(long)]
        grid: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the randomized verification suite.
    Verify {
        /// Comma-separated Hilbert-space dimensions.
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,6,8")]
        dims: Vec<usize>,
        /// Instances per dimension.
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Restrict family-specific checks to these comma-separated families.
        #[arg(long)]
        families: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Run on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Maximize a bound's right-hand side over the perp state.
    Optimize { scenario: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

fn run(command: Command) -> Result<Outcome, CliError> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let outcome = match command {
        Command::Bounds { scenario } => commands::cmd_bounds(&load_scenario(&scenario)?, &mut out),
        Command::Optimize { scenario } => {
            commands::cmd_optimize(&load_scenario(&scenario)?, &mut out)
        }
        Command::Sweep {
            preset,
            families,
            grid,
            out: path,
        } => commands::cmd_sweep(&preset, &families, &grid, &path),
        Command::Verify {
            dims,
            count,
            seed,
            families,
            format,
            sequential,
        } => {
            let families = families
                .map(|list| Family::parse_list(&list))
                .transpose()?;
            let config = SuiteConfig {
                dims,
                count,
                seed,
                families,
                execution: if sequential {
                    Execution::Sequential
                } else {
                    Execution::default()
                },
            };
            let format = match format {
                Format::Table => ReportFormat::Table,
                Format::Json => ReportFormat::Json,
            };
            commands::cmd_verify(&config, format, &mut out)
        }
    }?;
    out.flush()?;
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { CliError::EXIT_CODE } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(outcome) => ExitCode::from(outcome.exit_code()),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(CliError::EXIT_CODE)
        }
    }
}
