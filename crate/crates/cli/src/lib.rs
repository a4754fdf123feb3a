//! Scenario parsing and command implementations behind the `uncertainty`
//! binary.

pub mod commands;
pub mod scenario;

pub use commands::{CliError, Outcome, ReportFormat};
pub use scenario::{parse_scenario, print_scenario, Scenario, ScenarioDoc, ScenarioError};
