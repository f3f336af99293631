//! Command-line front end for the orbit machinery: minimize words, count
//! level sets, analyze dependence structure, and run verification suites
//! with machine-readable reports.

pub mod commands;
pub mod error;
pub mod exhaustive;
pub mod report;
pub mod suites;
pub mod words;

pub use commands::{cmd_analyze, cmd_count, cmd_minimize, cmd_verify, Outcome};
pub use error::CliError;
pub use report::{Check, Format, Relation, Row, SuiteReport};
pub use suites::{
    parse_ell_list, parse_rank_list, parse_threads, run_suite, SuiteId, SuiteParams,
};
