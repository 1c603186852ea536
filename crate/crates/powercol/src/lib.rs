//! File formats, verification suites and the command line for
//! `powercol-core`.

pub mod cli;
pub mod error;
pub mod formats;
pub mod io;
pub mod run_report;
pub mod suites;

pub use error::{CliError, CliResult};
pub use run_report::RunReport;
