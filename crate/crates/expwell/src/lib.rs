//! Command-line layer over `expwell-core`: argument handling, reports in
//! table / JSON / CSV form, figure data, and the self-check suites.

pub mod checks;
pub mod cli;
pub mod commands;
pub mod error;
pub mod figures;
pub mod num;
pub mod parallel;
pub mod report;

pub use error::CliError;
