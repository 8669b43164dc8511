//! Command-line front end: analysis reports, Ext tables, mutation graphs and
//! the bundled verification suites.

pub mod config;
pub mod error;
pub mod golden;
pub mod input;
pub mod reference;
pub mod report;
pub mod suites;
pub mod tables;

pub use error::CliError;
pub use suites::{run_all, Check, Suite, SuiteReport};
