//! Command-line front end for `affine_line`: seeded corpora, the property
//! suites and the subcommands that read and write JSON.

pub mod commands;
pub mod corpus;
pub mod report;
pub mod suites;

pub use report::{Case, CheckResult, Report, SuiteReport};
pub use suites::{run_suite, RunOutput, Suite, SuiteConfig};
