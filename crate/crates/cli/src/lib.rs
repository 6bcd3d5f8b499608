//! Verification suites, the checks manifest and the report format behind the
//! `freecsp` binary.

pub mod commands;
pub mod manifest;
pub mod report;
pub mod runner;
mod suites;

pub use manifest::{CheckSpec, Manifest, ManifestError};
pub use report::{CheckResult, Report, Status, Summary};
pub use runner::{check_rng, run_suite, CheckFn, RunOptions, Suite};
