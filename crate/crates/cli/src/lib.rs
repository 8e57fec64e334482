//! Command-line front end for `oshlab-core`: family documents, closures,
//! witness construction and seeded verification suites.

pub mod app;
pub mod doc;
pub mod error;
pub mod suites;

pub use app::{run, Cli, Status};
pub use doc::{load_family, parse_family, save_family, BitmaskDocument, FamilyDocument};
pub use error::{CliError, CliResult};
pub use suites::{run_suite, Counterexample, SuiteParams, SuiteReport, SuiteRequest};
