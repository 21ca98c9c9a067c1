//! Standard-library companion of `semifib-core`: multiplication-table
//! files, the randomized verification suites with their JSON reports, the
//! expression evaluator and CSV sampling used by the `semifib` binary.

pub mod error;
pub mod expr;
pub mod report;
pub mod sample;
pub mod tables;
pub mod verify;

pub use error::Error;
pub use report::{CheckRecord, Status, SuiteReport, VerifyReport};
pub use verify::{run_suite, suite_names};
