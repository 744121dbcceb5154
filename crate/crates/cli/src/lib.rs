//! Script interpreter, verification suites and reports behind the `alg`
//! command.

pub mod report;
pub mod script;
pub mod suites;

pub use report::{Check, Status, SuiteReport};
pub use script::{parse_script, run_script, ScriptError, ScriptOutcome};
pub use suites::{verify_suite, SuiteParams, SUITES};
