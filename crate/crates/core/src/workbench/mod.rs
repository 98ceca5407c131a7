//! Analysis reports, executable theorem checks and corpus runs.

pub mod checks;
mod reference;
pub mod report;
pub mod suite;

pub use checks::{
    check_all, check_theorem, parse_check_list, CheckContext, CheckId, CheckResult, CheckStatus,
    UnknownCheck,
};
pub use report::{analyze, AnalysisReport, ConsistencyFlag};
pub use suite::{verify_suite, CheckTally, CorpusError, CorpusSpec, SuiteFailure, SuiteReport};
