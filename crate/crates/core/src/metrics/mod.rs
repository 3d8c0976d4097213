//! Evaluation suites, solved rates and level/trajectory complexity metrics.

mod complexity;
mod eval;
mod lzw;
mod suites;

pub use complexity::{complexity_report, ComplexityRecord, ComplexitySummary};
pub use eval::{evaluate_suite, solved_rate, EvalMode, SolvedRates, SuiteEvaluation};
pub use lzw::{action_lzw, lzw_complexity};
pub use suites::{build_test_suite, EvalSuite, SuiteKind};
