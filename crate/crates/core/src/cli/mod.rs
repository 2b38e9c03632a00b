//! Batch front end: configuration, verification suites, reports and SNF
//! printing. The binary is a thin wrapper over these functions.

mod config;
mod report;
mod snf;
mod suites;

pub use config::{default_params, default_rings, Format, Overrides, RingEntry, RunConfig, Suite, DEFAULT_SEED};
pub use report::{
    build_report, render_report_text, render_verify_text, CaseReport, ComparisonJson, DecompositionJson, FactorsJson, Report,
    SquareJson, SummandJson, VerifyReport,
};
pub use snf::{parse_matrix, render_snf_text, snf_result, SnfJson};
pub use suites::{run_suite, smith_witness, Check, Outcome, SuiteResult};

/// Runs the configured suites in order.
pub fn verify(cfg: &RunConfig) -> VerifyReport {
    VerifyReport::new(cfg.seed, cfg.suites.iter().map(|&s| run_suite(s, cfg)).collect())
}

/// Deterministic JSON: fixed field order, no timings.
pub fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}
