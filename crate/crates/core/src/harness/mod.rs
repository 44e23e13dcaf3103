//! Manifest-driven verification: load a metric and its structures, run
//! named checks, and render a report.

mod args;
mod checks;
mod fixtures;
mod manifest;
mod report;

pub use args::{parse_plane, parse_sample_point};
pub use checks::{run_checks, run_named, CheckName, RunOptions};
pub use fixtures::{fixture, random_polynomial_metric, taxonomy_fixture, NAMES as FIXTURE_NAMES};
pub use manifest::{
    load_manifest, resolve_manifest, ComponentMap, Format, Manifest, RawChart, RawConstants, RawFluid, RawFluids,
    RawManifest, RawParam, RawQcc, RawStructure,
};
pub use report::{emit_report, CheckReport, Conventions, Report, Residual, RIEMANN_SIGN};

use crate::symexpr::ExprError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HarnessError {
    #[error("manifest parse error: {0}")]
    Parse(String),
    #[error("duplicate component: {0}")]
    Duplicate(String),
    #[error("invalid manifest: {0}")]
    Invalid(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("{field}: {source}")]
    Expr { field: String, source: ExprError },
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("check `{check}` needs {needs}")]
    MissingInput { check: String, needs: String },
    #[error("{0}")]
    Io(String),
    #[error("unknown output format `{0}`; expected text or json")]
    Format(String),
}

impl HarnessError {
    /// Input errors exit with status 2.
    pub fn exit_code(&self) -> i32 {
        2
    }
}
