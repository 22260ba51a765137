//! Configuration loading, the end-to-end analysis pipeline, JSON reports and
//! contour samples.

mod config;
mod contour;
mod pipeline;

pub use config::{load_config, BoxEntry, ChargeEntry, LoadedConfig, OutputPaths, RunConfig};
pub use contour::{cell_tolerance, default_window, sample_config, sample_level_sets, to_csv, CurveSample, LevelSets, PlotWindow, MIN_GRID};
pub use pipeline::{run_pipeline, AnalysisReport, DegreeCheck, SystemEcho, ZeroEntry};

use thiserror::Error;

/// Name of the environment variable holding the default precision in bits.
pub const PRECISION_ENV: &str = "LINEFIELD_PRECISION_BITS";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReportError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("config parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("config field {field}: {message}")]
    Field { field: String, message: String },
    #[error("invalid configuration: {0}")]
    Invalid(String),
    #[error("{module}: {message}")]
    Module { module: &'static str, message: String },
}

/// Deterministic JSON: keys sorted, two-space indentation.
pub fn to_canonical_json<T: serde::Serialize>(v: &T) -> String {
    let value = serde_json::to_value(v).expect("report serializes");
    let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
    s.push('\n');
    s
}
