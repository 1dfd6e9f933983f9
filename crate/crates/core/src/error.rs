//! Crate-wide error type.

use alloc::string::String;

use crate::metric::Metric;
use crate::node::TechNode;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("unsupported node: {nm} nm")]
    UnsupportedNode { nm: f64 },

    #[error("unknown metric: {name}")]
    UnknownMetric { name: String },

    #[error("metric {metric} has no calibrated trend")]
    NotCalibrated { metric: Metric },

    #[error("source {dataset} has no {baseline_nm} nm datum to rebaseline against")]
    MissingBaseline { dataset: String, baseline_nm: f64 },

    #[error("source {dataset} mixes baseline nodes")]
    InconsistentBaseline { dataset: String },

    #[error("points mix metrics; a fit covers a single metric")]
    MetricMismatch,

    #[error("need at least {needed} points with distinct generation indices, got {got}")]
    InsufficientPoints { needed: usize, got: usize },

    #[error("fit design matrix is numerically singular")]
    DegenerateFit,

    #[error("relative values must be positive and finite, got {value}")]
    NonpositiveValue { value: f64 },

    #[error("fit rejected: r-squared {r_squared} is below the acceptance gate")]
    RejectedFit { r_squared: f64 },

    #[error("scaling factor must be positive, got {factor}")]
    NonpositiveFactor { factor: f64 },

    #[error("anchors may only constrain area, delay or power, got {metric}")]
    UnsupportedAnchor { metric: Metric },

    #[error("calibration points may only cover area, delay or power, got {metric}")]
    UnsupportedPoints { metric: Metric },

    #[error("no calibration points for {metric}")]
    MissingPoints { metric: Metric },

    #[error("anchor constraints are infeasible: {detail}")]
    InfeasibleAnchors { detail: String },

    #[error("trend for {metric} is invalid: {detail}")]
    InvalidTrend { metric: Metric, detail: String },

    #[error("tables cover different node sets")]
    NodeSetMismatch,

    #[error("no reference rows cover {from} -> {to}")]
    NoReferenceRows { from: TechNode, to: TechNode },

    #[error("reference range is invalid: lo {lo} > hi {hi}")]
    InvalidRange { lo: f64, hi: f64 },
}
