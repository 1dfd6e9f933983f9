//! Model-versus-reference analysis.

use alloc::string::String;
use alloc::vec::Vec;

use crate::classical::classical_relative;
use crate::error::{Error, Result};
use crate::math;
use crate::metric::Metric;
use crate::node::TechNode;
use crate::query::percent_reduction;
use crate::table::CalibratedTable;

/// A published reduction for one metric over one node step, in percent.
/// `reduction_lo == reduction_hi` for point values.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceEntry {
    pub source: String,
    pub metric: Metric,
    pub from: TechNode,
    pub to: TechNode,
    pub reduction_lo: f64,
    pub reduction_hi: f64,
}

/// Model reduction next to one reference row.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub source: String,
    pub metric: Metric,
    pub from: TechNode,
    pub to: TechNode,
    pub model_reduction_pct: f64,
    pub reference_lo: f64,
    pub reference_hi: f64,
    /// Percentage points from the model to the nearest range endpoint;
    /// zero inside the range.
    pub error_points: f64,
}

/// Deviation of the calibrated trend from classical scaling at `node`,
/// in percent of the classical relative value (130 nm baseline).
pub fn error_vs_classical(
    table: &CalibratedTable,
    metric: Metric,
    node: TechNode,
) -> Result<f64> {
    error_vs_classical_between(table, metric, TechNode::BASELINE, node)
}

/// Same deviation measured from an arbitrary baseline node.
pub fn error_vs_classical_between(
    table: &CalibratedTable,
    metric: Metric,
    baseline: TechNode,
    node: TechNode,
) -> Result<f64> {
    let model =
        table.relative_value(metric, node)? / table.relative_value(metric, baseline)?;
    let classical =
        classical_relative(metric, node) / classical_relative(metric, baseline);
    Ok(math::abs(model / classical - 1.0) * 100.0)
}

/// Compares the calibrated model with every reference row covering the
/// requested node step. Row order is preserved.
pub fn compare_reference(
    table: &CalibratedTable,
    entries: &[ReferenceEntry],
    from: TechNode,
    to: TechNode,
) -> Result<Vec<ErrorReport>> {
    let mut reports = Vec::new();
    for entry in entries {
        if entry.from != from || entry.to != to {
            continue;
        }
        if entry.reduction_lo > entry.reduction_hi {
            return Err(Error::InvalidRange {
                lo: entry.reduction_lo,
                hi: entry.reduction_hi,
            });
        }
        let factor = table.scaling_factor(entry.metric, from, to)?;
        let model = percent_reduction(factor.factor)?;
        let error_points = if model >= entry.reduction_lo && model <= entry.reduction_hi
        {
            0.0
        } else {
            let lo = math::abs(model - entry.reduction_lo);
            let hi = math::abs(model - entry.reduction_hi);
            lo.min(hi)
        };
        reports.push(ErrorReport {
            source: entry.source.clone(),
            metric: entry.metric,
            from,
            to,
            model_reduction_pct: model,
            reference_lo: entry.reduction_lo,
            reference_hi: entry.reduction_hi,
            error_points,
        });
    }
    if reports.is_empty() {
        return Err(Error::NoReferenceRows { from, to });
    }
    Ok(reports)
}
