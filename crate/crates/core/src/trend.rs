//! Relative scaling trends.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;

use crate::error::{Error, Result};
use crate::metric::{Metric, MetricClass};
use crate::node::TechNode;

/// Where a trend value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Pinned by a published factor.
    Anchor,
    /// Taken from an accepted curve fit.
    Fitted,
    /// Combined from more than one fitted source.
    Averaged,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::Anchor => "anchor",
            Provenance::Fitted => "fitted",
            Provenance::Averaged => "averaged",
        }
    }

    pub fn parse(name: &str) -> Option<Provenance> {
        match name {
            "anchor" => Some(Provenance::Anchor),
            "fitted" => Some(Provenance::Fitted),
            "averaged" => Some(Provenance::Averaged),
            _ => None,
        }
    }
}

/// One trend entry: a value relative to the 130 nm baseline plus its origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrendPoint {
    pub value: f64,
    pub provenance: Provenance,
}

/// Per-node relative values for one primary metric.
///
/// Invariants, enforced on construction:
/// - metric is one of area, delay, power, energy
/// - the 130 nm baseline is present and exactly 1.0
/// - values are finite, positive, and strictly decreasing toward
///   smaller nodes
#[derive(Debug, Clone, PartialEq)]
pub struct RelativeTrend {
    metric: Metric,
    points: BTreeMap<TechNode, TrendPoint>,
}

impl RelativeTrend {
    pub fn new(metric: Metric, points: BTreeMap<TechNode, TrendPoint>) -> Result<Self> {
        let invalid = |detail: String| Error::InvalidTrend { metric, detail };
        if metric.class() != MetricClass::Primary {
            return Err(invalid(format!("{metric} is not a primary metric")));
        }
        match points.get(&TechNode::BASELINE) {
            Some(p) if p.value == 1.0 => {}
            Some(p) => {
                return Err(invalid(format!(
                    "baseline value must be exactly 1.0, got {}",
                    p.value
                )))
            }
            None => return Err(invalid("baseline node missing".into())),
        }
        let mut prev: Option<(TechNode, f64)> = None;
        for (&node, point) in &points {
            if !(point.value.is_finite() && point.value > 0.0) {
                return Err(invalid(format!("value at {node} is {}", point.value)));
            }
            if let Some((pn, pv)) = prev {
                if point.value >= pv {
                    return Err(invalid(format!(
                        "not strictly decreasing: {node} >= {pn}"
                    )));
                }
            }
            prev = Some((node, point.value));
        }
        Ok(RelativeTrend { metric, points })
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn value(&self, node: TechNode) -> Option<f64> {
        self.points.get(&node).map(|p| p.value)
    }

    pub fn point(&self, node: TechNode) -> Option<&TrendPoint> {
        self.points.get(&node)
    }

    /// Nodes in generation order with their points.
    pub fn iter(&self) -> impl Iterator<Item = (TechNode, &TrendPoint)> {
        self.points.iter().map(|(n, p)| (*n, p))
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Values renormalized so `baseline` reads 1.0. Node order preserved.
    pub fn values_relative_to(
        &self,
        baseline: TechNode,
    ) -> Result<impl Iterator<Item = (TechNode, f64)> + '_> {
        let base = self.value(baseline).ok_or(Error::UnsupportedNode {
            nm: baseline.feature_nm(),
        })?;
        Ok(self.iter().map(move |(n, p)| (n, p.value / base)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn points(values: &[(TechNode, f64)]) -> BTreeMap<TechNode, TrendPoint> {
        values
            .iter()
            .map(|&(n, value)| {
                (
                    n,
                    TrendPoint {
                        value,
                        provenance: Provenance::Fitted,
                    },
                )
            })
            .collect()
    }

    #[test]
    fn accepts_a_valid_trend() {
        let t = RelativeTrend::new(
            Metric::Area,
            points(&[
                (TechNode::N130, 1.0),
                (TechNode::N90, 0.5),
                (TechNode::N65, 0.25),
            ]),
        )
        .unwrap();
        assert_eq!(t.value(TechNode::N90), Some(0.5));
        assert_eq!(t.value(TechNode::N7), None);
        assert_eq!(t.len(), 3);
    }

    #[test]
    fn rejects_missing_or_off_baseline() {
        let err = RelativeTrend::new(Metric::Area, points(&[(TechNode::N90, 0.5)]));
        assert!(matches!(err, Err(Error::InvalidTrend { .. })));
        let err = RelativeTrend::new(
            Metric::Area,
            points(&[(TechNode::N130, 1.01), (TechNode::N90, 0.5)]),
        );
        assert!(matches!(err, Err(Error::InvalidTrend { .. })));
    }

    #[test]
    fn rejects_non_decreasing_values() {
        let err = RelativeTrend::new(
            Metric::Delay,
            points(&[
                (TechNode::N130, 1.0),
                (TechNode::N90, 0.7),
                (TechNode::N65, 0.7),
            ]),
        );
        assert!(matches!(err, Err(Error::InvalidTrend { .. })));
    }

    #[test]
    fn rejects_non_primary_metrics() {
        for metric in [Metric::Edp, Metric::Voltage] {
            let err = RelativeTrend::new(metric, points(&[(TechNode::N130, 1.0)]));
            assert!(matches!(err, Err(Error::InvalidTrend { .. })));
        }
    }

    #[test]
    fn renormalizes_to_another_baseline() {
        let t = RelativeTrend::new(
            Metric::Power,
            points(&[
                (TechNode::N130, 1.0),
                (TechNode::N65, 0.4),
                (TechNode::N45, 0.2),
            ]),
        )
        .unwrap();
        let rebased: alloc::vec::Vec<_> =
            t.values_relative_to(TechNode::N65).unwrap().collect();
        assert_eq!(rebased[0], (TechNode::N130, 2.5));
        assert_eq!(rebased[1], (TechNode::N65, 1.0));
        assert_eq!(rebased[2], (TechNode::N45, 0.5));
    }
}
