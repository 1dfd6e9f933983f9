//! Scaling-factor queries against the calibrated table.

use alloc::string::String;

use crate::error::{Error, Result};
use crate::metric::{Metric, MetricClass};
use crate::node::TechNode;
use crate::table::CalibratedTable;

/// A factor between two nodes. Old over new: a value at `from` divides
/// by `factor` to estimate it at `to`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingFactor {
    pub metric: Metric,
    pub from: TechNode,
    pub to: TechNode,
    pub factor: f64,
}

/// A measured quantity tied to a node, e.g. 100 mW of power at 45 nm.
#[derive(Debug, Clone, PartialEq)]
pub struct Measure {
    pub value: f64,
    pub unit: String,
    pub metric: Metric,
    pub node: TechNode,
}

impl CalibratedTable {
    /// Calibrated scaling factor between two nodes.
    ///
    /// Primary metrics come straight from the table; derived metrics
    /// compose from them. Classical-only metrics have no calibrated
    /// factor.
    pub fn scaling_factor(
        &self,
        metric: Metric,
        from: TechNode,
        to: TechNode,
    ) -> Result<ScalingFactor> {
        Ok(ScalingFactor {
            metric,
            from,
            to,
            factor: self.factor(metric, from, to)?,
        })
    }

    fn factor(&self, metric: Metric, from: TechNode, to: TechNode) -> Result<f64> {
        match metric.class() {
            MetricClass::Primary => {
                let trend = self.trend(metric)?;
                let from_v = trend.value(from).expect("full trend");
                let to_v = trend.value(to).expect("full trend");
                Ok(from_v / to_v)
            }
            MetricClass::Derived => match metric {
                Metric::Edp => Ok(self.factor(Metric::Energy, from, to)?
                    * self.factor(Metric::Delay, from, to)?),
                Metric::Throughput => Ok(1.0 / self.factor(Metric::Delay, from, to)?),
                Metric::PowerDensity => Ok(self.factor(Metric::Power, from, to)?
                    / self.factor(Metric::Area, from, to)?),
                Metric::ThroughputPerArea => {
                    Ok(self.factor(Metric::Throughput, from, to)?
                        / self.factor(Metric::Area, from, to)?)
                }
                _ => unreachable!("class covers derived metrics"),
            },
            MetricClass::ClassicalOnly => Err(Error::NotCalibrated { metric }),
        }
    }

    /// Projects a measure onto another node by dividing by the factor.
    pub fn scale_value(&self, measure: &Measure, to: TechNode) -> Result<Measure> {
        let factor = self.factor(measure.metric, measure.node, to)?;
        Ok(Measure {
            value: measure.value / factor,
            unit: measure.unit.clone(),
            metric: measure.metric,
            node: to,
        })
    }
}

/// Percentage by which a quantity drops when scaled by `factor`:
/// a factor of 2 is a 50% reduction. Negative when the quantity grows.
pub fn percent_reduction(factor: f64) -> Result<f64> {
    if !(factor.is_finite() && factor > 0.0) {
        return Err(Error::NonpositiveFactor { factor });
    }
    Ok((1.0 - 1.0 / factor) * 100.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn table() -> CalibratedTable {
        CalibratedTable::shipped()
    }

    #[test]
    fn area_factor_130_to_45_is_the_published_8_3() {
        let f = table()
            .scaling_factor(Metric::Area, TechNode::N130, TechNode::N45)
            .unwrap();
        assert!((f.factor - 8.3).abs() / 8.3 < 1e-12);
    }

    #[test]
    fn a_100_unit_block_scales_like_the_worked_examples() {
        let t = table();
        // 100 area units, 130 nm -> 45 nm
        let block = Measure {
            value: 100.0,
            unit: "um^2".to_string(),
            metric: Metric::Area,
            node: TechNode::N130,
        };
        let scaled = t.scale_value(&block, TechNode::N45).unwrap();
        assert!((scaled.value - 12.05).abs() < 0.01);
        assert_eq!(scaled.node, TechNode::N45);
        assert_eq!(scaled.unit, "um^2");

        // 100 mW of power, 45 nm -> 32 nm
        let power = Measure {
            value: 100.0,
            unit: "mW".to_string(),
            metric: Metric::Power,
            node: TechNode::N45,
        };
        let scaled = t.scale_value(&power, TechNode::N32).unwrap();
        assert!((scaled.value - 80.775).abs() < 0.01);
    }

    #[test]
    fn identity_and_inversion() {
        let t = table();
        for metric in [Metric::Area, Metric::Edp, Metric::Throughput] {
            let same = t
                .scaling_factor(metric, TechNode::N65, TechNode::N65)
                .unwrap();
            assert_eq!(same.factor, 1.0);
            let fwd = t
                .scaling_factor(metric, TechNode::N65, TechNode::N14)
                .unwrap();
            let back = t
                .scaling_factor(metric, TechNode::N14, TechNode::N65)
                .unwrap();
            assert!((fwd.factor * back.factor - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn derived_factors_compose_from_primaries() {
        let t = table();
        let from = TechNode::N130;
        let to = TechNode::N22;
        let g = |m| t.scaling_factor(m, from, to).unwrap().factor;
        assert_eq!(g(Metric::Edp), g(Metric::Energy) * g(Metric::Delay));
        assert_eq!(g(Metric::Throughput), 1.0 / g(Metric::Delay));
        assert_eq!(g(Metric::PowerDensity), g(Metric::Power) / g(Metric::Area));
        assert_eq!(
            g(Metric::ThroughputPerArea),
            g(Metric::Throughput) / g(Metric::Area)
        );
        // throughput improves, so its factor is below one
        assert!(g(Metric::Throughput) < 1.0);
    }

    #[test]
    fn classical_only_metrics_have_no_calibrated_factor() {
        let err = table().scaling_factor(Metric::Voltage, TechNode::N130, TechNode::N65);
        assert!(matches!(err, Err(Error::NotCalibrated { .. })));
    }

    #[test]
    fn percent_reduction_basics() {
        assert_eq!(percent_reduction(1.0).unwrap(), 0.0);
        assert!((percent_reduction(2.0).unwrap() - 50.0).abs() < 1e-12);
        let f = 1.0 / 0.633;
        assert!((percent_reduction(f).unwrap() - 36.7).abs() < 1e-9);
        // growth shows as a negative reduction
        assert!(percent_reduction(0.5).unwrap() < 0.0);
        assert!(percent_reduction(0.0).is_err());
        assert!(percent_reduction(-2.0).is_err());
        assert!(percent_reduction(f64::NAN).is_err());
    }
}
