//! The shipped calibrated table.
//!
//! Frozen output of [`crate::calibrate::calibrate`] over the packaged
//! calibration inputs. The constants below are the exact values the
//! pipeline produces; a rerun must reproduce them bit for bit. Values
//! are relative to 130 nm. Regenerate with the `freeze` example in the
//! `techscale` crate after changing calibration inputs.

use alloc::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::metric::{Metric, MetricClass};
use crate::node::TechNode;
use crate::trend::{Provenance, RelativeTrend, TrendPoint};

/// Version of the calibrated table data.
pub const DATA_VERSION: &str = "2021.1";

/// The four primary trends over all eleven nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibratedTable {
    area: RelativeTrend,
    delay: RelativeTrend,
    power: RelativeTrend,
    energy: RelativeTrend,
}

impl CalibratedTable {
    /// Builds a table from four full trends (one per primary metric,
    /// each covering all eleven nodes).
    pub fn new(
        area: RelativeTrend,
        delay: RelativeTrend,
        power: RelativeTrend,
        energy: RelativeTrend,
    ) -> Result<Self> {
        for (trend, metric) in [
            (&area, Metric::Area),
            (&delay, Metric::Delay),
            (&power, Metric::Power),
            (&energy, Metric::Energy),
        ] {
            if trend.metric() != metric {
                return Err(Error::InvalidTrend {
                    metric: trend.metric(),
                    detail: alloc::format!("expected the {metric} trend"),
                });
            }
            if trend.len() != TechNode::ALL.len() {
                return Err(Error::InvalidTrend {
                    metric,
                    detail: alloc::format!(
                        "covers {} of {} nodes",
                        trend.len(),
                        TechNode::ALL.len()
                    ),
                });
            }
        }
        Ok(CalibratedTable {
            area,
            delay,
            power,
            energy,
        })
    }

    /// The packaged silicon-calibrated table.
    pub fn shipped() -> CalibratedTable {
        let build = |metric, rows: &[(TechNode, f64, Provenance)]| {
            let points: BTreeMap<TechNode, TrendPoint> = rows
                .iter()
                .map(|&(node, value, provenance)| {
                    (node, TrendPoint { value, provenance })
                })
                .collect();
            RelativeTrend::new(metric, points).expect("frozen table is valid")
        };
        CalibratedTable {
            area: build(Metric::Area, &frozen::AREA),
            delay: build(Metric::Delay, &frozen::DELAY),
            power: build(Metric::Power, &frozen::POWER),
            energy: build(Metric::Energy, &frozen::ENERGY),
        }
    }

    /// The trend for a primary metric.
    pub fn trend(&self, metric: Metric) -> Result<&RelativeTrend> {
        match metric {
            Metric::Area => Ok(&self.area),
            Metric::Delay => Ok(&self.delay),
            Metric::Power => Ok(&self.power),
            Metric::Energy => Ok(&self.energy),
            _ => Err(Error::NotCalibrated { metric }),
        }
    }

    /// All four trends in metric order.
    pub fn trends(&self) -> [&RelativeTrend; 4] {
        [&self.area, &self.delay, &self.power, &self.energy]
    }

    /// Relative value (130 nm = 1.0) for a primary metric.
    pub fn relative_value(&self, metric: Metric, node: TechNode) -> Result<f64> {
        if metric.class() != MetricClass::Primary {
            return Err(Error::NotCalibrated { metric });
        }
        Ok(self
            .trend(metric)?
            .value(node)
            .expect("calibrated trends cover all nodes"))
    }
}

/// Frozen pipeline output. Generated; do not edit by hand.
mod frozen {
    use super::{Provenance, TechNode};
    use Provenance::{Anchor, Averaged, Fitted};
    use TechNode::*;

    pub(super) const AREA: [(TechNode, f64, Provenance); 11] = [
        (N130, 1.0, Anchor),
        (N90, 0.5245024560163588, Averaged),
        (N65, 0.23842770568419602, Averaged),
        (N45, 0.12048192771084336, Anchor),
        (N40, 0.06829661626922301, Averaged),
        (N32, 0.044216156664220414, Averaged),
        (N28, 0.028369169169019517, Averaged),
        (N22, 0.015293427140636943, Anchor),
        (N14, 0.005658568042035669, Anchor),
        (N10, 0.0020936701755531976, Anchor),
        (N7, 0.0013252932211251741, Anchor),
    ];

    pub(super) const DELAY: [(TechNode, f64, Provenance); 11] = [
        (N130, 1.0, Anchor),
        (N90, 0.7844952935808187, Fitted),
        (N65, 0.6253015040502188, Fitted),
        (N45, 0.5086360602147896, Fitted),
        (N40, 0.46224576053457994, Fitted),
        (N32, 0.422224434272748, Fitted),
        (N28, 0.3876309305971619, Fitted),
        (N22, 0.35768285288156676, Fitted),
        (N14, 0.3092227382597118, Fitted),
        (N10, 0.2689735734055995, Fitted),
        (N7, 0.2488005554001796, Anchor),
    ];

    pub(super) const POWER: [(TechNode, f64, Provenance); 11] = [
        (N130, 1.0, Anchor),
        (N90, 0.6509507970449492, Fitted),
        (N65, 0.4406046075893491, Fitted),
        (N45, 0.29335397433588817, Fitted),
        (N40, 0.25322740619916806, Fitted),
        (N32, 0.23695797603868188, Anchor),
        (N28, 0.17876893985752745, Fitted),
        (N22, 0.1511558002157691, Fitted),
        (N14, 0.10943959242581479, Fitted),
        (N10, 0.08364895827921964, Fitted),
        (N7, 0.05855427079545375, Anchor),
    ];

    pub(super) const ENERGY: [(TechNode, f64, Provenance); 11] = [
        (N130, 1.0, Anchor),
        (N90, 0.5106678366344454, Fitted),
        (N65, 0.2755107238170764, Fitted),
        (N45, 0.14921040975455666, Fitted),
        (N40, 0.11705329496673345, Fitted),
        (N32, 0.10004944737934783, Fitted),
        (N28, 0.06929637051884144, Fitted),
        (N22, 0.05406583785077244, Fitted),
        (N14, 0.033841210443937265, Fitted),
        (N10, 0.022499359220017615, Fitted),
        (N7, 0.014568335094961408, Fitted),
    ];
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_table_is_complete_and_valid() {
        let table = CalibratedTable::shipped();
        for trend in table.trends() {
            assert_eq!(trend.len(), 11);
            assert_eq!(trend.value(TechNode::N130), Some(1.0));
        }
    }

    #[test]
    fn area_endpoints_match_published_factors() {
        let table = CalibratedTable::shipped();
        let at_45 = table.relative_value(Metric::Area, TechNode::N45).unwrap();
        assert!((at_45 - 1.0 / 8.3).abs() < 1e-15);
        let at_7 = table.relative_value(Metric::Area, TechNode::N7).unwrap();
        assert!((at_7 - 1.0 / 754.55).abs() / at_7 < 1e-12);
    }

    #[test]
    fn energy_column_is_the_power_delay_product() {
        let table = CalibratedTable::shipped();
        for node in TechNode::ALL {
            let e = table.relative_value(Metric::Energy, node).unwrap();
            let p = table.relative_value(Metric::Power, node).unwrap();
            let d = table.relative_value(Metric::Delay, node).unwrap();
            assert_eq!(e, p * d);
        }
    }

    #[test]
    fn non_primary_metrics_have_no_trend() {
        let table = CalibratedTable::shipped();
        assert!(matches!(
            table.relative_value(Metric::Edp, TechNode::N45),
            Err(Error::NotCalibrated { .. })
        ));
        assert!(matches!(
            table.trend(Metric::Voltage),
            Err(Error::NotCalibrated { .. })
        ));
    }

    #[test]
    fn half_nodes_interpolate_between_neighbours() {
        let table = CalibratedTable::shipped();
        for metric in Metric::PRIMARY {
            let at_45 = table.relative_value(metric, TechNode::N45).unwrap();
            let at_40 = table.relative_value(metric, TechNode::N40).unwrap();
            let at_32 = table.relative_value(metric, TechNode::N32).unwrap();
            let at_28 = table.relative_value(metric, TechNode::N28).unwrap();
            let at_22 = table.relative_value(metric, TechNode::N22).unwrap();
            assert!(at_45 > at_40 && at_40 > at_32);
            assert!(at_32 > at_28 && at_28 > at_22);
        }
    }
}
