//! Randomized algebra checks over the factor, fit, and trend operations.

use std::collections::BTreeMap;

use proptest::prelude::*;

use techscale_core::classical::classical_factor;
use techscale_core::fit::{average_tables, fit_quadratic, rebaseline, DigitizedPoint};
use techscale_core::query::percent_reduction;
use techscale_core::trend::{Provenance, RelativeTrend, TrendPoint};
use techscale_core::{CalibratedTable, Measure, Metric, MetricClass, TechNode};

const CALIBRATED: [Metric; 8] = [
    Metric::Area,
    Metric::Delay,
    Metric::Power,
    Metric::Energy,
    Metric::Edp,
    Metric::Throughput,
    Metric::PowerDensity,
    Metric::ThroughputPerArea,
];

fn any_node() -> impl Strategy<Value = TechNode> {
    prop::sample::select(TechNode::ALL.to_vec())
}

fn calibrated_metric() -> impl Strategy<Value = Metric> {
    prop::sample::select(CALIBRATED.to_vec())
}

fn any_metric() -> impl Strategy<Value = Metric> {
    prop::sample::select(Metric::ALL.to_vec())
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs())
}

#[test]
fn averaging_a_trend_with_itself_changes_nothing() {
    let table = CalibratedTable::shipped();
    for metric in Metric::PRIMARY {
        let t = table.trend(metric).unwrap();
        let avg = average_tables(t, t).unwrap();
        for (node, point) in t.iter() {
            let v = avg.value(node).unwrap();
            assert!(close(v, point.value, 1e-15));
        }
    }
}

proptest! {
    #[test]
    fn factor_identity_is_exact(metric in calibrated_metric(), node in any_node()) {
        let table = CalibratedTable::shipped();
        let f = table.scaling_factor(metric, node, node).unwrap();
        prop_assert_eq!(f.factor, 1.0);
    }

    #[test]
    fn factor_inversion(metric in calibrated_metric(), a in any_node(), b in any_node()) {
        let table = CalibratedTable::shipped();
        let ab = table.scaling_factor(metric, a, b).unwrap().factor;
        let ba = table.scaling_factor(metric, b, a).unwrap().factor;
        prop_assert!(close(ab * ba, 1.0, 1e-12), "{} * {} != 1", ab, ba);
    }

    #[test]
    fn factor_composition(
        metric in calibrated_metric(),
        a in any_node(),
        b in any_node(),
        c in any_node(),
    ) {
        let table = CalibratedTable::shipped();
        let ab = table.scaling_factor(metric, a, b).unwrap().factor;
        let bc = table.scaling_factor(metric, b, c).unwrap().factor;
        let ac = table.scaling_factor(metric, a, c).unwrap().factor;
        prop_assert!(close(ab * bc, ac, 1e-12), "{} != {}", ab * bc, ac);
    }

    #[test]
    fn classical_composition(
        metric in any_metric(),
        a in any_node(),
        b in any_node(),
        c in any_node(),
    ) {
        let ab = classical_factor(metric, a, b);
        let bc = classical_factor(metric, b, c);
        let ac = classical_factor(metric, a, c);
        prop_assert!(close(ab * bc, ac, 1e-12), "{} != {}", ab * bc, ac);
    }

    #[test]
    fn scale_round_trip(
        metric in calibrated_metric(),
        a in any_node(),
        b in any_node(),
        value in 1e-3..1e6f64,
    ) {
        let table = CalibratedTable::shipped();
        let measure = Measure { value, unit: "u".to_string(), metric, node: a };
        let there = table.scale_value(&measure, b).unwrap();
        let back = table.scale_value(&there, a).unwrap();
        prop_assert!(close(back.value, value, 1e-12));
        prop_assert_eq!(back.node, a);
        prop_assert_eq!(back.unit, "u");
    }

    #[test]
    fn percent_reduction_is_monotone(lo in 0.01..100.0f64, delta in 1e-6..100.0f64) {
        let hi = lo + delta;
        prop_assert!(percent_reduction(lo).unwrap() < percent_reduction(hi).unwrap());
    }

    #[test]
    fn averaging_is_commutative(scale in 1.01..4.0f64) {
        // second trend: first trend with every step stretched by `scale`
        let table = CalibratedTable::shipped();
        let a = table.trend(Metric::Area).unwrap();
        let mut points = BTreeMap::new();
        for (node, point) in a.iter() {
            let stretched = if node == TechNode::BASELINE {
                1.0
            } else {
                point.value / scale
            };
            points.insert(node, TrendPoint { value: stretched, provenance: Provenance::Fitted });
        }
        let b = RelativeTrend::new(Metric::Area, points).unwrap();
        let ab = average_tables(a, &b).unwrap();
        let ba = average_tables(&b, a).unwrap();
        for node in TechNode::ALL {
            prop_assert_eq!(ab.value(node).unwrap(), ba.value(node).unwrap());
        }
    }

    #[test]
    fn rebaseline_round_trips(divisor in 0.05..0.95f64) {
        // one source spanning five nodes, values forced strictly decreasing
        let nms = [130.0, 90.0, 65.0, 45.0, 32.0];
        let points: Vec<DigitizedPoint> = nms
            .iter()
            .enumerate()
            .map(|(i, &nm)| DigitizedPoint {
                node_nm: nm,
                metric: Metric::Area,
                relative_value: divisor.powi(i as i32),
                source: "s".to_string(),
                baseline_nm: 130.0,
            })
            .collect();
        let shifted = rebaseline(&points, TechNode::N65).unwrap();
        let back = rebaseline(&shifted, TechNode::N130).unwrap();
        for (orig, round) in points.iter().zip(back.iter()) {
            prop_assert!(close(orig.relative_value, round.relative_value, 1e-12));
            prop_assert_eq!(round.baseline_nm, 130.0);
        }
    }

    #[test]
    fn exact_quadratic_inputs_are_recovered(
        c0 in -0.5..0.5f64,
        c1 in -0.5..-0.05f64,
        c2 in -0.05..0.05f64,
    ) {
        let points: Vec<DigitizedPoint> = TechNode::ALL
            .iter()
            .filter(|n| !n.is_half_node())
            .map(|n| {
                let g = n.gen_index();
                DigitizedPoint {
                    node_nm: n.feature_nm(),
                    metric: Metric::Delay,
                    relative_value: libm::exp10(c0 + c1 * g + c2 * g * g),
                    source: "synthetic".to_string(),
                    baseline_nm: 130.0,
                }
            })
            .collect();
        let model = fit_quadratic(&points).unwrap();
        prop_assert!((model.c0 - c0).abs() < 1e-7, "c0 {} vs {}", model.c0, c0);
        prop_assert!((model.c1 - c1).abs() < 1e-7, "c1 {} vs {}", model.c1, c1);
        prop_assert!((model.c2 - c2).abs() < 1e-7, "c2 {} vs {}", model.c2, c2);
        prop_assert!(model.r_squared > 1.0 - 1e-12);
    }

    #[test]
    fn derived_factors_stay_consistent_with_their_definition(
        a in any_node(),
        b in any_node(),
    ) {
        let table = CalibratedTable::shipped();
        let get = |m| table.scaling_factor(m, a, b).unwrap().factor;
        prop_assert!(close(get(Metric::Edp), get(Metric::Energy) * get(Metric::Delay), 1e-12));
        prop_assert!(close(get(Metric::Throughput), 1.0 / get(Metric::Delay), 1e-12));
        prop_assert!(close(get(Metric::PowerDensity), get(Metric::Power) / get(Metric::Area), 1e-12));
        prop_assert!(close(
            get(Metric::ThroughputPerArea),
            get(Metric::Throughput) / get(Metric::Area),
            1e-12
        ));
    }

    #[test]
    fn classical_only_metrics_are_rejected_by_the_table(a in any_node(), b in any_node()) {
        let table = CalibratedTable::shipped();
        for metric in Metric::ALL {
            if metric.class() == MetricClass::ClassicalOnly {
                prop_assert!(table.scaling_factor(metric, a, b).is_err());
            }
        }
    }
}
