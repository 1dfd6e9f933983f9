//! Classical constant-field (Dennard) scaling.
//!
//! Under constant-field scaling every quantity follows a fixed power of
//! the dimension ratio K = from_nm / to_nm. These rules are the baseline
//! the calibrated model is compared against; below roughly 65 nm they no
//! longer describe real silicon.

use crate::math;
use crate::metric::Metric;
use crate::node::TechNode;

/// Exponent e such that the classical factor is K^e with
/// K = from_nm / to_nm > 1 for a shrink.
///
/// Factors are old/new, so quantities that improve by growing
/// (throughput, doping) carry negative exponents.
pub fn classical_exponent(metric: Metric) -> i32 {
    match metric {
        Metric::Dimension => 1,
        Metric::Doping => -1,
        Metric::Voltage => 1,
        Metric::Current => 1,
        Metric::Capacitance => 1,
        Metric::Delay => 1,
        Metric::Power => 2,
        Metric::PowerDensity => 0,
        Metric::Area => 2,
        Metric::Energy => 3,
        Metric::Edp => 4,
        Metric::Throughput => -1,
        // throughput / area
        Metric::ThroughputPerArea => -3,
    }
}

/// Classical scaling factor between two nodes. Defined for every metric.
pub fn classical_factor(metric: Metric, from: TechNode, to: TechNode) -> f64 {
    let k = from.feature_nm() / to.feature_nm();
    math::powi(k, classical_exponent(metric))
}

/// Classical value at `node` relative to the 130 nm baseline.
pub fn classical_relative(metric: Metric, node: TechNode) -> f64 {
    let shrink = node.feature_nm() / TechNode::BASELINE.feature_nm();
    math::powi(shrink, classical_exponent(metric))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math;

    #[test]
    fn factors_for_one_ideal_generation() {
        // 130 -> 65 nm is exactly K = 2.
        let f = TechNode::N130;
        let t = TechNode::N65;
        assert_eq!(classical_factor(Metric::Area, f, t), 4.0);
        assert_eq!(classical_factor(Metric::Delay, f, t), 2.0);
        assert_eq!(classical_factor(Metric::Power, f, t), 4.0);
        assert_eq!(classical_factor(Metric::Energy, f, t), 8.0);
        assert_eq!(classical_factor(Metric::Edp, f, t), 16.0);
        assert_eq!(classical_factor(Metric::Throughput, f, t), 0.5);
        assert_eq!(classical_factor(Metric::PowerDensity, f, t), 1.0);
        assert_eq!(classical_factor(Metric::ThroughputPerArea, f, t), 0.125);
        assert_eq!(classical_factor(Metric::Doping, f, t), 0.5);
    }

    #[test]
    fn factor_matches_direct_power() {
        for metric in Metric::ALL {
            for from in TechNode::ALL {
                for to in TechNode::ALL {
                    let k = from.feature_nm() / to.feature_nm();
                    let direct = math::powi(k, classical_exponent(metric));
                    assert_eq!(classical_factor(metric, from, to), direct);
                }
            }
        }
    }

    #[test]
    fn derived_rules_compose_from_primaries() {
        let e = classical_exponent;
        assert_eq!(e(Metric::Edp), e(Metric::Energy) + e(Metric::Delay));
        assert_eq!(e(Metric::Throughput), -e(Metric::Delay));
        assert_eq!(e(Metric::PowerDensity), e(Metric::Power) - e(Metric::Area));
        assert_eq!(
            e(Metric::ThroughputPerArea),
            e(Metric::Throughput) - e(Metric::Area)
        );
        assert_eq!(e(Metric::Energy), e(Metric::Power) + e(Metric::Delay));
    }

    #[test]
    fn area_is_the_square_of_dimension() {
        for from in TechNode::ALL {
            for to in TechNode::ALL {
                let dim = classical_factor(Metric::Dimension, from, to);
                let area = classical_factor(Metric::Area, from, to);
                assert!((dim * dim - area).abs() <= 1e-12 * area.abs());
            }
        }
    }

    #[test]
    fn identity_when_nodes_match() {
        for metric in Metric::ALL {
            assert_eq!(classical_factor(metric, TechNode::N45, TechNode::N45), 1.0);
        }
    }

    #[test]
    fn relative_is_reciprocal_of_factor_from_baseline() {
        for metric in Metric::ALL {
            for node in TechNode::ALL {
                let rel = classical_relative(metric, node);
                let fac = classical_factor(metric, TechNode::N130, node);
                assert!((rel * fac - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn eight_generation_compound_rate() {
        // An ideal generation shrinks area to 0.49x; eight of them give
        // roughly a factor of 1/303.
        let compound = math::powi(0.49, 8);
        assert!((1.0 / compound - 303.0).abs() / 303.0 < 0.01);
    }
}
