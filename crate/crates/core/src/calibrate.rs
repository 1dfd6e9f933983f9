//! The calibration pipeline that produces the shipped table.
//!
//! Inputs are digitized per-source trend estimates plus anchor
//! constraints, published factors the result must reproduce exactly.
//! The pipeline is deterministic: the same input always produces a
//! bit-identical table.
//!
//! Stages, per metric (area, delay, power):
//!
//! 1. Each source is rebaselined to its own baseline node and fitted
//!    (quadratic, log space). Rejected fits abort. The fit is evaluated
//!    at all eleven nodes and renormalized so 130 nm reads 1.0, which
//!    also extrapolates sources that do not span the full node range.
//! 2. Multi-source metrics combine their tables by per-node geometric
//!    mean, giving the estimate table.
//! 3. Anchors resolve into pinned values by walking from the 130 nm
//!    baseline in input order. When no anchor touches a pinned node,
//!    the first stalled anchor's from-node is seeded from the estimate
//!    table. An anchor whose endpoints are both already pinned must be
//!    consistent within 0.5%, otherwise the set is infeasible.
//! 4. A refit runs over the pinned values plus estimate values at the
//!    free nodes. Free nodes take the refit curve; pinned nodes keep
//!    their exact values, so every anchor holds exactly in the output.
//! 5. The energy trend is the per-node product of power and delay.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fit::{self, DigitizedPoint, FitModel};
use crate::math;
use crate::metric::Metric;
use crate::node::TechNode;
use crate::table::CalibratedTable;
use crate::trend::{Provenance, RelativeTrend, TrendPoint};

/// A published factor the calibrated table must reproduce exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct AnchorConstraint {
    pub metric: Metric,
    pub from: TechNode,
    pub to: TechNode,
    pub factor: f64,
}

/// Everything calibrate needs.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CalibrationInput {
    pub points: Vec<DigitizedPoint>,
    pub anchors: Vec<AnchorConstraint>,
}

/// A per-source fit report.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceFit {
    pub source: String,
    pub model: FitModel,
}

/// Calibration output: the table plus every fit behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct Calibration {
    pub table: CalibratedTable,
    pub source_fits: Vec<SourceFit>,
    pub refits: Vec<FitModel>,
}

const FITTED_METRICS: [Metric; 3] = [Metric::Area, Metric::Delay, Metric::Power];

pub fn calibrate(input: &CalibrationInput) -> Result<Calibration> {
    for p in &input.points {
        if !FITTED_METRICS.contains(&p.metric) {
            return Err(Error::UnsupportedPoints { metric: p.metric });
        }
    }
    for a in &input.anchors {
        if !FITTED_METRICS.contains(&a.metric) {
            return Err(Error::UnsupportedAnchor { metric: a.metric });
        }
        if !(a.factor.is_finite() && a.factor > 0.0) {
            return Err(Error::NonpositiveFactor { factor: a.factor });
        }
    }

    let mut source_fits = Vec::new();
    let mut refits = Vec::new();
    let mut trends: BTreeMap<Metric, RelativeTrend> = BTreeMap::new();

    for metric in FITTED_METRICS {
        let (estimate, n_sources) =
            estimate_table(metric, &input.points, &mut source_fits)?;
        let (pinned, seeded) = resolve_anchors(metric, &input.anchors, &estimate)?;
        let (values, refit) = refit_with_pins(metric, &pinned, &estimate)?;
        refits.push(refit);

        let points = TechNode::ALL
            .iter()
            .map(|&node| {
                let provenance = if node == TechNode::BASELINE {
                    Provenance::Anchor
                } else if seeded.contains(&node) {
                    Provenance::Fitted
                } else if pinned.contains_key(&node) {
                    Provenance::Anchor
                } else if n_sources >= 2 {
                    Provenance::Averaged
                } else {
                    Provenance::Fitted
                };
                (
                    node,
                    TrendPoint {
                        value: values[&node],
                        provenance,
                    },
                )
            })
            .collect();
        trends.insert(metric, RelativeTrend::new(metric, points)?);
    }

    let delay = trends.remove(&Metric::Delay).expect("built above");
    let power = trends.remove(&Metric::Power).expect("built above");
    let area = trends.remove(&Metric::Area).expect("built above");

    // energy is derived per node, not fitted
    let energy_points = TechNode::ALL
        .iter()
        .map(|&node| {
            let p = power.value(node).expect("full trend");
            let d = delay.value(node).expect("full trend");
            let provenance = if node == TechNode::BASELINE {
                Provenance::Anchor
            } else {
                Provenance::Fitted
            };
            (
                node,
                TrendPoint {
                    value: p * d,
                    provenance,
                },
            )
        })
        .collect();
    let energy = RelativeTrend::new(Metric::Energy, energy_points)?;

    let table = CalibratedTable::new(area, delay, power, energy)?;
    Ok(Calibration {
        table,
        source_fits,
        refits,
    })
}

/// Stages 1 and 2: per-source fits, then geometric-mean combination.
fn estimate_table(
    metric: Metric,
    points: &[DigitizedPoint],
    source_fits: &mut Vec<SourceFit>,
) -> Result<(BTreeMap<TechNode, f64>, usize)> {
    let mut by_source: BTreeMap<&str, Vec<DigitizedPoint>> = BTreeMap::new();
    for p in points {
        if p.metric == metric {
            by_source.entry(&p.source).or_default().push(p.clone());
        }
    }
    if by_source.is_empty() {
        return Err(Error::MissingPoints { metric });
    }
    let n_sources = by_source.len();

    let mut estimate: Option<BTreeMap<TechNode, f64>> = None;
    for (source, pts) in by_source {
        let baseline_nm = pts[0].baseline_nm;
        if pts.iter().any(|p| p.baseline_nm != baseline_nm) {
            return Err(Error::InconsistentBaseline {
                dataset: source.into(),
            });
        }
        let baseline = TechNode::from_nm(baseline_nm)?;
        let rebased = fit::rebaseline(&pts, baseline)?;
        let model = fit::fit_quadratic(&rebased)?;
        if !model.accepted() {
            return Err(Error::RejectedFit {
                r_squared: model.r_squared,
            });
        }
        // evaluate everywhere, renormalized so 130 nm is exactly 1.0
        let p0 = model.predict_log10(TechNode::BASELINE.gen_index());
        let table: BTreeMap<TechNode, f64> = TechNode::ALL
            .iter()
            .map(|&n| (n, math::exp10(model.predict_log10(n.gen_index()) - p0)))
            .collect();
        source_fits.push(SourceFit {
            source: source.into(),
            model,
        });
        estimate = Some(match estimate {
            None => table,
            Some(acc) => acc
                .into_iter()
                .map(|(n, v)| (n, math::sqrt(v * table[&n])))
                .collect(),
        });
    }
    Ok((estimate.expect("at least one source"), n_sources))
}

/// Stage 3: anchor resolution.
fn resolve_anchors(
    metric: Metric,
    anchors: &[AnchorConstraint],
    estimate: &BTreeMap<TechNode, f64>,
) -> Result<(BTreeMap<TechNode, f64>, BTreeSet<TechNode>)> {
    let mut pinned = BTreeMap::from([(TechNode::BASELINE, 1.0f64)]);
    let mut seeded = BTreeSet::new();
    let mut remaining: Vec<&AnchorConstraint> =
        anchors.iter().filter(|a| a.metric == metric).collect();

    while !remaining.is_empty() {
        let mut progressed = false;
        let mut i = 0;
        while i < remaining.len() {
            let a = remaining[i];
            match (pinned.get(&a.from).copied(), pinned.get(&a.to).copied()) {
                (Some(f), Some(t)) => {
                    let have = f / t;
                    if math::abs(have - a.factor) / a.factor > 0.005 {
                        return Err(Error::InfeasibleAnchors {
                            detail: format!(
                                "{metric} {} -> {}: pinned factor {have} vs anchor {}",
                                a.from, a.to, a.factor
                            ),
                        });
                    }
                    remaining.remove(i);
                    progressed = true;
                }
                (Some(f), None) => {
                    pinned.insert(a.to, f / a.factor);
                    remaining.remove(i);
                    progressed = true;
                }
                (None, Some(t)) => {
                    pinned.insert(a.from, t * a.factor);
                    remaining.remove(i);
                    progressed = true;
                }
                (None, None) => i += 1,
            }
        }
        if !progressed && !remaining.is_empty() {
            // no anchor touches a pinned node; seed from the estimate
            let node = remaining[0].from;
            pinned.insert(node, estimate[&node]);
            seeded.insert(node);
        }
    }
    Ok((pinned, seeded))
}

/// Stage 4: refit over pinned values plus estimates, pins kept exact.
fn refit_with_pins(
    metric: Metric,
    pinned: &BTreeMap<TechNode, f64>,
    estimate: &BTreeMap<TechNode, f64>,
) -> Result<(BTreeMap<TechNode, f64>, FitModel)> {
    let mut xs = Vec::with_capacity(TechNode::ALL.len());
    let mut ys = Vec::with_capacity(TechNode::ALL.len());
    for &node in &TechNode::ALL {
        let v = pinned.get(&node).copied().unwrap_or(estimate[&node]);
        xs.push(node.gen_index());
        ys.push(math::log10(v));
    }
    let (coeffs, r_squared, exact) = fit::fit_log_values(&xs, &ys, 2)?;
    if r_squared < fit::R2_ACCEPT {
        return Err(Error::RejectedFit { r_squared });
    }
    let model = FitModel {
        metric,
        c0: coeffs[0],
        c1: coeffs[1],
        c2: coeffs[2],
        r_squared,
        n_points: xs.len(),
        g_min: xs[0],
        g_max: xs[xs.len() - 1],
        exact,
    };
    let values = TechNode::ALL
        .iter()
        .map(|&node| {
            let v = match pinned.get(&node) {
                Some(&v) => v,
                None => math::exp10(model.predict_log10(node.gen_index())),
            };
            (node, v)
        })
        .collect();
    Ok((values, model))
}
