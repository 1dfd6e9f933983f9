//! Quadratic trend fitting in log space.
//!
//! Scaling data is close to exponential in the generation index, so fits
//! run on log10 of the relative values against `gen_index`. A fit is
//! accepted when its coefficient of determination (also computed in log
//! space) reaches [`R2_ACCEPT`].

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::metric::Metric;
use crate::node::TechNode;
use crate::trend::{Provenance, RelativeTrend, TrendPoint};

/// Acceptance gate for the coefficient of determination.
pub const R2_ACCEPT: f64 = 0.99;

/// One digitized estimate: a relative value for `metric` at `node_nm`,
/// read off a published trend by `source`, relative to `baseline_nm`.
#[derive(Debug, Clone, PartialEq)]
pub struct DigitizedPoint {
    pub node_nm: f64,
    pub metric: Metric,
    pub relative_value: f64,
    pub source: String,
    pub baseline_nm: f64,
}

/// A fitted quadratic in (gen_index, log10 relative value).
#[derive(Debug, Clone, PartialEq)]
pub struct FitModel {
    pub metric: Metric,
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    /// Coefficient of determination in log space.
    pub r_squared: f64,
    pub n_points: usize,
    /// Fitted gen_index range; evaluation outside it extrapolates.
    pub g_min: f64,
    pub g_max: f64,
    /// True when the point count equals the coefficient count, so the
    /// curve passes through every point and the fit quality is unchecked.
    pub exact: bool,
}

/// Result of evaluating a model at a node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub extrapolated: bool,
}

impl FitModel {
    pub fn accepted(&self) -> bool {
        self.r_squared >= R2_ACCEPT
    }

    /// Model value in log10 space at generation index `g`.
    pub fn predict_log10(&self, g: f64) -> f64 {
        self.c0 + g * (self.c1 + g * self.c2)
    }

    /// Evaluates an accepted model at a node.
    pub fn evaluate(&self, node: TechNode) -> Result<Evaluation> {
        if !self.accepted() {
            return Err(Error::RejectedFit {
                r_squared: self.r_squared,
            });
        }
        Ok(self.evaluate_unvalidated(node))
    }

    /// Evaluates without the acceptance gate.
    pub fn evaluate_unvalidated(&self, node: TechNode) -> Evaluation {
        let g = node.gen_index();
        Evaluation {
            value: math::exp10(self.predict_log10(g)),
            extrapolated: g < self.g_min || g > self.g_max,
        }
    }
}

/// Fits a quadratic to points for one metric.
pub fn fit_quadratic(points: &[DigitizedPoint]) -> Result<FitModel> {
    fit_polynomial(points, 2)
}

/// Fits a straight line; reported with `c2 = 0`.
pub fn fit_linear(points: &[DigitizedPoint]) -> Result<FitModel> {
    fit_polynomial(points, 1)
}

fn fit_polynomial(points: &[DigitizedPoint], degree: usize) -> Result<FitModel> {
    let metric = match points.first() {
        Some(p) => p.metric,
        None => {
            return Err(Error::InsufficientPoints {
                needed: degree + 1,
                got: 0,
            })
        }
    };
    let mut xs = Vec::with_capacity(points.len());
    let mut ys = Vec::with_capacity(points.len());
    for p in points {
        if p.metric != metric {
            return Err(Error::MetricMismatch);
        }
        if !(p.relative_value.is_finite() && p.relative_value > 0.0) {
            return Err(Error::NonpositiveValue {
                value: p.relative_value,
            });
        }
        xs.push(TechNode::from_nm(p.node_nm)?.gen_index());
        ys.push(math::log10(p.relative_value));
    }
    let (coeffs, r_squared, exact) = fit_log_values(&xs, &ys, degree)?;
    let mut g_min = xs[0];
    let mut g_max = xs[0];
    for &x in &xs[1..] {
        g_min = g_min.min(x);
        g_max = g_max.max(x);
    }
    Ok(FitModel {
        metric,
        c0: coeffs[0],
        c1: coeffs[1],
        c2: if degree >= 2 { coeffs[2] } else { 0.0 },
        r_squared,
        n_points: points.len(),
        g_min,
        g_max,
        exact,
    })
}

/// Least-squares polynomial fit on prepared (gen_index, log10 value)
/// pairs via the normal equations. Used for both digitized sources and
/// the calibration refit so every fit shares one numeric path.
pub(crate) fn fit_log_values(
    xs: &[f64],
    ys: &[f64],
    degree: usize,
) -> Result<(Vec<f64>, f64, bool)> {
    let needed = degree + 1;
    let mut distinct: Vec<f64> = xs.to_vec();
    distinct.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite gen index"));
    distinct.dedup();
    if distinct.len() < needed {
        return Err(Error::InsufficientPoints {
            needed,
            got: distinct.len(),
        });
    }

    // moments[k] = sum x^k, rhs[i] = sum x^i * y
    let mut moments = [0.0f64; 5];
    let mut rhs = [0.0f64; 3];
    for (&x, &y) in xs.iter().zip(ys) {
        let mut pow = 1.0;
        for k in 0..=2 * degree {
            moments[k] += pow;
            if k <= degree {
                rhs[k] += pow * y;
            }
            pow *= x;
        }
    }
    let n = needed;
    let mut m = [[0.0f64; 4]; 3];
    for i in 0..n {
        m[i][..n].copy_from_slice(&moments[i..n + i]);
        m[i][n] = rhs[i];
    }
    let coeffs = solve(&mut m, n)?;

    let mut ss_res = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        let mut pred = coeffs[n - 1];
        for i in (0..n - 1).rev() {
            pred = coeffs[i] + x * pred;
        }
        ss_res += (y - pred) * (y - pred);
    }
    let mean = moments_mean(ys);
    let mut ss_tot = 0.0;
    for &y in ys {
        ss_tot += (y - mean) * (y - mean);
    }
    let exact = xs.len() == needed;
    let r_squared = if ss_tot == 0.0 {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };
    Ok((coeffs, r_squared, exact))
}

fn moments_mean(ys: &[f64]) -> f64 {
    let mut t = 0.0;
    for &y in ys {
        t += y;
    }
    t / ys.len() as f64
}

/// Gaussian elimination with partial pivoting on an n x (n+1) system.
fn solve(m: &mut [[f64; 4]; 3], n: usize) -> Result<Vec<f64>> {
    for col in 0..n {
        let mut piv = col;
        for r in col + 1..n {
            if math::abs(m[r][col]) > math::abs(m[piv][col]) {
                piv = r;
            }
        }
        m.swap(col, piv);
        if math::abs(m[col][col]) < 1e-12 {
            return Err(Error::DegenerateFit);
        }
        let pivot = m[col];
        for row in m.iter_mut().take(n).skip(col + 1) {
            let f = row[col] / pivot[col];
            for (cell, &p) in row[col..=n].iter_mut().zip(&pivot[col..=n]) {
                *cell -= f * p;
            }
        }
    }
    let mut x = alloc::vec![0.0f64; n];
    for i in (0..n).rev() {
        let mut acc = m[i][n];
        for j in i + 1..n {
            acc -= m[i][j] * x[j];
        }
        x[i] = acc / m[i][i];
    }
    Ok(x)
}

/// Re-expresses every (metric, source) group relative to `baseline`.
///
/// Each group must contain a datum at the new baseline; all its values
/// divide by that datum. Point order is preserved.
pub fn rebaseline(
    points: &[DigitizedPoint],
    baseline: TechNode,
) -> Result<Vec<DigitizedPoint>> {
    use alloc::collections::BTreeMap;
    let nm = baseline.feature_nm();
    let mut divisors: BTreeMap<(Metric, &str), f64> = BTreeMap::new();
    for p in points {
        if p.node_nm == nm {
            if !(p.relative_value.is_finite() && p.relative_value > 0.0) {
                return Err(Error::NonpositiveValue {
                    value: p.relative_value,
                });
            }
            divisors.entry((p.metric, &p.source)).or_insert(p.relative_value);
        }
    }
    points
        .iter()
        .map(|p| {
            let divisor = divisors.get(&(p.metric, p.source.as_str())).ok_or_else(
                || Error::MissingBaseline {
                    dataset: p.source.clone(),
                    baseline_nm: nm,
                },
            )?;
            Ok(DigitizedPoint {
                relative_value: p.relative_value / divisor,
                baseline_nm: nm,
                ..p.clone()
            })
        })
        .collect()
}

/// Combines two tables for the same metric by per-node geometric mean.
/// Every resulting point is tagged averaged.
pub fn average_tables(a: &RelativeTrend, b: &RelativeTrend) -> Result<RelativeTrend> {
    if a.metric() != b.metric() {
        return Err(Error::MetricMismatch);
    }
    if a.len() != b.len() || a.iter().zip(b.iter()).any(|((na, _), (nb, _))| na != nb)
    {
        return Err(Error::NodeSetMismatch);
    }
    let points = a
        .iter()
        .map(|(node, pa)| {
            let vb = b.value(node).expect("node sets match");
            (
                node,
                TrendPoint {
                    value: math::sqrt(pa.value * vb),
                    provenance: Provenance::Averaged,
                },
            )
        })
        .collect();
    RelativeTrend::new(a.metric(), points)
}
