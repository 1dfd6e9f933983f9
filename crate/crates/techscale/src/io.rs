//! CSV readers and writers for calibration inputs, reference data, and the
//! calibrated table.
//!
//! All readers skip `#` comment lines and trim whitespace. Columns are
//! matched by header name, not position.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::Deserialize;

use techscale_core::analysis::ReferenceEntry;
use techscale_core::calibrate::AnchorConstraint;
use techscale_core::fit::DigitizedPoint;
use techscale_core::trend::{Provenance, RelativeTrend, TrendPoint};
use techscale_core::{CalibratedTable, Metric, TechNode, DATA_VERSION};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Model(#[from] techscale_core::Error),

    #[error("unknown provenance: {0}")]
    UnknownProvenance(String),
}

pub type Result<T> = std::result::Result<T, IoError>;

fn reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(input)
}

#[derive(Deserialize)]
struct PointRow {
    node_nm: f64,
    metric: String,
    relative_value: f64,
    source: String,
    baseline_nm: f64,
}

/// Reads digitized calibration points
/// (`node_nm,metric,relative_value,source,baseline_nm`).
pub fn read_points<R: Read>(input: R) -> Result<Vec<DigitizedPoint>> {
    let mut out = Vec::new();
    for row in reader(input).deserialize::<PointRow>() {
        let row = row?;
        out.push(DigitizedPoint {
            node_nm: row.node_nm,
            metric: Metric::parse(&row.metric)?,
            relative_value: row.relative_value,
            source: row.source,
            baseline_nm: row.baseline_nm,
        });
    }
    Ok(out)
}

#[derive(Deserialize)]
struct AnchorRow {
    metric: String,
    from_nm: f64,
    to_nm: f64,
    factor: f64,
}

/// Reads published factor constraints (`metric,from_nm,to_nm,factor`).
pub fn read_anchors<R: Read>(input: R) -> Result<Vec<AnchorConstraint>> {
    let mut out = Vec::new();
    for row in reader(input).deserialize::<AnchorRow>() {
        let row = row?;
        out.push(AnchorConstraint {
            metric: Metric::parse(&row.metric)?,
            from: TechNode::from_nm(row.from_nm)?,
            to: TechNode::from_nm(row.to_nm)?,
            factor: row.factor,
        });
    }
    Ok(out)
}

#[derive(Deserialize)]
struct ReferenceRow {
    source: String,
    metric: String,
    from_nm: f64,
    to_nm: f64,
    reduction_lo: f64,
    reduction_hi: f64,
}

/// Reads reference reductions
/// (`source,metric,from_nm,to_nm,reduction_lo,reduction_hi`).
pub fn read_reference<R: Read>(input: R) -> Result<Vec<ReferenceEntry>> {
    let mut out = Vec::new();
    for row in reader(input).deserialize::<ReferenceRow>() {
        let row = row?;
        out.push(ReferenceEntry {
            source: row.source,
            metric: Metric::parse(&row.metric)?,
            from: TechNode::from_nm(row.from_nm)?,
            to: TechNode::from_nm(row.to_nm)?,
            reduction_lo: row.reduction_lo,
            reduction_hi: row.reduction_hi,
        });
    }
    Ok(out)
}

#[derive(Deserialize)]
struct TableRow {
    metric: String,
    node_nm: f64,
    relative_value: f64,
    provenance: String,
}

/// Reads a calibrated table (`metric,node_nm,relative_value,provenance`).
pub fn read_table<R: Read>(input: R) -> Result<CalibratedTable> {
    let mut trends: BTreeMap<Metric, BTreeMap<TechNode, TrendPoint>> = BTreeMap::new();
    for row in reader(input).deserialize::<TableRow>() {
        let row = row?;
        let metric = Metric::parse(&row.metric)?;
        let node = TechNode::from_nm(row.node_nm)?;
        let provenance = Provenance::parse(&row.provenance)
            .ok_or_else(|| IoError::UnknownProvenance(row.provenance.clone()))?;
        trends.entry(metric).or_default().insert(
            node,
            TrendPoint {
                value: row.relative_value,
                provenance,
            },
        );
    }
    let mut trend = |metric: Metric| -> Result<RelativeTrend> {
        let points = trends.remove(&metric).unwrap_or_default();
        Ok(RelativeTrend::new(metric, points)?)
    };
    let area = trend(Metric::Area)?;
    let delay = trend(Metric::Delay)?;
    let power = trend(Metric::Power)?;
    let energy = trend(Metric::Energy)?;
    Ok(CalibratedTable::new(area, delay, power, energy)?)
}

/// Writes a calibrated table with full-precision values. The written file
/// parses back bit-identically through [`read_table`].
pub fn write_table<W: Write>(mut output: W, table: &CalibratedTable) -> Result<()> {
    writeln!(
        output,
        "# Calibrated relative scaling table, data version {DATA_VERSION}."
    )?;
    writeln!(
        output,
        "# Values are relative to the 130 nm baseline; regenerated by the freeze example."
    )?;
    let mut w = csv::Writer::from_writer(output);
    w.write_record(["metric", "node_nm", "relative_value", "provenance"])?;
    for trend in table.trends() {
        for (node, point) in trend.iter() {
            let nm = format!("{}", node.feature_nm());
            let value = format!("{}", point.value);
            w.write_record([
                trend.metric().name(),
                nm.as_str(),
                value.as_str(),
                point.provenance.name(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}
