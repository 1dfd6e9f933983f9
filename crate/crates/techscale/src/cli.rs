//! Command-line front end.
//!
//! Exit codes are a stable contract: 0 success, 1 usage error,
//! 2 unsupported node, 3 data or fit error.

use std::fs::File;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;

use techscale_core::analysis::{compare_reference, error_vs_classical_between};
use techscale_core::classical::{classical_exponent, classical_factor};
use techscale_core::fit::{fit_linear, fit_quadratic, DigitizedPoint, FitModel};
use techscale_core::{CalibratedTable, Error as CoreError, Measure, Metric, TechNode};

use crate::data;
use crate::format::{sig4, OutputFormat};
use crate::io::{self, IoError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Model(#[from] CoreError),

    #[error(transparent)]
    Data(#[from] IoError),

    #[error("cannot read {}: {source}", path.display())]
    File {
        path: PathBuf,
        source: std::io::Error,
    },
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "techscale",
    version = crate::version_string(),
    about = "Estimates CMOS technology-scaling factors between fabrication nodes (130 nm to 7 nm)",
    propagate_version = true
)]
pub struct Cli {
    /// Output format; plain rounds to 4 significant digits, json and csv
    /// carry full precision.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Plain)]
    pub format: OutputFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Scaling factor between two nodes (old value over new value).
    Factor {
        #[arg(long, value_parser = parse_metric)]
        metric: Metric,
        /// Source node in nm.
        #[arg(long)]
        from: f64,
        /// Target node in nm.
        #[arg(long)]
        to: f64,
    },

    /// Scale a measured value from one node to another.
    Scale {
        #[arg(long, value_parser = parse_metric)]
        metric: Metric,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        /// Value measured at the source node.
        #[arg(long)]
        value: f64,
        /// Unit label carried through unchanged.
        #[arg(long, default_value = "")]
        unit: String,
    },

    /// Dump the calibrated relative-trend table.
    Table {
        /// Restrict to one or more metrics (repeatable); default all four.
        #[arg(long = "metric", value_parser = parse_metric)]
        metrics: Vec<Metric>,
        /// Renormalize so this node reads 1.0.
        #[arg(long, default_value_t = 130.0)]
        baseline: f64,
    },

    /// Constant-field scaling factor between two nodes.
    Classical {
        #[arg(long, value_parser = parse_metric)]
        metric: Metric,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
    },

    /// Per-node deviation of the calibrated trends from constant-field
    /// scaling, in percent.
    Error {
        /// Restrict to one metric; default all four.
        #[arg(long, value_parser = parse_metric)]
        metric: Option<Metric>,
        /// Node both trends are rebased to before comparing.
        #[arg(long, default_value_t = 130.0)]
        baseline: f64,
    },

    /// Fit a log-domain polynomial to digitized points from a CSV file.
    Fit {
        /// CSV file with columns node_nm,metric,relative_value,source,baseline_nm.
        #[arg(long)]
        input: PathBuf,
        /// Restrict to one metric when the file mixes several.
        #[arg(long, value_parser = parse_metric)]
        metric: Option<Metric>,
        /// Polynomial degree in log space.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
        degree: u8,
    },

    /// Compare model reductions against reference data for one node step.
    Compare {
        /// Reference CSV; defaults to the embedded reference data.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
    },
}

fn parse_metric(name: &str) -> std::result::Result<Metric, String> {
    Metric::parse(name).map_err(|e| e.to_string())
}

/// Runs the CLI and returns the process exit code.
pub fn run() -> u8 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.exit_code() == 0 { 0 } else { 1 };
            let _ = err.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(output) => {
            print!("{output}");
            0
        }
        Err(err) => {
            eprintln!("error: {err}");
            if let CliError::Model(CoreError::UnsupportedNode { .. }) = err {
                eprintln!("supported nodes: {}", supported_nodes());
                2
            } else {
                3
            }
        }
    }
}

fn supported_nodes() -> String {
    let nms: Vec<String> = TechNode::ALL
        .iter()
        .map(|n| format!("{}", n.feature_nm()))
        .collect();
    format!("{} (nm)", nms.join(", "))
}

fn node(nm: f64) -> Result<TechNode> {
    Ok(TechNode::from_nm(nm)?)
}

fn execute(cli: &Cli) -> Result<String> {
    let fmt = cli.format;
    match &cli.command {
        Command::Factor { metric, from, to } => {
            cmd_factor(*metric, node(*from)?, node(*to)?, fmt)
        }
        Command::Scale {
            metric,
            from,
            to,
            value,
            unit,
        } => cmd_scale(*metric, node(*from)?, node(*to)?, *value, unit, fmt),
        Command::Table { metrics, baseline } => cmd_table(metrics, node(*baseline)?, fmt),
        Command::Classical { metric, from, to } => {
            cmd_classical(*metric, node(*from)?, node(*to)?, fmt)
        }
        Command::Error { metric, baseline } => {
            cmd_error(*metric, node(*baseline)?, fmt)
        }
        Command::Fit {
            input,
            metric,
            degree,
        } => cmd_fit(input, *metric, *degree, fmt),
        Command::Compare { input, from, to } => {
            cmd_compare(input.as_deref(), node(*from)?, node(*to)?, fmt)
        }
    }
}

fn csv_block(rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.write_record(&row).map_err(IoError::from)?;
    }
    let bytes = w.into_inner().expect("csv writer into_inner");
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn strs(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn cmd_factor(
    metric: Metric,
    from: TechNode,
    to: TechNode,
    fmt: OutputFormat,
) -> Result<String> {
    let table = CalibratedTable::shipped();
    let factor = table.scaling_factor(metric, from, to)?;
    Ok(match fmt {
        OutputFormat::Plain => format!("{}\n", sig4(factor.factor)),
        OutputFormat::Json => pretty(&json!({
            "metric": metric.name(),
            "from_nm": from.feature_nm(),
            "to_nm": to.feature_nm(),
            "factor": factor.factor,
        })),
        OutputFormat::Csv => csv_block(vec![
            strs(&["metric", "from_nm", "to_nm", "factor"]),
            vec![
                metric.name().to_string(),
                from.feature_nm().to_string(),
                to.feature_nm().to_string(),
                factor.factor.to_string(),
            ],
        ])?,
    })
}

fn cmd_scale(
    metric: Metric,
    from: TechNode,
    to: TechNode,
    value: f64,
    unit: &str,
    fmt: OutputFormat,
) -> Result<String> {
    let table = CalibratedTable::shipped();
    let measure = Measure {
        value,
        unit: unit.to_string(),
        metric,
        node: from,
    };
    let scaled = table.scale_value(&measure, to)?;
    Ok(match fmt {
        OutputFormat::Plain => format!("{}\n", sig4(scaled.value)),
        OutputFormat::Json => pretty(&json!({
            "metric": metric.name(),
            "from_nm": from.feature_nm(),
            "to_nm": to.feature_nm(),
            "unit": unit,
            "input_value": value,
            "scaled_value": scaled.value,
        })),
        OutputFormat::Csv => csv_block(vec![
            strs(&[
                "metric",
                "from_nm",
                "to_nm",
                "unit",
                "input_value",
                "scaled_value",
            ]),
            vec![
                metric.name().to_string(),
                from.feature_nm().to_string(),
                to.feature_nm().to_string(),
                unit.to_string(),
                value.to_string(),
                scaled.value.to_string(),
            ],
        ])?,
    })
}

fn cmd_table(metrics: &[Metric], baseline: TechNode, fmt: OutputFormat) -> Result<String> {
    let table = CalibratedTable::shipped();
    let selected: Vec<Metric> = if metrics.is_empty() {
        Metric::PRIMARY.to_vec()
    } else {
        metrics.to_vec()
    };
    // row tuples: metric, node, renormalized value, provenance
    let mut rows = Vec::new();
    for &metric in &selected {
        let trend = table.trend(metric)?;
        let base = trend
            .value(baseline)
            .ok_or(CoreError::UnsupportedNode {
                nm: baseline.feature_nm(),
            })?;
        for (node, point) in trend.iter() {
            rows.push((metric, node, point.value / base, point.provenance));
        }
    }
    Ok(match fmt {
        OutputFormat::Plain => {
            let mut out = String::from("metric  node_nm  relative_value  provenance\n");
            for (metric, node, value, prov) in rows {
                out.push_str(&format!(
                    "{:<6}  {:>7}  {:>14}  {}\n",
                    metric.name(),
                    node.feature_nm(),
                    sig4(value),
                    prov.name()
                ));
            }
            out
        }
        OutputFormat::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|(metric, node, value, prov)| {
                    json!({
                        "metric": metric.name(),
                        "node_nm": node.feature_nm(),
                        "relative_value": value,
                        "provenance": prov.name(),
                    })
                })
                .collect();
            pretty(&json!({
                "baseline_nm": baseline.feature_nm(),
                "rows": rows,
            }))
        }
        OutputFormat::Csv => {
            let mut out = vec![strs(&["metric", "node_nm", "relative_value", "provenance"])];
            for (metric, node, value, prov) in rows {
                out.push(vec![
                    metric.name().to_string(),
                    node.feature_nm().to_string(),
                    value.to_string(),
                    prov.name().to_string(),
                ]);
            }
            csv_block(out)?
        }
    })
}

fn cmd_classical(
    metric: Metric,
    from: TechNode,
    to: TechNode,
    fmt: OutputFormat,
) -> Result<String> {
    let factor = classical_factor(metric, from, to);
    Ok(match fmt {
        OutputFormat::Plain => format!("{}\n", sig4(factor)),
        OutputFormat::Json => pretty(&json!({
            "metric": metric.name(),
            "from_nm": from.feature_nm(),
            "to_nm": to.feature_nm(),
            "factor": factor,
            "exponent": classical_exponent(metric),
        })),
        OutputFormat::Csv => csv_block(vec![
            strs(&["metric", "from_nm", "to_nm", "factor", "exponent"]),
            vec![
                metric.name().to_string(),
                from.feature_nm().to_string(),
                to.feature_nm().to_string(),
                factor.to_string(),
                classical_exponent(metric).to_string(),
            ],
        ])?,
    })
}

fn cmd_error(metric: Option<Metric>, baseline: TechNode, fmt: OutputFormat) -> Result<String> {
    let table = CalibratedTable::shipped();
    let selected: Vec<Metric> = match metric {
        Some(m) => vec![m],
        None => Metric::PRIMARY.to_vec(),
    };
    let mut rows = Vec::new();
    for &metric in &selected {
        for node in TechNode::ALL {
            let pct = error_vs_classical_between(&table, metric, baseline, node)?;
            rows.push((metric, node, pct));
        }
    }
    Ok(match fmt {
        OutputFormat::Plain => {
            let mut out = String::from("metric  node_nm  error_pct\n");
            for (metric, node, pct) in rows {
                out.push_str(&format!(
                    "{:<6}  {:>7}  {:>9}\n",
                    metric.name(),
                    node.feature_nm(),
                    sig4(pct)
                ));
            }
            out
        }
        OutputFormat::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|(metric, node, pct)| {
                    json!({
                        "metric": metric.name(),
                        "node_nm": node.feature_nm(),
                        "error_pct": pct,
                    })
                })
                .collect();
            pretty(&json!({
                "baseline_nm": baseline.feature_nm(),
                "rows": rows,
            }))
        }
        OutputFormat::Csv => {
            let mut out = vec![strs(&["metric", "node_nm", "error_pct"])];
            for (metric, node, pct) in rows {
                out.push(vec![
                    metric.name().to_string(),
                    node.feature_nm().to_string(),
                    pct.to_string(),
                ]);
            }
            csv_block(out)?
        }
    })
}

fn open_points(path: &Path) -> Result<Vec<DigitizedPoint>> {
    let file = File::open(path).map_err(|source| CliError::File {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(io::read_points(file)?)
}

fn cmd_fit(
    input: &Path,
    metric: Option<Metric>,
    degree: u8,
    fmt: OutputFormat,
) -> Result<String> {
    let mut points = open_points(input)?;
    if let Some(m) = metric {
        points.retain(|p| p.metric == m);
        if points.is_empty() {
            return Err(CoreError::MissingPoints { metric: m }.into());
        }
    }
    let model: FitModel = match degree {
        1 => fit_linear(&points)?,
        _ => fit_quadratic(&points)?,
    };
    let evals: Vec<_> = TechNode::ALL
        .iter()
        .map(|&n| (n, model.evaluate_unvalidated(n)))
        .collect();
    if evals.iter().any(|(_, e)| e.extrapolated) {
        eprintln!("warning: values at nodes outside the fitted range are extrapolated");
    }
    Ok(match fmt {
        OutputFormat::Plain => {
            let mut out = format!(
                "metric: {}\ndegree: {}\nn_points: {}\nc0: {}\nc1: {}\nc2: {}\nr_squared: {}\naccepted: {}\n",
                model.metric.name(),
                degree,
                model.n_points,
                sig4(model.c0),
                sig4(model.c1),
                sig4(model.c2),
                sig4(model.r_squared),
                model.accepted(),
            );
            out.push_str("node_nm  relative_value  extrapolated\n");
            for (node, eval) in &evals {
                out.push_str(&format!(
                    "{:>7}  {:>14}  {}\n",
                    node.feature_nm(),
                    sig4(eval.value),
                    eval.extrapolated
                ));
            }
            out
        }
        OutputFormat::Json => {
            let evaluations: Vec<_> = evals
                .iter()
                .map(|(node, eval)| {
                    json!({
                        "node_nm": node.feature_nm(),
                        "relative_value": eval.value,
                        "extrapolated": eval.extrapolated,
                    })
                })
                .collect();
            pretty(&json!({
                "metric": model.metric.name(),
                "degree": degree,
                "n_points": model.n_points,
                "c0": model.c0,
                "c1": model.c1,
                "c2": model.c2,
                "r_squared": model.r_squared,
                "fitted_range": [model.g_min, model.g_max],
                "accepted": model.accepted(),
                "exact": model.exact,
                "evaluations": evaluations,
            }))
        }
        OutputFormat::Csv => {
            let header = format!(
                "# metric={} degree={} n_points={} c0={} c1={} c2={} r_squared={} accepted={}\n",
                model.metric.name(),
                degree,
                model.n_points,
                model.c0,
                model.c1,
                model.c2,
                model.r_squared,
                model.accepted(),
            );
            let mut out = vec![strs(&["node_nm", "relative_value", "extrapolated"])];
            for (node, eval) in &evals {
                out.push(vec![
                    node.feature_nm().to_string(),
                    eval.value.to_string(),
                    eval.extrapolated.to_string(),
                ]);
            }
            format!("{header}{}", csv_block(out)?)
        }
    })
}

fn cmd_compare(
    input: Option<&Path>,
    from: TechNode,
    to: TechNode,
    fmt: OutputFormat,
) -> Result<String> {
    let table = CalibratedTable::shipped();
    let entries = match input {
        Some(path) => {
            let file = File::open(path).map_err(|source| CliError::File {
                path: path.to_path_buf(),
                source,
            })?;
            io::read_reference(file)?
        }
        None => data::shipped_reference_entries()?,
    };
    let reports = compare_reference(&table, &entries, from, to)?;
    Ok(match fmt {
        OutputFormat::Plain => {
            let mut out =
                String::from("source    metric  model_pct  reference       error_points\n");
            for r in &reports {
                let reference = if r.reference_lo == r.reference_hi {
                    sig4(r.reference_lo)
                } else {
                    format!("{}..{}", sig4(r.reference_lo), sig4(r.reference_hi))
                };
                out.push_str(&format!(
                    "{:<8}  {:<6}  {:>9}  {:<14}  {}\n",
                    r.source,
                    r.metric.name(),
                    sig4(r.model_reduction_pct),
                    reference,
                    sig4(r.error_points)
                ));
            }
            out
        }
        OutputFormat::Json => {
            let rows: Vec<_> = reports
                .iter()
                .map(|r| {
                    json!({
                        "source": r.source,
                        "metric": r.metric.name(),
                        "from_nm": r.from.feature_nm(),
                        "to_nm": r.to.feature_nm(),
                        "model_reduction_pct": r.model_reduction_pct,
                        "reference_lo": r.reference_lo,
                        "reference_hi": r.reference_hi,
                        "error_points": r.error_points,
                    })
                })
                .collect();
            pretty(&serde_json::Value::Array(rows))
        }
        OutputFormat::Csv => {
            let mut out = vec![strs(&[
                "source",
                "metric",
                "from_nm",
                "to_nm",
                "model_reduction_pct",
                "reference_lo",
                "reference_hi",
                "error_points",
            ])];
            for r in &reports {
                out.push(vec![
                    r.source.clone(),
                    r.metric.name().to_string(),
                    r.from.feature_nm().to_string(),
                    r.to.feature_nm().to_string(),
                    r.model_reduction_pct.to_string(),
                    r.reference_lo.to_string(),
                    r.reference_hi.to_string(),
                    r.error_points.to_string(),
                ]);
            }
            csv_block(out)?
        }
    })
}

fn pretty(value: &serde_json::Value) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("json serialization");
    out.push('\n');
    out
}
