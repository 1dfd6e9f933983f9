//! Output formatting shared by the CLI subcommands.

use clap::ValueEnum;

/// How results are printed on stdout. Plain output rounds to four
/// significant digits; json and csv carry full precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Plain,
    Json,
    Csv,
}

/// Four significant digits in plain positional notation.
pub fn sig4(value: f64) -> String {
    if !value.is_finite() {
        return format!("{value}");
    }
    if value == 0.0 {
        return "0.000".to_string();
    }
    let magnitude = value.abs().log10().floor() as i32;
    let decimals = (3 - magnitude).max(0) as usize;
    format!("{value:.decimals$}")
}
