//! Calibration inputs and reference data shipped inside the binary.
//!
//! The files under `data/` are the single source for both the library and
//! the CLI; they are embedded at compile time so the binary runs without
//! any filesystem layout around it.

use techscale_core::analysis::ReferenceEntry;
use techscale_core::calibrate::CalibrationInput;
use techscale_core::CalibratedTable;

use crate::io::{self, Result};

/// Digitized per-source trend estimates, relative to each source's own
/// baseline node.
pub const CALIBRATION_POINTS_CSV: &str = include_str!("../data/calibration_points.csv");

/// Published factor constraints the calibrated table reproduces exactly.
pub const ANCHORS_CSV: &str = include_str!("../data/anchors.csv");

/// Externally reported 10 nm to 7 nm reductions for comparison.
pub const REFERENCE_REDUCTIONS_CSV: &str =
    include_str!("../data/reference_reductions.csv");

/// The frozen calibrated table, as written by the freeze example.
pub const CALIBRATED_TABLE_CSV: &str = include_str!("../data/calibrated_table.csv");

/// The embedded calibration input: digitized points plus anchors.
pub fn shipped_input() -> Result<CalibrationInput> {
    Ok(CalibrationInput {
        points: io::read_points(CALIBRATION_POINTS_CSV.as_bytes())?,
        anchors: io::read_anchors(ANCHORS_CSV.as_bytes())?,
    })
}

/// The embedded reference reductions.
pub fn shipped_reference_entries() -> Result<Vec<ReferenceEntry>> {
    io::read_reference(REFERENCE_REDUCTIONS_CSV.as_bytes())
}

/// The embedded table file, parsed. Matches `CalibratedTable::shipped()`
/// bit for bit; the constants exist so the core crate needs no parser.
pub fn shipped_table_from_csv() -> Result<CalibratedTable> {
    io::read_table(CALIBRATED_TABLE_CSV.as_bytes())
}
