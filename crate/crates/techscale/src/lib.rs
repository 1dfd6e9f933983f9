//! Standard-library companion to [`techscale_core`]: CSV formats, the
//! embedded calibration data, and the command-line front end.

pub mod cli;
pub mod data;
pub mod format;
pub mod io;

pub use techscale_core::*;

/// Binary version plus the data version of the embedded table.
pub fn version_string() -> String {
    format!("{} (table {})", env!("CARGO_PKG_VERSION"), DATA_VERSION)
}
