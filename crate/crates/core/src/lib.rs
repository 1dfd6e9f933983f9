//! Silicon-calibrated CMOS technology scaling model.
//!
//! Estimates how area, delay, power and energy scale between fabrication
//! nodes from 130 nm down to 7 nm. The shipped trend table is calibrated
//! against published silicon data rather than classical constant-field
//! scaling, which stopped tracking real silicon somewhere below 65 nm.
//!
//! A scaling factor is always `old / new`, so a value measured at the
//! current node divides by the factor to estimate it at the target node.
//! Factors above 1 mean the quantity shrinks.
//!
//! The crate is `no_std` (with `alloc`) so the model can run anywhere;
//! file formats and the command line tool live in the companion
//! `techscale` crate.

#![no_std]

extern crate alloc;

pub mod analysis;
pub mod calibrate;
pub mod classical;
pub mod error;
pub mod fit;
mod math;
pub mod metric;
pub mod node;
pub mod query;
pub mod table;
pub mod trend;

pub use error::{Error, Result};
pub use metric::{Metric, MetricClass};
pub use node::TechNode;
pub use query::{Measure, ScalingFactor};
pub use table::{CalibratedTable, DATA_VERSION};
pub use trend::{Provenance, RelativeTrend, TrendPoint};
