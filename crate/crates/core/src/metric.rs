//! Metric kinds and their classification.

use core::fmt;

use alloc::string::ToString;

use crate::error::{Error, Result};

/// A scalable quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Metric {
    Area,
    Delay,
    Power,
    Energy,
    Edp,
    Throughput,
    PowerDensity,
    ThroughputPerArea,
    Dimension,
    Doping,
    Voltage,
    Current,
    Capacitance,
}

/// How a metric's calibrated factor is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricClass {
    /// Carried directly by the calibrated trend table.
    Primary,
    /// Composed from primary factors.
    Derived,
    /// Only defined under classical constant-field scaling.
    ClassicalOnly,
}

impl Metric {
    /// Every metric kind.
    pub const ALL: [Metric; 13] = [
        Metric::Area,
        Metric::Delay,
        Metric::Power,
        Metric::Energy,
        Metric::Edp,
        Metric::Throughput,
        Metric::PowerDensity,
        Metric::ThroughputPerArea,
        Metric::Dimension,
        Metric::Doping,
        Metric::Voltage,
        Metric::Current,
        Metric::Capacitance,
    ];

    /// The four metrics stored in the calibrated table.
    pub const PRIMARY: [Metric; 4] =
        [Metric::Area, Metric::Delay, Metric::Power, Metric::Energy];

    pub fn class(self) -> MetricClass {
        match self {
            Metric::Area | Metric::Delay | Metric::Power | Metric::Energy => {
                MetricClass::Primary
            }
            Metric::Edp
            | Metric::Throughput
            | Metric::PowerDensity
            | Metric::ThroughputPerArea => MetricClass::Derived,
            Metric::Dimension
            | Metric::Doping
            | Metric::Voltage
            | Metric::Current
            | Metric::Capacitance => MetricClass::ClassicalOnly,
        }
    }

    /// Canonical lowercase name, as used in file formats and the CLI.
    pub fn name(self) -> &'static str {
        match self {
            Metric::Area => "area",
            Metric::Delay => "delay",
            Metric::Power => "power",
            Metric::Energy => "energy",
            Metric::Edp => "edp",
            Metric::Throughput => "throughput",
            Metric::PowerDensity => "power-density",
            Metric::ThroughputPerArea => "throughput-per-area",
            Metric::Dimension => "dimension",
            Metric::Doping => "doping",
            Metric::Voltage => "voltage",
            Metric::Current => "current",
            Metric::Capacitance => "capacitance",
        }
    }

    /// Parses a metric name. Case-insensitive; accepts `_` for `-`.
    pub fn parse(name: &str) -> Result<Metric> {
        let mut key = name.to_string();
        key.make_ascii_lowercase();
        let key = key.replace('_', "-");
        Metric::ALL
            .iter()
            .copied()
            .find(|m| m.name() == key)
            .ok_or(Error::UnknownMetric {
                name: name.to_string(),
            })
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
