//! Float helpers.
//!
//! All transcendental math goes through libm so results do not depend on
//! the host's math library; the frozen table relies on that.

pub(crate) fn log10(x: f64) -> f64 {
    libm::log10(x)
}

pub(crate) fn exp10(x: f64) -> f64 {
    libm::exp10(x)
}

pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

/// Integer power by squaring. Keeps classical factors exactly
/// multiplicative for power-of-two ratios and deterministic everywhere.
pub(crate) fn powi(base: f64, exp: i32) -> f64 {
    if exp < 0 {
        return 1.0 / powi(base, -exp);
    }
    let mut acc = 1.0;
    let mut b = base;
    let mut e = exp as u32;
    while e > 0 {
        if e & 1 == 1 {
            acc *= b;
        }
        b *= b;
        e >>= 1;
    }
    acc
}
