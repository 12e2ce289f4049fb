//! Thin wrappers over `libm` so float math reads naturally without `std`.

use core::f64::consts::TAU;

#[inline]
pub(crate) fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}

#[inline]
pub(crate) fn asin(x: f64) -> f64 {
    libm::asin(x)
}

#[inline]
pub(crate) fn hypot(x: f64, y: f64) -> f64 {
    libm::hypot(x, y)
}

#[inline]
pub(crate) fn round(x: f64) -> f64 {
    libm::round(x)
}

/// Representative of `angle` in `[0, 2π)`.
pub(crate) fn wrap_tau(angle: f64) -> f64 {
    let r = libm::fmod(angle, TAU);
    let r = if r < 0.0 { r + TAU } else { r };
    // fmod of a tiny negative number can round up to exactly TAU
    if r >= TAU {
        0.0
    } else {
        r
    }
}
