//! Float helpers backed by `libm` so std and no_std builds round identically.

pub(crate) const TAU: f64 = core::f64::consts::TAU;

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub(crate) fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}

#[inline]
pub(crate) fn powf(x: f64, p: f64) -> f64 {
    libm::pow(x, p)
}

#[inline]
pub(crate) fn hypot(x: f64, y: f64) -> f64 {
    libm::hypot(x, y)
}

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

#[inline]
pub(crate) fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[inline]
pub(crate) fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}

#[inline]
pub(crate) fn round(x: f64) -> f64 {
    libm::round(x)
}

/// Reduces an angle to `[0, 2π)`.
#[inline]
pub(crate) fn wrap_angle(theta: f64) -> f64 {
    let mut t = theta - TAU * floor(theta / TAU);
    if t >= TAU {
        t -= TAU;
    }
    if t < 0.0 {
        t = 0.0;
    }
    t
}
