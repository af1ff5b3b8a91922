//! Gamma function helpers.
//!
//! `Γ` itself comes from `libm`; the reciprocal is built on top of it so that
//! the poles at the nonpositive integers turn into exact zeros.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Largest argument for which `tgamma` stays finite.
const TGAMMA_MAX: f64 = 171.0;

/// `Γ(x)`.
///
/// Fails with [`Error::Pole`] at `0, -1, -2, ...`; use [`recip_gamma`] when the
/// argument may land on a pole.
pub fn gamma(x: f64) -> Result<f64> {
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    Ok(libm::tgamma(x))
}

/// `1/Γ(x)`, an entire function. Returns exactly `0.0` at the poles of `Γ`.
pub fn recip_gamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x > 0.0 {
        if x < TGAMMA_MAX {
            1.0 / libm::tgamma(x)
        } else {
            (-libm::lgamma(x)).exp()
        }
    } else {
        // 1/Γ(x) = Γ(1 - x) sin(πx) / π
        let s = sin_pi(x);
        let y = 1.0 - x;
        if y < TGAMMA_MAX {
            libm::tgamma(y) * s / PI
        } else {
            s.signum() * (libm::lgamma(y) + s.abs().ln() - PI.ln()).exp()
        }
    }
}

/// `ln|1/Γ(x)|` together with the sign of `1/Γ(x)`.
///
/// The sign is `0.0` (and the logarithm `-inf`) at the poles.
pub(crate) fn ln_recip_gamma(x: f64) -> (f64, f64) {
    if is_nonpositive_integer(x) {
        return (f64::NEG_INFINITY, 0.0);
    }
    if x > 0.0 {
        (-libm::lgamma(x), 1.0)
    } else {
        let s = sin_pi(x);
        (libm::lgamma(1.0 - x) + s.abs().ln() - PI.ln(), s.signum())
    }
}

/// `sin(πx)` with the argument reduced before scaling by `π`, so that integers
/// give exact zeros.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let mut r = x % 2.0;
    if r > 1.0 {
        r -= 2.0;
    } else if r < -1.0 {
        r += 2.0;
    }
    if r > 0.5 {
        r = 1.0 - r;
    } else if r < -0.5 {
        r = -1.0 - r;
    }
    if r == 0.0 {
        return 0.0;
    }
    (PI * r).sin()
}

pub(crate) fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}
