//! Leading-order large-argument forms of `M_{α/2}` and `W(-x, -α/2, 1)`.
//!
//! With `ν = α/2` and `p = 1/(1 - ν)`:
//!
//! ```text
//! M_ν(x)       ~ b(α) x^{-(1-α)/(2-α)} exp(-c(α) x^p)
//! W(-x,-ν,1)   ~ d(α) x^{-1/(2-α)}     exp(-c(α) x^p)
//! M_ν / W      ~ ν^{α/(2-α)} x^{α/(2-α)}
//! ```
//!
//! `c(α) = ((2-α)/α) ν^p`, which equals `(1-ν) ν^{ν/(1-ν)}` and reduces to `1/4`
//! at `α = 1`.

use super::{EvalMethod, FractionalOrder, WrightValue};

fn leading_a0(alpha: f64) -> f64 {
    1.0 / (2.0 * std::f64::consts::PI * (1.0 - 0.5 * alpha)).sqrt()
}

pub fn asymptotic_b(alpha: FractionalOrder) -> f64 {
    let a = alpha.value();
    leading_a0(a) * (0.5 * a).powf(-(1.0 - a) / (2.0 - a))
}

pub fn asymptotic_c(alpha: FractionalOrder) -> f64 {
    let a = alpha.value();
    (2.0 - a) / a * (0.5 * a).powf(1.0 / (1.0 - 0.5 * a))
}

pub fn asymptotic_d(alpha: FractionalOrder) -> f64 {
    let a = alpha.value();
    leading_a0(a) * (0.5 * a).powf(-1.0 / (2.0 - a))
}

/// Relative size of the first neglected correction, `(αx/2)^{-p}`.
fn correction(x: f64, alpha: f64) -> f64 {
    (0.5 * alpha * x).powf(-1.0 / (1.0 - 0.5 * alpha))
}

fn decay(x: f64, alpha: FractionalOrder) -> f64 {
    (-asymptotic_c(alpha) * x.powf(1.0 / (1.0 - alpha.half()))).exp()
}

pub fn mainardi_asymptotic(x: f64, alpha: FractionalOrder) -> WrightValue {
    let a = alpha.value();
    let value = asymptotic_b(alpha) * x.powf(-(1.0 - a) / (2.0 - a)) * decay(x, alpha);
    WrightValue {
        value,
        est_abs_err: value * correction(x, a),
        method: EvalMethod::Asymptotic,
    }
}

pub fn wright_asymptotic(x: f64, alpha: FractionalOrder) -> WrightValue {
    let a = alpha.value();
    let value = asymptotic_d(alpha) * x.powf(-1.0 / (2.0 - a)) * decay(x, alpha);
    WrightValue {
        value,
        est_abs_err: value * correction(x, a),
        method: EvalMethod::Asymptotic,
    }
}

/// Leading growth of `M_{α/2}(x) / W(-x, -α/2, 1)`.
pub fn f2_asymptotic(x: f64, alpha: FractionalOrder) -> f64 {
    let a = alpha.value();
    let q = a / (2.0 - a);
    (0.5 * a).powf(q) * x.powf(q)
}
