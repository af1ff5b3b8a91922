//! Positive-integrand representation used away from the origin.
//!
//! For `0 < ν < 1` and `x > 0`, with `p = 1/(1-ν)` and
//!
//! ```text
//! A(φ) = [sin(νφ)/sin φ]^{ν/(1-ν)} · sin((1-ν)φ)/sin φ,   0 < φ < π,
//! ```
//!
//! the one-sided stable density (Kanter's form) gives
//!
//! ```text
//! W(-x,-ν,1)   = (1/π) ∫₀^π exp(-x^p A(φ)) dφ
//! M_ν(x)       = x^{ν/(1-ν)} / (π(1-ν)) ∫₀^π A(φ) exp(-x^p A(φ)) dφ
//! ```
//!
//! Both integrands are positive, so nothing cancels. `A` is even around 0 with
//! `A(0) = (1-ν)ν^{ν/(1-ν)}` and `A''(0) = ν A(0)`; factoring out
//! `exp(-x^p A(0))` keeps the integrals finite long after the functions
//! themselves underflow.

use std::f64::consts::{FRAC_PI_2, PI};

/// Exponents beyond this contribute nothing in double precision.
const EXP_CUTOFF: f64 = 745.0;

#[derive(Debug, Clone, Copy)]
pub(crate) struct KanterIntegrals {
    /// `x^p`
    pub big_x: f64,
    /// `A(0)`
    pub a0: f64,
    /// `(1/π) ∫ exp(-X (A - A0)) dφ`
    pub j0: f64,
    /// `(1/π) ∫ A exp(-X (A - A0)) dφ`
    pub j1: f64,
    pub err0: f64,
    pub err1: f64,
}

pub(crate) fn kernel_a0(nu: f64) -> f64 {
    (1.0 - nu) * nu.powf(nu / (1.0 - nu))
}

pub(crate) fn kernel_a(phi: f64, nu: f64) -> f64 {
    if phi == 0.0 {
        return kernel_a0(nu);
    }
    let s = phi.sin();
    let r1 = (nu * phi).sin() / s;
    let r2 = ((1.0 - nu) * phi).sin() / s;
    r1.powf(nu / (1.0 - nu)) * r2
}

impl KanterIntegrals {
    pub(crate) fn compute(x: f64, nu: f64) -> Self {
        let big_x = x.powf(1.0 / (1.0 - nu));
        let a0 = kernel_a0(nu);

        let weight = |phi: f64| -> (f64, f64) {
            let a = kernel_a(phi, nu);
            if !a.is_finite() {
                return (0.0, 0.0);
            }
            let expo = big_x * (a - a0);
            if expo > EXP_CUTOFF {
                (0.0, 0.0)
            } else {
                let e = (-expo).exp();
                (e, a * e)
            }
        };

        // Width of the Gaussian peak at φ = 0.
        let curvature = big_x * a0 * nu;
        let split = if curvature > 1.0 {
            (12.0 / curvature.sqrt()).min(FRAC_PI_2)
        } else {
            PI
        };
        let target = 1e-16 * split.min(1.0);

        let mut j0 = 0.0;
        let mut j1 = 0.0;
        let mut err0 = 0.0;
        let mut err1 = 0.0;
        let mut pieces = vec![(0.0, split)];
        if split < PI {
            pieces.push((split, PI));
        }
        for (a, b) in pieces {
            let o0 = quadrature::integrate(|p| weight(p).0, a, b, target);
            let o1 = quadrature::integrate(|p| weight(p).1, a, b, target);
            j0 += o0.integral;
            j1 += o1.integral;
            err0 += o0.error_estimate;
            err1 += o1.error_estimate;
        }
        KanterIntegrals {
            big_x,
            a0,
            j0: j0 / PI,
            j1: j1 / PI,
            err0: err0 / PI,
            err1: err1 / PI,
        }
    }

    /// `exp(-X A(0))`, the factored-out decay.
    pub(crate) fn decay(&self) -> f64 {
        (-self.big_x * self.a0).exp()
    }
}
