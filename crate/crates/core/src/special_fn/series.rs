//! Power series of `W(-x, -ν, β) = Σ (-x)^k / (k! Γ(β - νk))`.

use super::gamma::{ln_recip_gamma, recip_gamma};
use crate::error::{Error, Result};

/// Below this magnitude `(-x)^k/k!` is tracked in log space.
const TINY_POWER: f64 = 1e-280;
/// Stop once the term envelope falls below this fraction of the running sum.
const STOP_REL: f64 = 1e-18;

/// Running sum with Neumaier's compensation term.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Compensated {
    sum: f64,
    comp: f64,
}

impl Compensated {
    pub(crate) fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct SeriesSum {
    pub value: f64,
    /// Rounding plus truncation estimate.
    pub est_abs_err: f64,
    /// Largest term magnitude; `max_term / |value|` measures cancellation.
    #[allow(dead_code)] // diagnostics, read in tests
    pub max_term: f64,
    #[allow(dead_code)]
    pub terms: usize,
}

/// Sums the Wright series at `-x`. With `skip_first` the `k = 0` term is left
/// out, which gives `W(-x,-ν,β) - 1/Γ(β)` without cancellation for small `x`.
pub(crate) fn wright_series(
    x: f64,
    nu: f64,
    beta: f64,
    skip_first: bool,
    max_terms: usize,
) -> Result<SeriesSum> {
    let eps = f64::EPSILON;
    let ln_x = x.ln();
    let mut acc = Compensated::default();
    let mut power = 1.0_f64; // (-x)^k / k!
    let mut log_mode = false;
    let mut weighted_abs = 0.0_f64;
    let mut max_term = 0.0_f64;
    let mut prev_env = f64::INFINITY;

    for k in 0..max_terms {
        let kf = k as f64;
        if k > 0 && !log_mode {
            power *= -x / kf;
            if power.abs() < TINY_POWER {
                log_mode = true;
            }
        }
        let y = beta - nu * kf;

        // envelope bounds |term| with the sine factor of the reflection formula dropped
        let (term, env) = if !log_mode && 1.0 - y < 170.0 {
            let term = power * recip_gamma(y);
            let env = if y > 0.0 {
                term.abs()
            } else {
                power.abs() * libm::tgamma(1.0 - y) / std::f64::consts::PI
            };
            (term, env)
        } else {
            let ln_power = kf * ln_x - libm::lgamma(kf + 1.0);
            let (ln_rg, sign) = ln_recip_gamma(y);
            let parity = if k % 2 == 0 { 1.0 } else { -1.0 };
            let term = if sign == 0.0 {
                0.0
            } else {
                parity * sign * (ln_power + ln_rg).exp()
            };
            let ln_env = if y > 0.0 {
                ln_power + ln_rg
            } else {
                ln_power + libm::lgamma(1.0 - y) - std::f64::consts::PI.ln()
            };
            (term, ln_env.exp())
        };

        if !(k == 0 && skip_first) {
            acc.add(term);
            weighted_abs += (0.5 * kf + 4.0) * term.abs();
            max_term = max_term.max(term.abs());
        }

        let scale = acc.value().abs().max(f64::MIN_POSITIVE);
        if k > 0 && env <= prev_env && (env <= STOP_REL * scale || env == 0.0) {
            let value = acc.value();
            return Ok(SeriesSum {
                value,
                est_abs_err: eps * weighted_abs + 2.0 * eps * value.abs() + 2.0 * env,
                max_term,
                terms: k + 1,
            });
        }
        prev_env = env;
    }
    Err(Error::NonConvergence {
        x,
        terms: max_terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn compensated_sum_recovers_small_addend() {
        let mut acc = Compensated::default();
        for v in [1.0, 1e100, 1.0, -1e100] {
            acc.add(v);
        }
        assert_eq!(acc.value(), 2.0);
    }

    #[test]
    fn zero_argument_keeps_leading_term() {
        let s = wright_series(0.0, 0.25, 1.0, false, 50).unwrap();
        assert_eq!(s.value, 1.0);
        let s = wright_series(0.0, 0.25, 1.0, true, 50).unwrap();
        assert_eq!(s.value, 0.0);
    }

    #[test]
    fn half_order_reduces_to_erfc() {
        for x in [0.1, 1.0, 2.5, 4.0] {
            let s = wright_series(x, 0.5, 1.0, false, 500).unwrap();
            let exact = libm::erfc(x / 2.0);
            assert!(
                (s.value - exact).abs() <= s.est_abs_err.max(1e-15),
                "x={x}: {} vs {exact}, est {}",
                s.value,
                s.est_abs_err
            );
        }
    }

    #[test]
    fn order_zero_limit_is_exponential() {
        // ν = 0: W(-x, 0, 1) = e^{-x}
        let s = wright_series(3.0, 0.0, 1.0, false, 500).unwrap();
        assert_relative_eq!(s.value, (-3.0f64).exp(), max_relative = 1e-13);
    }

    #[test]
    fn cancellation_is_reported() {
        // erfc(4) ≈ 1.5e-8 is summed from terms of size ~e^{16}
        let s = wright_series(8.0, 0.5, 1.0, false, 500).unwrap();
        assert!(s.max_term / s.value.abs() > 1e10);
        assert!(s.terms > 20 && s.terms < 500);
        let s = wright_series(0.5, 0.5, 1.0, false, 500).unwrap();
        assert!(s.max_term / s.value.abs() < 2.0);
    }

    #[test]
    fn too_few_terms_is_an_error() {
        assert_eq!(
            wright_series(8.0, 0.25, 1.0, false, 5).unwrap_err(),
            Error::NonConvergence { x: 8.0, terms: 5 }
        );
    }
}
