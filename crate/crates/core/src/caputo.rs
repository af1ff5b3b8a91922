//! Caputo time derivative of order `α ∈ (0, 1)` by the L1 scheme.
//!
//! ```text
//! (D^α f)(T) = 1/Γ(1-α) ∫₀^T (T-τ)^{-α} f'(τ) dτ
//!            ≈ Σ_j w_j (f(t_{j+1}) - f(t_j)),
//! w_j = [(T-t_j)^{1-α} - (T-t_{j+1})^{1-α}] / (Γ(2-α) (t_{j+1} - t_j))
//! ```
//!
//! This is the independent check on the closed-form solution: it only needs
//! samples of `f` and never looks at how they were produced.

use crate::error::{Error, Result};
use crate::special_fn::{recip_gamma, FractionalOrder};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Spacing {
    Uniform,
    /// `t_j = T (j/N)^r` with `r > 1`, clustering nodes near `t = 0`.
    Graded(f64),
}

/// Nodes `0 = t_0 < t_1 < ... < t_N = t_end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_end: f64,
    n_steps: usize,
    spacing: Spacing,
}

impl TimeGrid {
    pub const MIN_STEPS: usize = 8;

    pub fn new(t_end: f64, n_steps: usize, spacing: Spacing) -> Result<Self> {
        if !(t_end.is_finite() && t_end > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "t_end must be positive, got {t_end}"
            )));
        }
        if n_steps < Self::MIN_STEPS {
            return Err(Error::InvalidGrid(format!(
                "need at least {} steps, got {n_steps}",
                Self::MIN_STEPS
            )));
        }
        if let Spacing::Graded(r) = spacing {
            if !(r.is_finite() && r > 1.0) {
                return Err(Error::InvalidGrid(format!(
                    "graded exponent must exceed 1, got {r}"
                )));
            }
        }
        Ok(TimeGrid {
            t_end,
            n_steps,
            spacing,
        })
    }

    pub fn uniform(t_end: f64, n_steps: usize) -> Result<Self> {
        Self::new(t_end, n_steps, Spacing::Uniform)
    }

    /// Graded grid with the default exponent `2/α`.
    pub fn graded_for(t_end: f64, n_steps: usize, alpha: FractionalOrder) -> Result<Self> {
        Self::new(t_end, n_steps, Spacing::Graded(2.0 / alpha.value()))
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    /// Same spacing law ending at a different time.
    pub fn with_end(&self, t_end: f64) -> Result<Self> {
        Self::new(t_end, self.n_steps, self.spacing)
    }

    /// Twice as many steps.
    pub fn refined(&self) -> Self {
        TimeGrid {
            n_steps: 2 * self.n_steps,
            ..*self
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        let n = self.n_steps as f64;
        let mut nodes: Vec<f64> = (0..=self.n_steps)
            .map(|j| {
                let s = j as f64 / n;
                match self.spacing {
                    Spacing::Uniform => self.t_end * s,
                    Spacing::Graded(r) => self.t_end * s.powf(r),
                }
            })
            .collect();
        nodes[self.n_steps] = self.t_end;
        nodes
    }
}

/// `a^{1-α} - (a-h)^{1-α}` without cancellation when `h ≪ a`.
fn power_gap(a: f64, h: f64, one_minus_alpha: f64) -> f64 {
    let b = a - h;
    if b <= 0.0 {
        return a.powf(one_minus_alpha);
    }
    -a.powf(one_minus_alpha) * (one_minus_alpha * (-h / a).ln_1p()).exp_m1()
}

/// L1 approximation of `(D^α f)(t_end)` from samples `(t_j, f(t_j))`.
///
/// The samples must start at `t = 0` and be strictly increasing; the last
/// abscissa is the evaluation time.
pub fn caputo_l1(samples: &[(f64, f64)], alpha: FractionalOrder) -> Result<f64> {
    if alpha.is_classical() {
        return Err(Error::ClassicalOrder);
    }
    if samples.len() < 2 {
        return Err(Error::InvalidGrid("need at least two samples".into()));
    }
    if samples[0].0 != 0.0 {
        return Err(Error::InvalidGrid(format!(
            "samples must start at t = 0, got {}",
            samples[0].0
        )));
    }
    if samples.windows(2).any(|w| !(w[1].0 > w[0].0)) {
        return Err(Error::InvalidGrid(
            "sample times must increase strictly".into(),
        ));
    }

    let a = alpha.value();
    let one_minus = 1.0 - a;
    let t_end = samples[samples.len() - 1].0;
    let sum: f64 = samples
        .windows(2)
        .map(|w| {
            let (t0, f0) = w[0];
            let (t1, f1) = w[1];
            let h = t1 - t0;
            power_gap(t_end - t0, h, one_minus) / h * (f1 - f0)
        })
        .sum();
    // 1/Γ(2-α)
    Ok(sum * recip_gamma(2.0 - a))
}

/// L1 derivative of `f` at `grid.t_end()`.
pub fn caputo_l1_fn<F>(f: F, grid: &TimeGrid, alpha: FractionalOrder) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let samples: Vec<(f64, f64)> = grid.nodes().into_iter().map(|t| (t, f(t))).collect();
    caputo_l1(&samples, alpha)
}

/// Result of comparing the L1 value on a grid with the value on its coarsening.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaputoEstimate {
    pub value: f64,
    pub coarse: f64,
    /// `false` signals that the grid is too coarse for the requested tolerance.
    pub converged: bool,
}

/// Evaluates on `grid` and on a grid with half the steps; flags disagreement
/// beyond `rel_tol` relative to `max(|value|, 1)`.
pub fn caputo_l1_checked<F>(
    f: F,
    grid: &TimeGrid,
    alpha: FractionalOrder,
    rel_tol: f64,
) -> Result<CaputoEstimate>
where
    F: Fn(f64) -> f64,
{
    let value = caputo_l1_fn(&f, grid, alpha)?;
    let half = TimeGrid::new(
        grid.t_end,
        (grid.n_steps / 2).max(TimeGrid::MIN_STEPS),
        grid.spacing,
    )?;
    let coarse = caputo_l1_fn(&f, &half, alpha)?;
    Ok(CaputoEstimate {
        value,
        coarse,
        converged: (value - coarse).abs() <= rel_tol * value.abs().max(1.0),
    })
}

/// Exact Caputo derivative of `t^β`: `Γ(β+1)/Γ(1+β-α) t^{β-α}`.
///
/// Constants (`β = 0`) have zero Caputo derivative; the formula above would give
/// the Riemann-Liouville value instead. When `1+β-α` hits a pole of `Γ` the
/// result is likewise `0`.
pub fn caputo_power(beta: f64, alpha: FractionalOrder, t: f64) -> Result<f64> {
    if !(beta > -1.0) {
        return Err(Error::InvalidConfig(format!(
            "power must exceed -1, got {beta}"
        )));
    }
    if !(t > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "time must be positive, got {t}"
        )));
    }
    if beta == 0.0 {
        return Ok(0.0);
    }
    let a = alpha.value();
    Ok(libm::tgamma(beta + 1.0) * recip_gamma(1.0 + beta - a) * t.powf(beta - a))
}
