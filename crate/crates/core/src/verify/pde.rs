//! Residuals of `D^α u = λ² u_xx` from sampled values only.

use crate::caputo::{caputo_l1, TimeGrid};
use crate::error::{Error, Result};
use crate::special_fn::{frac_erf, wright, FractionalOrder, WrightEvalConfig};
use crate::stefan::NeumannSolution;

/// The two phases a PDE check can run on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhaseKind {
    Liquid,
    Solid,
}

impl PhaseKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PhaseKind::Liquid => "liquid",
            PhaseKind::Solid => "solid",
        }
    }
}

/// One sample point of a PDE check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointResidual {
    pub x: f64,
    pub t: f64,
    /// Time derivative from the L1 scheme (or a central difference at `α = 1`).
    pub time_derivative: f64,
    /// `λ² u_xx` from a central second difference.
    pub diffusion: f64,
    pub residual: f64,
    /// `max(|Δu|, 1) λ²/x_char²` with `x_char = λ t^{α/2}`.
    pub scale: f64,
}

impl PointResidual {
    pub fn scaled(&self) -> f64 {
        self.residual / self.scale
    }
}

/// PDE residuals over a sample set at one resolution.
#[derive(Debug, Clone, PartialEq)]
pub struct PdeReport {
    pub points: Vec<PointResidual>,
    pub n_steps: usize,
    pub h_x: f64,
}

impl PdeReport {
    pub fn max_abs(&self) -> f64 {
        self.points.iter().map(|p| p.residual).fold(0.0, f64::max)
    }

    pub fn max_scaled(&self) -> f64 {
        self.points.iter().map(|p| p.scaled()).fold(0.0, f64::max)
    }
}

/// Residual of one field `u(x, t)` at one point.
///
/// For `α < 1` the Caputo derivative is the L1 sum over `grid` rescaled to end
/// at `t`; for `α = 1` it is a central difference with step `t / n_steps`.
pub(crate) fn residual_at<U>(
    u: &U,
    lambda: f64,
    alpha: FractionalOrder,
    x: f64,
    t: f64,
    grid: &TimeGrid,
    h_x: f64,
    amplitude: f64,
) -> Result<PointResidual>
where
    U: Fn(f64, f64) -> Result<f64>,
{
    let time_derivative = if alpha.is_classical() {
        let k = t / grid.n_steps() as f64;
        (u(x, t + k)? - u(x, t - k)?) / (2.0 * k)
    } else {
        let nodes = grid.with_end(t)?.nodes();
        let samples = nodes
            .into_iter()
            .map(|tau| u(x, tau).map(|v| (tau, v)))
            .collect::<Result<Vec<_>>>()?;
        caputo_l1(&samples, alpha)?
    };
    let uxx = (u(x + h_x, t)? - 2.0 * u(x, t)? + u(x - h_x, t)?) / (h_x * h_x);
    let diffusion = lambda * lambda * uxx;
    let x_char = lambda * t.powf(alpha.half());
    Ok(PointResidual {
        x,
        t,
        time_derivative,
        diffusion,
        residual: (time_derivative - diffusion).abs(),
        scale: amplitude.abs().max(1.0) * lambda * lambda / (x_char * x_char),
    })
}

fn reject(x: f64, t: f64, reason: impl Into<String>) -> Error {
    Error::RejectedSample {
        x,
        t,
        reason: reason.into(),
    }
}

fn check_h(h_x: f64) -> Result<()> {
    if h_x > 0.0 && h_x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!(
            "h_x must be positive, got {h_x}"
        )))
    }
}

/// Checks that a point can carry a PDE stencil in `phase`.
///
/// Liquid points need the front to have passed them before `t/2`, i.e.
/// `x < s(t)·2^{-α/2}`: the time history of the liquid formula at fixed `x`
/// runs from `t = 0`, before the liquid reached `x`, and keeping clear of the
/// arrival time bounds that truncation.
pub fn admissible(sol: &NeumannSolution, phase: PhaseKind, x: f64, t: f64, h_x: f64) -> Result<()> {
    if !(t > 0.0 && t.is_finite() && x.is_finite()) {
        return Err(reject(x, t, "need x finite and t > 0"));
    }
    let s = sol.eval_front(t)?;
    let alpha = sol.problem().alpha();
    match phase {
        PhaseKind::Liquid => {
            if x <= h_x {
                return Err(reject(x, t, "stencil crosses x = 0"));
            }
            if x > s - 3.0 * h_x {
                return Err(reject(x, t, "within 3 h_x of the front"));
            }
            if x >= s * 2f64.powf(-alpha.half()) {
                return Err(reject(x, t, "front reached x after t/2"));
            }
        }
        PhaseKind::Solid => {
            if x < s + 3.0 * h_x {
                return Err(reject(x, t, "within 3 h_x of the front"));
            }
        }
    }
    Ok(())
}

/// PDE residual of one phase of the closed-form solution at each sample point.
pub fn check_pde(
    sol: &NeumannSolution,
    phase: PhaseKind,
    points: &[(f64, f64)],
    grid: &TimeGrid,
    h_x: f64,
) -> Result<PdeReport> {
    check_h(h_x)?;
    let p = sol.problem();
    let d = p.diffusivities();
    let amplitude = p.params().u0 - p.params().ui;
    let mut out = Vec::with_capacity(points.len());
    for &(x, t) in points {
        admissible(sol, phase, x, t, h_x)?;
        let r = match phase {
            PhaseKind::Liquid => residual_at(
                &|x, t| sol.liquid_formula(x, t),
                d.lambda2,
                p.alpha(),
                x,
                t,
                grid,
                h_x,
                amplitude,
            )?,
            PhaseKind::Solid => residual_at(
                &|x, t| sol.solid_formula(x, t),
                d.lambda1,
                p.alpha(),
                x,
                t,
                grid,
                h_x,
                amplitude,
            )?,
        };
        out.push(r);
    }
    Ok(PdeReport {
        points: out,
        n_steps: grid.n_steps(),
        h_x,
    })
}

/// Maximum scaled residual at successive joint refinements of the time grid
/// and of `h_x`.
#[derive(Debug, Clone, PartialEq)]
pub struct RefinementStudy {
    pub levels: Vec<PdeReport>,
}

impl RefinementStudy {
    /// `max_scaled(level k) / max_scaled(level k+1)`.
    pub fn ratios(&self) -> Vec<f64> {
        self.levels
            .windows(2)
            .map(|w| w[0].max_scaled() / w[1].max_scaled())
            .collect()
    }

    pub fn min_ratio(&self) -> f64 {
        self.ratios().into_iter().fold(f64::INFINITY, f64::min)
    }

    pub fn finest(&self) -> &PdeReport {
        self.levels.last().expect("a study has at least one level")
    }
}

/// Runs `check` on `refinements + 1` resolutions, doubling the steps and
/// halving `h_x` each time.
pub fn refinement_study<C>(
    grid: &TimeGrid,
    h_x: f64,
    refinements: usize,
    check: C,
) -> Result<RefinementStudy>
where
    C: Fn(&TimeGrid, f64) -> Result<PdeReport>,
{
    let mut levels = Vec::with_capacity(refinements + 1);
    let mut g = *grid;
    let mut h = h_x;
    for _ in 0..=refinements {
        levels.push(check(&g, h)?);
        g = g.refined();
        h *= 0.5;
    }
    Ok(RefinementStudy { levels })
}

/// [`check_pde`] under joint refinement.
pub fn pde_refinement(
    sol: &NeumannSolution,
    phase: PhaseKind,
    points: &[(f64, f64)],
    grid: &TimeGrid,
    h_x: f64,
    refinements: usize,
) -> Result<RefinementStudy> {
    refinement_study(grid, h_x, refinements, |g, h| {
        check_pde(sol, phase, points, g, h)
    })
}

/// The two auxiliary quarter-plane problems solved by Wright functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuarterPlaneKind {
    /// `v = f₀ (1 - W(-x/(λt^{α/2}),-α/2,1))`: `v(0,t) = 0`, `v(x,0) = f₀`.
    StepInitial,
    /// `w = g₀ W(-x/(λt^{α/2}),-α/2,1)`: `w(0,t) = g₀`, `w(x,0) = 0`.
    BoundarySignal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarterPlaneField {
    pub kind: QuarterPlaneKind,
    pub alpha: FractionalOrder,
    pub amplitude: f64,
    pub lambda: f64,
    pub eval: WrightEvalConfig,
}

impl QuarterPlaneField {
    pub fn value(&self, x: f64, t: f64) -> Result<f64> {
        if x < 0.0 || t < 0.0 {
            return Err(Error::NegativeArgument(x.min(t)));
        }
        let eta = if x == 0.0 {
            0.0
        } else {
            x / (self.lambda * t.powf(self.alpha.half()))
        };
        let profile = match (self.kind, eta.is_finite()) {
            (QuarterPlaneKind::StepInitial, false) => 1.0,
            (QuarterPlaneKind::BoundarySignal, false) => 0.0,
            (QuarterPlaneKind::StepInitial, true) => frac_erf(eta, self.alpha, &self.eval)?,
            (QuarterPlaneKind::BoundarySignal, true) => {
                wright(eta, self.alpha, 1.0, &self.eval)?.value
            }
        };
        Ok(self.amplitude * profile)
    }

    /// Time at which `x/(λt^{α/2})` reaches `eta`.
    fn time_for(&self, x: f64, eta: f64) -> f64 {
        (x / (self.lambda * eta)).powf(1.0 / self.alpha.half())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuarterPlaneReport {
    pub kind: QuarterPlaneKind,
    /// `max |v(0,t)|` or `max |w(0,t) - g₀|` over the sample times.
    pub boundary_residual: f64,
    /// `max |v(x,t₀) - f₀|` or `max |w(x,t₀)|` with `t₀` chosen so that the
    /// similarity variable is 60 at each sample `x`.
    pub initial_residual: f64,
    pub pde: PdeReport,
}

/// Similarity value at which the initial-value probe is taken.
const INITIAL_PROBE_ETA: f64 = 60.0;

/// Boundary values, initial values and PDE residuals of a quarter-plane field.
pub fn check_quarter_plane(
    field: &QuarterPlaneField,
    samples: &[(f64, f64)],
    grid: &TimeGrid,
    h_x: f64,
) -> Result<QuarterPlaneReport> {
    check_h(h_x)?;
    if !(field.lambda > 0.0 && field.lambda.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "lambda must be positive, got {}",
            field.lambda
        )));
    }
    let g0 = field.amplitude;
    let boundary_target = match field.kind {
        QuarterPlaneKind::StepInitial => 0.0,
        QuarterPlaneKind::BoundarySignal => g0,
    };
    let initial_target = g0 - boundary_target;
    let mut boundary_residual = 0.0f64;
    let mut initial_residual = 0.0f64;
    let mut points = Vec::with_capacity(samples.len());
    for &(x, t) in samples {
        if !(x > h_x && t > 0.0) {
            return Err(reject(x, t, "need x > h_x and t > 0"));
        }
        boundary_residual = boundary_residual.max((field.value(0.0, t)? - boundary_target).abs());
        let t0 = field.time_for(x, INITIAL_PROBE_ETA);
        initial_residual = initial_residual.max((field.value(x, t0)? - initial_target).abs());
        points.push(residual_at(
            &|x, t| field.value(x, t),
            field.lambda,
            field.alpha,
            x,
            t,
            grid,
            h_x,
            g0,
        )?);
    }
    Ok(QuarterPlaneReport {
        kind: field.kind,
        boundary_residual,
        initial_residual,
        pde: PdeReport {
            points,
            n_steps: grid.n_steps(),
            h_x,
        },
    })
}

/// PDE residuals of a quarter-plane field under joint refinement.
pub fn quarter_plane_refinement(
    field: &QuarterPlaneField,
    samples: &[(f64, f64)],
    grid: &TimeGrid,
    h_x: f64,
    refinements: usize,
) -> Result<RefinementStudy> {
    refinement_study(grid, h_x, refinements, |g, h| {
        check_quarter_plane(field, samples, g, h).map(|r| r.pde)
    })
}
