//! The closed-form temperatures and front, and the classical `α = 1` solution.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::special_fn::{frac_erf, mainardi, wright, FractionalOrder};

use super::roots::{scan_roots, SolverOptions};
use super::StefanProblem;

/// Which side of the front a point lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    Liquid,
    Solid,
    Front,
}

impl Phase {
    pub fn as_str(self) -> &'static str {
        match self {
            Phase::Liquid => "liquid",
            Phase::Solid => "solid",
            Phase::Front => "front",
        }
    }
}

/// `u₂ = A + B·erf_α(x/(λ₂t^{α/2}))`, `u₁ = C + D·erf_α(x/(λ₁t^{α/2}))`,
/// `s = ξλ₁t^{α/2}`, where `erf_α(z) = 1 - W(-z,-α/2,1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeumannSolution {
    xi: f64,
    coeff_a: f64,
    coeff_b: f64,
    coeff_c: f64,
    coeff_d: f64,
    problem: StefanProblem,
}

/// Packages the coefficients for a given front coefficient `root`.
pub fn build_solution(problem: &StefanProblem, root: f64) -> Result<NeumannSolution> {
    if !(root > 0.0 && root.is_finite()) {
        return Err(Error::InvalidProblem(format!(
            "front coefficient must be positive and finite, got {root}"
        )));
    }
    let p = problem.params();
    let cfg = problem.eval_config();
    let alpha = problem.alpha();
    let liquid_den = frac_erf(root * problem.diffusivities().lambda_ratio, alpha, cfg)?;
    let solid_den = wright(root, alpha, 1.0, cfg)?.value;
    if liquid_den <= 0.0 || solid_den <= 0.0 {
        return Err(Error::InvalidProblem(format!(
            "profile normalisation vanishes at xi = {root}"
        )));
    }
    let coeff_b = -(p.u0 - p.um) / liquid_den;
    let coeff_d = -(p.um - p.ui) / solid_den;
    Ok(NeumannSolution {
        xi: root,
        coeff_a: p.u0,
        coeff_b,
        coeff_c: p.ui - coeff_d,
        coeff_d,
        problem: *problem,
    })
}

impl NeumannSolution {
    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn coeff_a(&self) -> f64 {
        self.coeff_a
    }

    pub fn coeff_b(&self) -> f64 {
        self.coeff_b
    }

    pub fn coeff_c(&self) -> f64 {
        self.coeff_c
    }

    pub fn coeff_d(&self) -> f64 {
        self.coeff_d
    }

    pub fn problem(&self) -> &StefanProblem {
        &self.problem
    }

    fn alpha(&self) -> FractionalOrder {
        self.problem.alpha()
    }

    /// `s(t) = ξλ₁t^{α/2}`.
    pub fn eval_front(&self, t: f64) -> Result<f64> {
        check_nonneg(t)?;
        Ok(self.xi * self.problem.diffusivities().lambda1 * t.powf(self.alpha().half()))
    }

    fn front_unchecked(&self, t: f64) -> f64 {
        self.xi * self.problem.diffusivities().lambda1 * t.powf(self.alpha().half())
    }

    /// Liquid formula on the whole quarter plane, ignoring where the front is.
    /// At `t = 0` it takes its limit `A + B` for `x > 0`. Used by the verifier
    /// for time histories.
    pub fn liquid_formula(&self, x: f64, t: f64) -> Result<f64> {
        check_nonneg(x)?;
        check_nonneg(t)?;
        if x == 0.0 {
            return Ok(self.coeff_a);
        }
        let eta = x / (self.problem.diffusivities().lambda2 * t.powf(self.alpha().half()));
        if !eta.is_finite() {
            return Ok(self.coeff_a + self.coeff_b);
        }
        let v = frac_erf(eta, self.alpha(), self.problem.eval_config())?;
        Ok(self.coeff_a + self.coeff_b * v)
    }

    /// Solid formula on the whole quarter plane; at `t = 0` it is `u_i`.
    pub fn solid_formula(&self, x: f64, t: f64) -> Result<f64> {
        check_nonneg(x)?;
        check_nonneg(t)?;
        let scale = self.problem.diffusivities().lambda1 * t.powf(self.alpha().half());
        let eta = x / scale;
        if !eta.is_finite() {
            return Ok(self.problem.params().ui);
        }
        // C + D(1 - W) = u_i - D W, which avoids cancelling C against D
        let w = wright(eta, self.alpha(), 1.0, self.problem.eval_config())?;
        Ok(self.problem.params().ui - self.coeff_d * w.value)
    }

    /// Liquid temperature on `0 ≤ x ≤ s(t)`.
    pub fn eval_u2(&self, x: f64, t: f64) -> Result<f64> {
        check_nonneg(x)?;
        check_positive_time(t)?;
        let s = self.front_unchecked(t);
        if x > s * (1.0 + 4.0 * f64::EPSILON) {
            return Err(Error::OutsidePhase {
                x,
                t,
                front: s,
                phase: "liquid",
            });
        }
        self.liquid_formula(x, t)
    }

    /// Solid temperature on `x ≥ s(t)`.
    pub fn eval_u1(&self, x: f64, t: f64) -> Result<f64> {
        check_nonneg(x)?;
        check_nonneg(t)?;
        let s = self.front_unchecked(t);
        if x < s * (1.0 - 4.0 * f64::EPSILON) {
            return Err(Error::OutsidePhase {
                x,
                t,
                front: s,
                phase: "solid",
            });
        }
        self.solid_formula(x, t)
    }

    /// Temperature anywhere in the quarter plane, tagged with its phase.
    /// At the front the liquid formula is used; both sides equal `u_m` there.
    pub fn temperature(&self, x: f64, t: f64) -> Result<(Phase, f64)> {
        check_nonneg(x)?;
        check_nonneg(t)?;
        let s = self.front_unchecked(t);
        if t == 0.0 {
            return if x == 0.0 {
                Ok((Phase::Front, self.problem.params().um))
            } else {
                Ok((Phase::Solid, self.problem.params().ui))
            };
        }
        if x < s {
            Ok((Phase::Liquid, self.liquid_formula(x, t)?))
        } else if x > s {
            Ok((Phase::Solid, self.solid_formula(x, t)?))
        } else {
            Ok((Phase::Front, self.liquid_formula(x, t)?))
        }
    }

    /// `(u₂ₓ, u₁ₓ)` at `x = s(t)`:
    /// `(B M_{α/2}(λξ)/(λ₂t^{α/2}), D M_{α/2}(ξ)/(λ₁t^{α/2}))`.
    pub fn flux_at_front(&self, t: f64) -> Result<(f64, f64)> {
        check_positive_time(t)?;
        let d = self.problem.diffusivities();
        let cfg = self.problem.eval_config();
        let tp = t.powf(self.alpha().half());
        let m_liquid = mainardi(self.xi * d.lambda_ratio, self.alpha(), cfg)?.value;
        let m_solid = mainardi(self.xi, self.alpha(), cfg)?.value;
        Ok((
            self.coeff_b * m_liquid / (d.lambda2 * tp),
            self.coeff_d * m_solid / (d.lambda1 * tp),
        ))
    }
}

fn check_nonneg(v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::NegativeArgument(v))
    }
}

fn check_positive_time(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::NegativeArgument(t))
    }
}

/// `e^{-x²}/erfc(x)`, switching to the continued fraction once `erfc`
/// approaches underflow.
fn gauss_over_erfc(x: f64) -> f64 {
    if x < 25.0 {
        return (-x * x).exp() / libm::erfc(x);
    }
    // erfc(x) = e^{-x²}/√π · 1/(x + 1/2/(x + 1/(x + 3/2/(x + ...))))
    let mut cf = x;
    for k in (1..=60).rev() {
        cf = x + 0.5 * k as f64 / cf;
    }
    PI.sqrt() * cf
}

/// Residual of the classical equation for `μ`:
/// `a e^{-λ²μ²}/(√π erf(λμ)) - b e^{-μ²}/(√π erfc μ) - μ` with the weights
/// of [`StefanProblem::liquid_weight`] and [`StefanProblem::solid_weight`].
pub fn classical_root_function(mu: f64, problem: &StefanProblem) -> f64 {
    let lambda = problem.diffusivities().lambda_ratio;
    let lm = lambda * mu;
    let liquid = (-lm * lm).exp() / (PI.sqrt() * libm::erf(lm));
    let solid = gauss_over_erfc(mu) / PI.sqrt();
    problem.liquid_weight() * liquid - problem.solid_weight() * solid - mu
}

/// The classical Neumann solution: `μ` and the solution with `ξ₁ = 2μ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalNeumann {
    pub mu: f64,
    /// Residual of the classical equation at `mu`.
    pub residual: f64,
    pub solution: NeumannSolution,
}

/// Solves the erf/erfc equation for `μ` by scan and bisection over
/// `(left_end, scan_max/2]` (so that `ξ₁ = 2μ ≤ scan_max`).
pub fn classical_neumann(
    problem: &StefanProblem,
    opts: &SolverOptions,
) -> Result<ClassicalNeumann> {
    if !problem.alpha().is_classical() {
        return Err(Error::InvalidProblem(format!(
            "classical solution needs alpha = 1, got {}",
            problem.alpha()
        )));
    }
    opts.validate()?;
    let window = SolverOptions {
        scan_max: 0.5 * opts.scan_max,
        ..*opts
    };
    window.validate()?;
    let roots = scan_roots(
        |mu| Ok(classical_root_function(mu, problem)),
        |mu| 1.0 + mu,
        &window,
    )?;
    let &(mu, residual) = roots.first().ok_or(Error::NoRoot {
        scan_max: opts.scan_max,
    })?;
    Ok(ClassicalNeumann {
        mu,
        residual,
        solution: build_solution(problem, 2.0 * mu)?,
    })
}
