//! Two-phase fractional Stefan problem on the half line.
//!
//! Liquid occupies `0 < x < s(t)` with temperature `u₂`, solid occupies
//! `x > s(t)` with temperature `u₁`. Both satisfy `D^α u = λⱼ² u_xx` with the
//! Caputo derivative in time; the front moves by
//! `k₁u₁ₓ - k₂u₂ₓ = ρ l D^α s` and sits at the melting temperature `u_m`.
//!
//! The closed-form solution has the front at `s(t) = ξ λ₁ t^{α/2}`, where `ξ`
//! solves `F(ξ) = Γ(1+α/2)/Γ(1-α/2) ξ` (see [`solve_xi`]).
//!
//! Units: `λⱼ = √(kⱼ/(ρcⱼ))` is treated as length·time^{-α/2}, so that
//! `x/(λⱼ t^{α/2})` is dimensionless. For `α < 1` this is not the square root of
//! a classical diffusivity.

mod roots;
mod solution;

pub use roots::{big_f, f1, f2, root_function, solve_xi, RootReport, SolverOptions};
pub use solution::{
    build_solution, classical_neumann, classical_root_function, ClassicalNeumann, NeumannSolution,
    Phase,
};

use crate::error::{Error, Result};
use crate::special_fn::{FractionalOrder, WrightEvalConfig};

/// Material constants and the three reference temperatures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalParams {
    /// Solid conductivity, W·m⁻¹·K⁻¹.
    pub k1: f64,
    /// Liquid conductivity, W·m⁻¹·K⁻¹.
    pub k2: f64,
    /// Solid specific heat, J·kg⁻¹·K⁻¹.
    pub c1: f64,
    /// Liquid specific heat, J·kg⁻¹·K⁻¹.
    pub c2: f64,
    /// Density, kg·m⁻³ (common to both phases).
    pub rho: f64,
    /// Latent heat, J·kg⁻¹.
    pub latent: f64,
    /// Imposed temperature at `x = 0`.
    pub u0: f64,
    /// Melting temperature.
    pub um: f64,
    /// Initial (and far-field) temperature.
    pub ui: f64,
}

impl ThermalParams {
    /// All material constants 1, `u₀ = 1.5`, `u_m = 0`, `u_i = -0.5`.
    pub fn textbook() -> Self {
        ThermalParams {
            k1: 1.0,
            k2: 1.0,
            c1: 1.0,
            c2: 1.0,
            rho: 1.0,
            latent: 1.0,
            u0: 1.5,
            um: 0.0,
            ui: -0.5,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("k1", self.k1),
            ("k2", self.k2),
            ("c1", self.c1),
            ("c2", self.c2),
            ("rho", self.rho),
            ("latent", self.latent),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidProblem(format!(
                    "{name} must be strictly positive, got {v}"
                )));
            }
        }
        for (name, v) in [("u0", self.u0), ("um", self.um), ("ui", self.ui)] {
            if !v.is_finite() {
                return Err(Error::InvalidProblem(format!(
                    "{name} must be finite, got {v}"
                )));
            }
        }
        if !(self.ui < self.um) {
            return Err(Error::InvalidProblem(format!(
                "need ui < um, got ui = {} and um = {}",
                self.ui, self.um
            )));
        }
        if !(self.um < self.u0) {
            return Err(Error::InvalidProblem(format!(
                "need um < u0, got um = {} and u0 = {}",
                self.um, self.u0
            )));
        }
        Ok(())
    }
}

/// `λⱼ = √(kⱼ/(ρcⱼ))` and `λ = λ₁/λ₂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diffusivities {
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda_ratio: f64,
}

impl Diffusivities {
    pub fn of(params: &ThermalParams) -> Self {
        let lambda1 = (params.k1 / (params.rho * params.c1)).sqrt();
        let lambda2 = (params.k2 / (params.rho * params.c2)).sqrt();
        Diffusivities {
            lambda1,
            lambda2,
            lambda_ratio: lambda1 / lambda2,
        }
    }
}

/// A validated problem instance. Immutable once built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StefanProblem {
    params: ThermalParams,
    alpha: FractionalOrder,
    diff: Diffusivities,
    eval: WrightEvalConfig,
}

impl StefanProblem {
    pub fn new(params: ThermalParams, alpha: FractionalOrder) -> Result<Self> {
        params.validate()?;
        Ok(StefanProblem {
            params,
            alpha,
            diff: Diffusivities::of(&params),
            eval: WrightEvalConfig::default(),
        })
    }

    pub fn with_eval_config(mut self, eval: WrightEvalConfig) -> Self {
        self.eval = eval;
        self
    }

    /// The same material at another order.
    pub fn with_alpha(mut self, alpha: FractionalOrder) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn params(&self) -> &ThermalParams {
        &self.params
    }

    pub fn alpha(&self) -> FractionalOrder {
        self.alpha
    }

    pub fn diffusivities(&self) -> &Diffusivities {
        &self.diff
    }

    pub fn eval_config(&self) -> &WrightEvalConfig {
        &self.eval
    }

    /// `k₂(u₀-u_m)/(ρ l λ₁ λ₂)`, weight of `F₁` in `F`.
    pub fn liquid_weight(&self) -> f64 {
        let p = &self.params;
        p.k2 * (p.u0 - p.um) / (p.rho * p.latent * self.diff.lambda1 * self.diff.lambda2)
    }

    /// `k₁(u_m-u_i)/(ρ l λ₁²)`, weight of `F₂` in `F`.
    pub fn solid_weight(&self) -> f64 {
        let p = &self.params;
        p.k1 * (p.um - p.ui) / (p.rho * p.latent * self.diff.lambda1 * self.diff.lambda1)
    }
}
