//! The energy balance at the front, `k₁u₁ₓ - k₂u₂ₓ = ρl D^α s`.

use crate::caputo::caputo_power;
use crate::error::{Error, Result};
use crate::stefan::NeumannSolution;

/// The balance at one time, from closed forms and from finite differences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StefanRow {
    pub t: f64,
    pub liquid_flux: f64,
    pub solid_flux: f64,
    /// `k₁u₁ₓ - k₂u₂ₓ` from the closed-form fluxes.
    pub lhs: f64,
    /// `ρlλ₁ξ D^α t^{α/2}` with the exact Caputo derivative of a power.
    pub rhs: f64,
    pub residual: f64,
    /// `|rhs|`, the natural size of either side.
    pub scale: f64,
    /// `k₁u₁ₓ - k₂u₂ₓ` from Richardson-extrapolated one-sided differences.
    pub fd_lhs: f64,
    /// Error bound of `fd_lhs`: the change between the last two extrapolants
    /// plus a rounding floor.
    pub fd_bound: f64,
}

impl StefanRow {
    pub fn scaled_residual(&self) -> f64 {
        self.residual / self.scale
    }

    pub fn fd_gap(&self) -> f64 {
        (self.fd_lhs - self.lhs).abs()
    }

    pub fn fd_agrees(&self) -> bool {
        self.fd_gap() <= self.fd_bound
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StefanReport {
    pub rows: Vec<StefanRow>,
    /// Largest relative spread of `lhs·t^{α/2}` and `rhs·t^{α/2}` across times.
    pub side_scaling_spread: f64,
    /// Relative spread of `residual·t^{α/2}` across times, or `None` when the
    /// residual is at the rounding floor and carries no scaling information.
    pub residual_scaling_spread: Option<f64>,
}

impl StefanReport {
    pub fn max_scaled_residual(&self) -> f64 {
        self.rows
            .iter()
            .map(StefanRow::scaled_residual)
            .fold(0.0, f64::max)
    }

    pub fn max_residual(&self) -> f64 {
        self.rows.iter().map(|r| r.residual).fold(0.0, f64::max)
    }

    pub fn fd_agrees(&self) -> bool {
        self.rows.iter().all(StefanRow::fd_agrees)
    }
}

fn spread(values: &[f64]) -> f64 {
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let mag = values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    if mag == 0.0 {
        0.0
    } else {
        (hi - lo) / mag
    }
}

/// Below this multiple of `ε·scale` a residual is treated as rounding noise.
const RESIDUAL_FLOOR: f64 = 1e4;

/// Checks the front condition at each time. One-sided differences use
/// `h = h_rel·s(t)` and its halvings.
pub fn check_stefan_condition(
    sol: &NeumannSolution,
    times: &[f64],
    h_rel: f64,
) -> Result<StefanReport> {
    if times.is_empty() {
        return Err(Error::InvalidConfig("no probe times given".into()));
    }
    if !(h_rel > 0.0 && h_rel < 0.5) {
        return Err(Error::InvalidConfig(format!(
            "h_rel must lie in (0, 0.5), got {h_rel}"
        )));
    }
    let p = sol.problem();
    let params = p.params();
    let lambda1 = p.diffusivities().lambda1;
    let alpha = p.alpha();
    let mut rows = Vec::with_capacity(times.len());
    for &t in times {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "probe time must be positive, got {t}"
            )));
        }
        let (liquid_flux, solid_flux) = sol.flux_at_front(t)?;
        let lhs = params.k1 * solid_flux - params.k2 * liquid_flux;
        let rhs =
            params.rho * params.latent * lambda1 * sol.xi() * caputo_power(alpha.half(), alpha, t)?;

        let s = sol.eval_front(t)?;
        let um_l = sol.liquid_formula(s, t)?;
        let um_s = sol.solid_formula(s, t)?;
        let one_sided = |h: f64| -> Result<f64> {
            let du2 = (um_l - sol.liquid_formula(s - h, t)?) / h;
            let du1 = (sol.solid_formula(s + h, t)? - um_s) / h;
            Ok(params.k1 * du1 - params.k2 * du2)
        };
        let h = h_rel * s;
        let (d1, d2, d4) = (one_sided(h)?, one_sided(0.5 * h)?, one_sided(0.25 * h)?);
        let coarse = 2.0 * d2 - d1;
        let fine = 2.0 * d4 - d2;
        let temps = params
            .u0
            .abs()
            .max(params.ui.abs())
            .max(params.um.abs())
            .max(1.0);
        let rounding = 64.0 * f64::EPSILON * temps * (params.k1 + params.k2) / (0.25 * h);

        rows.push(StefanRow {
            t,
            liquid_flux,
            solid_flux,
            lhs,
            rhs,
            residual: (lhs - rhs).abs(),
            scale: rhs.abs(),
            fd_lhs: fine,
            fd_bound: (fine - coarse).abs() + rounding,
        });
    }

    let weight = |r: &StefanRow| r.t.powf(alpha.half());
    let lhs_scaled: Vec<f64> = rows.iter().map(|r| r.lhs * weight(r)).collect();
    let rhs_scaled: Vec<f64> = rows.iter().map(|r| r.rhs * weight(r)).collect();
    let above_floor = rows
        .iter()
        .all(|r| r.residual > RESIDUAL_FLOOR * f64::EPSILON * r.scale);
    let residual_scaling_spread = above_floor.then(|| {
        let v: Vec<f64> = rows.iter().map(|r| (r.lhs - r.rhs) * weight(r)).collect();
        spread(&v)
    });
    Ok(StefanReport {
        side_scaling_spread: spread(&lhs_scaled).max(spread(&rhs_scaled)),
        residual_scaling_spread,
        rows,
    })
}
