//! Independent checks that a closed-form solution satisfies the Stefan system.
//!
//! Nothing here reuses the derivation of the solution: the PDEs are checked
//! with the L1 Caputo scheme and central differences on sampled values, the
//! front condition against the exact Caputo derivative of a power and against
//! one-sided differences, and the `α ↗ 1` limit against a separately solved
//! classical solution.

mod front;
mod limit;
mod pde;

use std::collections::BTreeMap;

pub use front::{check_stefan_condition, StefanReport, StefanRow};
pub use limit::{limit_sweep, LimitMetrics, LimitRow, LimitTable};
pub use pde::{
    admissible, check_pde, check_quarter_plane, pde_refinement, quarter_plane_refinement,
    refinement_study, PdeReport, PhaseKind, PointResidual, QuarterPlaneField, QuarterPlaneKind,
    QuarterPlaneReport, RefinementStudy,
};

use crate::caputo::{Spacing, TimeGrid};
use crate::error::{Error, Result};
use crate::stefan::{NeumannSolution, SolverOptions};

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckLine {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: String,
}

impl CheckLine {
    /// Passes when `value ≤ tolerance`.
    fn at_most(name: &str, value: f64, tolerance: f64, detail: String) -> Self {
        CheckLine {
            name: name.into(),
            value,
            tolerance,
            passed: value <= tolerance,
            detail,
        }
    }

    /// Passes when `value ≥ tolerance`.
    fn at_least(name: &str, value: f64, tolerance: f64, detail: String) -> Self {
        CheckLine {
            name: name.into(),
            value,
            tolerance,
            passed: value >= tolerance,
            detail,
        }
    }
}

/// Resolution used for the PDE checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridMeta {
    pub n_steps: usize,
    pub spacing: Spacing,
    pub refinements: usize,
    pub h_liquid: f64,
    pub h_solid: f64,
}

/// Everything the verification suite measured, with the tolerance applied to
/// each check.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    /// Largest absolute PDE residual in the liquid at the finest resolution.
    pub pde_residual_liquid: f64,
    pub pde_residual_solid: f64,
    /// Largest absolute closed-form residual of the front condition.
    pub stefan_residual: f64,
    /// Largest violation of each boundary, interface and initial condition.
    pub bc_residuals: BTreeMap<String, f64>,
    pub grid_meta: GridMeta,
    pub checks: Vec<CheckLine>,
}

impl ResidualReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Resolutions and tolerances of [`run_suite`]. The defaults run in a few
/// seconds.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    /// Time steps of the coarsest grid, graded with exponent `2/α`.
    pub n_steps: usize,
    /// Number of joint 2× refinements after the coarsest level.
    pub refinements: usize,
    /// `h_x` as a fraction of the smallest distance from a sample to a boundary.
    pub h_rel: f64,
    pub stefan_times: Vec<f64>,
    /// One-sided difference step as a fraction of `s(t)`.
    pub stefan_h_rel: f64,
    pub sweep_alphas: Vec<f64>,
    pub t_probe: f64,
    pub solver: SolverOptions,
    /// Bound on the scaled PDE residual at the finest level.
    pub pde_tol: f64,
    /// Lower bound on the residual reduction per refinement.
    pub min_ratio: f64,
    /// Bound on the scaled closed-form front residual.
    pub stefan_tol: f64,
    /// Bound on the relative spread of `t^{α/2}`-scaled front quantities.
    pub scaling_tol: f64,
    /// Bound on exact boundary identities, relative to the temperature range.
    pub exact_tol: f64,
    /// Bound on interface, far-field and initial values, relative likewise.
    pub interface_tol: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n_steps: 32,
            refinements: 3,
            h_rel: 0.1,
            stefan_times: vec![0.5, 1.0, 2.0],
            stefan_h_rel: 1e-2,
            sweep_alphas: vec![0.8, 0.9, 0.95, 0.99],
            t_probe: 1.0,
            solver: SolverOptions::default(),
            pde_tol: 1e-2,
            min_ratio: 1.4,
            stefan_tol: 1e-8,
            scaling_tol: 1e-2,
            exact_tol: 1e-14,
            interface_tol: 1e-10,
        }
    }
}

/// Probe times of the PDE checks.
pub const PDE_TIMES: [f64; 5] = [0.5, 0.8, 1.0, 1.5, 2.0];

/// Five liquid sample points, each well behind the front.
pub fn liquid_samples(sol: &NeumannSolution) -> Result<Vec<(f64, f64)>> {
    let shrink = 2f64.powf(-sol.problem().alpha().half());
    PDE_TIMES
        .iter()
        .zip([0.15, 0.3, 0.45, 0.6, 0.75])
        .map(|(&t, f)| Ok((f * shrink * sol.eval_front(t)?, t)))
        .collect()
}

/// Five solid sample points ahead of the front.
pub fn solid_samples(sol: &NeumannSolution) -> Result<Vec<(f64, f64)>> {
    PDE_TIMES
        .iter()
        .zip([1.2, 1.5, 2.0, 2.5, 3.0])
        .map(|(&t, f)| Ok((f * sol.eval_front(t)?, t)))
        .collect()
}

/// Quarter-plane sample points `(x, t)` for unit `λ`.
pub const QUARTER_PLANE_SAMPLES: [(f64, f64); 5] =
    [(1.0, 1.0), (0.5, 1.0), (2.0, 1.5), (1.5, 0.7), (0.8, 2.0)];

fn min_distance(sol: &NeumannSolution, phase: PhaseKind, pts: &[(f64, f64)]) -> Result<f64> {
    let mut d = f64::INFINITY;
    for &(x, t) in pts {
        let s = sol.eval_front(t)?;
        d = d.min(match phase {
            PhaseKind::Liquid => x.min(s - x),
            PhaseKind::Solid => x - s,
        });
    }
    Ok(d)
}

fn study_lines(name: &str, study: &RefinementStudy, cfg: &SuiteConfig, lines: &mut Vec<CheckLine>) {
    let ratios = study.ratios();
    let levels: Vec<String> = study
        .levels
        .iter()
        .map(|l| format!("{:.3e}", l.max_scaled()))
        .collect();
    lines.push(CheckLine::at_most(
        &format!("{name} residual"),
        study.finest().max_scaled(),
        cfg.pde_tol,
        format!("scaled max residual by level: {}", levels.join(", ")),
    ));
    lines.push(CheckLine::at_least(
        &format!("{name} refinement"),
        study.min_ratio(),
        cfg.min_ratio,
        format!(
            "ratios: {}",
            ratios
                .iter()
                .map(|r| format!("{r:.3}"))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    ));
}

/// Runs every check on `sol` and collects the results.
pub fn run_suite(sol: &NeumannSolution, cfg: &SuiteConfig) -> Result<ResidualReport> {
    validate_suite(cfg)?;
    let p = sol.problem();
    let params = *p.params();
    let alpha = p.alpha();
    let range = (params.u0 - params.ui).abs();
    let grid = TimeGrid::graded_for(1.0, cfg.n_steps, alpha)?;
    let mut checks = Vec::new();

    let liquid_pts = liquid_samples(sol)?;
    let solid_pts = solid_samples(sol)?;
    let h_liquid = cfg.h_rel * min_distance(sol, PhaseKind::Liquid, &liquid_pts)?;
    let h_solid = cfg.h_rel * min_distance(sol, PhaseKind::Solid, &solid_pts)?;
    let liquid = pde_refinement(
        sol,
        PhaseKind::Liquid,
        &liquid_pts,
        &grid,
        h_liquid,
        cfg.refinements,
    )?;
    let solid = pde_refinement(
        sol,
        PhaseKind::Solid,
        &solid_pts,
        &grid,
        h_solid,
        cfg.refinements,
    )?;
    study_lines("liquid PDE", &liquid, cfg, &mut checks);
    study_lines("solid PDE", &solid, cfg, &mut checks);

    let stefan = check_stefan_condition(sol, &cfg.stefan_times, cfg.stefan_h_rel)?;
    checks.push(CheckLine::at_most(
        "front balance",
        stefan.max_scaled_residual(),
        cfg.stefan_tol,
        "closed-form fluxes vs rho l D^alpha s, relative to |rhs|".into(),
    ));
    checks.push(CheckLine::at_most(
        "front balance t-scaling",
        stefan.side_scaling_spread,
        cfg.scaling_tol,
        match stefan.residual_scaling_spread {
            Some(s) => format!("both sides ~ t^(-alpha/2); residual spread {s:.3e}"),
            None => "both sides ~ t^(-alpha/2); residual at rounding floor".into(),
        },
    ));
    if let Some(s) = stefan.residual_scaling_spread {
        checks.push(CheckLine::at_most(
            "front residual t-scaling",
            s,
            cfg.scaling_tol,
            "residual * t^(alpha/2) across probe times".into(),
        ));
    }
    let worst_fd = stefan
        .rows
        .iter()
        .map(|r| r.fd_gap() / r.fd_bound)
        .fold(0.0, f64::max);
    checks.push(CheckLine::at_most(
        "front flux differences",
        worst_fd,
        1.0,
        "one-sided difference gap / extrapolated error bound".into(),
    ));

    let mut bc = BTreeMap::new();
    let mut record = |name: &str, v: f64| {
        let e = bc.entry(name.to_string()).or_insert(0.0f64);
        *e = e.max(v);
    };
    for &t in &cfg.stefan_times {
        let s = sol.eval_front(t)?;
        let far = s + 60.0 * p.diffusivities().lambda1 * t.powf(alpha.half());
        record("u2(0,t) = u0", (sol.eval_u2(0.0, t)? - params.u0).abs());
        record("u2(s,t) = um", (sol.eval_u2(s, t)? - params.um).abs());
        record("u1(s,t) = um", (sol.eval_u1(s, t)? - params.um).abs());
        record("u1(far,t) = ui", (sol.eval_u1(far, t)? - params.ui).abs());
        record(
            "u1(x,0) = ui",
            (sol.solid_formula(s, 0.0)? - params.ui).abs(),
        );
    }
    record("s(0) = 0", sol.eval_front(0.0)?);

    let h_quarter = cfg.h_rel * 0.5;
    for (kind, bname, iname) in [
        (QuarterPlaneKind::StepInitial, "v(0,t) = 0", "v(x,0+) = f0"),
        (
            QuarterPlaneKind::BoundarySignal,
            "w(0,t) = g0",
            "w(x,0+) = 0",
        ),
    ] {
        let field = QuarterPlaneField {
            kind,
            alpha,
            amplitude: range,
            lambda: 1.0,
            eval: *p.eval_config(),
        };
        let report = check_quarter_plane(&field, &QUARTER_PLANE_SAMPLES, &grid, h_quarter)?;
        record(bname, report.boundary_residual);
        record(iname, report.initial_residual);
        let study = quarter_plane_refinement(
            &field,
            &QUARTER_PLANE_SAMPLES,
            &grid,
            h_quarter,
            cfg.refinements,
        )?;
        let label = match kind {
            QuarterPlaneKind::StepInitial => "quarter-plane v PDE",
            QuarterPlaneKind::BoundarySignal => "quarter-plane w PDE",
        };
        study_lines(label, &study, cfg, &mut checks);
    }

    for (name, &v) in &bc {
        let exact = matches!(
            name.as_str(),
            "u2(0,t) = u0" | "s(0) = 0" | "v(0,t) = 0" | "w(0,t) = g0" | "u1(x,0) = ui"
        );
        let tol = if exact {
            cfg.exact_tol
        } else {
            cfg.interface_tol
        } * range.max(1.0);
        checks.push(CheckLine::at_most(name, v, tol, String::new()));
    }

    let x_probes: Vec<f64> = (1..=20)
        .map(|i| 0.15 * i as f64 * sol.eval_front(cfg.t_probe).unwrap_or(1.0))
        .collect();
    let table = limit_sweep(p, &cfg.sweep_alphas, cfg.t_probe, &x_probes, &cfg.solver)?;
    let failed: Vec<String> = table
        .rows
        .iter()
        .filter_map(|r| {
            r.outcome
                .as_ref()
                .err()
                .map(|e| format!("alpha={}: {e}", r.alpha))
        })
        .collect();
    checks.push(CheckLine {
        name: "classical limit".into(),
        value: table
            .rows
            .last()
            .and_then(|r| r.outcome.as_ref().ok())
            .map_or(f64::NAN, |m| m.xi_gap),
        tolerance: f64::NAN,
        passed: table.gaps_decreasing(),
        detail: if failed.is_empty() {
            format!(
                "mu = {:.12}; xi, u and front gaps strictly decreasing",
                table.mu()
            )
        } else {
            failed.join("; ")
        },
    });

    Ok(ResidualReport {
        pde_residual_liquid: liquid.finest().max_abs(),
        pde_residual_solid: solid.finest().max_abs(),
        stefan_residual: stefan.max_residual(),
        bc_residuals: bc,
        grid_meta: GridMeta {
            n_steps: cfg.n_steps,
            spacing: grid.spacing(),
            refinements: cfg.refinements,
            h_liquid,
            h_solid,
        },
        checks,
    })
}

/// Validates a suite configuration before a run.
pub fn validate_suite(cfg: &SuiteConfig) -> Result<()> {
    if cfg.n_steps < TimeGrid::MIN_STEPS || cfg.refinements == 0 {
        return Err(Error::InvalidConfig(
            "suite needs at least 8 steps and one refinement".into(),
        ));
    }
    if !(cfg.h_rel > 0.0 && cfg.h_rel <= 0.3) {
        return Err(Error::InvalidConfig(format!(
            "h_rel must lie in (0, 0.3], got {}",
            cfg.h_rel
        )));
    }
    cfg.solver.validate()
}

#[cfg(test)]
mod tests;
