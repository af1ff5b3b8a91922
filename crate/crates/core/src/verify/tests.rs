use super::pde::residual_at;
use super::*;
use crate::special_fn::{FractionalOrder, WrightEvalConfig};
use crate::stefan::{build_solution, solve_xi, StefanProblem, ThermalParams};

fn order(a: f64) -> FractionalOrder {
    FractionalOrder::new(a).unwrap()
}

fn solved_with(params: ThermalParams, a: f64) -> NeumannSolution {
    let p = StefanProblem::new(params, order(a)).unwrap();
    let r = solve_xi(&p, &SolverOptions::default()).unwrap();
    build_solution(&p, r.xi()).unwrap()
}

fn solved(a: f64) -> NeumannSolution {
    solved_with(ThermalParams::textbook(), a)
}

fn describe(rep: &ResidualReport) -> String {
    rep.failures()
        .map(|c| format!("{}: {} vs {} ({})", c.name, c.value, c.tolerance, c.detail))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn suite_passes_on_textbook_problem() {
    for a in [0.25, 0.75, 1.0] {
        let rep = run_suite(&solved(a), &SuiteConfig::default()).unwrap();
        assert!(rep.passed(), "alpha={a}\n{}", describe(&rep));
        assert!(rep.pde_residual_liquid >= 0.0 && rep.stefan_residual >= 0.0);
        assert_eq!(
            rep.grid_meta.spacing,
            crate::caputo::Spacing::Graded(2.0 / a)
        );
    }
}

#[test]
fn suite_passes_on_unequal_materials() {
    let params = ThermalParams {
        k1: 2.2,
        k2: 0.6,
        c1: 2.1,
        c2: 4.2,
        rho: 1.0,
        latent: 3.3,
        u0: 4.0,
        um: 0.0,
        ui: -2.0,
    };
    let rep = run_suite(&solved_with(params, 0.6), &SuiteConfig::default()).unwrap();
    assert!(rep.passed(), "{}", describe(&rep));
}

#[test]
fn perturbed_xi_fails_front_balance() {
    let good = solved(0.75);
    let bad = build_solution(good.problem(), 1.1 * good.xi()).unwrap();
    let rep = run_suite(&bad, &SuiteConfig::default()).unwrap();
    assert!(!rep.passed());
    let names: Vec<&str> = rep.failures().map(|c| c.name.as_str()).collect();
    assert!(names.contains(&"front balance"), "{names:?}");
    // the perturbed profiles still solve the PDEs and match at the front
    assert!(!names.iter().any(|n| n.contains("PDE")), "{names:?}");
}

#[test]
fn constant_field_has_zero_residual() {
    let grid = TimeGrid::graded_for(1.0, 32, order(0.5)).unwrap();
    for a in [0.5, 1.0] {
        let r = residual_at(&|_, _| Ok(1.5), 1.0, order(a), 1.0, 1.0, &grid, 0.01, 1.5).unwrap();
        assert_eq!(r.residual, 0.0);
    }
}

#[test]
fn liquid_point_meets_tolerance() {
    let sol = solved(0.75);
    let x = 0.3 * sol.eval_front(1.0).unwrap();
    let grid = TimeGrid::graded_for(1.0, 64, order(0.75)).unwrap();
    let rep = check_pde(&sol, PhaseKind::Liquid, &[(x, 1.0)], &grid, 0.01).unwrap();
    assert!(rep.max_scaled() < 1e-2, "{}", rep.max_scaled());
}

#[test]
fn rejects_points_near_front_or_outside_phase() {
    let sol = solved(0.5);
    let grid = TimeGrid::graded_for(1.0, 16, order(0.5)).unwrap();
    let s = sol.eval_front(1.0).unwrap();
    for (phase, x) in [
        (PhaseKind::Liquid, 0.95 * s),
        (PhaseKind::Liquid, 0.005),
        (PhaseKind::Liquid, 1.2 * s),
        (PhaseKind::Solid, 1.01 * s),
        (PhaseKind::Solid, 0.5 * s),
    ] {
        let e = check_pde(&sol, phase, &[(x, 1.0)], &grid, 0.01).unwrap_err();
        assert!(
            matches!(e, Error::RejectedSample { .. }),
            "{phase:?} {x}: {e}"
        );
    }
    assert!(check_pde(&sol, PhaseKind::Solid, &[(2.0 * s, 1.0)], &grid, 0.0).is_err());
}

#[test]
fn quarter_plane_identities_and_convergence() {
    let grid = TimeGrid::graded_for(1.0, 16, order(0.5)).unwrap();
    for kind in [
        QuarterPlaneKind::StepInitial,
        QuarterPlaneKind::BoundarySignal,
    ] {
        let field = QuarterPlaneField {
            kind,
            alpha: order(0.5),
            amplitude: 2.5,
            lambda: 1.3,
            eval: WrightEvalConfig::default(),
        };
        let rep = check_quarter_plane(&field, &[(1.0, 1.0)], &grid, 0.05).unwrap();
        assert_eq!(rep.boundary_residual, 0.0);
        assert!(rep.initial_residual < 1e-12);
        let study = quarter_plane_refinement(&field, &[(1.0, 1.0)], &grid, 0.05, 3).unwrap();
        assert!(study.min_ratio() > 1.5, "{:?}", study.ratios());
    }
}

#[test]
fn stefan_condition_details() {
    let sol = solved(0.5);
    let rep = check_stefan_condition(&sol, &[0.5, 1.0, 2.0], 1e-2).unwrap();
    assert!(rep.max_scaled_residual() < 1e-8);
    assert!(rep.fd_agrees());
    assert!(rep.side_scaling_spread < 1e-12);
    for r in &rep.rows {
        assert!(r.liquid_flux < 0.0 && r.solid_flux < 0.0);
        assert!(r.fd_bound < 1e-3 * r.scale);
    }
    assert!(check_stefan_condition(&sol, &[], 1e-2).is_err());
    assert!(check_stefan_condition(&sol, &[-1.0], 1e-2).is_err());
}

#[test]
fn limit_sweep_table() {
    let p = StefanProblem::new(ThermalParams::textbook(), order(0.5)).unwrap();
    let probes = [0.2, 0.6, 1.0, 1.4, 2.0];
    let t = limit_sweep(
        &p,
        &[0.8, 0.9, 0.95, 0.99],
        1.0,
        &probes,
        &SolverOptions::default(),
    )
    .unwrap();
    assert!(t.gaps_decreasing());
    assert_eq!(t.rows.len(), 4);
    assert_eq!(t.classical.solution.xi(), 2.0 * t.mu());
    for r in &t.rows {
        let m = r.outcome.as_ref().unwrap();
        assert!(m.xi_alpha > 0.0 && m.xi_alpha.is_finite());
    }
    let opts = SolverOptions::default();
    assert!(limit_sweep(&p, &[0.9, 0.8], 1.0, &probes, &opts).is_err());
    assert!(limit_sweep(&p, &[0.9, 1.0], 1.0, &probes, &opts).is_err());
    assert!(limit_sweep(&p, &[], 1.0, &probes, &opts).is_err());
}

#[test]
fn suite_config_validation() {
    let sol = solved(0.5);
    for cfg in [
        SuiteConfig {
            n_steps: 4,
            ..Default::default()
        },
        SuiteConfig {
            refinements: 0,
            ..Default::default()
        },
        SuiteConfig {
            h_rel: 0.5,
            ..Default::default()
        },
    ] {
        assert!(matches!(
            run_suite(&sol, &cfg),
            Err(Error::InvalidConfig(_))
        ));
    }
}
