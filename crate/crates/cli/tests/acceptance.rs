//! Acceptance criteria. Runs as a plain binary so that every criterion prints
//! its own pass/fail line; exits nonzero if any criterion fails.

use std::f64::consts::PI;
use std::process::Command;

use fracstefan::caputo::TimeGrid;
use fracstefan::special_fn::{frac_erf, mainardi, wright, FractionalOrder, WrightEvalConfig};
use fracstefan::stefan::{
    build_solution, f2, root_function, solve_xi, NeumannSolution, SolverOptions, StefanProblem,
    ThermalParams,
};
use fracstefan::verify::{
    check_quarter_plane, check_stefan_condition, liquid_samples, pde_refinement,
    quarter_plane_refinement, solid_samples, PhaseKind, QuarterPlaneField, QuarterPlaneKind,
    RefinementStudy, QUARTER_PLANE_SAMPLES,
};

type Outcome = Result<String, String>;

fn order(a: f64) -> FractionalOrder {
    FractionalOrder::new(a).unwrap()
}

fn textbook(a: f64) -> StefanProblem {
    StefanProblem::new(ThermalParams::textbook(), order(a)).unwrap()
}

fn solved(a: f64) -> NeumannSolution {
    let p = textbook(a);
    let r = solve_xi(&p, &SolverOptions::default()).unwrap();
    build_solution(&p, r.xi()).unwrap()
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// `W(-x,-α/2,1)` against `erfc(x/2)` as `α ↗ 1`.
fn erfc_bridge() -> Outcome {
    let cfg = WrightEvalConfig::default();
    let gap = |a: f64| -> f64 {
        (0..=40)
            .map(|i| {
                let x = 0.25 * i as f64;
                (wright(x, order(a), 1.0, &cfg).unwrap().value - libm::erfc(0.5 * x)).abs()
            })
            .fold(0.0, f64::max)
    };
    let (g90, g99, g999) = (gap(0.9), gap(0.99), gap(0.999));
    check(
        g999 < 5e-3 && g999 < g99 && g99 < g90,
        format!("max gap {g90:.3e} (0.9), {g99:.3e} (0.99), {g999:.3e} (0.999) < 5e-3"),
    )
}

fn mainardi_closed_form() -> Outcome {
    let cfg = WrightEvalConfig::default();
    let worst = (0..=1000)
        .map(|i| {
            let x = 0.01 * i as f64;
            let exact = (-0.25 * x * x).exp() / PI.sqrt();
            (mainardi(x, order(1.0), &cfg).unwrap().value - exact).abs()
        })
        .fold(0.0, f64::max);
    check(
        worst <= 1e-14,
        format!("max |M - exp(-x^2/4)/sqrt(pi)| = {worst:.3e} <= 1e-14 on 1001 points"),
    )
}

/// `d/dx (1 - W) = M`, by central differences (second-order one-sided at 0).
fn derivative_identity() -> Outcome {
    let cfg = WrightEvalConfig::default();
    let h = 1e-4;
    let mut worst = 0.0f64;
    for a in [0.25, 0.5, 0.75] {
        let f = |x: f64| frac_erf(x, order(a), &cfg).unwrap();
        for i in 0..=100 {
            let x = 0.05 * i as f64;
            let fd = if x == 0.0 {
                (-3.0 * f(0.0) + 4.0 * f(h) - f(2.0 * h)) / (2.0 * h)
            } else {
                (f(x + h) - f(x - h)) / (2.0 * h)
            };
            worst = worst.max((fd - mainardi(x, order(a), &cfg).unwrap().value).abs());
        }
    }
    check(
        worst <= 1e-6,
        format!("max |FD - M| = {worst:.3e} <= 1e-6 (h = 1e-4)"),
    )
}

fn root_equation() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for a in [0.25, 0.5, 0.75] {
        let p = textbook(a);
        let r = solve_xi(&p, &SolverOptions::default()).map_err(|e| e.to_string())?;
        let worst = r
            .roots
            .iter()
            .zip(&r.residuals)
            .map(|(&x, &res)| res.abs() / (1e-10 * (1.0 + r.gamma_ratio * x)))
            .fold(0.0, f64::max);
        // independent scan with step 1e-3 over (0, 50]
        let mut changes = Vec::new();
        let mut prev = (1e-3, root_function(1e-3, &p).unwrap());
        for i in 2..=50_000 {
            let x = 1e-3 * i as f64;
            let g = root_function(x, &p).unwrap();
            if (g > 0.0) != (prev.1 > 0.0) {
                changes.push((prev.0, x));
            }
            prev = (x, g);
        }
        let missed = changes
            .iter()
            .filter(|(lo, hi)| !r.roots.iter().any(|&x| x >= lo - 1e-9 && x <= hi + 1e-9))
            .count();
        ok &= worst <= 1.0 && missed == 0 && !r.roots.is_empty();
        details.push(format!(
            "alpha {a}: xi = {:.10}, residual/bound = {worst:.2}, scan sign changes = {}, missed = {missed}",
            r.xi(),
            changes.len()
        ));
    }
    check(ok, details.join("; "))
}

/// `μ` from the classical erf/erfc equation with nothing but `libm`.
fn classical_mu(params: &ThermalParams) -> f64 {
    let l1 = (params.k1 / (params.rho * params.c1)).sqrt();
    let l2 = (params.k2 / (params.rho * params.c2)).sqrt();
    let lam = l1 / l2;
    let a = params.k2 * (params.u0 - params.um) / (params.rho * params.latent * l1 * l2);
    let b = params.k1 * (params.um - params.ui) / (params.rho * params.latent * l1 * l1);
    let g = |m: f64| {
        a * (-lam * lam * m * m).exp() / (PI.sqrt() * libm::erf(lam * m))
            - b * (-m * m).exp() / (PI.sqrt() * libm::erfc(m))
            - m
    };
    let (mut lo, mut hi) = (1e-6, 10.0);
    assert!(g(lo) > 0.0 && g(hi) < 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn classical_limit() -> Outcome {
    let mu = classical_mu(&ThermalParams::textbook());
    let gaps: Vec<f64> = [0.8, 0.9, 0.95, 0.99]
        .iter()
        .map(|&a| (solved(a).xi() - 2.0 * mu).abs())
        .collect();
    let monotone = gaps.windows(2).all(|w| w[1] < w[0]);
    check(
        monotone && gaps[3] < gaps[0] / 3.0,
        format!(
            "2 mu = {:.10}; |xi - 2 mu| = {}",
            2.0 * mu,
            gaps.iter()
                .map(|g| format!("{g:.3e}"))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    )
}

fn describe(study: &RefinementStudy) -> String {
    let levels: Vec<String> = study
        .levels
        .iter()
        .map(|l| format!("{:.2e}", l.max_scaled()))
        .collect();
    let ratios: Vec<String> = study.ratios().iter().map(|r| format!("{r:.2}")).collect();
    format!("[{}] ratios [{}]", levels.join(", "), ratios.join(", "))
}

fn pde_residuals() -> Outcome {
    let sol = solved(0.75);
    let grid = TimeGrid::graded_for(1.0, 32, order(0.75)).unwrap();
    let mut details = Vec::new();
    let mut ok = true;
    for (phase, pts) in [
        (PhaseKind::Liquid, liquid_samples(&sol).unwrap()),
        (PhaseKind::Solid, solid_samples(&sol).unwrap()),
    ] {
        let s1 = sol.eval_front(1.0).unwrap();
        let study =
            pde_refinement(&sol, phase, &pts, &grid, 0.02 * s1, 3).map_err(|e| e.to_string())?;
        ok &= study.ratios().len() == 3
            && study.min_ratio() >= 1.4
            && study.finest().max_scaled() < 1e-2;
        details.push(format!("{}: {}", phase.as_str(), describe(&study)));
    }
    check(ok, details.join("; "))
}

fn stefan_condition() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for a in [0.25, 0.5, 0.75] {
        let rep = check_stefan_condition(&solved(a), &[0.5, 1.0, 2.0], 1e-2)
            .map_err(|e| e.to_string())?;
        let residual_spread = rep.residual_scaling_spread.unwrap_or(0.0);
        ok &= rep.max_scaled_residual() <= 1e-8
            && rep.side_scaling_spread <= 1e-2
            && residual_spread <= 1e-2;
        details.push(format!(
            "alpha {a}: residual/scale = {:.2e}, t^(-alpha/2) spread sides {:.1e} residual {}",
            rep.max_scaled_residual(),
            rep.side_scaling_spread,
            rep.residual_scaling_spread
                .map_or("at rounding floor".to_string(), |s| format!("{s:.1e}"))
        ));
    }
    check(ok, details.join("; "))
}

fn quarter_plane() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for a in [0.5, 0.75] {
        let grid = TimeGrid::graded_for(1.0, 32, order(a)).unwrap();
        for kind in [
            QuarterPlaneKind::StepInitial,
            QuarterPlaneKind::BoundarySignal,
        ] {
            let field = QuarterPlaneField {
                kind,
                alpha: order(a),
                amplitude: 1.7,
                lambda: 1.0,
                eval: WrightEvalConfig::default(),
            };
            let rep = check_quarter_plane(&field, &QUARTER_PLANE_SAMPLES, &grid, 0.05)
                .map_err(|e| e.to_string())?;
            let study = quarter_plane_refinement(&field, &QUARTER_PLANE_SAMPLES, &grid, 0.05, 3)
                .map_err(|e| e.to_string())?;
            ok &= rep.boundary_residual <= 1e-14
                && study.ratios().len() == 3
                && study.min_ratio() >= 1.4;
            details.push(format!(
                "{kind:?} alpha {a}: boundary {:.1e}, {}",
                rep.boundary_residual,
                describe(&study)
            ));
        }
    }
    check(ok, details.join("; "))
}

fn f2_figures() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_fracstefan"))
        .args(["f2-scan"])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("f2-scan exited with {:?}", out.status.code()));
    }
    let csv = String::from_utf8(out.stdout).unwrap();
    let mut lines = csv.lines();
    if lines.next() != Some("alpha,x,f2") {
        return Err("unexpected header".into());
    }
    let mut series: Vec<(f64, Vec<(f64, f64)>)> = Vec::new();
    for l in lines {
        let v: Vec<f64> = l.split(',').map(|f| f.parse().unwrap()).collect();
        match series.last_mut() {
            Some((a, pts)) if *a == v[0] => pts.push((v[1], v[2])),
            _ => series.push((v[0], vec![(v[1], v[2])])),
        }
    }
    let expected = [
        1.0 / 16.0,
        1.0 / 8.0,
        1.0 / 4.0,
        3.0 / 8.0,
        0.5,
        5.0 / 8.0,
        0.75,
        7.0 / 8.0,
        15.0 / 16.0,
    ];
    let mut ok = series.iter().map(|s| s.0).collect::<Vec<_>>() == expected;
    let mut worst_zero = 0.0f64;
    for (a, pts) in &series {
        ok &= pts.len() == 500 && pts[0].0 == 0.0 && pts[499].0 == 5.0;
        ok &= pts.windows(2).all(|w| w[1].1 > w[0].1);
        worst_zero = worst_zero.max((pts[0].1 - 1.0 / libm::tgamma(1.0 - a / 2.0)).abs());
    }
    ok &= worst_zero <= 1e-10;
    check(
        ok,
        format!(
            "{} orders x 500 points on [0, 5], all strictly increasing; max |F2(0) - 1/Gamma(1-alpha/2)| = {worst_zero:.1e}",
            series.len()
        ),
    )
}

fn f2_asymptotics() -> Outcome {
    let cfg = WrightEvalConfig::default();
    let mut details = Vec::new();
    let mut ok = true;
    for a in [0.5, 0.75] {
        let p = a / (2.0 - a);
        let ratio = |x: f64| f2(x, order(a), &cfg).unwrap() / ((a / 2.0).powf(p) * x.powf(p));
        let (r50, r200) = (ratio(50.0), ratio(200.0));
        ok &= (0.8..=1.25).contains(&r50) && (r200 - 1.0).abs() < (r50 - 1.0).abs();
        details.push(format!(
            "alpha {a}: ratio {r50:.4} (x=50), {r200:.4} (x=200)"
        ));
    }
    check(ok, details.join("; "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("erfc bridge", erfc_bridge),
        ("Mainardi closed form", mainardi_closed_form),
        ("derivative identity", derivative_identity),
        ("root equation", root_equation),
        ("classical limit", classical_limit),
        ("PDE residuals", pde_residuals),
        ("Stefan condition", stefan_condition),
        ("quarter-plane solutions", quarter_plane),
        ("F2 figures", f2_figures),
        ("F2 asymptotics", f2_asymptotics),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let (status, detail) = match run() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "criterion {:>2} {status} {name} ({:.2}s): {detail}",
            i + 1,
            start.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
