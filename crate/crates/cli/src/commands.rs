//! Subcommands.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use fracstefan::special_fn::{recip_gamma, FractionalOrder};
use fracstefan::stefan::{
    build_solution, classical_neumann, f2, solve_xi, NeumannSolution, Phase, StefanProblem,
};
use fracstefan::verify::{limit_sweep, run_suite, SuiteConfig};
use serde_json::json;

use crate::config::{uniform_grid, Format, Resolved, RunConfig};
use crate::error::CliError;
use crate::output::{emit, fmt_num, Cell, Table};

/// The two families of orders plotted for `F₂`.
pub const F2_SMALL_ORDERS: [f64; 5] = [1.0 / 16.0, 1.0 / 8.0, 1.0 / 4.0, 3.0 / 8.0, 1.0 / 2.0];
pub const F2_LARGE_ORDERS: [f64; 5] = [1.0 / 2.0, 5.0 / 8.0, 3.0 / 4.0, 7.0 / 8.0, 15.0 / 16.0];

/// Orders approaching the classical limit.
pub const SWEEP_ORDERS: [f64; 4] = [0.8, 0.9, 0.95, 0.99];

#[derive(Debug, Parser)]
#[command(
    name = "fracstefan",
    version,
    about = "Two-phase fractional Stefan problem: front coefficient, profiles and verification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Flat JSON run configuration; absent keys take their defaults.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Output file; data go to stdout when absent.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Root solver tolerance in (0, 1e-4].
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Right end of the root scan window.
    #[arg(long = "scan-max", global = true)]
    pub scan_max: Option<f64>,

    /// Comma-separated list of orders. `xi`, `f2-scan` and `limit-sweep` run
    /// each; `profile` and `verify` accept one, overriding the configured order.
    #[arg(long, global = true, value_delimiter = ',', value_name = "LIST")]
    pub alphas: Vec<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for the front coefficient xi and report every root found.
    Xi,
    /// Write temperature profiles (x, t, phase, u) and front positions.
    Profile,
    /// Sample F2 on [0, x_max] for each order.
    F2Scan {
        #[arg(long, default_value_t = 5.0)]
        x_max: f64,
        /// Number of sample points, end points included.
        #[arg(long, default_value_t = 500)]
        n: usize,
    },
    /// Check the closed-form solution against the governing equations.
    Verify {
        /// Multiply xi by this factor before verifying (a negative control).
        #[arg(long, value_name = "FACTOR")]
        perturb_xi: Option<f64>,
    },
    /// Compare solutions at orders approaching 1 with the classical solution.
    LimitSweep,
}

/// Parses the arguments and runs; returns the process exit status.
pub fn main_with(args: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    match run(&cli, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

/// Merges defaults, the config file and the flags, in that order.
pub fn effective_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(out) = &cli.out {
        cfg.out = Some(out.clone());
    }
    if let Some(format) = cli.format {
        cfg.format = format;
    }
    if let Some(tol) = cli.tol {
        cfg.tol = tol;
    }
    if let Some(scan_max) = cli.scan_max {
        cfg.scan_max = scan_max;
    }
    Ok(cfg)
}

pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let mut cfg = effective_config(cli)?;
    if matches!(cli.command, Command::Profile | Command::Verify { .. }) {
        match cli.alphas.as_slice() {
            [] => {}
            [a] => cfg.alpha = *a,
            _ => {
                return Err(CliError::Usage(
                    "profile and verify take a single order in --alphas".into(),
                ))
            }
        }
    }
    let resolved = cfg.resolve()?;
    match &cli.command {
        Command::Xi => cmd_xi(&cfg, &resolved, &cli.alphas, stdout),
        Command::Profile => cmd_profile(&cfg, &resolved, stdout, stderr),
        Command::F2Scan { x_max, n } => {
            cmd_f2_scan(&cfg, &resolved, &cli.alphas, *x_max, *n, stdout, stderr)
        }
        Command::Verify { perturb_xi } => cmd_verify(&cfg, &resolved, *perturb_xi, stdout),
        Command::LimitSweep => cmd_limit_sweep(&cfg, &resolved, &cli.alphas, stdout, stderr),
    }
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Io {
        path: "<stdout>".into(),
        source: e,
    }
}

fn order(alpha: f64) -> Result<FractionalOrder, CliError> {
    FractionalOrder::new(alpha).map_err(|e| CliError::Config(e.to_string()))
}

/// The canonical solution: classical at `α = 1`, smallest root otherwise.
pub fn solve(problem: &StefanProblem, resolved: &Resolved) -> Result<NeumannSolution, CliError> {
    if problem.alpha().is_classical() {
        return Ok(classical_neumann(problem, &resolved.solver)?.solution);
    }
    let report = solve_xi(problem, &resolved.solver)?;
    Ok(build_solution(problem, report.xi())?)
}

/// Summary lines go to stdout when the data went to a file, else to stderr.
fn summary_sink<'a>(
    cfg: &RunConfig,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
) -> &'a mut dyn Write {
    if cfg.out.is_some() {
        stdout
    } else {
        stderr
    }
}

pub fn cmd_xi(
    cfg: &RunConfig,
    resolved: &Resolved,
    alphas: &[f64],
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let orders: Vec<f64> = if alphas.is_empty() {
        vec![cfg.alpha]
    } else {
        alphas.to_vec()
    };
    let lambda = resolved.problem.diffusivities().lambda_ratio;
    let mut text = String::new();
    let mut records = Vec::new();
    for &a in &orders {
        let problem = resolved.problem.with_alpha(order(a)?);
        if problem.alpha().is_classical() {
            let c = classical_neumann(&problem, &resolved.solver)?;
            text += &format!("alpha = 1 (classical)  lambda = {}\n", fmt_num(lambda));
            text += &format!(
                "mu = {}  xi = 2 mu = {}  residual = {:.3e}\n",
                fmt_num(c.mu),
                fmt_num(2.0 * c.mu),
                c.residual
            );
            records.push(json!({
                "alpha": 1.0, "lambda": lambda, "mu": c.mu, "xi": 2.0 * c.mu,
                "roots": [2.0 * c.mu], "residuals": [c.residual],
                "multiplicity_note": "classical equation solved for mu",
            }));
        } else {
            let r = solve_xi(&problem, &resolved.solver)?;
            text += &format!(
                "alpha = {}  gamma(alpha) = {}  lambda = {}\n",
                a,
                fmt_num(r.gamma_ratio),
                fmt_num(lambda)
            );
            for (i, (&x, &res)) in r.roots.iter().zip(&r.residuals).enumerate() {
                text += &format!(
                    "root {}: xi = {}  residual = {:.3e}  bound = {:.3e}\n",
                    i + 1,
                    fmt_num(x),
                    res,
                    r.residual_bound(x)
                );
            }
            text += &format!("note: {}\n", r.multiplicity_note);
            records.push(json!({
                "alpha": a, "lambda": lambda, "gamma_ratio": r.gamma_ratio, "xi": r.xi(),
                "roots": r.roots, "residuals": r.residuals, "tolerance": r.tolerance,
                "scan_max": r.bracket_scan_max, "multiplicity_note": r.multiplicity_note,
            }));
        }
    }
    let body = match cfg.format {
        Format::Json => serde_json::to_string_pretty(&records).expect("json serializes") + "\n",
        Format::Csv => text,
    };
    emit(&body, cfg.out.as_deref(), stdout)
}

/// Rows `(x, t, phase, u)` at each profile time, with one `front` row at
/// `x = s(t)` in its sorted place.
pub fn profile_table(sol: &NeumannSolution, cfg: &RunConfig) -> Result<Table, CliError> {
    let mut table = Table::new(&["x", "t", "phase", "u"]);
    let xs = cfg.x_grid();
    for &t in &cfg.times {
        let s = sol.eval_front(t)?;
        let u_front = sol.eval_u2(s, t)?;
        let mut front_done = false;
        for &x in &xs {
            if !front_done && x >= s {
                table.push(vec![
                    s.into(),
                    t.into(),
                    Phase::Front.as_str().into(),
                    u_front.into(),
                ]);
                front_done = true;
                if x == s {
                    continue;
                }
            }
            let (phase, u) = sol.temperature(x, t)?;
            table.push(vec![x.into(), t.into(), phase.as_str().into(), u.into()]);
        }
        if !front_done {
            table.push(vec![
                s.into(),
                t.into(),
                Phase::Front.as_str().into(),
                u_front.into(),
            ]);
        }
    }
    Ok(table)
}

pub fn cmd_profile(
    cfg: &RunConfig,
    resolved: &Resolved,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let sol = solve(&resolved.problem, resolved)?;
    let table = profile_table(&sol, cfg)?;
    emit(&table.render(cfg.format), cfg.out.as_deref(), stdout)?;
    let log = summary_sink(cfg, stdout, stderr);
    writeln!(log, "xi = {}", fmt_num(sol.xi())).map_err(io_err)?;
    for &t in &cfg.times {
        writeln!(log, "s({t}) = {}", fmt_num(sol.eval_front(t)?)).map_err(io_err)?;
    }
    Ok(())
}

/// Summary of one order in an `F₂` scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct F2Summary {
    pub alpha: f64,
    pub at_zero: f64,
    pub expected_at_zero: f64,
    pub strictly_increasing: bool,
}

pub fn f2_scan(
    resolved: &Resolved,
    alphas: &[f64],
    x_max: f64,
    n: usize,
) -> Result<(Table, Vec<F2Summary>), CliError> {
    if !(x_max > 0.0 && x_max.is_finite()) || n < 2 {
        return Err(CliError::Usage(format!(
            "f2-scan needs x_max > 0 and n >= 2, got x_max = {x_max} and n = {n}"
        )));
    }
    if alphas.iter().any(|&a| !(a > 0.0 && a < 1.0)) {
        return Err(CliError::Usage(format!(
            "f2-scan orders must lie in (0, 1), got {alphas:?}"
        )));
    }
    let cfg = resolved.problem.eval_config();
    let xs = uniform_grid(0.0, x_max, n);
    let mut table = Table::new(&["alpha", "x", "f2"]);
    let mut summaries = Vec::with_capacity(alphas.len());
    for &a in alphas {
        let alpha = order(a)?;
        let values = xs
            .iter()
            .map(|&x| f2(x, alpha, cfg))
            .collect::<Result<Vec<_>, _>>()?;
        for (&x, &v) in xs.iter().zip(&values) {
            table.push(vec![a.into(), x.into(), v.into()]);
        }
        summaries.push(F2Summary {
            alpha: a,
            at_zero: values[0],
            expected_at_zero: recip_gamma(1.0 - alpha.half()),
            strictly_increasing: values.windows(2).all(|w| w[1] > w[0]),
        });
    }
    Ok((table, summaries))
}

/// The two plotted families, `1/2` once.
pub fn default_f2_orders() -> Vec<f64> {
    let mut v: Vec<f64> = F2_SMALL_ORDERS
        .iter()
        .chain(&F2_LARGE_ORDERS)
        .copied()
        .collect();
    v.dedup();
    v
}

pub fn cmd_f2_scan(
    cfg: &RunConfig,
    resolved: &Resolved,
    alphas: &[f64],
    x_max: f64,
    n: usize,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let orders = if alphas.is_empty() {
        default_f2_orders()
    } else {
        alphas.to_vec()
    };
    let (table, summaries) = f2_scan(resolved, &orders, x_max, n)?;
    emit(&table.render(cfg.format), cfg.out.as_deref(), stdout)?;
    let log = summary_sink(cfg, stdout, stderr);
    for s in summaries {
        writeln!(
            log,
            "alpha = {}: F2(0) = {}  1/Gamma(1-alpha/2) = {}  strictly increasing: {}",
            s.alpha,
            fmt_num(s.at_zero),
            fmt_num(s.expected_at_zero),
            if s.strictly_increasing { "yes" } else { "no" }
        )
        .map_err(io_err)?;
    }
    Ok(())
}

pub fn cmd_verify(
    cfg: &RunConfig,
    resolved: &Resolved,
    perturb_xi: Option<f64>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let mut sol = solve(&resolved.problem, resolved)?;
    if let Some(f) = perturb_xi {
        if !(f > 0.0 && f.is_finite()) {
            return Err(CliError::Usage(format!(
                "--perturb-xi must be positive, got {f}"
            )));
        }
        sol = build_solution(sol.problem(), f * sol.xi())?;
    }
    let suite = SuiteConfig {
        solver: resolved.solver,
        ..SuiteConfig::default()
    };
    let report = run_suite(&sol, &suite)?;

    let mut text = format!("alpha = {}  xi = {}\n", cfg.alpha, fmt_num(sol.xi()));
    text += &format!(
        "grid: {} graded steps (x2 per level, {} refinements), h_liquid = {:.3e}, h_solid = {:.3e}\n",
        report.grid_meta.n_steps, report.grid_meta.refinements, report.grid_meta.h_liquid, report.grid_meta.h_solid
    );
    text += &format!(
        "pde residual liquid = {:.3e}  solid = {:.3e}  front residual = {:.3e}\n",
        report.pde_residual_liquid, report.pde_residual_solid, report.stefan_residual
    );
    let mut table = Table::new(&["check", "value", "tolerance", "status", "detail"]);
    for c in &report.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        let bound = if c.tolerance.is_nan() {
            String::new()
        } else if c.name.ends_with("refinement") {
            format!(" >= {:.3e}", c.tolerance)
        } else {
            format!(" <= {:.3e}", c.tolerance)
        };
        text += &format!(
            "{status} {}: {:.3e}{bound}{}\n",
            c.name,
            c.value,
            if c.detail.is_empty() {
                String::new()
            } else {
                format!("  [{}]", c.detail)
            }
        );
        table.push(vec![
            c.name.clone().into(),
            c.value.into(),
            c.tolerance.into(),
            status.into(),
            c.detail.clone().into(),
        ]);
    }
    stdout.write_all(text.as_bytes()).map_err(io_err)?;
    if let Some(path) = cfg.out.as_deref() {
        emit(&table.render(cfg.format), Some(path), stdout)?;
    }
    if report.passed() {
        Ok(())
    } else {
        let names: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        Err(CliError::Verification(names.join(", ")))
    }
}

pub fn cmd_limit_sweep(
    cfg: &RunConfig,
    resolved: &Resolved,
    alphas: &[f64],
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let orders = if alphas.is_empty() {
        SWEEP_ORDERS.to_vec()
    } else {
        alphas.to_vec()
    };
    let table = limit_sweep(
        &resolved.problem,
        &orders,
        cfg.t_probe,
        &cfg.x_grid(),
        &resolved.solver,
    )
    .map_err(|e| match e {
        fracstefan::Error::InvalidConfig(m) => CliError::Usage(m),
        other => other.into(),
    })?;
    let mut out = Table::new(&["alpha", "xi_alpha", "xi_gap", "sup_u_gap", "front_gap"]);
    for row in &table.rows {
        out.push(match &row.outcome {
            Ok(m) => vec![
                row.alpha.into(),
                m.xi_alpha.into(),
                m.xi_gap.into(),
                m.sup_u_gap.into(),
                m.front_gap.into(),
            ],
            Err(e) => {
                let mark = Cell::Text(format!("error: {e}"));
                vec![
                    row.alpha.into(),
                    mark.clone(),
                    mark.clone(),
                    mark.clone(),
                    mark,
                ]
            }
        });
    }
    let xi1 = table.classical.solution.xi();
    out.push(vec![
        1.0.into(),
        xi1.into(),
        0.0.into(),
        0.0.into(),
        0.0.into(),
    ]);
    emit(&out.render(cfg.format), cfg.out.as_deref(), stdout)?;
    let log = summary_sink(cfg, stdout, stderr);
    writeln!(
        log,
        "mu = {}  xi_1 = 2 mu = {}",
        fmt_num(table.mu()),
        fmt_num(xi1)
    )
    .map_err(io_err)?;
    writeln!(
        log,
        "gaps strictly decreasing: {}",
        if table.gaps_decreasing() { "yes" } else { "no" }
    )
    .map_err(io_err)?;
    Ok(())
}
