//! Convergence of the fractional solution to the classical one as `α ↗ 1`.

use crate::error::{Error, Result};
use crate::special_fn::FractionalOrder;
use crate::stefan::{
    build_solution, classical_neumann, solve_xi, ClassicalNeumann, SolverOptions, StefanProblem,
};

/// Distances between the solution at one `α` and the classical solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitMetrics {
    pub xi_alpha: f64,
    /// `|ξ_α - 2μ|`.
    pub xi_gap: f64,
    /// `max |u^α - u^1|` over the spatial probes at `t_probe`.
    pub sup_u_gap: f64,
    /// `|s_α(t_probe) - s_1(t_probe)|`.
    pub front_gap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitRow {
    pub alpha: f64,
    /// Solver failures are kept per row so that a sweep always completes.
    pub outcome: Result<LimitMetrics>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitTable {
    pub classical: ClassicalNeumann,
    pub t_probe: f64,
    pub rows: Vec<LimitRow>,
}

impl LimitTable {
    pub fn mu(&self) -> f64 {
        self.classical.mu
    }

    fn column(&self, f: impl Fn(&LimitMetrics) -> f64) -> Option<Vec<f64>> {
        self.rows
            .iter()
            .map(|r| r.outcome.as_ref().ok().map(&f))
            .collect()
    }

    /// `true` when every row solved and each gap column strictly decreases.
    pub fn gaps_decreasing(&self) -> bool {
        let cols = [
            self.column(|m| m.xi_gap),
            self.column(|m| m.sup_u_gap),
            self.column(|m| m.front_gap),
        ];
        cols.iter().all(|c| match c {
            Some(v) => v.windows(2).all(|w| w[1] < w[0]),
            None => false,
        })
    }
}

/// Solves the problem at each `α` and compares it with the classical solution
/// at `t_probe` and the given `x_probes`.
pub fn limit_sweep(
    problem: &StefanProblem,
    alphas: &[f64],
    t_probe: f64,
    x_probes: &[f64],
    opts: &SolverOptions,
) -> Result<LimitTable> {
    if alphas.is_empty() || alphas.iter().any(|&a| !(a > 0.0 && a < 1.0)) {
        return Err(Error::InvalidConfig(format!(
            "sweep orders must lie in (0, 1), got {alphas:?}"
        )));
    }
    if alphas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidConfig(format!(
            "sweep orders must ascend, got {alphas:?}"
        )));
    }
    if !(t_probe > 0.0 && t_probe.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "t_probe must be positive, got {t_probe}"
        )));
    }
    let classical = classical_neumann(&problem.with_alpha(FractionalOrder::CLASSICAL), opts)?;
    let s1 = classical.solution.eval_front(t_probe)?;
    let rows = alphas
        .iter()
        .map(|&alpha| LimitRow {
            alpha,
            outcome: row(problem, &classical, alpha, t_probe, s1, x_probes, opts),
        })
        .collect();
    Ok(LimitTable {
        classical,
        t_probe,
        rows,
    })
}

fn row(
    problem: &StefanProblem,
    classical: &ClassicalNeumann,
    alpha: f64,
    t_probe: f64,
    s1: f64,
    x_probes: &[f64],
    opts: &SolverOptions,
) -> Result<LimitMetrics> {
    let p = problem.with_alpha(FractionalOrder::new(alpha)?);
    let xi = solve_xi(&p, opts)?.xi();
    let sol = build_solution(&p, xi)?;
    let mut sup = 0.0f64;
    for &x in x_probes {
        let ua = sol.temperature(x, t_probe)?.1;
        let u1 = classical.solution.temperature(x, t_probe)?.1;
        sup = sup.max((ua - u1).abs());
    }
    Ok(LimitMetrics {
        xi_alpha: xi,
        xi_gap: (xi - 2.0 * classical.mu).abs(),
        sup_u_gap: sup,
        front_gap: (sol.eval_front(t_probe)? - s1).abs(),
    })
}
