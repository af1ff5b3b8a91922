//! The transcendental equation for the front coefficient `ξ`.

use crate::error::{Error, Result};
use crate::special_fn::{
    gamma_ratio, mainardi_over_frac_erf, mainardi_over_wright, FractionalOrder, WrightEvalConfig,
};

use super::StefanProblem;

/// `F₁(x) = M_{α/2}(x) / (1 - W(-x,-α/2,1))`. Decreasing from `+∞` at `0⁺` to `0`.
pub fn f1(x: f64, alpha: FractionalOrder, cfg: &WrightEvalConfig) -> Result<f64> {
    mainardi_over_frac_erf(x, alpha, cfg)
}

/// `F₂(x) = M_{α/2}(x) / W(-x,-α/2,1)`, with `F₂(0) = 1/Γ(1-α/2)`.
///
/// Past the point where both factors underflow the ratio is still formed from
/// the scaled quadrature (or from the leading asymptotic growth when that
/// large-argument method is configured).
pub fn f2(x: f64, alpha: FractionalOrder, cfg: &WrightEvalConfig) -> Result<f64> {
    mainardi_over_wright(x, alpha, cfg)
}

/// `F(x) = k₂(u₀-u_m)/(ρlλ₁λ₂) F₁(λx) - k₁(u_m-u_i)/(ρlλ₁²) F₂(x)`.
pub fn big_f(x: f64, problem: &StefanProblem) -> Result<f64> {
    let alpha = problem.alpha();
    let cfg = problem.eval_config();
    let lambda = problem.diffusivities().lambda_ratio;
    let liquid = f1(lambda * x, alpha, cfg)?;
    let solid = f2(x, alpha, cfg)?;
    Ok(problem.liquid_weight() * liquid - problem.solid_weight() * solid)
}

/// `G(x) = F(x) - Γ(1+α/2)/Γ(1-α/2) x`; `ξ` is a positive zero of `G`.
pub fn root_function(x: f64, problem: &StefanProblem) -> Result<f64> {
    Ok(big_f(x, problem)? - gamma_ratio(problem.alpha()) * x)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Bracket width and residual scale; must lie in `(0, 1e-4]`.
    pub tol: f64,
    /// Right end of the scan window.
    pub scan_max: f64,
    /// Left end of the scan window; `G > 0` there since `F₁(0⁺) = +∞`.
    pub left_end: f64,
    /// Ratio between consecutive scan nodes.
    pub growth: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol: 1e-10,
            scan_max: 50.0,
            left_end: 1e-8,
            growth: 1.01,
        }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol <= 1e-4) {
            return Err(Error::InvalidConfig(format!(
                "tol must lie in (0, 1e-4], got {}",
                self.tol
            )));
        }
        if !(self.left_end > 0.0 && self.scan_max > self.left_end && self.scan_max.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "scan window ({}, {}] is empty",
                self.left_end, self.scan_max
            )));
        }
        if !(self.growth > 1.0 && self.growth.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "scan growth must exceed 1, got {}",
                self.growth
            )));
        }
        Ok(())
    }
}

/// All positive roots found in the scan window, smallest first.
#[derive(Debug, Clone, PartialEq)]
pub struct RootReport {
    pub roots: Vec<f64>,
    /// `G(r)` at each root.
    pub residuals: Vec<f64>,
    pub bracket_scan_max: f64,
    pub tolerance: f64,
    pub gamma_ratio: f64,
    pub multiplicity_note: String,
}

impl RootReport {
    /// The canonical coefficient: the smallest root.
    pub fn xi(&self) -> f64 {
        self.roots[0]
    }

    /// Residual bound `tol (1 + γ r)` used to accept root `r`.
    pub fn residual_bound(&self, r: f64) -> f64 {
        self.tolerance * (1.0 + self.gamma_ratio * r)
    }
}

/// Finds the sign changes of `g` on a geometric grid over `[left, right]` and
/// bisects each. Accepts a root once the bracket is below `tol` and
/// `|g| ≤ tol · weight(x)`, or once the bracket cannot shrink further.
pub(crate) fn scan_roots<G, W>(g: G, weight: W, opts: &SolverOptions) -> Result<Vec<(f64, f64)>>
where
    G: Fn(f64) -> Result<f64>,
    W: Fn(f64) -> f64,
{
    let mut roots = Vec::new();
    let mut x0 = opts.left_end;
    let mut g0 = g(x0)?;
    if g0 == 0.0 {
        roots.push((x0, 0.0));
    }
    while x0 < opts.scan_max {
        let x1 = (x0 * opts.growth).min(opts.scan_max);
        let g1 = g(x1)?;
        if g1 == 0.0 {
            roots.push((x1, 0.0));
        } else if g0 != 0.0 && (g0 > 0.0) != (g1 > 0.0) {
            roots.push(bisect(&g, &weight, (x0, g0), (x1, g1), opts.tol)?);
        }
        x0 = x1;
        g0 = g1;
    }
    Ok(roots)
}

fn bisect<G, W>(
    g: &G,
    weight: &W,
    (mut lo, mut g_lo): (f64, f64),
    (mut hi, _): (f64, f64),
    tol: f64,
) -> Result<(f64, f64)>
where
    G: Fn(f64) -> Result<f64>,
    W: Fn(f64) -> f64,
{
    let mut best = (lo, g_lo);
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(best);
        }
        let g_mid = g(mid)?;
        if g_mid.abs() < best.1.abs() {
            best = (mid, g_mid);
        }
        if g_mid == 0.0 || (hi - lo <= tol && g_mid.abs() <= tol * weight(mid)) {
            return Ok((mid, g_mid));
        }
        if (g_mid > 0.0) == (g_lo > 0.0) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
}

/// Solves `F(ξ) = Γ(1+α/2)/Γ(1-α/2) ξ` on `(0, scan_max]`.
///
/// Existence of a root follows from `G(0⁺) = +∞` and `G(+∞) = -∞`; uniqueness is
/// not known, so every sign change in the window is reported and the smallest
/// root is taken as `ξ`.
pub fn solve_xi(problem: &StefanProblem, opts: &SolverOptions) -> Result<RootReport> {
    opts.validate()?;
    let gamma = gamma_ratio(problem.alpha());
    let found = scan_roots(|x| root_function(x, problem), |x| 1.0 + gamma * x, opts)?;
    if found.is_empty() {
        return Err(Error::NoRoot {
            scan_max: opts.scan_max,
        });
    }
    let multiplicity_note = match found.len() {
        1 => format!("single root in (0, {}]", opts.scan_max),
        n => format!(
            "{n} roots in (0, {}]; uniqueness is not guaranteed, the smallest is used as xi",
            opts.scan_max
        ),
    };
    Ok(RootReport {
        roots: found.iter().map(|r| r.0).collect(),
        residuals: found.iter().map(|r| r.1).collect(),
        bracket_scan_max: opts.scan_max,
        tolerance: opts.tol,
        gamma_ratio: gamma,
        multiplicity_note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fn::f2_asymptotic;
    use crate::stefan::ThermalParams;
    use approx::assert_relative_eq;

    fn order(a: f64) -> FractionalOrder {
        FractionalOrder::new(a).unwrap()
    }

    fn textbook(a: f64) -> StefanProblem {
        StefanProblem::new(ThermalParams::textbook(), order(a)).unwrap()
    }

    #[test]
    fn f1_limits() {
        let c = WrightEvalConfig::default();
        assert_eq!(f1(0.0, order(0.5), &c).unwrap(), f64::INFINITY);
        assert!(f1(1e-10, order(0.5), &c).unwrap() > 1e9);
        assert!(f1(60.0, order(0.5), &c).unwrap() < 1e-30);
        // α = 1: (e^{-1/4}/√π) / erf(1/2)
        assert_relative_eq!(
            f1(1.0, order(1.0), &c).unwrap(),
            0.84417174373582318,
            max_relative = 1e-14
        );
    }

    #[test]
    fn f1_decreasing() {
        let c = WrightEvalConfig::default();
        for a in [0.25, 0.5, 0.75] {
            let mut prev = f64::INFINITY;
            for i in 1..=200 {
                let v = f1(0.1 * i as f64, order(a), &c).unwrap();
                assert!(v < prev && v > 0.0);
                prev = v;
            }
        }
    }

    #[test]
    fn f2_limits() {
        let c = WrightEvalConfig::default();
        assert_relative_eq!(
            f2(0.0, order(0.5), &c).unwrap(),
            0.81604893909826298,
            max_relative = 1e-14
        );
        for a in [0.5, 0.75] {
            let big = f2(1e3, order(a), &c).unwrap();
            assert!(big > f2(1e2, order(a), &c).unwrap());
            assert!((big / f2_asymptotic(1e3, order(a)) - 1.0).abs() < 0.01);
        }
    }

    #[test]
    fn big_f_limits_and_symmetry() {
        let p = textbook(0.5);
        assert!(big_f(1e-8, &p).unwrap() > 1e7);
        assert!(big_f(1e6, &p).unwrap() < -10.0);
        // k1=k2, c1=c2, u0-um ≠ um-ui here; check the algebraic form directly
        let c = p.eval_config();
        for x in [0.3, 1.0, 4.0] {
            let expected = 1.5 * f1(x, p.alpha(), c).unwrap() - 0.5 * f2(x, p.alpha(), c).unwrap();
            assert_relative_eq!(big_f(x, &p).unwrap(), expected, max_relative = 1e-15);
        }
        let mut sym = ThermalParams::textbook();
        sym.u0 = 0.5;
        let p = StefanProblem::new(sym, order(0.5)).unwrap();
        for x in [0.3, 1.0, 4.0] {
            let expected = 0.5 * (f1(x, p.alpha(), c).unwrap() - f2(x, p.alpha(), c).unwrap());
            assert_relative_eq!(big_f(x, &p).unwrap(), expected, max_relative = 1e-14);
        }
    }

    #[test]
    fn solve_reports_residual_within_contract() {
        for a in [0.25, 0.5, 0.75, 1.0] {
            let p = textbook(a);
            let r = solve_xi(&p, &SolverOptions::default()).unwrap();
            assert!(!r.roots.is_empty());
            for (&x, &res) in r.roots.iter().zip(&r.residuals) {
                assert!(x > 0.0);
                assert!(
                    res.abs() <= r.residual_bound(x),
                    "alpha={a} root={x} res={res}"
                );
                assert_eq!(res, root_function(x, &p).unwrap());
            }
            assert_eq!(r.multiplicity_note, "single root in (0, 50]");
        }
    }

    #[test]
    fn solver_option_validation() {
        let p = textbook(0.5);
        for opts in [
            SolverOptions {
                tol: 0.0,
                ..Default::default()
            },
            SolverOptions {
                tol: 1e-3,
                ..Default::default()
            },
            SolverOptions {
                scan_max: 1e-9,
                ..Default::default()
            },
            SolverOptions {
                growth: 1.0,
                ..Default::default()
            },
        ] {
            assert!(matches!(solve_xi(&p, &opts), Err(Error::InvalidConfig(_))));
        }
    }

    #[test]
    fn too_small_window_has_no_root() {
        let p = textbook(0.5);
        let opts = SolverOptions {
            scan_max: 1e-3,
            ..Default::default()
        };
        assert_eq!(solve_xi(&p, &opts), Err(Error::NoRoot { scan_max: 1e-3 }));
    }

    #[test]
    fn scan_reports_every_sign_change() {
        // three simple roots at 1, 2, 3
        let g = |x: f64| Ok((x - 1.0) * (x - 2.0) * (3.0 - x));
        let roots = scan_roots(g, |_| 1.0, &SolverOptions::default()).unwrap();
        let xs: Vec<f64> = roots.iter().map(|r| r.0).collect();
        assert_eq!(xs.len(), 3);
        for (x, want) in xs.iter().zip([1.0, 2.0, 3.0]) {
            assert!((x - want).abs() < 1e-10);
        }
    }
}
