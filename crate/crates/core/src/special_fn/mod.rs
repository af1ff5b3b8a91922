//! Wright and Mainardi functions on the negative real axis.
//!
//! Everything here evaluates `W(-x, -α/2, β)` for `x ≥ 0` and the two values of
//! `β` that appear in the Stefan solution:
//!
//! * `β = 1` gives the fractional complementary error function, with
//!   `W(-x, -1/2, 1) = erfc(x/2)`;
//! * `β = 1 - α/2` gives the Mainardi function `M_{α/2}(x)`, with
//!   `M_{1/2}(x) = e^{-x²/4}/√π`.
//!
//! Near the origin the power series is summed with compensation. Further out the
//! series cancels catastrophically, so a positive-integrand quadrature takes over
//! (see [`kanter`]). The leading-order asymptotic forms are available both as
//! standalone functions and as an opt-in large-argument branch.

mod asymptotic;
mod gamma;
mod kanter;
mod series;

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

pub use asymptotic::{
    asymptotic_b, asymptotic_c, asymptotic_d, f2_asymptotic, mainardi_asymptotic, wright_asymptotic,
};
pub use gamma::{gamma, recip_gamma};

use kanter::KanterIntegrals;

/// Order `α ∈ (0, 1]` of the Caputo time derivative.
///
/// `α = 1` is the classical heat equation; the fractional evaluators switch to
/// the erf/Gaussian closed forms there.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    pub const CLASSICAL: FractionalOrder = FractionalOrder(1.0);

    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > 0.0 && alpha <= 1.0 {
            Ok(FractionalOrder(alpha))
        } else {
            Err(Error::InvalidOrder(alpha))
        }
    }

    /// Rejects `α = 1` for operations that only make sense for a genuinely
    /// fractional order.
    pub fn fractional(alpha: f64) -> Result<Self> {
        let order = Self::new(alpha)?;
        if order.is_classical() {
            return Err(Error::ClassicalOrder);
        }
        Ok(order)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `ν = α/2`, the Mainardi index.
    pub fn half(self) -> f64 {
        0.5 * self.0
    }

    pub fn is_classical(self) -> bool {
        self.0 == 1.0
    }
}

impl TryFrom<f64> for FractionalOrder {
    type Error = Error;

    fn try_from(alpha: f64) -> Result<Self> {
        Self::new(alpha)
    }
}

impl fmt::Display for FractionalOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// How `W` is evaluated beyond `crossover_x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LargeArgMethod {
    /// Positive-integrand quadrature; accurate to near machine precision.
    #[default]
    Quadrature,
    /// Leading term of the large-`x` expansion only.
    LeadingAsymptotic,
}

/// Series/large-argument crossover and accuracy policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WrightEvalConfig {
    series_terms_max: usize,
    crossover_x: f64,
    target_rel_err: f64,
    large_arg: LargeArgMethod,
}

impl WrightEvalConfig {
    pub const DEFAULT_SERIES_TERMS_MAX: usize = 500;
    pub const DEFAULT_CROSSOVER_X: f64 = 8.0;
    pub const DEFAULT_TARGET_REL_ERR: f64 = 1e-10;

    pub fn new(series_terms_max: usize, crossover_x: f64, target_rel_err: f64) -> Result<Self> {
        if series_terms_max < 30 {
            return Err(Error::InvalidConfig(format!(
                "series_terms_max must be at least 30, got {series_terms_max}"
            )));
        }
        if !(crossover_x.is_finite() && crossover_x > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "crossover_x must be positive, got {crossover_x}"
            )));
        }
        if !(target_rel_err > 0.0 && target_rel_err < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "target_rel_err must lie in (0, 1), got {target_rel_err}"
            )));
        }
        Ok(WrightEvalConfig {
            series_terms_max,
            crossover_x,
            target_rel_err,
            large_arg: LargeArgMethod::Quadrature,
        })
    }

    pub fn with_large_arg(mut self, method: LargeArgMethod) -> Self {
        self.large_arg = method;
        self
    }

    pub fn series_terms_max(&self) -> usize {
        self.series_terms_max
    }

    pub fn crossover_x(&self) -> f64 {
        self.crossover_x
    }

    pub fn target_rel_err(&self) -> f64 {
        self.target_rel_err
    }

    pub fn large_arg(&self) -> LargeArgMethod {
        self.large_arg
    }
}

impl Default for WrightEvalConfig {
    fn default() -> Self {
        WrightEvalConfig {
            series_terms_max: Self::DEFAULT_SERIES_TERMS_MAX,
            crossover_x: Self::DEFAULT_CROSSOVER_X,
            target_rel_err: Self::DEFAULT_TARGET_REL_ERR,
            large_arg: LargeArgMethod::Quadrature,
        }
    }
}

/// Which branch produced a [`WrightValue`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMethod {
    Series,
    Integral,
    Asymptotic,
    ClosedFormHalf,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WrightValue {
    pub value: f64,
    pub est_abs_err: f64,
    pub method: EvalMethod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    /// β = 1
    Complementary,
    /// β = 1 - α/2
    Mainardi,
}

fn classify(beta: f64, nu: f64) -> Option<Kind> {
    const SAME: f64 = 1e-14;
    if (beta - 1.0).abs() <= SAME {
        Some(Kind::Complementary)
    } else if (beta - (1.0 - nu)).abs() <= SAME {
        Some(Kind::Mainardi)
    } else {
        None
    }
}

fn check_arg(x: f64) -> Result<()> {
    if x >= 0.0 {
        Ok(())
    } else {
        Err(Error::NegativeArgument(x))
    }
}

fn closed_half(x: f64, kind: Kind) -> WrightValue {
    let value = match kind {
        Kind::Complementary => libm::erfc(0.5 * x),
        Kind::Mainardi => (-0.25 * x * x).exp() / PI.sqrt(),
    };
    WrightValue {
        value,
        est_abs_err: 4.0 * f64::EPSILON * value,
        method: EvalMethod::ClosedFormHalf,
    }
}

/// `x^{ν/(1-ν)}/(1-ν)`, the Mainardi prefactor of the quadrature form.
fn mainardi_prefactor(x: f64, nu: f64) -> f64 {
    x.powf(nu / (1.0 - nu)) / (1.0 - nu)
}

fn integral_value(x: f64, nu: f64, kind: Kind) -> WrightValue {
    let k = KanterIntegrals::compute(x, nu);
    let decay = k.decay();
    let (value, err) = match kind {
        Kind::Complementary => (decay * k.j0, decay * k.err0),
        Kind::Mainardi => {
            let pre = mainardi_prefactor(x, nu);
            (pre * decay * k.j1, pre * decay * k.err1)
        }
    };
    WrightValue {
        value,
        est_abs_err: err + 8.0 * f64::EPSILON * value.abs(),
        method: EvalMethod::Integral,
    }
}

fn asymptotic_value(x: f64, alpha: FractionalOrder, kind: Kind) -> WrightValue {
    match kind {
        Kind::Complementary => wright_asymptotic(x, alpha),
        Kind::Mainardi => mainardi_asymptotic(x, alpha),
    }
}

fn series_value(s: &series::SeriesSum) -> WrightValue {
    WrightValue {
        value: s.value,
        est_abs_err: s.est_abs_err,
        method: EvalMethod::Series,
    }
}

fn series_accepted(s: &series::SeriesSum, cfg: &WrightEvalConfig) -> bool {
    s.est_abs_err <= cfg.target_rel_err * s.value.abs()
}

/// `W(-x, -α/2, β)` for `x ≥ 0`.
///
/// Up to `crossover_x` the compensated series is used whenever its own error
/// estimate meets `target_rel_err`; otherwise, and beyond the crossover, the
/// large-argument branch selected in `cfg` is used. Only `β = 1` and
/// `β = 1 - α/2` have a large-argument branch; any other `β` is series-only.
pub fn wright(
    x: f64,
    alpha: FractionalOrder,
    beta: f64,
    cfg: &WrightEvalConfig,
) -> Result<WrightValue> {
    check_arg(x)?;
    let nu = alpha.half();
    let kind = classify(beta, nu);
    if alpha.is_classical() {
        if let Some(kind) = kind {
            return Ok(closed_half(x, kind));
        }
    }

    if x <= cfg.crossover_x {
        let series = series::wright_series(x, nu, beta, false, cfg.series_terms_max);
        return match (series, kind) {
            (Ok(s), None) => Ok(series_value(&s)),
            (Ok(s), Some(_)) if series_accepted(&s, cfg) => Ok(series_value(&s)),
            (Err(e), None) => Err(e),
            // cancellation too strong for double precision
            (_, Some(kind)) => Ok(integral_value(x, nu, kind)),
        };
    }

    match kind {
        None => Err(Error::UnsupportedBeta { beta, x }),
        Some(kind) => Ok(match cfg.large_arg {
            LargeArgMethod::Quadrature => integral_value(x, nu, kind),
            LargeArgMethod::LeadingAsymptotic => asymptotic_value(x, alpha, kind),
        }),
    }
}

/// Mainardi function `M_{α/2}(x) = W(-x, -α/2, 1 - α/2)`.
pub fn mainardi(x: f64, alpha: FractionalOrder, cfg: &WrightEvalConfig) -> Result<WrightValue> {
    wright(x, alpha, 1.0 - alpha.half(), cfg)
}

/// Fractional error function `1 - W(-x, -α/2, 1)` with its error estimate.
///
/// Near the origin the series is summed without its leading `1`, so small
/// values keep full relative accuracy.
pub fn frac_erf_value(
    x: f64,
    alpha: FractionalOrder,
    cfg: &WrightEvalConfig,
) -> Result<WrightValue> {
    check_arg(x)?;
    if alpha.is_classical() {
        let value = libm::erf(0.5 * x);
        return Ok(WrightValue {
            value,
            est_abs_err: 4.0 * f64::EPSILON * value,
            method: EvalMethod::ClosedFormHalf,
        });
    }
    if x <= cfg.crossover_x {
        if let Ok(s) = series::wright_series(x, alpha.half(), 1.0, true, cfg.series_terms_max) {
            if series_accepted(&s, cfg) {
                return Ok(WrightValue {
                    value: -s.value,
                    est_abs_err: s.est_abs_err,
                    method: EvalMethod::Series,
                });
            }
        }
    }
    let w = wright(x, alpha, 1.0, cfg)?;
    Ok(WrightValue {
        value: 1.0 - w.value,
        est_abs_err: w.est_abs_err + f64::EPSILON,
        method: w.method,
    })
}

/// Fractional error function `1 - W(-x, -α/2, 1)`, a value in `[0, 1)`.
pub fn frac_erf(x: f64, alpha: FractionalOrder, cfg: &WrightEvalConfig) -> Result<f64> {
    frac_erf_value(x, alpha, cfg).map(|v| v.value)
}

/// `Γ(1 + α/2) / Γ(1 - α/2)`, the Caputo derivative of `t^{α/2}` at `t = 1`.
pub fn gamma_ratio(alpha: FractionalOrder) -> f64 {
    let nu = alpha.half();
    libm::tgamma(1.0 + nu) / libm::tgamma(1.0 - nu)
}

/// Beyond this argument `erfc(x/2)` is too close to underflow for the closed
/// form ratio.
const CLOSED_RATIO_LIMIT: f64 = 50.0;

/// `M_{α/2}(x) / W(-x, -α/2, 1)` without forming either factor when they
/// would underflow.
pub fn mainardi_over_wright(x: f64, alpha: FractionalOrder, cfg: &WrightEvalConfig) -> Result<f64> {
    check_arg(x)?;
    let nu = alpha.half();
    if alpha.is_classical() && x < CLOSED_RATIO_LIMIT {
        return Ok(closed_half(x, Kind::Mainardi).value / libm::erfc(0.5 * x));
    }
    if x <= cfg.crossover_x && !alpha.is_classical() {
        let m = series::wright_series(x, nu, 1.0 - nu, false, cfg.series_terms_max);
        let w = series::wright_series(x, nu, 1.0, false, cfg.series_terms_max);
        if let (Ok(m), Ok(w)) = (m, w) {
            if series_accepted(&m, cfg) && series_accepted(&w, cfg) {
                return Ok(m.value / w.value);
            }
        }
    } else if cfg.large_arg == LargeArgMethod::LeadingAsymptotic && x > cfg.crossover_x {
        return Ok(f2_asymptotic(x, alpha));
    }
    let k = KanterIntegrals::compute(x, nu);
    Ok(mainardi_prefactor(x, nu) * k.j1 / k.j0)
}

/// `M_{α/2}(x) / (1 - W(-x, -α/2, 1))`; `+∞` at `x = 0`.
pub fn mainardi_over_frac_erf(
    x: f64,
    alpha: FractionalOrder,
    cfg: &WrightEvalConfig,
) -> Result<f64> {
    check_arg(x)?;
    if !alpha.is_classical() && x > cfg.crossover_x && cfg.large_arg == LargeArgMethod::Quadrature {
        let nu = alpha.half();
        let k = KanterIntegrals::compute(x, nu);
        let decay = k.decay();
        return Ok(mainardi_prefactor(x, nu) * decay * k.j1 / (1.0 - decay * k.j0));
    }
    let denom = frac_erf_value(x, alpha, cfg)?;
    if denom.value <= 0.0 {
        return Ok(f64::INFINITY);
    }
    let m = mainardi(x, alpha, cfg)?;
    Ok(m.value / denom.value)
}
