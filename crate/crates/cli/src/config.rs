//! Run configuration: one flat JSON object, every key optional.
//!
//! | key | meaning | unit |
//! |-----|---------|------|
//! | `k1`, `k2` | solid / liquid conductivity | W·m⁻¹·K⁻¹ |
//! | `c1`, `c2` | solid / liquid specific heat | J·kg⁻¹·K⁻¹ |
//! | `rho` | density | kg·m⁻³ |
//! | `latent` | latent heat | J·kg⁻¹ |
//! | `u0`, `um`, `ui` | boundary, melting and initial temperature | K |
//! | `alpha` | Caputo order in `(0, 1]` | – |
//! | `series_terms_max`, `crossover_x`, `target_rel_err`, `large_arg` | Wright function evaluation | – |
//! | `tol`, `scan_max` | root solver tolerance and scan window | – |
//! | `format` | `csv` or `json` | – |
//! | `out` | output path, stdout when absent | – |
//! | `x_min`, `x_max`, `n_x` | profile grid | m |
//! | `times` | profile times | s |
//! | `t_probe` | time of the classical-limit comparison | s |

use std::fmt;
use std::path::{Path, PathBuf};

use fracstefan::special_fn::{FractionalOrder, LargeArgMethod, WrightEvalConfig};
use fracstefan::stefan::{SolverOptions, StefanProblem, ThermalParams};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LargeArg {
    Quadrature,
    LeadingAsymptotic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub k1: f64,
    pub k2: f64,
    pub c1: f64,
    pub c2: f64,
    pub rho: f64,
    pub latent: f64,
    pub u0: f64,
    pub um: f64,
    pub ui: f64,
    pub alpha: f64,

    pub series_terms_max: usize,
    pub crossover_x: f64,
    pub target_rel_err: f64,
    pub large_arg: LargeArg,

    pub tol: f64,
    pub scan_max: f64,

    pub format: Format,
    pub out: Option<PathBuf>,
    pub x_min: f64,
    pub x_max: f64,
    pub n_x: usize,
    pub times: Vec<f64>,
    pub t_probe: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let p = ThermalParams::textbook();
        let eval = WrightEvalConfig::default();
        let solver = SolverOptions::default();
        RunConfig {
            k1: p.k1,
            k2: p.k2,
            c1: p.c1,
            c2: p.c2,
            rho: p.rho,
            latent: p.latent,
            u0: p.u0,
            um: p.um,
            ui: p.ui,
            alpha: 0.75,
            series_terms_max: eval.series_terms_max(),
            crossover_x: eval.crossover_x(),
            target_rel_err: eval.target_rel_err(),
            large_arg: LargeArg::Quadrature,
            tol: solver.tol,
            scan_max: solver.scan_max,
            format: Format::Csv,
            out: None,
            x_min: 0.0,
            x_max: 5.0,
            n_x: 101,
            times: vec![0.5, 1.0, 2.0],
            t_probe: 1.0,
        }
    }
}

/// What a validated configuration resolves to.
#[derive(Debug, Clone, PartialEq)]
pub struct Resolved {
    pub problem: StefanProblem,
    pub solver: SolverOptions,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.to_path_buf(),
            source: e,
        })?;
        Self::from_json(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn thermal_params(&self) -> ThermalParams {
        ThermalParams {
            k1: self.k1,
            k2: self.k2,
            c1: self.c1,
            c2: self.c2,
            rho: self.rho,
            latent: self.latent,
            u0: self.u0,
            um: self.um,
            ui: self.ui,
        }
    }

    /// Checks every invariant and builds the library objects.
    pub fn resolve(&self) -> Result<Resolved, CliError> {
        let config = |e: fracstefan::Error| CliError::Config(e.to_string());
        let alpha = FractionalOrder::new(self.alpha).map_err(config)?;
        let eval =
            WrightEvalConfig::new(self.series_terms_max, self.crossover_x, self.target_rel_err)
                .map_err(config)?
                .with_large_arg(match self.large_arg {
                    LargeArg::Quadrature => LargeArgMethod::Quadrature,
                    LargeArg::LeadingAsymptotic => LargeArgMethod::LeadingAsymptotic,
                });
        let problem = StefanProblem::new(self.thermal_params(), alpha)
            .map_err(config)?
            .with_eval_config(eval);
        let solver = SolverOptions {
            tol: self.tol,
            scan_max: self.scan_max,
            ..SolverOptions::default()
        };
        solver.validate().map_err(config)?;
        self.validate_grid()?;
        Ok(Resolved { problem, solver })
    }

    fn validate_grid(&self) -> Result<(), CliError> {
        if !(self.x_min >= 0.0 && self.x_max > self.x_min && self.x_max.is_finite()) {
            return Err(CliError::Config(format!(
                "need 0 <= x_min < x_max, got x_min = {} and x_max = {}",
                self.x_min, self.x_max
            )));
        }
        if self.n_x < 2 {
            return Err(CliError::Config(format!(
                "n_x must be at least 2, got {}",
                self.n_x
            )));
        }
        if self.times.is_empty() || self.times.iter().any(|&t| !(t > 0.0 && t.is_finite())) {
            return Err(CliError::Config(format!(
                "times must be a nonempty list of positive values, got {:?}",
                self.times
            )));
        }
        if !(self.t_probe > 0.0 && self.t_probe.is_finite()) {
            return Err(CliError::Config(format!(
                "t_probe must be positive, got {}",
                self.t_probe
            )));
        }
        Ok(())
    }

    /// `n_x` equally spaced points on `[x_min, x_max]`.
    pub fn x_grid(&self) -> Vec<f64> {
        uniform_grid(self.x_min, self.x_max, self.n_x)
    }
}

/// `n ≥ 2` equally spaced points with exact end points.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n - 1) as f64;
    let mut v: Vec<f64> = (0..n).map(|i| lo + step * i as f64).collect();
    v[n - 1] = hi;
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_round_trip() {
        let c = RunConfig::default();
        assert_eq!(RunConfig::from_json(&c.to_json()).unwrap(), c);
        assert!(c.resolve().is_ok());
    }

    #[test]
    fn custom_round_trip() {
        let c = RunConfig {
            k1: 2.5,
            alpha: 0.3,
            large_arg: LargeArg::LeadingAsymptotic,
            format: Format::Json,
            out: Some("profile.json".into()),
            times: vec![0.1, 0.7],
            tol: 1.0000000000000002e-9,
            ..RunConfig::default()
        };
        assert_eq!(RunConfig::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn partial_documents_fill_defaults() {
        let c = RunConfig::from_json(r#"{"alpha": 0.5, "u0": 3}"#).unwrap();
        assert_eq!(c.alpha, 0.5);
        assert_eq!(c.u0, 3.0);
        assert_eq!(c.k1, 1.0);
        assert_eq!(c.times, vec![0.5, 1.0, 2.0]);
    }

    #[test]
    fn diagnostics_name_the_problem() {
        let msg = |json: &str| match RunConfig::from_json(json).and_then(|c| c.resolve()) {
            Err(CliError::Config(m)) => m,
            other => panic!("expected config error, got {other:?}"),
        };
        assert!(msg(r#"{"ui": 0.5}"#).contains("ui < um"));
        assert!(msg(r#"{"u0": -1}"#).contains("um < u0"));
        assert!(msg(r#"{"alpha": 1.5}"#).contains("alpha"));
        assert!(msg(r#"{"tol": 0.1}"#).contains("tol"));
        assert!(msg(r#"{"n_x": 1}"#).contains("n_x"));
        assert!(msg(r#"{"bogus": 1}"#).contains("bogus"));
        assert!(
            msg(r#"{"format": "xml"}"#).contains("format")
                || msg(r#"{"format": "xml"}"#).contains("xml")
        );
    }

    #[test]
    fn grid_has_exact_ends() {
        let g = uniform_grid(0.0, 5.0, 500);
        assert_eq!(g.len(), 500);
        assert_eq!((g[0], g[499]), (0.0, 5.0));
        assert!(g.windows(2).all(|w| w[1] > w[0]));
    }
}
