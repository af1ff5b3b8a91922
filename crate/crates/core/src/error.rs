use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("fractional order must satisfy 0 < alpha <= 1, got {0}")]
    InvalidOrder(f64),
    #[error("operation requires a fractional order alpha < 1, got alpha = 1")]
    ClassicalOrder,
    #[error("Gamma function has a pole at {0}")]
    Pole(f64),
    #[error("argument must be nonnegative, got {0}")]
    NegativeArgument(f64),
    #[error("series for W(-{x}) did not converge within {terms} terms")]
    NonConvergence { x: f64, terms: usize },
    #[error("beta = {beta} is not supported beyond the series range (x = {x})")]
    UnsupportedBeta { beta: f64, x: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("no sign change of the root function found in (0, {scan_max}]")]
    NoRoot { scan_max: f64 },
    #[error("x = {x} lies outside the {phase} region at t = {t} (front at {front})")]
    OutsidePhase {
        x: f64,
        t: f64,
        front: f64,
        phase: &'static str,
    },
    #[error("invalid time grid: {0}")]
    InvalidGrid(String),
    #[error("sample point ({x}, {t}) rejected: {reason}")]
    RejectedSample { x: f64, t: f64, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
