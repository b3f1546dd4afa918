use thiserror::Error;

/// Errors raised by the numerical and physical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("root finder did not converge after {iterations} iterations (last residual {residual})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("integrated state became non-finite at t = {time}")]
    NonFiniteState { time: f64 },

    #[error("finite-difference step {step} is too small at x = {x}")]
    StepTooSmall { step: f64, x: f64 },

    #[error("matrix dimension {dimension} exceeds the dense limit {limit}")]
    DimensionTooLarge { dimension: usize, limit: usize },

    #[error("dimension {dimension} is below the minimum {minimum}")]
    DimensionTooSmall { dimension: usize, minimum: usize },

    #[error("temperature must be strictly positive, got {0}")]
    NonPositiveTemperature(f64),

    #[error("time must be non-negative, got {0}")]
    NegativeTime(f64),

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("ground degeneracy {n0} outside [1, {max}] for dimension {n}")]
    InvalidDegeneracy { n: usize, n0: usize, max: usize },

    #[error("dynamics require a non-degenerate ground level, got degeneracy {0}")]
    UnsupportedDegeneracy(usize),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("state is too close to pure for the Bures correction (1 - |r|^2 = {purity_defect})")]
    SingularState { purity_defect: f64 },

    #[error("covariance matrix is unphysical: {0}")]
    UnphysicalCovariance(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter { name, reason: format!("must be finite and > 0, got {value}") })
    }
}

pub(crate) fn temperature(value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::NonPositiveTemperature(value))
    }
}

pub(crate) fn elapsed(value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::NegativeTime(value))
    }
}
