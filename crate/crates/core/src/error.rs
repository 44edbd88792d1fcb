use thiserror::Error;

/// Errors reported by the evaluation, root-finding and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("overflow evaluating {what} at order {order}, x = {x}")]
    Overflow { what: &'static str, order: f64, x: f64 },

    #[error("{routine} failed to converge on [{lo}, {hi}]")]
    Convergence { routine: &'static str, lo: f64, hi: f64 },

    #[error("d(nu) does not change sign on [{lo}, {hi}] (d(lo) = {d_lo}, d(hi) = {d_hi})")]
    NoSignChange { lo: f64, hi: f64, d_lo: f64, d_hi: f64 },

    #[error("zero index crossing near nu = {nu}: {detail}")]
    IndexCrossing { nu: f64, detail: String },

    #[error("insufficient zeros: need at least {needed}, have {available}")]
    InsufficientZeros { needed: usize, available: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
