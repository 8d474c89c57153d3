use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CasimirError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported Bessel order {0}")]
    UnsupportedOrder(String),

    #[error("series {series} did not converge within {max_index} terms per axis (value {value:e}, error bound {error_bound:e})")]
    NonConvergence {
        series: String,
        max_index: u64,
        value: f64,
        error_bound: f64,
    },

    #[error("adaptive quadrature failed: {0}")]
    Quadrature(String),

    #[error("no sign change in bracket [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },

    #[error("invalid precision policy: {0}")]
    InvalidPolicy(String),
}

pub type Result<T> = std::result::Result<T, CasimirError>;

pub(crate) fn require_positive(name: &str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(CasimirError::Domain(format!(
            "{name} must be a positive finite number, got {value}"
        )))
    }
}
