use thiserror::Error;

/// Largest supported number of variables.
pub const MAX_VARS: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoolFnError {
    #[error("number of variables {m} is outside [1, {MAX_VARS}]")]
    Range { m: u32 },

    #[error("malformed truth table: {0}")]
    Format(String),

    #[error("{0}")]
    Domain(String),

    #[error("dimension mismatch: {left} vs {right} variables")]
    DimensionMismatch { left: u32, right: u32 },

    #[error("{op} is limited to m <= {max} (got m = {m})")]
    CostGuard { op: &'static str, m: u32, max: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("integer overflow while accumulating {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, BoolFnError>;

pub(crate) fn check_vars(m: u32) -> Result<()> {
    if (1..=MAX_VARS).contains(&m) {
        Ok(())
    } else {
        Err(BoolFnError::Range { m })
    }
}

pub(crate) fn cost_guard(op: &'static str, m: u32, max: u32) -> Result<()> {
    if m > max {
        Err(BoolFnError::CostGuard { op, m, max })
    } else {
        Ok(())
    }
}
