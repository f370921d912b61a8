use thiserror::Error;

/// Errors raised while validating inputs or evaluating the game.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("shock {shock} lies outside the support [-{bound}, {bound}]")]
    ShockOutOfSupport { shock: f64, bound: f64 },

    #[error("the printed extreme-case discretion rule needs lambda in {{0, 1}}, got {0}")]
    LambdaNotExtreme(f64),

    #[error("simulation needs at least one draw")]
    NoDraws,

    #[error("invalid search box: {0}")]
    InvalidSearchBox(String),
}

pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> ModelError {
    ModelError::InvalidParameter {
        field,
        reason: reason.into(),
    }
}
