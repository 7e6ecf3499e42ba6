use thiserror::Error;

/// Errors raised by instance construction, cut evaluation and search.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("lambda-simplex-violation: multipliers sum to {sum}, expected 1")]
    LambdaSimplex { sum: String },

    #[error("graph mismatch: expected Δ({expected_k},{expected_n}), found Δ({found_k},{found_n})")]
    GraphMismatch {
        expected_k: usize,
        expected_n: u32,
        found_k: usize,
        found_n: u32,
    },

    #[error("invalid labeling: {0}")]
    InvalidLabeling(String),

    #[error("node {node} on the face is labeled with the off-face terminal and cannot be restricted")]
    NonRestrictable { node: usize },

    #[error("budget-exhausted: {needed} labelings required, budget is {budget}")]
    BudgetExhausted { needed: u128, budget: u128 },

    #[error("weights cannot be scaled to 128-bit integers")]
    ScaleOverflow,

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Short machine-readable code, used for CLI stderr payloads.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidParameter(_) => "invalid-parameter",
            Error::LambdaSimplex { .. } => "lambda-simplex-violation",
            Error::GraphMismatch { .. } => "invalid-parameter",
            Error::InvalidLabeling(_) => "invalid-labeling",
            Error::NonRestrictable { .. } => "non-restrictable",
            Error::BudgetExhausted { .. } => "budget-exhausted",
            Error::ScaleOverflow => "scale-overflow",
            Error::Parse(_) => "parse-error",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
