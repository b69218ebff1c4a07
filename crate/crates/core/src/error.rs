use thiserror::Error;

/// Errors produced by algebra construction and the verification pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("basis is not closed under the bracket: re-expression residual {residual:.3e} exceeds {tolerance:.3e}")]
    ClosureViolation { residual: f64, tolerance: f64 },

    #[error("element left the algebra under conjugation: residual {residual:.3e} exceeds {tolerance:.3e}")]
    ElementLeftAlgebra { residual: f64, tolerance: f64 },

    #[error("numeric kernel rank is ambiguous: singular value gap {gap:.3e} below required {required:.1e}")]
    RankAmbiguity { gap: f64, required: f64 },

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("catalog error: {0}")]
    Catalog(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("numeric failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
