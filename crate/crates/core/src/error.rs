use thiserror::Error;

/// Failures raised by the numerical routes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("series diverges: {0}")]
    Divergent(String),
    #[error("accuracy check failed: {0}")]
    Accuracy(String),
    #[error("truncation check failed: {0}")]
    Truncation(String),
    #[error("order {p} exceeds the configured budget {max}")]
    OrderBudget { p: usize, max: usize },
    #[error("singular determinant: {0}")]
    Singular(String),
    #[error("determinant zero crossed: first zero at lambda = {lambda_zero}")]
    BeyondFirstZero { lambda_zero: f64 },
    #[error("point lies on a branch cut: {0}")]
    Branch(String),
    #[error("point too close to the unit circle: distance {0}")]
    NearCircle(f64),
    #[error("zero reflection coefficient at index {0}")]
    ZeroReflection(usize),
    #[error("Toeplitz determinant I_{0} vanishes")]
    Existence(usize),
    #[error("non-positive norm kappa_{0}^2")]
    NonPositiveNorm(usize),
    #[error("stencil leaves (0,1): {0}")]
    Stencil(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
