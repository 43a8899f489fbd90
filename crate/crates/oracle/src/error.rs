use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("eigensolver did not converge: {0}")]
    NonConvergence(String),
    #[error("indefinite discretization: {0}")]
    Indefinite(String),
    #[error("t = {t} is below the resolvable floor {floor} for the available eigenvalues")]
    TFloor { t: f64, floor: f64 },
    #[error("fit rejected: condition number {condition:e} exceeds {threshold:e}")]
    FitRejected { condition: f64, threshold: f64 },
    #[error(transparent)]
    Core(#[from] heatcoef::Error),
}

pub type Result<T> = std::result::Result<T, OracleError>;
