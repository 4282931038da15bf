use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid deformation parameter q = {0}: need q > 0, q != 1, finite")]
    InvalidQ(f64),

    #[error("invalid highest weight: {0}")]
    InvalidWeight(String),

    #[error("invalid sign vector: {0}")]
    InvalidSigns(String),

    #[error("invalid representation spec: {0}")]
    InvalidSpec(String),

    #[error("zero denominator in {0}")]
    ZeroDenominator(String),

    #[error("negative radicand {value:e} in {what}")]
    NegativeRadicand { what: String, value: f64 },

    #[error("pattern not found in basis")]
    NotFound,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("dimension {dim} exceeds the commutant cap {cap}")]
    CapExceeded { dim: usize, cap: usize },

    #[error("could not find a generic algebra element with simple spectrum")]
    DegenerateSpectrum,

    #[error("invariant subspace leakage {residual:e} exceeds tolerance {tol:e}")]
    Leakage { residual: f64, tol: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
