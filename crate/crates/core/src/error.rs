use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("geometry: {0}")]
    Geometry(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("slab {slab}: singular or ill-posed system ({hint})")]
    Singular { slab: usize, hint: String },
    #[error("slab {slab}: residual {residual:.3e} exceeds tolerance {tol:.1e}")]
    Residual { slab: usize, residual: f64, tol: f64 },
    #[error("budget: {0}")]
    Budget(String),
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
