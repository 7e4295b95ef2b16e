use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the documented domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// Evaluation requested at a pole.
    #[error("pole: {0}")]
    Pole(String),
    /// A series, quadrature or search failed to reach its tolerance.
    #[error("no convergence: {0}")]
    NonConvergence(String),
    /// Input larger than the supported magnitude.
    #[error("unsupported size: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
