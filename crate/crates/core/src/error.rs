use thiserror::Error;

use crate::jacobi::DecompReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operands belong to different algebras ({left} vs {right})")]
    SpecMismatch { left: String, right: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid argument: {0}")]
    Usage(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("algebra construction failed: {0}")]
    Construction(String),

    #[error("twisting function violates the cocycle condition at ({f}, {g}, {h})")]
    Cocycle { f: usize, g: usize, h: usize },

    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("{stage} did not converge within {limit} iterations (residual {residual:e})")]
    NotConverged {
        stage: &'static str,
        limit: usize,
        residual: f64,
        partial: Box<DecompReport>,
    },

    #[error("block {block} failed: {source}")]
    Block {
        block: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn dimension(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }
}
