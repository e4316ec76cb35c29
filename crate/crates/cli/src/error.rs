use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] algdecomp::Error),

    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{origin}:{line}: {msg}")]
    Format {
        origin: String,
        line: usize,
        msg: String,
    },

    #[error("{0}")]
    Contract(String),
}

pub mod exit {
    pub const OK: u8 = 0;
    pub const USAGE: u8 = 2;
    pub const SPEC_MISMATCH: u8 = 3;
    pub const NOT_CONVERGED: u8 = 4;
    pub const CHECK_FAILED: u8 = 5;
}

fn core_code(e: &algdecomp::Error) -> u8 {
    use algdecomp::Error as E;
    match e {
        E::SpecMismatch { .. } => exit::SPEC_MISMATCH,
        E::NotConverged { .. } => exit::NOT_CONVERGED,
        E::Block { source, .. } => core_code(source),
        E::Construction(_) | E::Cocycle { .. } => exit::CHECK_FAILED,
        E::Dimension(_) | E::Usage(_) | E::Unsupported(_) | E::Parse { .. } => exit::USAGE,
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => core_code(e),
            CliError::Usage(_) | CliError::Io { .. } | CliError::Format { .. } => exit::USAGE,
            CliError::Contract(_) => exit::CHECK_FAILED,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_errors_take_the_code_of_their_cause() {
        let inner = algdecomp::Error::SpecMismatch {
            left: "a".into(),
            right: "b".into(),
        };
        let e = CliError::Core(algdecomp::Error::Block {
            block: 2,
            source: Box::new(inner),
        });
        assert_eq!(e.exit_code(), exit::SPEC_MISMATCH);
        assert_eq!(
            CliError::Contract("x".into()).exit_code(),
            exit::CHECK_FAILED
        );
        assert_eq!(CliError::Usage("x".into()).exit_code(), exit::USAGE);
    }
}
