use thiserror::Error;

use crate::dsl::ast::Pos;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{pos}: {msg}")]
    Parse { pos: Pos, msg: String },

    #[error("{pos}: {msg}")]
    Resolve { pos: Pos, msg: String },

    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Kernel(#[from] pfl_core::Error),
}

impl CliError {
    /// 1 for syntax errors, 3 for violated construction contracts, 2 for
    /// everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } => 1,
            CliError::Kernel(e) if e.is_contract_failure() => 3,
            _ => 2,
        }
    }

    pub(crate) fn resolve(pos: Pos, msg: impl Into<String>) -> CliError {
        CliError::Resolve {
            pos,
            msg: msg.into(),
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
