use horoclif_core::Error;

use crate::wire::Diagnostic;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed or invalid input. Exit code 2.
    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Core(#[from] Error),

    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("cannot write CSV: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(
                Error::NonInvertible { .. }
                | Error::Domain { .. }
                | Error::DegenerateFlag { .. }
                | Error::BaseMismatch
                | Error::SharedCenter
                | Error::Degenerate { .. },
            ) => 3,
            _ => 2,
        }
    }

    pub fn diagnostic(&self) -> Diagnostic {
        let (clause, residual) = match self {
            CliError::Core(e) => (e.clause().map(String::from), e.residual()),
            _ => (None, None),
        };
        Diagnostic { error: self.to_string(), clause, residual }
    }
}
