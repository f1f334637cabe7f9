use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown task {0:?}; run with --list for the known ids")]
    UnknownTask(String),
    #[error("convention ledger hash {found} does not match this build ({expected})")]
    LedgerMismatch { expected: String, found: String },
    #[error("golden report is for task {golden:?}, report is for {report:?}")]
    TaskMismatch { report: String, golden: String },
    #[error("bad parameter {name}: {reason}")]
    BadParameter { name: String, reason: String },
    #[error(transparent)]
    Core(#[from] fda_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;
