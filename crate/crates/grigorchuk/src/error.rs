use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("line {line}: {msg}")]
    Graph { line: usize, msg: String },
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("stuck: {0}")]
    Stuck(String),
    #[error("not in psi(H): {0}")]
    NotInPsiH(String),
    #[error("unbounded: {0}")]
    Unbounded(String),
    #[error("no bound: {0}")]
    NoBound(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
