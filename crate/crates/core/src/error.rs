use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different variable contexts")]
    ContextMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("invalid binding for `{0}`: denominator is identically zero")]
    InvalidBinding(String),
    #[error("matrix is not square ({rows}x{cols})")]
    Shape { rows: usize, cols: usize },
    #[error("out of range: {0}")]
    Range(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("Gröbner budget of {0} reduction steps exhausted")]
    Budget(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("model error: {0}")]
    Model(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    /// Budget exhaustion is a resource limit, not a mathematical failure.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_))
    }
}
