use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("size limit exceeded: n = {n} > cap {cap}")]
    SizeLimit { n: usize, cap: usize },

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("improvement step broke its contract: {0}")]
    Contract(String),

    #[error("theta classes inconsistent: {0}")]
    ClassMismatch(String),

    #[error("no witness: {0}")]
    NoWitness(String),

    #[error("generator produced an instance outside its class: {0}")]
    GenerationBug(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::InvariantViolation(msg.into())
    }
}

pub(crate) fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::SizeLimit { n, cap })
    } else {
        Ok(())
    }
}
