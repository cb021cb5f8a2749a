use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator index {index} out of range for rank {rank}")]
    InvalidGenerator { index: i64, rank: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("homomorphism is not well defined: {0}")]
    NotWellDefined(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Exploration stopped at `radius` because the vertex cap was hit.
    #[error("resource cap of {cap} vertices exceeded; completed radius {radius}")]
    ResourceCap { cap: usize, radius: usize },

    #[error("result too large: {0}")]
    TooLarge(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
