use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected {expected} substitution images, got {found}")]
    ImageCountMismatch { expected: usize, found: usize },

    #[error("words have different moduli ({0} vs {1})")]
    ModulusMismatch(usize, usize),

    #[error("defining word is empty")]
    EmptyWord,

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("LOG is not connected")]
    Disconnected,

    #[error("relator {index} has length {length} < 3; the star graph criterion does not apply")]
    ShortRelator { index: usize, length: usize },

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),

    #[error("coset enumeration exhausted the cap of {cap} cosets")]
    Exhausted { cap: usize },

    #[error("coset table is incomplete")]
    IncompleteTable,

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
