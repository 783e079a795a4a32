use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid vocabulary: {0}")]
    InvalidVocabulary(String),

    #[error("bit string has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("operands are defined over different vocabularies")]
    VocabularyMismatch,

    #[error("vocabulary of {size} symbols exceeds the cap of {cap}")]
    VocabularyTooLarge { size: usize, cap: usize },

    #[error("inclusion-exclusion exceeded its budget of {budget} terms")]
    TermExplosion { budget: usize },

    #[error("cube expansion exceeded its budget of {budget} cubes")]
    ResourceExceeded { budget: usize },

    #[error("symbol index {index} out of range for a vocabulary of {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("implicant contains contradictory literals on symbol {index}")]
    ContradictoryLiteral { index: usize },

    #[error("ostensive definition has no positive examples")]
    EmptyPositives,

    #[error("state {state} is labelled both positive and negative")]
    Inconsistent { state: String },

    #[error("state {state} lies outside the covered situations")]
    UncoveredState { state: String },

    #[error("no response satisfies every goal in situation {situation}")]
    NoEthicalResponse { situation: String },

    #[error("at least one goal is required")]
    NoGoals,

    #[error("no experiences were supplied")]
    EmptyExperiences,

    #[error("exploration budget must be at least 1")]
    ZeroBudget,

    #[error("token `{0}` is already in the lexicon")]
    DuplicateToken(String),

    #[error("token `{0}` is not in the lexicon")]
    UnknownToken(String),

    #[error("invalid token `{0}`")]
    InvalidToken(String),

    #[error("no appropriate sign conveys `{token}` in situation {situation}")]
    NoAppropriateSign { token: String, situation: String },

    #[error("state {state} does not satisfy the interpretant of `{token}`")]
    UnsoundMemory { token: String, state: String },

    #[error("no dialogue record mentions an unknown token")]
    NothingToBootstrap,

    #[error("norm corpus is empty")]
    EmptyCorpus,

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}: {message}")]
    HeaderMismatch { line: usize, message: String },

    #[error("line {line}: state {state} listed with conflicting labels")]
    DuplicateState { line: usize, state: String },

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: &std::path::Path, err: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            message: err.to_string(),
        }
    }
}
