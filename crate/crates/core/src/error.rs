use thiserror::Error;

/// Problems found while reading a dashed pattern string. Positions are
/// 1-based character offsets into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternParseError {
    #[error("empty pattern")]
    Empty,
    #[error("pattern starts with a dash (position {position})")]
    LeadingDash { position: usize },
    #[error("pattern ends with a dash (position {position})")]
    TrailingDash { position: usize },
    #[error("consecutive dashes at position {position}")]
    ConsecutiveDashes { position: usize },
    #[error("unexpected character {found:?} at position {position}")]
    InvalidCharacter { position: usize, found: char },
    #[error("block sizes do not partition the letters")]
    InvalidBlocks,
    #[error("letter {letter} at position {position} breaks the permutation of 1..{len}")]
    NotAPermutation {
        position: usize,
        letter: u8,
        len: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid pattern {text:?}: {source}")]
    Pattern {
        text: String,
        #[source]
        source: PatternParseError,
    },
    #[error("invalid permutation {text:?}: {reason}")]
    Permutation { text: String, reason: String },
    #[error("duplicate entry {0} in word")]
    DuplicateEntry(i64),
    #[error("length {n} outside the supported range {min}..={max}")]
    LengthOutOfRange { n: usize, min: usize, max: usize },
    #[error("index {n} is below the start of the family ({min})")]
    IndexOutOfRange { n: usize, min: usize },
    #[error("matching window too short: need at least {required} terms, got {got}")]
    WindowTooShort { required: usize, got: usize },
    #[error("unknown structure template {0:?}")]
    UnknownTemplate(String),
    #[error("unknown sequence family {0:?}")]
    UnknownFamily(String),
    #[error("subset size {k} outside 1..={max}")]
    SubsetSize { k: usize, max: usize },
    #[error("table data: {0}")]
    Data(String),
    #[error("no table {0} in the loaded data")]
    MissingTable(u32),
    #[error("{0}")]
    Usage(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
