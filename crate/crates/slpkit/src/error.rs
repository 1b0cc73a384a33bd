use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty string: SLPs generate nonempty strings")]
    EmptyString,
    #[error("symbol {symbol} out of range for alphabet of size {size}")]
    SymbolOutOfRange { symbol: u32, size: u32 },
    #[error("length overflow: decompressed length exceeds 2^63-1")]
    LengthOverflow,
    #[error("decompressed length {len} exceeds limit {limit}")]
    TooLarge { len: u64, limit: u64 },
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: u64, len: u64 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: rule S{rule} references S{target}, which is not defined yet")]
    ForwardReference { line: usize, rule: usize, target: usize },
    #[error("undeclared symbol {0:?}")]
    UndeclaredSymbol(String),
    #[error("pattern of length {pattern} is longer than text of length {text}")]
    PatternLongerThanText { pattern: u64, text: u64 },
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("strings have unequal lengths {0} and {1}")]
    UnequalLength(u64, u64),
    #[error("alphabet of size {0} is not binary")]
    NonBinaryAlphabet(u32),
    #[error("invalid alignment: {0}")]
    InvalidAlignment(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("weight bound violated: {0}")]
    WeightBoundViolated(String),
    #[error("graph has no clique of size {0}")]
    NoHalfClique(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("i/o error on {path}: {msg}")]
    Io { path: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
