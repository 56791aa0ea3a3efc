use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("regex syntax error at position {position}: {message}")]
    RegexSyntax { position: usize, message: String },

    #[error("symbol {symbol:?} is not in the alphabet")]
    UnknownSymbol { symbol: char },

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("alphabet mismatch: {left:?} vs {right:?}")]
    AlphabetMismatch { left: String, right: String },

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("invalid splicing system: {0}")]
    InvalidSystem(String),

    #[error("rule syntax error: {0}")]
    RuleSyntax(String),

    #[error("json error: {0}")]
    Json(String),

    #[error("axiom language is infinite")]
    InfiniteAxioms,

    #[error("word of length {length} is too short: at least {required} symbols are required")]
    WordTooShort { length: usize, required: usize },

    #[error("invalid pump count {j}: must be even and greater than {min_exclusive}")]
    InvalidPumpCount { j: usize, min_exclusive: usize },

    #[error("factorization does not match the monoid: {0}")]
    InvalidFactorization(String),

    #[error("illegal rule extension: {0}")]
    IllegalExtension(String),

    #[error("rule variant mismatch: expected {expected}, found {found}")]
    VariantMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("invalid monoid element {0}")]
    InvalidElement(usize),

    #[error("invalid bounds: {0}")]
    InvalidBounds(String),

    #[error("rule candidate space of {count} exceeds the limit of {limit}")]
    CandidateLimit { count: u128, limit: u128 },
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
