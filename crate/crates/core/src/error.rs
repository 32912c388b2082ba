//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{value} has a denominator divisible by {p}")]
    NotAdmissibleAtP { p: u64, value: String },
    #[error("prime {p} not allowed: {reason}")]
    BadPrime { p: u64, reason: String },
    #[error("degenerate invariant form: {0}")]
    DegenerateForm(String),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("subspaces live in different ambient spaces ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("element is not nilpotent")]
    NotNilpotent,
    #[error("no sl2-triple through the given element: {0}")]
    NoTriple(String),
    #[error("ad h has a non-integral eigenvalue")]
    NonIntegerEigenvalue,
    #[error("parity identity violated: {0}")]
    ParityViolation(String),
    #[error("pairing on g(-1) is degenerate: {0}")]
    DegeneratePairing(String),
    #[error("no grading attached")]
    NoGrading,
    #[error("invalid one-dimensional character: {0}")]
    InvalidCharacter(String),
    #[error("character does not agree with chi on m: {0}")]
    CharacterMismatch(String),
    #[error("dimension {found} differs from the predicted {expected}: {context}")]
    DimensionMismatch {
        expected: u64,
        found: u64,
        context: String,
    },
    #[error("no invariant with leading term {0}")]
    ExtractionFailure(String),
    #[error("degree cap {cap} below requested degree {needed}")]
    TruncationTooSmall { cap: usize, needed: usize },
    #[error("superalgebra is not simple (proper ideal of dimension {ideal_dim})")]
    NotSimple { ideal_dim: usize },
    #[error("module is not simple")]
    NotSimpleInput,
    #[error("module dimension {dim} exceeds cap {cap}")]
    CapExceeded { dim: usize, cap: usize },
    #[error("spectrum not rational: {0}")]
    IrrationalSpectrum(String),
    #[error("unrecognized Levi summand with dims ({even}|{odd})")]
    UnrecognizedSummand { even: usize, odd: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
