use thiserror::Error;

use crate::words::Generator;

/// Malformed word text. `position` is a byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid group parameters p={p}, q={q}: need p > q >= 1")]
    InvalidParams { p: u32, q: u32 },
    #[error("generator {0} is not available in {1}")]
    DisabledLetter(Generator, String),
    #[error("elements belong to different groups")]
    MismatchedGroups,
    #[error("operation requires {0}")]
    WrongGroup(&'static str),
    #[error("word is nontrivial in B_pq+, so it is not a power of z")]
    NontrivialInBpqPlus,
    #[error("word must be nonempty after free reduction")]
    EmptyWord,
    #[error("letter {0} is outside the free group on a and theta")]
    ForeignLetter(Generator),
    #[error("element does not centralize gamma")]
    NotInCentralizer,
    #[error("leading coefficient m_0 must be nonzero")]
    ZeroLeadingCoefficient,
    #[error("ball exceeded the size cap of {cap} elements at radius {radius}")]
    BallTooLarge { cap: usize, radius: u32 },
    #[error("not enough data points in the fit window (need 3, have {0})")]
    InsufficientData(usize),
    #[error("fit requires positive values, found {0}")]
    NonPositive(f64),
    #[error("malformed ball dump: {0}")]
    BadDump(String),
    #[error("internal certificate check failed: {0}")]
    CertificateFailed(&'static str),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
