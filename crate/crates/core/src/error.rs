use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid base {0}: expected 2 <= k <= 256")]
    InvalidBase(u32),
    #[error("digit {digit} is not valid in base {base}")]
    InvalidDigit { digit: u32, base: u32 },
    #[error("borderedness of the empty word is undefined")]
    EmptyWord,
    #[error("valuation of zero is undefined")]
    ZeroValuation,
    #[error("invalid automaton: {0}")]
    InvalidDfao(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("unknown sequence {0:?}")]
    UnknownSequence(String),
    #[error("factor length must be at least 1")]
    ZeroLength,
    #[error(
        "factor enumeration inconclusive for length {length}: no saturation within {cap} symbols"
    )]
    Inconclusive { length: usize, cap: usize },
    #[error("n = 0 is outside the domain of linear-representation evaluation")]
    OutOfDomain,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("recurrence system has no rule or base value for n = {0}")]
    Incomplete(u64),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
