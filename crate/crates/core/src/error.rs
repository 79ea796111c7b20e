use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("incompatible shapes: {left_rows}x{left_cols} times {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("entry count {got} does not match {rows}x{cols}")]
    EntryCount {
        rows: usize,
        cols: usize,
        got: usize,
    },
    #[error("prime {prime} divides a denominator; draw another prime")]
    PrimeDividesDenominator { prime: u64 },
    #[error("invalid modulus {0}: need distinct primes greater than 2^31")]
    InvalidPrime(u64),
    #[error("modular ranks disagree: {0:?}")]
    ModularDisagreement(Vec<(u64, usize)>),
    #[error("need at least {need} primes, got {got}")]
    TooFewPrimes { need: usize, got: usize },

    #[error("mixed depths {0} and {1} in a fixed-depth polynomial")]
    MixedDepth(usize, usize),
    #[error("polynomial is not homogeneous (degrees {0} and {1}); the ∘̲ sign is undefined")]
    NotHomogeneous(u32, u32),
    #[error("depth mismatch: expected {expected}, got {got}")]
    DepthMismatch { expected: usize, got: usize },
    #[error("sigma generator index must be odd and at least 3, got {0}")]
    InvalidGenerator(u32),
    #[error("index tuples have different lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("level {level} out of range 2..={depth}")]
    LevelOutOfRange { level: usize, depth: usize },
    #[error("depth must be at least {min}, got {got}")]
    DepthTooSmall { min: usize, got: usize },
    #[error("monomial {0} lies outside the S_{{N,r}} monomial span")]
    StrayMonomial(String),
    #[error("vector has length {got}, expected {expected}")]
    VectorLength { expected: usize, got: usize },

    #[error("rank table is missing entries {0:?}")]
    MissingTableEntries(Vec<(u32, usize)>),
    #[error("corrupt cache entry {}: {reason}", path.display())]
    CacheCorrupt { path: PathBuf, reason: String },

    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
