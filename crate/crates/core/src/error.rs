use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("element {value} outside window [0, {window})")]
    ElementOutOfWindow { value: i64, window: usize },

    #[error("window size must be positive")]
    EmptyWindow,

    #[error("construction needs n >= {min}, got {n}")]
    WindowTooSmall { n: usize, min: usize },

    #[error("middle set interval [{lo}, {hi}] does not match the expected [{expected_lo}, {expected_hi}]")]
    MiddleOutOfRange {
        lo: usize,
        hi: usize,
        expected_lo: usize,
        expected_hi: usize,
    },

    #[error("middle set fails the prefix/suffix majority condition")]
    MajorityConditionFails,

    #[error("ballot count needs p > q, got p = {p}, q = {q}")]
    BallotNotWinning { p: u64, q: u64 },

    #[error("invalid height range: need 0 <= a < b, got a = {a}, b = {b}")]
    InvalidHeightRange { a: f64, b: f64 },

    #[error("walk length must be at least 1")]
    EmptyWalk,

    #[error("strip height {h} outside [1, {n}]")]
    StripHeightOutOfRange { n: usize, h: usize },

    #[error("bound b must be positive")]
    ZeroBound,

    #[error("walk is not in the reflection domain: {0}")]
    NotReflectable(&'static str),

    #[error("binomial index {index} outside [0, {n}]")]
    NormalIndexOutOfRange { n: u64, index: f64 },

    #[error("window {n} exceeds the exhaustive census limit {limit}; use Monte Carlo")]
    CensusLimitExceeded { n: usize, limit: usize },

    #[error("sample count must be positive")]
    NoSamples,

    #[error("invalid bit character {0:?}, expected '0' or '1'")]
    InvalidBit(char),
}

pub type Result<T> = std::result::Result<T, Error>;
