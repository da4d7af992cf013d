use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("tau must lie strictly between 3 and 4, got {0}")]
    TauOutOfRange(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("total degree {0} is odd")]
    OddTotalDegree(u64),
    #[error("degree sequence has no half-edges")]
    EmptyDegrees,
    #[error("degrees must be sorted non-increasing")]
    Unsorted,
    #[error("no simple graph after {0} attempts")]
    AttemptsExhausted(usize),
    #[error("criticality parameter nu_n = {0} must exceed 1")]
    NotSupercritical(f64),
    #[error("criticality parameter nu_n = {0} must be below 1")]
    NotSubcritical(f64),
    #[error("retention probability {0} outside (0, 1]")]
    ProbabilityOutOfRange(f64),
    #[error("window point lambda = {lambda} maps to negative time {t}")]
    NegativeWindowTime { lambda: f64, t: f64 },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("walk does not end at a component boundary")]
    IncompleteWalk,
    #[error("need at least {need} replicates per side, got {got}")]
    InsufficientReplicates { need: usize, got: usize },
    #[error("empty sample")]
    EmptySample,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
