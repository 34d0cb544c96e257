use thiserror::Error;

/// Reasons a creation sequence is rejected. Positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("empty creation sequence")]
    Empty,
    #[error("invalid character {found:?} at position {position}; expected 0 or 1")]
    InvalidCharacter { position: usize, found: char },
    #[error("malformed block notation at position {position}: {reason}")]
    MalformedBlock { position: usize, reason: String },
    #[error("first symbol must be 0 (found 1 at position 1)")]
    FirstNotZero,
    #[error("sequence of length {n} ends with 0 at position {n}; the graph is disconnected")]
    Disconnected { n: usize },
    #[error("the one-vertex graph has no block form")]
    Singleton,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix is not square ({rows} rows, {len} entries)")]
    NotSquare { rows: usize, len: usize },
    #[error("matrix is not symmetric: |m[{i}][{j}] - m[{j}][{i}]| = {gap:e}")]
    NotSymmetric { i: usize, j: usize, gap: f64 },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("{what} = {value} is out of range (allowed {min}..={max})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    /// A closed-form result disagreed with an exact or numeric cross-check.
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    /// True for failures that indicate the mathematics disagreed with a
    /// cross-check, as opposed to bad input.
    pub fn is_verification(&self) -> bool {
        matches!(self, Error::Verification(_) | Error::Linalg(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
