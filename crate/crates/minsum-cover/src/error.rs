//! Crate-wide error type.

use std::path::PathBuf;
use thiserror::Error;

/// Errors returned by constructors, solvers, generators, and file I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// A cost vector was empty or contained a non-positive / non-finite entry.
    #[error("invalid cost vector: {reason}")]
    InvalidCosts { reason: String },

    /// A sequence of indices is not a bijection on `0..n`.
    #[error("not a permutation of 0..{n}: {reason}")]
    NotAPermutation { n: usize, reason: String },

    /// Two inputs that must range over the same element set disagree in length.
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    /// A subset passed to a utility oracle mentions an element outside `0..n`.
    #[error("element {element} out of range for n = {n}")]
    ElementOutOfRange { element: usize, n: usize },

    /// A utility oracle did not evaluate to exactly 0 on the empty set.
    #[error("utility oracle is not normalized: u(empty) = {value}, expected 0")]
    UnnormalizedOracle { value: f64 },

    /// A 1-based position argument is outside `1..=n`.
    #[error("position {position} out of range for a permutation of length {n}")]
    PositionOutOfRange { position: usize, n: usize },

    /// A pseudo-neighbor was requested with the copy not strictly earlier.
    #[error("insertion position {dst} must be strictly before source position {src}")]
    InsertionOrder { src: usize, dst: usize },

    /// An exhaustive operation was asked to run beyond its supported size.
    #[error("{operation} supports n <= {max}, got n = {n}")]
    Capacity {
        operation: &'static str,
        n: usize,
        max: usize,
    },

    /// A solver or generator configuration failed validation.
    #[error("invalid configuration: {reason}")]
    InvalidConfig { reason: String },

    /// Customer resampling in the facility-location generator gave up.
    #[error("customer sampling exhausted {attempts} attempts; last rejection was station {station}")]
    ResampleExhausted { station: usize, attempts: usize },

    /// A customer point coincides with a station (service value would be infinite).
    #[error("customer {customer} is within 1e-9 of station {station}")]
    CustomerTooClose { station: usize, customer: usize },

    /// Instance generation failed inside an experiment; wraps the cause with
    /// the instance index.
    #[error("generating instance {instance_id}: {source}")]
    Generation {
        instance_id: usize,
        #[source]
        source: Box<Error>,
    },

    /// Malformed content in an instance, station, or permutation file.
    #[error("parse error in {path}{}: {reason}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    Parse {
        path: PathBuf,
        line: Option<usize>,
        reason: String,
    },

    /// Filesystem failure, annotated with the path involved.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for the CLI: 2 for I/O failures, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } => 2,
            Error::Generation { source, .. } => source.exit_code(),
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
