//! Crate-wide error type.
//!
//! Every fallible operation returns one of the named variants below; the CLI
//! prints `Error::name()` on stderr and exits nonzero, so variant names are
//! part of the user-facing contract.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Zero-table input is not non-decreasing.
    #[error("MonotonicityError: line {line}: {value} < previous {prev}")]
    Monotonicity { line: usize, prev: f64, value: f64 },

    /// A line of a zero-table file could not be parsed.
    #[error("ParseError: line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A zero-table file contained no ordinates.
    #[error("EmptyTableError: no ordinates in input")]
    EmptyTable,

    /// A height above the table's certified ceiling was requested.
    #[error("IncompleteTableError: height {requested} exceeds table ceiling {ceiling}")]
    IncompleteTable { requested: f64, ceiling: f64 },

    /// Argument outside an operation's domain.
    #[error("DomainError: {0}")]
    Domain(String),

    /// Evaluation at (or too close to) a pole.
    #[error("PoleError: {0}")]
    Pole(String),

    /// Cross-checked evaluations disagree beyond their combined errors.
    #[error("InconsistencyError: {0}")]
    Inconsistency(String),

    /// An exact pair sum was requested for a set too large to enumerate.
    #[error("ComplexityError: {0}")]
    Complexity(String),

    /// Evaluation too close to a zero or pole of zeta.
    #[error("NearSingularityError: {0}")]
    NearSingularity(String),

    /// A quadrature contour passes too close to a singularity.
    #[error("ContourError: {0}")]
    Contour(String),

    #[error("IoError: {0}")]
    Io(#[from] std::io::Error),

    /// Bad CLI flag, config file, or environment setting.
    #[error("ConfigError: {0}")]
    Config(String),
}

impl Error {
    /// Stable short name, printed by the CLI on failure.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Monotonicity { .. } => "MonotonicityError",
            Error::Parse { .. } => "ParseError",
            Error::EmptyTable => "EmptyTableError",
            Error::IncompleteTable { .. } => "IncompleteTableError",
            Error::Domain(_) => "DomainError",
            Error::Pole(_) => "PoleError",
            Error::Inconsistency(_) => "InconsistencyError",
            Error::Complexity(_) => "ComplexityError",
            Error::NearSingularity(_) => "NearSingularityError",
            Error::Contour(_) => "ContourError",
            Error::Io(_) => "IoError",
            Error::Config(_) => "ConfigError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
