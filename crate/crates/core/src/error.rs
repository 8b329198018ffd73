use thiserror::Error;

use crate::fractal::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("zero polynomial has no roots or factorization")]
    ZeroPolynomial,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("resultant of two constants is undefined")]
    ConstantResultant,
    #[error("singular matrix")]
    Singular,
    #[error("invalid algebraic class: {0}")]
    InvalidClass(String),
    #[error("cannot factor {0}: cofactor too large")]
    Factorization(String),

    #[error("invalid structure: {}", format_violations(.0))]
    Validation(Vec<Violation>),
    #[error("unknown builtin '{name}'; available: {available}")]
    UnknownBuiltin { name: String, available: String },
    #[error("loop created while gluing level {level}")]
    LoopCreated { level: usize },
    #[error("unsupported export format '{0}' (expected dot or json)")]
    UnsupportedFormat(String),

    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has a loop at vertex {0}")]
    LoopPresent(usize),
    #[error("invalid vertex id {id} (graph has {count} vertices)")]
    InvalidVertex { id: usize, count: usize },

    #[error("boundary adjacency: the boundary block of P1 is not the identity")]
    BoundaryAdjacency,
    #[error("not fully symmetric: {0}")]
    NotFullySymmetric(String),
    #[error("unclassifiable exceptional value {0}")]
    Unclassifiable(String),
    #[error("inconsistent induction at level {level}: {detail}")]
    InconsistentInduction { level: usize, detail: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("assembly mismatch: {0}")]
    AssemblyMismatch(String),
    #[error("decimation unavailable for '{name}' ({reason}); use oracle mode with a capped level")]
    DecimationUnavailable { name: String, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for bookkeeping contradictions inside the engine, as opposed to
    /// bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::InconsistentInduction { .. } | Error::AssemblyMismatch(_) | Error::Singular
        )
    }
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}
