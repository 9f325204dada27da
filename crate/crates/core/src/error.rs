use thiserror::Error;

use crate::vertex::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("cycle detected through vertex {0}")]
    CycleDetected(VertexId),

    #[error("cover relations do not define a partial order (cycle through {0})")]
    NotAPoset(VertexId),

    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error("empty window")]
    EmptyWindow,

    #[error("operation requires a {expected} presentation")]
    WrongKind { expected: &'static str },

    #[error("undefined product at ({row}, {col}): neither factor has a certified finite support")]
    UndefinedProduct { row: VertexId, col: VertexId },

    #[error("path enumeration from {from} to {to} exceeded the node budget of {budget}")]
    IntervalFinitenessViolated {
        from: VertexId,
        to: VertexId,
        budget: usize,
    },

    #[error("sharp Euler condition violated at {vertex}: {reason}")]
    SharpEulerViolated { vertex: VertexId, reason: String },

    #[error("injective resolution of S({vertex}) does not terminate within degree {cap}")]
    CapExceeded { vertex: VertexId, cap: usize },

    #[error("vector is neither finitely supported nor a generator combination")]
    NotInDomain,

    #[error("vector is not in the subgroup generated by the {0}")]
    NotInSubgroup(&'static str),

    #[error("window too small: {0}")]
    WindowInsufficient(String),

    #[error("Hom(C, M) is not zero: {0}")]
    HomCNotZero(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("module is outside the knitted region")]
    NotInKnittedRegion,

    #[error("knitting stuck after {completed} of {requested} mesh completions")]
    KnittingStuck { completed: usize, requested: usize },

    #[error("injective {0} is infinite-dimensional")]
    InfiniteDimensional(VertexId),

    #[error("invalid argument: {0}")]
    Invalid(String),
}
