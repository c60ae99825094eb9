use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: malformed permutation `{text}` (not a bijection of 0123)")]
    BadPermutation { line: usize, text: String },
    #[error("line {line}: tetrahedron index {index} out of range (tet count {count})")]
    DanglingTetrahedron { line: usize, index: usize, count: usize },
    #[error("line {line}: non-involutive gluing at tet {tet} facet {facet}")]
    NonInvolutive { line: usize, tet: usize, facet: usize },
    #[error("invalid triangulation: {0}")]
    Invalid(String),
    #[error("triangulation is not closed")]
    NotClosed,
    #[error("triangulation has {0} vertices; a single vertex is required")]
    NotOneVertex(usize),
    #[error("({p}, {q}) is not a coprime pair")]
    NotCoprime { p: u64, q: u64 },
    #[error("(1, 1) is the degenerate Moebius band and cannot be built")]
    DegenerateTorus,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("edge {0} is not a boundary edge")]
    NotBoundaryEdge(usize),
    #[error("boundary is not a one-vertex two-triangle torus")]
    BadBoundary,
    #[error("slope ({0}, {1}) is not realisable by a layered solid torus")]
    UnrealisableSlope(i64, i64),
    #[error("parity pattern of tetrahedron {0} is not one of the three cocycle types")]
    NotACocycle(usize),
    #[error("matching equations fail on face {0}")]
    Matching(usize),
    #[error("tetrahedron {0} carries more than one quad or octagon type")]
    NotEmbeddable(usize),
    #[error("tetrahedron {0} is not of type Dq")]
    NotAllQuad(usize),
    #[error("move precondition failed: {0}")]
    Move(String),
    #[error("census corrupted: odd numerator {0}")]
    OddCensus(i64),
}

pub type Result<T> = std::result::Result<T, Error>;
