use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rows of the fan matrix are linearly dependent (rank {rank} < {rows})")]
    RankDeficient { rank: usize, rows: usize },
    #[error("zero vector has no primitive representative")]
    ZeroVector,
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("integer overflow in exact kernel ({0})")]
    Overflow(&'static str),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polytope is not full-dimensional (dim {dim} in ambient {ambient})")]
    NotFullDimensional { dim: usize, ambient: usize },
    #[error("{what}: no admissible dilation up to the cap {cap}")]
    IterationCap { what: &'static str, cap: u32 },
    #[error("origin is not contained in the polytope")]
    OriginOutside,
    #[error("fan is not simplicial")]
    NotSimplicial,
    #[error("fan is not complete")]
    NotComplete,
    #[error("invalid partition: {0}")]
    PartitionInvalid(String),
    #[error("invalid framing: {0}")]
    InvalidFraming(String),
    #[error("operation undefined in case (wf)")]
    CaseWf,
    #[error("infeasible degrees: {0}")]
    InfeasibleDegrees(String),
    #[error("Newton polytope has no lattice points")]
    EmptyNewton,
    #[error("negative exponent in {0:?}")]
    NegativeExponent(Vec<i64>),
    #[error("monomials {0:?} and {1:?} have different degrees")]
    NotHomogeneous(Vec<i64>, Vec<i64>),
    #[error("outside the hypotheses: {0}")]
    OutOfHypotheses(String),
    #[error("premise failed: {0}")]
    PremiseFailed(String),
    #[error("|a| = {0} differs from n+1 = {1}: not Gorenstein")]
    NotGorenstein(i64, usize),
    #[error("cross-check mismatch: {0}")]
    CrossCheckMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
