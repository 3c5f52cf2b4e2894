use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is singular")]
    Singular,
    #[error("system has no integral solution")]
    NoIntegralSolution,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("rows have different lengths")]
    RaggedRows,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid invariant factors {0:?}: each must be >= 2 and divide the next")]
    BadInvariants(Vec<u64>),
    #[error("invariant factor {0} does not fit in 64 bits")]
    InvariantTooLarge(String),
    #[error("element does not belong to this group")]
    WrongGroup,
    #[error("group has free rank {0}; a finite group is required")]
    NotFinite(usize),
    #[error("group of order {order} exceeds the enumeration limit {limit}")]
    TooLarge { order: String, limit: u64 },
    #[error("subgroup lives in a different ambient group")]
    AmbientMismatch,
    #[error("subgroup is not isotropic")]
    NotIsotropic,
    #[error("ill-defined quadratic function: {0}")]
    IllDefined(String),
    #[error("value denominators exceed 64 bits")]
    DenominatorOverflow,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("characteristic form has length {found}, expected {expected}")]
    FormLength { expected: usize, found: usize },
    #[error("parity violated at basis index {0}: B_ii + K_i is odd")]
    Parity(usize),
    #[error("gram matrix is singular")]
    Singular,
    #[error("quadratic function is not integral on the given lattice")]
    NotIntegral,
    #[error("|det| = {det} exceeds the overlattice bound {bound}")]
    BoundExceeded { det: String, bound: u64 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("cannot parse graph {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("self-intersection degrees must be >= 1")]
    NonPositiveDegree,
    #[error("cusp cycle must have at least one curve")]
    EmptyCycle,
    #[error("intersection matrix is not negative definite; fails Artin's criterion")]
    NotNegativeDefinite,
    #[error("monodromy trace {trace} is not hyperbolic (need trace >= 3)")]
    NotHyperbolic { trace: String },
    #[error("all entries equal 2; not a cusp cycle")]
    AllTwos,
    #[error("cycle entries must be >= 2 for duality")]
    EntryBelowTwo,
    #[error("trace {trace} is too large to write out the cover cycle")]
    CoverTooLarge { trace: String },
    #[error("one-curve cusp cycles have no lattice route for link homology")]
    NodalLatticeUnavailable,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("degree must be >= 1, got {0}")]
    BadDegree(i64),
    #[error("not smoothable: mu_minus would be {0}")]
    NotSmoothable(i64),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}
