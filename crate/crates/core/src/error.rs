use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degree overflow: {left} + {right} exceeds dimension {dim}")]
    DegreeOverflow { left: usize, right: usize, dim: usize },

    #[error("expected degree {expected}, got {found}")]
    WrongDegree { expected: usize, found: usize },

    #[error("operation requires dimension {expected}, got {found}")]
    WrongDimension { expected: usize, found: usize },

    #[error("mixed ambient spaces: (n={n1}, k={k1}) vs (n={n2}, k={k2})")]
    AmbientMismatch { n1: usize, k1: usize, n2: usize, k2: usize },

    #[error("index tuple {0:?} is invalid")]
    InvalidIndex(Vec<usize>),

    #[error("zero vector rejected: {0}")]
    ZeroVector(&'static str),

    #[error("vector does not lie in the domain subspace")]
    NotInDomain,

    #[error("graph hypothesis failed: {0}")]
    GraphHypothesis(GraphFailure),

    #[error("operator is not self-adjoint for the Plücker form: basis pair ({0}, {1})")]
    NotSelfAdjoint(usize, usize),

    #[error("phi is not symmetric: basis pair ({0}, {1})")]
    PhiNotSymmetric(usize, usize),

    #[error("phi is singular")]
    PhiSingular,

    #[error("eigenvalues are not distinct")]
    RepeatedEigenvalues,

    #[error("vector is not in V+")]
    NotInPlusSpace,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("missing certificate: {0}")]
    MissingCertificate(String),

    #[error("parse error: {0}")]
    Parse(String),
}

/// Which hypothesis of `graph_extract` failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFailure {
    DimensionsDiffer,
    NotDirectSum,
    NotContained,
    MeetsFirst,
    MeetsSecond,
}

impl std::fmt::Display for GraphFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            GraphFailure::DimensionsDiffer => "dimensions of W, E1, E2 differ",
            GraphFailure::NotDirectSum => "E1 and E2 meet nontrivially",
            GraphFailure::NotContained => "W is not contained in E1 + E2",
            GraphFailure::MeetsFirst => "W meets E1 nontrivially",
            GraphFailure::MeetsSecond => "W meets E2 nontrivially",
        };
        f.write_str(s)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
