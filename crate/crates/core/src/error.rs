use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("points do not span an affine space of dimension {0}")]
    NotFullDimensional(usize),
    #[error("coordinate vectors have inconsistent lengths")]
    DimensionMismatch,
    #[error("dimension {0} exceeds the supported maximum {1}")]
    DimensionTooLarge(usize, usize),
    #[error("region is unbounded")]
    Unbounded,
    #[error("lattice count mismatch at k={k}: expected {expected}, found {found}")]
    CountMismatch { k: u64, expected: String, found: String },
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("no unimodular triangulation found for the cone at vertex {0}")]
    NoUnimodularTriangulationFound(usize),
    #[error("cone boundary restriction is not a simplex triangulation: {0}")]
    BoundaryNotSimplicial(String),
    #[error("region is not covered by the triangulation")]
    RegionNotCovered,
    #[error("weight is not integral: {0}")]
    NonIntegralWeight(String),
    #[error("polytope has no unique lattice fixed point at the origin")]
    NotSymmetricOrigin,
    #[error("function is affine")]
    AffineInput,
    #[error("no lambda certificate available")]
    NoCertificate,
    #[error("test family is empty")]
    EmptyFamily,
    #[error("lower hull is degenerate")]
    HullDegeneracy,
    #[error("missing input: {0}")]
    MissingInput(String),
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    LpUnbounded,
    #[error("invalid hint: {0}")]
    InvalidHint(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
