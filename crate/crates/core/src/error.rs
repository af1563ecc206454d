use thiserror::Error;

use crate::criteria::ConsensusReport;
use crate::plane::ProjPointK;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("extension degree {0} outside supported range 2..=16")]
    DegreeOutOfRange(u32),
    #[error("polynomial {poly:#x} does not have degree {m}")]
    PolyDegree { poly: u32, m: u32 },
    #[error("polynomial {0:#x} is reducible over GF(2)")]
    ReduciblePoly(u32),
    #[error("delta {0:#x} does not have absolute trace 1")]
    DeltaTrace(u32),
    #[error("value {0:#x} is not a field element")]
    OutOfField(u64),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("polar decomposition of zero")]
    ZeroPolar,
    #[error("{0} is not a power of two in the supported range")]
    NotPowerOfTwo(u64),

    #[error("point set does not contain the origin")]
    MissingOrigin,
    #[error("points {first:?} and {second:?} share a direction from the origin")]
    DirectionCollision {
        first: ProjPointK,
        second: ProjPointK,
    },
    #[error("expected {expected} points, found {found}")]
    WrongCardinality { expected: usize, found: usize },
    #[error("point at infinity not allowed here: {0:?}")]
    InfinitePoint(ProjPointK),
    #[error("duplicate point {0:?}")]
    DuplicatePoint(ProjPointK),
    #[error("{0:?} is not on the unit circle")]
    NotUnit(crate::field::KElem),
    #[error("table has {found} values, expected {expected}")]
    TableLength { expected: usize, found: usize },
    #[error("no c in K makes g(u) + <c,u> nonvanishing")]
    NoNormalization,

    #[error("coefficient symmetry a_(q+1-i) = a_i^q fails at i = {0}")]
    SymmetryViolation(usize),
    #[error("coefficient vector has length {found}, expected {expected}")]
    CoeffLength { expected: usize, found: usize },
    #[error("function vanishes at unit circle index {0}")]
    ZeroValue(usize),

    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("internal defect: {0}")]
    Defect(String),

    #[error("search space of {size} candidates exceeds the exhaustive limit {limit}")]
    SpaceTooLarge { size: u128, limit: u128 },
    #[error("invalid search configuration: {0}")]
    BadConfig(String),

    #[error("verifiers disagree")]
    VerifierDisagreement(Box<ConsensusReport>),

    #[error("malformed input: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
