use thiserror::Error;

use crate::curve::HomPoly;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which stage of base-set selection gave up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionStage(pub String);

impl std::fmt::Display for SelectionStage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero vector has no projective meaning")]
    ZeroVector,
    #[error("the two points are equal")]
    EqualPoints,
    #[error("the two lines are equal")]
    EqualLines,
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("need at least two lines")]
    TooFewLines,
    #[error("duplicate point at index {0}")]
    DuplicatePoint(usize),
    #[error("unsupported degree {0}")]
    UnsupportedDegree(u32),
    #[error("expected a polynomial of degree {expected}, got degree {got}")]
    WrongDegree { expected: u32, got: u32 },
    #[error("the zero polynomial does not define a curve")]
    ZeroPolynomial,
    #[error("|A| = {len} exceeds 2d+2 = {max}")]
    OutOfRange { len: usize, max: usize },
    #[error("base set must have projective parameter dimension 2, has {0}")]
    BadBase(i64),
    #[error("point {0} belongs to the base set")]
    PointInBase(usize),
    #[error("point imposes no condition on curves through the base set")]
    NoCondition,
    #[error("every member of the pencil vanishes at avoid point {0}")]
    ForcedPoint(usize),
    #[error("the point set is collinear")]
    AllCollinear,
    #[error("the lines are all concurrent")]
    AllConcurrent,
    #[error("no point lies on exactly two of the lines")]
    NoOrdinaryPoint,
    #[error("no anchor point found")]
    NotFound,
    #[error("the point set lies on the conic {0} = 0")]
    ContainedInConic(HomPoly),
    #[error("the point set lies on the cubic {0} = 0")]
    ContainedInCubic(HomPoly),
    #[error("the point set lies on the curve {0} = 0")]
    ContainedInCurve(HomPoly),
    #[error("base-set selection failed at stage: {0}")]
    SelectionFailed(SelectionStage),
    #[error("internal anomaly: {0}")]
    Anomaly(String),
    #[error("subset must have {expected} indices, got {got}")]
    BadSubsetSize { expected: usize, got: usize },
    #[error("enumeration needs {needed} subsets, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("no subset admits an ordinary curve of degree {0}")]
    OracleExhausted(u32),
    #[error("a ten-point set is required, got {0}")]
    WrongSize(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {0}: duplicate point")]
    DuplicatePointLine(usize),
    #[error("line {0}: zero vector")]
    ZeroVectorLine(usize),
    #[error("certificate format: {0}")]
    Format(String),
    #[error("invalid generator spec: {0}")]
    SpecInvalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line tool and the C ABI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotFound
            | Error::NoOrdinaryPoint
            | Error::OracleExhausted(_)
            | Error::SelectionFailed(_) => 1,
            Error::AllCollinear
            | Error::AllConcurrent
            | Error::ContainedInConic(_)
            | Error::ContainedInCubic(_)
            | Error::ContainedInCurve(_)
            | Error::TooFewPoints { .. }
            | Error::TooFewLines
            | Error::OutOfRange { .. }
            | Error::WrongSize(_)
            | Error::UnsupportedDegree(_) => 2,
            Error::Parse { .. }
            | Error::DuplicatePointLine(_)
            | Error::ZeroVectorLine(_)
            | Error::Format(_)
            | Error::SpecInvalid(_)
            | Error::Io(_) => 3,
            Error::BudgetExceeded { .. } => 4,
            Error::Anomaly(_) => 5,
            _ => 2,
        }
    }
}
