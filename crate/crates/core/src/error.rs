use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable x{index} at byte {pos} is out of range for {n} variables")]
    VariableOutOfRange { pos: usize, index: usize, n: usize },
    #[error("zero polynomial is not a valid ideal generator")]
    ZeroGenerator,
    #[error("generator {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("ideal has no generators")]
    EmptyIdeal,
    #[error("ambient dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the ideal is the unit ideal")]
    ImproperIdeal,
    #[error("too many variables ({0}); at most 16 are supported")]
    TooManyVariables(usize),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("could not draw an invertible matrix after {0} attempts")]
    TransformSamplingFailed(usize),
    #[error("transforms disagree after {escalations} escalations (final bound {bound})")]
    PersistentDisagreement { escalations: usize, bound: i64 },
    #[error("Groebner fan enumeration exceeded the budget of {0} cones")]
    BudgetExceeded(usize),
    #[error("skeleton dimension {t} out of range 1..={max}")]
    SkeletonOutOfRange { t: usize, max: usize },
    #[error("matrix is not generic: {0}")]
    NonGeneric(String),
    #[error("line {line}: {source}")]
    Input { line: usize, source: Box<Error> },
    #[error("invalid input: {0}")]
    Invalid(String),
}
