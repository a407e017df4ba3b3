use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("dimension {rank} exceeds the exhaustive-enumeration cap of 2^{cap}")]
    DimensionTooLarge { rank: usize, cap: u32 },

    #[error("code length {n} exceeds the supported maximum {max}")]
    LengthCapExceeded { n: usize, max: usize },

    #[error("code is not self-orthogonal")]
    NotSelfOrthogonal,

    #[error("wrong dimension: expected {expected}, found {found}")]
    WrongDimension { expected: usize, found: usize },

    #[error("code is doubly even; the shadow decomposition needs a singly even code")]
    CodeIsDoublyEven,

    #[error("code is not doubly even")]
    NotDoublyEven,

    #[error("length {0} is not divisible by 8")]
    LengthNotDivisibleBy8(usize),

    #[error("invalid subcode: {0}")]
    SubcodeInvalid(String),

    #[error("extension vector has even weight")]
    EvenWeightVector,

    #[error("extremal profile mismatch: {0}")]
    ProfileMismatch(String),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("input is not an even self-dual additive code")]
    NotEvenSelfDual,

    #[error("code is not self-dual")]
    NotSelfDual,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inconsistent theta series: {0}")]
    InconsistentSeries(String),

    #[error("vectors do not share a common norm")]
    MixedNorms,

    #[error("invalid frame: {0}")]
    FrameInvalid(String),

    #[error("lattice is even; shadows are defined for odd unimodular lattices")]
    EvenLattice,

    #[error("input does not qualify: {0}")]
    InputNotQualifying(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
