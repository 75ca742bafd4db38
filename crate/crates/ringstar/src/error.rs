use thiserror::Error;

/// Failures raised by the ring, ideal, coset and algebra layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("element does not belong to {ring}: {detail}")]
    BackendMismatch { ring: String, detail: String },
    #[error("element {0} is a zero-divisor")]
    NotRegular(String),
    #[error("ideal leaves the supported c[T]*f class (generators: {gens})")]
    OrderPolyClass { gens: String },
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("infinite index: {0}")]
    InfiniteIndex(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("element is not diagonal")]
    NotDiagonal,
    #[error("input is not a projection: {0}")]
    NotProjection(String),
    #[error("element is not self-adjoint")]
    NotSelfAdjoint,
    #[error("zero input: {0}")]
    ZeroInput(String),
    #[error("hypothesis failure: {0}")]
    Hypothesis(String),
    #[error("coset family of size {0} exceeds the atom enumeration cap")]
    FamilyTooLarge(usize),
    #[error("candidate modulus {0} is a unit")]
    UnitCandidate(String),
    #[error("moduli are not pairwise coprime")]
    NotCoprime,
    #[error("ideal {0} does not contain the level modulus")]
    NotAboveModulus(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
