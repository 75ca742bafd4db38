use thiserror::Error;

/// A malformed or rejected piece of input, with its byte offset.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("at offset {pos}: {msg}")]
pub struct SyntaxError {
    pub pos: usize,
    pub code: &'static str,
    pub msg: String,
}

impl SyntaxError {
    pub fn new(pos: usize, msg: impl Into<String>) -> SyntaxError {
        SyntaxError {
            pos,
            code: "syntax",
            msg: msg.into(),
        }
    }

    pub fn with_code(pos: usize, code: &'static str, msg: impl Into<String>) -> SyntaxError {
        SyntaxError {
            pos,
            code,
            msg: msg.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Compute(#[from] ringstar::Error),
}

impl CliError {
    /// Stable machine-readable name.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Syntax(s) => s.code,
            CliError::Usage(_) => "usage",
            CliError::Compute(e) => compute_code(e),
        }
    }

    /// 2 for malformed or rejected input, 1 for refused computations.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax(_) | CliError::Usage(_) => 2,
            CliError::Compute(e) => match e {
                ringstar::Error::InvalidDescriptor(_)
                | ringstar::Error::BackendMismatch { .. }
                | ringstar::Error::NotRegular(_) => 2,
                _ => 1,
            },
        }
    }
}

/// Stable name of a library error.
pub fn compute_code(e: &ringstar::Error) -> &'static str {
    use ringstar::Error as E;
    match e {
        E::InvalidDescriptor(_) => "invalid_descriptor",
        E::BackendMismatch { .. } => "backend_mismatch",
        E::NotRegular(_) => "not_regular",
        E::OrderPolyClass { .. } => "order_poly_class",
        E::Unsupported(_) => "unsupported",
        E::InfiniteIndex(_) => "infinite_index",
        E::NotApplicable(_) => "not_applicable",
        E::NotDiagonal => "not_diagonal",
        E::NotProjection(_) => "not_projection",
        E::NotSelfAdjoint => "not_self_adjoint",
        E::ZeroInput(_) => "zero_input",
        E::Hypothesis(_) => "hypothesis",
        E::FamilyTooLarge(_) => "family_too_large",
        E::UnitCandidate(_) => "unit_candidate",
        E::NotCoprime => "not_coprime",
        E::NotAboveModulus(_) => "not_above_modulus",
        E::Verification(_) => "verification",
    }
}
