use thiserror::Error;

/// Every failure the library can report.
///
/// Each variant maps to a stable numeric code (see [`AgcError::code`]) that the
/// CLI uses as its exit status and the C ABI returns from every call.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AgcError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("field size {0} is not supported (q must be at most 16)")]
    Unsupported(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element code {code} out of range for q={q}")]
    InvalidElement { code: u32, q: u32 },
    #[error("degree {d} must be smaller than q={q}")]
    DegreeTooLarge { d: usize, q: u32 },
    #[error("linear forms are dependent (rank {rank} < {s})")]
    DependentForms { rank: usize, s: usize },
    #[error("minor size {size} out of range (max {max})")]
    SizeOutOfRange { size: usize, max: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("problem too large: {0}")]
    TooLarge(String),
    #[error("order {r} out of range for RM codes of {delta} variables over F_{q}")]
    OrderOutOfRange { r: usize, delta: usize, q: u32 },
    #[error("orthogonality violated between dual row {dual_row} and generator row {primal_row}")]
    OrthogonalityViolation { dual_row: usize, primal_row: usize },
    #[error("invalid witness parameters: {0}")]
    InvalidWitnessParams(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("transpose requires a square rectangle, got {ell}x{ell_prime}")]
    NotSquare { ell: usize, ell_prime: usize },
    #[error("weight bound {0} unsupported (at most 4)")]
    WMaxUnsupported(usize),
    #[error("word {0} does not lie in the code")]
    WordNotInCode(usize),
    #[error("matrix rank {0} is below 2")]
    RankTooLow(usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

impl AgcError {
    /// Stable numeric code; zero is reserved for success.
    pub fn code(&self) -> i32 {
        match self {
            AgcError::NotPrimePower(_) => 10,
            AgcError::Unsupported(_) => 11,
            AgcError::DivisionByZero => 12,
            AgcError::InvalidElement { .. } => 13,
            AgcError::DegreeTooLarge { .. } => 14,
            AgcError::DependentForms { .. } => 15,
            AgcError::SizeOutOfRange { .. } => 16,
            AgcError::DimensionMismatch(_) => 17,
            AgcError::TooLarge(_) => 18,
            AgcError::OrderOutOfRange { .. } => 19,
            AgcError::OrthogonalityViolation { .. } => 20,
            AgcError::InvalidWitnessParams(_) => 21,
            AgcError::SingularMatrix => 22,
            AgcError::NotSquare { .. } => 23,
            AgcError::WMaxUnsupported(_) => 24,
            AgcError::WordNotInCode(_) => 25,
            AgcError::RankTooLow(_) => 26,
            AgcError::InvalidParams(_) => 27,
            AgcError::Io(_) => 28,
            AgcError::VerificationFailed(_) => 29,
        }
    }

    /// Variant name, used as the machine-readable error tag.
    pub fn name(&self) -> &'static str {
        match self {
            AgcError::NotPrimePower(_) => "NotPrimePower",
            AgcError::Unsupported(_) => "Unsupported",
            AgcError::DivisionByZero => "DivisionByZero",
            AgcError::InvalidElement { .. } => "InvalidElement",
            AgcError::DegreeTooLarge { .. } => "DegreeTooLarge",
            AgcError::DependentForms { .. } => "DependentForms",
            AgcError::SizeOutOfRange { .. } => "SizeOutOfRange",
            AgcError::DimensionMismatch(_) => "DimensionMismatch",
            AgcError::TooLarge(_) => "TooLarge",
            AgcError::OrderOutOfRange { .. } => "OrderOutOfRange",
            AgcError::OrthogonalityViolation { .. } => "OrthogonalityViolation",
            AgcError::InvalidWitnessParams(_) => "InvalidWitnessParams",
            AgcError::SingularMatrix => "SingularMatrix",
            AgcError::NotSquare { .. } => "NotSquare",
            AgcError::WMaxUnsupported(_) => "WMaxUnsupported",
            AgcError::WordNotInCode(_) => "WordNotInCode",
            AgcError::RankTooLow(_) => "RankTooLow",
            AgcError::InvalidParams(_) => "InvalidParams",
            AgcError::Io(_) => "Io",
            AgcError::VerificationFailed(_) => "VerificationFailed",
        }
    }
}

impl From<std::io::Error> for AgcError {
    fn from(e: std::io::Error) -> Self {
        AgcError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, AgcError>;
