use thiserror::Error;

/// Everything that can go wrong while building or combining classes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("operands live in different rings: {0}")]
    ContextMismatch(String),

    #[error("{0} is not a generator of {1}")]
    InvalidGenerator(u32, String),

    #[error("invalid monomial: {0}")]
    InvalidMonomial(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("operation requires coefficients Z/{expected}, found {found}")]
    WrongCoefficients { expected: u64, found: String },

    #[error("operation at the prime {prime} is not defined over a field of characteristic {characteristic}")]
    InadmissibleCharacteristic { prime: u64, characteristic: u64 },

    #[error("invalid operation: {0}")]
    InvalidOperation(String),

    #[error("images do not respect the relations: {0}")]
    IncompatibleImages(String),

    #[error("element lies outside the span on which the map is defined: {0}")]
    OutsideValiditySpan(String),

    #[error("{0}")]
    InvalidPermutation(String),

    #[error("coefficient overflow")]
    Overflow,

    #[error("parse error: {0}")]
    Parse(String),
}

impl AlgebraError {
    /// True for malformed input (as opposed to a mathematically inadmissible request).
    pub fn is_parse_error(&self) -> bool {
        matches!(self, AlgebraError::Parse(_))
    }
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
