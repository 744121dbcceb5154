use thiserror::Error;

pub type Result<T, E = AlgError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("operation undefined on the unit ideal")]
    UnitIdeal,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("too many variables ({0}); at most {max} supported", max = crate::monomial::MAX_VARS)]
    TooManyVariables(usize),
    #[error("colon division witness failed: {0}")]
    DivisionWitnessFailure(String),
    #[error("parameter ideal search failed: {0}")]
    ParameterSearchFailed(String),
    #[error("frobenius root requires a polynomial ring context")]
    QuotientContextUnsupported,
    #[error("no jacobian test element found; supply one manually")]
    NoTestElementFound,
    #[error("test ideal chain did not stabilize within {0} iterations")]
    NotStabilized(usize),
    #[error("ideal is not unmixed")]
    NotUnmixed,
    #[error("no delta element found: {0}")]
    DeltaNotFound(String),
    #[error("corner power candidates disagree: {0}")]
    WellDefinednessViolation(String),
    #[error("ideal is not m-primary")]
    NotMPrimary,
}
