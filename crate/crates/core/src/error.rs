use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A class spec, tuple or profile violates a structural invariant.
    #[error("invalid class data: {0}")]
    Validation(String),

    /// A required annotation or parameter is missing.
    #[error("configuration error: {0}")]
    Config(String),

    /// The input is outside the range the theory covers.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// An operation's precondition does not hold. `source_name` names the result
    /// the precondition comes from.
    #[error("precondition of {source_name} violated: {detail}")]
    Precondition { source_name: &'static str, detail: String },

    /// Enumeration or search above the configured size limit.
    #[error("resource limit: {0}")]
    Resource(String),

    /// Argument outside the mathematical domain of a formula.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("field GF({p}^{k}) is too large for the element representation")]
    FieldTooLarge { p: u64, k: u32 },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("matrix is singular")]
    Singular,

    #[error("dimension mismatch: {0}")]
    Shape(String),

    #[error("cap of {cap} exceeded")]
    CapExceeded { cap: u64 },

    /// Representative matrix has the wrong determinant. `root` is a scalar `c`
    /// with `c^n = det` when one exists in the field; dividing every
    /// eigenvalue by `c` gives a determinant-one representative.
    #[error("determinant of representative is {det}, not 1 (rescale eigenvalues by {root:?})")]
    Determinant { det: String, root: Option<String> },

    /// Class could not be realized by a matrix over the requested field.
    #[error("cannot realize class: {0}")]
    Realization(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn precondition(source_name: &'static str, detail: impl Into<String>) -> Self {
        Error::Precondition {
            source_name,
            detail: detail.into(),
        }
    }
}
