use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification used for exit codes and FFI status values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// The input violates a precondition.
    Validation,
    /// The requested precision cannot certify the answer.
    Precision,
    /// The input is valid but the computation is outside what is implemented.
    Unsupported,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("pair ({0},{1}) is not coprime")]
    NotCoprime(i64, i64),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("Weil check failed ({check}): {detail}")]
    WeilRejected { check: WeilCheck, detail: String },
    #[error("place resolution unsupported: {0}")]
    PlaceResolutionUnsupported(String),
    #[error("context mismatch")]
    ContextMismatch,
    #[error("precision insufficient: {0}")]
    Precision(String),
    #[error("polygons are incomparable")]
    Incomparable,
    #[error("polygon is not symmetric")]
    NotSymmetric,
    #[error("semimodule closure violated at {0}")]
    ClosureViolation(i64),
    #[error("missing V action")]
    MissingV,
    #[error("normal form invalid: {0}")]
    NormalForm(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// Which check rejected a candidate Weil polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeilCheck {
    Reducible,
    FunctionalEquation,
    RootModulus,
    NonIntegral,
}

impl std::fmt::Display for WeilCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            WeilCheck::Reducible => "reducible",
            WeilCheck::FunctionalEquation => "functional-equation",
            WeilCheck::RootModulus => "root-modulus",
            WeilCheck::NonIntegral => "non-integral",
        })
    }
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Precision(_) => ErrorKind::Precision,
            Error::PlaceResolutionUnsupported(_) | Error::Unsupported(_) => ErrorKind::Unsupported,
            _ => ErrorKind::Validation,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
