use thiserror::Error;

/// Errors raised by the library.
///
/// Mathematical self-checks never surface here; they are reported in the
/// diagnostic structures of the modules that run them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported Coxeter type {0}")]
    UnsupportedSpec(String),
    #[error("operation needs family A, B, C or D, got {0}")]
    UnsupportedFamily(String),
    #[error("elements belong to different groups")]
    MixedGroups,
    #[error("{what} has size {size}, above the bound {bound}")]
    TooLarge { what: String, size: String, bound: u64 },
    #[error("not a permutation: {0}")]
    NotPermutation(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid pair in M(G): {0}")]
    InvalidPair(String),
    #[error("not a conjugacy class: {0}")]
    NotAClass(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("flag is not compatible with the symplectic form")]
    NotSymplectic,
    #[error("eigenvalues need GF({p}^{degree}), beyond 2^16 elements")]
    SplittingFieldTooLarge { p: u64, degree: u32 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// The variant name, for machine-readable error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::UnsupportedSpec(_) => "UnsupportedSpec",
            Error::UnsupportedFamily(_) => "UnsupportedFamily",
            Error::MixedGroups => "MixedGroups",
            Error::TooLarge { .. } => "TooLarge",
            Error::NotPermutation(_) => "NotPermutation",
            Error::NotPrime(_) => "NotPrime",
            Error::InvalidPair(_) => "InvalidPair",
            Error::NotAClass(_) => "NotAClass",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NotSymplectic => "NotSymplectic",
            Error::SplittingFieldTooLarge { .. } => "SplittingFieldTooLarge",
            Error::Parse(_) => "Parse",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn too_large(what: impl Into<String>, size: impl ToString, bound: u64) -> Error {
    Error::TooLarge { what: what.into(), size: size.to_string(), bound }
}
