use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("search bound exceeded: {what} needs {needed} candidates, cap is {cap}")]
    SearchBoundExceeded { what: String, needed: u128, cap: u128 },
    #[error("unsupported algebra: {0}")]
    UnsupportedAlgebra(String),
    #[error("algebra is not quasi-Frobenius")]
    NotQuasiFrobenius,
    #[error("invalid short exact sequence: {0}")]
    InvalidSES(String),
    #[error("map is not a monomorphism")]
    NotMono,
    #[error("degree {0} is not supported here (only degree 1)")]
    DegreeUnsupported(usize),
    #[error("extension class is not trivial")]
    ClassNotTrivial,
    #[error("depth exceeded: {0}")]
    DepthExceeded(String),
    #[error("cover provider failed: {0}")]
    CoverFailure(String),
    #[error("complex is not acyclic: {0}")]
    NotAcyclic(String),
    #[error("algebra is not hereditary")]
    NotHereditary,
    #[error("chosen simple module is projective")]
    SIsProjective,
    #[error("answer changed between depth {depth} and {next}: {a} vs {b} elements")]
    Unstable { depth: usize, next: usize, a: u128, b: u128 },
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::ModulusMismatch(..) => "ModulusMismatch",
            Error::Invalid(_) => "Invalid",
            Error::SearchBoundExceeded { .. } => "SearchBoundExceeded",
            Error::UnsupportedAlgebra(_) => "UnsupportedAlgebra",
            Error::NotQuasiFrobenius => "NotQuasiFrobenius",
            Error::InvalidSES(_) => "InvalidSES",
            Error::NotMono => "NotMono",
            Error::DegreeUnsupported(_) => "DegreeUnsupported",
            Error::ClassNotTrivial => "ClassNotTrivial",
            Error::DepthExceeded(_) => "DepthExceeded",
            Error::CoverFailure(_) => "CoverFailure",
            Error::NotAcyclic(_) => "NotAcyclic",
            Error::NotHereditary => "NotHereditary",
            Error::SIsProjective => "SIsProjective",
            Error::Unstable { .. } => "Unstable",
            Error::Verification(_) => "Verification",
        }
    }

    /// True for errors caused by malformed or inconsistent input.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch(_)
                | Error::ModulusMismatch(..)
                | Error::Invalid(_)
                | Error::InvalidSES(_)
                | Error::NotMono
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;


pub(crate) fn verify(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Verification(msg()))
    }
}
