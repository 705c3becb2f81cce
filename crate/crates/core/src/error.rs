use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Broad grouping of errors, used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorFamily {
    Input,
    Validation,
    Unsupported,
    Limit,
    Internal,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed exponent vector: {0}")]
    MalformedVector(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid cover data: {0}")]
    InvalidCover(String),
    #[error("branch point {0} carries the trivial class")]
    TrivialBranchClass(String),
    #[error("duplicate branch label {0}")]
    DuplicateLabel(String),
    #[error("branching over the distinguished point: {0}")]
    BranchedAtInfinity(String),
    #[error("unknown class {0}")]
    UnknownClass(String),
    #[error("unknown character {0}")]
    UnknownCharacter(String),
    #[error("t value for character {character} is not a nonnegative integer ({value})")]
    NonIntegralInvariant { character: String, value: String },
    #[error("character {0} has t = 0; the fibered product is reducible")]
    DegenerateCover(String),
    #[error("genus is not an integer ({0})")]
    NonIntegralGenus(String),
    #[error("operation requires an Abelian group")]
    NotAbelian,
    #[error("operation requires base genus 0, got {0}")]
    UnsupportedBaseGenus(u64),
    #[error("divisor is not invariant: {0}")]
    NonInvariantInput(String),
    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),
    #[error("invalid equation: {0}")]
    InvalidEquation(String),
    #[error("search space of {size} assignments exceeds cap {cap}")]
    SearchSpaceTooLarge { size: u128, cap: u128 },
    #[error("output of {count} items exceeds cap {cap}")]
    OutputTooLarge { count: u128, cap: u128 },
    #[error("(genus {genus}, q = {q}) is outside the admissible window")]
    AdmissibilityViolation { genus: u64, q: i64 },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("eigenvalue table mismatch: {0}")]
    NTableMismatch(String),
    #[error("dimension is not an integer ({0})")]
    NonIntegralDimension(String),
    #[error("the identity element has no fixed-point trace")]
    IdentityElement,
}

impl Error {
    /// Stable identifier for machine-readable reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::MalformedVector(_) => "MalformedVector",
            Error::InvalidGroup(_) => "InvalidGroup",
            Error::InvalidCover(_) => "InvalidCover",
            Error::TrivialBranchClass(_) => "TrivialBranchClass",
            Error::DuplicateLabel(_) => "DuplicateLabel",
            Error::BranchedAtInfinity(_) => "BranchedAtInfinity",
            Error::UnknownClass(_) => "UnknownClass",
            Error::UnknownCharacter(_) => "UnknownCharacter",
            Error::NonIntegralInvariant { .. } => "NonIntegralInvariant",
            Error::DegenerateCover(_) => "DegenerateCover",
            Error::NonIntegralGenus(_) => "NonIntegralGenus",
            Error::NotAbelian => "NotAbelian",
            Error::UnsupportedBaseGenus(_) => "UnsupportedBaseGenus",
            Error::NonInvariantInput(_) => "NonInvariantInput",
            Error::InvalidDivisor(_) => "InvalidDivisor",
            Error::InvalidEquation(_) => "InvalidEquation",
            Error::SearchSpaceTooLarge { .. } => "SearchSpaceTooLarge",
            Error::OutputTooLarge { .. } => "OutputTooLarge",
            Error::AdmissibilityViolation { .. } => "AdmissibilityViolation",
            Error::InternalInconsistency(_) => "InternalInconsistency",
            Error::NTableMismatch(_) => "NTableMismatch",
            Error::NonIntegralDimension(_) => "NonIntegralDimension",
            Error::IdentityElement => "IdentityElement",
        }
    }

    pub fn family(&self) -> ErrorFamily {
        match self {
            Error::MalformedVector(_)
            | Error::InvalidGroup(_)
            | Error::InvalidCover(_)
            | Error::TrivialBranchClass(_)
            | Error::DuplicateLabel(_)
            | Error::BranchedAtInfinity(_)
            | Error::UnknownClass(_)
            | Error::UnknownCharacter(_)
            | Error::NonInvariantInput(_)
            | Error::InvalidDivisor(_)
            | Error::InvalidEquation(_)
            | Error::NTableMismatch(_)
            | Error::IdentityElement => ErrorFamily::Input,
            Error::NonIntegralInvariant { .. }
            | Error::DegenerateCover(_)
            | Error::NonIntegralGenus(_)
            | Error::NonIntegralDimension(_) => ErrorFamily::Validation,
            Error::NotAbelian
            | Error::UnsupportedBaseGenus(_)
            | Error::AdmissibilityViolation { .. } => ErrorFamily::Unsupported,
            Error::SearchSpaceTooLarge { .. } | Error::OutputTooLarge { .. } => ErrorFamily::Limit,
            Error::InternalInconsistency(_) => ErrorFamily::Internal,
        }
    }
}
