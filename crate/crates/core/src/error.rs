use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("size limit exceeded: {what} would need {needed}, limit is {limit}")]
    SizeLimit {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    #[error("membership error: {0}")]
    Membership(String),
    #[error("unsupported degree {degree} (supported: {supported})")]
    UnsupportedDegree { degree: i32, supported: &'static str },
    #[error("unsupported coefficients: {0}")]
    UnsupportedCoefficients(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("map is not well defined: {0}")]
    WellDefined(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("invalid model: {0}")]
    Model(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
