use thiserror::Error;

use crate::arith::Int;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid modulus {0}: expected an odd prime")]
    InvalidModulus(u64),
    #[error("polynomial vanishes identically mod {0}")]
    DegeneratePolynomial(u64),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid roots: {0}")]
    InvalidRoots(String),
    #[error("leading coefficient {0} is not a perfect square")]
    NonSquareLeading(Int),
    #[error("cannot normalize: {0}")]
    CannotNormalize(String),
    #[error("singular curve: {0}")]
    Singular(String),
    #[error("singular fiber at t = {0}")]
    SingularFiber(String),
    #[error("point outside the domain of the map: {0}")]
    Exclusion(String),
    #[error("point is not on the curve: {0}")]
    NotOnCurve(String),
    #[error("points lie on different curves")]
    CurveMismatch,
    #[error("characteristic {0} is not supported")]
    UnsupportedCharacteristic(u64),
    #[error("prime {0} divides a coefficient denominator")]
    UnsupportedPrime(u64),
    #[error("precision error: {0}")]
    Precision(String),
    #[error("factorization did not finish: {0}")]
    Factorization(String),
    #[error("catalog transcription error: {0}")]
    Transcription(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
