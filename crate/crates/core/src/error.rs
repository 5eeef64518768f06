use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("coefficient {0} is not p-integral")]
    NotIntegral(String),
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("modulus is reducible: {0}")]
    Reducible(String),
    #[error("modulus must not be y above the prime field")]
    ModulusIsY,
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("level {0} out of range")]
    LevelOutOfRange(usize),
    #[error("slope must be positive, got {0}")]
    NonPositiveSlope(String),
    #[error("degree {deg} is not a multiple of {m}")]
    DegreeNotMultiple { deg: usize, m: usize },
    #[error("not a key polynomial: {0}")]
    NotKeyPolynomial(String),
    #[error("improper augmentation: key polynomial is equivalent to the previous one")]
    ImproperStep,
    #[error("cannot collapse level {level}: degrees {lower} and {upper} differ")]
    NotStationary { level: usize, lower: usize, upper: usize },
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("invalid type: {0}")]
    InvalidType(String),
    #[error("representative is not integral at level {0}")]
    NonIntegralRepresentative(usize),
    #[error("invalid field element: {0}")]
    InvalidElement(String),
    #[error("json: {0}")]
    Json(String),
    #[error("Montes iteration did not terminate within {0} levels")]
    DepthExceeded(usize),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
