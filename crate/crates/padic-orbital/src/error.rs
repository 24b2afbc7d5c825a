use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),
    #[error("precision {prec} is out of range for p = {p}")]
    InvalidPrecision { p: u32, prec: u32 },
    #[error("{0} is a square modulo p, not a non-residue")]
    NotNonResidue(u32),
    #[error("zero input")]
    ZeroInput,
    #[error("insufficient p-adic precision: {0}")]
    InsufficientPrecision(String),
    #[error("pole of the Cayley map")]
    Pole,
    #[error("element of valuation {0} is not a uniformiser")]
    NotUniformiser(i32),
    #[error("the Gamma factor of an unramified character with trivial value at p is a pole")]
    TrivialCharacter,
    #[error("additive character must have depth -1, found {0}")]
    WrongDepth(i32),
    #[error("boundary shell {shell} has magnitude {magnitude:e}; window miscomputed")]
    BoundaryShell { shell: i32, magnitude: f64 },
    #[error("theta is not one of the standard representatives 1, eps, varpi")]
    UnreducedTheta,
    #[error("no square root where one is required: {0}")]
    MissingSqrt(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("operation not valid in regime {0}")]
    WrongRegime(String),
}

pub type Result<T> = std::result::Result<T, Error>;
