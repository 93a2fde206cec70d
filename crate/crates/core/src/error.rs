use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("value is not a Laurent polynomial: denominator does not divide numerator")]
    NotPolynomial,
    #[error("value is not symmetric under q -> 1/q")]
    NotSymmetric,
    #[error("odd powers of q^(1/2) survive")]
    HalfPower,
    #[error("division by zero")]
    DivisionByZero,
    #[error("valuation of zero is undefined")]
    ZeroValuation,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("degree mismatch: |lambda| = {0}, |rho| = {1}")]
    DegreeMismatch(usize, usize),
    #[error("partition vector has {got} entries, diagram has {expected} edges")]
    LengthMismatch { expected: usize, got: usize },
    #[error("curve class has {got} components, diagram has {expected} classes")]
    ClassDimension { expected: usize, got: usize },
    #[error("the zero curve class is not allowed here")]
    ZeroClass,
    #[error("class degree {degree} exceeds the configured cutoff {d_max}")]
    DegreeTooLarge { degree: u64, d_max: u64 },
    #[error("unknown diagram '{0}'")]
    UnknownDiagram(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("table does not contain class {0:?}")]
    MissingClass(Vec<u64>),
    #[error("alpha is not completely multiplicative: alpha({a})alpha({b}) != alpha({ab})", ab = a * b)]
    NotMultiplicative { a: u64, b: u64 },
    #[error("integrality violation for class {sigma:?}: {diagnostic}")]
    IntegralityViolation { sigma: Vec<u64>, diagnostic: String },
    #[error("cache: {0}")]
    Cache(String),
    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
