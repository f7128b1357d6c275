use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} is too large")]
    PrimeTooLarge(u64),
    #[error("modulus {0} is not irreducible")]
    ReducibleModulus(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("negative valuation at {0}")]
    NegativeValuation(String),
    #[error("singular Weierstrass model (discriminant is zero)")]
    SingularModel,
    #[error("Weierstrass coefficients are not integral at {0}")]
    NonIntegral(String),
    #[error("model does not satisfy the height bound: {0}")]
    HeightPrecondition(String),
    #[error("precision {precision} is too small to certify [p] in characteristic {p}")]
    PrecisionTooSmall { precision: usize, p: u64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
