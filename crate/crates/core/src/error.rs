use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is not an irreducible polynomial of degree {0}")]
    ReducibleModulus(u32),
    #[error("field size p^m does not fit in 32 bits")]
    FieldTooLarge,
    #[error("no element of order {0} (it does not divide q-1)")]
    NoSuchRoot(u64),
    #[error("GF(p^{sub}) is not a subfield of GF(p^{m})")]
    InvalidSubfield { sub: u32, m: u32 },
    #[error("element is not an {0}-th power")]
    NotAnMthPower(u64),
    #[error("zero has no discrete logarithm")]
    ZeroInput,
    #[error("linearized polynomial does not split over the field: {0}")]
    KernelDefect(String),
    #[error("{n} is not {bound}-smooth (prime factor {witness})")]
    NotSmooth { n: u64, bound: u64, witness: u64 },
    #[error("polynomial has {len} coefficients but the domain only has {n} points")]
    DegreeTooLarge { len: usize, n: usize },
    #[error("invalid evaluation domain: {0}")]
    BadDomain(String),
    #[error("point fails its defining equation: {0}")]
    FiberDefect(String),
    #[error("descriptor fails the tower conditions: {0}")]
    InvalidDescriptor(String),
    #[error("dimension {got} differs from lambda + 1 - g = {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("function has pole bound {got}, plan was built for {expected}")]
    PlanMismatch { expected: u64, got: u64 },
    #[error("word is not a codeword")]
    NotInCode,
    #[error("generator matrix has rank {rank} < {k}")]
    RankDefect { rank: usize, k: usize },
    #[error("{0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("kappa = {0} is not a power of the characteristic {1}")]
    BadKappa(u64, u32),
    #[error("tower height n = {n} must satisfy 2 <= n <= kappa/2 (kappa = {kappa})")]
    BadTowerHeight { n: u32, kappa: u64 },
    #[error("fiber Vandermonde matrix is singular")]
    SingularFiber,
    #[error("pole bound {lambda} must be below the code length {n}")]
    LambdaTooLarge { lambda: u64, n: usize },
    #[error("{0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
