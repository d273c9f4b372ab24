use thiserror::Error;

/// Errors surfaced by field construction, counting, and the comparison pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus must be monic of degree {expected}, got degree {got:?}")]
    BadModulusDegree { expected: u32, got: Option<usize> },
    #[error("modulus is reducible over F_{p}")]
    ReducibleModulus { p: u64 },
    #[error("field order p^k = {0} exceeds the supported limit {1}")]
    FieldTooLarge(u128, u64),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("division by zero in a finite field")]
    DivisionByZero,
    #[error("square root of a nonsquare element")]
    NonSquare,
    #[error("zero polynomial where a nonzero polynomial is required")]
    ZeroPolynomial,
    #[error("curve model is singular")]
    SingularModel,
    #[error("enumeration budget exceeded: need {needed} elements, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("point counts are inconsistent: {0}")]
    InconsistentCounts(String),
    #[error("Weil bound violated: {0}")]
    WeilViolation(String),
    #[error("operation requires odd characteristic")]
    EvenCharacteristic,
    #[error("operation requires characteristic 2")]
    OddCharacteristic,
    #[error("cover specification is invalid: {0}")]
    BadCoverSpec(String),
    #[error("cover is ramified (reduced pole order {pole_order})")]
    RamifiedCover { pole_order: i64 },
    #[error("local expansion precision insufficient: have {have} terms, need {need}")]
    PrecisionInsufficient { have: usize, need: usize },
    #[error("curves have different genera ({0} vs {1})")]
    GenusMismatch(u32, u32),
    #[error("curves are defined over different fields")]
    BaseFieldMismatch,
    #[error("L-polynomials are equal; no distinguishing prime exists")]
    EqualLPolynomials,
    #[error("{0} is not a prime modulus for coefficient reduction")]
    EllNotPrime(u64),
    #[error("census is only implemented for q in {{2, 3}}, got {0}")]
    UnsupportedCensusField(u64),
    #[error("unknown curve family '{0}'")]
    UnknownFamily(String),
    #[error("family template degenerates at p = {0}")]
    DegenerateFamily(u64),
    #[error("tail bound requires lower limit >= 59, got {0}")]
    TailBoundRange(u64),
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("arithmetic overflow in exact integer computation")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;
