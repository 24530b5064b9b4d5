//! Error type shared by every module in the crate.

use crate::counting::CaseTag;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p must be an odd prime, got {0}")]
    NotOddPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order p^n = {0} is not below the supported limit 2^31")]
    FieldTooLarge(u128),
    #[error("invalid modulus: {0}")]
    BadModulus(String),
    #[error("element index {index} out of range for a field of order {q}")]
    IndexOutOfRange { index: u64, q: u64 },
    #[error("inversion of zero in a field of order {q}")]
    ZeroInversion { q: u64 },
    #[error("a linear form needs at least one nonzero coefficient")]
    ZeroLinearForm,
    #[error("a quadratic form needs at least one nonzero coefficient")]
    ZeroQuadraticForm,
    #[error("closed-form count requires r != 0, i.e. L must not divide Q")]
    LDividesQ,
    #[error("operation requires the GENERIC case, instance is {0}")]
    NotGeneric(CaseTag),
    #[error("no half-density blocking set is defined in case {0}")]
    NoBlockingSet(CaseTag),
    #[error("brute-force guard: q = {q} exceeds the configured limit {limit}")]
    BruteGuard { q: u64, limit: u64 },
    #[error("graph guard: q = {q} exceeds the configured limit {limit}")]
    GraphGuard { q: u64, limit: u64 },
    #[error("subset oracle requires q <= {limit}, got q = {q}")]
    OracleGuard { q: u64, limit: u64 },
    #[error("clique oracle requires at most {limit} vertices, got {vertices}")]
    CliqueOracleGuard { vertices: usize, limit: usize },
    #[error("the zero polynomial has no radical")]
    ZeroPolynomial,
    #[error("polynomial is a square in the algebraic closure; the root-count bound does not apply")]
    SquareInClosure,
    #[error("pair-density check requires |A|, |B| > sqrt(q); got |A| = {a}, |B| = {b} over q = {q}")]
    SetsTooSmall { a: usize, b: usize, q: u64 },
    #[error("short-interval probe requires a prime field, got extension degree {0}")]
    PrimeFieldRequired(u32),
    #[error("u and v must both be nonzero")]
    ZeroParameter,
    #[error("ring modulus must be odd and at least 3, got {0}")]
    BadRingModulus(u64),
    #[error("no linear coefficient is invertible modulo {0}")]
    NoCoprimePivot(u64),
    #[error("{0} must be reduced modulo {1}")]
    RingCoefficientRange(u64, u64),
    #[error("{0} does not divide the ring modulus {1}")]
    NotARingPrime(u64, u64),
    #[error("ring verification guard: N = {n} exceeds the configured limit {limit}")]
    RingGuard { n: u64, limit: u64 },
    #[error("ring forms need at least one nonzero coefficient modulo N")]
    ZeroRingForm,
    #[error("malformed DIMACS input: {0}")]
    DimacsParse(String),
}
