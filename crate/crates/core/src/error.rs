use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("Jacobi symbol needs an odd positive modulus, got {0}")]
    BadJacobiModulus(BigInt),
    #[error("quadratic character needs a cyclic group of even order, got {0}")]
    OddGroupOrder(BigInt),
    #[error("{value} does not lie in the subgroup of order {order}")]
    NotInSubgroup { value: String, order: BigInt },
    #[error("cyclotomic integers over different primes ({0} and {1})")]
    CyclotomicMismatch(u32, u32),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("field of order {order} exceeds the cap {cap}")]
    FieldTooLarge { order: u64, cap: u64 },
    #[error("zero has no discrete logarithm")]
    LogOfZero,
    #[error("{beta} is not in the norm-one subgroup of a field with |k'| = {qprime}")]
    NotNormOne { beta: String, qprime: BigInt },
    #[error("multiplier {multiplier} is not a unit modulo {modulus}")]
    MultiplierNotUnit { multiplier: i64, modulus: BigInt },
    #[error("totally ramified multiplier must be odd, got {0}")]
    EvenMultiplier(u64),
    #[error("invalid field datum: {0}")]
    InvalidDatum(String),
    #[error("datum of degree {n} exceeds the enumeration cap {cap}")]
    DegreeTooLarge { n: u64, cap: u64 },
    #[error("symmetry tests disagree on orbit [1, {rep}]: {detail}")]
    SymmetryDisagreement { rep: String, detail: String },
    #[error("invalid tower scenario: {0}")]
    InvalidScenario(String),
    #[error("subfield E_{index} = ({e_j}, {f_j}) is fixed by {found} cosets, expected {expected}")]
    MembershipCount { index: usize, e_j: u64, f_j: u64, found: u64, expected: u64 },
    #[error("symmetric ramified root sits at even level {0}")]
    RamifiedParity(u64),
    #[error("no symmetric ramified orbit in this datum")]
    NoRamifiedOrbit,
    #[error("missing symmetric ramified data for a ramified orbit")]
    MissingSymRam,
    #[error("inconsistency: {0}")]
    Inconsistency(String),
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
