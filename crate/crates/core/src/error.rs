use thiserror::Error;

/// Errors raised by the computations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("degree {degree} is outside the constructed range 0..={top}")]
    DegreeOutOfRange { degree: usize, top: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("composite of differentials is non-zero at degree {0}")]
    NotAComplex(usize),

    #[error("matrix is not invertible over {0}")]
    NotInvertible(String),

    #[error("relation {0} does not hold")]
    RelationFails(String),

    #[error("unknown coefficient module `{0}`")]
    UnknownModule(String),

    #[error("missing action for generator `{0}`")]
    MissingGenerator(String),

    #[error("{index} does not divide the group order {order}")]
    IndexNotDivisor { index: usize, order: usize },

    #[error("degeneration unproven beyond degree 9 (requested degree {0})")]
    DegenerationUnproven(usize),

    #[error("action is not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("{forms} linear forms supplied but the lattice has rank {rank}")]
    TooManyForms { forms: usize, rank: usize },

    #[error("the prime {0} is not supported here")]
    UnsupportedPrime(u64),

    #[error("linear form has non-integral coefficients")]
    NonIntegral,

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("cannot parse `{0}`")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
