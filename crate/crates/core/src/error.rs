use thiserror::Error;

use crate::coeff::RingSpec;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: RingSpec, right: RingSpec },

    #[error("{0} is not a prime")]
    InvalidPrime(u64),

    #[error("at most 16 Grassmann generators are supported, got {0}")]
    TooManyGenerators(usize),

    #[error("Grassmann generator e{index} out of range for {ring}")]
    GeneratorOutOfRange { index: usize, ring: RingSpec },

    #[error("element is not invertible")]
    NotInvertible,

    #[error("operation requires an even-homogeneous element")]
    NotEven,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("polynomials over different variable registries")]
    RegistryMismatch,

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    /// The homotopy normalizer `k + i` vanishes in the coefficient field.
    #[error("homotopy normalizer {value} is not invertible in {ring}")]
    NonInvertibleNormalizer { value: i64, ring: RingSpec },

    #[error("operator left strand {from} (landed in {to})")]
    StrandViolation { from: String, to: String },

    #[error("matrix entry is not a ground-field element: {0}")]
    NonFieldEntry(String),

    #[error("differential does not square to zero on strand {0}")]
    NotNilpotent(String),

    #[error("cycle is not in span(generator) + image")]
    NoSolution,

    #[error("supermatrix is not invertible")]
    SingularSupermatrix,

    #[error("invalid supermatrix: {0}")]
    InvalidSupermatrix(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
