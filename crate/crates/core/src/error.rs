use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("algebra is not associative: (u{0} u{1}) u{2} != u{0} (u{1} u{2})", .triple.0, .triple.1, .triple.2)]
    NonAssociative { triple: (usize, usize, usize) },
    #[error("unit is not a two-sided identity (fails on basis element u{0})")]
    BadUnit(usize),
    #[error("malformed algebra spec: {0}")]
    MalformedSpec(String),
    #[error("invalid degree structure: {0}")]
    InvalidDegree(String),
    #[error("characteristic polynomial coefficient s_{index} = {value} does not lie in the base field")]
    CoefficientNotInBase { index: usize, value: String },
    #[error("automorphism does not have order {0}")]
    AutomorphismOrderWrong(usize),
    #[error("map is not a ring automorphism of the extension: {0}")]
    NotAutomorphism(String),
    #[error("operation requires degree {expected}, algebra has degree {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("wrong shape: {0}")]
    WrongShape(String),
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error(
        "ambient dimension {dim} exceeds the cap of {cap} columns (raise --dim-cap or pass --force)"
    )]
    DimensionGuardExceeded { dim: usize, cap: usize },
    #[error("ideal is not stable under {0}")]
    IdealNotStable(String),
    #[error("unsupported extension: {0}")]
    UnsupportedExtension(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
