use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("constant term {0} is not a unit in {1}")]
    NonUnit(String, String),
    #[error("coefficient index {index} is beyond the truncation order {order}")]
    BeyondOrder { index: usize, order: usize },
    #[error("a series needs at least one coefficient")]
    Empty,
    #[error("{0} is not a dyadic rational")]
    NotDyadic(String),
    #[error("{0} is not an element of {1}")]
    NotInRing(String, String),
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(String),
    #[error("cannot reduce a series over {0} modulo {1}")]
    BadReduction(String, String),
    #[error("progression residue {residue} is not below the order {order}")]
    ResidueBeyondOrder { residue: usize, order: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("resource cap exceeded: {what} needs about {needed} bytes, cap is {cap} bytes")]
    ResourceCap { what: String, needed: u64, cap: u64 },
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}
