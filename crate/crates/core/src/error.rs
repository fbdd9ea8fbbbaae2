use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("multiplication table is malformed: {0}")]
    MalformedTable(String),
    #[error("table is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("table has no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("group of order {order} exceeds the configured bound {bound}")]
    OrderBoundExceeded { order: usize, bound: usize },
    #[error("element set is not a subgroup")]
    NotASubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("homomorphism is not bijective")]
    NotBijective,
    #[error("map is not a homomorphism")]
    NotAHomomorphism,
    #[error("{0} action is not a group action")]
    NotAnAction(&'static str),
    #[error("left and right actions do not commute")]
    ActionsDoNotCommute,
    #[error("middle groups do not match: {0} vs {1}")]
    MiddleGroupMismatch(String, String),
    #[error("sigma classes of {0} do not project onto sigma classes of the factors")]
    SigmaNotClosed(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,
    #[error("catalog covers orders up to {covered}, need all orders below {needed}")]
    CatalogInsufficient { covered: usize, needed: usize },
    #[error("morphism does not send the essential ideal into the essential ideal at {0}")]
    IdealNotPreserved(String),
    #[error("functor mismatch: expected {expected}, got {got}")]
    FunctorMismatch { expected: String, got: String },
    #[error("gcd(|H|, |G|) = {0} is not 1")]
    GcdConditionFailed(usize),
    #[error("unknown functor selector {0:?}")]
    UnknownFunctor(String),
    #[error("unknown group label {0:?}")]
    UnknownGroup(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
