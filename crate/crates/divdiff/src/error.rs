use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty sample set")]
    EmptySamples,
    #[error("nodes and values differ in length ({nodes} vs {values})")]
    LengthMismatch { nodes: usize, values: usize },
    #[error("non-finite entry at index {0}")]
    NonFinite(usize),
    #[error("coincident nodes at indices {0} and {1}")]
    CoincidentNodes(usize, usize),
    #[error("empty index list")]
    EmptyIndices,
    #[error("index {index} out of range for {len} samples")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("split r = {r} out of range 0..={n}")]
    SplitOutOfRange { r: usize, n: usize },
    #[error("rho undefined at node: x coincides with node {0}; use a grid formula or the subset method")]
    AtNode(usize),
    #[error("order {order} needs at most {max} for this support")]
    OrderOutOfRange { order: usize, max: usize },
    #[error("insufficient support: {0}")]
    InsufficientSupport(String),
    #[error("underdetermined fit: {have} points for degree {degree}")]
    Underdetermined { have: usize, degree: usize },
    #[error("{count} subsets exceed the limit of {limit}")]
    TooManySubsets { count: u128, limit: u128 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
