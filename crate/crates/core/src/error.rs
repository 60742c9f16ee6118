use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("capacity exceeded: {needed} vertices requested, at most {max} supported")]
    Capacity { needed: usize, max: usize },

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Parse { offset: usize, reason: String },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// The search stopped before proving optimality. `lower..=upper` brackets the true value.
    #[error("solver budget exhausted after {nodes} nodes (value in [{lower}, {upper}])")]
    Budget {
        nodes: u64,
        lower: usize,
        upper: usize,
    },

    /// A solver returned values that break the chain `1 <= p <= q <= r <= 2q`. Always a bug.
    #[error("internal solver fault: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
