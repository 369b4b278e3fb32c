use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("hypergraph has no hyperedges")]
    EmptyInput,
    #[error("node {node} out of range (|V| = {len})")]
    NodeOutOfRange { node: usize, len: usize },
    #[error("hyperedge {edge} out of range (|E| = {len})")]
    EdgeOutOfRange { edge: usize, len: usize },
    #[error("invalid argument: {0}")]
    Domain(String),
    #[error("instance count exceeds cap of {cap}")]
    CapExceeded { cap: usize },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
