use thiserror::Error;

use crate::graph::GraphError;

/// Failures of invariant computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("graph is not almost bipartite")]
    NotAlmostBipartite,
    #[error("exact general matching needs n <= {bound}, got n = {n}")]
    TooLargeForExactGeneralMatching { n: usize, bound: usize },
    #[error("{what} needs n <= {bound}, got n = {n}")]
    TooLarge {
        what: &'static str,
        n: usize,
        bound: usize,
    },
    #[error("sets passed to a matching query overlap")]
    OverlappingSets,
    #[error("odd-cycle decomposition violated an invariant: {0}")]
    InternalStructureViolation(String),
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("invalid generator model: {0}")]
    InvalidModel(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub type Result<T> = std::result::Result<T, Error>;
