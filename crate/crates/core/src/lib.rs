//! Exact independence, matching and critical-difference invariants.
//!
//! Bipartite and almost bipartite graphs (exactly one odd cycle) are handled
//! in polynomial time; other graphs fall back to exhaustive search within
//! configurable bounds.  Brute-force oracles, graph generators and a suite
//! of executable theorem checks are included for cross-validation.

pub mod critical;
pub mod error;
pub mod generators;
pub mod graph;
pub mod independence;
pub mod matching;
pub mod oracle;
pub mod structure;
pub mod workbench;

pub use error::{Error, Result};
pub use graph::{parse_edge_list, Edge, Graph, GraphError, ParseError, VertexSet};
pub use oracle::OracleBounds;
pub use structure::{classify, GraphClass};
