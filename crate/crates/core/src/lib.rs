//! Exact small-graph toolkit: balanced separators, treewidth, induced
//! pattern detection, central bags and constructive tree decompositions.

pub mod centralbag;
pub mod certificate;
pub mod circular;
pub mod config;
pub mod corpus;
pub mod detect;
pub mod decompose;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod limits;
pub mod oracle;
pub mod separators;
pub mod strip;
pub mod suites;
pub mod treewidth;
pub mod weights;

pub use error::{Error, Result};
pub use graph::{Graph, Path, Vertex, VertexSet};
pub use limits::{Budget, Limits};
pub use weights::{Balance, WeightFunction};
