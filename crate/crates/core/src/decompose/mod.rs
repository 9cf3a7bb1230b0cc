//! Constructive tree decompositions.

pub mod assembly;
pub mod chordal;
pub mod lci;
pub mod td;

pub use assembly::{default_strip_assembly, strip_assembly, AssemblyReport};
pub use chordal::{chordal_td, chordless_cycle, is_chordal};
pub use lci::{fuzzy_lci_td, LciReport};
pub use td::{validate_td, TreeDecomposition, Violation};
