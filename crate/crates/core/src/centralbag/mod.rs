//! Separations, covering sequences and central bags, with the checks that
//! decide which conditional statements apply to a given instance.

pub mod bag;
pub mod checks;
pub mod clique;
pub mod pipeline;
pub mod separation;
pub mod sequence;

pub use bag::{bag_invariants, central_bag, generator_a_loosely_laminar, validate_audit, AuditEntry, AuditReason, BagInvariants, CentralBagResult, Stage};
pub use checks::{
    check_bag_separator_transfer, check_clique_bag, forcer_elimination_check, no_small_separator, Assertion, ForcerReport,
    SeparatorHypothesis, TransferReport, Verdict,
};
pub use clique::{clique_bag_report, clique_central_bag, clique_covering, clique_cutsets, has_clique_cutset, CliqueBagReport};
pub use pipeline::{run_master_pipeline, PipelineReport, TreewidthBound};
pub use separation::{canonical_separation, is_primordial, is_shield, make_primordial, relation, Relation, Separation};
pub use sequence::{
    covering_sequence, dimension_bound, dimension_partition, gamma, is_strongly_laminar, measure_goodness, Goodness,
    SeparationSequence, SkippedCopy,
};
