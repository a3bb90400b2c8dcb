//! Invariant covers, their expansion numbers and entropies, and invariance
//! feedback entropy.

mod expansion;
mod invariant;
mod mmcw;
mod refine;

pub use expansion::{cover_rinv, expansion_number, wm_entropy_terms, CoverRinv, CoverStrategy, WmRow};
pub use invariant::{build_cover, Cell, CoverDigraph, InvariantCover, QuasiViolation};
pub use mmcw::{entropy_bounds, mmcw, mmcw_with_cap, weight_product, Cycle, Entropy, EntropyBounds, Mmcw, KARP_TOLERANCE};
pub use refine::{
    atom_refinement, derived_partition, derived_partition_ordered, ife, refinement_search, Certainty,
    IfeResult, Scoring, SearchOptions, SearchOutcome,
};
