//! Integer matrices, entrywise norms, spectral radius enclosures, graph
//! decompositions and exact logarithmic values shared by the entropy modules.

pub mod graph;
pub mod logvalue;
pub mod matrix;
pub mod spectral;

pub use graph::{karp_max_mean, scc, simple_cycles, DEFAULT_CYCLE_CAP};
pub use logvalue::{log2_big, LogValue};
pub use matrix::CountMatrix;
pub use spectral::{
    rho_is_one, spectral_radius, structural_radius, LogInterval, RadiusEnclosure,
    StructuralRadius, DEFAULT_TOL,
};
