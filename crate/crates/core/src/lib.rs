//! Invariance entropy and invariance feedback entropy of finite uncertain
//! control systems.
//!
//! A system `(X, U, F)` has finitely many states and inputs and a strict
//! set-valued transition map. For a controlled invariant set `Q` the crate
//! computes minimal spanning sets and `r_inv(n, K, Q)`, the admissible matrix
//! and the closed form `h_inv(Q) = log₂ ρ(M_{Q,V})`, invariant covers with
//! their expansion numbers, maximum mean cycle weights and spectral bounds,
//! and the invariance feedback entropy via atom refinements.

pub mod cli;
pub mod cover;
pub mod error;
pub mod fixtures;
pub mod graphnum;
pub mod model;
pub mod oracle;
pub mod setcover;
pub mod spanning;
pub mod textio;

pub use error::{Error, Result};
pub use graphnum::LogValue;
pub use model::{ControlWord, InputSet, StateSet, UncertainSystem};
