//! Admissible families, spanning sets and the invariance entropy `h_inv`.

mod admissible;
mod families;
mod rinv;
mod symbolic;
pub mod words;

pub use admissible::{check_admissible, Admissibility, AdmissibleTree, Rejection, TreeNode};
pub use families::enumerate_families;
pub use rinv::{
    entropy_report, r_inv, EntropyReport, ReportRow, RinvResult, SpanningCertificate,
    DEFAULT_BUDGET,
};
pub use symbolic::{
    admissible_matrix, check_conditions, finite_n_identity_check, h_inv_exact, C2Check,
    CoverReport, HinvExact, IdentityCheck,
};
