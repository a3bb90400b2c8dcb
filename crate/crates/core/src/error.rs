use thiserror::Error;

use crate::spanning::CoverReport;
use crate::textio::SourceDiagnostic;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown input `{0}`")]
    UnknownInput(String),

    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("target set is not controlled invariant; violating states: {violating:?}")]
    NotControlledInvariant { violating: Vec<String> },

    #[error("{search} exceeded its budget of {budget} expansions")]
    SearchBudgetExceeded {
        search: &'static str,
        budget: u64,
        /// Best value found before the budget ran out, if any.
        incumbent: Option<u64>,
    },

    #[error("control words have different lengths ({expected} vs {found})")]
    LengthMismatch { expected: usize, found: usize },

    #[error("word space |U|^n = {inputs}^{len} does not fit in 64 bits")]
    WordSpaceTooLarge { inputs: usize, len: usize },

    #[error("horizon must be at least 1")]
    HorizonZero,

    #[error("horizon must be at least {min}, got {got}")]
    HorizonTooShort { min: usize, got: usize },

    #[error("subset K is not contained in the target; outside: {outside:?}")]
    SubsetOutsideTarget { outside: Vec<String> },

    #[error("cover conditions not met: {}", .report.summary())]
    ConditionsNotMet {
        report: Box<CoverReport>,
        /// log2 of the admissible-matrix radius when V still covers Q (an upper bound on h_inv).
        upper_bound: Option<(f64, f64)>,
    },

    #[error("invalid cover: {0}")]
    InvalidCover(String),

    #[error("cells do not cover the target; uncovered states: {uncovered:?}")]
    NotACover { uncovered: Vec<String> },

    #[error("cell `{cell}` is not invariant under its input; escaping states: {escaping:?}")]
    NotInvariantCell { cell: String, escaping: Vec<String> },

    #[error("cover is not a quasi-invariant-partition: {0}")]
    NotQuasiPartition(String),

    #[error("derived partition has an empty residual cell `{cell}`")]
    EmptyResidualCell { cell: String },

    #[error("no atom refinement: F({state}, {input}) meets Q_{cell_input} in more than one point")]
    NotAtomRefinable {
        state: String,
        input: String,
        cell_input: String,
    },

    #[error("matrix order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("spectral radius iteration did not converge within {0} steps")]
    NonConvergence(usize),

    #[error("simple cycle enumeration exceeded the cap of {0} cycles")]
    CycleBudgetExceeded(usize),

    #[error("{}", format_diagnostics(.0))]
    Parse(Vec<SourceDiagnostic>),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn format_diagnostics(diags: &[SourceDiagnostic]) -> String {
    diags
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join("\n")
}

impl Error {
    /// The variant name, used to tag CLI error messages.
    pub fn name(&self) -> &'static str {
        match self {
            Error::UnknownInput(_) => "UnknownInput",
            Error::UnknownState(_) => "UnknownState",
            Error::InvalidSystem(_) => "InvalidSystem",
            Error::NotControlledInvariant { .. } => "NotControlledInvariant",
            Error::SearchBudgetExceeded { .. } => "SearchBudgetExceeded",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::WordSpaceTooLarge { .. } => "WordSpaceTooLarge",
            Error::HorizonZero => "HorizonZero",
            Error::HorizonTooShort { .. } => "HorizonTooShort",
            Error::SubsetOutsideTarget { .. } => "SubsetOutsideTarget",
            Error::ConditionsNotMet { .. } => "ConditionsNotMet",
            Error::InvalidCover(_) => "InvalidCover",
            Error::NotACover { .. } => "NotACover",
            Error::NotInvariantCell { .. } => "NotInvariantCell",
            Error::NotQuasiPartition(_) => "NotQuasiPartition",
            Error::EmptyResidualCell { .. } => "EmptyResidualCell",
            Error::NotAtomRefinable { .. } => "NotAtomRefinable",
            Error::OrderMismatch { .. } => "OrderMismatch",
            Error::NonConvergence(_) => "NonConvergence",
            Error::CycleBudgetExceeded(_) => "CycleBudgetExceeded",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
        }
    }
}
