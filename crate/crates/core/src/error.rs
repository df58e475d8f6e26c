use thiserror::Error;

/// Errors raised by constructions and transforms.
///
/// Verification never errors; it returns a report instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid caterpillar spec: {0}")]
    InvalidSpec(String),
    #[error("odd cycles are not bipartite: {0}")]
    NonBipartiteUnsupported(String),
    #[error("wrong graph kind: {0}")]
    WrongKind(String),
    #[error("{d} is not an admissible divisor of {e}")]
    NotAdmissible { e: usize, d: usize },
    #[error("label set has {got} elements but the graph has {expected} edges")]
    SizeMismatch { expected: usize, got: usize },
    #[error("invalid label set: {0}")]
    InvalidLabelSet(String),
    #[error("cannot close the caterpillar: {0}")]
    CannotExtend(String),
    #[error("top label {top} is below the maximum label {max}")]
    InvalidTop { top: i64, max: i64 },
    #[error("invalid transform request: {0}")]
    InvalidRequest(String),
    #[error("preconditions not met: {0}")]
    PreconditionsNotMet(String),
    #[error("transforms touch overlapping edges: {0}")]
    NotDisjoint(String),
    #[error("parameter out of domain: {0}")]
    OutOfDomain(String),
    #[error("invalid labeling: {0}")]
    InvalidLabeling(String),
    #[error("search budget exceeded: {0}")]
    SearchBudgetExceeded(String),
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
    #[error("invalid document: {0}")]
    InvalidDocument(String),
}

impl Error {
    /// Stable machine-readable code, used in JSON error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidSpec(_) => "invalid-spec",
            Error::NonBipartiteUnsupported(_) => "non-bipartite-unsupported",
            Error::WrongKind(_) => "wrong-kind",
            Error::NotAdmissible { .. } => "not-admissible",
            Error::SizeMismatch { .. } => "size-mismatch",
            Error::InvalidLabelSet(_) => "invalid-label-set",
            Error::CannotExtend(_) => "cannot-extend",
            Error::InvalidTop { .. } => "invalid-top",
            Error::InvalidRequest(_) => "invalid-request",
            Error::PreconditionsNotMet(_) => "preconditions-not-met",
            Error::NotDisjoint(_) => "not-disjoint",
            Error::OutOfDomain(_) => "out-of-domain",
            Error::InvalidLabeling(_) => "invalid-labeling",
            Error::SearchBudgetExceeded(_) => "search-budget-exceeded",
            Error::InternalContradiction(_) => "internal-contradiction",
            Error::InvalidDocument(_) => "invalid-document",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
