use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two classes do not live on the same lattice.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// A transform was asked to move a class to a surface that is not an
    /// ancestor/descendant of its own.
    #[error("lineage error: {0}")]
    Lineage(String),
    #[error("incidence error: {0}")]
    Incidence(String),
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("inconsistent configuration: {0}")]
    InconsistentConfiguration(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("unknown curve or component `{0}`")]
    UnknownCurve(String),
    #[error("flavor {flavor} does not apply to base {base}")]
    FlavorMismatch { flavor: String, base: String },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("blowup budget exceeded: {blowups} blowups over {base} (limit {limit})")]
    BudgetExceeded { base: String, blowups: usize, limit: usize },
    #[error("predicate violation: {0}")]
    PredicateViolation(String),
    #[error("unsupported contraction: {0}")]
    UnsupportedContraction(String),
    #[error("unknown fixture: {0}")]
    UnknownFixture(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Short machine-readable tag used in structured error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dimension(_) => "dimension",
            Error::Lineage(_) => "lineage",
            Error::Incidence(_) => "incidence",
            Error::InvalidConfiguration(_) => "invalid-configuration",
            Error::InconsistentConfiguration(_) => "inconsistent-configuration",
            Error::UnknownPoint(_) => "unknown-point",
            Error::UnknownCurve(_) => "unknown-curve",
            Error::FlavorMismatch { .. } => "flavor-mismatch",
            Error::NotApplicable(_) => "not-applicable",
            Error::BudgetExceeded { .. } => "budget-exceeded",
            Error::PredicateViolation(_) => "predicate-violation",
            Error::UnsupportedContraction(_) => "unsupported-contraction",
            Error::UnknownFixture(_) => "unknown-fixture",
            Error::Parse(_) => "parse",
        }
    }
}
