use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("entry {value} at {location} is out of range for size {size}")]
    OutOfRange {
        location: String,
        value: usize,
        size: usize,
    },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("invalid {what}: {report}")]
    Invalid { what: &'static str, report: String },
    #[error("not abelian: elements {0} and {1} do not commute")]
    NotAbelian(usize, usize),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("underlying monoid maps differ")]
    PNotEqual,
    #[error("cochain degree {degree} exceeds the configured guard {limit}")]
    DegreeTooLarge { degree: usize, limit: usize },
    #[error("problem too large: {0}")]
    TooLarge(String),
    #[error("search budget of {budget} candidates exceeded")]
    SearchBudgetExceeded { budget: u64 },
    #[error("cleavage conflict: {0}")]
    CleavageConflict(String),
    #[error("not a cocycle: {0}")]
    NotACocycle(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn invalid<C: std::fmt::Debug>(
        what: &'static str,
        report: &crate::report::ValidationReport<C>,
    ) -> Self {
        Error::Invalid {
            what,
            report: report.to_string(),
        }
    }
}
