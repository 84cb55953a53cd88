use crate::assessment::AssessmentKind;
use crate::model::{ElementId, ValidationReport};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("framework is invalid: {} error(s)", .0.errors().count())]
    FrameworkInvalid(ValidationReport),

    #[error("method `{method}` is invalid: {} error(s)", .report.errors().count())]
    MethodInvalid {
        method: ElementId,
        report: ValidationReport,
    },

    #[error("observation set is invalid: {} error(s)", .0.errors().count())]
    ObservationsInvalid(ValidationReport),

    #[error("{kind} requires the adequacy of the method to be assessed first; no adequacy report was supplied")]
    AdequacyMissing { kind: AssessmentKind },

    #[error("{what} refers to method `{found}` but the method under assessment is `{expected}`")]
    MismatchedMethod {
        what: &'static str,
        expected: ElementId,
        found: ElementId,
    },

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("at least one method is required")]
    NoMethods,

    #[error("method id `{0}` appears more than once")]
    DuplicateMethod(ElementId),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("document is well formed but fails validation: {} error(s)", .0.errors().count())]
    Semantic(ValidationReport),
}

impl Error {
    /// Stable token naming the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::FrameworkInvalid(_) => "framework-invalid",
            Error::MethodInvalid { .. } => "method-invalid",
            Error::ObservationsInvalid(_) => "observations-invalid",
            Error::AdequacyMissing { .. } => "adequacy-missing",
            Error::MismatchedMethod { .. } => "mismatched-method",
            Error::UnknownElement(_) => "unknown-element",
            Error::NoMethods => "no-methods",
            Error::DuplicateMethod(_) => "duplicate-method",
            Error::Syntax { .. } => "syntax-error",
            Error::Schema(_) => "schema-error",
            Error::Semantic(_) => "semantic-error",
        }
    }

    /// The validation report carried by the error, if any.
    pub fn report(&self) -> Option<&ValidationReport> {
        match self {
            Error::FrameworkInvalid(r) | Error::ObservationsInvalid(r) | Error::Semantic(r) => {
                Some(r)
            }
            Error::MethodInvalid { report, .. } => Some(report),
            _ => None,
        }
    }
}
