use thiserror::Error;

use crate::linalg::FieldTag;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid document at {path}: {message}")]
    Format { path: String, message: String },
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("plane {index} ({label}) has inconsistent equations")]
    InconsistentPlane { index: usize, label: String },
    #[error("expected field {expected}, found {found}")]
    FieldMismatch { expected: FieldTag, found: FieldTag },
    #[error("{what}: size {got} exceeds the limit of {limit}")]
    SizeLimit { what: &'static str, got: usize, limit: usize },
    #[error("face budget of {limit} exceeded")]
    Budget { limit: usize },
    #[error("every plane must be a hyperplane")]
    NotHyperplanes,
    #[error("arrangement is not central")]
    NotCentral,
    #[error("arrangement does not have normal crossings")]
    NotNormalCrossings,
    #[error("{0}")]
    InvalidArgument(String),
    #[error("construction failed at {step}")]
    Construction { step: String },
    #[error("points {0} and {1} coincide")]
    CoincidentPoints(usize, usize),
    #[error("torsion coefficient does not fit in 64 bits")]
    Overflow,
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Format { .. } => "E_FORMAT",
            Error::Json { .. } => "E_JSON",
            Error::InconsistentPlane { .. } => "E_INCONSISTENT",
            Error::FieldMismatch { .. } => "E_FIELD",
            Error::SizeLimit { .. } => "E_SIZE",
            Error::Budget { .. } => "E_BUDGET",
            Error::NotHyperplanes => "E_NOT_HYPERPLANES",
            Error::NotCentral => "E_NOT_CENTRAL",
            Error::NotNormalCrossings => "E_NOT_NORMAL_CROSSINGS",
            Error::InvalidArgument(_) => "E_ARGUMENT",
            Error::Construction { .. } => "E_CONSTRUCTION",
            Error::CoincidentPoints(..) => "E_COINCIDENT",
            Error::Overflow => "E_OVERFLOW",
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. } | Error::SizeLimit { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
