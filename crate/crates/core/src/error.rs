use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MixvolError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ambient dimension {dim} exceeds the configured limit {limit}")]
    DimensionLimit { dim: usize, limit: usize },
    #[error("invalid ray: {0}")]
    InvalidRay(String),
    #[error("polyhedron is unbounded in opposite directions")]
    NotPointed,
    #[error("operation needs a bounded polyhedron")]
    Unbounded,
    #[error("operation needs a nonempty polyhedron")]
    Empty,
    #[error("pair components have different support cones")]
    SupportConeMismatch,
    #[error("symmetric difference unbounded: pair components differ on an unbounded set")]
    UnboundedDifference,
    #[error("covector lies outside the support cone")]
    OutsideSupportCone,
    #[error("stable mixed volume does not exist: values {0} and {1} differ")]
    NotStable(String, String),
    #[error("integer overflow while normalizing a vector")]
    Overflow,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    Schema(String),
}

impl MixvolError {
    /// Stable machine-readable code used in JSON error objects.
    pub fn code(&self) -> &'static str {
        match self {
            MixvolError::DimensionMismatch { .. } => "dimension_mismatch",
            MixvolError::DimensionLimit { .. } => "dimension_limit",
            MixvolError::InvalidRay(_) => "invalid_ray",
            MixvolError::NotPointed => "not_pointed",
            MixvolError::Unbounded => "unbounded",
            MixvolError::Empty => "empty",
            MixvolError::SupportConeMismatch => "support_cone_mismatch",
            MixvolError::UnboundedDifference => "unbounded_difference",
            MixvolError::OutsideSupportCone => "outside_support_cone",
            MixvolError::NotStable(..) => "not_stable",
            MixvolError::Overflow => "overflow",
            MixvolError::Unsupported(_) => "unsupported",
            MixvolError::Precondition(_) => "precondition",
            MixvolError::Schema(_) => "schema",
        }
    }

    pub fn is_schema(&self) -> bool {
        matches!(self, MixvolError::Schema(_))
    }
}

pub type Result<T> = std::result::Result<T, MixvolError>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(MixvolError::Precondition(msg.into()))
}
