use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failures raised by the numerical constructions.
///
/// Every variant that comes from a numerical gate carries the measured
/// quantity and the bound it was compared against, so callers can report
/// the verdict without recomputing anything.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian: residual {residual:.3e} exceeds {bound:.3e}")]
    NotHermitian { residual: f64, bound: f64 },

    #[error(
        "operator is not invertible: smallest eigenvalue {min_eigenvalue:.3e} \
         is not above {bound:.3e} (largest {max_eigenvalue:.3e})"
    )]
    NotInvertible {
        min_eigenvalue: f64,
        max_eigenvalue: f64,
        bound: f64,
    },

    #[error("commutator too large: residual {residual:.3e} exceeds {bound:.3e}")]
    CommutatorViolation { residual: f64, bound: f64 },

    #[error(
        "vectors do not form a frame: frame operator spectrum [{lower:.3e}, {upper:.3e}] \
         has no positive lower bound above {bound:.3e}"
    )]
    NotAFrame { lower: f64, upper: f64, bound: f64 },

    #[error("frame is not tight: bounds ({lower:.6e}, {upper:.6e})")]
    NotTight { lower: f64, upper: f64 },

    #[error(
        "image of the eigenvector for {eigenvalue:.6e} fails its eigen-equation: \
         residual {residual:.3e} exceeds {bound:.3e}"
    )]
    EigenResidualViolation {
        eigenvalue: f64,
        residual: f64,
        bound: f64,
    },

    #[error("partner condition {condition} violated: residual {residual:.3e} exceeds {bound:.3e}")]
    ConditionViolation {
        condition: &'static str,
        residual: f64,
        bound: f64,
    },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("V^dagger V is not a multiple of the identity: residual {residual:.3e} exceeds {bound:.3e} (scale {scale:.6e})")]
    NotIsometryLike {
        residual: f64,
        scale: f64,
        bound: f64,
    },
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "InvalidInput",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NotHermitian { .. } => "NotHermitian",
            Error::NotInvertible { .. } => "NotInvertible",
            Error::CommutatorViolation { .. } => "CommutatorViolation",
            Error::NotAFrame { .. } => "NotAFrame",
            Error::NotTight { .. } => "NotTight",
            Error::EigenResidualViolation { .. } => "EigenResidualViolation",
            Error::ConditionViolation { .. } => "ConditionViolation",
            Error::InvalidPartition(_) => "InvalidPartition",
            Error::NotIsometryLike { .. } => "NotIsometryLike",
        }
    }

    /// True for errors that describe malformed input rather than a failed
    /// mathematical verdict.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_) | Error::DimensionMismatch(_) | Error::InvalidPartition(_)
        )
    }
}
