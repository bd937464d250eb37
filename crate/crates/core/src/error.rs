use thiserror::Error;

/// Errors raised by constructors and operations across the crate.
///
/// Every variant names the invariant that failed; residual-carrying variants
/// report the measured value so callers can tell a near miss from garbage.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("non-finite entry in matrix")]
    NonFinite,
    #[error("not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },
    #[error("not positive definite (min eigenvalue {min_eig:.3e})")]
    NotPositiveDefinite { min_eig: f64 },
    #[error("singular (smallest singular value {sigma_min:.3e})")]
    Singular { sigma_min: f64 },
    #[error("b*x is not Hermitian (residual {residual:.3e})")]
    NotSymmetricPair { residual: f64 },
    #[error("not in U(theta_{tag}) (residual {residual:.3e})")]
    NotInGroup { tag: char, residual: f64 },
    #[error("not in the Lie algebra of U(theta_H) (residual {residual:.3e})")]
    NotInLieAlgebra { residual: f64 },
    #[error("unitary is not block diagonal (off-diagonal norm {residual:.3e})")]
    NotDiagonalUnitary { residual: f64 },
    #[error("pair is not on the sphere K_{tag}: {reason}")]
    NotOnSphere { tag: char, reason: String },
    #[error("not in the half-space H: {0}")]
    NotInHalfspace(String),
    #[error("not in the disk D (spectral norm {norm:.17})")]
    NotInDisk { norm: f64 },
    #[error("numerical breakdown: {0}")]
    NumericalBreakdown(String),
    #[error("not a reflection in Q_rho: {0}")]
    NotReflection(String),
    #[error("reflection drift along geodesic at t = {t}: {reason}")]
    ReflectionDrift { t: f64, reason: String },
    #[error("Lie element is not horizontal (vertical norm {residual:.3e})")]
    NotHorizontal { residual: f64 },
    #[error("invalid geodesic family parameters: {0}")]
    InvalidParams(String),
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
