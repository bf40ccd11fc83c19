use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by algebra, L^p and isometry operations.
///
/// Numerical residuals are reported as `f64` regardless of the scalar type.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("operands belong to different algebras")]
    AlgebraMismatch,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("not a projection (residual {residual:e})")]
    NotAProjection { residual: f64 },
    #[error("invalid rank request: {0}")]
    InvalidRank(String),
    #[error("invalid exponent: {0}")]
    InvalidExponent(String),
    #[error("exponents {p} and {q} are not conjugate")]
    ExponentMismatch { p: String, q: String },
    #[error("density is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },
    #[error("not unitary (residual {residual:e})")]
    NotUnitary { residual: f64 },
    #[error("not Jordan: {0}")]
    NotJordan(String),
    #[error("not bijective")]
    NotBijective,
    #[error("block mismatch: {0}")]
    BlockMismatch(String),
    #[error("polar part not unitary: {0}")]
    PolarNotUnitary(String),
    #[error("image of positive not positive (spanning element {index}, min eigenvalue {min_eigenvalue:e})")]
    ImageNotPositive { index: usize, min_eigenvalue: f64 },
    #[error("certification failed (residual {residual:e})")]
    CertificationFailed { residual: f64 },
    #[error("image not a corner (expected dimension {expected}, found {found}, residual {residual:e})")]
    ImageNotCorner {
        expected: usize,
        found: usize,
        residual: f64,
    },
    #[error("not an isometry of theorem form: {0}")]
    NotTheoremForm(String),
    #[error("not an isometry: {0}")]
    NotIsometry(String),
    #[error("format error: {0}")]
    Format(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
