use crate::clifford::Signature;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("signature mismatch: {0} vs {1}")]
    SignatureMismatch(Signature, Signature),

    #[error("dimension {n} exceeds cap {cap}")]
    DimensionCap { n: usize, cap: usize },

    #[error("expected {expected} coefficients, got {got}")]
    Length { expected: usize, got: usize },

    #[error("non-finite coefficient")]
    NonFinite,

    #[error("not invertible (residual {residual:e})")]
    NonInvertible { residual: f64 },

    #[error("not a paravector (residual {residual:e})")]
    NotParavector { residual: f64 },

    #[error("invalid spinor: {clause} (residual {residual:e})")]
    InvalidSpinor { clause: &'static str, residual: f64 },

    #[error("invalid matrix: {clause} (residual {residual:e})")]
    InvalidMatrix { clause: &'static str, residual: f64 },

    #[error("point outside the model (residual {residual:e})")]
    Domain { residual: f64 },

    #[error("degenerate flag (residual {residual:e})")]
    DegenerateFlag { residual: f64 },

    #[error("multiflags have different base points")]
    BaseMismatch,

    #[error("horospheres share a center")]
    SharedCenter,

    #[error("degenerate configuration (conditioning {conditioning:e})")]
    Degenerate { conditioning: f64 },

    #[error("index {index} out of range")]
    Index { index: usize },
}

impl Error {
    /// The failing validation clause, if this is a validation error.
    pub fn clause(&self) -> Option<&'static str> {
        match self {
            Error::InvalidSpinor { clause, .. } | Error::InvalidMatrix { clause, .. } => Some(clause),
            _ => None,
        }
    }

    /// Residual carried by the error, when there is one.
    pub fn residual(&self) -> Option<f64> {
        match *self {
            Error::NonInvertible { residual }
            | Error::NotParavector { residual }
            | Error::InvalidSpinor { residual, .. }
            | Error::InvalidMatrix { residual, .. }
            | Error::Domain { residual }
            | Error::DegenerateFlag { residual } => Some(residual),
            _ => None,
        }
    }
}
