use thiserror::Error;

/// Errors produced by the cable, reduction, fitting, network and solver layers.
#[derive(Debug, Error)]
pub enum Error {
    /// Cable geometry or material data violates a physical invariant.
    #[error("invalid cable data: {0}")]
    InvalidDesign(String),

    /// A special-function evaluation failed to converge or left its valid range.
    #[error("numerical evaluation failed: {0}")]
    Numerics(String),

    /// Eigenvector basis too ill-conditioned to trust matrix functions.
    #[error("ill-conditioned eigenbasis: condition estimate {cond:.3e} exceeds {limit:.3e}")]
    IllConditionedEigenbasis { cond: f64, limit: f64 },

    /// An eigenvalue of Z*Y lies on the negative real axis; the principal
    /// square root is ambiguous there.
    #[error("eigenvalue {re:.6e}{im:+.6e}i of ZY on the negative real axis: branch ambiguity")]
    NegativeRealEigenvalue { re: f64, im: f64 },

    /// A matrix inversion was refused because of a condition estimate.
    #[error("singular or near-singular matrix in {context}: condition estimate {cond:.3e}")]
    SingularMatrix { context: String, cond: f64 },

    /// Π extraction degenerate: the cable is electrically too short.
    #[error("electrically too short for Pi extraction: |c| = {c_abs:.3e}")]
    TooShortForPi { c_abs: f64 },

    /// The extracted two-port failed its reciprocity identity.
    #[error("two-port determinant check failed: |ad - bc - 1| = {residual:.3e}")]
    TwoPortCheck { residual: f64 },

    /// Invalid sampling or fitting request.
    #[error("invalid fit request: {0}")]
    InvalidFit(String),

    /// Case file parse or schema violation.
    #[error("case error at {location}: {message}")]
    Case { location: String, message: String },

    /// Request outside a fitted model's frequency range.
    #[error("frequency {omega:.6} rad/s outside fitted range [{min:.6}, {max:.6}]")]
    OmegaOutOfRange { omega: f64, min: f64, max: f64 },

    /// Solver-level failure that is not an infeasibility diagnosis.
    #[error("solver error: {0}")]
    Solver(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn case(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Case {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
