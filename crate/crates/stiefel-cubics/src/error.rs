//! Error type shared by all modules.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// The principal matrix logarithm does not exist: an eigenvalue lies on
    /// (or numerically too close to) the negative real axis.
    #[error("principal matrix logarithm undefined at {context}: eigenvalue within tolerance of -1")]
    PrincipalLogUndefined { context: String },

    /// A matrix expected to be orthogonal deviates from Q^T Q = I beyond tolerance.
    #[error("matrix is not orthogonal ({context}): deviation {defect:.3e}")]
    NotOrthogonal { context: String, defect: f64 },

    /// Columns of a Stiefel representative are not orthonormal.
    #[error("matrix columns are not orthonormal: deviation {defect:.3e}")]
    NotOrthonormal { defect: f64 },

    /// A matrix expected to be skew-symmetric is not.
    #[error("matrix is not skew-symmetric: deviation {defect:.3e}")]
    NotSkew { defect: f64 },

    /// A projector expected to represent a subspace (P = P^T, P^2 = P) is invalid.
    #[error("matrix is not an orthogonal projector: deviation {defect:.3e}")]
    NotProjector { defect: f64 },

    /// A vector violates the tangent-space condition V^T S + S^T V = 0 at its base point.
    #[error("vector is not tangent at the given base point: deviation {defect:.3e}")]
    NotTangent { defect: f64 },

    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },

    /// A chart coordinate left the open domain of the parametrization.
    #[error("chart coordinate out of bounds: {coord} = {value:.6} not in {domain}")]
    ChartOutOfBounds {
        coord: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// A floating-point evaluation produced NaN or infinity.
    #[error("non-finite value encountered in {context}")]
    NonFinite { context: String },

    /// The implicit step equation could not be solved to tolerance.
    #[error("Newton iteration diverged in {context}: residual {residual:.3e} after {iterations} iterations")]
    NewtonDivergence {
        context: String,
        residual: f64,
        iterations: usize,
    },

    /// The shooting iteration for the boundary-value problem did not converge.
    #[error("shooting method diverged: residual {residual:.3e} after {iterations} iterations")]
    ShootingDivergence { residual: f64, iterations: usize },

    /// Two trajectories do not share a time grid.
    #[error("trajectories do not share a time grid: {context}")]
    GridMismatch { context: String },

    /// A numerical subroutine failed outside of the structured error cases.
    #[error("numerical failure: {context}")]
    Numerics { context: String },

    /// Integration failed at a specific step.
    #[error("integration failed at step {index}: {source}")]
    StepFailed {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid configuration: {context}")]
    InvalidConfig { context: String },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Tag an error with the integration step at which it occurred.
    pub fn at_step(self, index: usize) -> Error {
        Error::StepFailed {
            index,
            source: Box::new(self),
        }
    }
}
