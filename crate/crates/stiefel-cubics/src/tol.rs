//! Centralized numerical tolerances and solver limits.
//!
//! Every threshold used for validation, convergence and acceptance lives
//! here so the contracts of the library are pinned in one place.

/// Orthonormality / skewness / tangency tolerance for domain-type invariants
/// (Frobenius norm of the defect).
pub const TAU_ORTH: f64 = 1e-10;

/// An orthogonal matrix with an eigenvalue closer than this to -1 has no
/// principal logarithm for our purposes.
pub const EPS_LOG: f64 = 1e-8;

/// Orthogonality tolerance accepted on *inputs* to the principal logarithm.
pub const TAU_LOG_INPUT: f64 = 1e-8;

/// Margin enforced on the open chart domains (radians).
pub const EPS_CHART: f64 = 1e-6;

/// Infinity-norm residual accepted for one implicit integrator step.
pub const TAU_NEWTON: f64 = 1e-12;

/// Residual target the Newton solver keeps polishing towards; finishing this
/// far below `TAU_NEWTON` keeps finite-difference Jacobians of the step map
/// accurate enough for the symplecticity checks.
pub const TAU_NEWTON_TARGET: f64 = 1e-15;

/// Iteration cap for one implicit step solve.
pub const NEWTON_MAX_ITER: usize = 50;

/// Infinity-norm residual accepted by the boundary-value shooting iteration.
pub const TAU_SHOOT: f64 = 1e-8;

/// Outer iteration cap for the shooting method.
pub const SHOOT_MAX_ITER: usize = 100;

/// Maximum number of step halvings in damped Newton line searches.
pub const MAX_HALVINGS: usize = 30;

/// Forward-difference step for Jacobians of the implicit step residual.
pub const FD_STEP_RESIDUAL: f64 = 1e-7;

/// Forward-difference step for the shooting Jacobian and the jet solves.
pub const FD_STEP_SHOOT: f64 = 1e-6;

/// Step used by the finite-difference stencils for curve velocities.
pub const FD_STEP_CURVE: f64 = 1e-4;

/// Time step of the high-order reference integrator used as benchmark.
pub const H_REF: f64 = 1e-4;
