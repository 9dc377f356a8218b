//! Geometric cubic polynomials on Stiefel manifolds, two ways.
//!
//! This crate generates cubic polynomial curves on the Stiefel manifold
//! St(n,k) — curves with prescribed endpoint positions and velocities that
//! approximately minimize covariant acceleration — and benchmarks two very
//! different constructions against a high-order Runge–Kutta reference:
//!
//! * [`decasteljau`] — a de Casteljau generator in which the geodesic arcs of
//!   the classical algorithm are replaced by quasi-geodesics
//!   `t ↦ e^{tX} S e^{tΩ}` induced by the retraction `R_S(V) = e^X S e^Ω`.
//!   Evaluation only needs exponentials of skew matrices and principal
//!   logarithms of orthogonal matrices.
//! * [`symplectic`] — symplectic integrators obtained by cotangently lifting
//!   a discretization map (initial-point or mid-point rule) and solving the
//!   resulting implicit step equation, applied to the Hamiltonian formulation
//!   of cubic polynomials on `T*(T St(n,k))` in a coordinate chart, together
//!   with a shooting method for the boundary-value problem.
//!
//! Supporting modules: [`matcore`] (Stiefel/Grassmann domain types and the
//! exp/log kernels), [`quasigeo`] (retraction, quasi-geodesics and endpoint
//! interpolation), [`charts`] (coordinate charts for St(3,1) ≅ S² and
//! St(3,2) and the two chart Hamiltonians), and [`harness`] (experiment
//! configuration, error reports and CSV output behind the `stiefel-cubics`
//! command-line tool).
//!
//! Start with the runnable programs in `examples/` — there is one per major
//! capability — or with `stiefel-cubics compare --manifold sphere` for the
//! full method comparison.

pub mod charts;
pub mod decasteljau;
pub mod dual;
pub mod error;
pub mod harness;
pub mod matcore;
pub mod quasigeo;
pub mod symplectic;
pub mod tol;
pub mod trajectory;

pub use error::{Error, Result};
