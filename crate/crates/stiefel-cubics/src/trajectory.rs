//! Time-indexed trajectories shared by the curve generators, the
//! integrators and the benchmark harness.

use crate::charts::ChartPhaseState;
use crate::matcore::StiefelPoint;

/// The method that produced a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Geometric cubic polynomial from the quasi-geodesic de Casteljau
    /// generator.
    Gcp,
    /// Symplectic integrator from the initial-point discretization map.
    InitialPoint,
    /// Symplectic integrator from the mid-point discretization map.
    MidPoint,
    /// Classical 4th-order Runge–Kutta.
    Rk4,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Gcp => "gcp",
            Method::InitialPoint => "initial-point",
            Method::MidPoint => "midpoint",
            Method::Rk4 => "rk4",
        }
    }

    pub fn parse(s: &str) -> Option<Method> {
        match s {
            "gcp" => Some(Method::Gcp),
            "initial-point" => Some(Method::InitialPoint),
            "midpoint" => Some(Method::MidPoint),
            "rk4" => Some(Method::Rk4),
            _ => None,
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Position, velocity, acceleration and jerk in chart coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct JetPoint {
    pub q: Vec<f64>,
    pub dq: Vec<f64>,
    pub ddq: Vec<f64>,
    pub dddq: Vec<f64>,
}

/// A time-indexed sequence of points with optional chart-level data.
///
/// `points[j]` is the embedded Stiefel matrix at `times[j]`; trajectories
/// produced in a chart also carry the phase states, and the benchmark
/// reference additionally records the discrete (q, q̇, q̈, q⁽³⁾) flow.
#[derive(Debug, Clone)]
pub struct TrajectoryRecord {
    pub method: Method,
    /// Time step (for sampled curves: the sample spacing).
    pub h: f64,
    /// Number of steps; `times` and `points` have `n_steps + 1` entries.
    pub n_steps: usize,
    pub times: Vec<f64>,
    pub points: Vec<StiefelPoint>,
    pub states: Option<Vec<ChartPhaseState>>,
    pub jets: Option<Vec<JetPoint>>,
}

impl TrajectoryRecord {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Extracts every `stride`-th sample as a new record (same method tag).
    pub fn subsample(&self, stride: usize) -> TrajectoryRecord {
        assert!(stride >= 1);
        fn take<T: Clone>(items: &[T], stride: usize) -> Vec<T> {
            items.iter().step_by(stride).cloned().collect()
        }
        TrajectoryRecord {
            method: self.method,
            h: self.h * stride as f64,
            n_steps: self.n_steps / stride,
            times: take(&self.times, stride),
            points: take(&self.points, stride),
            states: self.states.as_ref().map(|s| take(s, stride)),
            jets: self.jets.as_ref().map(|s| take(s, stride)),
        }
    }
}
