//! Symplectic integrators from discretization maps, and the shooting method
//! for boundary-value problems.
//!
//! A discretization map R_d : TQ → Q × Q sends a point-and-velocity pair to
//! two nearby points; the initial-point rule (q, v) ↦ (q, q+v) and the
//! mid-point rule (q, v) ↦ (q - v/2, q + v/2) are the two used here. Its
//! cotangent lift R_d^{T*} identifies a pair of cotangent states
//! (q₀,p₀,q₁,p₁) with a base point and a displacement, and the one-step
//! scheme solves the implicit equation
//!
//! ```text
//! (R_d^{T*})^{-1}(q₀,p₀,q₁,p₁) = h · X_H(base(q₀,p₀,q₁,p₁))
//! ```
//!
//! which is a symplectic integrator for any Hamiltonian H. For the
//! initial-point lift the base is the mixed point (q₀, p₁) — the scheme is
//! the semi-implicit one, not explicit Euler — and for the mid-point lift it
//! is the arithmetic midpoint, giving the implicit midpoint rule.
//!
//! Everything is generic over [`HamiltonianSystem`] so the steppers can be
//! exercised on closed-form problems (see [`HarmonicOscillator`]); the chart
//! systems of [`ChartManifold`] instantiate it with position block
//! x = (q, q̇) and momentum block p = (p_q, p_q̇). The implicit equations are
//! solved by damped Newton with finite-difference Jacobians; unknowns number
//! at most 12.

use nalgebra::{DMatrix, DVector};

use crate::charts::{ChartManifold, ChartPhaseState};
use crate::error::{Error, Result};
use crate::tol;
use crate::trajectory::{JetPoint, Method, TrajectoryRecord};

/// The two discretization maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscretizationScheme {
    /// (q, v) ↦ (q, q + v); first-order, semi-implicit.
    InitialPoint,
    /// (q, v) ↦ (q - v/2, q + v/2); second-order, implicit midpoint.
    MidPoint,
}

impl DiscretizationScheme {
    pub fn method(&self) -> Method {
        match self {
            DiscretizationScheme::InitialPoint => Method::InitialPoint,
            DiscretizationScheme::MidPoint => Method::MidPoint,
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "initial-point" => Some(DiscretizationScheme::InitialPoint),
            "midpoint" => Some(DiscretizationScheme::MidPoint),
            _ => None,
        }
    }
}

/// A Hamiltonian system on T*R^d in canonical coordinates (x, p).
pub trait HamiltonianSystem {
    /// Dimension d of the position block.
    fn dof(&self) -> usize;

    fn hamiltonian(&self, x: &DVector<f64>, p: &DVector<f64>) -> Result<f64>;

    /// (∂H/∂x, ∂H/∂p).
    fn gradient(&self, x: &DVector<f64>, p: &DVector<f64>) -> Result<(DVector<f64>, DVector<f64>)>;

    /// Domain restriction on the position block, if any.
    fn check_position(&self, _x: &DVector<f64>) -> Result<()> {
        Ok(())
    }
}

/// The Hamiltonian vector field X_H = (∂H/∂p, -∂H/∂x).
pub fn vector_field<S: HamiltonianSystem + ?Sized>(
    sys: &S,
    x: &DVector<f64>,
    p: &DVector<f64>,
) -> Result<(DVector<f64>, DVector<f64>)> {
    let (dx, dp) = sys.gradient(x, p)?;
    Ok((dp, -dx))
}

/// H = ½(p² + q²), the textbook system used to pin signs and orders.
#[derive(Debug, Clone, Copy, Default)]
pub struct HarmonicOscillator;

impl HamiltonianSystem for HarmonicOscillator {
    fn dof(&self) -> usize {
        1
    }

    fn hamiltonian(&self, x: &DVector<f64>, p: &DVector<f64>) -> Result<f64> {
        Ok(0.5 * (p[0] * p[0] + x[0] * x[0]))
    }

    fn gradient(&self, x: &DVector<f64>, p: &DVector<f64>) -> Result<(DVector<f64>, DVector<f64>)> {
        Ok((x.clone(), p.clone()))
    }
}

impl HamiltonianSystem for ChartManifold {
    fn dof(&self) -> usize {
        2 * self.coord_dim()
    }

    fn hamiltonian(&self, x: &DVector<f64>, p: &DVector<f64>) -> Result<f64> {
        ChartManifold::hamiltonian(self, &phase_state(self, x, p)?)
    }

    fn gradient(&self, x: &DVector<f64>, p: &DVector<f64>) -> Result<(DVector<f64>, DVector<f64>)> {
        let grad = self.hamiltonian_gradient(&phase_state(self, x, p)?);
        let grad = grad?;
        let d = self.dof();
        Ok((grad.rows(0, d).into_owned(), grad.rows(d, d).into_owned()))
    }

    fn check_position(&self, x: &DVector<f64>) -> Result<()> {
        let m = self.coord_dim();
        self.check_bounds(&x.as_slice()[0..m])
    }
}

fn phase_state(manifold: &ChartManifold, x: &DVector<f64>, p: &DVector<f64>) -> Result<ChartPhaseState> {
    let m = manifold.coord_dim();
    if x.len() != 2 * m || p.len() != 2 * m {
        return Err(Error::DimensionMismatch {
            context: format!(
                "chart system expects blocks of length {}, got {} and {}",
                2 * m,
                x.len(),
                p.len()
            ),
        });
    }
    ChartPhaseState::new(
        &x.as_slice()[0..m],
        &x.as_slice()[m..2 * m],
        &p.as_slice()[0..m],
        &p.as_slice()[m..2 * m],
    )
}

// ---------------------------------------------------------------------------
// Cotangent lifts
// ---------------------------------------------------------------------------

/// Base point and displacement identified by the inverse cotangent lift of a
/// discretization map.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftDecomposition {
    pub base_x: DVector<f64>,
    pub base_p: DVector<f64>,
    pub disp_x: DVector<f64>,
    pub disp_p: DVector<f64>,
}

/// Inverts the cotangent lift on a pair of cotangent states.
///
/// Initial point: base = (x₀, p₁), displacement = (x₁-x₀, p₁-p₀).
/// Mid point: base = ((x₀+x₁)/2, (p₀+p₁)/2), same displacement.
pub fn lift_relations(
    scheme: DiscretizationScheme,
    x0: &DVector<f64>,
    p0: &DVector<f64>,
    x1: &DVector<f64>,
    p1: &DVector<f64>,
) -> Result<LiftDecomposition> {
    let d = x0.len();
    if p0.len() != d || x1.len() != d || p1.len() != d {
        return Err(Error::DimensionMismatch {
            context: format!(
                "lift blocks must share a length, got {}/{}/{}/{}",
                x0.len(),
                p0.len(),
                x1.len(),
                p1.len()
            ),
        });
    }
    let disp_x = x1 - x0;
    let disp_p = p1 - p0;
    let (base_x, base_p) = match scheme {
        DiscretizationScheme::InitialPoint => (x0.clone(), p1.clone()),
        DiscretizationScheme::MidPoint => ((x0 + x1) * 0.5, (p0 + p1) * 0.5),
    };
    Ok(LiftDecomposition {
        base_x,
        base_p,
        disp_x,
        disp_p,
    })
}

// ---------------------------------------------------------------------------
// One implicit step
// ---------------------------------------------------------------------------

fn step_residual<S: HamiltonianSystem + ?Sized>(
    scheme: DiscretizationScheme,
    sys: &S,
    h: f64,
    x0: &DVector<f64>,
    p0: &DVector<f64>,
    z1: &DVector<f64>,
) -> Result<DVector<f64>> {
    let d = sys.dof();
    let x1 = z1.rows(0, d).into_owned();
    let p1 = z1.rows(d, d).into_owned();
    let lift = lift_relations(scheme, x0, p0, &x1, &p1)?;
    sys.check_position(&lift.base_x)?;
    let (fx, fp) = vector_field(sys, &lift.base_x, &lift.base_p)?;
    let mut res = DVector::zeros(2 * d);
    for i in 0..d {
        res[i] = lift.disp_x[i] - h * fx[i];
        res[d + i] = lift.disp_p[i] - h * fp[i];
    }
    Ok(res)
}

/// Advances one step of length `h` by solving the implicit lift equation
/// with damped Newton (finite-difference Jacobian). The accepted state has
/// residual at most [`tol::TAU_NEWTON`] in the infinity norm, and the solve
/// keeps polishing down to [`tol::TAU_NEWTON_TARGET`] when it can.
pub fn step<S: HamiltonianSystem + ?Sized>(
    scheme: DiscretizationScheme,
    sys: &S,
    h: f64,
    x0: &DVector<f64>,
    p0: &DVector<f64>,
) -> Result<(DVector<f64>, DVector<f64>)> {
    let d = sys.dof();
    sys.check_position(x0)?;

    // explicit predictor; fall back to the current state if it leaves the chart
    let mut z1 = DVector::zeros(2 * d);
    z1.rows_mut(0, d).copy_from(x0);
    z1.rows_mut(d, d).copy_from(p0);
    if let Ok((fx, fp)) = vector_field(sys, x0, p0) {
        let mut predictor = z1.clone();
        for i in 0..d {
            predictor[i] += h * fx[i];
            predictor[d + i] += h * fp[i];
        }
        if step_residual(scheme, sys, h, x0, p0, &predictor).is_ok() {
            z1 = predictor;
        }
    }

    let mut res = step_residual(scheme, sys, h, x0, p0, &z1)?;
    let mut res_norm = res.amax();
    let mut iterations = 0;

    while res_norm > tol::TAU_NEWTON_TARGET && iterations < tol::NEWTON_MAX_ITER {
        iterations += 1;

        // forward-difference Jacobian of the residual
        let mut jac = DMatrix::zeros(2 * d, 2 * d);
        for j in 0..2 * d {
            let mut zp = z1.clone();
            zp[j] += tol::FD_STEP_RESIDUAL;
            let rp = step_residual(scheme, sys, h, x0, p0, &zp)?;
            for i in 0..2 * d {
                jac[(i, j)] = (rp[i] - res[i]) / tol::FD_STEP_RESIDUAL;
            }
        }
        let delta = jac.lu().solve(&(-&res)).ok_or_else(|| Error::NewtonDivergence {
            context: "implicit step: singular residual Jacobian".to_string(),
            residual: res_norm,
            iterations,
        })?;

        // damped line search on the residual norm
        let mut lambda = 1.0;
        let mut improved = false;
        for _ in 0..=tol::MAX_HALVINGS {
            let trial = &z1 + &delta * lambda;
            if let Ok(trial_res) = step_residual(scheme, sys, h, x0, p0, &trial) {
                let trial_norm = trial_res.amax();
                if trial_norm < res_norm {
                    z1 = trial;
                    res = trial_res;
                    res_norm = trial_norm;
                    improved = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !improved {
            break; // stagnation at the floating-point floor
        }
    }

    if res_norm > tol::TAU_NEWTON {
        return Err(Error::NewtonDivergence {
            context: format!("implicit {:?} step", scheme),
            residual: res_norm,
            iterations,
        });
    }
    let x1 = z1.rows(0, d).into_owned();
    let p1 = z1.rows(d, d).into_owned();
    if let Err(err) = sys.check_position(&x1) {
        return Err(Error::NewtonDivergence {
            context: format!("implicit {:?} step landed outside the chart: {err}", scheme),
            residual: res_norm,
            iterations,
        });
    }
    Ok((x1, p1))
}

/// Repeated [`step`]s, collecting the raw phase states z₀ … z_N.
pub fn integrate_raw<S: HamiltonianSystem + ?Sized>(
    scheme: DiscretizationScheme,
    sys: &S,
    h: f64,
    n: usize,
    x0: &DVector<f64>,
    p0: &DVector<f64>,
) -> Result<Vec<(DVector<f64>, DVector<f64>)>> {
    let mut states = Vec::with_capacity(n + 1);
    states.push((x0.clone(), p0.clone()));
    for index in 0..n {
        let (x, p) = states.last().unwrap();
        let next = step(scheme, sys, h, x, p).map_err(|e| e.at_step(index))?;
        states.push(next);
    }
    Ok(states)
}

/// Classical RK4 on ż = X_H(z), collecting the raw phase states.
pub fn rk4_raw<S: HamiltonianSystem + ?Sized>(
    sys: &S,
    h: f64,
    n: usize,
    x0: &DVector<f64>,
    p0: &DVector<f64>,
) -> Result<Vec<(DVector<f64>, DVector<f64>)>> {
    let d = sys.dof();
    let f = |x: &DVector<f64>, p: &DVector<f64>| -> Result<DVector<f64>> {
        sys.check_position(x)?;
        let (fx, fp) = vector_field(sys, x, p)?;
        let mut dz = DVector::zeros(2 * d);
        dz.rows_mut(0, d).copy_from(&fx);
        dz.rows_mut(d, d).copy_from(&fp);
        Ok(dz)
    };
    let split = |z: &DVector<f64>| (z.rows(0, d).into_owned(), z.rows(d, d).into_owned());

    let mut states = Vec::with_capacity(n + 1);
    states.push((x0.clone(), p0.clone()));
    let mut z = DVector::zeros(2 * d);
    z.rows_mut(0, d).copy_from(x0);
    z.rows_mut(d, d).copy_from(p0);
    for index in 0..n {
        let stage = |z: &DVector<f64>| -> Result<DVector<f64>> {
            let (x, p) = split(z);
            f(&x, &p)
        };
        let next = (|| -> Result<DVector<f64>> {
            let k1 = stage(&z)?;
            let k2 = stage(&(&z + &k1 * (h / 2.0)))?;
            let k3 = stage(&(&z + &k2 * (h / 2.0)))?;
            let k4 = stage(&(&z + &k3 * h))?;
            Ok(&z + (k1 + 2.0 * k2 + 2.0 * k3 + k4) * (h / 6.0))
        })()
        .map_err(|e| e.at_step(index))?;
        z = next;
        states.push(split(&z));
    }
    Ok(states)
}

// ---------------------------------------------------------------------------
// Chart-level drivers
// ---------------------------------------------------------------------------

fn chart_blocks(state: &ChartPhaseState) -> (DVector<f64>, DVector<f64>) {
    let m = state.coord_dim();
    let flat = state.flat();
    (flat.rows(0, 2 * m).into_owned(), flat.rows(2 * m, 2 * m).into_owned())
}

fn record_from_states(
    manifold: ChartManifold,
    method: Method,
    h: f64,
    states: Vec<(DVector<f64>, DVector<f64>)>,
    with_jets: bool,
) -> Result<TrajectoryRecord> {
    let m = manifold.coord_dim();
    let n_steps = states.len() - 1;
    let mut times = Vec::with_capacity(states.len());
    let mut points = Vec::with_capacity(states.len());
    let mut chart_states = Vec::with_capacity(states.len());
    let mut jets = if with_jets { Some(Vec::with_capacity(states.len())) } else { None };
    for (j, (x, p)) in states.iter().enumerate() {
        times.push(j as f64 * h);
        points.push(manifold.embed(&x.as_slice()[0..m])?);
        chart_states.push(phase_state(&manifold, x, p)?);
        if let Some(jets) = jets.as_mut() {
            jets.push(jet_of_state(manifold, x, p)?);
        }
    }
    Ok(TrajectoryRecord {
        method,
        h,
        n_steps,
        times,
        points,
        states: Some(chart_states),
        jets,
    })
}

/// One implicit step at the chart level.
pub fn step_chart(
    scheme: DiscretizationScheme,
    manifold: ChartManifold,
    h: f64,
    s0: &ChartPhaseState,
) -> Result<ChartPhaseState> {
    let (x, p) = chart_blocks(s0);
    let (x1, p1) = step(scheme, &manifold, h, &x, &p)?;
    phase_state(&manifold, &x1, &p1)
}

/// N implicit steps from a chart phase state, recording states and their
/// embeddings.
pub fn integrate_ivp(
    scheme: DiscretizationScheme,
    manifold: ChartManifold,
    h: f64,
    n: usize,
    s0: &ChartPhaseState,
) -> Result<TrajectoryRecord> {
    let (x, p) = chart_blocks(s0);
    let states = integrate_raw(scheme, &manifold, h, n, &x, &p)?;
    record_from_states(manifold, scheme.method(), h, states, false)
}

/// Classical RK4 benchmark trajectory, including the discrete
/// (q, q̇, q̈, q⁽³⁾) flow read off the vector field and its directional
/// derivative.
pub fn rk4_reference(
    manifold: ChartManifold,
    h: f64,
    n: usize,
    s0: &ChartPhaseState,
) -> Result<TrajectoryRecord> {
    let (x, p) = chart_blocks(s0);
    let states = rk4_raw(&manifold, h, n, &x, &p)?;
    record_from_states(manifold, Method::Rk4, h, states, true)
}

/// The acceleration block q̈ = ∂H/∂p_q̇ of the vector field at (x, p).
fn acceleration_block(
    manifold: ChartManifold,
    x: &DVector<f64>,
    p: &DVector<f64>,
) -> Result<DVector<f64>> {
    let m = manifold.coord_dim();
    let (fx, _) = vector_field(&manifold, x, p)?;
    Ok(fx.rows(m, m).into_owned())
}

/// Jerk q⁽³⁾ as the directional derivative of the acceleration block along
/// the flow direction X_H.
fn jerk_block(manifold: ChartManifold, x: &DVector<f64>, p: &DVector<f64>) -> Result<DVector<f64>> {
    let (fx, fp) = vector_field(&manifold, x, p)?;
    let scale = fx.amax().max(fp.amax()).max(1.0);
    let delta = tol::FD_STEP_SHOOT / scale;
    let a_plus = acceleration_block(manifold, &(x + &fx * delta), &(p + &fp * delta))?;
    let a_minus = acceleration_block(manifold, &(x - &fx * delta), &(p - &fp * delta))?;
    Ok((a_plus - a_minus) / (2.0 * delta))
}

/// The (q, q̇, q̈, q⁽³⁾) jet carried by a phase state.
fn jet_of_state(manifold: ChartManifold, x: &DVector<f64>, p: &DVector<f64>) -> Result<JetPoint> {
    let m = manifold.coord_dim();
    let ddq = acceleration_block(manifold, x, p)?;
    let dddq = jerk_block(manifold, x, p)?;
    Ok(JetPoint {
        q: x.as_slice()[0..m].to_vec(),
        dq: x.as_slice()[m..2 * m].to_vec(),
        ddq: ddq.as_slice().to_vec(),
        dddq: dddq.as_slice().to_vec(),
    })
}

/// Momenta (p_q, p_q̇) whose flow realizes the requested acceleration and
/// jerk at (q, q̇).
///
/// The acceleration q̈ = ∂H/∂p_q̇ is affine in p_q̇ and independent of p_q,
/// so p_q̇ comes from one linear solve; p_q is then found by Newton on the
/// jerk condition, with the jerk evaluated as a directional derivative of
/// the acceleration along X_H.
pub fn momenta_from_jet(
    manifold: ChartManifold,
    q: &[f64],
    dq: &[f64],
    ddq: &[f64],
    dddq: &[f64],
) -> Result<(Vec<f64>, Vec<f64>)> {
    let m = manifold.coord_dim();
    manifold.check_bounds(q)?;
    for (name, block) in [("velocity", dq), ("acceleration", ddq), ("jerk", dddq)] {
        if block.len() != m {
            return Err(Error::DimensionMismatch {
                context: format!("{name} must have {m} entries, got {}", block.len()),
            });
        }
    }
    let mut x = DVector::zeros(2 * m);
    for i in 0..m {
        x[i] = q[i];
        x[m + i] = dq[i];
    }

    // p_q̇ from the affine relation q̈(p_q̇) = M p_q̇ + c
    let accel_at = |pdq: &DVector<f64>| -> Result<DVector<f64>> {
        let mut p = DVector::zeros(2 * m);
        p.rows_mut(m, m).copy_from(pdq);
        acceleration_block(manifold, &x, &p)
    };
    let c = accel_at(&DVector::zeros(m))?;
    let mut coeffs = DMatrix::zeros(m, m);
    for j in 0..m {
        let mut unit = DVector::zeros(m);
        unit[j] = 1.0;
        let col = accel_at(&unit)? - &c;
        coeffs.set_column(j, &col);
    }
    let target = DVector::from_column_slice(ddq) - &c;
    let pdq = coeffs.lu().solve(&target).ok_or_else(|| Error::Numerics {
        context: "momenta_from_jet: singular acceleration coefficient matrix".to_string(),
    })?;

    // p_q by damped Newton on the jerk condition
    let residual = |pq: &DVector<f64>| -> Result<DVector<f64>> {
        let mut p = DVector::zeros(2 * m);
        p.rows_mut(0, m).copy_from(pq);
        p.rows_mut(m, m).copy_from(&pdq);
        Ok(jerk_block(manifold, &x, &p)? - DVector::from_column_slice(dddq))
    };
    let mut pq = DVector::zeros(m);
    let mut res = residual(&pq)?;
    let mut res_norm = res.amax();
    let mut iterations = 0;
    while res_norm > 1e-9 && iterations < tol::NEWTON_MAX_ITER {
        iterations += 1;
        let mut jac = DMatrix::zeros(m, m);
        for j in 0..m {
            let mut pp = pq.clone();
            pp[j] += tol::FD_STEP_SHOOT;
            let rp = residual(&pp)?;
            for i in 0..m {
                jac[(i, j)] = (rp[i] - res[i]) / tol::FD_STEP_SHOOT;
            }
        }
        let delta = jac.lu().solve(&(-&res)).ok_or_else(|| Error::NewtonDivergence {
            context: "momenta_from_jet: singular jerk Jacobian".to_string(),
            residual: res_norm,
            iterations,
        })?;
        let mut lambda = 1.0;
        let mut improved = false;
        for _ in 0..=tol::MAX_HALVINGS {
            let trial = &pq + &delta * lambda;
            if let Ok(trial_res) = residual(&trial) {
                let trial_norm = trial_res.amax();
                if trial_norm < res_norm {
                    pq = trial;
                    res = trial_res;
                    res_norm = trial_norm;
                    improved = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !improved {
            break;
        }
    }
    // the jerk is probed by finite differences, so its residual floor sits
    // well above machine precision
    if res_norm > 1e-7 {
        return Err(Error::NewtonDivergence {
            context: "momenta_from_jet: jerk condition".to_string(),
            residual: res_norm,
            iterations,
        });
    }
    Ok((pq.as_slice().to_vec(), pdq.as_slice().to_vec()))
}

/// Shooting method for the two-point boundary-value problem: Newton over the
/// unknown initial momenta until the final (q, q̇) of the discrete flow hits
/// the targets within [`tol::TAU_SHOOT`].
///
/// `guess` seeds the iteration (zero momenta when absent); the converged
/// trajectory is returned.
#[allow(clippy::too_many_arguments)]
pub fn shoot_bvp(
    scheme: DiscretizationScheme,
    manifold: ChartManifold,
    h: f64,
    n: usize,
    q0: &[f64],
    dq0: &[f64],
    qn_target: &[f64],
    dqn_target: &[f64],
    guess: Option<(&[f64], &[f64])>,
) -> Result<TrajectoryRecord> {
    let m = manifold.coord_dim();
    manifold.check_bounds(q0)?;
    if dq0.len() != m || qn_target.len() != m || dqn_target.len() != m {
        return Err(Error::DimensionMismatch {
            context: format!("boundary blocks must have {m} entries"),
        });
    }
    let mut x0 = DVector::zeros(2 * m);
    for i in 0..m {
        x0[i] = q0[i];
        x0[m + i] = dq0[i];
    }
    let mut target = DVector::zeros(2 * m);
    for i in 0..m {
        target[i] = qn_target[i];
        target[m + i] = dqn_target[i];
    }

    let residual = |u: &DVector<f64>| -> Result<DVector<f64>> {
        let states = integrate_raw(scheme, &manifold, h, n, &x0, u)?;
        let (x_final, _) = states.last().unwrap();
        Ok(x_final - &target)
    };

    let mut u = match guess {
        Some((pq, pdq)) => {
            let mut u = DVector::zeros(2 * m);
            for i in 0..m {
                u[i] = pq[i];
                u[m + i] = pdq[i];
            }
            u
        }
        None => DVector::zeros(2 * m),
    };

    let mut res = residual(&u)?;
    let mut res_norm = res.amax();
    let mut iterations = 0;
    while res_norm > tol::TAU_SHOOT {
        if iterations >= tol::SHOOT_MAX_ITER {
            return Err(Error::ShootingDivergence {
                residual: res_norm,
                iterations,
            });
        }
        iterations += 1;

        // forward-difference Jacobian over the 2m unknown momenta
        let mut jac = DMatrix::zeros(2 * m, 2 * m);
        for j in 0..2 * m {
            let mut up = u.clone();
            up[j] += tol::FD_STEP_SHOOT;
            let rp = residual(&up)?;
            for i in 0..2 * m {
                jac[(i, j)] = (rp[i] - res[i]) / tol::FD_STEP_SHOOT;
            }
        }
        let delta = jac.lu().solve(&(-&res)).ok_or(Error::ShootingDivergence {
            residual: res_norm,
            iterations,
        })?;

        let mut lambda = 1.0;
        let mut improved = false;
        for _ in 0..=tol::MAX_HALVINGS {
            let trial = &u + &delta * lambda;
            if let Ok(trial_res) = residual(&trial) {
                let trial_norm = trial_res.amax();
                if trial_norm < res_norm {
                    u = trial;
                    res = trial_res;
                    res_norm = trial_norm;
                    improved = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !improved {
            return Err(Error::ShootingDivergence {
                residual: res_norm,
                iterations,
            });
        }
    }

    let states = integrate_raw(scheme, &manifold, h, n, &x0, &u)?;
    record_from_states(manifold, scheme.method(), h, states, false)
}
