//! Coordinate charts for St(3,1) ≅ S² and St(3,2), and the Hamiltonians
//! whose flow on T*(T St) projects to cubic polynomial curves.
//!
//! The sphere chart is the usual spherical parametrization
//! `(θ, φ) ↦ (cos φ sin θ, sin φ sin θ, cos θ)` on `(0,π) × (0,2π)`.
//! St(3,2) is diffeomorphic to the unit tangent bundle of the sphere and is
//! charted by `(θ, φ, ψ)`, where the first column of the frame is the
//! sphere point and the second column a unit tangent direction selected by
//! ψ. Chart domains are open; all bounds are enforced with a small margin,
//! and the St(3,2) Hamiltonian additionally excludes θ near π/2 (it divides
//! by cos θ).
//!
//! Both Hamiltonians are implemented term by term exactly as their
//! closed-form expressions read, generically over [`Scalar`], so gradients
//! come from forward-mode differentiation of the very same code rather than
//! hand-derived formulas. Both are quadratic polynomials in the momenta
//! with no constant term, which makes `p ≡ 0` an invariant submanifold of
//! the flow on which the dynamics reduce to the geodesic equation.

use nalgebra::{DMatrix, DVector};

use crate::dual::{Dual, Scalar};
use crate::error::{Error, Result};
use crate::matcore::{StiefelPoint, TangentVector};
use crate::tol;

use std::f64::consts::{FRAC_PI_2, PI};

const TWO_PI: f64 = 2.0 * PI;

/// The two charted manifolds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChartManifold {
    /// St(3,1), the unit sphere.
    Sphere,
    /// St(3,2), orthonormal 2-frames in R³.
    St32,
}

impl ChartManifold {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "sphere" => Some(ChartManifold::Sphere),
            "st32" => Some(ChartManifold::St32),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ChartManifold::Sphere => "sphere",
            ChartManifold::St32 => "st32",
        }
    }

    /// Number of chart coordinates m.
    pub fn coord_dim(&self) -> usize {
        match self {
            ChartManifold::Sphere => 2,
            ChartManifold::St32 => 3,
        }
    }

    /// Rows × columns of the embedded frames.
    pub fn frame_shape(&self) -> (usize, usize) {
        match self {
            ChartManifold::Sphere => (3, 1),
            ChartManifold::St32 => (3, 2),
        }
    }

    /// Largest Frobenius distance between two points of the manifold
    /// (‖S₁ - S₂‖²_F = 2k - 2 tr(S₁ᵀS₂) is maximal at S₂ = -S₁, giving 2√k).
    pub fn diameter(&self) -> f64 {
        match self {
            ChartManifold::Sphere => 2.0,
            ChartManifold::St32 => 2.0 * 2.0f64.sqrt(),
        }
    }

    /// Validates that chart coordinates lie inside the open domain, with
    /// margin [`tol::EPS_CHART`].
    pub fn check_bounds(&self, q: &[f64]) -> Result<()> {
        if q.len() != self.coord_dim() {
            return Err(Error::DimensionMismatch {
                context: format!("{} chart has {} coordinates, got {}", self.as_str(), self.coord_dim(), q.len()),
            });
        }
        let eps = tol::EPS_CHART;
        let theta = q[0];
        if !(theta >= eps && theta <= PI - eps) {
            return Err(Error::ChartOutOfBounds {
                coord: "theta",
                value: theta,
                domain: "(0, pi)",
            });
        }
        let phi = q[1];
        if !(phi >= eps && phi <= TWO_PI - eps) {
            return Err(Error::ChartOutOfBounds {
                coord: "phi",
                value: phi,
                domain: "(0, 2pi)",
            });
        }
        if let ChartManifold::St32 = self {
            let psi = q[2];
            if !(psi >= eps && psi <= TWO_PI - eps) {
                return Err(Error::ChartOutOfBounds {
                    coord: "psi",
                    value: psi,
                    domain: "(0, 2pi)",
                });
            }
            if (theta - FRAC_PI_2).abs() < eps {
                return Err(Error::ChartOutOfBounds {
                    coord: "theta",
                    value: theta,
                    domain: "(0, pi) minus pi/2",
                });
            }
        }
        Ok(())
    }

    /// Embedding of in-bounds chart coordinates as a Stiefel frame.
    pub fn embed(&self, q: &[f64]) -> Result<StiefelPoint> {
        self.check_bounds(q)?;
        let m = match self {
            ChartManifold::Sphere => {
                let col = sphere_chart_columns(q[0], q[1]);
                DMatrix::from_column_slice(3, 1, &col)
            }
            ChartManifold::St32 => {
                let cols = st32_chart_columns(q[0], q[1], q[2]);
                DMatrix::from_fn(3, 2, |i, j| cols[j][i])
            }
        };
        Ok(StiefelPoint::from_matrix_unchecked(m))
    }

    /// Pushforward of chart velocities: V = (∂ embed / ∂q) · q̇, a tangent
    /// vector at embed(q).
    pub fn pushforward(&self, q: &[f64], dq: &[f64]) -> Result<TangentVector> {
        self.check_bounds(q)?;
        if dq.len() != self.coord_dim() {
            return Err(Error::DimensionMismatch {
                context: format!("velocity has {} entries, chart has {}", dq.len(), self.coord_dim()),
            });
        }
        let base = self.embed(q)?;
        let (rows, cols) = self.frame_shape();
        let mut v = DMatrix::<f64>::zeros(rows, cols);
        for (i, &rate) in dq.iter().enumerate() {
            let seeded: Vec<Dual> = q
                .iter()
                .enumerate()
                .map(|(j, &value)| if i == j { Dual::seeded(value) } else { Dual::constant(value) })
                .collect();
            match self {
                ChartManifold::Sphere => {
                    let col = sphere_chart_columns(seeded[0], seeded[1]);
                    for r in 0..3 {
                        v[(r, 0)] += rate * col[r].du;
                    }
                }
                ChartManifold::St32 => {
                    let frame = st32_chart_columns(seeded[0], seeded[1], seeded[2]);
                    for c in 0..2 {
                        for r in 0..3 {
                            v[(r, c)] += rate * frame[c][r].du;
                        }
                    }
                }
            }
        }
        TangentVector::new(&base, v)
    }

    /// The Hamiltonian on T*(T St) in chart coordinates.
    pub fn hamiltonian(&self, state: &ChartPhaseState) -> Result<f64> {
        self.check_state(state)?;
        let z: Vec<f64> = state.flat().iter().copied().collect();
        let value = match self {
            ChartManifold::Sphere => sphere_hamiltonian(&z),
            ChartManifold::St32 => st32_hamiltonian(&z),
        };
        if !value.is_finite() {
            return Err(Error::NonFinite {
                context: format!("{} Hamiltonian", self.as_str()),
            });
        }
        Ok(value)
    }

    /// All 4m partial derivatives (∂H/∂q, ∂H/∂q̇, ∂H/∂p_q, ∂H/∂p_q̇),
    /// obtained by forward-mode differentiation of the evaluation code.
    pub fn hamiltonian_gradient(&self, state: &ChartPhaseState) -> Result<DVector<f64>> {
        self.check_state(state)?;
        let z: Vec<f64> = state.flat().iter().copied().collect();
        let grad = match self {
            ChartManifold::Sphere => gradient_of(sphere_hamiltonian, &z),
            ChartManifold::St32 => gradient_of(st32_hamiltonian, &z),
        };
        if grad.iter().any(|g| !g.is_finite()) {
            return Err(Error::NonFinite {
                context: format!("{} Hamiltonian gradient", self.as_str()),
            });
        }
        Ok(DVector::from_vec(grad))
    }

    /// The Hamiltonian vector field, ordered as
    /// (q̇-slot, q̈-slot, ṗ_q-slot, ṗ_q̇-slot) =
    /// (∂H/∂p_q, ∂H/∂p_q̇, -∂H/∂q, -∂H/∂q̇).
    pub fn hamiltonian_vector_field(&self, state: &ChartPhaseState) -> Result<DVector<f64>> {
        let grad = self.hamiltonian_gradient(state)?;
        let m = self.coord_dim();
        let mut field = DVector::zeros(4 * m);
        for i in 0..2 * m {
            field[i] = grad[2 * m + i];
            field[2 * m + i] = -grad[i];
        }
        Ok(field)
    }

    fn check_state(&self, state: &ChartPhaseState) -> Result<()> {
        if state.coord_dim() != self.coord_dim() {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "phase state has {} chart coordinates, {} has {}",
                    state.coord_dim(),
                    self.as_str(),
                    self.coord_dim()
                ),
            });
        }
        self.check_bounds(state.q())
    }
}

impl std::fmt::Display for ChartManifold {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

// ---------------------------------------------------------------------------
// Chart point types
// ---------------------------------------------------------------------------

/// A point of the sphere chart, θ ∈ (0,π), φ ∈ (0,2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereChartPoint {
    pub theta: f64,
    pub phi: f64,
}

impl SphereChartPoint {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        ChartManifold::Sphere.check_bounds(&[theta, phi])?;
        Ok(Self { theta, phi })
    }
}

/// A point of the St(3,2) chart, θ ∈ (0,π) away from π/2, φ, ψ ∈ (0,2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct St32ChartPoint {
    pub theta: f64,
    pub phi: f64,
    pub psi: f64,
}

impl St32ChartPoint {
    pub fn new(theta: f64, phi: f64, psi: f64) -> Result<Self> {
        ChartManifold::St32.check_bounds(&[theta, phi, psi])?;
        Ok(Self { theta, phi, psi })
    }
}

/// Sphere embedding (cos φ sin θ, sin φ sin θ, cos θ)ᵀ.
pub fn sphere_embed(p: &SphereChartPoint) -> StiefelPoint {
    ChartManifold::Sphere
        .embed(&[p.theta, p.phi])
        .expect("validated chart point")
}

/// St(3,2) embedding; the first column is the sphere point of (θ, φ).
pub fn st32_embed(p: &St32ChartPoint) -> StiefelPoint {
    ChartManifold::St32
        .embed(&[p.theta, p.phi, p.psi])
        .expect("validated chart point")
}

/// Pushforward of chart velocities to an embedded tangent vector.
pub fn chart_pushforward(manifold: ChartManifold, q: &[f64], dq: &[f64]) -> Result<TangentVector> {
    manifold.pushforward(q, dq)
}

/// A point of T*(T St) in chart coordinates: positions q, velocities q̇ and
/// their conjugate momenta, each of length m.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartPhaseState {
    z: DVector<f64>,
    m: usize,
}

impl ChartPhaseState {
    pub fn new(q: &[f64], dq: &[f64], pq: &[f64], pdq: &[f64]) -> Result<Self> {
        let m = q.len();
        if dq.len() != m || pq.len() != m || pdq.len() != m {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "phase state blocks must have equal length, got {}/{}/{}/{}",
                    q.len(),
                    dq.len(),
                    pq.len(),
                    pdq.len()
                ),
            });
        }
        let z = DVector::from_iterator(
            4 * m,
            q.iter().chain(dq).chain(pq).chain(pdq).copied(),
        );
        if z.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                context: "phase state entries".to_string(),
            });
        }
        Ok(Self { z, m })
    }

    /// Rebuilds a state from the flat layout [q, q̇, p_q, p_q̇].
    pub fn from_flat(m: usize, z: DVector<f64>) -> Result<Self> {
        if z.len() != 4 * m {
            return Err(Error::DimensionMismatch {
                context: format!("flat state must have 4m = {} entries, got {}", 4 * m, z.len()),
            });
        }
        if z.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                context: "phase state entries".to_string(),
            });
        }
        Ok(Self { z, m })
    }

    pub fn coord_dim(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> &[f64] {
        &self.z.as_slice()[0..self.m]
    }

    pub fn dq(&self) -> &[f64] {
        &self.z.as_slice()[self.m..2 * self.m]
    }

    pub fn pq(&self) -> &[f64] {
        &self.z.as_slice()[2 * self.m..3 * self.m]
    }

    pub fn pdq(&self) -> &[f64] {
        &self.z.as_slice()[3 * self.m..4 * self.m]
    }

    /// The flat layout [q, q̇, p_q, p_q̇].
    pub fn flat(&self) -> &DVector<f64> {
        &self.z
    }
}

// ---------------------------------------------------------------------------
// Embeddings and Hamiltonians, generic over the scalar type
// ---------------------------------------------------------------------------

fn sphere_chart_columns<T: Scalar>(theta: T, phi: T) -> [T; 3] {
    [phi.cos() * theta.sin(), phi.sin() * theta.sin(), theta.cos()]
}

/// Columns of the St(3,2) frame A(θ, φ, ψ).
fn st32_chart_columns<T: Scalar>(theta: T, phi: T, psi: T) -> [[T; 3]; 2] {
    let first = sphere_chart_columns(theta, phi);
    let second = [
        -phi.sin() * psi.sin() + phi.cos() * psi.cos() * theta.cos(),
        phi.sin() * psi.cos() * theta.cos() + psi.sin() * phi.cos(),
        -theta.sin() * psi.cos(),
    ];
    [first, second]
}

/// Sphere Hamiltonian in the flat layout
/// z = [θ, φ, θ̇, φ̇, p_θ, p_φ, p_θ̇, p_φ̇]:
///
/// ```text
/// H = ½ φ̇² p_θ̇ sin 2θ + φ̇ p_φ + θ̇ p_θ + ½ p_θ̇²
///   + (-φ̇ θ̇ p_φ̇ sin 2θ + ½ p_φ̇²) / sin²θ
/// ```
fn sphere_hamiltonian<T: Scalar>(z: &[T]) -> T {
    let (th, dth, dph) = (z[0], z[2], z[3]);
    let (pth, pph, pdth, pdph) = (z[4], z[5], z[6], z[7]);
    let half = T::lift(0.5);
    let sin2t = (th + th).sin();
    let sin_sq = th.sin().powi(2);
    half * dph.powi(2) * pdth * sin2t
        + dph * pph
        + dth * pth
        + half * pdth.powi(2)
        + (-dph * dth * pdph * sin2t + half * pdph.powi(2)) / sin_sq
}

/// St(3,2) Hamiltonian in the flat layout
/// z = [θ, φ, ψ, θ̇, φ̇, ψ̇, p_θ, p_φ, p_ψ, p_θ̇, p_φ̇, p_ψ̇], implemented term
/// by term; the leading (1 - cos 2θ)³ factor multiplies the whole
/// momentum-bilinear bracket over the common denominator cos 2θ + 1.
fn st32_hamiltonian<T: Scalar>(z: &[T]) -> T {
    let (th, dth, dph, dps) = (z[0], z[3], z[4], z[5]);
    let (pth, pph, pps, pdth, pdph, pdps) = (z[6], z[7], z[8], z[9], z[10], z[11]);

    let one = T::lift(1.0);
    let half = T::lift(0.5);
    let quarter = T::lift(0.25);
    let eighth = T::lift(0.125);

    let sin_t = th.sin();
    let cos_t = th.cos();
    let sin2t = (th + th).sin();
    let cos2t = (th + th).cos();
    let tan_t = th.tan();

    let bracket = -eighth * dph * dth * pdph * sin2t
        + quarter * dph * dth * pdps * sin_t
        + quarter * dps * dth * pdph * sin_t
        - eighth * dps * dth * pdps * sin2t
        + quarter * pdph.powi(2)
        - half * pdph * pdps * cos_t
        + quarter * pdps.powi(2);
    let leading = (one - cos2t).powi(3) * bracket / (cos2t + one);

    let sin4 = sin_t.powi(4);
    let quartic = -half * (-pdph + pdps / cos_t).powi(2) * sin4
        - half * (-pdph / cos_t + pdps).powi(2) * sin4
        + (pdph.powi(2) - pdph * pdps * cos_t - pdph * pdps / cos_t + pdps.powi(2)) * sin4;

    let weight = sin_t.powi(6) * tan_t.powi(2);
    let linear = (dph * pph + dps * pps + dth * pth - half * pdth.powi(2)
        - pdth * (dph * dps * sin_t - pdth))
        * weight;

    (leading + quartic + linear) / weight
}

/// Gradient of a generic scalar function by seeding one dual per input.
fn gradient_of<F>(f: F, z: &[f64]) -> Vec<f64>
where
    F: Fn(&[Dual]) -> Dual,
{
    let mut grad = Vec::with_capacity(z.len());
    let mut buffer: Vec<Dual> = z.iter().map(|&v| Dual::constant(v)).collect();
    for i in 0..z.len() {
        buffer[i] = Dual::seeded(z[i]);
        grad.push(f(&buffer).du);
        buffer[i] = Dual::constant(z[i]);
    }
    grad
}
