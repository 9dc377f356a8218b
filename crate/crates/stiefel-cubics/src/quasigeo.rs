//! The retraction R_S(V) = e^X S e^Ω, its quasi-geodesics, and endpoint
//! interpolation.
//!
//! Writing a tangent vector as V = X S + S Ω, the retraction above induces
//! the curve
//!
//! ```text
//! β(t) = e^{tX} S e^{tΩ},   β(0) = S,   β̇(0) = V,
//! ```
//!
//! called a quasi-geodesic. It stays on the manifold for all t and has
//! closed-form derivatives. A quasi-geodesic through two given points is
//! recovered by [`connect`]: the generator X is half the principal log of
//! the product of the two subspace reflections, and Ω closes the frame gap.
//! Both logs exist when the endpoints are close enough; otherwise the error
//! is surfaced instead of subdividing, which is a policy for callers.
//!
//! Quasi-geodesics are genuine geodesics of the canonical metric exactly
//! when X = 0 or Ω = 0 — in particular always on St(n,1), where they are
//! unit-sphere great circles.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::matcore::{
    expm_skew, logm_orthogonal_ctx, tangent_decompose, SkewMatrix, StiefelPoint, TangentVector,
};

/// A quasi-geodesic t ↦ e^{tX} S₀ e^{tΩ}.
#[derive(Debug, Clone)]
pub struct QuasiGeodesic {
    s0: StiefelPoint,
    x: SkewMatrix,
    omega: SkewMatrix,
}

/// Position, velocity and acceleration of a curve at one parameter value.
#[derive(Debug, Clone)]
pub struct CurveJet {
    pub point: StiefelPoint,
    pub velocity: DMatrix<f64>,
    pub acceleration: DMatrix<f64>,
}

impl QuasiGeodesic {
    pub fn new(s0: StiefelPoint, x: SkewMatrix, omega: SkewMatrix) -> Result<Self> {
        if x.dim() != s0.n() || omega.dim() != s0.k() {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "generators are {}×{} and {}×{} but the base point is {}×{}",
                    x.dim(),
                    x.dim(),
                    omega.dim(),
                    omega.dim(),
                    s0.n(),
                    s0.k()
                ),
            });
        }
        Ok(Self { s0, x, omega })
    }

    pub fn base(&self) -> &StiefelPoint {
        &self.s0
    }

    pub fn x(&self) -> &SkewMatrix {
        &self.x
    }

    pub fn omega(&self) -> &SkewMatrix {
        &self.omega
    }

    /// β(t), β̇(t), β̈(t):
    ///
    /// ```text
    /// β(t)  = e^{tX} S₀ e^{tΩ}
    /// β̇(t)  = e^{tX} (X S₀ + S₀ Ω) e^{tΩ}
    /// β̈(t)  = e^{tX} (X² S₀ + 2 X S₀ Ω + S₀ Ω²) e^{tΩ}
    /// ```
    pub fn eval(&self, t: f64) -> CurveJet {
        let x = self.x.matrix();
        let om = self.omega.matrix();
        let s0 = self.s0.matrix();
        let etx = expm_skew(&self.x.scale(t));
        let etom = expm_skew(&self.omega.scale(t));
        let point = &etx * s0 * &etom;
        let inner_vel = x * s0 + s0 * om;
        let velocity = &etx * &inner_vel * &etom;
        let inner_acc = x * x * s0 + 2.0 * x * s0 * om + s0 * om * om;
        let acceleration = &etx * inner_acc * &etom;
        CurveJet {
            point: StiefelPoint::from_matrix_unchecked(point),
            velocity,
            acceleration,
        }
    }

    /// β(t) alone.
    pub fn point(&self, t: f64) -> StiefelPoint {
        let etx = expm_skew(&self.x.scale(t));
        let etom = expm_skew(&self.omega.scale(t));
        StiefelPoint::from_matrix_unchecked(&etx * self.s0.matrix() * &etom)
    }

    /// The initial velocity X S₀ + S₀ Ω as a tangent vector at S₀.
    pub fn initial_velocity(&self) -> TangentVector {
        let v = self.x.matrix() * self.s0.matrix() + self.s0.matrix() * self.omega.matrix();
        TangentVector::from_matrix_unchecked(&self.s0, v)
    }
}

/// The retraction R_S(V) = e^X S e^Ω with (X, Ω) the generators of V.
pub fn retraction(s: &StiefelPoint, v: &TangentVector) -> Result<StiefelPoint> {
    let d = tangent_decompose(s, v)?;
    let point = expm_skew(&d.x) * s.matrix() * expm_skew(&d.omega);
    Ok(StiefelPoint::from_matrix_unchecked(point))
}

/// Generators of the quasi-geodesic from frame `a` to frame `b`:
///
/// ```text
/// X = ½ log((I - 2 b bᵀ)(I - 2 a aᵀ)),   Ω = log(aᵀ e^{-X} b).
/// ```
///
/// Fails with `PrincipalLogUndefined` when either log does not exist and
/// with `NotOrthogonal` when aᵀ e^{-X} b is not orthogonal, both of which
/// signal frames too far apart. The labels tag error messages with the
/// generator being computed.
pub(crate) fn connect_generators(
    a: &DMatrix<f64>,
    b: &DMatrix<f64>,
    x_label: &str,
    omega_label: &str,
) -> Result<(SkewMatrix, SkewMatrix)> {
    let n = a.nrows();
    let eye = DMatrix::<f64>::identity(n, n);
    let refl_a = &eye - 2.0 * a * a.transpose();
    let refl_b = &eye - 2.0 * b * b.transpose();
    let x = logm_orthogonal_ctx(&(refl_b * refl_a), x_label)?.scale(0.5);
    let frame_gap = a.transpose() * expm_skew(&x.scale(-1.0)) * b;
    let omega = logm_orthogonal_ctx(&frame_gap, omega_label)?;
    Ok((x, omega))
}

/// The quasi-geodesic connecting `s0` to `s1` (β(0) = S₀, β(1) = S₁).
pub fn connect(s0: &StiefelPoint, s1: &StiefelPoint) -> Result<QuasiGeodesic> {
    if s0.matrix().shape() != s1.matrix().shape() {
        return Err(Error::DimensionMismatch {
            context: format!(
                "cannot connect a {}×{} point to a {}×{} point",
                s0.n(),
                s0.k(),
                s1.n(),
                s1.k()
            ),
        });
    }
    let (x, omega) = connect_generators(s0.matrix(), s1.matrix(), "connect: X", "connect: Omega")?;
    QuasiGeodesic::new(s0.clone(), x, omega)
}
