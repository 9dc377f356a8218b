//! Geometric cubic polynomials on St(n,k) from a de Casteljau construction
//! over quasi-geodesics.
//!
//! Given boundary data (S₀, V₀, S₃, V₃) — endpoint positions and endpoint
//! velocities — the generator first places two control points
//!
//! ```text
//! S₁ = e^{X₀} S₀ e^{Ω₀},   (X₀, Ω₀) = ⅓·generators of V₀,
//! S₂ = e^{X₂} S₃ e^{Ω₂},   (X₂, Ω₂) = -⅓·generators of V₃,
//! ```
//!
//! and the constant generators (X₁, Ω₁) of the quasi-geodesic from S₁ to
//! S₂. Evaluation at a parameter value t then chains three levels of
//! quasi-geodesic interpolation: level-one frames
//!
//! ```text
//! A(t) = e^{tX₀} S₀ e^{tΩ₀},  B(t) = e^{tX₁} S₁ e^{tΩ₁},  C(t) = e^{-tX₂} S₂ e^{-tΩ₂},
//! ```
//!
//! time-dependent generators (X₃(t), Ω₃(t)) joining A(t) to B(t) and
//! (X₄(t), Ω₄(t)) joining B(t) to C(t), second-level frames
//! D(t) = e^{tX₃} A e^{tΩ₃} and E(t) = e^{tX₄} B e^{tΩ₄}, a final pair
//! (X₅(t), Ω₅(t)) joining D(t) to E(t), and
//!
//! ```text
//! γ(t) = e^{tX₅(t)} e^{tX₃(t)} e^{tX₀} S₀ e^{tΩ₀} e^{tΩ₃(t)} e^{tΩ₅(t)}.
//! ```
//!
//! The curve satisfies γ(0) = S₀, γ(1) = S₃, γ̇(0) = V₀, γ̇(1) = V₃ and stays
//! on the manifold for every t at which the intermediate logs exist. A log
//! failing at some t is reported per-t; no fallback is invented. The
//! time-dependent generators are recomputed from scratch at each t — they
//! are entangled in t and the matrices are tiny.

use nalgebra::DMatrix;
use rand::Rng;

use crate::error::{Error, Result};
use crate::matcore::{expm_skew, tangent_decompose, SkewMatrix, StiefelPoint, TangentVector};
use crate::quasigeo::connect_generators;
use crate::tol;
use crate::trajectory::{Method, TrajectoryRecord};

/// Endpoint positions and velocities prescribing a cubic.
#[derive(Debug, Clone)]
pub struct CubicBoundaryData {
    pub s0: StiefelPoint,
    pub v0: TangentVector,
    pub s3: StiefelPoint,
    pub v3: TangentVector,
}

impl CubicBoundaryData {
    pub fn new(s0: StiefelPoint, v0: TangentVector, s3: StiefelPoint, v3: TangentVector) -> Result<Self> {
        for (v, s) in [(&v0, &s0), (&v3, &s3)] {
            if v.base().matrix() != s.matrix() {
                return Err(Error::NotTangent {
                    defect: v.base().distance(s),
                });
            }
        }
        if s0.matrix().shape() != s3.matrix().shape() {
            return Err(Error::DimensionMismatch {
                context: format!("endpoints are {}×{} and {}×{}", s0.n(), s0.k(), s3.n(), s3.k()),
            });
        }
        Ok(Self { s0, v0, s3, v3 })
    }

    /// Draws boundary data for which all construction logs exist: the second
    /// endpoint is a moderate retraction step away from the first and the
    /// endpoint velocities are bounded.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Self {
        let s0 = StiefelPoint::random(rng, n, k);
        let sep = rng.gen_range(0.25..0.65);
        let step = TangentVector::random(rng, &s0, sep);
        let s3 = crate::quasigeo::retraction(&s0, &step).expect("moderate retraction step");
        let n0 = rng.gen_range(0.2..0.8);
        let v0 = TangentVector::random(rng, &s0, n0);
        let n3 = rng.gen_range(0.2..0.8);
        let v3 = TangentVector::random(rng, &s3, n3);
        Self { s0, v0, s3, v3 }
    }
}

/// A built cubic: boundary data plus all precomputed constants.
#[derive(Debug, Clone)]
pub struct CubicCurve {
    boundary: CubicBoundaryData,
    x0: SkewMatrix,
    om0: SkewMatrix,
    x2: SkewMatrix,
    om2: SkewMatrix,
    s1: StiefelPoint,
    s2: StiefelPoint,
    x1: SkewMatrix,
    om1: SkewMatrix,
}

impl CubicCurve {
    pub fn boundary(&self) -> &CubicBoundaryData {
        &self.boundary
    }

    /// First control point S₁ = e^{X₀} S₀ e^{Ω₀}.
    pub fn control_point_1(&self) -> &StiefelPoint {
        &self.s1
    }

    /// Second control point S₂ = e^{X₂} S₃ e^{Ω₂}.
    pub fn control_point_2(&self) -> &StiefelPoint {
        &self.s2
    }

    pub fn generators(&self) -> [(&SkewMatrix, &SkewMatrix); 3] {
        [(&self.x0, &self.om0), (&self.x1, &self.om1), (&self.x2, &self.om2)]
    }
}

/// Builds the cubic: control points from thirds of the endpoint velocity
/// generators, and the connecting generators (X₁, Ω₁) between them.
pub fn build_cubic(b: &CubicBoundaryData) -> Result<CubicCurve> {
    let d0 = tangent_decompose(&b.s0, &b.v0)?;
    let x0 = d0.x.scale(1.0 / 3.0);
    let om0 = d0.omega.scale(1.0 / 3.0);
    let s1 = StiefelPoint::from_matrix_unchecked(expm_skew(&x0) * b.s0.matrix() * expm_skew(&om0));

    let d3 = tangent_decompose(&b.s3, &b.v3)?;
    let x2 = d3.x.scale(-1.0 / 3.0);
    let om2 = d3.omega.scale(-1.0 / 3.0);
    let s2 = StiefelPoint::from_matrix_unchecked(expm_skew(&x2) * b.s3.matrix() * expm_skew(&om2));

    let (x1, om1) = connect_generators(s1.matrix(), s2.matrix(), "X1", "Omega1")?;

    Ok(CubicCurve {
        boundary: b.clone(),
        x0,
        om0,
        x2,
        om2,
        s1,
        s2,
        x1,
        om1,
    })
}

/// Evaluates γ(t). Each of the six time-dependent generators can fail with
/// `PrincipalLogUndefined`; the error names the generator and the t value.
pub fn eval_cubic(c: &CubicCurve, t: f64) -> Result<StiefelPoint> {
    // level-one frames
    let a = expm_skew(&c.x0.scale(t)) * c.boundary.s0.matrix() * expm_skew(&c.om0.scale(t));
    let b = expm_skew(&c.x1.scale(t)) * c.s1.matrix() * expm_skew(&c.om1.scale(t));
    let cc = expm_skew(&c.x2.scale(-t)) * c.s2.matrix() * expm_skew(&c.om2.scale(-t));

    // level-two generators and frames
    let (x3, om3) = connect_generators(&a, &b, &format!("X3(t={t})"), &format!("Omega3(t={t})"))?;
    let (x4, om4) = connect_generators(&b, &cc, &format!("X4(t={t})"), &format!("Omega4(t={t})"))?;
    let d = expm_skew(&x3.scale(t)) * &a * expm_skew(&om3.scale(t));
    let e = expm_skew(&x4.scale(t)) * &b * expm_skew(&om4.scale(t));

    // final level
    let (x5, om5) = connect_generators(&d, &e, &format!("X5(t={t})"), &format!("Omega5(t={t})"))?;
    let gamma = expm_skew(&x5.scale(t)) * d * expm_skew(&om5.scale(t));
    Ok(StiefelPoint::from_matrix_unchecked(gamma))
}

/// γ̇(t) by 4th-order finite differences of [`eval_cubic`], projected onto
/// the tangent space at γ(t). Interior points use the central stencil;
/// points within 2·step of a boundary use the matching one-sided stencil.
pub fn eval_cubic_velocity(c: &CubicCurve, t: f64) -> Result<TangentVector> {
    let h = tol::FD_STEP_CURVE;
    let f = |tt: f64| -> Result<DMatrix<f64>> { Ok(eval_cubic(c, tt)?.matrix().clone()) };
    let w = if t < 2.0 * h {
        (-25.0 * f(t)? + 48.0 * f(t + h)? - 36.0 * f(t + 2.0 * h)? + 16.0 * f(t + 3.0 * h)?
            - 3.0 * f(t + 4.0 * h)?)
            / (12.0 * h)
    } else if t > 1.0 - 2.0 * h {
        (25.0 * f(t)? - 48.0 * f(t - h)? + 36.0 * f(t - 2.0 * h)? - 16.0 * f(t - 3.0 * h)?
            + 3.0 * f(t - 4.0 * h)?)
            / (12.0 * h)
    } else {
        (f(t - 2.0 * h)? - 8.0 * f(t - h)? + 8.0 * f(t + h)? - f(t + 2.0 * h)?) / (12.0 * h)
    };
    let base = eval_cubic(c, t)?;
    Ok(TangentVector::project(&base, &w))
}

/// Samples γ on the uniform grid t_j = j/(samples-1), j = 0..samples.
pub fn sample_cubic(c: &CubicCurve, samples: usize) -> Result<TrajectoryRecord> {
    if samples < 2 {
        return Err(Error::InvalidConfig {
            context: format!("sample count must be at least 2, got {samples}"),
        });
    }
    let n_steps = samples - 1;
    let h = 1.0 / n_steps as f64;
    let mut times = Vec::with_capacity(samples);
    let mut points = Vec::with_capacity(samples);
    for j in 0..samples {
        let t = j as f64 / n_steps as f64;
        points.push(eval_cubic(c, t)?);
        times.push(t);
    }
    Ok(TrajectoryRecord {
        method: Method::Gcp,
        h,
        n_steps,
        times,
        points,
        states: None,
        jets: None,
    })
}
