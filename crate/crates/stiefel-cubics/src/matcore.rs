//! Dense matrix kernels and domain types for Stiefel/Grassmann geometry.
//!
//! The Stiefel manifold St(n,k) is the set of n×k real matrices with
//! orthonormal columns, S^T S = I_k. Each point induces the rank-k projector
//! P = S S^T, a point of the Grassmann manifold. Tangent vectors at S admit
//! two representations used throughout the crate:
//!
//! ```text
//! T_S St(n,k) = { V : V^T S + S^T V = 0 }
//!             = { X S + S Ω : X ∈ so_P(n), Ω ∈ so(k) }
//! ```
//!
//! where `so_P(n) = { X skew : XP + PX = X }`. The conversion between the
//! two is closed form and is provided by [`tangent_decompose`] /
//! [`tangent_compose`]. The metric used everywhere is the canonical metric
//! `⟨V1, V2⟩ = tr(V1^T (I - ½ S S^T) V2)`.
//!
//! The only nontrivial kernels are the matrix exponential of a skew matrix
//! and the principal logarithm of an orthogonal matrix. Matrices in scope
//! are tiny (n ≤ 8), so robustness is preferred over asymptotics: the
//! exponential uses scaling-and-squaring (via nalgebra) and the logarithm a
//! real Schur form, reading rotation angles off the 2×2 diagonal blocks.

use nalgebra::linalg::Schur;
use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::tol;

/// Frobenius norm of `M^T M - I`, the defect from having orthonormal columns.
pub fn orthonormality_defect(m: &DMatrix<f64>) -> f64 {
    let k = m.ncols();
    (m.transpose() * m - DMatrix::identity(k, k)).norm()
}

/// Frobenius norm of `A + A^T`, the defect from skew-symmetry.
pub fn skewness_defect(a: &DMatrix<f64>) -> f64 {
    (a + a.transpose()).norm()
}

fn sym(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// A point of the Stiefel manifold St(n,k): an n×k matrix with orthonormal
/// columns (S^T S = I_k within [`tol::TAU_ORTH`]).
#[derive(Debug, Clone, PartialEq)]
pub struct StiefelPoint {
    s: DMatrix<f64>,
}

impl StiefelPoint {
    /// Validates orthonormality of the columns.
    pub fn new(s: DMatrix<f64>) -> Result<Self> {
        if s.ncols() == 0 || s.ncols() > s.nrows() {
            return Err(Error::DimensionMismatch {
                context: format!("Stiefel point must be n×k with 1 ≤ k ≤ n, got {}×{}", s.nrows(), s.ncols()),
            });
        }
        let defect = orthonormality_defect(&s);
        if defect > tol::TAU_ORTH {
            return Err(Error::NotOrthonormal { defect });
        }
        Ok(Self { s })
    }

    /// Wraps a matrix that is orthonormal by construction.
    pub(crate) fn from_matrix_unchecked(s: DMatrix<f64>) -> Self {
        Self { s }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.s
    }

    pub fn n(&self) -> usize {
        self.s.nrows()
    }

    pub fn k(&self) -> usize {
        self.s.ncols()
    }

    /// The induced Grassmann projector P = S S^T.
    pub fn projector(&self) -> GrassmannProjector {
        GrassmannProjector {
            p: &self.s * self.s.transpose(),
        }
    }

    /// The reflection I - 2 S S^T, a symmetric involution.
    pub fn reflection(&self) -> DMatrix<f64> {
        let n = self.n();
        DMatrix::identity(n, n) - 2.0 * &self.s * self.s.transpose()
    }

    /// Draws a uniformly distributed point via the Q factor of a Gaussian
    /// matrix, with column signs fixed by the R diagonal for determinism.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Self {
        assert!(k >= 1 && k <= n);
        let g = DMatrix::from_fn(n, k, |_, _| rng.sample::<f64, _>(StandardNormal));
        let qr = g.qr();
        let mut q = qr.q();
        let r = qr.r();
        for j in 0..k {
            if r[(j, j)] < 0.0 {
                for i in 0..n {
                    q[(i, j)] = -q[(i, j)];
                }
            }
        }
        Self::from_matrix_unchecked(q)
    }

    /// Frobenius distance to another point of the same shape.
    pub fn distance(&self, other: &StiefelPoint) -> f64 {
        (&self.s - &other.s).norm()
    }
}

/// A rank-k orthogonal projector P = S S^T representing a k-dimensional
/// subspace of R^n.
#[derive(Debug, Clone, PartialEq)]
pub struct GrassmannProjector {
    p: DMatrix<f64>,
}

impl GrassmannProjector {
    /// Validates symmetry, idempotence and integer trace.
    pub fn new(p: DMatrix<f64>) -> Result<Self> {
        if !p.is_square() {
            return Err(Error::DimensionMismatch {
                context: format!("projector must be square, got {}×{}", p.nrows(), p.ncols()),
            });
        }
        let sym_defect = (&p - p.transpose()).norm();
        let idem_defect = (&p * &p - &p).norm();
        let trace = p.trace();
        let trace_defect = (trace - trace.round()).abs();
        let defect = sym_defect.max(idem_defect).max(trace_defect);
        if defect > tol::TAU_ORTH {
            return Err(Error::NotProjector { defect });
        }
        Ok(Self { p })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.p
    }

    /// Subspace dimension k = trace(P).
    pub fn rank(&self) -> usize {
        self.p.trace().round() as usize
    }

    /// The reflection I - 2P.
    pub fn reflection(&self) -> DMatrix<f64> {
        let n = self.p.nrows();
        DMatrix::identity(n, n) - 2.0 * &self.p
    }
}

/// A skew-symmetric matrix, A + A^T = 0 within [`tol::TAU_ORTH`].
#[derive(Debug, Clone, PartialEq)]
pub struct SkewMatrix {
    a: DMatrix<f64>,
}

impl SkewMatrix {
    pub fn new(a: DMatrix<f64>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch {
                context: format!("skew matrix must be square, got {}×{}", a.nrows(), a.ncols()),
            });
        }
        let defect = skewness_defect(&a);
        if defect > tol::TAU_ORTH {
            return Err(Error::NotSkew { defect });
        }
        Ok(Self { a })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            a: DMatrix::zeros(dim, dim),
        }
    }

    /// Skew-symmetrizes the input, discarding its symmetric part.
    pub fn skew_part(m: &DMatrix<f64>) -> Self {
        Self {
            a: (m - m.transpose()) * 0.5,
        }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn dim(&self) -> usize {
        self.a.nrows()
    }

    pub fn scale(&self, factor: f64) -> SkewMatrix {
        SkewMatrix { a: &self.a * factor }
    }

    pub fn norm(&self) -> f64 {
        self.a.norm()
    }
}

/// A tangent vector V at a base point S, satisfying V^T S + S^T V = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector {
    v: DMatrix<f64>,
    base: StiefelPoint,
}

impl TangentVector {
    /// Validates membership of `T_S St(n,k)`.
    pub fn new(base: &StiefelPoint, v: DMatrix<f64>) -> Result<Self> {
        if v.shape() != base.matrix().shape() {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "tangent vector is {}×{} but base point is {}×{}",
                    v.nrows(),
                    v.ncols(),
                    base.n(),
                    base.k()
                ),
            });
        }
        let defect = (v.transpose() * base.matrix() + base.matrix().transpose() * &v).norm();
        if defect > tol::TAU_ORTH {
            return Err(Error::NotTangent { defect });
        }
        Ok(Self { v, base: base.clone() })
    }

    pub(crate) fn from_matrix_unchecked(base: &StiefelPoint, v: DMatrix<f64>) -> Self {
        Self { v, base: base.clone() }
    }

    /// Orthogonal projection of an ambient matrix onto the tangent space,
    /// W ↦ W - S sym(S^T W).
    pub fn project(base: &StiefelPoint, w: &DMatrix<f64>) -> Self {
        let s = base.matrix();
        let v = w - s * sym(&(s.transpose() * w));
        Self { v, base: base.clone() }
    }

    /// Draws a tangent vector with the requested Frobenius norm.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, base: &StiefelPoint, norm: f64) -> Self {
        let g = DMatrix::from_fn(base.n(), base.k(), |_, _| rng.sample::<f64, _>(StandardNormal));
        let mut t = Self::project(base, &g);
        let current = t.v.norm();
        if current > 0.0 {
            t.v *= norm / current;
        }
        t
    }

    pub fn zero(base: &StiefelPoint) -> Self {
        Self {
            v: DMatrix::zeros(base.n(), base.k()),
            base: base.clone(),
        }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.v
    }

    pub fn base(&self) -> &StiefelPoint {
        &self.base
    }

    pub fn norm(&self) -> f64 {
        self.v.norm()
    }

    pub fn scale(&self, factor: f64) -> TangentVector {
        TangentVector {
            v: &self.v * factor,
            base: self.base.clone(),
        }
    }
}

/// The (X, Ω) representation of a tangent vector: V = X S + S Ω with X skew
/// n×n in so_P(n) and Ω skew k×k.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentDecomposition {
    pub x: SkewMatrix,
    pub omega: SkewMatrix,
}

// ---------------------------------------------------------------------------
// Kernels
// ---------------------------------------------------------------------------

/// Exponential of a skew-symmetric matrix; the result is orthogonal with
/// determinant +1.
pub fn expm_skew(a: &SkewMatrix) -> DMatrix<f64> {
    a.matrix().exp()
}

/// Principal logarithm of an orthogonal matrix with no eigenvalue at -1.
///
/// Computed from the real Schur form Q = U T U^T: for an orthogonal matrix T
/// is block diagonal with 2×2 rotation blocks and ±1 entries, so the log is
/// assembled from the rotation angles. Eigenvalues within [`tol::EPS_LOG`]
/// of -1 (including every det = -1 input) are rejected.
pub fn logm_orthogonal(q: &DMatrix<f64>) -> Result<SkewMatrix> {
    logm_orthogonal_ctx(q, "logm_orthogonal")
}

pub(crate) fn logm_orthogonal_ctx(q: &DMatrix<f64>, context: &str) -> Result<SkewMatrix> {
    if !q.is_square() {
        return Err(Error::DimensionMismatch {
            context: format!("{context}: log input must be square, got {}×{}", q.nrows(), q.ncols()),
        });
    }
    let defect = orthonormality_defect(q);
    if defect > tol::TAU_LOG_INPUT {
        return Err(Error::NotOrthogonal {
            context: context.to_string(),
            defect,
        });
    }
    let n = q.nrows();

    let schur = Schur::try_new(q.clone(), 1e-14, 10_000).ok_or_else(|| Error::Numerics {
        context: format!("{context}: Schur iteration did not converge"),
    })?;
    let (u, t) = schur.unpack();

    // Assemble log(T). Blocks with a nonzero subdiagonal entry are plane
    // rotations; 1×1 entries of an orthogonal T are ±1.
    let mut l = DMatrix::<f64>::zeros(n, n);
    let mut i = 0;
    while i < n {
        let in_block = i + 1 < n && t[(i + 1, i)].abs() > 1e-12;
        if in_block {
            let c = 0.5 * (t[(i, i)] + t[(i + 1, i + 1)]);
            let s = 0.5 * (t[(i + 1, i)] - t[(i, i + 1)]);
            // distance of the eigenvalue pair e^{±iθ} from -1
            if (2.0 + 2.0 * c).max(0.0).sqrt() < tol::EPS_LOG {
                return Err(Error::PrincipalLogUndefined {
                    context: context.to_string(),
                });
            }
            let theta = s.atan2(c);
            l[(i, i + 1)] = -theta;
            l[(i + 1, i)] = theta;
            i += 2;
        } else {
            let lambda = t[(i, i)];
            if (lambda + 1.0).abs() < tol::EPS_LOG {
                return Err(Error::PrincipalLogUndefined {
                    context: context.to_string(),
                });
            }
            // λ ≈ +1 for an orthogonal matrix; its log contribution is 0.
            i += 1;
        }
    }

    let raw = &u * l * u.transpose();
    let result = SkewMatrix::skew_part(&raw);

    // The Schur form of a near-orthogonal matrix can in principle mislead the
    // block scan; verify the defining property exp(log Q) = Q.
    let recon = (expm_skew(&result) - q).norm();
    if recon > 1e-10 {
        return Err(Error::Numerics {
            context: format!("{context}: log reconstruction defect {recon:.3e}"),
        });
    }
    Ok(result)
}

/// Splits a tangent vector into its (X, Ω) generators:
/// X = V S^T - S V^T + 2 S V^T S S^T and Ω = S^T V.
pub fn tangent_decompose(s: &StiefelPoint, v: &TangentVector) -> Result<TangentDecomposition> {
    if v.base().matrix() != s.matrix() {
        return Err(Error::NotTangent {
            defect: v.base().distance(s),
        });
    }
    let sm = s.matrix();
    let vm = v.matrix();
    let x = vm * sm.transpose() - sm * vm.transpose() + 2.0 * sm * (vm.transpose() * sm) * sm.transpose();
    let omega = sm.transpose() * vm;
    Ok(TangentDecomposition {
        x: SkewMatrix::skew_part(&x),
        omega: SkewMatrix::skew_part(&omega),
    })
}

/// Reassembles a tangent vector from its generators: V = X S + S Ω.
pub fn tangent_compose(s: &StiefelPoint, d: &TangentDecomposition) -> Result<TangentVector> {
    if d.x.dim() != s.n() || d.omega.dim() != s.k() {
        return Err(Error::DimensionMismatch {
            context: format!(
                "generators are {}×{} and {}×{} but the point is {}×{}",
                d.x.dim(),
                d.x.dim(),
                d.omega.dim(),
                d.omega.dim(),
                s.n(),
                s.k()
            ),
        });
    }
    let v = d.x.matrix() * s.matrix() + s.matrix() * d.omega.matrix();
    TangentVector::new(s, v)
}

/// Canonical metric ⟨V1, V2⟩ = tr(V1^T (I - ½ S S^T) V2).
pub fn canonical_inner(s: &StiefelPoint, v1: &TangentVector, v2: &TangentVector) -> Result<f64> {
    for v in [v1, v2] {
        if v.base().matrix() != s.matrix() {
            return Err(Error::NotTangent {
                defect: v.base().distance(s),
            });
        }
    }
    let sm = s.matrix();
    let half_proj = v2.matrix() - 0.5 * sm * (sm.transpose() * v2.matrix());
    Ok((v1.matrix().transpose() * half_proj).trace())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mat(rows: usize, cols: usize, data: &[f64]) -> DMatrix<f64> {
        DMatrix::from_row_slice(rows, cols, data)
    }

    /// Truncated Taylor series Σ A^i / i!, the independent oracle for expm.
    fn expm_taylor(a: &DMatrix<f64>, terms: usize) -> DMatrix<f64> {
        let n = a.nrows();
        let mut sum = DMatrix::<f64>::identity(n, n);
        let mut term = DMatrix::<f64>::identity(n, n);
        for i in 1..=terms {
            term = (&term * a) / i as f64;
            sum += &term;
        }
        sum
    }

    fn random_skew(rng: &mut ChaCha8Rng, n: usize, fro_norm: f64) -> SkewMatrix {
        let g = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
        let mut s = SkewMatrix::skew_part(&g);
        let cur = s.norm();
        if cur > 0.0 {
            s = s.scale(fro_norm / cur);
        }
        s
    }

    #[test]
    fn expm_identity_case() {
        let zero = SkewMatrix::zeros(3);
        assert_abs_diff_eq!(expm_skew(&zero), DMatrix::identity(3, 3), epsilon = 1e-15);
    }

    #[test]
    fn expm_planar_quarter_turn() {
        use std::f64::consts::FRAC_PI_2;
        let a = SkewMatrix::new(mat(2, 2, &[0.0, -FRAC_PI_2, FRAC_PI_2, 0.0])).unwrap();
        let expected = mat(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        assert_abs_diff_eq!(expm_skew(&a), expected, epsilon = 1e-14);
    }

    #[test]
    fn expm_matches_taylor_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..50 {
            let norm = rng.gen_range(0.05..1.0);
            let a = random_skew(&mut rng, 3, norm);
            let via_kernel = expm_skew(&a);
            let via_taylor = expm_taylor(a.matrix(), 30);
            assert!((via_kernel.clone() - &via_taylor).norm() < 1e-12);
            // and the result is special orthogonal
            assert!(orthonormality_defect(&via_kernel) < tol::TAU_ORTH);
            assert_abs_diff_eq!(via_kernel.determinant(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn logm_identity_case() {
        let l = logm_orthogonal(&DMatrix::identity(3, 3)).unwrap();
        assert!(l.norm() < 1e-14);
    }

    #[test]
    fn logm_planar_quarter_turn() {
        use std::f64::consts::FRAC_PI_2;
        let q = mat(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        let l = logm_orthogonal(&q).unwrap();
        assert_abs_diff_eq!(l.matrix().clone(), mat(2, 2, &[0.0, -FRAC_PI_2, FRAC_PI_2, 0.0]), epsilon = 1e-13);
    }

    #[test]
    fn logm_rejects_half_turn() {
        // rotation by π about the z axis has eigenvalues {-1, -1, 1}
        let q = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![-1.0, -1.0, 1.0]));
        match logm_orthogonal(&q) {
            Err(Error::PrincipalLogUndefined { .. }) => {}
            other => panic!("expected PrincipalLogUndefined, got {other:?}"),
        }
    }

    #[test]
    fn logm_rejects_non_orthogonal() {
        let m = mat(2, 2, &[1.0, 0.1, 0.0, 1.0]);
        match logm_orthogonal(&m) {
            Err(Error::NotOrthogonal { .. }) => {}
            other => panic!("expected NotOrthogonal, got {other:?}"),
        }
    }

    #[test]
    fn logm_rejects_reflection() {
        // det = -1, eigenvalue -1
        let q = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 1.0, -1.0]));
        assert!(matches!(logm_orthogonal(&q), Err(Error::PrincipalLogUndefined { .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// log(exp(A)) = A whenever ‖A‖₂ < π - 0.1.
        #[test]
        fn log_exp_round_trip(seed in 0u64..1_000_000, n in 2usize..6, norm in 0.01f64..3.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // ‖A‖₂ ≤ ‖A‖_F, so capping the Frobenius norm caps the spectral norm
            let capped = norm.min(std::f64::consts::PI - 0.1);
            let a = random_skew(&mut rng, n, capped);
            let round = logm_orthogonal(&expm_skew(&a)).unwrap();
            prop_assert!((round.matrix() - a.matrix()).norm() < 1e-9);
        }

        /// compose ∘ decompose restores the tangent vector.
        #[test]
        fn decompose_compose_round_trip(seed in 0u64..1_000_000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = StiefelPoint::random(&mut rng, 3, 2);
            let v = TangentVector::random(&mut rng, &s, 1.0);
            let d = tangent_decompose(&s, &v).unwrap();
            let back = tangent_compose(&s, &d).unwrap();
            prop_assert!((back.matrix() - v.matrix()).norm() < 1e-12);
        }
    }

    #[test]
    fn decompose_zero_vector() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = StiefelPoint::random(&mut rng, 3, 2);
        let d = tangent_decompose(&s, &TangentVector::zero(&s)).unwrap();
        assert!(d.x.norm() < 1e-15 && d.omega.norm() < 1e-15);
    }

    #[test]
    fn decompose_column_case_has_zero_omega() {
        // on St(n,1) the 1×1 skew factor is forced to zero
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = StiefelPoint::random(&mut rng, 4, 1);
        let v = TangentVector::random(&mut rng, &s, 0.7);
        let d = tangent_decompose(&s, &v).unwrap();
        assert!(d.omega.norm() < 1e-14);
    }

    #[test]
    fn decompose_reconstruction_and_subspace_membership() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let s = StiefelPoint::random(&mut rng, 3, 2);
            let v = TangentVector::random(&mut rng, &s, 1.3);
            let d = tangent_decompose(&s, &v).unwrap();
            let recon = d.x.matrix() * s.matrix() + s.matrix() * d.omega.matrix();
            assert!((recon - v.matrix()).norm() < 1e-10);
            // X ∈ so_P(n): XP + PX = X
            let p = s.projector();
            let xp = d.x.matrix() * p.matrix() + p.matrix() * d.x.matrix();
            assert!((xp - d.x.matrix()).norm() < 1e-10);
            assert!(skewness_defect(d.omega.matrix()) < 1e-14);
        }
    }

    #[test]
    fn compose_planar_generator_example() {
        // S = e1 ∈ St(3,1), X = (π/4)·G_z with G_z the z-plane rotation
        // generator, Ω = 0 → V = (0, π/4, 0)^T
        let s = StiefelPoint::new(mat(3, 1, &[1.0, 0.0, 0.0])).unwrap();
        let gz = mat(3, 3, &[0.0, -1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let d = TangentDecomposition {
            x: SkewMatrix::new(gz * std::f64::consts::FRAC_PI_4).unwrap(),
            omega: SkewMatrix::zeros(1),
        };
        let v = tangent_compose(&s, &d).unwrap();
        assert_abs_diff_eq!(
            v.matrix().clone(),
            mat(3, 1, &[0.0, std::f64::consts::FRAC_PI_4, 0.0]),
            epsilon = 1e-15
        );
    }

    #[test]
    fn compose_dimension_mismatch() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let s = StiefelPoint::random(&mut rng, 3, 2);
        let d = TangentDecomposition {
            x: SkewMatrix::zeros(4),
            omega: SkewMatrix::zeros(2),
        };
        assert!(matches!(tangent_compose(&s, &d), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn canonical_inner_zero_and_axis_cases() {
        let s = StiefelPoint::new(mat(3, 1, &[1.0, 0.0, 0.0])).unwrap();
        let zero = TangentVector::zero(&s);
        assert_eq!(canonical_inner(&s, &zero, &zero).unwrap(), 0.0);

        // k = 1, S = e1, V = e2: the projector term vanishes off-axis
        let v = TangentVector::new(&s, mat(3, 1, &[0.0, 1.0, 0.0])).unwrap();
        assert_abs_diff_eq!(canonical_inner(&s, &v, &v).unwrap(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn canonical_inner_algebraic_identity() {
        // ⟨V1,V2⟩ = ½ tr(V1^T V2) + ½ tr(V1^T (I - SS^T) V2)
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let s = StiefelPoint::random(&mut rng, 4, 2);
            let v1 = TangentVector::random(&mut rng, &s, 0.9);
            let v2 = TangentVector::random(&mut rng, &s, 1.7);
            let lhs = canonical_inner(&s, &v1, &v2).unwrap();
            let p = s.projector();
            let complement = DMatrix::identity(4, 4) - p.matrix();
            let rhs = 0.5 * (v1.matrix().transpose() * v2.matrix()).trace()
                + 0.5 * (v1.matrix().transpose() * complement * v2.matrix()).trace();
            assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-13);
            // symmetry and bilinearity spot checks
            assert_abs_diff_eq!(lhs, canonical_inner(&s, &v2, &v1).unwrap(), epsilon = 1e-13);
            let scaled = canonical_inner(&s, &v1.scale(2.5), &v2).unwrap();
            assert_abs_diff_eq!(scaled, 2.5 * lhs, epsilon = 1e-12);
        }
    }

    #[test]
    fn canonical_inner_positive_definite_sample() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let s = StiefelPoint::random(&mut rng, 3, 2);
        let v = TangentVector::random(&mut rng, &s, 0.8);
        assert!(canonical_inner(&s, &v, &v).unwrap() > 0.0);
    }

    #[test]
    fn reflection_is_an_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let s = StiefelPoint::random(&mut rng, 4, 2);
            let r = s.reflection();
            assert!((&r * &r - DMatrix::identity(4, 4)).norm() < 1e-12);
            assert!((&r - r.transpose()).norm() < 1e-13);
        }
    }

    #[test]
    fn constructors_validate_invariants() {
        assert!(matches!(
            StiefelPoint::new(mat(2, 2, &[1.0, 0.0, 0.1, 1.0])),
            Err(Error::NotOrthonormal { .. })
        ));
        assert!(matches!(
            SkewMatrix::new(mat(2, 2, &[0.0, 1.0, 1.0, 0.0])),
            Err(Error::NotSkew { .. })
        ));
        let s = StiefelPoint::new(mat(3, 1, &[1.0, 0.0, 0.0])).unwrap();
        assert!(matches!(
            TangentVector::new(&s, mat(3, 1, &[1.0, 0.0, 0.0])),
            Err(Error::NotTangent { .. })
        ));
        let p = s.projector();
        assert_eq!(p.rank(), 1);
        assert!(GrassmannProjector::new(p.matrix().clone()).is_ok());
        assert!(matches!(
            GrassmannProjector::new(mat(2, 2, &[1.0, 0.3, 0.3, 0.5])),
            Err(Error::NotProjector { .. })
        ));
    }
}
