//! Build a geometric cubic polynomial on St(3,2) from endpoint positions
//! and velocities, then verify the boundary conditions and sample the curve.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stiefel_cubics::decasteljau::{
    build_cubic, eval_cubic, eval_cubic_velocity, sample_cubic, CubicBoundaryData,
};
use stiefel_cubics::matcore::orthonormality_defect;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let data = CubicBoundaryData::random(&mut rng, 3, 2);

    let curve = build_cubic(&data)?;
    println!("control point S1 =\n{}", curve.control_point_1().matrix());
    println!("control point S2 =\n{}", curve.control_point_2().matrix());

    // boundary conditions of the cubic
    let start_gap = eval_cubic(&curve, 0.0)?.distance(&data.s0);
    let end_gap = eval_cubic(&curve, 1.0)?.distance(&data.s3);
    let v0_gap = (eval_cubic_velocity(&curve, 0.0)?.matrix() - data.v0.matrix()).norm();
    let v3_gap = (eval_cubic_velocity(&curve, 1.0)?.matrix() - data.v3.matrix()).norm();
    println!("‖γ(0) - S0‖ = {start_gap:.3e}   ‖γ(1) - S3‖ = {end_gap:.3e}");
    println!("‖γ̇(0) - V0‖ = {v0_gap:.3e}   ‖γ̇(1) - V3‖ = {v3_gap:.3e}");

    // the sampled curve stays on the manifold
    let record = sample_cubic(&curve, 101)?;
    let max_defect = record
        .points
        .iter()
        .map(|p| orthonormality_defect(p.matrix()))
        .fold(0.0f64, f64::max);
    println!("max orthonormality defect over {} samples: {max_defect:.3e}", record.len());
    Ok(())
}
