//! Retractions and quasi-geodesics on St(n,k): evaluate the retraction
//! R_S(V) = e^X S e^Ω, connect two points with a quasi-geodesic, and verify
//! the endpoint interpolation and constant-speed property on the sphere.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stiefel_cubics::matcore::{orthonormality_defect, StiefelPoint, TangentVector};
use stiefel_cubics::quasigeo::{connect, retraction};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    // a random 2-frame in R³ and a tangent direction at it
    let s0 = StiefelPoint::random(&mut rng, 3, 2);
    let v = TangentVector::random(&mut rng, &s0, 0.4);
    println!("base point S0 =\n{}", s0.matrix());

    let s1 = retraction(&s0, &v)?;
    println!("retracted point R_S0(V) =\n{}", s1.matrix());
    println!("orthonormality defect: {:.3e}", orthonormality_defect(s1.matrix()));

    // reconstruct the connecting quasi-geodesic from the endpoints alone
    let curve = connect(&s0, &s1)?;
    let end_gap = (curve.point(1.0).matrix() - s1.matrix()).norm();
    println!("‖β(1) - S1‖_F = {end_gap:.3e}");
    println!("generator norms: ‖X‖ = {:.4}, ‖Ω‖ = {:.4}", curve.x().norm(), curve.omega().norm());

    // on St(3,1) quasi-geodesics are great circles: constant speed
    let a = StiefelPoint::random(&mut rng, 3, 1);
    let dir = TangentVector::random(&mut rng, &a, 0.9);
    let b = retraction(&a, &dir)?;
    let circle = connect(&a, &b)?;
    println!("\nSt(3,1) connecting curve (a great circle):");
    for j in 0..=4 {
        let t = j as f64 / 4.0;
        let jet = circle.eval(t);
        println!(
            "  t = {t:.2}: point = ({:+.4}, {:+.4}, {:+.4}), speed = {:.10}",
            jet.point.matrix()[(0, 0)],
            jet.point.matrix()[(1, 0)],
            jet.point.matrix()[(2, 0)],
            jet.velocity.norm()
        );
    }
    Ok(())
}
