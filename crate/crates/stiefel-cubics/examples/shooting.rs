//! Boundary-value solving by shooting: integrate a trajectory forward from
//! known momenta, forget the momenta, and recover them from the endpoint
//! conditions alone with the midpoint symplectic integrator.

use std::f64::consts::{FRAC_PI_2, PI};
use stiefel_cubics::charts::{ChartManifold, ChartPhaseState};
use stiefel_cubics::symplectic::{integrate_ivp, shoot_bvp, DiscretizationScheme};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let manifold = ChartManifold::Sphere;
    let scheme = DiscretizationScheme::MidPoint;
    let (h, steps) = (0.05, 20);

    let q0 = [FRAC_PI_2 - 0.2, PI];
    let dq0 = [0.1, 0.2];
    let true_pq = [0.15, -0.1];
    let true_pdq = [0.2, 0.05];

    // generate the targets with the momenta we will pretend not to know
    let start = ChartPhaseState::new(&q0, &dq0, &true_pq, &true_pdq)?;
    let forward = integrate_ivp(scheme, manifold, h, steps, &start)?;
    let goal = forward.states.as_ref().unwrap().last().unwrap().clone();
    println!("target position  q(1) = {:?}", goal.q());
    println!("target velocity q̇(1) = {:?}", goal.dq());

    let shot = shoot_bvp(scheme, manifold, h, steps, &q0, &dq0, goal.q(), goal.dq(), None)?;
    let recovered = &shot.states.as_ref().unwrap()[0];
    println!("\nrecovered initial momenta (started from zero):");
    println!("  p_q  = {:?}  (true {:?})", recovered.pq(), true_pq);
    println!("  p_q̇  = {:?}  (true {:?})", recovered.pdq(), true_pdq);

    let end = shot.states.as_ref().unwrap().last().unwrap();
    let pos_gap: f64 = end
        .q()
        .iter()
        .zip(goal.q())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    println!("\nfinal position residual (∞-norm): {pos_gap:.3e}");
    Ok(())
}
