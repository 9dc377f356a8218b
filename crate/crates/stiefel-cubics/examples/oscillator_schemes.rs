//! Both discretization-map integrators on the harmonic oscillator
//! H = ½(p² + q²): energy behavior over many periods and the global
//! convergence order of each scheme.

use nalgebra::DVector;
use stiefel_cubics::symplectic::{integrate_raw, DiscretizationScheme, HamiltonianSystem, HarmonicOscillator};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sys = HarmonicOscillator;
    let q0 = DVector::from_vec(vec![1.0]);
    let p0 = DVector::from_vec(vec![0.0]);

    println!("energy after 100 time units (exact value 0.5):");
    for scheme in [DiscretizationScheme::InitialPoint, DiscretizationScheme::MidPoint] {
        let states = integrate_raw(scheme, &sys, 0.05, 2000, &q0, &p0)?;
        let (x, p) = states.last().unwrap();
        let energy = sys.hamiltonian(x, p)?;
        println!("  {scheme:?}: H = {energy:.6} (bounded, no drift)");
    }

    println!("\nglobal error at t = 1 and convergence order:");
    let exact = (1.0f64.cos(), -(1.0f64.sin()));
    for scheme in [DiscretizationScheme::InitialPoint, DiscretizationScheme::MidPoint] {
        let error_at = |h: f64| -> Result<f64, stiefel_cubics::Error> {
            let n = (1.0 / h).round() as usize;
            let states = integrate_raw(scheme, &sys, h, n, &q0, &p0)?;
            let (x, p) = states.last().unwrap();
            Ok((x[0] - exact.0).abs().max((p[0] - exact.1).abs()))
        };
        println!("  {scheme:?}:");
        let mut previous: Option<f64> = None;
        for h in [0.1, 0.05, 0.025, 0.0125] {
            let err = error_at(h)?;
            match previous {
                Some(prev) => println!("    h = {h:<7} error = {err:.6e}  order ≈ {:.2}", (prev / err).log2()),
                None => println!("    h = {h:<7} error = {err:.6e}"),
            }
            previous = Some(err);
        }
    }
    Ok(())
}
