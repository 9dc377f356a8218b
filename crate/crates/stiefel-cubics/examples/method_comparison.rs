//! Full error-comparison experiment on one manifold: the geometric cubic
//! against both retraction-based symplectic integrators, all measured
//! against an RK4 reference of the Hamiltonian flow.
//!
//! Usage: cargo run --example method_comparison [sphere|st32]

use stiefel_cubics::charts::ChartManifold;
use stiefel_cubics::harness::{
    default_h_list, default_jet, emit_csv, render_log_error_table, run_comparison,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let manifold = std::env::args()
        .nth(1)
        .map(|arg| ChartManifold::parse(&arg).expect("manifold must be `sphere` or `st32`"))
        .unwrap_or(ChartManifold::Sphere);

    let jet = default_jet(manifold);
    println!("manifold: {manifold}");
    println!("initial jet: q = {:?}, q̇ = {:?}, q̈ = {:?}, q⁽³⁾ = {:?}", jet.q, jet.dq, jet.ddq, jet.dddq);
    println!();

    let table = run_comparison(manifold, &default_h_list(), &jet)?;

    for cell in &table.cells {
        match &cell.outcome {
            Ok(report) => println!(
                "{:>14}  h = {:<8} mean error = {:.6e}  relative = {:.4}%  ({:.1} ms)",
                report.method.to_string(),
                cell.h,
                report.mean_error,
                report.relative_error * 100.0,
                report.runtime.as_secs_f64() * 1e3,
            ),
            Err(e) => println!("{:>14}  h = {:<8} failed: {e}", cell.method.to_string(), cell.h),
        }
    }

    println!();
    println!("{}", render_log_error_table(&table));

    let reports: Vec<_> = table.reports().collect();
    let csv = emit_csv(&reports, true);
    println!("CSV (with timings):\n{csv}");
    Ok(())
}
