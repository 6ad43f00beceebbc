//! Replace the last k of five intervals with [M, M] and watch the estimates.
//! The median holds while fewer than three points are corrupted.
//!
//! `cargo run --example breakdown`

use interval_robust::simulation::breakdown_experiment;
use interval_robust::{fsbp, Sample, ThetaConfig};

fn main() -> interval_robust::Result<()> {
    let base = Sample::from_endpoints(&[(1.0, 3.0), (2.0, 7.0), (4.0, 5.0), (0.0, 6.0), (3.0, 9.0)])?;
    let magnitudes = [1e2, 1e4, 1e6, 1e8];

    println!("fsbp(5) = {}", fsbp(base.len() as u64)?);
    println!(
        "{:>2} {:>8} {:>14} {:>14}",
        "k", "M", "median drift", "mean drift"
    );
    for k in 0..=3 {
        for row in breakdown_experiment(&base, &ThetaConfig::default(), &magnitudes, k)? {
            println!(
                "{:>2} {:>8.0e} {:>14.4} {:>14.4}",
                row.k, row.magnitude, row.median_drift, row.mean_drift
            );
        }
    }
    Ok(())
}
