//! When all points line up in the (mid, spr) plane the median is not unique.
//! The solver still returns a minimiser and flags it.
//!
//! `cargo run --example uniqueness`

use interval_robust::{collinearity_check, dtheta_median, Sample, ThetaConfig};

fn main() -> interval_robust::Result<()> {
    let cfg = ThetaConfig::default();
    let cases = [
        (
            "general position",
            Sample::from_endpoints(&[(0.0, 2.0), (3.0, 4.0), (1.0, 7.0)])?,
        ),
        // equal spreads: every point has spr = 1
        (
            "equal spreads",
            Sample::from_mid_spr(&[(0.0, 1.0), (2.0, 1.0), (5.0, 1.0), (9.0, 1.0)])?,
        ),
        (
            "two intervals",
            Sample::from_endpoints(&[(0.0, 1.0), (4.0, 9.0)])?,
        ),
    ];

    for (name, sample) in &cases {
        let r = dtheta_median(sample, &cfg)?;
        println!(
            "{name:<17} unique={:<5} median {} objective {:.6}",
            collinearity_check(sample, cfg.theta),
            r.estimate,
            r.objective
        );
    }
    Ok(())
}
