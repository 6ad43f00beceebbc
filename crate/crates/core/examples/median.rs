//! Robust centre of a small interval sample: mean vs `d_theta`-median.
//!
//! `cargo run --example median`

use interval_robust::{aumann_mean, dtheta_median, objective, Sample, ThetaConfig};

fn main() -> interval_robust::Result<()> {
    // four daily temperature ranges and one sensor glitch
    let sample = Sample::from_endpoints(&[
        (12.0, 21.0),
        (13.5, 22.0),
        (11.0, 19.5),
        (14.0, 23.5),
        (-40.0, 85.0),
    ])?;

    let mean = aumann_mean(&sample);
    println!("mean   {mean}");

    for t in [0.25, 1.0, 4.0] {
        let cfg = ThetaConfig::new(t, 1e-12, 1000)?;
        let r = dtheta_median(&sample, &cfg)?;
        println!(
            "median {} theta={t} objective={:.6} (mean scores {:.6}) iterations={} unique={}",
            r.estimate,
            r.objective,
            objective(&sample, &mean, cfg.theta),
            r.iterations,
            r.unique,
        );
    }
    Ok(())
}
