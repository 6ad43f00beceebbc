//! Seeded Monte Carlo: the median's error against the population median
//! shrinks as n grows. Replications run in parallel; output does not depend
//! on the thread count.
//!
//! `cargo run --release --example consistency`

use interval_robust::simulation::{
    consistency_experiment, ExperimentSpec, IntervalDistribution, MidLaw, SprLaw,
};
use interval_robust::{Theta, ThetaConfig};

fn main() -> interval_robust::Result<()> {
    let spec = ExperimentSpec {
        distribution: IntervalDistribution::new(
            MidLaw::Normal { mean: 0.0, sd: 1.0 },
            SprLaw::Uniform { low: 1.0, high: 3.0 },
        )?,
        theta: Theta::ONE,
        tol: ThetaConfig::DEFAULT_TOL,
        max_iter: ThetaConfig::DEFAULT_MAX_ITER,
        sample_sizes: vec![100, 1000, 10_000],
        replications: 200,
        seed: 7,
    };

    let result = consistency_experiment(&spec)?;
    println!("truth {} ({})", result.truth, result.truth_provenance);
    println!("{:>6} {:>10} {:>10} {:>10}", "n", "mean", "median", "q90");
    for s in &result.summaries {
        println!("{:>6} {:>10.5} {:>10.5} {:>10.5}", s.n, s.mean, s.median, s.q90);
    }
    Ok(())
}
