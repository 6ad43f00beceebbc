//! The endpoint-wise mean minimises the sum of squared `d_theta` distances.
//! A grid search over (mid, spr) lands on it for every theta.
//!
//! `cargo run --release --example frechet_mean`

use interval_robust::estimators::refined_grid_argmin;
use interval_robust::{aumann_mean, squared_objective, GridBounds, Interval, Sample, Theta};

fn main() -> interval_robust::Result<()> {
    let sample = Sample::from_endpoints(&[(0.0, 4.0), (1.0, 2.0), (-3.0, 6.0), (2.5, 2.5)])?;
    let mean = aumann_mean(&sample);
    println!("aumann mean {mean} (mid {}, spr {})", mean.mid(), mean.spr());

    for t in [0.1, 1.0, 10.0] {
        let theta = Theta::new(t)?;
        let (mid, spr, value) = refined_grid_argmin(GridBounds::covering(&sample), 0.1, 1e-4, |y, z| {
            squared_objective(&sample, &Interval::from_mid_spr(y, z).unwrap(), theta)
        })?;
        println!("theta {t:>4}: grid argmin mid {mid:.4} spr {spr:.4} (value {value:.6})");
    }
    Ok(())
}
