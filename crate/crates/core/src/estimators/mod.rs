//! Location estimators for interval samples.
//!
//! - [`aumann_mean`]: componentwise endpoint means, the minimizer of the mean
//!   squared `d_theta` distance.
//! - [`dtheta_median`]: minimizer of the mean `d_theta` distance, computed as a
//!   planar geometric median of the `(mid, sqrt(theta) * spr)` images.
//! - [`fsbp`]: finite sample breakdown point of the median, `floor((n+1)/2) / n`.

pub mod oracle;
pub mod weiszfeld;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{d_theta, from_plane, Interval, Sample, Theta, ThetaConfig};

pub use oracle::{brute_force_median, grid_argmin, refined_grid_argmin, GridBounds};
pub use weiszfeld::{geometric_median, GeometricMedian, WeiszfeldOptions};

/// Result of [`dtheta_median`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateReport {
    pub estimate: Interval,
    /// Mean `d_theta` distance from the sample to `estimate`.
    pub objective: f64,
    pub iterations: usize,
    pub converged: bool,
    /// `true` when the sample is not collinear in the `(mid, spr)` plane, which
    /// guarantees the minimizer is unique.
    pub unique: bool,
    pub final_step: f64,
}

/// Interval of componentwise means, `[mean inf, mean sup]`.
pub fn aumann_mean(sample: &Sample) -> Interval {
    let n = sample.len() as f64;
    let (lo, hi) = sample
        .iter()
        .fold((0.0, 0.0), |(lo, hi), k| (lo + k.inf(), hi + k.sup()));
    let (lo, hi) = (lo / n, hi / n);
    // Both sums stay ordered term by term, but guard the division rounding anyway.
    Interval::new(lo, hi.max(lo)).expect("mean of valid intervals is a valid interval")
}

/// Mean `d_theta` distance `(1/n) sum d_theta(x_i, k)`.
pub fn objective(sample: &Sample, k: &Interval, theta: Theta) -> f64 {
    sample.iter().map(|x| d_theta(x, k, theta)).sum::<f64>() / sample.len() as f64
}

/// Mean squared `d_theta` distance.
pub fn squared_objective(sample: &Sample, k: &Interval, theta: Theta) -> f64 {
    sample
        .iter()
        .map(|x| {
            let d = d_theta(x, k, theta);
            d * d
        })
        .sum::<f64>()
        / sample.len() as f64
}

/// Sample `d_theta`-median.
///
/// Non-unique (collinear) samples return whichever minimizer the iteration
/// reaches with `unique = false`. Hitting `max_iter` yields `converged = false`.
pub fn dtheta_median(sample: &Sample, cfg: &ThetaConfig) -> Result<EstimateReport> {
    let theta = cfg.theta;
    let points = sample.to_plane(theta);
    let gm = geometric_median(
        &points,
        WeiszfeldOptions {
            tol: cfg.tol,
            max_iter: cfg.max_iter,
        },
    )?;
    let estimate = match gm.vertex {
        // Certified data point: hand back the observed interval bit for bit.
        Some(i) => sample.items()[i],
        None => from_plane(gm.point, theta, weiszfeld::data_scale(&points)).map_err(|e| match e {
            Error::NumericFailure { detail, .. } => Error::NumericFailure {
                iteration: gm.iterations,
                detail,
            },
            other => other,
        })?,
    };
    Ok(EstimateReport {
        estimate,
        objective: objective(sample, &estimate, theta),
        iterations: gm.iterations,
        converged: gm.converged,
        unique: collinearity_check(sample, theta),
        final_step: gm.final_step,
    })
}

/// Returns `true` when the transformed points do NOT all lie on one line.
///
/// The verdict compares the singular values of the centered `2 x n`
/// coordinate matrix: not collinear iff `sigma_min > 1e-12 * sigma_max`.
/// The singular values are read off as root sums of squared projections onto
/// the principal axes, which keeps `sigma_min` accurate for exactly collinear
/// data where a determinant-based formula would cancel.
pub fn collinearity_check(sample: &Sample, theta: Theta) -> bool {
    const RATIO: f64 = 1e-12;
    if sample.len() <= 2 {
        return false;
    }
    let points = sample.to_plane(theta);
    let n = points.len() as f64;
    let cu = points.iter().map(|p| p.u).sum::<f64>() / n;
    let cv = points.iter().map(|p| p.v).sum::<f64>() / n;
    let (mut suu, mut suv, mut svv) = (0.0, 0.0, 0.0);
    for p in &points {
        let (du, dv) = (p.u - cu, p.v - cv);
        suu += du * du;
        suv += du * dv;
        svv += dv * dv;
    }
    if suu == 0.0 && svv == 0.0 {
        return false;
    }
    let angle = 0.5 * (2.0 * suv).atan2(suu - svv);
    let (s, c) = angle.sin_cos();
    let (mut major, mut minor) = (0.0, 0.0);
    for p in &points {
        let (du, dv) = (p.u - cu, p.v - cv);
        let along = c * du + s * dv;
        let across = -s * du + c * dv;
        major += along * along;
        minor += across * across;
    }
    minor.sqrt() > RATIO * major.sqrt()
}

/// Finite sample breakdown point of the sample `d_theta`-median, `floor((n+1)/2) / n`.
pub fn fsbp(n: u64) -> Result<Ratio<u64>> {
    if n == 0 {
        return Err(Error::input("breakdown point needs n >= 1"));
    }
    Ok(Ratio::new(n.div_ceil(2), n))
}
