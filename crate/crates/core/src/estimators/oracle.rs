//! Exhaustive grid search over `(mid, spr)` pairs.
//!
//! This is a test oracle: it never touches the planar transform or the
//! Weiszfeld solver, only the objective as written on intervals.

use crate::error::{Error, Result};
use crate::estimators::objective;
use crate::interval::{Interval, Sample, Theta};

/// Axis-aligned rectangle of candidate `(mid, spr)` pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridBounds {
    pub mid_min: f64,
    pub mid_max: f64,
    pub spr_min: f64,
    pub spr_max: f64,
}

impl GridBounds {
    pub fn new(mid_min: f64, mid_max: f64, spr_min: f64, spr_max: f64) -> Result<Self> {
        let all_finite = [mid_min, mid_max, spr_min, spr_max].iter().all(|x| x.is_finite());
        if !all_finite || mid_min > mid_max || spr_min > spr_max {
            return Err(Error::input(format!(
                "bad grid bounds mid [{mid_min}, {mid_max}] spr [{spr_min}, {spr_max}]"
            )));
        }
        Ok(GridBounds {
            mid_min,
            mid_max,
            spr_min,
            spr_max,
        })
    }

    /// Bounding box of the sample's `(mid, spr)` pairs inflated by its diagonal.
    pub fn covering(sample: &Sample) -> Self {
        let (mut m0, mut m1) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut s0, mut s1) = (f64::INFINITY, f64::NEG_INFINITY);
        for k in sample {
            m0 = m0.min(k.mid());
            m1 = m1.max(k.mid());
            s0 = s0.min(k.spr());
            s1 = s1.max(k.spr());
        }
        let pad = (m1 - m0).hypot(s1 - s0);
        GridBounds {
            mid_min: m0 - pad,
            mid_max: m1 + pad,
            spr_min: (s0 - pad).max(0.0),
            spr_max: s1 + pad,
        }
    }

    /// Square of half-width `radius` around a center, cut to `spr >= 0`.
    pub fn around(mid: f64, spr: f64, radius: f64) -> Self {
        GridBounds {
            mid_min: mid - radius,
            mid_max: mid + radius,
            spr_min: (spr - radius).max(0.0),
            spr_max: spr + radius,
        }
    }
}

const TIE_RTOL: f64 = 1e-12;

fn axis(lo: f64, hi: f64, step: f64) -> impl Iterator<Item = f64> {
    let count = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=count).map(move |i| lo + i as f64 * step)
}

/// Minimizes `f(mid, spr)` over the grid `bounds ∩ {spr >= 0}` with spacing `step`.
/// Values within `1e-12` (relative) of the incumbent count as ties, and ties go
/// to the smallest mid, then the smallest spr.
pub fn grid_argmin<F>(bounds: GridBounds, step: f64, mut f: F) -> Result<(f64, f64, f64)>
where
    F: FnMut(f64, f64) -> f64,
{
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::param(format!("grid step must be > 0, got {step}")));
    }
    let spr_lo = bounds.spr_min.max(0.0);
    if spr_lo > bounds.spr_max {
        return Err(Error::input("grid does not meet the half-plane spr >= 0"));
    }
    let mut best: Option<(f64, f64, f64)> = None;
    for y in axis(bounds.mid_min, bounds.mid_max, step) {
        for z in axis(spr_lo, bounds.spr_max, step) {
            let value = f(y, z);
            if best.is_none_or(|(_, _, b)| value < b - TIE_RTOL * b.abs().max(1.0)) {
                best = Some((y, z, value));
            }
        }
    }
    best.ok_or_else(|| Error::input("empty grid"))
}

/// Grid minimizer of the mean `d_theta` distance.
pub fn brute_force_median(sample: &Sample, theta: Theta, bounds: GridBounds, step: f64) -> Result<Interval> {
    let mut candidate_err = None;
    let (y, z, _) = grid_argmin(bounds, step, |y, z| match Interval::from_mid_spr(y, z) {
        Ok(k) => objective(sample, &k, theta),
        Err(e) => {
            candidate_err.get_or_insert(e);
            f64::INFINITY
        }
    })?;
    if let Some(e) = candidate_err {
        return Err(e);
    }
    Interval::from_mid_spr(y, z)
}

/// Coarse grid at `coarse_step` over `bounds`, then repeated local grids, each
/// ten times finer, around the incumbent until `fine_step` is reached.
pub fn refined_grid_argmin<F>(
    bounds: GridBounds,
    coarse_step: f64,
    fine_step: f64,
    mut f: F,
) -> Result<(f64, f64, f64)>
where
    F: FnMut(f64, f64) -> f64,
{
    let mut step = coarse_step;
    let mut best = grid_argmin(bounds, step, &mut f)?;
    while step > fine_step * (1.0 + 1e-9) {
        let next = (step / 10.0).max(fine_step);
        let local = GridBounds::around(best.0, best.1, 2.0 * step);
        best = grid_argmin(local, next, &mut f)?;
        step = next;
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_interval_is_found() {
        let sample = Sample::from_endpoints(&[(3.0, 7.0)]).unwrap();
        let bounds = GridBounds::new(4.0, 6.0, 1.0, 3.0).unwrap();
        let k = brute_force_median(&sample, Theta::ONE, bounds, 1e-2).unwrap();
        assert!((k.mid() - 5.0).abs() <= 1e-2 && (k.spr() - 2.0).abs() <= 1e-2);
    }

    #[test]
    fn flat_objective_breaks_ties_toward_small_mid() {
        // every point of the segment mid in [0, 2], spr = 0 attains objective 1
        let sample = Sample::from_endpoints(&[(0.0, 0.0), (2.0, 2.0)]).unwrap();
        let bounds = GridBounds::new(-1.0, 3.0, 0.0, 1.0).unwrap();
        let k = brute_force_median(&sample, Theta::ONE, bounds, 1e-3).unwrap();
        assert!(k.spr() == 0.0);
        assert!(k.mid().abs() <= 1e-3, "got {k}");
        assert!((objective(&sample, &k, Theta::ONE) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_step_and_bounds() {
        let b = GridBounds::new(0.0, 1.0, 0.0, 1.0).unwrap();
        assert!(grid_argmin(b, 0.0, |_, _| 0.0).is_err());
        assert!(GridBounds::new(1.0, 0.0, 0.0, 1.0).is_err());
        let below = GridBounds {
            mid_min: 0.0,
            mid_max: 1.0,
            spr_min: -2.0,
            spr_max: -1.0,
        };
        assert!(grid_argmin(below, 0.1, |_, _| 0.0).is_err());
    }
}
