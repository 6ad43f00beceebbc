//! Planar geometric median by the Weiszfeld iteration with the Vardi-Zhang
//! correction at data points.
//!
//! Plain Weiszfeld divides by the distance to each data point and breaks down
//! when an iterate lands on one. With `eta` points coinciding with the iterate
//! `y`, the modified update is
//!
//! ```text
//! R(y)   = sum_{p_i != y} (p_i - y) / |p_i - y|
//! T(y)   = sum_{p_i != y} p_i / |p_i - y|  /  sum_{p_i != y} 1 / |p_i - y|
//! y'     = (1 - eta / |R|)^+ T(y) + min(1, eta / |R|) y
//! ```
//!
//! and `|R(y)| <= eta` certifies `y` as a minimizer. Every data point is also
//! tested once with that certificate when it becomes the nearest point to the
//! iterate, so optima sitting exactly on a data point are reached in finitely
//! many steps instead of by slow approach.
//!
//! Weiszfeld converges only linearly, and its step length understates the
//! remaining error when the contraction rate is close to one. Once the
//! relative step drops below `1e-3`, Newton steps on the (there smooth)
//! objective take over. The Newton step is halved until it lowers the
//! objective, or shrinks the gradient without raising the objective beyond
//! rounding; if no halving qualifies, the Weiszfeld iteration resumes.

use crate::error::{Error, Result};
use crate::interval::PlanePoint;

/// Relative radius under which an iterate counts as sitting on a data point.
pub const COINCIDENCE_RTOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeiszfeldOptions {
    pub tol: f64,
    pub max_iter: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeometricMedian {
    pub point: PlanePoint,
    /// Index of a data point when the minimizer was certified to coincide with it.
    pub vertex: Option<usize>,
    pub iterations: usize,
    pub converged: bool,
    /// Last step length divided by `1 + |iterate|`.
    pub final_step: f64,
    /// Mean distance at each visited iterate, starting with the initial point.
    pub trace: Vec<f64>,
}

/// Side length of the bounding box diagonal; an upper bound on the diameter.
pub fn data_scale(points: &[PlanePoint]) -> f64 {
    let (mut lo_u, mut hi_u) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut lo_v, mut hi_v) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in points {
        lo_u = lo_u.min(p.u);
        hi_u = hi_u.max(p.u);
        lo_v = lo_v.min(p.v);
        hi_v = hi_v.max(p.v);
    }
    (hi_u - lo_u).hypot(hi_v - lo_v)
}

fn median_of(mut values: Vec<f64>) -> f64 {
    let n = values.len();
    values.sort_by(f64::total_cmp);
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * values[n / 2 - 1] + 0.5 * values[n / 2]
    }
}

/// Componentwise median of the points.
pub fn componentwise_median(points: &[PlanePoint]) -> PlanePoint {
    PlanePoint {
        u: median_of(points.iter().map(|p| p.u).collect()),
        v: median_of(points.iter().map(|p| p.v).collect()),
    }
}

struct Sweep {
    // sum of w_i p_i and w_i over the non-coincident points, w_i = 1 / d_i
    num_u: f64,
    num_v: f64,
    den: f64,
    // sum of unit vectors (p_i - y) / d_i
    grad_u: f64,
    grad_v: f64,
    coincident: usize,
    total_distance: f64,
    nearest: usize,
}

fn sweep(points: &[PlanePoint], y: PlanePoint, radius: f64) -> Sweep {
    let mut s = Sweep {
        num_u: 0.0,
        num_v: 0.0,
        den: 0.0,
        grad_u: 0.0,
        grad_v: 0.0,
        coincident: 0,
        total_distance: 0.0,
        nearest: 0,
    };
    let mut nearest_d = f64::INFINITY;
    for (i, p) in points.iter().enumerate() {
        let du = p.u - y.u;
        let dv = p.v - y.v;
        let d = du.hypot(dv);
        s.total_distance += d;
        if d < nearest_d {
            nearest_d = d;
            s.nearest = i;
        }
        if d <= radius {
            s.coincident += 1;
            continue;
        }
        let w = 1.0 / d;
        s.num_u += w * p.u;
        s.num_v += w * p.v;
        s.den += w;
        s.grad_u += w * du;
        s.grad_v += w * dv;
    }
    s
}

/// Checks the subgradient optimality condition at a data point.
fn is_optimal_vertex(points: &[PlanePoint], at: PlanePoint, radius: f64) -> bool {
    let s = sweep(points, at, radius);
    s.grad_u.hypot(s.grad_v) <= s.coincident as f64
}

/// Geometric median of a nonempty planar point set.
///
/// Starts from the componentwise median and stops when the last step (Weiszfeld
/// or Newton) falls below `tol * (1 + |iterate|)`. Every step counts as one
/// iteration. Exhausting `max_iter` is reported through
/// `converged = false`, not as an error.
pub fn geometric_median(points: &[PlanePoint], opts: WeiszfeldOptions) -> Result<GeometricMedian> {
    if points.is_empty() {
        return Err(Error::input("geometric median of an empty point set"));
    }
    let scale = data_scale(points);
    if !scale.is_finite() {
        return Err(Error::NumericFailure {
            iteration: 0,
            detail: "data extent is not finite".into(),
        });
    }
    if scale == 0.0 {
        return Ok(GeometricMedian {
            point: points[0],
            vertex: Some(0),
            iterations: 0,
            converged: true,
            final_step: 0.0,
            trace: vec![0.0],
        });
    }

    let n = points.len() as f64;
    let radius = COINCIDENCE_RTOL * scale;
    let mut rejected = vec![false; points.len()];
    let mut y = componentwise_median(points);
    let mut trace = Vec::new();
    let mut final_step = f64::INFINITY;
    let mut polishing = false;
    let mut iteration = 0;

    let done = |point, iterations, converged, final_step, mut trace: Vec<f64>| {
        trace.push(mean_distance(points, point));
        Ok(GeometricMedian {
            point,
            vertex: None,
            iterations,
            converged,
            final_step,
            trace,
        })
    };

    while iteration < opts.max_iter {
        iteration += 1;

        if polishing {
            if let Some((candidate, value, full_step)) = accepted_newton_step(points, y, radius) {
                // a halved step says nothing about closeness to the minimum
                final_step = full_step / (1.0 + candidate.u.hypot(candidate.v));
                y = candidate;
                trace.push(value);
                if final_step <= opts.tol {
                    return done(y, iteration, true, final_step, trace);
                }
                continue;
            }
            if final_step <= opts.tol {
                return done(y, iteration - 1, true, final_step, trace);
            }
        }

        let s = sweep(points, y, radius);
        trace.push(s.total_distance / n);

        let k = s.nearest;
        if !rejected[k] {
            if is_optimal_vertex(points, points[k], radius) {
                let point = points[k];
                if point != y {
                    trace.push(mean_distance(points, point));
                }
                // A further modified step from a certified vertex is the null step.
                return Ok(GeometricMedian {
                    point,
                    vertex: Some(k),
                    iterations: iteration,
                    converged: true,
                    final_step: 0.0,
                    trace,
                });
            }
            rejected[k] = true;
        }

        let t = PlanePoint {
            u: s.num_u / s.den,
            v: s.num_v / s.den,
        };
        let next = if s.coincident == 0 {
            t
        } else {
            let r = s.grad_u.hypot(s.grad_v);
            let eta = s.coincident as f64;
            // r <= eta would have been certified above; guard anyway.
            let beta = (eta / r).min(1.0);
            PlanePoint {
                u: (1.0 - beta) * t.u + beta * y.u,
                v: (1.0 - beta) * t.v + beta * y.v,
            }
        };
        if !next.u.is_finite() || !next.v.is_finite() {
            return Err(Error::NumericFailure {
                iteration,
                detail: format!("iterate became ({}, {})", next.u, next.v),
            });
        }

        final_step = next.distance(&y) / (1.0 + next.u.hypot(next.v));
        y = next;
        polishing = final_step <= POLISH_START;
    }

    let converged = final_step <= opts.tol;
    done(y, iteration, converged, final_step, trace)
}

/// Relative Weiszfeld step below which Newton steps are attempted.
const POLISH_START: f64 = 1e-3;

/// Damped Newton step from `y`. A trial point is kept if it lowers the
/// objective, or lowers the gradient norm without raising the objective
/// beyond rounding (near the minimum the objective is flat below rounding).
/// The step is halved until one of these holds. Returns the new point, its
/// mean distance and the length of the undamped step.
fn accepted_newton_step(points: &[PlanePoint], y: PlanePoint, radius: f64) -> Option<(PlanePoint, f64, f64)> {
    let (target, value, slope) = newton_step(points, y, radius)?;
    let full_step = target.distance(&y);
    let mut t = 1.0;
    // rounding in a sum of n distances grows like sqrt(n)
    let slack = 4.0 * f64::EPSILON * (points.len() as f64).sqrt();
    for _ in 0..20 {
        let candidate = PlanePoint {
            u: y.u + t * (target.u - y.u),
            v: (y.v + t * (target.v - y.v)).max(0.0),
        };
        let (candidate_value, candidate_slope) = value_and_slope(points, candidate);
        let lower = candidate_value < value * (1.0 - slack);
        let flatter = candidate_slope < slope && candidate_value <= value * (1.0 + slack);
        if lower || flatter {
            return Some((candidate, candidate_value, full_step));
        }
        t *= 0.5;
    }
    None
}

/// Newton step for the mean distance at `y`, with the mean distance and
/// gradient norm at `y`. `None` when `y` sits on a data point or the Hessian
/// is singular (collinear data).
fn newton_step(points: &[PlanePoint], y: PlanePoint, radius: f64) -> Option<(PlanePoint, f64, f64)> {
    let (mut gu, mut gv, mut total) = (0.0, 0.0, 0.0);
    let (mut huu, mut huv, mut hvv) = (0.0, 0.0, 0.0);
    for p in points {
        let du = y.u - p.u;
        let dv = y.v - p.v;
        let d = du.hypot(dv);
        if d <= radius {
            return None;
        }
        total += d;
        let (eu, ev) = (du / d, dv / d);
        gu += eu;
        gv += ev;
        // (I - e e^T) / d
        huu += (1.0 - eu * eu) / d;
        huv -= eu * ev / d;
        hvv += (1.0 - ev * ev) / d;
    }
    let det = huu * hvv - huv * huv;
    if det.is_nan() || det <= f64::EPSILON * (huu * hvv).abs() {
        return None;
    }
    let su = (hvv * gu - huv * gv) / det;
    let sv = (huu * gv - huv * gu) / det;
    let next = PlanePoint {
        u: y.u - su,
        v: (y.v - sv).max(0.0),
    };
    (next.u.is_finite() && next.v.is_finite()).then_some((next, total / points.len() as f64, gu.hypot(gv)))
}

fn value_and_slope(points: &[PlanePoint], y: PlanePoint) -> (f64, f64) {
    let (mut gu, mut gv, mut total) = (0.0, 0.0, 0.0);
    for p in points {
        let d = (y.u - p.u).hypot(y.v - p.v);
        total += d;
        if d > 0.0 {
            gu += (y.u - p.u) / d;
            gv += (y.v - p.v) / d;
        }
    }
    (total / points.len() as f64, gu.hypot(gv))
}

fn mean_distance(points: &[PlanePoint], y: PlanePoint) -> f64 {
    points.iter().map(|p| p.distance(&y)).sum::<f64>() / points.len() as f64
}
