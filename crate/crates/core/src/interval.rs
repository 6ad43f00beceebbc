//! Compact real intervals, their semilinear arithmetic and the `d_theta` metric.
//!
//! An [`Interval`] is stored by its endpoints; mid-point and spread (radius)
//! are derived on demand. The `d_theta` distance weighs the squared spread
//! difference by `theta`:
//!
//! ```text
//! d_theta(A, B) = sqrt((mid A - mid B)^2 + theta * (spr A - spr B)^2)
//! ```
//!
//! The map `K -> (mid K, sqrt(theta) * spr K)` is an isometry onto the closed
//! upper half-plane with the Euclidean norm, which is what the median solver
//! works in (see [`to_plane`]).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A nonempty compact interval `[inf, sup]` with finite endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawInterval", into = "RawInterval")]
pub struct Interval {
    inf: f64,
    sup: f64,
}

#[derive(Serialize, Deserialize)]
struct RawInterval {
    inf: f64,
    sup: f64,
}

impl TryFrom<RawInterval> for Interval {
    type Error = Error;

    fn try_from(raw: RawInterval) -> Result<Self> {
        Interval::new(raw.inf, raw.sup)
    }
}

impl From<Interval> for RawInterval {
    fn from(k: Interval) -> Self {
        RawInterval {
            inf: k.inf,
            sup: k.sup,
        }
    }
}

impl Interval {
    pub fn new(inf: f64, sup: f64) -> Result<Self> {
        if !inf.is_finite() || !sup.is_finite() {
            return Err(Error::input(format!(
                "interval endpoints must be finite, got [{inf}, {sup}]"
            )));
        }
        if inf > sup {
            return Err(Error::input(format!(
                "interval requires inf <= sup, got [{inf}, {sup}]"
            )));
        }
        Ok(Interval { inf, sup })
    }

    /// Builds `[mid - spr, mid + spr]`.
    pub fn from_mid_spr(mid: f64, spr: f64) -> Result<Self> {
        if !mid.is_finite() || !spr.is_finite() {
            return Err(Error::input(format!(
                "mid and spr must be finite, got mid={mid}, spr={spr}"
            )));
        }
        if spr < 0.0 {
            return Err(Error::input(format!("spread must be >= 0, got {spr}")));
        }
        let (inf, sup) = (mid - spr, mid + spr);
        if !inf.is_finite() || !sup.is_finite() {
            return Err(Error::ArithmeticOverflow(format!(
                "mid={mid}, spr={spr} overflows the endpoints"
            )));
        }
        Ok(Interval { inf, sup })
    }

    /// The degenerate interval `[x, x]`.
    pub fn point(x: f64) -> Result<Self> {
        Interval::new(x, x)
    }

    pub fn inf(&self) -> f64 {
        self.inf
    }

    pub fn sup(&self) -> f64 {
        self.sup
    }

    // Halving each endpoint first keeps the sum finite for endpoints near f64::MAX.
    pub fn mid(&self) -> f64 {
        0.5 * self.inf + 0.5 * self.sup
    }

    pub fn spr(&self) -> f64 {
        0.5 * self.sup - 0.5 * self.inf
    }

    pub fn is_degenerate(&self) -> bool {
        self.inf == self.sup
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.inf, self.sup)
    }
}

/// Minkowski sum `[inf A + inf B, sup A + sup B]`.
pub fn add(a: &Interval, b: &Interval) -> Result<Interval> {
    let inf = a.inf + b.inf;
    let sup = a.sup + b.sup;
    if !inf.is_finite() || !sup.is_finite() {
        return Err(Error::ArithmeticOverflow(format!("{a} + {b}")));
    }
    Ok(Interval { inf, sup })
}

/// Scalar product. The mid-point is multiplied by `gamma` and the spread by `|gamma|`;
/// on endpoints this is `[gamma inf, gamma sup]` for `gamma >= 0` and the swapped pair otherwise.
pub fn scale(gamma: f64, k: &Interval) -> Result<Interval> {
    if !gamma.is_finite() {
        return Err(Error::param(format!("scale factor must be finite, got {gamma}")));
    }
    let (inf, sup) = if gamma >= 0.0 {
        (gamma * k.inf, gamma * k.sup)
    } else {
        (gamma * k.sup, gamma * k.inf)
    };
    if !inf.is_finite() || !sup.is_finite() {
        return Err(Error::ArithmeticOverflow(format!("{gamma} * {k}")));
    }
    Ok(Interval { inf, sup })
}

/// Weight of the spread component in the `d_theta` metric; always finite and `> 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Theta(f64);

impl Theta {
    pub const ONE: Theta = Theta(1.0);

    pub fn new(theta: f64) -> Result<Self> {
        if theta.is_finite() && theta > 0.0 {
            Ok(Theta(theta))
        } else {
            Err(Error::param(format!("theta must be finite and > 0, got {theta}")))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl Default for Theta {
    fn default() -> Self {
        Theta::ONE
    }
}

impl TryFrom<f64> for Theta {
    type Error = Error;

    fn try_from(theta: f64) -> Result<Self> {
        Theta::new(theta)
    }
}

impl From<Theta> for f64 {
    fn from(theta: Theta) -> f64 {
        theta.0
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The `d_theta` distance between two intervals.
pub fn d_theta(a: &Interval, b: &Interval, theta: Theta) -> f64 {
    let dm = a.mid() - b.mid();
    let ds = a.spr() - b.spr();
    (dm * dm + theta.0 * ds * ds).sqrt()
}

/// Image of an interval in the `(mid, sqrt(theta) * spr)` half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanePoint {
    pub u: f64,
    pub v: f64,
}

impl PlanePoint {
    pub fn distance(&self, other: &PlanePoint) -> f64 {
        (self.u - other.u).hypot(self.v - other.v)
    }
}

pub fn to_plane(k: &Interval, theta: Theta) -> PlanePoint {
    PlanePoint {
        u: k.mid(),
        v: theta.0.sqrt() * k.spr(),
    }
}

/// Inverse of [`to_plane`]. Negative `v` below `-1e-12 * scale` is rejected;
/// smaller negative round-off is clamped to a zero spread.
pub fn from_plane(p: PlanePoint, theta: Theta, scale: f64) -> Result<Interval> {
    let v = if p.v < 0.0 {
        if p.v < -1e-12 * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::NumericFailure {
                iteration: 0,
                detail: format!("spread coordinate {} is below the half-plane", p.v),
            });
        }
        0.0
    } else {
        p.v
    };
    Interval::from_mid_spr(p.u, v / theta.0.sqrt())
}

/// Solver configuration: metric weight plus stopping rule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaConfig {
    pub theta: Theta,
    /// Relative step threshold: stop once `|step| <= tol * (1 + |iterate|)`.
    pub tol: f64,
    pub max_iter: usize,
}

impl ThetaConfig {
    pub const DEFAULT_TOL: f64 = 1e-10;
    pub const DEFAULT_MAX_ITER: usize = 1000;

    pub fn new(theta: f64, tol: f64, max_iter: usize) -> Result<Self> {
        let theta = Theta::new(theta)?;
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::param(format!("tol must be finite and > 0, got {tol}")));
        }
        if max_iter == 0 {
            return Err(Error::param("max_iter must be >= 1"));
        }
        Ok(ThetaConfig { theta, tol, max_iter })
    }

    pub fn with_theta(theta: f64) -> Result<Self> {
        ThetaConfig::new(theta, Self::DEFAULT_TOL, Self::DEFAULT_MAX_ITER)
    }
}

impl Default for ThetaConfig {
    fn default() -> Self {
        ThetaConfig {
            theta: Theta::ONE,
            tol: Self::DEFAULT_TOL,
            max_iter: Self::DEFAULT_MAX_ITER,
        }
    }
}

/// A nonempty ordered collection of intervals.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample {
    items: Vec<Interval>,
}

impl Sample {
    pub fn new(items: Vec<Interval>) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::input("a sample needs at least one interval"));
        }
        Ok(Sample { items })
    }

    /// Convenience constructor from `(inf, sup)` pairs.
    pub fn from_endpoints(pairs: &[(f64, f64)]) -> Result<Self> {
        let items = pairs
            .iter()
            .map(|&(lo, hi)| Interval::new(lo, hi))
            .collect::<Result<Vec<_>>>()?;
        Sample::new(items)
    }

    /// Convenience constructor from `(mid, spr)` pairs.
    pub fn from_mid_spr(pairs: &[(f64, f64)]) -> Result<Self> {
        let items = pairs
            .iter()
            .map(|&(m, s)| Interval::from_mid_spr(m, s))
            .collect::<Result<Vec<_>>>()?;
        Sample::new(items)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn items(&self) -> &[Interval] {
        &self.items
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Interval> {
        self.items.iter()
    }

    pub fn into_inner(self) -> Vec<Interval> {
        self.items
    }

    /// Applies `f` to every interval, failing on the first error.
    pub fn try_map<F>(&self, f: F) -> Result<Sample>
    where
        F: FnMut(&Interval) -> Result<Interval>,
    {
        Sample::new(self.items.iter().map(f).collect::<Result<Vec<_>>>()?)
    }

    pub fn to_plane(&self, theta: Theta) -> Vec<PlanePoint> {
        self.items.iter().map(|k| to_plane(k, theta)).collect()
    }
}

impl<'a> IntoIterator for &'a Sample {
    type Item = &'a Interval;
    type IntoIter = std::slice::Iter<'a, Interval>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}
