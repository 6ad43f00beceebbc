//! Robust location estimation for interval-valued data.
//!
//! Intervals are compared with the `d_theta` metric, which combines the
//! distance between mid-points with a `theta`-weighted distance between
//! spreads. On top of it the crate provides
//!
//! - the Aumann-type mean ([`estimators::aumann_mean`]),
//! - the `d_theta`-median ([`estimators::dtheta_median`]), a spatial median in
//!   the `(mid, sqrt(theta) * spr)` half-plane solved by a modified Weiszfeld
//!   iteration, with a uniqueness (non-collinearity) diagnostic,
//! - the exact finite sample breakdown point ([`estimators::fsbp`]),
//! - seeded Monte Carlo harnesses for consistency and breakdown
//!   ([`simulation`]),
//! - the command-line front end behind the `interval-robust` binary ([`cli`]).
//!
//! ```
//! use interval_robust::{dtheta_median, Sample, ThetaConfig};
//!
//! let sample = Sample::from_endpoints(&[(0.0, 2.0), (1.0, 3.0), (0.5, 1.5), (40.0, 90.0)]).unwrap();
//! let report = dtheta_median(&sample, &ThetaConfig::default()).unwrap();
//! assert!(report.estimate.sup() < 5.0);
//! ```

pub mod cli;
pub mod error;
pub mod estimators;
pub mod interval;
pub mod simulation;

pub use error::{Error, Result};
pub use estimators::{
    aumann_mean, brute_force_median, collinearity_check, dtheta_median, fsbp, objective, squared_objective,
    EstimateReport, GridBounds,
};
pub use interval::{add, d_theta, scale, to_plane, Interval, PlanePoint, Sample, Theta, ThetaConfig};
