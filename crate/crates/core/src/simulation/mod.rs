//! Seeded Monte Carlo harnesses.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`). Every `(n, replication)`
//! cell of an experiment owns its own ChaCha stream: the key is expanded from
//! the experiment seed and the stream id is a SplitMix64 hash of `(n,
//! replication)`. Cells therefore never share state, and running them on any
//! number of threads gives the same numbers as running them in order.

mod distribution;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::{aumann_mean, dtheta_median};
use crate::interval::{d_theta, Interval, Sample, Theta, ThetaConfig};

pub use distribution::{sample_intervals, Contamination, IntervalDistribution, MidLaw, SprLaw};

/// Size of the plug-in sample used when no symmetry argument pins the truth.
pub const LARGE_SAMPLE_N: usize = 1_000_000;

/// Seed of the plug-in truth stream; fixed so every experiment on a model
/// shares one truth.
pub const TRUTH_SEED: u64 = 0x7472_7574_685f_6d65;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Independent generator for one `(n, replication)` cell.
pub fn substream(seed: u64, n: u64, replication: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(splitmix64(splitmix64(n) ^ replication));
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TruthProvenance {
    /// Center of symmetry of the transformed law.
    Symmetry,
    /// Sample median of one draw of size `n`.
    LargeSample { n: usize },
}

impl std::fmt::Display for TruthProvenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TruthProvenance::Symmetry => write!(f, "symmetry"),
            TruthProvenance::LargeSample { n } => write!(f, "large_sample({n})"),
        }
    }
}

/// Sample `d_theta`-median of `n` draws on the given seed's truth stream.
pub fn large_sample_median(
    dist: &IntervalDistribution,
    theta: Theta,
    n: usize,
    seed: u64,
) -> Result<Interval> {
    let mut rng = substream(seed, 0, 0);
    let sample = sample_intervals(dist, n, &mut rng)?;
    let cfg = ThetaConfig {
        theta,
        ..ThetaConfig::default()
    };
    Ok(dtheta_median(&sample, &cfg)?.estimate)
}

/// Population `d_theta`-median of a clean model.
///
/// With independent components both symmetric, the image law in the
/// `(mid, sqrt(theta) spr)` plane is centrally symmetric, so its spatial median
/// is the center. Otherwise the truth is the median of [`LARGE_SAMPLE_N`] draws.
pub fn population_median_truth(
    dist: &IntervalDistribution,
    theta: Theta,
) -> Result<(Interval, TruthProvenance)> {
    dist.validate()?;
    if dist.is_contaminated() {
        return Err(Error::input(
            "population median truth is only defined for an uncontaminated model",
        ));
    }
    match dist.spr_law.center() {
        Some(spr_center) => Ok((
            Interval::from_mid_spr(dist.mid_law.center(), spr_center)?,
            TruthProvenance::Symmetry,
        )),
        None => Ok((
            large_sample_median(dist, theta, LARGE_SAMPLE_N, TRUTH_SEED)?,
            TruthProvenance::LargeSample { n: LARGE_SAMPLE_N },
        )),
    }
}

/// Declarative consistency experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub distribution: IntervalDistribution,
    pub theta: Theta,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
    pub sample_sizes: Vec<usize>,
    pub replications: usize,
    pub seed: u64,
}

fn default_tol() -> f64 {
    ThetaConfig::DEFAULT_TOL
}

fn default_max_iter() -> usize {
    ThetaConfig::DEFAULT_MAX_ITER
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        self.distribution.validate()?;
        self.solver()?;
        if self.sample_sizes.is_empty() {
            return Err(Error::param("sample_sizes must not be empty"));
        }
        if self.sample_sizes[0] == 0 {
            return Err(Error::param("sample sizes must be positive"));
        }
        if self.sample_sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::param("sample_sizes must be strictly ascending"));
        }
        if self.replications == 0 {
            return Err(Error::param("replications must be >= 1"));
        }
        Ok(())
    }

    pub fn solver(&self) -> Result<ThetaConfig> {
        ThetaConfig::new(self.theta.get(), self.tol, self.max_iter)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorRow {
    pub n: usize,
    pub replication: usize,
    /// `d_theta(estimate, truth)`.
    pub error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorSummary {
    pub n: usize,
    pub mean: f64,
    pub median: f64,
    pub q90: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub spec: ExperimentSpec,
    pub truth: Interval,
    pub truth_provenance: TruthProvenance,
    /// Ordered by `(n, replication)`.
    pub rows: Vec<ErrorRow>,
    /// One entry per sample size, in the spec's order.
    pub summaries: Vec<ErrorSummary>,
}

/// Linear-interpolation quantile of sorted data (Hyndman-Fan type 7).
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of empty data");
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Mean, median and 90% quantile of the errors for one sample size.
pub fn summarize(n: usize, errors: &[f64]) -> ErrorSummary {
    let mut sorted = errors.to_vec();
    sorted.sort_by(f64::total_cmp);
    ErrorSummary {
        n,
        mean: errors.iter().sum::<f64>() / errors.len() as f64,
        median: quantile_sorted(&sorted, 0.5),
        q90: quantile_sorted(&sorted, 0.9),
    }
}

/// Draws `replications` samples per size, estimates the median of each and
/// records its `d_theta` error against the population truth.
///
/// Replications run on the ambient rayon pool; results do not depend on its size.
pub fn consistency_experiment(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    spec.validate()?;
    let cfg = spec.solver()?;
    let (truth, truth_provenance) = population_median_truth(&spec.distribution, spec.theta)?;

    let cells: Vec<(usize, usize)> = spec
        .sample_sizes
        .iter()
        .flat_map(|&n| (0..spec.replications).map(move |r| (n, r)))
        .collect();
    let rows = cells
        .par_iter()
        .map(|&(n, replication)| {
            let mut rng = substream(spec.seed, n as u64, replication as u64);
            let sample = sample_intervals(&spec.distribution, n, &mut rng)?;
            let report = dtheta_median(&sample, &cfg).map_err(|e| with_cell(e, n, replication))?;
            Ok(ErrorRow {
                n,
                replication,
                error: d_theta(&report.estimate, &truth, spec.theta),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let summaries = rows
        .chunks(spec.replications)
        .map(|chunk| {
            let errors: Vec<f64> = chunk.iter().map(|r| r.error).collect();
            summarize(chunk[0].n, &errors)
        })
        .collect();

    Ok(ExperimentResult {
        spec: spec.clone(),
        truth,
        truth_provenance,
        rows,
        summaries,
    })
}

fn with_cell(e: Error, n: usize, replication: usize) -> Error {
    match e {
        Error::NumericFailure { iteration, detail } => Error::NumericFailure {
            iteration,
            detail: format!("n={n}, replication={replication}: {detail}"),
        },
        other => other,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BreakdownRow {
    pub k: usize,
    pub magnitude: f64,
    /// `d_theta` between the contaminated and the clean median.
    pub median_drift: f64,
    /// `d_theta` between the contaminated and the clean mean.
    pub mean_drift: f64,
}

/// Replaces the last `replaced` observations with `[M, M]` for every
/// magnitude `M` and reports how far the median and the mean move.
pub fn breakdown_experiment(
    base: &Sample,
    cfg: &ThetaConfig,
    magnitudes: &[f64],
    replaced: usize,
) -> Result<Vec<BreakdownRow>> {
    let n = base.len();
    if replaced > n {
        return Err(Error::input(format!(
            "cannot replace {replaced} of {n} observations"
        )));
    }
    if magnitudes.iter().any(|m| !(m.is_finite() && *m > 0.0)) {
        return Err(Error::param("magnitudes must be finite and > 0"));
    }
    if magnitudes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::param("magnitudes must be strictly ascending"));
    }

    let clean_median = dtheta_median(base, cfg)?.estimate;
    let clean_mean = aumann_mean(base);
    magnitudes
        .iter()
        .map(|&magnitude| {
            let outlier = Interval::point(magnitude)?;
            let mut items = base.items().to_vec();
            items[n - replaced..].fill(outlier);
            let contaminated = Sample::new(items)?;
            let median = dtheta_median(&contaminated, cfg)?.estimate;
            let mean = aumann_mean(&contaminated);
            Ok(BreakdownRow {
                k: replaced,
                magnitude,
                median_drift: d_theta(&median, &clean_median, cfg.theta),
                mean_drift: d_theta(&mean, &clean_mean, cfg.theta),
            })
        })
        .collect()
}
