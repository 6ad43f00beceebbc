//! Experiment spec files: a flat TOML key-value document.
//!
//! ```toml
//! mid_law = "normal(0, 1)"
//! spr_law = "uniform(1, 3)"
//! theta = 1.0
//! sample_sizes = [100, 1000, 10000]
//! replications = 200
//! seed = 1
//! # optional
//! contamination.fraction = 0.1
//! contamination.mid_shift = 50.0
//! contamination.spr_shift = 0.0
//! tol = 1e-10
//! max_iter = 1000
//! ```

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::interval::{Theta, ThetaConfig};
use crate::simulation::{Contamination, ExperimentSpec, IntervalDistribution, MidLaw, SprLaw};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecDocument {
    mid_law: String,
    spr_law: String,
    contamination: Option<ContaminationDocument>,
    theta: Option<f64>,
    tol: Option<f64>,
    max_iter: Option<usize>,
    sample_sizes: Vec<usize>,
    replications: usize,
    seed: u64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ContaminationDocument {
    fraction: f64,
    #[serde(default)]
    mid_shift: f64,
    #[serde(default)]
    spr_shift: f64,
}

pub fn parse_spec(text: &str) -> Result<ExperimentSpec> {
    let doc: SpecDocument =
        toml::from_str(text).map_err(|e| Error::param(format!("spec file: {}", e.message())))?;
    let mid_law: MidLaw = doc.mid_law.parse()?;
    let spr_law: SprLaw = doc.spr_law.parse()?;
    let mut distribution = IntervalDistribution::new(mid_law, spr_law)?;
    if let Some(c) = doc.contamination {
        distribution = distribution.with_contamination(Contamination {
            fraction: c.fraction,
            mid_shift: c.mid_shift,
            spr_shift: c.spr_shift,
        })?;
    }
    let spec = ExperimentSpec {
        distribution,
        theta: Theta::new(doc.theta.unwrap_or(1.0))?,
        tol: doc.tol.unwrap_or(ThetaConfig::DEFAULT_TOL),
        max_iter: doc.max_iter.unwrap_or(ThetaConfig::DEFAULT_MAX_ITER),
        sample_sizes: doc.sample_sizes,
        replications: doc.replications,
        seed: doc.seed,
    };
    spec.validate()?;
    Ok(spec)
}
