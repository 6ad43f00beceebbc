use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, LogNormal, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{Interval, Sample};

/// Law of the mid-point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum MidLaw {
    Normal { mean: f64, sd: f64 },
    Uniform { low: f64, high: f64 },
}

/// Law of the spread; every variant is supported on `[0, inf)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum SprLaw {
    Uniform { low: f64, high: f64 },
    HalfNormal { sigma: f64 },
    LogNormal { mu: f64, sigma: f64 },
}

/// With probability `fraction` a draw is shifted by `(mid_shift, spr_shift)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Contamination {
    pub fraction: f64,
    pub mid_shift: f64,
    pub spr_shift: f64,
}

/// Random interval with independent mid-point and spread.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntervalDistribution {
    pub mid_law: MidLaw,
    pub spr_law: SprLaw,
    pub contamination: Option<Contamination>,
}

fn finite(values: &[f64], what: &str) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::param(format!("{what} parameters must be finite")))
    }
}

impl MidLaw {
    pub fn validate(&self) -> Result<()> {
        match *self {
            MidLaw::Normal { mean, sd } => {
                finite(&[mean, sd], "normal")?;
                if sd <= 0.0 {
                    return Err(Error::param(format!("normal sd must be > 0, got {sd}")));
                }
            }
            MidLaw::Uniform { low, high } => {
                finite(&[low, high], "uniform")?;
                if low > high {
                    return Err(Error::param(format!("uniform({low}, {high}) has low > high")));
                }
            }
        }
        Ok(())
    }

    /// Center of symmetry; both laws are symmetric.
    pub fn center(&self) -> f64 {
        match *self {
            MidLaw::Normal { mean, .. } => mean,
            MidLaw::Uniform { low, high } => 0.5 * low + 0.5 * high,
        }
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            MidLaw::Normal { mean, sd } => Normal::new(mean, sd).expect("validated normal law").sample(rng),
            MidLaw::Uniform { low, high } => uniform(low, high, rng),
        }
    }
}

impl SprLaw {
    pub fn validate(&self) -> Result<()> {
        match *self {
            SprLaw::Uniform { low, high } => {
                finite(&[low, high], "uniform")?;
                if low < 0.0 || low > high {
                    return Err(Error::param(format!(
                        "spread uniform({low}, {high}) needs 0 <= low <= high"
                    )));
                }
            }
            SprLaw::HalfNormal { sigma } => {
                finite(&[sigma], "half_normal")?;
                if sigma <= 0.0 {
                    return Err(Error::param(format!(
                        "half_normal sigma must be > 0, got {sigma}"
                    )));
                }
            }
            SprLaw::LogNormal { mu, sigma } => {
                finite(&[mu, sigma], "lognormal")?;
                if sigma <= 0.0 {
                    return Err(Error::param(format!("lognormal sigma must be > 0, got {sigma}")));
                }
            }
        }
        Ok(())
    }

    /// Center of symmetry, if the law has one.
    pub fn center(&self) -> Option<f64> {
        match *self {
            SprLaw::Uniform { low, high } => Some(0.5 * low + 0.5 * high),
            SprLaw::HalfNormal { .. } | SprLaw::LogNormal { .. } => None,
        }
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            SprLaw::Uniform { low, high } => uniform(low, high, rng),
            SprLaw::HalfNormal { sigma } => Normal::new(0.0, sigma)
                .expect("validated half-normal law")
                .sample(rng)
                .abs(),
            SprLaw::LogNormal { mu, sigma } => LogNormal::new(mu, sigma)
                .expect("validated lognormal law")
                .sample(rng),
        }
    }
}

// low + (high - low) u keeps point masses exact and never leaves [low, high].
fn uniform<R: Rng + ?Sized>(low: f64, high: f64, rng: &mut R) -> f64 {
    let u: f64 = rng.random();
    (low + (high - low) * u).min(high)
}

impl Contamination {
    pub fn validate(&self) -> Result<()> {
        finite(&[self.fraction, self.mid_shift, self.spr_shift], "contamination")?;
        if !(0.0..1.0).contains(&self.fraction) {
            return Err(Error::param(format!(
                "contamination fraction must lie in [0, 1), got {}",
                self.fraction
            )));
        }
        if self.spr_shift < 0.0 {
            return Err(Error::param(format!(
                "contamination spr_shift must be >= 0, got {}",
                self.spr_shift
            )));
        }
        Ok(())
    }
}

impl IntervalDistribution {
    pub fn new(mid_law: MidLaw, spr_law: SprLaw) -> Result<Self> {
        let dist = IntervalDistribution {
            mid_law,
            spr_law,
            contamination: None,
        };
        dist.validate()?;
        Ok(dist)
    }

    pub fn with_contamination(mut self, contamination: Contamination) -> Result<Self> {
        self.contamination = Some(contamination);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        self.mid_law.validate()?;
        self.spr_law.validate()?;
        if let Some(c) = &self.contamination {
            c.validate()?;
        }
        Ok(())
    }

    /// `true` when draws can be contaminated.
    pub fn is_contaminated(&self) -> bool {
        self.contamination.is_some_and(|c| c.fraction > 0.0)
    }

    /// One interval. Consumes the contamination coin, then the mid, then the spread.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Interval> {
        let coin: f64 = rng.random();
        let mut mid = self.mid_law.draw(rng);
        let mut spr = self.spr_law.draw(rng);
        if let Some(c) = &self.contamination {
            if coin < c.fraction {
                mid += c.mid_shift;
                spr += c.spr_shift;
            }
        }
        // heavy lognormal tails can still overflow
        Interval::from_mid_spr(mid, spr)
    }
}

/// `n` independent draws from `dist`.
pub fn sample_intervals<R: Rng + ?Sized>(
    dist: &IntervalDistribution,
    n: usize,
    rng: &mut R,
) -> Result<Sample> {
    dist.validate()?;
    Sample::new((0..n).map(|_| dist.draw(rng)).collect::<Result<Vec<_>>>()?)
}

// Text form used by spec files: `normal(0, 1)`, `uniform(-1, 1)`,
// `half_normal(2)`, `lognormal(0, 0.5)`.

fn parse_call(text: &str) -> Result<(String, Vec<f64>)> {
    let text = text.trim();
    let open = text
        .find('(')
        .ok_or_else(|| Error::param(format!("expected `name(args)`, got `{text}`")))?;
    if !text.ends_with(')') {
        return Err(Error::param(format!("expected `name(args)`, got `{text}`")));
    }
    let name = text[..open].trim().to_ascii_lowercase();
    let args = text[open + 1..text.len() - 1]
        .split(',')
        .map(|a| {
            a.trim()
                .parse::<f64>()
                .map_err(|_| Error::param(format!("bad number `{}` in `{text}`", a.trim())))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((name, args))
}

fn arity(name: &str, args: &[f64], expected: usize) -> Result<()> {
    if args.len() == expected {
        Ok(())
    } else {
        Err(Error::param(format!(
            "{name} takes {expected} argument(s), got {}",
            args.len()
        )))
    }
}

impl FromStr for MidLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = parse_call(s)?;
        let law = match name.as_str() {
            "normal" => {
                arity(&name, &args, 2)?;
                MidLaw::Normal {
                    mean: args[0],
                    sd: args[1],
                }
            }
            "uniform" => {
                arity(&name, &args, 2)?;
                MidLaw::Uniform {
                    low: args[0],
                    high: args[1],
                }
            }
            other => return Err(Error::param(format!("unknown mid law `{other}`"))),
        };
        law.validate()?;
        Ok(law)
    }
}

impl FromStr for SprLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = parse_call(s)?;
        let law = match name.as_str() {
            "uniform" => {
                arity(&name, &args, 2)?;
                SprLaw::Uniform {
                    low: args[0],
                    high: args[1],
                }
            }
            "half_normal" => {
                arity(&name, &args, 1)?;
                SprLaw::HalfNormal { sigma: args[0] }
            }
            "lognormal" => {
                arity(&name, &args, 2)?;
                SprLaw::LogNormal {
                    mu: args[0],
                    sigma: args[1],
                }
            }
            other => return Err(Error::param(format!("unknown spread law `{other}`"))),
        };
        law.validate()?;
        Ok(law)
    }
}

impl fmt::Display for MidLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MidLaw::Normal { mean, sd } => write!(f, "normal({mean}, {sd})"),
            MidLaw::Uniform { low, high } => write!(f, "uniform({low}, {high})"),
        }
    }
}

impl fmt::Display for SprLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SprLaw::Uniform { low, high } => write!(f, "uniform({low}, {high})"),
            SprLaw::HalfNormal { sigma } => write!(f, "half_normal({sigma})"),
            SprLaw::LogNormal { mu, sigma } => write!(f, "lognormal({mu}, {sigma})"),
        }
    }
}
