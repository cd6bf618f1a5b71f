use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::registry::{ClaimRecord, Registry};
use crate::error::{Error, Result};
use crate::linalg::{ExtReal, SeedSpec};

/// Above this dimension Monte Carlo sample counts are capped at
/// [`TAPERED_SAMPLES`].
pub const TAPER_ABOVE: usize = 64;
pub const TAPERED_SAMPLES: usize = 50;

/// One claim run. JSON fields other than `claim_id` fall back to the claim's
/// defaults when omitted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub claim_id: String,
    pub dims: Vec<usize>,
    pub samples: usize,
    pub seed: SeedSpec,
    pub tolerance: f64,
    #[serde(default)]
    pub params: BTreeMap<String, ExtReal>,
}

/// Partial config as read from a sweep file.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigOverrides {
    pub claim_id: String,
    #[serde(default)]
    pub dims: Option<Vec<usize>>,
    #[serde(default)]
    pub samples: Option<usize>,
    #[serde(default)]
    pub seed: Option<SeedSpec>,
    #[serde(default)]
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub params: BTreeMap<String, ExtReal>,
}

impl ExperimentConfig {
    /// The registry defaults for `claim_id`.
    pub fn for_claim(claim_id: &str) -> Result<Self> {
        let rec = Registry::bundled().get(claim_id)?;
        let d = rec.defaults.as_ref().ok_or_else(|| Error::RecordedOnly(claim_id.to_string()))?;
        Ok(Self {
            claim_id: claim_id.to_string(),
            dims: d.dims.clone(),
            samples: d.samples,
            seed: SeedSpec::default(),
            tolerance: d.tolerance,
            params: BTreeMap::new(),
        })
    }

    /// Applies a sweep entry on top of the defaults. Recorded-only claims
    /// pass through unvalidated; [`run_claim`](super::run_claim) reports
    /// their status.
    pub fn from_overrides(o: ConfigOverrides) -> Result<Self> {
        if Registry::bundled().get(&o.claim_id)?.is_recorded_only() {
            return Ok(Self {
                claim_id: o.claim_id,
                dims: o.dims.unwrap_or_default(),
                samples: o.samples.unwrap_or(0),
                seed: o.seed.unwrap_or_default(),
                tolerance: o.tolerance.unwrap_or(0.0),
                params: o.params,
            });
        }
        let mut cfg = Self::for_claim(&o.claim_id)?;
        if let Some(d) = o.dims {
            cfg.dims = d;
        }
        if let Some(s) = o.samples {
            cfg.samples = s;
        }
        if let Some(s) = o.seed {
            cfg.seed = s;
        }
        if let Some(t) = o.tolerance {
            cfg.tolerance = t;
        }
        cfg.params = o.params;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_param(mut self, name: &str, value: f64) -> Self {
        self.params.insert(name.to_string(), ExtReal(value));
        self
    }

    pub fn with_dims(mut self, dims: Vec<usize>) -> Self {
        self.dims = dims;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_seed(mut self, seed: SeedSpec) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.dims.len() < 3 {
            return Err(Error::Parameter(format!("need at least 3 dimensions, got {}", self.dims.len())));
        }
        if self.dims[0] == 0 || self.dims.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parameter(format!("dims must be positive and strictly increasing: {:?}", self.dims)));
        }
        if !(self.tolerance >= 0.0 && self.tolerance.is_finite()) {
            return Err(Error::Parameter(format!("tolerance must be finite and nonnegative, got {}", self.tolerance)));
        }
        Ok(())
    }

    /// Monte Carlo samples used at dimension `n`.
    pub fn samples_at(&self, n: usize) -> usize {
        if n > TAPER_ABOVE {
            self.samples.min(TAPERED_SAMPLES)
        } else {
            self.samples
        }
    }

    pub fn record(&self) -> Result<&'static ClaimRecord> {
        Registry::bundled().get(&self.claim_id)
    }
}

/// A sweep file: a single config or a list of them.
pub fn parse_sweep(text: &str) -> Result<Vec<ExperimentConfig>> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Doc {
        Many(Vec<ConfigOverrides>),
        One(ConfigOverrides),
    }
    let doc: Doc = serde_json::from_str(text)?;
    let list = match doc {
        Doc::Many(v) => v,
        Doc::One(o) => vec![o],
    };
    list.into_iter().map(ExperimentConfig::from_overrides).collect()
}
