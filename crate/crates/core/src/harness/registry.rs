use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Exponent, ExtReal};
use crate::opspace::sq_rp_exponent;

const BUNDLED: &str = include_str!("../../data/claims.json");

/// Status string of claims that are documented but not computed.
pub const RECORDED_ONLY: &str = "recorded, not machine-checked";

/// Descriptive citation plus a short verbatim quote.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PaperRef {
    pub citation: String,
    pub quote: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    In,
    Out,
}

/// How a computed profile is judged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// `|slope − expected| ≤ tol + 2·stderr`.
    Slope,
    /// `slope ≤ expected + tol + 2·stderr`.
    SlopeAtMost,
    /// Every value is at most `bound` (relative slack `tol`).
    Bound,
}

/// Default ladder for a computable claim.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimDefaults {
    pub dims: Vec<usize>,
    pub samples: usize,
    pub tolerance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimRecord {
    pub id: String,
    pub paper_ref: PaperRef,
    pub scope: Scope,
    pub status: String,
    pub computable: bool,
    pub witness_spec: String,
    pub expected_exponent: f64,
    pub params: BTreeMap<String, ExtReal>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check: Option<CheckKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub defaults: Option<ClaimDefaults>,
}

fn exponent_param(params: &BTreeMap<String, ExtReal>, name: &str) -> Result<Exponent> {
    let v = params.get(name).ok_or_else(|| Error::Parameter(format!("missing parameter `{name}`")))?;
    Exponent::new(v.0)
}

impl ClaimRecord {
    /// Defaults overlaid with `overrides`.
    pub fn merged_params(&self, overrides: &BTreeMap<String, ExtReal>) -> Result<BTreeMap<String, ExtReal>> {
        let mut out = self.params.clone();
        for (k, v) in overrides {
            if !self.params.contains_key(k) {
                return Err(Error::Parameter(format!("claim `{}` takes no parameter `{k}`", self.id)));
            }
            out.insert(k.clone(), *v);
        }
        Ok(out)
    }

    pub fn param(&self, params: &BTreeMap<String, ExtReal>, name: &str) -> Result<Exponent> {
        exponent_param(params, name)
    }

    /// The exponent predicted for the given parameters. Claims without a
    /// parameter dependence return the stored value.
    pub fn expected_for(&self, params: &BTreeMap<String, ExtReal>) -> Result<f64> {
        let p = |name| exponent_param(params, name);
        Ok(match self.id.as_str() {
            "type_sp_lower" => {
                let p = p("p")?;
                if p.reciprocal() < 0.5 {
                    return Err(Error::Parameter(format!("type exponent must lie in [1, 2], got {p}")));
                }
                p.reciprocal() - 0.5
            }
            "cotype_sq_lower" | "cotype_inf_witness" => {
                let q = p("q")?;
                if q.reciprocal() > 0.5 {
                    return Err(Error::Parameter(format!("cotype exponent must lie in [2, inf], got {q}")));
                }
                0.5 - q.reciprocal()
            }
            "sr_subspace_sharpness" | "littlegt_gap" => sq_rp_exponent(p("p")?, p("q")?)?.reciprocal() - 0.5,
            "cb_rc_interp" => {
                let p = p("p")?;
                if p.reciprocal() < 0.5 {
                    return Err(Error::Parameter(format!("interpolation exponent must lie in [1, 2], got {p}")));
                }
                p.reciprocal() - 0.5
            }
            "formal_identity_approx" | "cotype_2h_truncation" => p("r")?.reciprocal(),
            "cotype_sharpness" => p("r")?.reciprocal() + p("s")?.reciprocal() - 0.5,
            "cb_vs_pi_gap" => 0.25 - 0.5 * p("q")?.reciprocal(),
            _ => self.expected_exponent,
        })
    }

    pub fn is_recorded_only(&self) -> bool {
        !self.computable
    }
}

/// The bundled claims registry.
#[derive(Clone, Debug)]
pub struct Registry {
    claims: Vec<ClaimRecord>,
}

impl Registry {
    /// Parses and validates a registry document.
    pub fn from_json(text: &str) -> Result<Self> {
        let claims: Vec<ClaimRecord> = serde_json::from_str(text)?;
        let mut seen = std::collections::BTreeSet::new();
        for c in &claims {
            if !seen.insert(c.id.as_str()) {
                return Err(Error::Data(format!("duplicate claim id `{}`", c.id)));
            }
            if c.paper_ref.quote.trim().is_empty() || c.paper_ref.citation.trim().is_empty() {
                return Err(Error::Data(format!("claim `{}` has an empty citation or quote", c.id)));
            }
            if c.computable {
                if c.witness_spec == "none" {
                    return Err(Error::Data(format!("computable claim `{}` has no witness", c.id)));
                }
                if c.check.is_none() || c.defaults.is_none() {
                    return Err(Error::Data(format!("computable claim `{}` lacks a check or defaults", c.id)));
                }
                if c.check == Some(CheckKind::Bound) && c.bound.is_none() {
                    return Err(Error::Data(format!("bound claim `{}` has no bound", c.id)));
                }
            } else if c.status != RECORDED_ONLY {
                return Err(Error::Data(format!("claim `{}` is not computable but has status `{}`", c.id, c.status)));
            }
        }
        Ok(Self { claims })
    }

    /// The registry compiled into the crate.
    pub fn bundled() -> &'static Registry {
        static REG: OnceLock<Registry> = OnceLock::new();
        REG.get_or_init(|| Registry::from_json(BUNDLED).expect("bundled claims file is valid"))
    }

    pub fn claims(&self) -> &[ClaimRecord] {
        &self.claims
    }

    pub fn get(&self, id: &str) -> Result<&ClaimRecord> {
        self.claims.iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownClaim(id.to_string()))
    }
}

/// Dump of the bundled registry, in file order.
pub fn list_claims() -> &'static [ClaimRecord] {
    Registry::bundled().claims()
}
