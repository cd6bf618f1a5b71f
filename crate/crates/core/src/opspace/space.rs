use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Exponent;

/// Operator-space structure on ℓ₂^n.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Family {
    Row,
    Col,
    Oh,
    RCapC,
    RPlusC,
    /// R\[p\] = \[R, C\]_{1/p}: R\[∞\] = R, R\[2\] = OH, R\[1\] = C.
    RBracket(Exponent),
    /// C\[p\] = \[C, R\]_{1/p}: C\[∞\] = C, C\[2\] = OH, C\[1\] = R.
    CBracket(Exponent),
    MinL2,
}

impl Family {
    fn tag(&self) -> &'static str {
        match self {
            Family::Row => "row",
            Family::Col => "col",
            Family::Oh => "oh",
            Family::RCapC => "rcapc",
            Family::RPlusC => "rplusc",
            Family::RBracket(_) => "rp",
            Family::CBracket(_) => "cp",
            Family::MinL2 => "minl2",
        }
    }

    /// Rewrites bracket families at their endpoints (and at p = 2) onto the
    /// closed-form family they coincide with.
    pub fn canonical(self) -> Family {
        match self {
            Family::RBracket(Exponent::Infinity) | Family::CBracket(Exponent::Finite(1.0)) => Family::Row,
            Family::CBracket(Exponent::Infinity) | Family::RBracket(Exponent::Finite(1.0)) => Family::Col,
            Family::RBracket(Exponent::Finite(p)) | Family::CBracket(Exponent::Finite(p)) if p == 2.0 => Family::Oh,
            other => other,
        }
    }

    pub fn is_bracket(&self) -> bool {
        matches!(self, Family::RBracket(_) | Family::CBracket(_))
    }
}

/// Finite-dimensional homogeneous Hilbertian operator space.
///
/// JSON: `{"family":"oh"|"row"|"col"|"rcapc"|"rplusc"|"minl2"|"rp"|"cp","dim":n,"p":…}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpaceJson", into = "SpaceJson")]
pub struct SpaceDescriptor {
    pub family: Family,
    pub dim: usize,
}

#[derive(Serialize, Deserialize)]
struct SpaceJson {
    family: String,
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<Exponent>,
}

impl TryFrom<SpaceJson> for SpaceDescriptor {
    type Error = Error;

    fn try_from(j: SpaceJson) -> Result<Self> {
        let need_p = || j.p.ok_or_else(|| Error::Parameter(format!("family `{}` needs p", j.family)));
        let family = match j.family.to_ascii_lowercase().as_str() {
            "row" | "r" => Family::Row,
            "col" | "c" => Family::Col,
            "oh" => Family::Oh,
            "rcapc" => Family::RCapC,
            "rplusc" => Family::RPlusC,
            "minl2" => Family::MinL2,
            "rp" => Family::RBracket(need_p()?),
            "cp" => Family::CBracket(need_p()?),
            other => return Err(Error::Parameter(format!("unknown space family `{other}`"))),
        };
        SpaceDescriptor::new(family, j.dim)
    }
}

impl From<SpaceDescriptor> for SpaceJson {
    fn from(s: SpaceDescriptor) -> Self {
        let p = match s.family {
            Family::RBracket(p) | Family::CBracket(p) => Some(p),
            _ => None,
        };
        SpaceJson { family: s.family.tag().to_string(), dim: s.dim, p }
    }
}

impl SpaceDescriptor {
    pub fn new(family: Family, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Parameter("space dimension must be at least 1".into()));
        }
        Ok(Self { family, dim })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_endpoints() {
        assert_eq!(Family::RBracket(Exponent::INF).canonical(), Family::Row);
        assert_eq!(Family::RBracket(Exponent::ONE).canonical(), Family::Col);
        assert_eq!(Family::CBracket(Exponent::TWO).canonical(), Family::Oh);
        assert_eq!(Family::RBracket(Exponent::TWO).canonical(), Family::Oh);
        let p = Exponent::new(3.0).unwrap();
        assert_eq!(Family::RBracket(p).canonical(), Family::RBracket(p));
    }

    #[test]
    fn json() {
        let s: SpaceDescriptor = serde_json::from_str(r#"{"family":"rp","dim":3,"p":"inf"}"#).unwrap();
        assert_eq!(s.family, Family::RBracket(Exponent::INF));
        let s: SpaceDescriptor = serde_json::from_str(r#"{"family":"oh","dim":4}"#).unwrap();
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"family":"oh","dim":4}"#);
        assert!(serde_json::from_str::<SpaceDescriptor>(r#"{"family":"cp","dim":3}"#).is_err());
        assert!(serde_json::from_str::<SpaceDescriptor>(r#"{"family":"oh","dim":0}"#).is_err());
        assert!(serde_json::from_str::<SpaceDescriptor>(r#"{"family":"xyz","dim":2}"#).is_err());
    }
}
