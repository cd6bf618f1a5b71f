use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{lp_norm, ComplexMatrix, Exponent};

/// `diag(u₁, …, u_n)` with `u₁ ≥ … ≥ u_n ≥ 0`.
///
/// JSON: `{"u":[…]}`; decoding goes through [`DiagonalMap::new`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DiagonalJson", into = "DiagonalJson")]
pub struct DiagonalMap {
    u: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct DiagonalJson {
    u: Vec<f64>,
}

impl TryFrom<DiagonalJson> for DiagonalMap {
    type Error = Error;

    fn try_from(j: DiagonalJson) -> Result<Self> {
        DiagonalMap::new(j.u)
    }
}

impl From<DiagonalMap> for DiagonalJson {
    fn from(d: DiagonalMap) -> Self {
        DiagonalJson { u: d.u }
    }
}

fn check_entries(u: &[f64]) -> Result<()> {
    if u.is_empty() {
        return Err(Error::Parameter("diagonal map needs at least one entry".into()));
    }
    if let Some(bad) = u.iter().find(|x| !x.is_finite() || **x < 0.0) {
        return Err(Error::Parameter(format!("diagonal entries must be finite and nonnegative, got {bad}")));
    }
    Ok(())
}

impl DiagonalMap {
    /// Strict constructor: rejects negative or increasing input.
    pub fn new(u: Vec<f64>) -> Result<Self> {
        check_entries(&u)?;
        if let Some(k) = u.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::Parameter(format!(
                "diagonal entries must be nonincreasing: u[{k}] = {} < u[{}] = {}",
                u[k],
                k + 1,
                u[k + 1]
            )));
        }
        Ok(Self { u })
    }

    /// Sorts the entries into nonincreasing order; still rejects negatives.
    pub fn sorted(mut u: Vec<f64>) -> Result<Self> {
        check_entries(&u)?;
        u.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { u })
    }

    /// `n` ones.
    pub fn ones(n: usize) -> Result<Self> {
        Self::new(vec![1.0; n])
    }

    pub fn entries(&self) -> &[f64] {
        &self.u
    }

    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    /// `(Σ u_k²)^½`.
    pub fn l2(&self) -> f64 {
        lp_norm(&self.u, Exponent::TWO)
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::diag(&self.u)
    }
}

/// `a_k = (Σ_{i ≥ k} u_i^r)^{1/r}`, k = 1..n: the cb approximation numbers of
/// `diag(u)` in the Schatten model.
pub fn diag_approx_numbers(u: &DiagonalMap, r: Exponent) -> Vec<f64> {
    let e = u.entries();
    (0..e.len()).map(|k| lp_norm(&e[k..], r)).collect()
}
