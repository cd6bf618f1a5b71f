use serde::{Deserialize, Serialize};

use super::estimate::{gaussian_grid_average, MonteCarloEstimate};
use super::norm::{BanachNorm, SchattenNorm};
use crate::error::{Error, Result};
use crate::linalg::{Exponent, SeedSpec};
use crate::opspace::{fubini_norm, VVElement};

/// Where a number came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Exact,
    #[serde(rename = "mc")]
    MonteCarlo,
}

/// A lower-bound quotient for a type or cotype constant.
///
/// JSON: `{"n", "num", "den", "ratio", "num_kind", "den_kind", "stderr"}`,
/// where `stderr` is the propagated Monte Carlo error of `ratio`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessRatio {
    pub n: usize,
    pub num: f64,
    pub den: f64,
    pub ratio: f64,
    pub num_kind: Provenance,
    pub den_kind: Provenance,
    pub stderr: f64,
}

fn kind(e: &MonteCarloEstimate) -> Provenance {
    if e.is_exact() {
        Provenance::Exact
    } else {
        Provenance::MonteCarlo
    }
}

impl WitnessRatio {
    pub fn exact(n: usize, num: f64, den: f64) -> Result<Self> {
        if !(den > 0.0) {
            return Err(Error::Degenerate("witness denominator must be positive".into()));
        }
        Ok(Self {
            n,
            num,
            den,
            ratio: num / den,
            num_kind: Provenance::Exact,
            den_kind: Provenance::Exact,
            stderr: 0.0,
        })
    }
}

/// `(E‖Σ g_ij x_ij‖²)^½ / ‖(x_ij)‖_{S_p^n(E)}`, a lower bound for `T_{S_p,n}(E)`.
/// `vv_norm` is the exact vector-valued norm, computed upstream.
pub fn type_lower_bound(
    x: &VVElement,
    norm: &dyn BanachNorm,
    vv_norm: f64,
    samples: usize,
    seed: &SeedSpec,
) -> Result<WitnessRatio> {
    if !(vv_norm > 0.0) {
        return Err(Error::Degenerate("vector-valued norm of the witness is zero".into()));
    }
    let avg = gaussian_grid_average(x, norm, samples, seed)?;
    Ok(WitnessRatio {
        n: x.n(),
        num: avg.mean,
        den: vv_norm,
        ratio: avg.mean / vv_norm,
        num_kind: kind(&avg),
        den_kind: Provenance::Exact,
        stderr: avg.stderr / vv_norm,
    })
}

/// `‖(x_ij)‖_{S_q^n(E)} / (E‖Σ g_ij x_ij‖²)^½`, a lower bound for `C_{S_q,n}(E)`.
pub fn cotype_lower_bound(
    x: &VVElement,
    norm: &dyn BanachNorm,
    vv_norm: f64,
    samples: usize,
    seed: &SeedSpec,
) -> Result<WitnessRatio> {
    let avg = gaussian_grid_average(x, norm, samples, seed)?;
    if !(avg.mean > 0.0) {
        return Err(Error::Degenerate("gaussian average of the witness is zero".into()));
    }
    let ratio = vv_norm / avg.mean;
    Ok(WitnessRatio {
        n: x.n(),
        num: vv_norm,
        den: avg.mean,
        ratio,
        num_kind: Provenance::Exact,
        den_kind: kind(&avg),
        stderr: ratio * avg.stderr / avg.mean,
    })
}

/// Type witness with `E = S_p^m` and the exact Fubini denominator.
pub fn schatten_type_witness(x: &VVElement, p: Exponent, samples: usize, seed: &SeedSpec) -> Result<WitnessRatio> {
    let norm = SchattenNorm::square(x.block_dim(), p);
    type_lower_bound(x, &norm, fubini_norm(x, p)?, samples, seed)
}

/// Cotype witness with `E = S_q^m` and the exact Fubini numerator.
pub fn schatten_cotype_witness(x: &VVElement, q: Exponent, samples: usize, seed: &SeedSpec) -> Result<WitnessRatio> {
    let norm = SchattenNorm::square(x.block_dim(), q);
    cotype_lower_bound(x, &norm, fubini_norm(x, q)?, samples, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_witnesses() {
        let seed = SeedSpec::default();
        let t = schatten_type_witness(&VVElement::matrix_units(5), Exponent::TWO, 0, &seed).unwrap();
        assert!((t.ratio - 1.0).abs() < 1e-14);
        assert_eq!(t.num_kind, Provenance::Exact);
        let c = schatten_cotype_witness(&VVElement::matrix_units(5), Exponent::TWO, 0, &seed).unwrap();
        assert!((c.ratio - 1.0).abs() < 1e-14);
        let one = schatten_type_witness(&VVElement::matrix_units(1), Exponent::INF, 200, &seed).unwrap();
        assert!((one.ratio - 1.0).abs() < 3.0 * one.stderr + 0.05);
    }

    #[test]
    fn cotype_ratio_follows_schatten_order() {
        // Same denominator; ‖·‖_{S_∞} ≤ ‖·‖_{S_4}, with equality on matrix units.
        let norm = SchattenNorm::square(4, Exponent::INF);
        let seed = SeedSpec::new(1, 1);
        let q4 = Exponent::new(4.0).unwrap();
        for (x, strict) in [(VVElement::matrix_units(4), false), (VVElement::diagonal_units(4), true)] {
            let a = cotype_lower_bound(&x, &norm, fubini_norm(&x, Exponent::INF).unwrap(), 50, &seed).unwrap();
            let b = cotype_lower_bound(&x, &norm, fubini_norm(&x, q4).unwrap(), 50, &seed).unwrap();
            assert_eq!(a.den, b.den);
            if strict {
                assert!(a.ratio < b.ratio);
            } else {
                assert!((a.ratio - b.ratio).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn json_shape() {
        let w = WitnessRatio::exact(3, 2.0, 4.0).unwrap();
        let v = serde_json::to_value(w).unwrap();
        assert_eq!(v["num_kind"], "exact");
        assert_eq!(v["ratio"], 0.5);
        assert!(WitnessRatio::exact(3, 1.0, 0.0).is_err());
        let mc = serde_json::to_value(Provenance::MonteCarlo).unwrap();
        assert_eq!(mc, "mc");
    }
}
