use serde::{Deserialize, Serialize};

use super::diagonal::{diag_approx_numbers, DiagonalMap};
use crate::error::{Error, Result};
use crate::gaussian::WitnessRatio;
use crate::linalg::{lp_norm, neumaier_sum, Exponent};

/// Tolerance for the conjugate-pair condition `1/r + 1/s = 1/2`.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// `‖M‖_{ℓ_s(ℓ_r)}`: the `ℓ_s` norm of the `ℓ_r` norms of the rows.
/// `m` is row-major with `cols` columns.
pub fn lsr_norm(m: &[f64], cols: usize, s: Exponent, r: Exponent) -> Result<f64> {
    if cols == 0 || !m.len().is_multiple_of(cols) {
        return Err(Error::Shape(format!("{} entries do not form rows of length {cols}", m.len())));
    }
    let rows: Vec<f64> = m.chunks(cols).map(|row| lp_norm(row, r)).collect();
    Ok(lp_norm(&rows, s))
}

/// `U_ij = u_j` for `j ≥ i`, zero below the diagonal; row-major n×n.
///
/// Row `i` carries the tail `u_i, …, u_n`.
pub fn triangular_matrix(u: &DiagonalMap) -> Vec<f64> {
    let e = u.entries();
    let n = e.len();
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        m[i * n + i..(i + 1) * n].copy_from_slice(&e[i..]);
    }
    m
}

/// `(Σ u_k²)^½ − ‖U‖_{ℓ_s(ℓ_r)}` on the boundary `1/r + 1/s = 1/2`.
pub fn check_triangular_bound(u: &DiagonalMap, r: Exponent, s: Exponent) -> Result<f64> {
    let gap = r.reciprocal() + s.reciprocal() - 0.5;
    if gap.abs() > BOUNDARY_TOL {
        return Err(Error::Parameter(format!("(r, s) = ({r}, {s}) is off the boundary 1/r + 1/s = 1/2")));
    }
    Ok(u.l2() - lsr_norm(&triangular_matrix(u), u.len(), s, r)?)
}

/// `(Σ u_k²)^½ − (Σ_k k u_k⁴)^¼` for a nonincreasing `u`.
pub fn quartic_inequality_margin(u: &DiagonalMap) -> f64 {
    quartic_margin_raw(u.entries())
}

/// The same margin on an arbitrary list; it can be negative when the list
/// increases.
pub fn quartic_margin_raw(u: &[f64]) -> f64 {
    let rhs = neumaier_sum(u.iter().map(|x| x * x)).sqrt();
    let lhs = neumaier_sum(u.iter().enumerate().map(|(k, x)| (k + 1) as f64 * x.powi(4))).powf(0.25);
    rhs - lhs
}

/// The condition `|1/p − 1/q| + 1/s ≤ 1/2`, with `1/r = |1/p − 1/q|`.
///
/// JSON: `{"p", "q", "s", "r", "satisfied", "margin"}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CotypeCriterion {
    pub p: Exponent,
    pub q: Exponent,
    pub s: Exponent,
    pub r: Exponent,
    pub satisfied: bool,
    pub margin: f64,
}

pub fn criterion_cotype_scp(p: Exponent, q: Exponent, s: Exponent) -> Result<CotypeCriterion> {
    if s.reciprocal() > 0.5 {
        return Err(Error::Parameter(format!("cotype exponent s must be at least 2, got {s}")));
    }
    let r = Exponent::from_reciprocal((p.reciprocal() - q.reciprocal()).abs())?;
    let margin = 0.5 - (r.reciprocal() + s.reciprocal());
    // Reciprocals of the exponents used in practice are exact dyadic or
    // small rationals; snap roundoff so boundary cases read as satisfied.
    let margin = if margin.abs() < BOUNDARY_TOL { 0.0 } else { margin };
    Ok(CotypeCriterion { p, q, s, r, satisfied: margin >= 0.0, margin })
}

/// `(n, (Σ_k a_k^s)^{1/s} / √n)` for the all-ones diagonal, where
/// `a_k = (n − k + 1)^{1/r}`.
pub fn sharpness_profile(n_list: &[usize], r: Exponent, s: Exponent) -> Result<Vec<(usize, f64)>> {
    n_list
        .iter()
        .map(|&n| {
            let a = diag_approx_numbers(&DiagonalMap::ones(n)?, r);
            Ok((n, lp_norm(&a, s) / (n as f64).sqrt()))
        })
        .collect()
}

/// `image / domain` for the little-GT witness at size `n`.
pub fn pi_q2_witness_ratio(n: usize, image_norm: f64, domain_norm: f64) -> Result<WitnessRatio> {
    if !(domain_norm > 0.0) {
        return Err(Error::Degenerate("domain norm of the witness is zero".into()));
    }
    WitnessRatio::exact(n, image_norm, domain_norm)
}
