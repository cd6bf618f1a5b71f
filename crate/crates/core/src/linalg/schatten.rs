use super::exponent::Exponent;
use super::matrix::ComplexMatrix;
use super::sum::neumaier_sum;
use super::svd::singular_values;
use crate::error::{Error, Result};

/// `ℓ_p` norm of a list of nonnegative magnitudes, scaled by the maximum to
/// avoid overflow.
pub fn lp_norm(values: &[f64], p: Exponent) -> f64 {
    let max = values.iter().fold(0.0_f64, |m, &v| m.max(v.abs()));
    if max == 0.0 {
        return 0.0;
    }
    match p {
        Exponent::Infinity => max,
        Exponent::Finite(p) => max * neumaier_sum(values.iter().map(|v| (v.abs() / max).powf(p))).powf(1.0 / p),
    }
}

/// Schatten-p norm of a list of singular values.
pub fn schatten_norm_of_values(sigma: &[f64], p: Exponent) -> f64 {
    lp_norm(sigma, p)
}

/// `(Σ σ_k^p)^{1/p}`, or `σ_1` for `p = ∞`.
pub fn schatten_norm(a: &ComplexMatrix, p: Exponent) -> Result<f64> {
    Ok(lp_norm(&singular_values(a)?, p))
}

/// Largest singular value.
pub fn operator_norm(a: &ComplexMatrix) -> Result<f64> {
    Ok(singular_values(a)?.first().copied().unwrap_or(0.0))
}

/// k-th approximation number in the Schatten-p norm: the distance to
/// matrices of rank `< k`, i.e. `(Σ_{i ≥ k} σ_i^p)^{1/p}` (1-based `k`).
pub fn approx_number(a: &ComplexMatrix, k: usize, p: Exponent) -> Result<f64> {
    let kmax = a.rows().min(a.cols());
    if k == 0 || k > kmax {
        return Err(Error::Parameter(format!("approximation index {k} outside 1..={kmax}")));
    }
    let sigma = singular_values(a)?;
    Ok(lp_norm(&sigma[k - 1..], p))
}
