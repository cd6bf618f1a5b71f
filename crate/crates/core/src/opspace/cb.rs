use super::element::VVElement;
use super::norms::{col_norm, row_norm};
use crate::error::{Error, Result};
use crate::linalg::{operator_norm, schatten_norm, ComplexMatrix, Exponent};

/// `‖Σ e_ij ⊗ x_ij‖ / max(‖x‖_R, ‖x‖_C)` over the n² blocks: a lower bound for
/// the cb norm of `δ_ij ↦ x_ij` on `R_{n²} ∩ C_{n²}`.
pub fn rncap_quotient_bound(x: &VVElement) -> Result<f64> {
    x.require_grid("rncap_quotient_bound")?;
    let den = row_norm(x.blocks())?.max(col_norm(x.blocks())?);
    if den == 0.0 {
        return Err(Error::Degenerate("row and column norms of the grid both vanish".into()));
    }
    Ok(operator_norm(&x.assemble()?)? / den)
}

/// Exponent `r` with `CB(R_n[p_from], R_n[p_to]) ≅ S_r^n`, using
/// `1/r = ½|1/p_from − 1/p_to|`.
pub fn cb_exponent(p_from: Exponent, p_to: Exponent) -> Exponent {
    let inv = 0.5 * (p_from.reciprocal() - p_to.reciprocal()).abs();
    Exponent::from_reciprocal(inv).expect("reciprocal lies in [0, 1/2]")
}

/// The uncalibrated relation `1/r = |1/p_from − 1/p_to|`, kept for comparison.
pub fn cb_exponent_uncalibrated(p_from: Exponent, p_to: Exponent) -> Exponent {
    let inv = (p_from.reciprocal() - p_to.reciprocal()).abs();
    Exponent::from_reciprocal(inv).expect("reciprocal lies in [0, 1]")
}

/// C\[p\] as a member of the R family: C\[p\] = R\[p'\].
pub fn c_bracket_index(p: Exponent) -> Exponent {
    p.conjugate()
}

/// cb norm of `u: R_n[p_from] → R_n[p_to]`, i.e. `‖u‖_{S_r}`.
pub fn cb_norm_r_family(u: &ComplexMatrix, p_from: Exponent, p_to: Exponent) -> Result<f64> {
    if !u.is_square() {
        return Err(Error::Shape(format!("cb model needs a square map, got {}x{}", u.rows(), u.cols())));
    }
    schatten_norm(u, cb_exponent(p_from, p_to))
}

/// Exponent `r = 2pq/(pq + p − q)` of the isometry `S_q^n(R_n[p]) ⊃ span ≅ S_r^n`.
pub fn sq_rp_exponent(p: Exponent, q: Exponent) -> Result<Exponent> {
    check_sq_rp(p, q)?;
    Exponent::from_reciprocal(0.5 + 0.5 * q.reciprocal() - 0.5 * p.reciprocal())
}

fn check_sq_rp(p: Exponent, q: Exponent) -> Result<()> {
    let (ip, iq) = (p.reciprocal(), q.reciprocal());
    if iq > 0.5 || ip > iq {
        return Err(Error::Parameter(format!("need 2 <= q <= p <= inf, got p = {p}, q = {q}")));
    }
    Ok(())
}

/// `‖Σ_j e_1j ⊗ e_1j‖_{S_q^n(R_n[p])} = n^{1/r}`.
pub fn sq_rp_diagonal_norm(n: usize, p: Exponent, q: Exponent) -> Result<f64> {
    if n == 0 {
        return Err(Error::Parameter("n must be at least 1".into()));
    }
    Ok((n as f64).powf(sq_rp_exponent(p, q)?.reciprocal()))
}
