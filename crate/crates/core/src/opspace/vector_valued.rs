use serde::{Deserialize, Serialize};

use super::ascent::{run_restarts, AscentConfig, Certainty, NormValue};
use super::element::VVElement;
use crate::error::Result;
use crate::linalg::{kron, random_unitary, schatten_norm, svd, ComplexMatrix, Exponent};

/// `‖(x_ij)‖_{S_p^n(S_p^m)} = ‖reshape_grid(x)‖_{S_p}`.
pub fn fubini_norm(x: &VVElement, p: Exponent) -> Result<f64> {
    x.require_grid("fubini_norm")?;
    schatten_norm(&x.assemble()?, p)
}

/// Result of the vector-valued ascent.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpnEstimate {
    pub value: f64,
    pub certainty: Certainty,
    pub restarts: usize,
}

impl SpnEstimate {
    pub fn label(&self) -> &'static str {
        NormValue { value: self.value, certainty: self.certainty }.label()
    }
}

/// Partial trace over the inner factor of an `(outer·inner)`-square matrix.
fn partial_trace_inner(k: &ComplexMatrix, outer: usize, inner: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(outer, outer, |i, j| (0..inner).map(|l| k[(i * inner + l, j * inner + l)]).sum())
}

/// Norming functional of `t` in `S_p`: `W` with `‖W‖_{p'} = 1` and
/// `Re tr(W* t) = ‖t‖_p`.
fn dual_direction(t: &ComplexMatrix, p: Exponent) -> Result<ComplexMatrix> {
    let s = svd(t)?;
    let sigma = &s.singular_values;
    let weights: Vec<f64> = match p {
        Exponent::Infinity => sigma.iter().enumerate().map(|(i, _)| if i == 0 { 1.0 } else { 0.0 }).collect(),
        Exponent::Finite(p) => {
            let norm = crate::linalg::lp_norm(sigma, Exponent::Finite(p));
            if norm == 0.0 {
                return Ok(ComplexMatrix::zeros(t.rows(), t.cols()));
            }
            sigma.iter().map(|&x| (x / norm).powf(p - 1.0)).collect()
        }
    };
    Ok(weighted(&s.left_vectors, &weights, &s.right_vectors))
}

/// `U diag(w) V*`.
fn weighted(u: &ComplexMatrix, w: &[f64], v: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(u.rows(), v.rows(), |i, j| {
        w.iter().enumerate().filter(|(_, &x)| x != 0.0).map(|(l, &x)| u[(i, l)] * v[(j, l)].conj() * x).sum()
    })
}

/// Maximiser of `Re tr(a N)` over the unit ball of `S_q`.
fn best_factor(n: &ComplexMatrix, q: Exponent) -> Result<Option<ComplexMatrix>> {
    let s = svd(n)?;
    let sigma = &s.singular_values;
    if sigma[0] == 0.0 {
        return Ok(None);
    }
    let weights: Vec<f64> = match q {
        Exponent::Finite(1.0) => vec![1.0; sigma.len()],
        Exponent::Finite(q) => {
            let norm = crate::linalg::lp_norm(sigma, Exponent::Finite(q));
            sigma.iter().map(|&x| (x / norm).powf(q - 1.0)).collect()
        }
        Exponent::Infinity => sigma.iter().enumerate().map(|(i, _)| if i == 0 { 1.0 } else { 0.0 }).collect(),
    };
    // a = V diag(w) U*.
    Ok(Some(weighted(&s.right_vectors, &weights, &s.left_vectors)))
}

/// `‖y‖_{M_m(S_p^n)} = sup ‖(a⊗1) Y (b⊗1)‖_{S_p}` over the unit ball of
/// `S_{2p}^m`, by alternating ascent. The value is attained by feasible
/// `(a, b)`, so it is a lower bound.
///
/// `y` is an m×m grid of n×n blocks.
pub fn mm_spn_norm(y: &VVElement, p: Exponent, cfg: &AscentConfig) -> Result<SpnEstimate> {
    let m = y.require_grid("mm_spn_norm")?;
    let n = y.block_dim();
    let big = y.assemble()?;
    if m == 1 {
        return Ok(SpnEstimate { value: schatten_norm(&big, p)?, certainty: Certainty::Exact, restarts: 0 });
    }
    let q = p.doubled().conjugate();
    let eye = ComplexMatrix::identity(n);
    let apply = |a: &ComplexMatrix, b: &ComplexMatrix| -> Result<ComplexMatrix> {
        kron(a, &eye).matmul(&big)?.matmul(&kron(b, &eye))
    };
    let start_scale = match p.doubled() {
        Exponent::Infinity => 1.0,
        Exponent::Finite(r) => (m as f64).powf(-1.0 / r),
    };
    let values = run_restarts(cfg, |k, seed| -> Result<f64> {
        let mut a = ComplexMatrix::identity(m).scale_real(start_scale);
        let mut b = a.clone();
        if k > 0 {
            a = random_unitary(m, &seed.derive(0))?.scale_real(start_scale);
            b = random_unitary(m, &seed.derive(1))?.scale_real(start_scale);
        }
        let mut value = schatten_norm(&apply(&a, &b)?, p)?;
        for _ in 0..cfg.max_iters.max(1) {
            let w = dual_direction(&apply(&a, &b)?, p)?;
            let na = partial_trace_inner(&big.matmul(&kron(&b, &eye))?.matmul(&w.adjoint())?, m, n);
            if let Some(next) = best_factor(&na, q)? {
                a = next;
            }
            let w = dual_direction(&apply(&a, &b)?, p)?;
            let nb = partial_trace_inner(&w.adjoint().matmul(&kron(&a, &eye))?.matmul(&big)?, m, n);
            if let Some(next) = best_factor(&nb, q)? {
                b = next;
            }
            let next = schatten_norm(&apply(&a, &b)?, p)?;
            let gain = next - value;
            value = value.max(next);
            if gain <= cfg.tol * value.max(f64::MIN_POSITIVE) {
                break;
            }
        }
        Ok(value)
    })?;
    Ok(SpnEstimate {
        value: values.into_iter().fold(0.0, f64::max),
        certainty: Certainty::LowerBound,
        restarts: cfg.restarts,
    })
}

/// `‖Σ_k X^k ⊗ e_k‖` in `S_∞^n(R_n)`-type row form: `‖Σ X^k X^k*‖^½`.
pub fn row_valued_sinf_norm(blocks: &[ComplexMatrix]) -> Result<f64> {
    super::norms::row_norm(blocks)
}

/// `(Σ_k ‖X^k‖_{S₂}²)^½`, the `S₂^n(OH_n)` norm of `Σ_k X^k ⊗ e_k`.
pub fn s2_oh_norm(blocks: &[ComplexMatrix]) -> f64 {
    crate::linalg::neumaier_sum(blocks.iter().map(|b| b.frobenius_norm().powi(2))).sqrt()
}

/// Coefficient matrices of a grid: for an m×m grid of n×n blocks, the n²
/// matrices `X_kl ∈ M_m` with `X_kl[i, j] = y_ij[k, l]`.
pub fn coefficient_matrices(y: &VVElement) -> Result<Vec<ComplexMatrix>> {
    let m = y.require_grid("coefficient_matrices")?;
    let n = y.block_dim();
    Ok((0..n * n).map(|kl| ComplexMatrix::from_fn(m, m, |i, j| y.blocks()[i * m + j][(kl / n, kl % n)])).collect())
}
