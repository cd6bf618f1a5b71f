use rand::Rng;

use super::ascent::{run_restarts, smoothed_operator_norm, AscentConfig, Certainty, NormValue};
use super::element::VVElement;
use super::space::{Family, SpaceDescriptor};
use crate::error::{Error, Result};
use crate::linalg::{kron, operator_norm, sample_gaussian_vector, svd, ComplexMatrix, GaussianKind, C64};

/// `‖Σ x_k x_k*‖^½`, equivalently `‖[x_1 … x_n]‖`.
pub fn row_norm(blocks: &[ComplexMatrix]) -> Result<f64> {
    let gram = gram_sum(blocks, false)?;
    Ok(operator_norm(&gram)?.sqrt())
}

/// `‖Σ x_k* x_k‖^½`.
pub fn col_norm(blocks: &[ComplexMatrix]) -> Result<f64> {
    let gram = gram_sum(blocks, true)?;
    Ok(operator_norm(&gram)?.sqrt())
}

fn gram_sum(blocks: &[ComplexMatrix], col: bool) -> Result<ComplexMatrix> {
    let m = check_blocks(blocks)?;
    let mut acc = ComplexMatrix::zeros(m, m);
    for x in blocks {
        let g = if col { x.adjoint().matmul(x)? } else { x.matmul(&x.adjoint())? };
        acc.axpy(C64::new(1.0, 0.0), &g)?;
    }
    Ok(acc)
}

fn check_blocks(blocks: &[ComplexMatrix]) -> Result<usize> {
    let first = blocks.first().ok_or_else(|| Error::Parameter("element has no blocks".into()))?;
    let m = first.rows();
    if blocks.iter().any(|b| b.shape() != (m, m)) {
        return Err(Error::Shape("blocks must all be m x m".into()));
    }
    Ok(m)
}

/// `‖Σ x_k ⊗ conj(x_k)‖^½`.
pub fn oh_norm(blocks: &[ComplexMatrix]) -> Result<f64> {
    let m = check_blocks(blocks)?;
    if blocks.iter().all(ComplexMatrix::is_diagonal) {
        // The sum is diagonal with entries Σ_k x_k[a] conj(x_k[b]).
        let mut best = 0.0_f64;
        for a in 0..m {
            for b in 0..m {
                let s: C64 = blocks.iter().map(|x| x[(a, a)] * x[(b, b)].conj()).sum();
                best = best.max(s.norm());
            }
        }
        return Ok(best.sqrt());
    }
    let mut acc = ComplexMatrix::zeros(m * m, m * m);
    for x in blocks {
        acc.axpy(C64::new(1.0, 0.0), &kron(x, &x.conj()))?;
    }
    Ok(operator_norm(&acc)?.sqrt())
}

/// `max(‖x‖_R, ‖x‖_C)`.
pub fn rcapc_norm(blocks: &[ComplexMatrix]) -> Result<f64> {
    Ok(row_norm(blocks)?.max(col_norm(blocks)?))
}

/// `inf { ‖y‖_R + ‖x − y‖_C }`, by smoothed gradient descent with restarts.
///
/// The returned value is the true objective at the best decomposition found,
/// hence an upper bound on the norm.
pub fn rplusc_norm(blocks: &[ComplexMatrix], cfg: &AscentConfig) -> Result<f64> {
    let m = check_blocks(blocks)?;
    let n = blocks.len();
    let r = row_norm(blocks)?;
    let c = col_norm(blocks)?;
    let scale = r.max(c);
    if scale == 0.0 {
        return Ok(0.0);
    }
    let exact = |y: &[ComplexMatrix]| -> Result<f64> {
        let z: Vec<ComplexMatrix> = blocks.iter().zip(y).map(|(x, y)| x.sub(y)).collect::<Result<_>>()?;
        Ok(operator_norm(&ComplexMatrix::hstack(y)?)? + operator_norm(&ComplexMatrix::vstack(&z)?)?)
    };
    let smooth = |y: &[ComplexMatrix], tau: f64| -> Result<(f64, Vec<ComplexMatrix>)> {
        let z: Vec<ComplexMatrix> = blocks.iter().zip(y).map(|(x, y)| x.sub(y)).collect::<Result<_>>()?;
        let (fr, gr) = smoothed_operator_norm(&ComplexMatrix::hstack(y)?, tau)?;
        let (fc, gc) = smoothed_operator_norm(&ComplexMatrix::vstack(&z)?, tau)?;
        let grad =
            (0..n).map(|k| gr.block(0, k * m, m, m).sub(&gc.block(k * m, 0, m, m))).collect::<Result<Vec<_>>>()?;
        Ok((fr + fc, grad))
    };
    let results = run_restarts(cfg, |k, seed| -> Result<f64> {
        let mut rng = seed.rng();
        let mut y: Vec<ComplexMatrix> = if k == 0 {
            blocks.iter().map(|x| x.scale_real(0.5)).collect()
        } else {
            let t: f64 = rng.random();
            let noise = 0.3 * scale / ((n * m * m) as f64).sqrt();
            blocks
                .iter()
                .enumerate()
                .map(|(l, x)| {
                    let g = sample_gaussian_vector(m * m, GaussianKind::Complex, &seed.derive(l as u64));
                    let g = ComplexMatrix::from_vec(m, m, g)?.scale_real(noise);
                    x.scale_real(t).add(&g)
                })
                .collect::<Result<_>>()?
        };
        let mut best = exact(&y)?;
        let iters_per_stage = (cfg.max_iters / 3).max(1);
        for tau in [1e-1, 1e-2, 1e-3].map(|t| t * scale) {
            let (mut f, mut g) = smooth(&y, tau)?;
            let mut step = scale;
            for _ in 0..iters_per_stage {
                let gnorm2: f64 = g.iter().map(|b| b.frobenius_norm().powi(2)).sum();
                if gnorm2 == 0.0 {
                    break;
                }
                // Armijo backtracking.
                let mut accepted = None;
                for _ in 0..40 {
                    let trial: Vec<ComplexMatrix> = y
                        .iter()
                        .zip(&g)
                        .map(|(a, b)| {
                            let mut t = a.clone();
                            t.axpy(C64::new(-step, 0.0), b).map(|_| t)
                        })
                        .collect::<Result<_>>()?;
                    let (ft, gt) = smooth(&trial, tau)?;
                    if ft <= f - 0.25 * step * gnorm2 {
                        accepted = Some((trial, ft, gt));
                        break;
                    }
                    step *= 0.5;
                }
                let Some((trial, ft, gt)) = accepted else {
                    break;
                };
                let gain = f - ft;
                y = trial;
                f = ft;
                g = gt;
                step *= 2.0;
                if gain <= cfg.tol * scale {
                    break;
                }
            }
            best = best.min(exact(&y)?);
        }
        Ok(best)
    })?;
    Ok(results.into_iter().fold(r.min(c), f64::min))
}

/// `sup_{‖ξ‖₂ ≤ 1} ‖Σ ξ_k x_k‖` by alternating ascent; a lower bound.
pub fn minl2_norm(blocks: &[ComplexMatrix], cfg: &AscentConfig) -> Result<f64> {
    let m = check_blocks(blocks)?;
    let n = blocks.len();
    let combine = |xi: &[C64]| -> Result<ComplexMatrix> {
        let mut acc = ComplexMatrix::zeros(m, m);
        for (x, &c) in blocks.iter().zip(xi) {
            acc.axpy(c, x)?;
        }
        Ok(acc)
    };
    let results = run_restarts(cfg, |k, seed| -> Result<f64> {
        let mut xi: Vec<C64> = if k == 0 {
            // Start along the block with the largest operator norm.
            let norms = blocks.iter().map(operator_norm).collect::<Result<Vec<_>>>()?;
            let top = (0..n).max_by(|&a, &b| norms[a].total_cmp(&norms[b])).unwrap_or(0);
            (0..n).map(|l| C64::new(if l == top { 1.0 } else { 0.0 }, 0.0)).collect()
        } else {
            sample_gaussian_vector(n, GaussianKind::Complex, &seed)
        };
        normalise(&mut xi);
        let mut value = 0.0_f64;
        for _ in 0..cfg.max_iters.max(1) {
            let s = svd(&combine(&xi)?)?;
            let (u, v) = (s.left_vectors.column(0), s.right_vectors.column(0));
            let coeffs: Vec<C64> = blocks
                .iter()
                .map(|x| -> Result<C64> {
                    let xv = x.mul_vec(&v)?;
                    Ok(u.iter().zip(&xv).map(|(a, b)| a.conj() * b).sum())
                })
                .collect::<Result<_>>()?;
            let norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if norm == 0.0 {
                break;
            }
            xi = coeffs.iter().map(|c| c.conj() / norm).collect();
            let improved = norm - value;
            value = value.max(norm);
            if improved <= cfg.tol * value {
                break;
            }
        }
        // Certify: evaluate the final ξ exactly.
        Ok(value.max(operator_norm(&combine(&xi)?)?))
    })?;
    Ok(results.into_iter().fold(0.0, f64::max))
}

fn normalise(v: &mut [C64]) {
    let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|c| *c /= norm);
    }
}

/// Norm of `Σ x_k ⊗ e_k` in `M_m(E)`, with the certification of the value.
pub fn matrix_level_norm_detailed(space: &SpaceDescriptor, x: &VVElement, cfg: &AscentConfig) -> Result<NormValue> {
    if x.is_grid() {
        return Err(Error::Shape("matrix-level norms take a linear-indexed element".into()));
    }
    if x.n() != space.dim {
        return Err(Error::Shape(format!("element has {} terms but the space has dimension {}", x.n(), space.dim)));
    }
    let blocks = x.blocks();
    let family = space.family.canonical();
    if x.block_dim() == 1 && family.is_bracket() {
        // At the first level every homogeneous Hilbertian structure is ℓ₂.
        let v = blocks.iter().map(|b| b[(0, 0)].norm_sqr()).sum::<f64>().sqrt();
        return Ok(NormValue::exact(v));
    }
    Ok(match family {
        Family::Row => NormValue::exact(row_norm(blocks)?),
        Family::Col => NormValue::exact(col_norm(blocks)?),
        Family::Oh => NormValue::exact(oh_norm(blocks)?),
        Family::RCapC => NormValue::exact(rcapc_norm(blocks)?),
        Family::RPlusC => {
            let v = rplusc_norm(blocks, cfg)?;
            NormValue { value: v, certainty: if x.block_dim() == 1 { Certainty::Exact } else { Certainty::UpperBound } }
        }
        Family::MinL2 => {
            let v = minl2_norm(blocks, cfg)?;
            NormValue { value: v, certainty: if x.block_dim() == 1 { Certainty::Exact } else { Certainty::LowerBound } }
        }
        Family::RBracket(p) | Family::CBracket(p) => {
            return Err(Error::Unsupported(format!(
                "interpolated family at p = {p} has no closed form at matrix level {}",
                x.block_dim()
            )))
        }
    })
}

/// Norm of `Σ x_k ⊗ e_k` in `M_m(E)`.
pub fn matrix_level_norm(space: &SpaceDescriptor, x: &VVElement, cfg: &AscentConfig) -> Result<f64> {
    Ok(matrix_level_norm_detailed(space, x, cfg)?.value)
}

/// Min-tensor norm of a grid `(x_ij)` in `S₂^n ⊗_min E`: the OH formula over
/// the n² blocks.
pub fn s2_min_tensor_norm(x: &VVElement) -> Result<f64> {
    x.require_grid("the S2 min-tensor norm")?;
    oh_norm(x.blocks())
}
