//! Witness generators behind the computable claims. Each evaluates one
//! dimension of a claim's profile.

use std::collections::BTreeMap;

use rand::Rng;

use super::registry::ClaimRecord;
use crate::cotype::{
    diag_approx_numbers, lsr_norm, pi_q2_witness_ratio, sharpness_profile, triangular_matrix, DiagonalMap,
};
use crate::error::{Error, Result};
use crate::gaussian::{
    check_f_properties, ell_norm, gaussian_grid_average, gaussian_matrix_average, rademacher_grid_average,
    schatten_type_witness, BanachNorm, EuclideanNorm, Provenance, RademacherCube, SchattenNorm, WitnessRatio,
};
use crate::linalg::{
    approx_number, lp_norm, operator_norm, sample_gaussian_matrix, schatten_norm, ComplexMatrix, Exponent, ExtReal,
    GaussianKind, SeedSpec, C64,
};
use crate::opspace::{
    c_bracket_index, cb_norm_r_family, rncap_quotient_bound, row_valued_sinf_norm, s2_oh_norm, sq_rp_diagonal_norm,
    VVElement,
};

/// One evaluated point and any side conditions that failed.
#[derive(Clone, Debug, PartialEq)]
pub struct PointEval {
    pub value: f64,
    pub stderr: f64,
    pub violations: Vec<String>,
}

impl PointEval {
    fn exact(value: f64) -> Self {
        Self { value, stderr: 0.0, violations: Vec::new() }
    }

    fn ratio(w: WitnessRatio) -> Self {
        Self { value: w.ratio, stderr: w.stderr, violations: Vec::new() }
    }
}

/// Sub-stream offsets so witness data and Monte Carlo draws never share a
/// stream.
const DATA_STREAM: u64 = 1 << 32;

/// A grid of `n×n` complex gaussian `m×m` blocks.
fn random_grid(n: usize, m: usize, seed: &SeedSpec) -> Result<VVElement> {
    let blocks = (0..n * n)
        .map(|k| sample_gaussian_matrix(m, m, GaussianKind::Complex, &seed.derive(k as u64)))
        .collect::<Result<Vec<_>>>()?;
    VVElement::grid(n, blocks)
}

/// A random nonincreasing nonnegative sequence drawn from one of several
/// shapes (flat, geometric decay, blocks of ties, sparse).
fn random_nonincreasing(n: usize, seed: &SeedSpec) -> Result<DiagonalMap> {
    let mut rng = seed.rng();
    let shape = rng.random_range(0..4u8);
    let u: Vec<f64> = match shape {
        0 => (0..n).map(|_| rng.random::<f64>()).collect(),
        1 => {
            let rate = rng.random_range(0.01..1.0);
            (0..n).map(|k| (-rate * k as f64).exp()).collect()
        }
        2 => {
            let levels = rng.random_range(1..=n.min(4));
            (0..n).map(|k| (levels - k * levels / n) as f64).collect()
        }
        _ => (0..n).map(|_| if rng.random::<f64>() < 0.3 { rng.random::<f64>() } else { 0.0 }).collect(),
    };
    let u = if u.iter().all(|&x| x == 0.0) { vec![1.0; n] } else { u };
    DiagonalMap::sorted(u)
}

/// Euclidean norm that hides its closed form, forcing Monte Carlo.
struct OpaqueEuclidean(EuclideanNorm);

impl BanachNorm for OpaqueEuclidean {
    fn element_shape(&self) -> (usize, usize) {
        self.0.element_shape()
    }

    fn norm(&self, x: &ComplexMatrix) -> Result<f64> {
        self.0.norm(x)
    }
}

/// `‖(e_ij)‖_{S_p^n(S_p^n)}`. The assembled grid is zero outside an n×n
/// all-ones submatrix, so only that part is formed.
fn units_fubini(n: usize, p: Exponent) -> Result<f64> {
    schatten_norm(&ComplexMatrix::from_fn(n, n, |_, _| C64::new(1.0, 0.0)), p)
}

/// Type ratio of the matrix-unit grid in `E = S_p^n`.
fn units_type(n: usize, p: Exponent, samples: usize, seed: &SeedSpec) -> Result<WitnessRatio> {
    let avg = gaussian_matrix_average(n, &SchattenNorm::square(n, p), samples, seed)?;
    let vv = units_fubini(n, p)?;
    Ok(WitnessRatio {
        n,
        num: avg.mean,
        den: vv,
        ratio: avg.mean / vv,
        num_kind: if avg.is_exact() { Provenance::Exact } else { Provenance::MonteCarlo },
        den_kind: Provenance::Exact,
        stderr: avg.stderr / vv,
    })
}

pub(crate) struct Ctx<'a> {
    pub record: &'a ClaimRecord,
    pub params: &'a BTreeMap<String, ExtReal>,
    pub samples: usize,
    pub seed: SeedSpec,
}

impl Ctx<'_> {
    fn param(&self, name: &str) -> Result<Exponent> {
        self.record.param(self.params, name)
    }
}

pub(crate) fn evaluate(ctx: &Ctx<'_>, n: usize) -> Result<PointEval> {
    let seed = &ctx.seed;
    match ctx.record.witness_spec.as_str() {
        "matrix_units_type" => Ok(PointEval::ratio(units_type(n, ctx.param("p")?, ctx.samples, seed)?)),
        "matrix_units_cotype" => {
            let q = ctx.param("q")?;
            let avg = gaussian_matrix_average(n, &SchattenNorm::square(n, q), ctx.samples, seed)?;
            let vv = units_fubini(n, q)?;
            let ratio = vv / avg.mean;
            Ok(PointEval { value: ratio, stderr: ratio * avg.stderr / avg.mean, violations: Vec::new() })
        }
        "s1_type_grids" => {
            // The larger of two S_1-type ratios: matrix units in S_1^n and a
            // random grid in S_1^2.
            let units = units_type(n, Exponent::ONE, ctx.samples, seed)?;
            let random = schatten_type_witness(
                &random_grid(n, 2, &seed.derive(DATA_STREAM))?,
                Exponent::ONE,
                ctx.samples,
                &seed.derive(DATA_STREAM + 1),
            )?;
            Ok(PointEval::ratio(if units.ratio >= random.ratio { units } else { random }))
        }
        "gaussian_matrix" => {
            let est = gaussian_matrix_average(n, &SchattenNorm::square(n, Exponent::INF), ctx.samples, seed)?;
            Ok(PointEval { value: est.mean, stderr: est.stderr, violations: Vec::new() })
        }
        "random_grid_rademacher" => {
            let p = ctx.param("p")?;
            let x = random_grid(n, 2, &seed.derive(DATA_STREAM))?;
            let norm = SchattenNorm::square(2, p);
            let rad = rademacher_grid_average(&x, &norm, &RademacherCube::build(n)?)?;
            let g = gaussian_grid_average(&x, &norm, ctx.samples, seed)?;
            Ok(PointEval::exact(rad / (g.mean + 3.0 * g.stderr)))
        }
        "identity_ell_norm" => {
            let eye = ComplexMatrix::identity(n);
            let exact = ell_norm(&eye, &EuclideanNorm { rows: n, cols: 1 }, 0, seed)?;
            let mc = ell_norm(&eye, &OpaqueEuclidean(EuclideanNorm { rows: n, cols: 1 }), ctx.samples, seed)?;
            let mut out = PointEval::exact(exact.mean);
            if (mc.mean - exact.mean).abs() > 4.0 * mc.stderr + 1e-12 {
                out.violations.push(format!(
                    "n = {n}: Monte Carlo {} ± {} disagrees with the closed form {}",
                    mc.mean, mc.stderr, exact.mean
                ));
            }
            Ok(out)
        }
        "random_row_grid" => {
            // x_ij = Σ_k x^k_ij e_1k: each block carries one nonzero row.
            let mut worst: f64 = 0.0;
            let mut out = PointEval::exact(0.0);
            for t in 0..ctx.samples.max(1) {
                let coeffs = (0..n)
                    .map(|k| {
                        sample_gaussian_matrix(n, n, GaussianKind::Complex, &seed.derive(t as u64).derive(k as u64))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let blocks: Vec<ComplexMatrix> =
                    (0..n * n)
                        .map(|ij| {
                            ComplexMatrix::from_fn(n, n, |r, k| {
                                if r == 0 {
                                    coeffs[k].as_slice()[ij]
                                } else {
                                    C64::new(0.0, 0.0)
                                }
                            })
                        })
                        .collect();
                let dense = operator_norm(&VVElement::grid(n, blocks)?.assemble()?)?;
                let row = row_valued_sinf_norm(&coeffs)?;
                if (dense - row).abs() > 1e-9 * row {
                    out.violations.push(format!("n = {n}, sample {t}: assembled norm {dense} vs row formula {row}"));
                }
                worst = worst.max(row / s2_oh_norm(&coeffs));
            }
            out.value = worst;
            Ok(out)
        }
        "sr_subspace" => {
            let image = sq_rp_diagonal_norm(n, ctx.param("p")?, ctx.param("q")?)?;
            // Preimage Σ_j e_1j ⊗ e_j in S_2^n(OH_n).
            let coeffs: Vec<ComplexMatrix> = (0..n).map(|j| ComplexMatrix::unit(n, n, 0, j)).collect();
            Ok(PointEval::exact(image / s2_oh_norm(&coeffs)))
        }
        "littlegt_pair" => {
            let image = sq_rp_diagonal_norm(n, ctx.param("p")?, ctx.param("q")?)?;
            // Σ_j e_j ⊗ e_1j in ℓ_∞^n(S_2^n).
            let domain = (0..n).map(|j| ComplexMatrix::unit(n, n, 0, j).frobenius_norm()).fold(0.0, f64::max);
            let ratio = pi_q2_witness_ratio(n, image, domain)?;
            // ‖I_n : ℓ_∞^n → ℓ_2^n‖ = ‖(1, …, 1)‖₂.
            let identity = lp_norm(&vec![1.0; n], Exponent::TWO);
            Ok(PointEval::exact(ratio.ratio / identity))
        }
        "matrix_units_rncap" => Ok(PointEval::exact(rncap_quotient_bound(&VVElement::matrix_units(n))?)),
        "rademacher_cube" => {
            let rep = check_f_properties(&RademacherCube::build(n)?)?;
            let mut out = PointEval::exact(rep.quotient_bound);
            if !rep.holds() {
                out.violations
                    .push(format!("n = {n}: L1-normalisation {} / reproduction {}", rep.l1_unit, rep.reproduces_r));
            }
            Ok(out)
        }
        "identity_cb_model" => {
            let pp = ctx.param("p")?.conjugate();
            Ok(PointEval::exact(cb_norm_r_family(&ComplexMatrix::identity(n), pp, c_bracket_index(pp))?))
        }
        "identity_approx_numbers" => {
            let r = ctx.param("r")?;
            let a = diag_approx_numbers(&DiagonalMap::ones(n)?, r);
            let eye = ComplexMatrix::identity(n);
            let mut out = PointEval::exact(a[0]);
            for (k, &ak) in a.iter().enumerate() {
                let dense = approx_number(&eye, k + 1, r)?;
                let closed = ((n - k) as f64).powf(r.reciprocal());
                if (dense - ak).abs() > 1e-12 * ak || (closed - ak).abs() > 1e-12 * ak {
                    out.violations.push(format!("n = {n}, k = {}: {ak} vs dense {dense} vs closed {closed}", k + 1));
                }
            }
            Ok(out)
        }
        "identity_truncation" => {
            let r = ctx.param("r")?;
            // ‖id_k‖_cb = k^{1/r}, read off the approximation numbers of id_n.
            let mut cb: Vec<f64> = diag_approx_numbers(&DiagonalMap::ones(n)?, r);
            cb.reverse();
            let ell = ell_norm(&ComplexMatrix::identity(n), &EuclideanNorm { rows: n, cols: 1 }, 0, seed)?.mean;
            let mut out = PointEval::exact(lp_norm(&cb, Exponent::TWO) / ell);
            let half = (n / 2).max(1);
            let tail: f64 = cb[half - 1..].iter().map(|a| a * a).sum();
            if tail < (n as f64 / 2.0) * cb[half - 1].powi(2) {
                out.violations.push(format!("n = {n}: truncated sum {tail} below (n/2)·‖id_[n/2]‖²"));
            }
            Ok(out)
        }
        "ones_diagonal_profile" => {
            let prof = sharpness_profile(&[n], ctx.param("r")?, ctx.param("s")?)?;
            Ok(PointEval::exact(prof[0].1))
        }
        "random_nonincreasing" => {
            let triangular = ctx.record.id == "triangular_bound";
            let (r, s) = if triangular { (ctx.param("r")?, ctx.param("s")?) } else { (Exponent::ONE, Exponent::ONE) };
            if triangular && (r.reciprocal() + s.reciprocal() - 0.5).abs() > crate::cotype::BOUNDARY_TOL {
                return Err(Error::Parameter(format!("(r, s) = ({r}, {s}) is off the boundary 1/r + 1/s = 1/2")));
            }
            let mut worst: f64 = 0.0;
            for t in 0..ctx.samples.max(1) {
                let u = random_nonincreasing(n, &seed.derive(t as u64))?;
                let lhs = if triangular {
                    lsr_norm(&triangular_matrix(&u), n, s, r)?
                } else {
                    u.entries().iter().enumerate().map(|(k, x)| (k + 1) as f64 * x.powi(4)).sum::<f64>().powf(0.25)
                };
                worst = worst.max(lhs / u.l2());
            }
            Ok(PointEval::exact(worst))
        }
        "none" => Err(Error::RecordedOnly(ctx.record.id.clone())),
        other => Err(Error::Data(format!("unknown witness generator `{other}`"))),
    }
}
