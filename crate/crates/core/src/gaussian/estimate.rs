use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::norm::BanachNorm;
use crate::error::{Error, Result};
use crate::linalg::{neumaier_sum, sample_gaussian_vector, ComplexMatrix, GaussianKind, SeedSpec, C64};
use crate::opspace::VVElement;

/// Second-moment estimate `(E‖·‖²)^½`.
///
/// JSON: `{"mean":…, "stderr":…, "samples":…, "seed":{…}|null}`. Exact values
/// carry `samples = 0`, `stderr = 0` and no seed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: usize,
    pub seed: Option<SeedSpec>,
}

impl MonteCarloEstimate {
    pub fn exact(value: f64) -> Self {
        Self { mean: value, stderr: 0.0, samples: 0, seed: None }
    }

    pub fn is_exact(&self) -> bool {
        self.samples == 0
    }
}

/// Welford accumulator for mean and variance.
#[derive(Clone, Copy, Debug, Default)]
struct Welford {
    count: usize,
    mean: f64,
    m2: f64,
}

impl Welford {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn sample_variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }
}

/// Sparse copy of an element: its nonzero entries.
struct Sparse(Vec<(usize, C64)>);

impl Sparse {
    fn of(x: &ComplexMatrix) -> Self {
        Sparse(
            x.as_slice().iter().enumerate().filter(|(_, z)| **z != C64::new(0.0, 0.0)).map(|(i, &z)| (i, z)).collect(),
        )
    }
}

/// `(E‖Σ_k g_k x_k‖²_E)^½` over real standard gaussians `g_k`.
///
/// Hilbertian norms take the closed form `(Σ_k ‖x_k‖²)^½`. Otherwise each
/// sample `i` draws from `seed.derive(i)`, samples are evaluated in parallel
/// and reduced in index order, so results do not depend on the thread count.
pub fn gaussian_average(
    elements: &[ComplexMatrix],
    norm: &dyn BanachNorm,
    samples: usize,
    seed: &SeedSpec,
) -> Result<MonteCarloEstimate> {
    for x in elements {
        norm.check_shape(x)?;
    }
    if elements.iter().all(ComplexMatrix::is_zero) {
        return Ok(MonteCarloEstimate::exact(0.0));
    }
    if norm.is_hilbertian() {
        return Ok(MonteCarloEstimate::exact(neumaier_sum(elements.iter().map(|x| x.frobenius_norm().powi(2))).sqrt()));
    }
    let (rows, cols) = norm.element_shape();
    let sparse: Vec<Sparse> = elements.iter().map(Sparse::of).collect();
    second_moment(samples, seed, elements.len(), |g| {
        let mut acc = ComplexMatrix::zeros(rows, cols);
        let buf = acc.as_mut_slice();
        for (gk, xk) in g.iter().zip(&sparse) {
            for &(idx, z) in &xk.0 {
                buf[idx] += z * gk.re;
            }
        }
        norm.norm(&acc)
    })
}

/// `(E f(g)²)^½` over `samples` draws of `dim` real gaussians.
fn second_moment(
    samples: usize,
    seed: &SeedSpec,
    dim: usize,
    f: impl Fn(&[C64]) -> Result<f64> + Sync,
) -> Result<MonteCarloEstimate> {
    if samples < 2 {
        return Err(Error::Parameter(format!("Monte Carlo needs at least 2 samples, got {samples}")));
    }
    let squares: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|i| Ok(f(&sample_gaussian_vector(dim, GaussianKind::Real, &seed.derive(i as u64)))?.powi(2)))
        .collect::<Result<_>>()?;
    let mut w = Welford::default();
    for s in squares {
        w.push(s);
    }
    let mean = w.mean.max(0.0).sqrt();
    // Delta method: sd(‖·‖²) / (2·mean·√N).
    let stderr = if mean > 0.0 { w.sample_variance().sqrt() / (2.0 * mean * (samples as f64).sqrt()) } else { 0.0 };
    Ok(MonteCarloEstimate { mean, stderr, samples, seed: Some(*seed) })
}

/// `ℓ(u) = (E‖Σ_k g_k u e_k‖²_E)^½` for `u: ℓ₂^n → E`. Column `k` of `u`,
/// read row-major into the element shape of `E`, is `u e_k`.
pub fn ell_norm(
    u: &ComplexMatrix,
    norm: &dyn BanachNorm,
    samples: usize,
    seed: &SeedSpec,
) -> Result<MonteCarloEstimate> {
    let (rows, cols) = norm.element_shape();
    if u.rows() != rows * cols {
        return Err(Error::Shape(format!(
            "map has {} output coordinates but the space stores {rows}x{cols}",
            u.rows()
        )));
    }
    let elements =
        (0..u.cols()).map(|k| ComplexMatrix::from_vec(rows, cols, u.column(k))).collect::<Result<Vec<_>>>()?;
    gaussian_average(&elements, norm, samples, seed)
}

/// `(E‖G‖²_E)^½` for the n×n real gaussian matrix `G = Σ_ij g_ij e_ij`.
///
/// Draws the same samples as [`gaussian_grid_average`] on the matrix-unit
/// grid, without storing its n² blocks.
pub fn gaussian_matrix_average(
    n: usize,
    norm: &dyn BanachNorm,
    samples: usize,
    seed: &SeedSpec,
) -> Result<MonteCarloEstimate> {
    if norm.element_shape() != (n, n) {
        return Err(Error::Shape(format!("space stores {:?}, not {n}x{n}", norm.element_shape())));
    }
    if norm.is_hilbertian() {
        return Ok(MonteCarloEstimate::exact(n as f64));
    }
    second_moment(samples, seed, n * n, |g| norm.norm(&ComplexMatrix::from_vec(n, n, g.to_vec())?))
}

/// `(E‖Σ_ij g_ij x_ij‖²_E)^½` for a grid element.
pub fn gaussian_grid_average(
    x: &VVElement,
    norm: &dyn BanachNorm,
    samples: usize,
    seed: &SeedSpec,
) -> Result<MonteCarloEstimate> {
    x.require_grid("gaussian_grid_average")?;
    gaussian_average(x.blocks(), norm, samples, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::norm::{EuclideanNorm, SchattenNorm, SupNorm};
    use crate::linalg::Exponent;

    #[test]
    fn hilbertian_fast_paths() {
        let eye = ComplexMatrix::identity(5);
        let e = ell_norm(&eye, &EuclideanNorm { rows: 5, cols: 1 }, 0, &SeedSpec::default()).unwrap();
        assert!(e.is_exact());
        assert!((e.mean - 5f64.sqrt()).abs() < 1e-14);
        let d = ComplexMatrix::diag(&[1.0, 2.0, 2.0]);
        let e = ell_norm(&d, &EuclideanNorm { rows: 3, cols: 1 }, 0, &SeedSpec::default()).unwrap();
        assert!((e.mean - 3.0).abs() < 1e-14);
        let g = gaussian_grid_average(
            &VVElement::matrix_units(4),
            &SchattenNorm::square(4, Exponent::TWO),
            0,
            &SeedSpec::default(),
        )
        .unwrap();
        assert!((g.mean - 4.0).abs() < 1e-14);
    }

    #[test]
    fn zero_grid_and_sample_count() {
        let z = VVElement::zeros(crate::opspace::IndexShape::Grid(2), 2).unwrap();
        let norm = SchattenNorm::square(2, Exponent::INF);
        assert_eq!(gaussian_grid_average(&z, &norm, 0, &SeedSpec::default()).unwrap().mean, 0.0);
        let x = VVElement::matrix_units(2);
        assert!(gaussian_grid_average(&x, &norm, 1, &SeedSpec::default()).is_err());
    }

    #[test]
    fn sup_norm_of_single_gaussian() {
        // E g² = 1 for one coordinate.
        let u = ComplexMatrix::identity(1);
        let e = ell_norm(&u, &SupNorm { rows: 1, cols: 1 }, 20_000, &SeedSpec::new(5, 0)).unwrap();
        assert!((e.mean - 1.0).abs() < 4.0 * e.stderr, "{e:?}");
    }

    #[test]
    fn implicit_matrix_units_match_grid() {
        for p in [Exponent::ONE, Exponent::INF, Exponent::TWO] {
            let norm = SchattenNorm::square(4, p);
            let a = gaussian_grid_average(&VVElement::matrix_units(4), &norm, 30, &SeedSpec::new(4, 4)).unwrap();
            let b = gaussian_matrix_average(4, &norm, 30, &SeedSpec::new(4, 4)).unwrap();
            assert!((a.mean - b.mean).abs() <= 1e-12 * a.mean, "{p}: {a:?} vs {b:?}");
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let x = VVElement::matrix_units(3);
        let norm = SchattenNorm::square(3, Exponent::INF);
        let a = gaussian_grid_average(&x, &norm, 50, &SeedSpec::new(9, 1)).unwrap();
        let b = gaussian_grid_average(&x, &norm, 50, &SeedSpec::new(9, 1)).unwrap();
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
    }
}
