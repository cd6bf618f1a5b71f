use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};

/// Identifies one reproducible random stream.
///
/// The stream is ChaCha8 keyed by `master_seed` with `stream_id` selecting the
/// ChaCha stream, so a given pair yields the same draws on any thread.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeedSpec {
    pub master_seed: u64,
    pub stream_id: u64,
}

impl Default for SeedSpec {
    fn default() -> Self {
        Self { master_seed: 42, stream_id: 0 }
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl SeedSpec {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        Self { master_seed, stream_id }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_id);
        rng
    }

    /// Child stream for sub-task `index` (a sample, a restart, a dimension).
    /// Distinct `(self, index)` pairs give distinct children.
    pub fn derive(&self, index: u64) -> SeedSpec {
        SeedSpec {
            master_seed: splitmix64(self.master_seed ^ splitmix64(self.stream_id.wrapping_add(1))),
            stream_id: index,
        }
    }
}

/// Entry distribution for gaussian sampling.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GaussianKind {
    /// Real standard normal entries.
    #[default]
    Real,
    /// `(g₁ + i g₂)/√2` with independent real standard `g₁, g₂`.
    Complex,
}

fn draw(rng: &mut ChaCha8Rng, kind: GaussianKind) -> C64 {
    match kind {
        GaussianKind::Real => C64::new(rng.sample(StandardNormal), 0.0),
        GaussianKind::Complex => {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
        }
    }
}

/// `n × m` matrix of independent standard gaussians.
pub fn sample_gaussian_matrix(n: usize, m: usize, kind: GaussianKind, seed: &SeedSpec) -> Result<ComplexMatrix> {
    if n == 0 || m == 0 {
        return Err(Error::Parameter(format!("gaussian matrix needs positive shape, got {n}x{m}")));
    }
    let mut rng = seed.rng();
    Ok(ComplexMatrix::from_fn(n, m, |_, _| draw(&mut rng, kind)))
}

pub fn sample_gaussian_vector(n: usize, kind: GaussianKind, seed: &SeedSpec) -> Vec<C64> {
    let mut rng = seed.rng();
    (0..n).map(|_| draw(&mut rng, kind)).collect()
}

/// Haar-distributed unitary from Gram-Schmidt on a complex gaussian matrix.
pub fn random_unitary(n: usize, seed: &SeedSpec) -> Result<ComplexMatrix> {
    let g = sample_gaussian_matrix(n, n, GaussianKind::Complex, seed)?;
    let mut cols: Vec<Vec<C64>> = (0..n).map(|j| g.column(j)).collect();
    for j in 0..n {
        for _ in 0..2 {
            for k in 0..j {
                let proj: C64 = cols[k].iter().zip(&cols[j]).map(|(a, b)| a.conj() * b).sum();
                let (head, tail) = cols.split_at_mut(j);
                for (x, y) in tail[0].iter_mut().zip(&head[k]) {
                    *x -= proj * y;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::Degenerate("gaussian sample was rank deficient".into()));
        }
        cols[j].iter_mut().for_each(|z| *z /= norm);
    }
    Ok(ComplexMatrix::from_fn(n, n, |i, j| cols[j][i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_matrix() {
        let s = SeedSpec::new(7, 3);
        let a = sample_gaussian_matrix(4, 5, GaussianKind::Real, &s).unwrap();
        let b = sample_gaussian_matrix(4, 5, GaussianKind::Real, &s).unwrap();
        assert_eq!(a, b);
        let c = sample_gaussian_matrix(4, 5, GaussianKind::Real, &SeedSpec::new(7, 4)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn derived_streams_differ() {
        let s = SeedSpec::default();
        assert_ne!(s.derive(0), s.derive(1));
        assert_ne!(s.derive(0), SeedSpec::new(42, 1).derive(0));
        assert_eq!(s.derive(5), s.derive(5));
    }

    #[test]
    fn unitary_is_unitary() {
        let u = random_unitary(6, &SeedSpec::new(1, 2)).unwrap();
        let g = u.adjoint().matmul(&u).unwrap();
        assert!(g.approx_eq(&ComplexMatrix::identity(6), 1e-12));
    }

    #[test]
    fn complex_entries_have_unit_variance() {
        let v = sample_gaussian_vector(20_000, GaussianKind::Complex, &SeedSpec::new(3, 0));
        let m2 = v.iter().map(|z| z.norm_sqr()).sum::<f64>() / v.len() as f64;
        assert!((m2 - 1.0).abs() < 0.05, "{m2}");
    }
}
