use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{svd, ComplexMatrix, SeedSpec};

/// Restart/iteration budget for the optimisation-backed norms.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AscentConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub tol: f64,
    pub seed: SeedSpec,
}

impl Default for AscentConfig {
    fn default() -> Self {
        Self { restarts: 8, max_iters: 600, tol: 1e-10, seed: SeedSpec::default() }
    }
}

impl AscentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::Parameter("restarts must be at least 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::Parameter("tol must be positive".into()));
        }
        Ok(())
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_seed(mut self, seed: SeedSpec) -> Self {
        self.seed = seed;
        self
    }
}

/// What a returned norm value certifies about the true norm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certainty {
    Exact,
    /// Value of a feasible point of a supremum: never above the true norm.
    LowerBound,
    /// Value of a feasible point of an infimum: never below the true norm.
    UpperBound,
}

/// Norm value with its certification label.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormValue {
    pub value: f64,
    pub certainty: Certainty,
}

impl NormValue {
    pub fn exact(value: f64) -> Self {
        Self { value, certainty: Certainty::Exact }
    }

    /// Human-readable label for reports.
    pub fn label(&self) -> &'static str {
        match self.certainty {
            Certainty::Exact => "exact",
            Certainty::LowerBound => "certified lower bound, heuristic value",
            Certainty::UpperBound => "certified upper bound, heuristic value",
        }
    }
}

/// Runs `cfg.restarts` independent restarts in parallel, each with its own
/// derived seed, and returns the per-restart results in restart order.
pub(crate) fn run_restarts<T: Send>(
    cfg: &AscentConfig,
    f: impl Fn(usize, SeedSpec) -> Result<T> + Sync + Send,
) -> Result<Vec<T>> {
    cfg.validate()?;
    (0..cfg.restarts).into_par_iter().map(|k| f(k, cfg.seed.derive(k as u64))).collect()
}

/// Log-sum-exp smoothing of the operator norm at temperature `tau`, with its
/// gradient `Σ w_i u_i v_i*` (softmax weights over singular values).
pub(crate) fn smoothed_operator_norm(m: &ComplexMatrix, tau: f64) -> Result<(f64, ComplexMatrix)> {
    let s = svd(m)?;
    let sigma = &s.singular_values;
    let top = sigma[0];
    let weights: Vec<f64> = sigma.iter().map(|&x| ((x - top) / tau).exp()).collect();
    let z: f64 = weights.iter().sum();
    let value = top + tau * z.ln();
    let (rows, cols) = m.shape();
    let u = &s.left_vectors;
    let v = &s.right_vectors;
    let grad = ComplexMatrix::from_fn(rows, cols, |i, j| {
        weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 1e-300)
            .map(|(l, &w)| u[(i, l)] * v[(j, l)].conj() * (w / z))
            .sum()
    });
    Ok((value, grad))
}
