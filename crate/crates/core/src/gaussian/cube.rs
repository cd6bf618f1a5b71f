use serde::{Deserialize, Serialize};

use super::norm::BanachNorm;
use crate::error::{Error, Result};
use crate::linalg::{neumaier_sum, ComplexMatrix};
use crate::opspace::{rncap_quotient_bound, VVElement};

/// Largest grid size whose cube `{±1}^{n²}` is enumerated.
pub const MAX_CUBE_N: usize = 4;

/// The cube `{±1}^{n²}` with uniform counting measure and the coordinate
/// functions `r_ij`. Point `t` is a bit mask; bit `i·n + j` set means
/// `r_ij(t) = −1`.
#[derive(Clone, Debug)]
pub struct RademacherCube {
    n: usize,
    table: Vec<i8>,
}

impl RademacherCube {
    pub fn build(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("cube needs n >= 1".into()));
        }
        if n > MAX_CUBE_N {
            return Err(Error::Resource(format!(
                "cube for n = {n} has 2^{} points; the budget is 2^{} (n <= {MAX_CUBE_N})",
                n * n,
                MAX_CUBE_N * MAX_CUBE_N
            )));
        }
        let bits = n * n;
        let points = 1usize << bits;
        let mut table = Vec::with_capacity(points * bits);
        for t in 0..points {
            for k in 0..bits {
                table.push(if (t >> k) & 1 == 1 { -1 } else { 1 });
            }
        }
        Ok(Self { n, table })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coordinates(&self) -> usize {
        self.n * self.n
    }

    pub fn points(&self) -> usize {
        1 << self.coordinates()
    }

    /// `r_ij(t)`.
    pub fn r(&self, i: usize, j: usize, t: usize) -> i64 {
        self.table[t * self.coordinates() + i * self.n + j] as i64
    }

    fn rk(&self, k: usize, t: usize) -> i64 {
        self.table[t * self.coordinates() + k] as i64
    }
}

/// `f(t, s) = Π_ij (1 + r_ij(t) r_ij(s))` on cube × cube.
#[derive(Clone, Copy, Debug)]
pub struct FWitness<'a> {
    cube: &'a RademacherCube,
}

pub fn f_witness(cube: &RademacherCube) -> FWitness<'_> {
    FWitness { cube }
}

impl FWitness<'_> {
    pub fn value(&self, t: usize, s: usize) -> i64 {
        let mut prod = 1i64;
        for k in 0..self.cube.coordinates() {
            prod *= 1 + self.cube.rk(k, t) * self.cube.rk(k, s);
            if prod == 0 {
                break;
            }
        }
        prod
    }

    /// Row `f(t, ·)`.
    pub fn row(&self, t: usize) -> Vec<i64> {
        (0..self.cube.points()).map(|s| self.value(t, s)).collect()
    }
}

/// How [`check_f_properties`] evaluated the sums over `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CubeMethod {
    /// Direct enumeration of every `(t, s)`.
    Enumeration,
    /// Exact product of per-coordinate sums (the measure is a product).
    Factorized,
}

/// Outcome of [`check_f_properties`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FReport {
    pub n: usize,
    pub points: usize,
    pub method: CubeMethod,
    /// `‖f(t,·)‖_{L₁} = 1` for every `t`.
    pub l1_unit: bool,
    /// `∫ r_ij(s) f(t,s) ds = r_ij(t)` for every `t` and `(i, j)`.
    pub reproduces_r: bool,
    /// `rncap_quotient_bound` of the matrix-unit grid.
    pub quotient_bound: f64,
}

impl FReport {
    pub fn holds(&self) -> bool {
        self.l1_unit && self.reproduces_r
    }
}

const ENUMERATION_LIMIT: usize = 1 << 20;

/// Checks the two properties of `f` exactly in integer arithmetic (sums over
/// `s` are compared after multiplying through by the number of points).
pub fn check_f_properties(cube: &RademacherCube) -> Result<FReport> {
    let points = cube.points();
    let method = if points * points <= ENUMERATION_LIMIT { CubeMethod::Enumeration } else { CubeMethod::Factorized };
    check_with(cube, method)
}

pub(crate) fn check_with(cube: &RademacherCube, method: CubeMethod) -> Result<FReport> {
    let points = cube.points();
    let total = points as i64;
    let coords = cube.coordinates();
    let f = f_witness(cube);
    let mut l1_unit = true;
    let mut reproduces_r = true;
    for t in 0..points {
        match method {
            CubeMethod::Enumeration => {
                let row = f.row(t);
                l1_unit &= row.iter().map(|v| v.abs()).sum::<i64>() == total;
                for k in 0..coords {
                    let pairing: i64 = row.iter().enumerate().map(|(s, v)| cube.rk(k, s) * v).sum();
                    reproduces_r &= pairing == total * cube.rk(k, t);
                }
            }
            CubeMethod::Factorized => {
                // Σ_s Π_k φ_k(s_k) = Π_k (φ_k(+1) + φ_k(−1)).
                let factor = |k: usize, weight: i64| -> i64 {
                    let rt = cube.rk(k, t);
                    [1i64, -1].iter().map(|&b| if weight == 0 { (1 + rt * b).abs() } else { b * (1 + rt * b) }).sum()
                };
                let l1: i64 = (0..coords).map(|k| factor(k, 0)).product();
                l1_unit &= l1 == total;
                for k in 0..coords {
                    let pairing: i64 = (0..coords).map(|l| if l == k { factor(l, 1) } else { factor(l, 0) }).product();
                    reproduces_r &= pairing == total * cube.rk(k, t);
                }
            }
        }
    }
    Ok(FReport {
        n: cube.n(),
        points,
        method,
        l1_unit,
        reproduces_r,
        quotient_bound: rncap_quotient_bound(&VVElement::matrix_units(cube.n()))?,
    })
}

/// `(avg_t ‖Σ_ij r_ij(t) x_ij‖²)^½`, exact over the cube.
pub fn rademacher_grid_average(x: &VVElement, norm: &dyn BanachNorm, cube: &RademacherCube) -> Result<f64> {
    let n = x.require_grid("rademacher_grid_average")?;
    if n != cube.n() {
        return Err(Error::Shape(format!("grid is {n}x{n} but the cube is for n = {}", cube.n())));
    }
    let (rows, cols) = norm.element_shape();
    for b in x.blocks() {
        norm.check_shape(b)?;
    }
    let squares = (0..cube.points())
        .map(|t| {
            let mut acc = ComplexMatrix::zeros(rows, cols);
            for (k, b) in x.blocks().iter().enumerate() {
                acc.axpy((cube.rk(k, t) as f64).into(), b)?;
            }
            Ok(norm.norm(&acc)?.powi(2))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok((neumaier_sum(squares) / cube.points() as f64).sqrt())
}
