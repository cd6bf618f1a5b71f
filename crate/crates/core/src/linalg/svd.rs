//! One-sided (Hestenes) Jacobi SVD.
//!
//! Columns of a working copy of `A` are orthogonalised pairwise by plane
//! rotations, cyclically, until no pair exceeds the orthogonality threshold.
//! Singular values are the final column norms. Real inputs take a real-only
//! path; complex inputs first rotate the phase of the pair's inner product to
//! the real axis and then apply the same real rotation.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};

/// Sweep cap before reporting non-convergence.
pub const SVD_MAX_SWEEPS: usize = 60;

/// Relative reconstruction tolerance `‖A − UΣV*‖ ≤ SVD_TOL · ‖A‖`.
pub const SVD_TOL: f64 = 1e-11;

/// Thin SVD `A = U Σ V*` with `k = min(rows, cols)` singular triplets.
#[derive(Clone, Debug)]
pub struct SvdResult {
    /// Nonincreasing, nonnegative.
    pub singular_values: Vec<f64>,
    /// `rows × k`, orthonormal columns.
    pub left_vectors: ComplexMatrix,
    /// `cols × k`, orthonormal columns.
    pub right_vectors: ComplexMatrix,
}

impl SvdResult {
    /// `U Σ V*`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let u = &self.left_vectors;
        let v = &self.right_vectors;
        let k = self.singular_values.len();
        ComplexMatrix::from_fn(u.rows(), v.rows(), |i, j| {
            (0..k).map(|l| u[(i, l)] * self.singular_values[l] * v[(j, l)].conj()).sum()
        })
    }
}

trait JacobiScalar: Copy + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn conj(self) -> Self;
    fn abs2(self) -> f64;
    fn mul(self, other: Self) -> Self;
    fn add(self, other: Self) -> Self;
    fn sub(self, other: Self) -> Self;
    fn scale(self, s: f64) -> Self;
    /// For `γ ≠ 0` returns `conj(γ)/|γ|`, the factor rotating `γ` onto the
    /// positive real axis.
    fn unphase(self, modulus: f64) -> Self;
    fn to_c64(self) -> C64;
}

impl JacobiScalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn conj(self) -> Self {
        self
    }
    fn abs2(self) -> f64 {
        self * self
    }
    fn mul(self, other: Self) -> Self {
        self * other
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn sub(self, other: Self) -> Self {
        self - other
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn unphase(self, _modulus: f64) -> Self {
        self.signum()
    }
    fn to_c64(self) -> C64 {
        C64::new(self, 0.0)
    }
}

impl JacobiScalar for Complex64 {
    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn abs2(self) -> f64 {
        self.norm_sqr()
    }
    fn mul(self, other: Self) -> Self {
        self * other
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn sub(self, other: Self) -> Self {
        self - other
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn unphase(self, modulus: f64) -> Self {
        Complex64::conj(&self) / modulus
    }
    fn to_c64(self) -> C64 {
        self
    }
}

fn dot<T: JacobiScalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc.add(x.conj().mul(y)))
}

fn norm2<T: JacobiScalar>(a: &[T]) -> f64 {
    a.iter().map(|x| x.abs2()).sum()
}

fn rotate<T: JacobiScalar>(cols: &mut [Vec<T>], p: usize, q: usize, c: f64, s: f64, phase: T) {
    let (left, right) = cols.split_at_mut(q);
    let cp = &mut left[p];
    let cq = &mut right[0];
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let ap = *x;
        let aq = y.mul(phase);
        *x = ap.scale(c).sub(aq.scale(s));
        *y = ap.scale(s).add(aq.scale(c));
    }
}

/// Runs cyclic sweeps on `cols` (and mirrors rotations on `vecs` when given).
/// Returns the number of sweeps used.
fn jacobi_sweeps<T: JacobiScalar>(cols: &mut [Vec<T>], mut vecs: Option<&mut [Vec<T>]>, rows: usize) -> Option<usize> {
    let n = cols.len();
    let threshold = (rows.max(n) as f64) * f64::EPSILON;
    // Columns this small relative to the whole matrix are roundoff residue;
    // rotating them against each other never settles.
    let total: f64 = cols.iter().map(|c| norm2(c)).sum();
    let negligible = threshold * threshold * total;
    for sweep in 0..SVD_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let alpha = norm2(&cols[p]);
                let beta = norm2(&cols[q]);
                if alpha <= negligible || beta <= negligible {
                    continue;
                }
                let gamma = dot(&cols[p], &cols[q]);
                let g = gamma.abs2().sqrt();
                if g <= threshold * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma.unphase(g);
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(cols, p, q, c, s, phase);
                if let Some(v) = vecs.as_deref_mut() {
                    rotate(v, p, q, c, s, phase);
                }
            }
        }
        if !rotated {
            return Some(sweep + 1);
        }
    }
    None
}

struct RawSvd<T> {
    sigma: Vec<f64>,
    /// Orthogonalised columns (U Σ), one per singular value.
    cols: Vec<Vec<T>>,
    vecs: Option<Vec<Vec<T>>>,
}

/// Jacobi on a tall (`rows ≥ cols`) column-major matrix.
fn jacobi_tall<T: JacobiScalar>(
    mut cols: Vec<Vec<T>>,
    rows: usize,
    want_vectors: bool,
    shape: (usize, usize),
) -> Result<RawSvd<T>> {
    let n = cols.len();
    let mut vecs = want_vectors.then(|| {
        (0..n)
            .map(|j| (0..n).map(|i| if i == j { T::one() } else { T::zero() }).collect::<Vec<T>>())
            .collect::<Vec<_>>()
    });
    if jacobi_sweeps(&mut cols, vecs.as_deref_mut(), rows).is_none() {
        return Err(Error::NoConvergence { rows: shape.0, cols: shape.1, sweeps: SVD_MAX_SWEEPS });
    }
    let sigma: Vec<f64> = cols.iter().map(|c| norm2(c).sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| sigma[b].total_cmp(&sigma[a]));
    Ok(RawSvd {
        sigma: order.iter().map(|&i| sigma[i]).collect(),
        cols: order.iter().map(|&i| cols[i].clone()).collect(),
        vecs: vecs.map(|v| order.iter().map(|&i| v[i].clone()).collect()),
    })
}

fn columns_of<T: JacobiScalar>(a: &ComplexMatrix, adjoint: bool, pick: impl Fn(C64) -> T) -> Vec<Vec<T>> {
    let (r, c) = a.shape();
    if adjoint {
        // columns of A* are conjugated rows of A
        (0..r).map(|i| (0..c).map(|j| pick(a[(i, j)].conj())).collect()).collect()
    } else {
        (0..c).map(|j| (0..r).map(|i| pick(a[(i, j)])).collect()).collect()
    }
}

fn raw_svd<T: JacobiScalar>(
    a: &ComplexMatrix,
    want_vectors: bool,
    pick: impl Fn(C64) -> T,
) -> Result<(RawSvd<T>, bool)> {
    let (r, c) = a.shape();
    let transposed = r < c;
    let cols = columns_of(a, transposed, pick);
    let rows = if transposed { c } else { r };
    Ok((jacobi_tall(cols, rows, want_vectors, a.shape())?, transposed))
}

/// Below this many entries the component split is not worth the scan.
const SPLIT_MIN_ENTRIES: usize = 256;

/// Singular values only, nonincreasing.
///
/// A matrix whose nonzero pattern splits into several connected components
/// (rows and columns linked by nonzero entries) is a permuted block
/// diagonal; its singular values are those of the blocks, padded with zeros.
/// Sparse grids such as assembled matrix units reduce to tiny blocks this way.
pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>> {
    if a.rows() * a.cols() >= SPLIT_MIN_ENTRIES {
        if let Some(parts) = split_components(a) {
            let mut sigma = Vec::with_capacity(a.rows().min(a.cols()));
            for part in &parts {
                sigma.extend(dense_singular_values(part)?);
            }
            sigma.resize(a.rows().min(a.cols()), 0.0);
            sigma.sort_by(|x, y| y.total_cmp(x));
            return Ok(sigma);
        }
    }
    dense_singular_values(a)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Submatrices on the connected components of the nonzero pattern, or `None`
/// when a single component spans every row and column.
fn split_components(a: &ComplexMatrix) -> Option<Vec<ComplexMatrix>> {
    let (rows, cols) = a.shape();
    let mut parent: Vec<usize> = (0..rows + cols).collect();
    let data = a.as_slice();
    for i in 0..rows {
        for j in 0..cols {
            if data[i * cols + j] != C64::new(0.0, 0.0) {
                let (x, y) = (find(&mut parent, i), find(&mut parent, rows + j));
                if x != y {
                    parent[x] = y;
                }
            }
        }
    }
    let mut members: std::collections::BTreeMap<usize, (Vec<usize>, Vec<usize>)> = Default::default();
    for i in 0..rows {
        let r = find(&mut parent, i);
        members.entry(r).or_default().0.push(i);
    }
    for j in 0..cols {
        let r = find(&mut parent, rows + j);
        members.entry(r).or_default().1.push(j);
    }
    // Isolated rows or columns are zero and contribute only padding.
    let parts: Vec<(Vec<usize>, Vec<usize>)> =
        members.into_values().filter(|(r, c)| !r.is_empty() && !c.is_empty()).collect();
    if parts.len() == 1 && parts[0].0.len() == rows && parts[0].1.len() == cols {
        return None;
    }
    Some(
        parts
            .into_iter()
            .map(|(r, c)| ComplexMatrix::from_fn(r.len(), c.len(), |i, j| data[r[i] * cols + c[j]]))
            .collect(),
    )
}

fn dense_singular_values(a: &ComplexMatrix) -> Result<Vec<f64>> {
    if a.is_real() {
        Ok(raw_svd(a, false, |z| z.re)?.0.sigma)
    } else {
        Ok(raw_svd(a, false, |z| z)?.0.sigma)
    }
}

/// Completes `basis` (orthonormal columns, some possibly missing) so that
/// every slot holds a unit vector orthogonal to all others.
fn complete_orthonormal(basis: &mut [Option<Vec<C64>>], dim: usize) {
    let mut candidate = 0;
    for slot in 0..basis.len() {
        if basis[slot].is_some() {
            continue;
        }
        loop {
            assert!(candidate < dim, "ran out of basis candidates");
            let mut v: Vec<C64> =
                (0..dim).map(|i| if i == candidate { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) }).collect();
            candidate += 1;
            // two passes of Gram-Schmidt for stability
            for _ in 0..2 {
                for u in basis.iter().flatten() {
                    let proj: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                    for (x, y) in v.iter_mut().zip(u) {
                        *x -= proj * y;
                    }
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-6 {
                basis[slot] = Some(v.into_iter().map(|z| z / norm).collect());
                break;
            }
        }
    }
}

fn finish<T: JacobiScalar>(raw: RawSvd<T>, transposed: bool, shape: (usize, usize)) -> SvdResult {
    let k = raw.sigma.len();
    let tall_rows = raw.cols.first().map_or(0, |c| c.len());
    // Columns the sweep skipped as roundoff residue were never orthogonalised,
    // so their directions are replaced by a completion of the others.
    let frob = raw.sigma.iter().map(|s| s * s).sum::<f64>().sqrt();
    let cutoff = (tall_rows.max(k) as f64) * f64::EPSILON * frob;
    let mut left: Vec<Option<Vec<C64>>> = raw
        .cols
        .iter()
        .zip(&raw.sigma)
        .map(|(col, &s)| (s > cutoff && s > 0.0).then(|| col.iter().map(|x| x.to_c64() / s).collect()))
        .collect();
    complete_orthonormal(&mut left, tall_rows);
    let right: Vec<Vec<C64>> =
        raw.vecs.expect("vectors requested").into_iter().map(|v| v.into_iter().map(|x| x.to_c64()).collect()).collect();
    let left: Vec<Vec<C64>> = left.into_iter().map(|v| v.expect("completed")).collect();
    // For the transposed problem A* = U' Σ V'*, so A = V' Σ U'*.
    let (u_cols, v_cols) = if transposed { (right, left) } else { (left, right) };
    let (r, c) = shape;
    SvdResult {
        singular_values: raw.sigma,
        left_vectors: ComplexMatrix::from_fn(r, k, |i, j| u_cols[j][i]),
        right_vectors: ComplexMatrix::from_fn(c, k, |i, j| v_cols[j][i]),
    }
}

/// Full thin SVD. Deterministic for a fixed input.
pub fn svd(a: &ComplexMatrix) -> Result<SvdResult> {
    if a.is_real() {
        let (raw, t) = raw_svd(a, true, |z| z.re)?;
        Ok(finish(raw, t, a.shape()))
    } else {
        let (raw, t) = raw_svd(a, true, |z| z)?;
        Ok(finish(raw, t, a.shape()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orthonormal_columns(m: &ComplexMatrix, tol: f64) -> bool {
        let g = m.adjoint().matmul(m).unwrap();
        g.approx_eq(&ComplexMatrix::identity(m.cols()), tol)
    }

    #[test]
    fn diagonal_case() {
        let a = ComplexMatrix::diag(&[3.0, -1.0]);
        let s = svd(&a).unwrap();
        assert!((s.singular_values[0] - 3.0).abs() < 1e-14);
        assert!((s.singular_values[1] - 1.0).abs() < 1e-14);
        assert!(s.reconstruct().approx_eq(&a, 1e-13));
    }

    #[test]
    fn matrix_unit_has_one_nonzero_value() {
        let a = ComplexMatrix::unit(2, 2, 0, 1);
        let s = svd(&a).unwrap();
        assert_eq!(s.singular_values, vec![1.0, 0.0]);
        assert!(orthonormal_columns(&s.left_vectors, 1e-14));
        assert!(orthonormal_columns(&s.right_vectors, 1e-14));
        assert!(s.reconstruct().approx_eq(&a, 1e-14));
    }

    #[test]
    fn wide_complex_matrix() {
        let a = ComplexMatrix::from_fn(2, 4, |i, j| C64::new((i + 2 * j) as f64, (i as f64) - (j as f64) * 0.5));
        let s = svd(&a).unwrap();
        assert_eq!(s.left_vectors.shape(), (2, 2));
        assert_eq!(s.right_vectors.shape(), (4, 2));
        assert!(orthonormal_columns(&s.left_vectors, 1e-12));
        assert!(orthonormal_columns(&s.right_vectors, 1e-12));
        assert!(s.reconstruct().approx_eq(&a, 1e-12));
    }

    #[test]
    fn rank_deficient_vectors_stay_orthonormal() {
        for t in 0..200u64 {
            let (r, c) = (2 + (t % 3) as usize, 2 + (t / 3 % 3) as usize);
            let a = crate::linalg::sample_gaussian_matrix(
                r,
                1,
                crate::linalg::GaussianKind::Complex,
                &crate::linalg::SeedSpec::new(t, 0),
            )
            .unwrap()
            .matmul(
                &crate::linalg::sample_gaussian_matrix(
                    1,
                    c,
                    crate::linalg::GaussianKind::Complex,
                    &crate::linalg::SeedSpec::new(t, 1),
                )
                .unwrap(),
            )
            .unwrap();
            let s = svd(&a).unwrap();
            assert!(orthonormal_columns(&s.left_vectors, 1e-12), "left, t = {t}");
            assert!(orthonormal_columns(&s.right_vectors, 1e-12), "right, t = {t}");
            assert!(s.reconstruct().approx_eq(&a, 1e-12));
        }
    }

    #[test]
    fn zero_matrix() {
        let a = ComplexMatrix::zeros(3, 2);
        let s = svd(&a).unwrap();
        assert_eq!(s.singular_values, vec![0.0, 0.0]);
        assert!(orthonormal_columns(&s.left_vectors, 1e-14));
    }

    #[test]
    fn split_matches_dense() {
        // Two interleaved blocks plus a zero row, 17x16.
        let a = ComplexMatrix::from_fn(17, 16, |i, j| {
            if i == 16 || (i + j) % 2 == 1 {
                C64::new(0.0, 0.0)
            } else {
                C64::new(((i * 7 + j * 3) % 11) as f64 - 5.0, (i as f64 - j as f64) * 0.25)
            }
        });
        assert_eq!(split_components(&a).unwrap().len(), 2);
        let fast = singular_values(&a).unwrap();
        let dense = dense_singular_values(&a).unwrap();
        assert_eq!(fast.len(), dense.len());
        for (x, y) in fast.iter().zip(&dense) {
            assert!((x - y).abs() < 1e-10 * dense[0], "{x} vs {y}");
        }
        let perm = ComplexMatrix::from_fn(20, 20, |i, j| {
            if j == (3 * i) % 20 {
                C64::new(1.0 + i as f64, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        assert_eq!(singular_values(&perm).unwrap()[0], 20.0);
    }
}
