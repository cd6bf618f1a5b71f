//! Singular values, Schatten norms and approximation numbers of a small
//! complex matrix.
//!
//! `cargo run --example schatten_norms`

use opct::linalg::{approx_number, sample_gaussian_matrix, schatten_norm, svd, GaussianKind};
use opct::{Exponent, SeedSpec};

fn main() -> opct::Result<()> {
    let a = sample_gaussian_matrix(5, 4, GaussianKind::Complex, &SeedSpec::new(7, 0))?;
    let s = svd(&a)?;
    println!("singular values: {:.6?}", s.singular_values);
    let err = s.reconstruct().sub(&a)?.frobenius_norm() / a.frobenius_norm();
    println!("relative reconstruction error: {err:.2e}");

    for p in [1.0, 4.0 / 3.0, 2.0, 4.0, f64::INFINITY] {
        let p = Exponent::new(p)?;
        let tails: Vec<String> =
            (1..=4).map(|k| approx_number(&a, k, p).map(|v| format!("{v:.4}"))).collect::<opct::Result<_>>()?;
        println!("p = {p:<6} ‖A‖_p = {:.6}   a_k: {}", schatten_norm(&a, p)?, tails.join(" "));
    }
    Ok(())
}
