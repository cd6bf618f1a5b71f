//! Norms of grids of matrices: the Fubini identity for S_p(S_p), the
//! alternating ascent for M_m(S_p), and its p = 2 cross-check against the
//! OH formula.
//!
//! `cargo run --example vector_valued_schatten`

use opct::linalg::{sample_gaussian_matrix, GaussianKind};
use opct::opspace::{coefficient_matrices, fubini_norm, mm_spn_norm, oh_norm, AscentConfig, VVElement};
use opct::{Exponent, SeedSpec};

fn main() -> opct::Result<()> {
    for n in [2, 4, 8] {
        let units = VVElement::matrix_units(n);
        println!(
            "n = {n}: ‖(e_ij)‖ in S_1(S_1) = {:.3}, in S_4(S_4) = {:.3}",
            fubini_norm(&units, Exponent::ONE)?,
            fubini_norm(&units, Exponent::new(4.0)?)?
        );
    }

    let m = 3;
    let blocks = (0..m * m)
        .map(|k| sample_gaussian_matrix(2, 2, GaussianKind::Complex, &SeedSpec::new(5, k as u64)))
        .collect::<opct::Result<Vec<_>>>()?;
    let y = VVElement::grid(m, blocks)?;
    let cfg = AscentConfig::default().with_restarts(20);
    for p in [Exponent::ONE, Exponent::TWO, Exponent::new(4.0)?, Exponent::INF] {
        let est = mm_spn_norm(&y, p, &cfg)?;
        println!("M_{m}(S_{p}): {:.6}  ({})", est.value, est.label());
    }
    println!("OH formula at p = 2: {:.6}", oh_norm(&coefficient_matrices(&y)?)?);
    Ok(())
}
