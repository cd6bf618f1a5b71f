//! cb norms between interpolated row/column spaces through their Schatten
//! models, and the quotient bound on matrix units.
//!
//! `cargo run --example cb_models`

use opct::linalg::ComplexMatrix;
use opct::opspace::{
    c_bracket_index, cb_exponent, cb_exponent_uncalibrated, cb_norm_r_family, rncap_quotient_bound,
    sq_rp_diagonal_norm, sq_rp_exponent, VVElement,
};
use opct::Exponent;

fn main() -> opct::Result<()> {
    let n = 16;
    let eye = ComplexMatrix::identity(n);
    for p in [1.0, 4.0 / 3.0, 2.0] {
        let pp = Exponent::new(p)?.conjugate();
        let to = c_bracket_index(pp);
        println!(
            "identity R[{pp}] -> C[{pp}]: cb norm {:.4} (model S_{}, uncalibrated relation gives S_{})",
            cb_norm_r_family(&eye, pp, to)?,
            cb_exponent(pp, to),
            cb_exponent_uncalibrated(pp, to)
        );
    }
    for (p, q) in [(f64::INFINITY, 2.0), (4.0, 2.0), (4.0, 3.0)] {
        let (p, q) = (Exponent::new(p)?, Exponent::new(q)?);
        println!(
            "S_{q}(R[{p}]) diagonal: r = {}, norm at n = {n}: {:.4}",
            sq_rp_exponent(p, q)?,
            sq_rp_diagonal_norm(n, p, q)?
        );
    }
    for n in [2, 8, 32] {
        println!("quotient bound for (e_ij), n = {n}: {:.6}", rncap_quotient_bound(&VVElement::matrix_units(n))?);
    }
    Ok(())
}
