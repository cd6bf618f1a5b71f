//! Exact averages over the Rademacher cube and the reproducing function f.
//!
//! `cargo run --example rademacher_cube`

use opct::gaussian::{
    check_f_properties, gaussian_grid_average, rademacher_grid_average, RademacherCube, SchattenNorm,
};
use opct::linalg::{sample_gaussian_matrix, GaussianKind};
use opct::opspace::VVElement;
use opct::{Exponent, SeedSpec};

fn main() -> opct::Result<()> {
    for n in 1..=3 {
        let cube = RademacherCube::build(n)?;
        let rep = check_f_properties(&cube)?;
        println!(
            "n = {n}: {} points, ‖f(t,·)‖₁ = 1: {}, reproduces r_ij: {}, quotient {:.4}",
            rep.points, rep.l1_unit, rep.reproduces_r, rep.quotient_bound
        );
        let blocks = (0..n * n)
            .map(|k| sample_gaussian_matrix(2, 2, GaussianKind::Complex, &SeedSpec::new(3, k as u64)))
            .collect::<opct::Result<Vec<_>>>()?;
        let x = VVElement::grid(n, blocks)?;
        let norm = SchattenNorm::square(2, Exponent::INF);
        let rad = rademacher_grid_average(&x, &norm, &cube)?;
        let g = gaussian_grid_average(&x, &norm, 400, &SeedSpec::new(4, n as u64))?;
        println!("       Rademacher {rad:.4} vs gaussian {:.4} ± {:.4}", g.mean, g.stderr);
    }
    Ok(())
}
