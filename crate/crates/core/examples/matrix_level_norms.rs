//! Matrix-level norms of one element in each Hilbertian operator space,
//! with the certification that comes with each value.
//!
//! `cargo run --example matrix_level_norms`

use opct::linalg::{sample_gaussian_matrix, GaussianKind};
use opct::opspace::{matrix_level_norm_detailed, AscentConfig, Family, SpaceDescriptor, VVElement};
use opct::SeedSpec;

fn main() -> opct::Result<()> {
    let n = 3;
    let blocks = (0..n)
        .map(|k| sample_gaussian_matrix(2, 2, GaussianKind::Complex, &SeedSpec::new(11, k as u64)))
        .collect::<opct::Result<Vec<_>>>()?;
    let x = VVElement::linear(blocks)?;
    let cfg = AscentConfig::default();
    for family in [Family::Row, Family::Col, Family::Oh, Family::RCapC, Family::RPlusC, Family::MinL2] {
        let v = matrix_level_norm_detailed(&SpaceDescriptor::new(family, n)?, &x, &cfg)?;
        println!("{:<8} {:.6}  ({})", format!("{family:?}"), v.value, v.label());
    }
    Ok(())
}
