//! Gaussian second moments: the Hilbertian closed form, Monte Carlo for
//! Schatten norms, and type and cotype witness ratios.
//!
//! `cargo run --release --example gaussian_averages`

use opct::gaussian::{gaussian_matrix_average, schatten_cotype_witness, schatten_type_witness, SchattenNorm};
use opct::opspace::VVElement;
use opct::{Exponent, SeedSpec};

fn main() -> opct::Result<()> {
    let seed = SeedSpec::new(2024, 0);
    for n in [16, 32, 64] {
        let est = gaussian_matrix_average(n, &SchattenNorm::square(n, Exponent::INF), 200, &seed)?;
        println!(
            "n = {n:>3}: E‖G‖²^½ / √n = {:.4} ± {:.4}",
            est.mean / (n as f64).sqrt(),
            est.stderr / (n as f64).sqrt()
        );
    }
    for n in [4, 8, 16] {
        let x = VVElement::matrix_units(n);
        let t = schatten_type_witness(&x, Exponent::ONE, 200, &seed)?;
        let c = schatten_cotype_witness(&x, Exponent::INF, 200, &seed)?;
        println!(
            "n = {n:>3}: type ratio (p = 1) {:.4} ± {:.4}, cotype ratio (q = ∞) {:.4} ± {:.4}",
            t.ratio, t.stderr, c.ratio, c.stderr
        );
    }
    Ok(())
}
