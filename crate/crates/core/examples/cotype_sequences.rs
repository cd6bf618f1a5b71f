//! Sequence inequalities behind the cotype estimates: approximation numbers
//! of diagonal maps, the triangular-matrix bound, the quartic inequality and
//! the sharpness profile.
//!
//! `cargo run --example cotype_sequences`

use opct::cotype::{
    check_triangular_bound, criterion_cotype_scp, diag_approx_numbers, quartic_inequality_margin, quartic_margin_raw,
    sharpness_profile, DiagonalMap,
};
use opct::harness::fit_slope;
use opct::Exponent;

fn main() -> opct::Result<()> {
    let four = Exponent::new(4.0)?;
    let u = DiagonalMap::sorted(vec![0.3, 2.0, 1.0, 1.0, 0.5, 0.0])?;
    println!("u = {:?}", u.entries());
    println!("a_k(u) in S_4: {:.4?}", diag_approx_numbers(&u, four));
    for (r, s) in [(Exponent::INF, Exponent::TWO), (Exponent::TWO, Exponent::INF), (four, four)] {
        println!("triangular margin at (r, s) = ({r}, {s}): {:.6}", check_triangular_bound(&u, r, s)?);
    }
    println!("quartic margin: {:.6}", quartic_inequality_margin(&u));
    println!("quartic margin of the increasing list [0, 1]: {:.6}", quartic_margin_raw(&[0.0, 1.0]));

    for (p, q, s) in [(f64::INFINITY, 4.0, 4.0), (4.0, 2.0, 4.0), (f64::INFINITY, 2.0, 4.0)] {
        let c = criterion_cotype_scp(Exponent::new(p)?, Exponent::new(q)?, Exponent::new(s)?)?;
        println!("p = {p}, q = {q}, s = {s}: r = {}, satisfied = {}, margin {:.4}", c.r, c.satisfied, c.margin);
    }

    let dims: Vec<usize> = (4..=10).map(|k| 1 << k).collect();
    for (r, s) in [(four, Exponent::TWO), (four, four), (Exponent::INF, four)] {
        let fit = fit_slope(&sharpness_profile(&dims, r, s)?)?;
        println!(
            "sharpness (r, s) = ({r}, {s}): slope {:.4}, limit {:.4}",
            fit.slope,
            r.reciprocal() + s.reciprocal() - 0.5
        );
    }
    Ok(())
}
