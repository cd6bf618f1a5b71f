//! Approximation numbers of diagonal maps, mixed sequence norms and the
//! inequalities behind the cotype criterion for the interpolated row family.

mod diagonal;
mod sequences;

pub use diagonal::{diag_approx_numbers, DiagonalMap};
pub use sequences::{
    check_triangular_bound, criterion_cotype_scp, lsr_norm, pi_q2_witness_ratio, quartic_inequality_margin,
    quartic_margin_raw, sharpness_profile, triangular_matrix, CotypeCriterion, BOUNDARY_TOL,
};
