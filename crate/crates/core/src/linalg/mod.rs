//! Dense complex linear algebra and seeded randomness.

mod exponent;
mod matrix;
mod random;
mod schatten;
mod sum;
mod svd;

pub use exponent::{Exponent, ExtReal};
pub use matrix::{kron, reshape_grid, ComplexMatrix, C64};
pub use random::{random_unitary, sample_gaussian_matrix, sample_gaussian_vector, GaussianKind, SeedSpec};
pub use schatten::{approx_number, lp_norm, operator_norm, schatten_norm, schatten_norm_of_values};
pub use sum::{neumaier_sum, NeumaierSum};
pub use svd::{singular_values, svd, SvdResult, SVD_MAX_SWEEPS, SVD_TOL};
