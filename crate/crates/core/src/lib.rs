//! Numerical laboratory for type and cotype constants of operator spaces.
//!
//! The crate is organised in layers:
//!
//! - [`linalg`]: dense complex matrices, one-sided Jacobi SVD, Schatten norms,
//!   approximation numbers, Kronecker/grid utilities and seeded sampling.
//! - [`opspace`]: matrix-level norms of concrete homogeneous Hilbertian
//!   operator spaces (R, C, OH, R∩C, R+C, min ℓ₂), vector-valued Schatten
//!   norms and the Schatten model of completely bounded maps between the
//!   R\[p\] family.
//! - [`gaussian`]: gaussian averages ℓ(u) and E‖Σ g_ij x_ij‖, witness ratios
//!   for the S_p-type / S_q-cotype constants and the Rademacher cube.
//! - [`cotype`]: approximation numbers of diagonal maps, ℓ_s(ℓ_r) sequence
//!   bounds, the quartic inequality and the cotype criterion.
//! - [`harness`]: the claims registry, log-log slope fitting, the experiment
//!   runner and report emission used by the `opct` binary.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cotype;
pub mod error;
pub mod gaussian;
pub mod harness;
pub mod linalg;
pub mod opspace;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, Exponent, SeedSpec};
