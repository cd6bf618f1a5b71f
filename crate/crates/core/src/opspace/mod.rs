//! Operator-space norms on Hilbertian spaces and vector-valued Schatten
//! classes.

mod ascent;
mod cb;
mod element;
mod norms;
mod space;
mod vector_valued;

pub use ascent::{AscentConfig, Certainty, NormValue};
pub use cb::{
    c_bracket_index, cb_exponent, cb_exponent_uncalibrated, cb_norm_r_family, rncap_quotient_bound,
    sq_rp_diagonal_norm, sq_rp_exponent,
};
pub use element::{IndexShape, VVElement};
pub use norms::{
    col_norm, matrix_level_norm, matrix_level_norm_detailed, minl2_norm, oh_norm, rcapc_norm, row_norm, rplusc_norm,
    s2_min_tensor_norm,
};
pub use space::{Family, SpaceDescriptor};
pub use vector_valued::{
    coefficient_matrices, fubini_norm, mm_spn_norm, row_valued_sinf_norm, s2_oh_norm, SpnEstimate,
};
