//! Gaussian and Rademacher averages, and type/cotype witness ratios.

mod cube;
mod estimate;
mod norm;
mod witness;

pub use cube::{
    check_f_properties, f_witness, rademacher_grid_average, CubeMethod, FReport, FWitness, RademacherCube, MAX_CUBE_N,
};
pub use estimate::{ell_norm, gaussian_average, gaussian_grid_average, gaussian_matrix_average, MonteCarloEstimate};
pub use norm::{BanachNorm, EuclideanNorm, SchattenNorm, SupNorm};
pub use witness::{
    cotype_lower_bound, schatten_cotype_witness, schatten_type_witness, type_lower_bound, Provenance, WitnessRatio,
};
