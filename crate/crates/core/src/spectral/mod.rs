//! Laplacians, eigensolvers, filter responses and graph Fourier analysis.

mod eigen;
mod filter;
mod laplacian;
mod theorem;

pub use eigen::{
    dense_eigendecomposition, dense_eigendecomposition_capped, dense_eigenvalues, extreme_eigenvalues,
    extreme_eigenvalues_with, gershgorin_upper, lanczos_extremes, EigenOptions, RitzValue, DEFAULT_DENSE_CAP,
};
pub use filter::{filter_coefficient, filter_response, spectral_coefficients, FilterCurve};
pub use laplacian::{augmented_scaled_adjacency, laplacian, scaled_adjacency};
pub use theorem::{
    null_vector_residual, spectrum_quantities, verify_spectrum_theorem, verify_spectrum_theorem_with,
    SpectrumReport, DEFAULT_THEOREM_TOL,
};
