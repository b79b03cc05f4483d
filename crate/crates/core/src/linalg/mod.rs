//! Small dense complex linear algebra.

mod eigen;
mod expm;
mod matrix;
mod state;

pub use eigen::{
    general_eigenvalues, hermitian_eigendecomposition, matrix_sqrt_psd, singular_values, HermitianEigen,
    HERMITIAN_TOL, MAX_SIDE, PSD_CLAMP,
};
pub use expm::matrix_exp;
pub use matrix::{c64, kron_all, local_operator, tensor_product, ComplexMatrix, C64};
pub use state::{partial_trace, DensityOperator, QuantumState, StateVector, NORM_TOL};
