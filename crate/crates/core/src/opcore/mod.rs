//! Dense complex-matrix kernel: spectral decomposition, singular values,
//! polar decomposition, exponentials and functional calculus.

pub mod calculus;
pub mod eigen;
pub mod matrix;
pub mod subspace;
pub mod svd;

pub use calculus::{function_calculus, hermitian_function, matrix_exp, polar_decompose, PolarFactors};
pub use eigen::{
    default_cluster_tol, hermitian_eigen, spectral_decompose, spectral_decompose_default, HermitianEigen,
    SpectralData,
};
pub use matrix::{ComplexMatrix, C64};
pub use subspace::Subspace;
pub use svd::{rank, singular_values, svd, Svd};
