//! Polar decomposition, the exponential of skew-Hermitian matrices and the
//! continuous functional calculus of Hermitian matrices.

use crate::error::{LeafError, Result};
use crate::opcore::eigen::{hermitian_eigen, jacobi_eigen};
use crate::opcore::matrix::{ComplexMatrix, C64, I};
use crate::opcore::svd::svd;

/// `A = X · Q` with `X` unitary and `Q = (A*A)^{1/2}`.
#[derive(Debug, Clone)]
pub struct PolarFactors {
    pub unitary_part: ComplexMatrix,
    pub positive_part: ComplexMatrix,
    /// Smallest singular value of the input.
    pub min_singular_value: f64,
}

/// Polar decomposition of a square matrix whose smallest singular value
/// exceeds `invertibility_tol`. Computed from the SVD `A = U Σ V*` as
/// `X = U V*`, `Q = V Σ V*`.
pub fn polar_decompose(a: &ComplexMatrix, invertibility_tol: f64) -> Result<PolarFactors> {
    a.order()?;
    let d = svd(a);
    let min_sv = d.s.last().copied().unwrap_or(0.0);
    if min_sv <= invertibility_tol {
        return Err(LeafError::NearSingular { min_sv, tol: invertibility_tol });
    }
    let unitary_part = &d.u * &d.v.adjoint();
    let vs = ComplexMatrix::from_fn(d.v.rows(), d.v.cols(), |r, c| d.v[(r, c)] * d.s[c]);
    let positive_part = (&vs * &d.v.adjoint()).hermitian_part();
    Ok(PolarFactors { unitary_part, positive_part, min_singular_value: min_sv })
}

/// `exp(A)` for skew-Hermitian `A`, through the eigendecomposition of the
/// Hermitian matrix `−iA`.
pub fn matrix_exp(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.ensure_skew_hermitian()?;
    let h = a.scale(-I).hermitian_part();
    let eig = jacobi_eigen(&h);
    let phases: Vec<C64> = eig.values.iter().map(|&t| C64::from_polar(1.0, t)).collect();
    Ok(spectral_sum(&eig.vectors, &phases))
}

/// `f(A) = Σ f(λ_i) E_i` for `0 ≤ A ≤ 1`. Eigenvalues within `1e-10` of
/// the interval are clamped into it before `f` is applied.
pub fn function_calculus(a: &ComplexMatrix, f: impl Fn(f64) -> f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eigen(a)?;
    let min = eig.values.first().copied().unwrap_or(0.0);
    let max = eig.values.last().copied().unwrap_or(0.0);
    if min < -1e-10 || max > 1.0 + 1e-10 {
        return Err(LeafError::SpectrumOutOfRange { min, max });
    }
    let vals: Vec<C64> = eig.values.iter().map(|&t| C64::new(f(t.clamp(0.0, 1.0)), 0.0)).collect();
    Ok(spectral_sum(&eig.vectors, &vals).hermitian_part())
}

/// `f(A)` for any Hermitian `A` and real `f`, eigenvalue by eigenvalue.
pub fn hermitian_function(a: &ComplexMatrix, f: impl Fn(f64) -> f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eigen(a)?;
    let vals: Vec<C64> = eig.values.iter().map(|&t| C64::new(f(t), 0.0)).collect();
    Ok(spectral_sum(&eig.vectors, &vals).hermitian_part())
}

/// `V · diag(d) · V*`.
pub(crate) fn spectral_sum(v: &ComplexMatrix, d: &[C64]) -> ComplexMatrix {
    let vd = ComplexMatrix::from_fn(v.rows(), v.cols(), |r, c| v[(r, c)] * d[c]);
    &vd * &v.adjoint()
}
