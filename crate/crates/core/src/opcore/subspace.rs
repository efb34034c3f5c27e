//! Finite-dimensional subspaces of matrix space, held as orthonormal bases
//! of vectorized matrices. Used for span containments and dimension counts.

use crate::opcore::matrix::{ComplexMatrix, C64, ZERO};

/// A complex subspace of `C^N` with an orthonormal basis.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<C64>>,
}

impl Subspace {
    pub fn empty(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new() }
    }

    /// Span of `vectors`, dropping any vector whose component orthogonal to
    /// the span so far is below `rel_tol` times its own norm.
    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = Vec<C64>>, rel_tol: f64) -> Self {
        let mut s = Self::empty(ambient);
        for v in vectors {
            s.push(v, rel_tol);
        }
        s
    }

    /// Complex span of matrices.
    pub fn of_matrices<'a>(mats: impl IntoIterator<Item = &'a ComplexMatrix>, rel_tol: f64) -> Self {
        let mut it = mats.into_iter().peekable();
        let ambient = it.peek().map(|m| m.rows() * m.cols()).unwrap_or(0);
        Self::span(ambient, it.map(|m| m.data().to_vec()), rel_tol)
    }

    /// Real span of matrices, via the embedding `A ↦ (Re A, Im A)`.
    pub fn real_span_of_matrices<'a>(mats: impl IntoIterator<Item = &'a ComplexMatrix>, rel_tol: f64) -> Self {
        let mut it = mats.into_iter().peekable();
        let ambient = it.peek().map(|m| 2 * m.rows() * m.cols()).unwrap_or(0);
        Self::span(ambient, it.map(real_embedding), rel_tol)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Adds `v` if it is independent of the current basis; returns whether
    /// the dimension grew.
    pub fn push(&mut self, v: Vec<C64>, rel_tol: f64) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length does not match ambient dimension");
        let norm0 = l2(&v);
        if norm0 == 0.0 {
            return false;
        }
        let mut w = v;
        // Two Gram-Schmidt passes keep orthogonality at working precision.
        for _ in 0..2 {
            for b in &self.basis {
                let c: C64 = b.iter().zip(&w).map(|(x, y)| x.conj() * y).sum();
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= c * bi;
                }
            }
        }
        let norm = l2(&w);
        if norm <= rel_tol * norm0 {
            return false;
        }
        for wi in w.iter_mut() {
            *wi /= norm;
        }
        self.basis.push(w);
        true
    }

    /// Euclidean distance from `v` to the subspace.
    pub fn residual(&self, v: &[C64]) -> f64 {
        let mut w = v.to_vec();
        for _ in 0..2 {
            for b in &self.basis {
                let c: C64 = b.iter().zip(&w).map(|(x, y)| x.conj() * y).sum();
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= c * bi;
                }
            }
        }
        l2(&w)
    }

    pub fn matrix_residual(&self, m: &ComplexMatrix) -> f64 {
        self.residual(m.data())
    }

    pub fn real_matrix_residual(&self, m: &ComplexMatrix) -> f64 {
        self.residual(&real_embedding(m))
    }

    /// Span of `self ∪ other`.
    pub fn sum(&self, other: &Self, rel_tol: f64) -> Self {
        let mut s = self.clone();
        for v in &other.basis {
            s.push(v.clone(), rel_tol);
        }
        s
    }

    /// `dim(self ∩ other)` from `dim A + dim B − dim(A + B)`.
    pub fn intersection_dim(&self, other: &Self, rel_tol: f64) -> usize {
        self.dim() + other.dim() - self.sum(other, rel_tol).dim()
    }
}

/// `A ↦ (Re a_11, …, Re a_nn, Im a_11, …)` as a complex vector with zero
/// imaginary parts, so real spans can reuse the complex machinery.
pub fn real_embedding(m: &ComplexMatrix) -> Vec<C64> {
    let d = m.data();
    d.iter().map(|z| C64::new(z.re, 0.0)).chain(d.iter().map(|z| C64::new(z.im, 0.0))).collect()
}

fn l2(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Matrix unit `E_{rc}` of size `n`.
pub fn matrix_unit(n: usize, r: usize, c: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |i, j| if i == r && j == c { C64::new(1.0, 0.0) } else { ZERO })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opcore::matrix::I;

    #[test]
    fn dimensions_and_residuals() {
        let e = |r, c| matrix_unit(2, r, c);
        let upper = Subspace::of_matrices([&e(0, 0), &e(0, 1), &e(1, 1)], 1e-10);
        let lower = Subspace::of_matrices([&e(0, 0), &e(1, 0), &e(1, 1)], 1e-10);
        assert_eq!(upper.dim(), 3);
        assert_eq!(upper.sum(&lower, 1e-10).dim(), 4);
        assert_eq!(upper.intersection_dim(&lower, 1e-10), 2);
        assert!(upper.matrix_residual(&e(1, 0)) > 0.99);
        assert!(upper.matrix_residual(&e(0, 1).scale(I)) < 1e-15);
    }

    #[test]
    fn real_span_distinguishes_i() {
        let a = matrix_unit(2, 0, 1);
        let s = Subspace::real_span_of_matrices([&a], 1e-10);
        assert!(s.real_matrix_residual(&a.scale_real(3.0)) < 1e-14);
        assert!(s.real_matrix_residual(&a.scale(I)) > 0.99);
    }
}
