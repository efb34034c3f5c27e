//! Dense complex matrices stored row-major.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;

use crate::error::{LeafError, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// A dense `rows x cols` complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting bad shapes and
    /// non-finite values.
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(LeafError::Shape { rows, cols, len: data.len() });
        }
        if let Some(k) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(LeafError::NonFinite { row: k / cols, col: k % cols });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.data[k * n + k] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |r, c| if r == c { diag[r] } else { ZERO })
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |r, c| if r == c { C64::new(diag[r], 0.0) } else { ZERO })
    }

    /// Real matrix from nested rows. Panics on ragged input; meant for
    /// literals in tests and examples.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |r, c| C64::new(rows[r][c], 0.0))
    }

    /// Complex matrix from nested rows. Panics on ragged input.
    pub fn from_rows(rows: &[&[C64]]) -> Self {
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |r, c| rows[r][c])
    }

    /// Column vector.
    pub fn column(v: &[C64]) -> Self {
        Self::from_fn(v.len(), 1, |r, _| v[r])
    }

    /// `u v*` for column vectors given as slices.
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        Self::from_fn(u.len(), v.len(), |r, c| u[r] * v[c].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<C64> {
        self.data
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.data[r * self.cols + c]
    }

    pub fn col(&self, c: usize) -> Vec<C64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn diag(&self) -> Vec<C64> {
        (0..self.rows.min(self.cols)).map(|k| self.get(k, k)).collect()
    }

    /// Side length of a square matrix.
    pub fn order(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(LeafError::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| f(z)).collect() }
    }

    pub fn trace(&self) -> C64 {
        self.diag().into_iter().sum()
    }

    /// Frobenius norm, `sqrt(sum |a_ij|^2)`.
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Spectral norm (largest singular value).
    pub fn norm2(&self) -> f64 {
        crate::opcore::svd::singular_values(self).first().copied().unwrap_or(0.0)
    }

    /// Frobenius inner product `Tr(self* other)`, linear in `other`.
    pub fn inner(&self, other: &Self) -> C64 {
        self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum()
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// `u* · self · u`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        &(&u.adjoint() * self) * u
    }

    /// `‖A − A*‖_F`.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut acc = 0.0;
        for r in 0..n {
            for c in 0..n {
                acc += (self.get(r, c) - self.get(c, r).conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// `‖A + A*‖_F`.
    pub fn skew_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut acc = 0.0;
        for r in 0..n {
            for c in 0..n {
                acc += (self.get(r, c) + self.get(c, r).conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// `‖U*U − 1‖_F`.
    pub fn unitary_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        (&(&self.adjoint() * self) - &Self::identity(self.rows)).frobenius_norm()
    }

    /// Hermitian within `1e-10 · max(1, ‖A‖_F)`.
    pub fn is_hermitian(&self) -> bool {
        self.hermitian_defect() <= herm_tol(self)
    }

    pub fn is_skew_hermitian(&self) -> bool {
        self.skew_defect() <= herm_tol(self)
    }

    pub fn ensure_hermitian(&self) -> Result<()> {
        self.order()?;
        let residual = self.hermitian_defect();
        if residual <= herm_tol(self) {
            Ok(())
        } else {
            Err(LeafError::NotHermitian { residual })
        }
    }

    pub fn ensure_skew_hermitian(&self) -> Result<()> {
        self.order()?;
        let residual = self.skew_defect();
        if residual <= herm_tol(self) {
            Ok(())
        } else {
            Err(LeafError::NotSkewHermitian { residual })
        }
    }

    /// Unitary within `1e-9` (Frobenius residual of `U*U − 1`).
    pub fn ensure_unitary(&self) -> Result<()> {
        self.order()?;
        let residual = self.unitary_defect();
        if residual <= UNITARY_TOL {
            Ok(())
        } else {
            Err(LeafError::NotUnitary { residual })
        }
    }

    pub fn ensure_same_order(&self, other: &Self) -> Result<usize> {
        let n = self.order()?;
        let m = other.order()?;
        if n == m {
            Ok(n)
        } else {
            Err(LeafError::SizeMismatch { left: n, right: m })
        }
    }

    /// `(A + A*)/2`, used to scrub rounding asymmetry before decompositions.
    pub fn hermitian_part(&self) -> Self {
        let n = self.rows;
        Self::from_fn(n, n, |r, c| (self.get(r, c) + self.get(c, r).conj()) * 0.5)
    }

    /// `(A − A*)/2`.
    pub fn skew_part(&self) -> Self {
        let n = self.rows;
        Self::from_fn(n, n, |r, c| (self.get(r, c) - self.get(c, r).conj()) * 0.5)
    }

    /// `B* A B` for an `n x k` matrix `B`: compression onto the span of
    /// `B`'s columns, expressed in those coordinates.
    pub fn compress(&self, basis: &Self) -> Self {
        &(&basis.adjoint() * self) * basis
    }

    /// Columns `start..end` as a new matrix.
    pub fn columns(&self, start: usize, end: usize) -> Self {
        Self::from_fn(self.rows, end - start, |r, c| self.get(r, start + c))
    }
}

pub(crate) const UNITARY_TOL: f64 = 1e-9;

fn herm_tol(m: &ComplexMatrix) -> f64 {
    1e-10 * m.frobenius_norm().max(1.0)
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self.get(r, c);
                write!(f, "{:>10.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            let row = &self.data[r * self.cols..(r + 1) * self.cols];
            let dst = &mut out.data[r * rhs.cols..(r + 1) * rhs.cols];
            for (k, &a) in row.iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                let src = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (d, &b) in dst.iter_mut().zip(src) {
                    *d += a * b;
                }
            }
        }
        out
    }
}

impl Mul for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self * &rhs
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Add for ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self + &rhs
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Sub for ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self - &rhs
    }
}

impl AddAssign<&ComplexMatrix> for ComplexMatrix {
    fn add_assign(&mut self, rhs: &ComplexMatrix) {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl SubAssign<&ComplexMatrix> for ComplexMatrix {
    fn sub_assign(&mut self, rhs: &ComplexMatrix) {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.map(|z| -z)
    }
}

impl Neg for ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        -&self
    }
}
