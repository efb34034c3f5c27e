//! Hermitian eigendecomposition by cyclic complex Jacobi rotations, and the
//! clustered spectral resolution built from it.

use crate::error::{LeafError, Result};
use crate::opcore::matrix::{ComplexMatrix, C64};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues (ascending) and a unitary matrix whose columns are the
/// matching orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

/// Diagonalizes a Hermitian matrix. The input is checked, then its
/// Hermitian part is diagonalized so rounding asymmetry never leaks in.
pub fn hermitian_eigen(a: &ComplexMatrix) -> Result<HermitianEigen> {
    a.ensure_hermitian()?;
    Ok(jacobi_eigen(&a.hermitian_part()))
}

/// Jacobi iteration on an exactly Hermitian matrix.
pub(crate) fn jacobi_eigen(a: &ComplexMatrix) -> HermitianEigen {
    let n = a.rows();
    let mut m = a.clone();
    let mut v = ComplexMatrix::identity(n);
    let scale = m.frobenius_norm();

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| (0..n).filter(move |&q| q != p).map(move |q| (p, q)))
            .map(|(p, q)| m[(p, q)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|k| m[(k, k)].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let values = order.iter().map(|&k| diag[k]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    HermitianEigen { values, vectors }
}

/// One two-sided rotation annihilating `m[p][q]`.
fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let b = m[(p, q)];
    let r = b.norm();
    if r == 0.0 {
        return;
    }
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    // Skip rotations that would not change the diagonal at working precision.
    if r < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        m[(p, q)] = C64::new(0.0, 0.0);
        m[(q, p)] = C64::new(0.0, 0.0);
        return;
    }
    let phase = b / r;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let n = m.rows();
    let pc = phase.conj();

    // m <- m J with J = [[c, s],[-s e^{-iφ}, c e^{-iφ}]] on columns p, q.
    for k in 0..n {
        let mp = m[(k, p)];
        let mq = m[(k, q)];
        m[(k, p)] = mp * c - mq * pc * s;
        m[(k, q)] = mp * s + mq * pc * c;
        let vp = v[(k, p)];
        let vq = v[(k, q)];
        v[(k, p)] = vp * c - vq * pc * s;
        v[(k, q)] = vp * s + vq * pc * c;
    }
    // m <- J* m on rows p, q.
    for k in 0..n {
        let mp = m[(p, k)];
        let mq = m[(q, k)];
        m[(p, k)] = mp * c - mq * phase * s;
        m[(q, k)] = mp * s + mq * phase * c;
    }
    m[(p, p)] = C64::new(app - t * r, 0.0);
    m[(q, q)] = C64::new(aqq + t * r, 0.0);
    m[(p, q)] = C64::new(0.0, 0.0);
    m[(q, p)] = C64::new(0.0, 0.0);
}

/// Spectral resolution `A = Σ λ_i E_i` of a Hermitian matrix with
/// eigenvalues merged into clusters.
#[derive(Debug, Clone)]
pub struct SpectralData {
    /// Cluster representatives (means), ascending.
    pub eigenvalues: Vec<f64>,
    pub multiplicities: Vec<usize>,
    /// Orthogonal spectral projections, one per cluster.
    pub projections: Vec<ComplexMatrix>,
    pub cluster_tol: f64,
    /// Orthonormal eigenvectors as columns, grouped by cluster in ascending
    /// order; cluster `i` occupies columns `offsets[i]..offsets[i + 1]`.
    pub basis: ComplexMatrix,
    pub offsets: Vec<usize>,
}

impl SpectralData {
    pub fn order(&self) -> usize {
        self.basis.rows()
    }

    pub fn cluster_count(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Eigenvector columns of cluster `i`.
    pub fn block_basis(&self, i: usize) -> ComplexMatrix {
        self.basis.columns(self.offsets[i], self.offsets[i + 1])
    }

    /// Cluster index of each eigenvector column.
    pub fn cluster_of_column(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.order());
        for (i, &m) in self.multiplicities.iter().enumerate() {
            out.extend(std::iter::repeat_n(i, m));
        }
        out
    }

    /// `Σ λ_i E_i`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.order();
        let mut out = ComplexMatrix::zeros(n, n);
        for (lambda, e) in self.eigenvalues.iter().zip(&self.projections) {
            out += &e.scale_real(*lambda);
        }
        out
    }

    /// `Σ f(λ_i) E_i`.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.order();
        let mut out = ComplexMatrix::zeros(n, n);
        for (lambda, e) in self.eigenvalues.iter().zip(&self.projections) {
            out += &e.scale_real(f(*lambda));
        }
        out
    }

    /// Sum of squared multiplicities: the complex dimension of the commutant.
    pub fn commutant_dimension(&self) -> usize {
        self.multiplicities.iter().map(|m| m * m).sum()
    }
}

/// Default cluster tolerance `1e-8 · ‖A‖₂`.
pub fn default_cluster_tol(eigenvalues: &[f64]) -> f64 {
    1e-8 * eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

/// Spectral decomposition with the default cluster tolerance.
pub fn spectral_decompose_default(a: &ComplexMatrix) -> Result<SpectralData> {
    let eig = hermitian_eigen(a)?;
    let tol = default_cluster_tol(&eig.values);
    cluster(eig, tol)
}

/// Spectral decomposition of a Hermitian matrix, merging eigenvalues whose
/// consecutive gaps are at most `cluster_tol`. Gaps within a factor two of
/// the tolerance are rejected as ambiguous.
pub fn spectral_decompose(a: &ComplexMatrix, cluster_tol: f64) -> Result<SpectralData> {
    if cluster_tol.is_nan() || cluster_tol < 0.0 {
        return Err(LeafError::InvalidParameter(format!("cluster_tol = {cluster_tol}")));
    }
    let eig = hermitian_eigen(a)?;
    cluster(eig, cluster_tol)
}

fn cluster(eig: HermitianEigen, cluster_tol: f64) -> Result<SpectralData> {
    let HermitianEigen { values, vectors } = eig;
    let n = values.len();
    let mut offsets = vec![0];
    for k in 1..n {
        let gap = values[k] - values[k - 1];
        if gap > cluster_tol / 2.0 && gap <= 2.0 * cluster_tol {
            return Err(LeafError::ClusterAmbiguity { gap, cluster_tol });
        }
        if gap > cluster_tol {
            offsets.push(k);
        }
    }
    offsets.push(n);

    let mut eigenvalues = Vec::new();
    let mut multiplicities = Vec::new();
    let mut projections = Vec::new();
    for w in offsets.windows(2) {
        let (start, end) = (w[0], w[1]);
        let mean = values[start..end].iter().sum::<f64>() / (end - start) as f64;
        let block = vectors.columns(start, end);
        eigenvalues.push(mean);
        multiplicities.push(end - start);
        projections.push(&block * &block.adjoint());
    }
    Ok(SpectralData { eigenvalues, multiplicities, projections, cluster_tol, basis: vectors, offsets })
}

/// Groups ascending values into clusters separated by gaps larger than
/// `tol`, returning `(representative, multiplicity)` pairs.
pub fn cluster_values(sorted: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    let mut start = 0;
    for k in 1..=sorted.len() {
        if k == sorted.len() || sorted[k] - sorted[k - 1] > tol {
            let slice = &sorted[start..k];
            out.push((slice.iter().sum::<f64>() / slice.len() as f64, slice.len()));
            start = k;
        }
    }
    out
}
