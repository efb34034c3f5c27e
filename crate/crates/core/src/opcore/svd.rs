//! One-sided (Hestenes) Jacobi SVD.
//!
//! Columns of a working copy of `A` are orthogonalized pairwise by complex
//! Jacobi rotations accumulated into `V`; at convergence the column norms
//! are the singular values and `A V = U Σ`. Small singular values come out
//! with absolute accuracy near `ε·s₁`, which is what the rank and nullity
//! tests in this crate rely on.

use crate::opcore::matrix::{ComplexMatrix, C64, ZERO};

const MAX_SWEEPS: usize = 80;

/// Thin SVD `A = U · diag(s) · V*` with `s` descending.
#[derive(Debug, Clone)]
pub struct Svd {
    /// `rows x k` with orthonormal columns where `s > 0`.
    pub u: ComplexMatrix,
    pub s: Vec<f64>,
    /// `cols x k`, orthonormal columns.
    pub v: ComplexMatrix,
}

/// Singular values of any matrix, descending, length `min(rows, cols)`.
pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    svd(a).s
}

/// Thin SVD of an arbitrary matrix.
pub fn svd(a: &ComplexMatrix) -> Svd {
    if a.rows() >= a.cols() {
        tall_svd(a)
    } else {
        let t = tall_svd(&a.adjoint());
        Svd { u: t.v, s: t.s, v: t.u }
    }
}

fn tall_svd(a: &ComplexMatrix) -> Svd {
    let m = a.rows();
    let n = a.cols();
    // Column-major working storage keeps the inner loops contiguous.
    let mut w: Vec<Vec<C64>> = (0..n).map(|c| a.col(c)).collect();
    let mut v: Vec<Vec<C64>> = (0..n)
        .map(|c| (0..n).map(|r| if r == c { C64::new(1.0, 0.0) } else { ZERO }).collect())
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..n {
            for j in (i + 1)..n {
                let alpha: f64 = w[i].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = w[j].iter().map(|z| z.norm_sqr()).sum();
                let gamma: C64 = w[i].iter().zip(&w[j]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g == 0.0 || g <= 1e-15 * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let pc = phase.conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                rotate_pair(&mut w, i, j, c, s, pc);
                rotate_pair(&mut v, i, j, c, s, pc);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = w.iter().map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| norms[y].total_cmp(&norms[x]));

    let s: Vec<f64> = order.iter().map(|&k| norms[k]).collect();
    let u = ComplexMatrix::from_fn(m, n, |r, c| {
        let k = order[c];
        if norms[k] > 0.0 {
            w[k][r] / norms[k]
        } else {
            ZERO
        }
    });
    let v = ComplexMatrix::from_fn(n, n, |r, c| v[order[c]][r]);
    Svd { u, s, v }
}

fn rotate_pair(cols: &mut [Vec<C64>], i: usize, j: usize, c: f64, s: f64, pc: C64) {
    let (left, right) = cols.split_at_mut(j);
    let ci = &mut left[i];
    let cj = &mut right[0];
    for (x, y) in ci.iter_mut().zip(cj.iter_mut()) {
        let a = *x;
        let b = *y;
        *x = a * c - b * pc * s;
        *y = a * s + b * pc * c;
    }
}

/// Numerical rank: count of singular values above `rel_tol · s₁`.
pub fn rank(a: &ComplexMatrix, rel_tol: f64) -> usize {
    let s = singular_values(a);
    let top = s.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0;
    }
    s.iter().filter(|&&x| x > rel_tol * top).count()
}
