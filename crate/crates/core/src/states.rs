//! Self-adjoint normal functionals on the full matrix algebra, represented
//! by their densities: `φ(x) = Tr(ρx)`.

use crate::error::{LeafError, Result};
use crate::opcore::matrix::{ComplexMatrix, UNITARY_TOL};
use crate::opcore::{hermitian_eigen, spectral_decompose_default, HermitianEigen};

/// Commutator and conjugation residuals at or below this count as zero.
pub const COMMUTE_TOL: f64 = 1e-9;

/// A self-adjoint functional given by its Hermitian density `ρ`.
#[derive(Debug, Clone)]
pub struct DensityFunctional {
    rho: ComplexMatrix,
    herm_tol: f64,
}

impl DensityFunctional {
    /// Density with the default Hermiticity tolerance `1e-10`.
    pub fn new(rho: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(rho, 1e-10)
    }

    pub fn with_tolerance(rho: ComplexMatrix, herm_tol: f64) -> Result<Self> {
        rho.order()?;
        let residual = rho.hermitian_defect();
        if residual > herm_tol * rho.frobenius_norm().max(1.0) {
            return Err(LeafError::NotHermitian { residual });
        }
        Ok(Self { rho: rho.hermitian_part(), herm_tol })
    }

    pub fn rho(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub fn herm_tol(&self) -> f64 {
        self.herm_tol
    }

    pub fn order(&self) -> usize {
        self.rho.rows()
    }

    /// `φ(x) = Tr(ρx)`.
    pub fn evaluate(&self, x: &ComplexMatrix) -> crate::C64 {
        (&self.rho * x).trace()
    }

    fn eigen(&self) -> HermitianEigen {
        hermitian_eigen(&self.rho).expect("density is Hermitian by construction")
    }

    /// Eigendecomposition, rejecting densities with an eigenvalue below
    /// `−1e-10 · max(1, ‖ρ‖₂)`.
    fn positive_eigen(&self) -> Result<HermitianEigen> {
        let eig = self.eigen();
        let min = eig.values.first().copied().unwrap_or(0.0);
        let scale = spectral_radius(&eig).max(1.0);
        if min < -1e-10 * scale {
            return Err(LeafError::NotPositive { min_eigenvalue: min });
        }
        Ok(eig)
    }
}

fn spectral_radius(eig: &HermitianEigen) -> f64 {
    eig.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

/// Projection onto the eigenvectors selected by `keep`.
fn projection_where(eig: &HermitianEigen, keep: impl Fn(f64) -> bool) -> ComplexMatrix {
    let n = eig.vectors.rows();
    let mut p = ComplexMatrix::zeros(n, n);
    for (k, &lambda) in eig.values.iter().enumerate() {
        if keep(lambda) {
            let v = eig.vectors.col(k);
            p += &ComplexMatrix::outer(&v, &v);
        }
    }
    p
}

/// Support projection of a positive functional: the range projection of
/// `ρ`, keeping eigenvalues above `1e-10 · ‖ρ‖₂`.
pub fn support_projection(phi: &DensityFunctional) -> Result<ComplexMatrix> {
    let eig = phi.positive_eigen()?;
    let thr = 1e-10 * spectral_radius(&eig);
    Ok(projection_where(&eig, |l| l > thr))
}

/// Orthonormal basis (as columns) of the support subspace.
fn support_basis(eig: &HermitianEigen) -> ComplexMatrix {
    let thr = 1e-10 * spectral_radius(eig);
    let cols: Vec<usize> = (0..eig.values.len()).filter(|&k| eig.values[k] > thr).collect();
    ComplexMatrix::from_fn(eig.vectors.rows(), cols.len().max(1), |r, c| {
        if cols.is_empty() {
            crate::opcore::matrix::ZERO
        } else {
            eig.vectors[(r, cols[c])]
        }
    })
}

/// `φ = φ₁ − φ₂` with `φ₁, φ₂ ≥ 0` and orthogonal supports.
#[derive(Debug, Clone)]
pub struct JordanPair {
    pub positive_part: ComplexMatrix,
    pub negative_part: ComplexMatrix,
    pub support_pos: ComplexMatrix,
    pub support_neg: ComplexMatrix,
}

impl JordanPair {
    pub fn reconstruct(&self) -> ComplexMatrix {
        &self.positive_part - &self.negative_part
    }
}

/// Jordan decomposition from the spectral split of `ρ`: `ρ₁` collects the
/// positive eigenvalues, `ρ₂` the negated negative ones.
pub fn jordan_decompose(phi: &DensityFunctional) -> JordanPair {
    let eig = phi.eigen();
    let n = phi.order();
    let thr = 1e-10 * spectral_radius(&eig);
    let mut positive_part = ComplexMatrix::zeros(n, n);
    let mut negative_part = ComplexMatrix::zeros(n, n);
    for (k, &lambda) in eig.values.iter().enumerate() {
        let v = eig.vectors.col(k);
        let vv = ComplexMatrix::outer(&v, &v);
        if lambda > 0.0 {
            positive_part += &vv.scale_real(lambda);
        } else if lambda < 0.0 {
            negative_part += &vv.scale_real(-lambda);
        }
    }
    JordanPair {
        positive_part,
        negative_part,
        support_pos: projection_where(&eig, |l| l > thr),
        support_neg: projection_where(&eig, |l| l < -thr),
    }
}

/// Faithful iff the smallest eigenvalue of `ρ ≥ 0` exceeds `tol`.
pub fn is_faithful(phi: &DensityFunctional, tol: f64) -> Result<bool> {
    let eig = phi.positive_eigen()?;
    Ok(eig.values.first().is_some_and(|&m| m > tol))
}

/// Basis of the centralizer `{a : aρ = ρa}`: all matrix units inside each
/// eigenvalue block of `ρ`, written in the eigenbasis and mapped back.
/// Its complex dimension is `Σ m_i²`.
pub fn centralizer_basis(phi: &DensityFunctional) -> Result<Vec<ComplexMatrix>> {
    let spec = spectral_decompose_default(&phi.rho)?;
    let mut out = Vec::with_capacity(spec.commutant_dimension());
    for i in 0..spec.cluster_count() {
        for a in spec.offsets[i]..spec.offsets[i + 1] {
            for b in spec.offsets[i]..spec.offsets[i + 1] {
                out.push(ComplexMatrix::outer(&spec.basis.col(a), &spec.basis.col(b)));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CentralizerBlockCheck {
    pub in_centralizer: bool,
    pub commutes_with_support: bool,
    pub corner_in_corner_centralizer: bool,
}

impl CentralizerBlockCheck {
    /// `u ∈ centralizer ⇔ (pu = up ∧ pup in the corner centralizer)`.
    pub fn equivalence_holds(&self) -> bool {
        self.in_centralizer == (self.commutes_with_support && self.corner_in_corner_centralizer)
    }
}

/// Tests a unitary against the centralizer of a positive functional both
/// directly and through its block form relative to the support `p`: the
/// corner test compresses `u` and `ρ` to the support subspace and asks
/// that the compressed `u` be a unitary commuting with the compressed `ρ`.
pub fn centralizer_block_check(phi: &DensityFunctional, u: &ComplexMatrix) -> Result<CentralizerBlockCheck> {
    phi.rho.ensure_same_order(u)?;
    u.ensure_unitary()?;
    let eig = phi.positive_eigen()?;
    let rho = &phi.rho;
    let in_centralizer = (u * rho - rho * u).norm2() <= COMMUTE_TOL;

    let thr = 1e-10 * spectral_radius(&eig);
    let p = projection_where(&eig, |l| l > thr);
    let commutes_with_support = (u * &p - &p * u).norm2() <= COMMUTE_TOL;

    let corner_in_corner_centralizer = if p.frobenius_norm() == 0.0 {
        true
    } else {
        let b = support_basis(&eig);
        let u_p = u.compress(&b);
        let rho_p = rho.compress(&b);
        u_p.unitary_defect() <= UNITARY_TOL && (&u_p * &rho_p - &rho_p * &u_p).norm2() <= COMMUTE_TOL
    };
    Ok(CentralizerBlockCheck { in_centralizer, commutes_with_support, corner_in_corner_centralizer })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JordanIntersectionCheck {
    pub fixes_phi: bool,
    pub fixes_pos: bool,
    pub fixes_neg: bool,
}

impl JordanIntersectionCheck {
    /// `u` fixes `φ` iff it fixes both Jordan parts.
    pub fn equivalence_holds(&self) -> bool {
        self.fixes_phi == (self.fixes_pos && self.fixes_neg)
    }
}

/// Whether `Ad(u)*` fixes `φ`, `φ₁` and `φ₂`, each tested as
/// `‖u*σu − σ‖₂ ≤ 1e-9`.
pub fn jordan_intersection_check(phi: &DensityFunctional, u: &ComplexMatrix) -> Result<JordanIntersectionCheck> {
    phi.rho.ensure_same_order(u)?;
    u.ensure_unitary()?;
    let jp = jordan_decompose(phi);
    let fixes = |sigma: &ComplexMatrix| (&sigma.conjugate_by(u) - sigma).norm2() <= COMMUTE_TOL;
    Ok(JordanIntersectionCheck {
        fixes_phi: fixes(&phi.rho),
        fixes_pos: fixes(&jp.positive_part),
        fixes_neg: fixes(&jp.negative_part),
    })
}

/// `‖s(u*ρu) − u* s(ρ) u‖₂` for a positive functional.
pub fn support_equivariance_check(phi: &DensityFunctional, u: &ComplexMatrix) -> Result<f64> {
    phi.rho.ensure_same_order(u)?;
    u.ensure_unitary()?;
    let p = support_projection(phi)?;
    let moved = DensityFunctional::with_tolerance(phi.rho.conjugate_by(u), phi.herm_tol.max(1e-9))?;
    let q = support_projection(&moved)?;
    Ok((&q - &p.conjugate_by(u)).norm2())
}
