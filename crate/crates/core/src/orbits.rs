//! Coadjoint orbits of the unitary group.
//!
//! At matrix scale the orbit (symplectic leaf) through a Hermitian `ρ` is
//! its isospectral set `{u*ρu}`, so a leaf is identified by its sorted
//! eigenvalue multiset. Skew-Hermitian and Hermitian generators are related
//! by `T ↔ iT`; functions that only need the spectral projections of `T`
//! accept either form.

use crate::error::{LeafError, Result};
use crate::opcore::eigen::cluster_values;
use crate::opcore::matrix::{ComplexMatrix, C64, I};
use crate::opcore::{hermitian_eigen, matrix_exp, spectral_decompose_default, SpectralData};
use crate::random::{random_skew_hermitian, seeded_rng};

/// A matrix `A` with `A* = −A`, an element of the Lie algebra `𝔲ₙ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewHermitian(ComplexMatrix);

impl SkewHermitian {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        m.ensure_skew_hermitian()?;
        Ok(Self(m.skew_part()))
    }

    /// `iH` for Hermitian `H`.
    pub fn from_hermitian(h: &ComplexMatrix) -> Result<Self> {
        h.ensure_hermitian()?;
        Ok(Self(h.hermitian_part().scale(I)))
    }

    /// Accepts a skew-Hermitian matrix as is, or maps a Hermitian one to `iH`.
    pub fn from_either(m: &ComplexMatrix) -> Result<Self> {
        if m.is_skew_hermitian() {
            Self::new(m.clone())
        } else {
            Self::from_hermitian(m)
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn order(&self) -> usize {
        self.0.rows()
    }

    /// `−iA`, the Hermitian matrix with the same spectral projections.
    pub fn to_hermitian(&self) -> ComplexMatrix {
        self.0.scale(-I).hermitian_part()
    }
}

/// Hermitian matrix sharing the spectral projections of `t`, which may be
/// Hermitian or skew-Hermitian.
pub(crate) fn hermitian_generator(t: &ComplexMatrix) -> Result<ComplexMatrix> {
    t.order()?;
    if t.is_hermitian() {
        Ok(t.hermitian_part())
    } else if t.is_skew_hermitian() {
        Ok(t.scale(-I).hermitian_part())
    } else {
        Err(LeafError::NotHermitian { residual: t.hermitian_defect() })
    }
}

/// Spectral data of a Hermitian or skew-Hermitian `t` (skew inputs are
/// resolved through `−it`).
pub fn generator_spectrum(t: &ComplexMatrix) -> Result<SpectralData> {
    spectral_decompose_default(&hermitian_generator(t)?)
}

/// Tangent vector `[a, ρ]` to the leaf through `ρ` in direction `a ∈ 𝔲ₙ`.
pub fn characteristic_tangent(rho: &ComplexMatrix, a: &SkewHermitian) -> Result<ComplexMatrix> {
    rho.ensure_same_order(a.matrix())?;
    rho.ensure_hermitian()?;
    Ok(a.matrix().commutator(rho))
}

/// Sorted eigenvalue multiset of a Hermitian matrix, clustered at `tol`.
#[derive(Debug, Clone, PartialEq)]
pub struct LeafSignature {
    pub eigenvalues: Vec<f64>,
    pub multiplicities: Vec<usize>,
    pub tol: f64,
}

impl LeafSignature {
    pub fn order(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// Same multiplicity pattern and representatives within `tol`.
    pub fn matches(&self, other: &Self, tol: f64) -> bool {
        self.multiplicities == other.multiplicities
            && self.eigenvalues.iter().zip(&other.eigenvalues).all(|(a, b)| (a - b).abs() <= tol)
    }
}

pub fn leaf_signature(rho: &ComplexMatrix, tol: f64) -> Result<LeafSignature> {
    let eig = hermitian_eigen(rho)?;
    let (eigenvalues, multiplicities) = cluster_values(&eig.values, tol).into_iter().unzip();
    Ok(LeafSignature { eigenvalues, multiplicities, tol })
}

/// Two Hermitian matrices lie on one orbit iff their sorted eigenvalues
/// agree pairwise within `tol`.
pub fn same_leaf(rho1: &ComplexMatrix, rho2: &ComplexMatrix, tol: f64) -> Result<bool> {
    rho1.ensure_same_order(rho2)?;
    let a = hermitian_eigen(rho1)?;
    let b = hermitian_eigen(rho2)?;
    Ok(a.values.iter().zip(&b.values).all(|(x, y)| (x - y).abs() <= tol))
}

/// `count` orbit points `V_k* T V_k` with `V_k = exp(scale · K_k)` for
/// seeded random skew-Hermitian `K_k`.
pub fn orbit_sample(t: &ComplexMatrix, count: usize, scale: f64, seed: u64) -> Result<Vec<ComplexMatrix>> {
    let n = t.order()?;
    let mut rng = seeded_rng(seed);
    (0..count)
        .map(|_| {
            let k = random_skew_hermitian(n, &mut rng).scale_real(scale);
            let v = matrix_exp(&k)?;
            Ok(t.conjugate_by(&v))
        })
        .collect()
}

/// Block-diagonal compression `Σ E_i S E_i` along the spectral projections
/// of `spec`.
pub(crate) fn pinch_with(spec: &SpectralData, s: &ComplexMatrix) -> ComplexMatrix {
    let n = spec.order();
    let mut out = ComplexMatrix::zeros(n, n);
    for e in &spec.projections {
        out += &(&(e * s) * e);
    }
    out
}

/// The pinching `E(S) = Σ E_i S E_i` over the spectral projections of `T`.
///
/// For matrices this is the exact value of the invariant mean of
/// `α ↦ exp(αT)* S exp(αT)`: the off-diagonal blocks carry oscillating
/// factors `e^{α(λ_j − λ_i)}` whose mean vanishes.
pub fn pinching(t: &ComplexMatrix, s: &ComplexMatrix) -> Result<ComplexMatrix> {
    t.ensure_same_order(s)?;
    let spec = generator_spectrum(t)?;
    Ok(pinch_with(&spec, s))
}

/// Real bases of `Ker(ad T) ∩ 𝔲ₙ` and `Ran(ad T) ∩ 𝔲ₙ`.
#[derive(Debug, Clone)]
pub struct KernelRangeSplit {
    pub kernel_basis: Vec<ComplexMatrix>,
    pub range_basis: Vec<ComplexMatrix>,
    /// `‖S − (projection onto kernel ⊕ range)‖_F` for a seeded random skew `S`.
    pub residual: f64,
}

/// Seed of the random probe used for the split's reconstruction residual.
pub const SPLIT_PROBE_SEED: u64 = 0x5eed;

/// Real basis of skew-Hermitian matrices supported on the `(i, j)` and
/// `(j, i)` cluster blocks of `spec`'s eigenbasis.
fn skew_block_basis(spec: &SpectralData, same_block: bool) -> Vec<ComplexMatrix> {
    let n = spec.order();
    let cluster = spec.cluster_of_column();
    let cols: Vec<Vec<C64>> = (0..n).map(|k| spec.basis.col(k)).collect();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a..n {
            if (cluster[a] == cluster[b]) != same_block {
                continue;
            }
            if a == b {
                out.push(ComplexMatrix::outer(&cols[a], &cols[a]).scale(I));
            } else {
                let ab = ComplexMatrix::outer(&cols[a], &cols[b]);
                let ba = ab.adjoint();
                out.push(&ab - &ba);
                out.push((&ab + &ba).scale(I));
            }
        }
    }
    out
}

/// Splits `𝔲ₙ = Ker(ad T) ⊕ Ran(ad T)` into block-diagonal and
/// off-diagonal skew parts relative to the spectral blocks of `T`.
pub fn kernel_range_split(t: &SkewHermitian) -> Result<KernelRangeSplit> {
    let spec = spectral_decompose_default(&t.to_hermitian())?;
    let kernel_basis = skew_block_basis(&spec, true);
    let range_basis = skew_block_basis(&spec, false);

    let probe = random_skew_hermitian(t.order(), &mut seeded_rng(SPLIT_PROBE_SEED));
    let mut rebuilt = ComplexMatrix::zeros(t.order(), t.order());
    for b in kernel_basis.iter().chain(&range_basis) {
        let coeff = b.inner(&probe).re / b.inner(b).re;
        rebuilt += &b.scale_real(coeff);
    }
    let residual = (&probe - &rebuilt).frobenius_norm();
    Ok(KernelRangeSplit { kernel_basis, range_basis, residual })
}

/// Real dimension `Σ m_i²` of the isotropy algebra `Ker(ad T) ∩ 𝔲ₙ`.
pub fn isotropy_dimension(t: &ComplexMatrix) -> Result<usize> {
    Ok(generator_spectrum(t)?.commutant_dimension())
}

/// Real basis `{i E_kk, E_kl − E_lk, i(E_kl + E_lk)}` of `𝔲ₙ`.
pub fn unitary_algebra_basis(n: usize) -> Vec<ComplexMatrix> {
    use crate::opcore::subspace::matrix_unit;
    let mut out = Vec::with_capacity(n * n);
    for k in 0..n {
        out.push(matrix_unit(n, k, k).scale(I));
        for l in (k + 1)..n {
            let ekl = matrix_unit(n, k, l);
            let elk = matrix_unit(n, l, k);
            out.push(&ekl - &elk);
            out.push((&ekl + &elk).scale(I));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norming::{op_norm, NormingFunction, PiSequence};
    use crate::opcore::subspace::Subspace;
    use crate::opcore::svd::svd;
    use crate::random::{random_complex, random_hermitian, random_unitary, random_with_spectrum};

    fn all_phis() -> Vec<NormingFunction> {
        let pi = PiSequence::power(0.5).unwrap();
        vec![
            NormingFunction::sum(),
            NormingFunction::schatten(2.0).unwrap(),
            NormingFunction::schatten(3.0).unwrap(),
            NormingFunction::max(),
            NormingFunction::LorentzPi(pi.clone()),
            NormingFunction::LorentzDual(pi),
        ]
    }

    fn skew(m: ComplexMatrix) -> SkewHermitian {
        SkewHermitian::new(m).unwrap()
    }

    #[test]
    fn tangent_examples() {
        let mut rng = seeded_rng(1);
        let a = skew(random_skew_hermitian(3, &mut rng));
        let scalar = ComplexMatrix::identity(3).scale_real(2.5);
        assert!(characteristic_tangent(&scalar, &a).unwrap().frobenius_norm() < 1e-14);

        let rho = ComplexMatrix::from_real_diag(&[1.0, 0.0]);
        let a = skew(ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[-1.0, 0.0]]));
        let t = characteristic_tangent(&rho, &a).unwrap();
        assert_eq!(t, ComplexMatrix::from_real_rows(&[&[0.0, -1.0], &[-1.0, 0.0]]));

        for _ in 0..10 {
            let rho = random_hermitian(4, &mut rng);
            let a = skew(random_skew_hermitian(4, &mut rng));
            let t = characteristic_tangent(&rho, &a).unwrap();
            assert!(t.trace().norm() < 1e-10);
            assert!(t.hermitian_defect() < 1e-10);
        }
        let b = skew(random_skew_hermitian(3, &mut rng));
        assert!(matches!(characteristic_tangent(&rho, &b), Err(LeafError::SizeMismatch { .. })));
    }

    #[test]
    fn tangent_map_rank() {
        // Real rank of a ↦ [a, ρ] on 𝔲ₙ is n² − Σ m_i².
        let mut rng = seeded_rng(2);
        for spectrum in [vec![1.0, 2.0, 3.0], vec![1.0, 1.0, 2.0], vec![0.5, 0.5, 0.5], vec![0.0, 1.0, 1.0, 4.0]] {
            let n = spectrum.len();
            let rho = random_with_spectrum(&spectrum, &mut rng);
            let cols: Vec<Vec<C64>> = unitary_algebra_basis(n)
                .iter()
                .map(|b| crate::opcore::subspace::real_embedding(&b.commutator(&rho)))
                .collect();
            let m = ComplexMatrix::from_fn(2 * n * n, n * n, |r, c| cols[c][r]);
            let s = svd(&m).s;
            let rank = s.iter().filter(|&&x| x > 1e-9 * s[0].max(1.0)).count();
            assert_eq!(rank, n * n - isotropy_dimension(&rho).unwrap());
        }
    }

    #[test]
    fn leaf_examples() {
        let d = ComplexMatrix::from_real_diag(&[1.0, 2.0]);
        let sig = leaf_signature(&d, 1e-9).unwrap();
        assert_eq!(sig.eigenvalues, vec![1.0, 2.0]);
        assert_eq!(sig.multiplicities, vec![1, 1]);
        let u = random_unitary(2, 2.0, &mut seeded_rng(3));
        let moved = leaf_signature(&d.conjugate_by(&u), 1e-9).unwrap();
        assert!(sig.matches(&moved, 1e-9));
        let flat = leaf_signature(&ComplexMatrix::from_real_diag(&[1.0, 1.0]), 1e-9).unwrap();
        assert!(!sig.matches(&flat, 1e-9));

        assert!(same_leaf(&d, &d.conjugate_by(&u), 1e-9).unwrap());
        assert!(!same_leaf(&d, &ComplexMatrix::from_real_diag(&[1.0, 1.0]), 1e-9).unwrap());
        let eps = 1e-6;
        let a = ComplexMatrix::from_real_diag(&[1.0, 1.0 + eps]);
        let b = ComplexMatrix::from_real_diag(&[1.0 + eps, 1.0]);
        assert!(same_leaf(&a, &b, 10.0 * eps).unwrap());
    }

    #[test]
    fn orbit_sample_contracts() {
        let t = ComplexMatrix::from_real_diag(&[1.0, -1.0, 0.5]);
        assert_eq!(orbit_sample(&t, 1, 0.0, 4).unwrap(), vec![t.clone()]);
        let samples = orbit_sample(&t, 5, 0.7, 4).unwrap();
        let sig = leaf_signature(&t, 1e-9).unwrap();
        for s in &samples {
            assert!(sig.matches(&leaf_signature(s, 1e-9).unwrap(), 1e-9));
        }
        assert_eq!(samples, orbit_sample(&t, 5, 0.7, 4).unwrap());
        assert_ne!(samples, orbit_sample(&t, 5, 0.7, 5).unwrap());
    }

    #[test]
    fn pinching_examples() {
        let t = ComplexMatrix::from_real_diag(&[3.0, 1.0, -2.0]);
        let mut rng = seeded_rng(6);
        let s = random_complex(3, 3, &mut rng);
        let e = pinching(&t, &s).unwrap();
        let diag = ComplexMatrix::from_diag(&s.diag());
        assert!((&e - &diag).frobenius_norm() < 1e-14);

        let commuting = ComplexMatrix::from_diag(&[C64::new(1.0, 2.0), C64::new(-1.0, 0.0), I]);
        assert!((&pinching(&t, &commuting).unwrap() - &commuting).frobenius_norm() < 1e-14);

        // Skew and Hermitian generators give the same pinching.
        let e_skew = pinching(&t.scale(I), &s).unwrap();
        assert!((&e - &e_skew).frobenius_norm() < 1e-14);
    }

    #[test]
    fn pinching_is_contractive_idempotent_and_commuting() {
        let mut rng = seeded_rng(7);
        for spectrum in [vec![1.0, 2.0, 3.0, 4.0], vec![1.0, 1.0, -1.0, 0.0], vec![2.0, 2.0, 2.0, 5.0]] {
            let t = random_with_spectrum(&spectrum, &mut rng);
            let s = random_complex(4, 4, &mut rng);
            let e = pinching(&t, &s).unwrap();
            let ee = pinching(&t, &e).unwrap();
            assert!((&ee - &e).norm2() <= 1e-10);
            assert!(t.commutator(&e).norm2() <= 1e-9);
            for phi in all_phis() {
                assert!(op_norm(&phi, &e) <= op_norm(&phi, &s) + 1e-9);
            }
        }
    }

    #[test]
    fn split_examples() {
        let t = skew(ComplexMatrix::from_diag(&[I, -I]));
        let sp = kernel_range_split(&t).unwrap();
        assert_eq!(sp.kernel_basis.len(), 2);
        assert_eq!(sp.range_basis.len(), 2);
        assert!(sp.residual <= 1e-9);

        let zero = skew(ComplexMatrix::zeros(3, 3));
        let sp = kernel_range_split(&zero).unwrap();
        assert_eq!(sp.kernel_basis.len(), 9);
        assert!(sp.range_basis.is_empty());
    }

    #[test]
    fn split_matches_pinching() {
        let mut rng = seeded_rng(8);
        for spectrum in [vec![1.0, 2.0, 3.0], vec![1.0, 1.0, 3.0], vec![0.0, 0.0, 2.0, 2.0, 5.0]] {
            let n = spectrum.len();
            let t = skew(random_with_spectrum(&spectrum, &mut rng).scale(I));
            let sp = kernel_range_split(&t).unwrap();
            assert_eq!(sp.kernel_basis.len() + sp.range_basis.len(), n * n);
            assert!(sp.residual <= 1e-9);

            let ker = Subspace::real_span_of_matrices(&sp.kernel_basis, 1e-10);
            let ran = Subspace::real_span_of_matrices(&sp.range_basis, 1e-10);
            assert_eq!(ker.dim(), sp.kernel_basis.len());
            assert_eq!(ran.dim(), sp.range_basis.len());
            for k in &sp.kernel_basis {
                for r in &sp.range_basis {
                    assert!(k.inner(r).re.abs() <= 1e-10);
                }
            }
            let s = random_skew_hermitian(n, &mut rng);
            let e = pinching(t.matrix(), &s).unwrap();
            assert!(ker.real_matrix_residual(&e) <= 1e-9);
            assert!(ran.real_matrix_residual(&(&s - &e)) <= 1e-9);
            for k in &sp.kernel_basis {
                assert!(k.commutator(t.matrix()).norm2() <= 1e-9);
                assert!((&pinching(t.matrix(), k).unwrap() - k).norm2() <= 1e-9);
            }
        }
    }

    /// Oracle: nullity of X ↦ [T, X] on a real basis of 𝔲ₙ.
    fn ad_nullity(t: &ComplexMatrix) -> usize {
        let n = t.rows();
        let cols: Vec<Vec<C64>> = unitary_algebra_basis(n)
            .iter()
            .map(|b| crate::opcore::subspace::real_embedding(&t.commutator(b)))
            .collect();
        let m = ComplexMatrix::from_fn(2 * n * n, n * n, |r, c| cols[c][r]);
        let s = svd(&m).s;
        let top = s[0];
        if top == 0.0 {
            return n * n;
        }
        s.iter().filter(|&&x| x <= 1e-9 * top).count()
    }

    #[test]
    fn isotropy_examples() {
        let mut rng = seeded_rng(9);
        let t = random_hermitian(4, &mut rng);
        assert_eq!(isotropy_dimension(&t).unwrap(), 4);
        assert_eq!(isotropy_dimension(&ComplexMatrix::identity(3).scale(I)).unwrap(), 9);
        let t = random_with_spectrum(&[1.0, 1.0, 4.0], &mut rng).scale(I);
        assert_eq!(isotropy_dimension(&t).unwrap(), 5);
        assert_eq!(ad_nullity(&t), 5);
    }
}
