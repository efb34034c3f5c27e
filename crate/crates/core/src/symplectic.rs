//! The orbit 2-form `ω_T(X, Y) = Tr(T[X, Y])` on `𝔲ₙ`, its radical, the
//! complex polarization and Kähler checks.
//!
//! Inner products are linear in the first argument:
//! `⟨u, v⟩ = Σ u_k conj(v_k)`. The conjugation of the complexification
//! `𝔤𝔩ₙ = 𝔲ₙ ⊕ i𝔲ₙ` relative to `𝔲ₙ` is `Z ↦ −Z*`.

use std::collections::BTreeSet;

use crate::error::{LeafError, Result};
use crate::opcore::matrix::{ComplexMatrix, C64, I};
use crate::opcore::subspace::Subspace;
use crate::opcore::svd::singular_values;
use crate::opcore::{spectral_decompose_default, SpectralData};
use crate::orbits::{kernel_range_split, pinching, unitary_algebra_basis, SkewHermitian};
use crate::random::{complex_normal, random_skew_hermitian, seeded_rng};

/// Relative tolerance for span computations in this module.
const SPAN_TOL: f64 = 1e-10;

/// Relative singular-value threshold for the nullity of the Gram matrix.
pub const GRAM_NULLITY_TOL: f64 = 1e-9;

/// Complex-bilinear extension `Tr(T[X, Y])` for arbitrary square matrices.
pub fn omega_complex(t: &ComplexMatrix, x: &ComplexMatrix, y: &ComplexMatrix) -> Result<C64> {
    t.ensure_same_order(x)?;
    t.ensure_same_order(y)?;
    Ok((t * &x.commutator(y)).trace())
}

/// `ω_T(X, Y) = Tr(T[X, Y])`, real on skew-Hermitian arguments.
pub fn omega(t: &SkewHermitian, x: &SkewHermitian, y: &SkewHermitian) -> Result<f64> {
    Ok(omega_complex(t.matrix(), x.matrix(), y.matrix())?.re)
}

/// Matrix of `ω_T` on the real basis of `𝔲ₙ` from [`unitary_algebra_basis`].
pub fn omega_gram(t: &SkewHermitian) -> ComplexMatrix {
    let basis = unitary_algebra_basis(t.order());
    let ad: Vec<ComplexMatrix> = basis.iter().map(|b| t.matrix() * b).collect();
    let d = basis.len();
    // Tr(T[X, Y]) = Tr((TX)Y) − Tr((TY)X).
    let tr = |a: &ComplexMatrix, b: &ComplexMatrix| -> f64 {
        let n = a.rows();
        let mut s = C64::new(0.0, 0.0);
        for i in 0..n {
            for k in 0..n {
                s += a[(i, k)] * b[(k, i)];
            }
        }
        s.re
    };
    ComplexMatrix::from_fn(d, d, |r, c| C64::new(tr(&ad[r], &basis[c]) - tr(&ad[c], &basis[r]), 0.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadicalCheck {
    /// Nullity of the Gram matrix of `ω_T` on a real basis of `𝔲ₙ`.
    pub radical_dim: usize,
    /// `dim_ℝ Ker(ad T) ∩ 𝔲ₙ = Σ m_i²`.
    pub isotropy_dim: usize,
    pub matches: bool,
    /// Max `|ω_T(E(S), Y)|` over sampled unit-norm skew `S, Y`, where `E`
    /// is the pinching along `T`.
    pub max_radical_pairing: f64,
    /// Smallest Gram singular value off the radical over the largest one
    /// (`1` when the form vanishes identically).
    pub nondegeneracy_ratio: f64,
}

/// Compares the radical of `ω_T` with the isotropy algebra of `T`.
pub fn radical_check(t: &SkewHermitian, sample_count: usize, seed: u64) -> Result<RadicalCheck> {
    let n = t.order();
    let spec = spectral_decompose_default(&t.to_hermitian())?;
    let isotropy_dim = spec.commutant_dimension();

    let s = singular_values(&omega_gram(t));
    let top = s.first().copied().unwrap_or(0.0);
    let threshold = GRAM_NULLITY_TOL * top.max(t.matrix().norm2());
    let radical_dim = s.iter().filter(|&&x| x <= threshold).count();
    let rank = s.len() - radical_dim;
    let nondegeneracy_ratio = if rank == 0 { 1.0 } else { s[rank - 1] / top };

    let mut rng = seeded_rng(seed);
    let mut max_radical_pairing = 0.0f64;
    for _ in 0..sample_count {
        let s = random_skew_hermitian(n, &mut rng);
        let y = random_skew_hermitian(n, &mut rng);
        let k = pinching(t.matrix(), &s.scale_real(1.0 / s.frobenius_norm()))?;
        let y = y.scale_real(1.0 / y.frobenius_norm());
        max_radical_pairing = max_radical_pairing.max(omega_complex(t.matrix(), &k, &y)?.norm());
    }
    Ok(RadicalCheck {
        radical_dim,
        isotropy_dim,
        matches: radical_dim == isotropy_dim,
        max_radical_pairing,
        nondegeneracy_ratio,
    })
}

/// Complex polarization `𝔭` of `𝔤𝔩ₙ` attached to `T`: the sum of the
/// eigenspaces of `ad T` lying in one closed half of its spectrum.
#[derive(Debug, Clone)]
pub struct PolarizationMask {
    /// Cluster indices of `−iT` in ascending order of eigenvalue.
    pub block_order: Vec<usize>,
    /// Ordered cluster pairs `(i, j)` whose block `E_i 𝔤𝔩ₙ E_j` lies in `𝔭`.
    pub mask: BTreeSet<(usize, usize)>,
    /// Complex basis of `𝔭`: rank-one units `v_a v_b*` on masked blocks.
    pub basis: Vec<ComplexMatrix>,
    /// Spectral data of `−iT`.
    pub spectral: SpectralData,
}

impl PolarizationMask {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn block_unit(spec: &SpectralData, a: usize, b: usize) -> ComplexMatrix {
    ComplexMatrix::outer(&spec.basis.col(a), &spec.basis.col(b))
}

/// Builds `𝔭` for `T`. For each pair of distinct clusters the block kept is
/// the one on which `−iω_T(Z, Z*) ≥ 0`, decided by evaluating the form on a
/// rank-one unit of the block.
pub fn polarization(t: &SkewHermitian) -> Result<PolarizationMask> {
    let spec = spectral_decompose_default(&t.to_hermitian())?;
    let p = spec.cluster_count();
    let mut mask = BTreeSet::new();
    for i in 0..p {
        mask.insert((i, i));
        for j in (i + 1)..p {
            let z = block_unit(&spec, spec.offsets[i], spec.offsets[j]);
            let w = (-I * omega_complex(t.matrix(), &z, &z.adjoint())?).re;
            mask.insert(if w >= 0.0 { (i, j) } else { (j, i) });
        }
    }
    let cluster = spec.cluster_of_column();
    let n = spec.order();
    let mut basis = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if mask.contains(&(cluster[a], cluster[b])) {
                basis.push(block_unit(&spec, a, b));
            }
        }
    }
    Ok(PolarizationMask { block_order: (0..p).collect(), mask, basis, spectral: spec })
}

/// Numerical verification of the four defining properties of `𝔭`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarizationProperties {
    /// (i) max residual of `[K, P]` in `𝔭` over isotropy `K`, basis `P`.
    pub invariance_residual: f64,
    /// (ii) `dim_ℂ(𝔭 ∩ conj 𝔭)` against `Σ m_i²`, and the max residual of
    /// isotropy elements in `𝔭` and in `conj 𝔭`.
    pub intersection_dim: usize,
    pub isotropy_dim: usize,
    pub isotropy_residual: f64,
    /// (iii) `dim_ℂ(𝔭 + conj 𝔭)` against `n²`.
    pub sum_dim: usize,
    pub ambient_dim: usize,
    /// (iv) dimension of the complement spanned by the blocks outside the
    /// mask, and its intersection with `𝔭`.
    pub complement_dim: usize,
    pub complement_intersection_dim: usize,
    pub polarization_dim: usize,
}

impl PolarizationProperties {
    pub fn holds(&self, tol: f64) -> bool {
        self.invariance_residual <= tol
            && self.intersection_dim == self.isotropy_dim
            && self.isotropy_residual <= tol
            && self.sum_dim == self.ambient_dim
            && self.complement_intersection_dim == 0
            && self.complement_dim + self.polarization_dim == self.ambient_dim
    }
}

pub fn verify_polarization(t: &SkewHermitian, pol: &PolarizationMask) -> Result<PolarizationProperties> {
    let n = t.order();
    let p = Subspace::of_matrices(&pol.basis, SPAN_TOL);
    let conj_basis: Vec<ComplexMatrix> = pol.basis.iter().map(|z| -z.adjoint()).collect();
    let conj = Subspace::of_matrices(&conj_basis, SPAN_TOL);
    let isotropy = kernel_range_split(t)?.kernel_basis;

    let mut invariance_residual = 0.0f64;
    for k in &isotropy {
        for z in &pol.basis {
            invariance_residual = invariance_residual.max(p.matrix_residual(&k.commutator(z)));
        }
    }
    let mut isotropy_residual = 0.0f64;
    for k in &isotropy {
        let scale = k.frobenius_norm();
        isotropy_residual = isotropy_residual.max(p.matrix_residual(k) / scale).max(conj.matrix_residual(k) / scale);
    }

    let cluster = pol.spectral.cluster_of_column();
    let mut complement_basis = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if !pol.mask.contains(&(cluster[a], cluster[b])) {
                complement_basis.push(block_unit(&pol.spectral, a, b));
            }
        }
    }
    let complement = if complement_basis.is_empty() {
        Subspace::empty(n * n)
    } else {
        Subspace::of_matrices(&complement_basis, SPAN_TOL)
    };

    Ok(PolarizationProperties {
        invariance_residual,
        intersection_dim: p.intersection_dim(&conj, SPAN_TOL),
        isotropy_dim: pol.spectral.commutant_dimension(),
        isotropy_residual,
        sum_dim: p.sum(&conj, SPAN_TOL).dim(),
        ambient_dim: n * n,
        complement_dim: complement.dim(),
        complement_intersection_dim: p.intersection_dim(&complement, SPAN_TOL),
        polarization_dim: p.dim(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct KaehlerCheck {
    /// Max `|ω_T(Z₁, Z₂)|` over sampled unit-Frobenius `Z₁, Z₂ ∈ 𝔭`.
    pub isotropy_max_abs: f64,
    /// Min `−i ω_T(Z, Z*)` over sampled unit-Frobenius `Z ∈ 𝔭`.
    pub positivity_min: f64,
    /// Min `−i ω_T(Z, Z*)` over the rank-one basis units of `𝔭`.
    pub unit_positivity_min: f64,
    /// `max(1, ‖T‖₂)`, the scale for absolute tolerances.
    pub scale: f64,
}

fn random_element(basis: &[ComplexMatrix], rng: &mut crate::random::SeededRng) -> ComplexMatrix {
    let n = basis[0].rows();
    let mut z = ComplexMatrix::zeros(n, n);
    for b in basis {
        z += &b.scale(complex_normal(rng));
    }
    let norm = z.frobenius_norm();
    z.scale_real(1.0 / norm)
}

/// Isotropy of `𝔭` and positivity of `−iω_T(Z, Z*)` on sampled `Z ∈ 𝔭`.
pub fn kaehler_check(t: &SkewHermitian, sample_count: usize, seed: u64) -> Result<KaehlerCheck> {
    let pol = polarization(t)?;
    let tm = t.matrix();
    let positivity = |z: &ComplexMatrix| -> Result<f64> { Ok((-I * omega_complex(tm, z, &z.adjoint())?).re) };

    let mut unit_positivity_min = f64::INFINITY;
    for z in &pol.basis {
        unit_positivity_min = unit_positivity_min.min(positivity(z)?);
    }
    let mut rng = seeded_rng(seed);
    let mut isotropy_max_abs = 0.0f64;
    let mut positivity_min = f64::INFINITY;
    for _ in 0..sample_count {
        let z1 = random_element(&pol.basis, &mut rng);
        let z2 = random_element(&pol.basis, &mut rng);
        isotropy_max_abs = isotropy_max_abs.max(omega_complex(tm, &z1, &z2)?.norm());
        positivity_min = positivity_min.min(positivity(&z1)?);
    }
    if sample_count == 0 {
        positivity_min = unit_positivity_min;
    }
    Ok(KaehlerCheck { isotropy_max_abs, positivity_min, unit_positivity_min, scale: tm.norm2().max(1.0) })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveComparison {
    /// `i Tr(p_x [a₁, a₂]) = i ⟨[a₁, a₂]x, x⟩`.
    pub orbit_form: f64,
    /// `2 Im ⟨a₁x, a₂x⟩`.
    pub geometric_form: f64,
    /// `| |orbit_form| − |geometric_form| | ≤ 1e-9`.
    pub abs_match: bool,
}

pub const PROJECTIVE_MATCH_TOL: f64 = 1e-9;

/// Compares the orbit form at the rank-one projection `p_x` with the
/// Fubini–Study type form `2 Im⟨a₁x, a₂x⟩`.
pub fn projective_form_compare(x0: &[C64], a1: &SkewHermitian, a2: &SkewHermitian) -> Result<ProjectiveComparison> {
    a1.matrix().ensure_same_order(a2.matrix())?;
    let n = a1.order();
    if x0.len() != n {
        return Err(LeafError::SizeMismatch { left: n, right: x0.len() });
    }
    let norm = x0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(LeafError::NotUnitVector { norm });
    }
    let x = ComplexMatrix::column(x0);
    let c = a1.matrix().commutator(a2.matrix());
    let orbit_form = (I * (&(&x.adjoint() * &c) * &x)[(0, 0)]).re;
    let u = a1.matrix() * &x;
    let v = a2.matrix() * &x;
    let inner: C64 = (0..n).map(|k| u[(k, 0)] * v[(k, 0)].conj()).sum();
    let geometric_form = 2.0 * inner.im;
    Ok(ProjectiveComparison {
        orbit_form,
        geometric_form,
        abs_match: (orbit_form.abs() - geometric_form.abs()).abs() <= PROJECTIVE_MATCH_TOL,
    })
}
