//! Local cross-section of the orbit map `V ↦ V*TV` near a self-adjoint `T`.
//!
//! With `E_i` the spectral projections of `T`, an orbit point `R = V*TV`
//! is lifted to the unitary `φ(R) = ψ(V)V`, where `ψ(V) = Σ X_i*` collects
//! the unitary parts of the polar decompositions `E_iVE_i = X_iQ_i`. The
//! lift does not depend on which `V` represents `R`.
//!
//! Orbit points are passed as the unitary `V`; independence of the choice
//! is checked by [`well_definedness_check`].

mod poly;

pub use poly::Polynomial;

use crate::error::{LeafError, Result};
use crate::norming::{op_norm, NormingFunction};
use crate::opcore::eigen::cluster_values;
use crate::opcore::matrix::ComplexMatrix;
use crate::opcore::{hermitian_eigen, hermitian_function, polar_decompose, spectral_decompose, SpectralData};
use crate::orbits::pinch_with;

/// Compressions `E_iVE_i` with smallest singular value at or below this are
/// treated as singular.
pub const CORNER_TOL: f64 = 1e-8;

/// Self-adjoint reference operator with its spectral data and the Lagrange
/// polynomials `e_i` satisfying `e_i(λ_j) = δ_ij` on the cluster values.
#[derive(Debug, Clone)]
pub struct ReferenceOperator {
    pub t: ComplexMatrix,
    pub spectral: SpectralData,
    pub interp_polys: Vec<Polynomial>,
}

impl ReferenceOperator {
    pub fn order(&self) -> usize {
        self.t.rows()
    }

    /// `max_i ‖e_i(T) − E_i‖₂`, with `e_i(T)` evaluated on the raw
    /// eigenvalues of `T`.
    pub fn interpolation_residual(&self) -> Result<f64> {
        let mut worst = 0.0f64;
        for (e, proj) in self.interp_polys.iter().zip(&self.spectral.projections) {
            let et = hermitian_function(&self.t, |x| e.eval(x))?;
            worst = worst.max((&et - proj).norm2());
        }
        Ok(worst)
    }
}

pub fn build_reference(t: &ComplexMatrix, cluster_tol: f64) -> Result<ReferenceOperator> {
    let spectral = spectral_decompose(t, cluster_tol)?;
    let interp_polys = Polynomial::lagrange_basis(&spectral.eigenvalues);
    Ok(ReferenceOperator { t: t.hermitian_part(), spectral, interp_polys })
}

#[derive(Debug, Clone, PartialEq)]
pub struct NeighborhoodCheck {
    /// `max_i ‖e_i(R) − e_i(T)‖₂`.
    pub max_dev: f64,
    /// `max_dev < 1`.
    pub inside: bool,
}

pub fn neighborhood_check(r: &ReferenceOperator, x: &ComplexMatrix) -> Result<NeighborhoodCheck> {
    r.t.ensure_same_order(x)?;
    x.ensure_hermitian()?;
    let mut max_dev = 0.0f64;
    for (e, proj) in r.interp_polys.iter().zip(&r.spectral.projections) {
        let ex = hermitian_function(x, |v| e.eval(v))?;
        max_dev = max_dev.max((&ex - proj).norm2());
    }
    Ok(NeighborhoodCheck { max_dev, inside: max_dev < 1.0 })
}

/// `δ(V) = Σ E_iVE_i`.
pub fn delta_map(r: &ReferenceOperator, v: &ComplexMatrix) -> Result<ComplexMatrix> {
    r.t.ensure_same_order(v)?;
    v.ensure_unitary()?;
    Ok(pinch_with(&r.spectral, v))
}

struct Corners {
    /// `Σ X_i`, block-diagonal unitary.
    unitary: ComplexMatrix,
    /// `Σ Q_i`, positive.
    positive: ComplexMatrix,
    min_sv: f64,
}

/// Block-wise polar decompositions of the compressions `B_i*VB_i`.
fn corners(r: &ReferenceOperator, v: &ComplexMatrix) -> Result<Corners> {
    r.t.ensure_same_order(v)?;
    v.ensure_unitary()?;
    let n = r.order();
    let mut unitary = ComplexMatrix::zeros(n, n);
    let mut positive = ComplexMatrix::zeros(n, n);
    let mut min_sv = f64::INFINITY;
    for i in 0..r.spectral.cluster_count() {
        let b = r.spectral.block_basis(i);
        let c = v.compress(&b);
        let polar = polar_decompose(&c, CORNER_TOL).map_err(|e| match e {
            LeafError::NearSingular { min_sv, .. } => LeafError::CornerSingular { block: i, min_sv },
            other => other,
        })?;
        min_sv = min_sv.min(polar.min_singular_value);
        unitary += &(&(&b * &polar.unitary_part) * &b.adjoint());
        positive += &(&(&b * &polar.positive_part) * &b.adjoint());
    }
    Ok(Corners { unitary, positive, min_sv })
}

/// `ψ(V) = Σ X_i*`.
pub fn psi_map(r: &ReferenceOperator, v: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(corners(r, v)?.unitary.adjoint())
}

#[derive(Debug, Clone)]
pub struct CrossSectionResult {
    /// `φ = ψ(V)V`.
    pub phi: ComplexMatrix,
    pub psi: ComplexMatrix,
    pub delta: ComplexMatrix,
    /// `Σ Q_i`, so that `δ(V) = ψ(V)*·positive` is the polar decomposition.
    pub positive: ComplexMatrix,
    pub corner_min_sv: f64,
    /// `‖φ*Tφ − V*TV‖₂`.
    pub residual: f64,
}

pub fn cross_section_phi(r: &ReferenceOperator, v: &ComplexMatrix) -> Result<CrossSectionResult> {
    let c = corners(r, v)?;
    let psi = c.unitary.adjoint();
    let phi = &psi * v;
    let residual = (&r.t.conjugate_by(&phi) - &r.t.conjugate_by(v)).norm2();
    Ok(CrossSectionResult {
        phi,
        psi,
        delta: pinch_with(&r.spectral, v),
        positive: c.positive,
        corner_min_sv: c.min_sv,
        residual,
    })
}

/// `‖φ(GV) − φ(V)‖₂` for a unitary `G` commuting with `T`.
pub fn well_definedness_check(r: &ReferenceOperator, v: &ComplexMatrix, g: &ComplexMatrix) -> Result<f64> {
    r.t.ensure_same_order(g)?;
    g.ensure_unitary()?;
    let residual = r.t.commutator(g).norm2();
    if residual > 1e-10 * r.t.norm2().max(1.0) {
        return Err(LeafError::NotCommuting { residual });
    }
    let a = cross_section_phi(r, v)?;
    let b = cross_section_phi(r, &(g * v))?;
    Ok((&b.phi - &a.phi).norm2())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuityPoint {
    /// `‖V*TV − T‖₂`.
    pub op_dist: f64,
    /// `‖φ(V*TV) − 1‖_Φ`.
    pub phi_dist: f64,
}

pub fn continuity_modulus(r: &ReferenceOperator, phi: &NormingFunction, vs: &[ComplexMatrix]) -> Result<Vec<ContinuityPoint>> {
    let id = ComplexMatrix::identity(r.order());
    vs.iter()
        .map(|v| {
            let cs = cross_section_phi(r, v)?;
            Ok(ContinuityPoint {
                op_dist: (&r.t.conjugate_by(v) - &r.t).norm2(),
                phi_dist: op_norm(phi, &(&cs.phi - &id)),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContinuityTrend {
    /// Pairs `(j, k)` with `op_dist_k ≤ op_dist_j / 2`.
    pub pairs: usize,
    /// Fraction of those pairs with `phi_dist_k > phi_dist_j + 1e-9`.
    pub violation_fraction: f64,
    /// `phi_dist` of the last point is below `1e-6` whenever its `op_dist`
    /// is below `1e-8`.
    pub limit_ok: bool,
    pub holds: bool,
}

pub const TREND_MAX_VIOLATION: f64 = 0.05;

/// Monotone-trend evaluation of a continuity sequence.
pub fn continuity_trend(points: &[ContinuityPoint]) -> ContinuityTrend {
    let mut pairs = 0usize;
    let mut violations = 0usize;
    for (j, pj) in points.iter().enumerate() {
        for pk in &points[j + 1..] {
            if pk.op_dist <= pj.op_dist / 2.0 {
                pairs += 1;
                if pk.phi_dist > pj.phi_dist + 1e-9 {
                    violations += 1;
                }
            }
        }
    }
    let violation_fraction = if pairs == 0 { 0.0 } else { violations as f64 / pairs as f64 };
    let limit_ok = points.last().is_none_or(|p| p.op_dist > 1e-8 || p.phi_dist <= 1e-6);
    ContinuityTrend {
        pairs,
        violation_fraction,
        limit_ok,
        holds: violation_fraction <= TREND_MAX_VIOLATION && limit_ok,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OffdiagBound {
    /// `max_{i≠j} ‖E_iWE_j‖_Φ·|λ_i − λ_j| − ‖TW − WT‖_Φ`.
    pub max_violation: f64,
}

pub fn offdiag_bound_check(r: &ReferenceOperator, phi: &NormingFunction, w: &ComplexMatrix) -> Result<OffdiagBound> {
    r.t.ensure_same_order(w)?;
    w.ensure_unitary()?;
    let p = r.spectral.cluster_count();
    if p < 2 {
        return Err(LeafError::SingleCluster);
    }
    let rhs = op_norm(phi, &r.t.commutator(w));
    let mut max_violation = f64::NEG_INFINITY;
    for i in 0..p {
        for j in 0..p {
            if i == j {
                continue;
            }
            let block = &(&r.spectral.projections[i] * w) * &r.spectral.projections[j];
            let gap = (r.spectral.eigenvalues[i] - r.spectral.eigenvalues[j]).abs();
            max_violation = max_violation.max(op_norm(phi, &block) * gap - rhs);
        }
    }
    Ok(OffdiagBound { max_violation })
}

/// Monic polynomial whose roots are the eigenvalue clusters of `T` at `tol`.
pub fn minimal_polynomial(t: &ComplexMatrix, tol: f64) -> Result<Polynomial> {
    let eig = hermitian_eigen(t)?;
    let roots: Vec<f64> = cluster_values(&eig.values, tol).into_iter().map(|(v, _)| v).collect();
    Ok(Polynomial::from_roots(&roots))
}

/// Complex dimension of the C*-algebra generated by `T`: the number of
/// eigenvalue clusters away from zero.
pub fn generated_algebra_dimension(t: &ComplexMatrix, tol: f64) -> Result<usize> {
    let eig = hermitian_eigen(t)?;
    Ok(cluster_values(&eig.values, tol).into_iter().filter(|(v, _)| v.abs() > tol).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opcore::matrix::{C64, I, ONE, ZERO};
    use crate::opcore::{matrix_exp, svd::rank};
    use crate::random::{random_skew_hermitian, random_unitary, random_with_spectrum, seeded_rng, SeededRng};

    fn reference(t: &ComplexMatrix) -> ReferenceOperator {
        build_reference(t, 1e-9).unwrap()
    }

    fn example_v(alpha: f64) -> ComplexMatrix {
        let (c, s) = (0.8, 0.6);
        let ph = C64::from_polar(1.0, alpha);
        ComplexMatrix::from_rows(&[&[ph * c, C64::new(s, 0.0)], &[-ph * s, C64::new(c, 0.0)]])
    }

    fn near_identity(n: usize, scale: f64, rng: &mut SeededRng) -> ComplexMatrix {
        matrix_exp(&random_skew_hermitian(n, rng).scale_real(scale)).unwrap()
    }

    /// Block-diagonal unitary in the eigenbasis of `r`.
    fn stabilizer(r: &ReferenceOperator, rng: &mut SeededRng) -> ComplexMatrix {
        let n = r.order();
        let mut g = ComplexMatrix::zeros(n, n);
        for i in 0..r.spectral.cluster_count() {
            let b = r.spectral.block_basis(i);
            let u = random_unitary(b.cols(), 3.0, rng);
            g += &(&(&b * &u) * &b.adjoint());
        }
        g
    }

    #[test]
    fn reference_examples() {
        let r = reference(&ComplexMatrix::from_real_diag(&[1.0, 0.0]));
        // Ascending clusters: λ = 0 then λ = 1.
        assert_eq!(r.interp_polys[0].coeffs(), &[1.0, -1.0]);
        assert_eq!(r.interp_polys[1].coeffs(), &[0.0, 1.0]);

        let r = reference(&ComplexMatrix::from_real_diag(&[1.0, -1.0, 0.0]));
        let e1 = &r.interp_polys[2];
        for (x, want) in [(1.0, 1.0), (-1.0, 0.0), (0.0, 0.0)] {
            assert!((e1.eval(x) - want).abs() < 1e-15);
            assert!((e1.eval(x) - x * (x + 1.0) / 2.0).abs() < 1e-15);
        }
        assert!(r.interpolation_residual().unwrap() <= 1e-9);

        let r = reference(&ComplexMatrix::identity(3).scale_real(2.0));
        assert_eq!(r.interp_polys, vec![Polynomial::constant(1.0)]);

        let mut rng = seeded_rng(20);
        let t = random_with_spectrum(&[-1.0, 0.0, 0.0, 2.0, 3.5], &mut rng);
        assert!(reference(&t).interpolation_residual().unwrap() <= 1e-9);
    }

    #[test]
    fn neighborhood_examples() {
        let t = ComplexMatrix::from_real_diag(&[1.0, -1.0, 0.0]);
        let r = reference(&t);
        let at_t = neighborhood_check(&r, &t).unwrap();
        assert!(at_t.max_dev < 1e-12 && at_t.inside);

        let flipped = neighborhood_check(&r, &t.scale_real(-1.0)).unwrap();
        assert!((flipped.max_dev - 1.0).abs() < 1e-12);
        assert!(!flipped.inside);

        let mut rng = seeded_rng(21);
        let k = random_skew_hermitian(3, &mut rng);
        let mut last = f64::INFINITY;
        for step in 0..8 {
            let v = matrix_exp(&k.scale_real(0.5f64.powi(step))).unwrap();
            let c = neighborhood_check(&r, &t.conjugate_by(&v)).unwrap();
            if step >= 3 {
                assert!(c.inside);
            }
            assert!(c.max_dev <= last + 1e-12);
            last = c.max_dev;
        }
        assert!(matches!(neighborhood_check(&r, &ComplexMatrix::identity(2)), Err(LeafError::SizeMismatch { .. })));
    }

    #[test]
    fn delta_examples() {
        let t = ComplexMatrix::from_real_diag(&[1.0, -1.0]);
        let r = reference(&t);
        let commuting = ComplexMatrix::from_diag(&[I, ONE]);
        assert_eq!(delta_map(&r, &commuting).unwrap(), commuting);
        let swap = ComplexMatrix::from_rows(&[&[ZERO, ONE], &[ONE, ZERO]]);
        assert!(delta_map(&r, &swap).unwrap().frobenius_norm() < 1e-15);
        assert!(matches!(psi_map(&r, &swap), Err(LeafError::CornerSingular { .. })));
        assert!(matches!(delta_map(&r, &t.scale_real(2.0)), Err(LeafError::NotUnitary { .. })));

        let mut rng = seeded_rng(22);
        let t = random_with_spectrum(&[1.0, 2.0, 2.0, 4.0], &mut rng);
        let r = reference(&t);
        let v = near_identity(4, 0.05, &mut rng);
        let d = delta_map(&r, &v).unwrap();
        assert!((&d - &v).norm2() < 0.2);
        assert_eq!(rank(&d, 1e-8), 4);
        assert!((&d - &crate::orbits::pinching(&t, &v).unwrap()).norm2() < 1e-12);
    }

    #[test]
    fn psi_examples() {
        let t = ComplexMatrix::from_real_diag(&[1.0, -1.0]);
        let r = reference(&t);
        assert!((&psi_map(&r, &ComplexMatrix::identity(2)).unwrap() - &ComplexMatrix::identity(2)).norm2() < 1e-14);
        let commuting = ComplexMatrix::from_diag(&[C64::from_polar(1.0, 0.3), C64::from_polar(1.0, -1.1)]);
        assert!((&psi_map(&r, &commuting).unwrap() - &commuting.adjoint()).norm2() < 1e-14);

        for alpha in [0.0, 0.4, std::f64::consts::FRAC_PI_2, 2.5] {
            let psi = psi_map(&r, &example_v(alpha)).unwrap();
            let want = ComplexMatrix::from_diag(&[C64::from_polar(1.0, -alpha), ONE]);
            assert!((&psi - &want).norm2() < 1e-12, "alpha = {alpha}");
        }
    }

    #[test]
    fn phi_examples() {
        let t = ComplexMatrix::from_real_diag(&[1.0, -1.0]);
        let r = reference(&t);
        let id = ComplexMatrix::identity(2);
        let res = cross_section_phi(&r, &id).unwrap();
        assert!((&res.phi - &id).norm2() < 1e-14);
        assert_eq!(res.residual, 0.0);

        let commuting = ComplexMatrix::from_diag(&[C64::from_polar(1.0, 0.3), C64::from_polar(1.0, -1.1)]);
        assert!((&cross_section_phi(&r, &commuting).unwrap().phi - &id).norm2() < 1e-14);

        let v = example_v(std::f64::consts::FRAC_PI_2);
        let res = cross_section_phi(&r, &v).unwrap();
        let want = ComplexMatrix::from_rows(&[
            &[C64::new(0.8, 0.0), C64::new(0.0, -0.6)],
            &[C64::new(0.0, -0.6), C64::new(0.8, 0.0)],
        ]);
        assert!((&res.phi - &want).norm2() < 1e-12);
        assert!(res.residual <= 1e-12);
        assert!((res.corner_min_sv - 0.8).abs() < 1e-12);
    }

    #[test]
    fn section_properties_on_random_pairs() {
        let mut rng = seeded_rng(23);
        for spectrum in [vec![1.0, -1.0, 0.0], vec![0.0, 0.0, 2.0, 5.0], vec![1.0, 1.0, 1.0, -2.0, -2.0]] {
            let n = spectrum.len();
            let t = random_with_spectrum(&spectrum, &mut rng);
            let r = reference(&t);
            for _ in 0..5 {
                let v = near_identity(n, 0.2, &mut rng);
                let res = cross_section_phi(&r, &v).unwrap();
                assert!(res.residual <= 1e-8);
                assert!(res.phi.unitary_defect() <= 1e-9);
                assert!(res.psi.unitary_defect() <= 1e-9);
                assert!(t.commutator(&res.psi).norm2() <= 1e-9);
                assert!((&(&res.psi.adjoint() * &res.positive) - &res.delta).norm2() <= 1e-9);
                assert!(hermitian_eigen(&res.positive).unwrap().values[0] >= -1e-12);

                let again = cross_section_phi(&r, &res.phi).unwrap();
                assert!((&again.phi - &res.phi).norm2() <= 1e-8);

                let g = stabilizer(&r, &mut rng);
                assert!(well_definedness_check(&r, &v, &g).unwrap() <= 1e-8);
            }
        }
    }

    #[test]
    fn well_definedness_examples() {
        let mut rng = seeded_rng(24);
        let t = random_with_spectrum(&[1.0, 2.0, 2.0], &mut rng);
        let r = reference(&t);
        let v = near_identity(3, 0.2, &mut rng);
        assert_eq!(well_definedness_check(&r, &v, &ComplexMatrix::identity(3)).unwrap(), 0.0);
        let phase = ComplexMatrix::identity(3).scale(C64::from_polar(1.0, 0.7));
        assert!(well_definedness_check(&r, &v, &phase).unwrap() <= 1e-12);
        let generic = random_unitary(3, 2.0, &mut rng);
        assert!(matches!(well_definedness_check(&r, &v, &generic), Err(LeafError::NotCommuting { .. })));
    }

    #[test]
    fn continuity_examples() {
        let mut rng = seeded_rng(25);
        let t = random_with_spectrum(&[1.0, -1.0, 0.0, 0.0], &mut rng);
        let r = reference(&t);
        let phi = NormingFunction::schatten(2.0).unwrap();

        let ones = vec![ComplexMatrix::identity(4); 5];
        let pts = continuity_modulus(&r, &phi, &ones).unwrap();
        assert!(pts.iter().all(|p| p.op_dist < 1e-14 && p.phi_dist < 1e-14));

        let a = random_skew_hermitian(4, &mut rng);
        let a = a.scale_real(1.0 / op_norm(&NormingFunction::sum(), &a));
        let seq: Vec<ComplexMatrix> = (0..=20).map(|k| matrix_exp(&a.scale_real(0.5f64.powi(k))).unwrap()).collect();
        let pts = continuity_modulus(&r, &phi, &seq).unwrap();
        for w in pts.windows(2).skip(3) {
            let ratio = w[1].phi_dist / w[0].phi_dist;
            assert!((ratio - 0.5).abs() < 0.05, "ratio {ratio}");
        }
        assert!(pts.last().unwrap().phi_dist <= 1e-6);
        assert!(continuity_trend(&pts).holds);

        let noisy: Vec<ComplexMatrix> = seq.iter().map(|v| &stabilizer(&r, &mut rng) * v).collect();
        let noisy_pts = continuity_modulus(&r, &phi, &noisy).unwrap();
        for (p, q) in pts.iter().zip(&noisy_pts) {
            assert!((p.phi_dist - q.phi_dist).abs() <= 1e-8);
        }
    }

    #[test]
    fn trend_flags_growth() {
        let pts: Vec<ContinuityPoint> =
            (0..10).map(|k| ContinuityPoint { op_dist: 0.5f64.powi(k), phi_dist: k as f64 }).collect();
        let trend = continuity_trend(&pts);
        assert!(trend.violation_fraction > 0.9);
        assert!(!trend.holds);
    }

    #[test]
    fn offdiag_examples() {
        let t = ComplexMatrix::from_real_diag(&[1.0, -1.0]);
        let r = reference(&t);
        let max = NormingFunction::max();
        let swap = ComplexMatrix::from_rows(&[&[ZERO, ONE], &[ONE, ZERO]]);
        // [T, W] has singular values (2, 2); ‖E₁WE₂‖·2 = 2.
        let b = offdiag_bound_check(&r, &max, &swap).unwrap();
        assert!(b.max_violation.abs() < 1e-12);

        let commuting = ComplexMatrix::from_diag(&[I, ONE]);
        assert!(offdiag_bound_check(&r, &max, &commuting).unwrap().max_violation <= 0.0);

        let scalar = reference(&ComplexMatrix::identity(2));
        assert!(matches!(offdiag_bound_check(&scalar, &max, &swap), Err(LeafError::SingleCluster)));

        let mut rng = seeded_rng(26);
        let dual = NormingFunction::LorentzDual(crate::norming::PiSequence::power(0.5).unwrap());
        for _ in 0..50 {
            let t = random_with_spectrum(&[0.0, 0.1, 1.0, 1.5], &mut rng);
            let r = reference(&t);
            let w = random_unitary(4, 2.0, &mut rng);
            assert!(offdiag_bound_check(&r, &dual, &w).unwrap().max_violation <= 1e-9);
        }
    }

    #[test]
    fn minimal_polynomial_examples() {
        let p = minimal_polynomial(&ComplexMatrix::from_real_diag(&[1.0, 1.0, 0.0]), 1e-9).unwrap();
        assert_eq!(p.coeffs(), &[0.0, -1.0, 1.0]);
        let p = minimal_polynomial(&ComplexMatrix::zeros(3, 3), 1e-9).unwrap();
        assert_eq!(p.coeffs(), &[0.0, 1.0]);
        let t = ComplexMatrix::from_real_diag(&[3.0, 3.0, 5.0, 0.0]);
        let p = minimal_polynomial(&t, 1e-9).unwrap();
        assert_eq!(p.coeffs(), &[0.0, 15.0, -8.0, 1.0]);
        // Oracle: evaluate (x − 3)(x − 5)x on T by matrix products.
        let id = ComplexMatrix::identity(4);
        let prod = &(&(&t - &id.scale_real(3.0)) * &(&t - &id.scale_real(5.0))) * &t;
        assert!(prod.frobenius_norm() < 1e-12);

        let mut rng = seeded_rng(27);
        let t = random_with_spectrum(&[-1.0, 0.5, 0.5, 2.0], &mut rng);
        let p = minimal_polynomial(&t, 1e-9).unwrap();
        assert_eq!(p.degree(), Some(3));
        let pt = hermitian_function(&t, |x| p.eval(x)).unwrap();
        assert!(pt.norm2() <= 1e-9 * (1.0 + t.norm2()).powi(3));
    }

    /// Oracle: rank of the span of `T, T², …, Tⁿ`.
    fn power_span_dim(t: &ComplexMatrix) -> usize {
        let n = t.rows();
        let mut powers = vec![t.clone()];
        for _ in 1..n {
            let next = powers.last().unwrap() * t;
            powers.push(next);
        }
        let m = ComplexMatrix::from_fn(n * n, n, |r, c| powers[c].data()[r]);
        rank(&m, 1e-9)
    }

    #[test]
    fn algebra_dimension_examples() {
        let t = ComplexMatrix::from_real_diag(&[3.0, 3.0, 5.0, 0.0]);
        assert_eq!(generated_algebra_dimension(&t, 1e-9).unwrap(), 2);
        assert_eq!(power_span_dim(&t), 2);
        assert_eq!(generated_algebra_dimension(&ComplexMatrix::zeros(3, 3), 1e-9).unwrap(), 0);
        let mut rng = seeded_rng(28);
        let t = random_with_spectrum(&[1.0, -2.0, 0.5, 3.0], &mut rng);
        assert_eq!(generated_algebra_dimension(&t, 1e-9).unwrap(), 4);
        assert_eq!(power_span_dim(&t), 4);
    }
}
