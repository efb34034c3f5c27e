//! Symmetric norming functions and the unitarily invariant matrix norms
//! they induce through singular values.
//!
//! A norming function `Φ` acts on finitely supported real sequences; on a
//! matrix, `‖A‖_Φ = Φ(s₁(A), s₂(A), …)`. Every function here sorts the
//! absolute values of its input in descending order first, which makes the
//! result independent of the order of the input.

mod pi;

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{LeafError, Result};
use crate::opcore::matrix::{ComplexMatrix, C64};
use crate::opcore::svd::singular_values;
use crate::opcore::{function_calculus, rank};
use crate::random::seeded_rng;

pub use pi::{pi_regularity, PiRegularity, PiRule, PiSequence, DEFAULT_HORIZON};

/// Schatten exponent `p` carried together with its conjugate `q`, so that
/// taking the adjoint twice returns the same value bit for bit. Equality
/// compares `p` only.
#[derive(Debug, Clone, Copy)]
pub struct Exponent {
    p: f64,
    q: f64,
}

impl Exponent {
    pub fn new(p: f64) -> Self {
        Self { p, q: conjugate_exponent(p) }
    }

    pub fn p(self) -> f64 {
        self.p
    }

    /// The conjugate exponent, `1/p + 1/q = 1`.
    pub fn q(self) -> f64 {
        self.q
    }

    fn swap(self) -> Self {
        Self { p: self.q, q: self.p }
    }
}

impl PartialEq for Exponent {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
    }
}

/// A closed-form symmetric norming function.
#[derive(Debug, Clone, PartialEq)]
pub enum NormingFunction {
    /// `ℓ^p` norm, `1 ≤ p ≤ ∞`.
    Schatten(Exponent),
    /// `Σ π_j ξ_j` on the decreasing rearrangement.
    LorentzPi(PiSequence),
    /// `sup_n (ξ₁ + … + ξ_n) / (π₁ + … + π_n)` on the decreasing rearrangement.
    LorentzDual(PiSequence),
}

impl NormingFunction {
    pub fn schatten(p: f64) -> Result<Self> {
        if p >= 1.0 {
            Ok(Self::Schatten(Exponent::new(p)))
        } else {
            Err(LeafError::InvalidParameter(format!("Schatten exponent p = {p} must be at least 1")))
        }
    }

    /// Trace norm, `Σ |ξ_j|`.
    pub fn sum() -> Self {
        Self::Schatten(Exponent::new(1.0))
    }

    /// Operator norm, `max |ξ_j|`.
    pub fn max() -> Self {
        Self::Schatten(Exponent::new(f64::INFINITY))
    }

    /// `Φ(ξ)` for a finite sequence.
    pub fn eval(&self, xi: &[f64]) -> f64 {
        let s = decreasing_abs(xi);
        match self {
            Self::Schatten(e) => lp_norm(&s, e.p()),
            Self::LorentzPi(pi) => s.iter().enumerate().map(|(k, x)| pi.term(k + 1) * x).sum(),
            Self::LorentzDual(pi) => {
                let mut num = 0.0;
                let mut den = 0.0;
                let mut best = 0.0f64;
                for (k, x) in s.iter().enumerate() {
                    num += x;
                    den += pi.term(k + 1);
                    best = best.max(num / den);
                }
                best
            }
        }
    }

    /// The adjoint norming function `Φ*`. Closed form for every kind:
    /// Schatten `p ↦ q` with `1/p + 1/q = 1`, and the Lorentz pair swaps.
    pub fn adjoint(&self) -> Self {
        match self {
            Self::Schatten(e) => Self::Schatten(e.swap()),
            Self::LorentzPi(pi) => Self::LorentzDual(pi.clone()),
            Self::LorentzDual(pi) => Self::LorentzPi(pi.clone()),
        }
    }
}

impl fmt::Display for NormingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Schatten(e) if e.p().is_infinite() => write!(f, "schatten:inf"),
            Self::Schatten(e) => write!(f, "schatten:{}", e.p()),
            Self::LorentzPi(pi) => write!(f, "lorentz:{pi}"),
            Self::LorentzDual(pi) => write!(f, "lorentz-dual:{pi}"),
        }
    }
}

impl FromStr for NormingFunction {
    type Err = LeafError;

    /// Parses `sum`, `max`, `schatten:p` (with `p = inf` allowed),
    /// `lorentz:<weights>` and `lorentz-dual:<weights>`, where `<weights>`
    /// is a [`PiSequence`] form such as `power:0.5`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || LeafError::InvalidParameter(format!("unrecognized norming function `{s}`"));
        match s.split_once(':') {
            None if s == "sum" => Ok(Self::sum()),
            None if s == "max" => Ok(Self::max()),
            Some(("schatten", "inf")) => Ok(Self::max()),
            Some(("schatten", p)) => Self::schatten(p.parse::<f64>().map_err(|_| bad())?),
            Some(("lorentz", rest)) => Ok(Self::LorentzPi(rest.parse()?)),
            Some(("lorentz-dual", rest)) => Ok(Self::LorentzDual(rest.parse()?)),
            _ => Err(bad()),
        }
    }
}

/// `q` with `1/p + 1/q = 1`.
pub fn conjugate_exponent(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

fn decreasing_abs(xi: &[f64]) -> Vec<f64> {
    let mut s: Vec<f64> = xi.iter().map(|x| x.abs()).collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

fn lp_norm(s: &[f64], p: f64) -> f64 {
    let top = s.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0.0;
    }
    if p.is_infinite() {
        top
    } else if p == 1.0 {
        s.iter().sum()
    } else if p == 2.0 {
        s.iter().map(|x| x * x).sum::<f64>().sqrt()
    } else {
        top * s.iter().map(|x| (x / top).powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

/// `Φ` evaluated on a finite sequence.
pub fn eval_snf(phi: &NormingFunction, xi: &[f64]) -> f64 {
    phi.eval(xi)
}

/// `‖A‖_Φ = Φ(singular values of A)`.
pub fn op_norm(phi: &NormingFunction, a: &ComplexMatrix) -> f64 {
    phi.eval(&singular_values(a))
}

pub fn adjoint_snf(phi: &NormingFunction) -> NormingFunction {
    phi.adjoint()
}

/// One-sided numerical check of the adjoint: the closed-form `Φ*(η)` minus
/// the best ratio `Σ ξ_j η_j / Φ(ξ)` found over deterministic candidates
/// (`η` itself, leading indicator vectors, the Hölder maximizer for
/// Schatten norms, the weight prefix for the dual Lorentz norm) and
/// `sample_count` random nonincreasing `ξ ≥ 0`. The result should never be
/// meaningfully negative.
pub fn adjoint_defect(phi: &NormingFunction, eta: &[f64], sample_count: usize, seed: u64) -> f64 {
    let eta = decreasing_abs(eta);
    let closed = phi.adjoint().eval(&eta);
    let len = eta.len();
    if len == 0 {
        return closed;
    }
    let ratio = |xi: &[f64]| -> f64 {
        let d = phi.eval(xi);
        if d == 0.0 {
            return 0.0;
        }
        xi.iter().zip(&eta).map(|(x, y)| x * y).sum::<f64>() / d
    };

    let mut best = ratio(&eta);
    for k in 1..=len {
        let ind: Vec<f64> = (0..len).map(|j| if j < k { 1.0 } else { 0.0 }).collect();
        best = best.max(ratio(&ind));
    }
    match phi {
        NormingFunction::Schatten(e) if e.p().is_finite() && e.p() > 1.0 => {
            let q = e.q();
            let xi: Vec<f64> = eta.iter().map(|y| y.powf(q - 1.0)).collect();
            best = best.max(ratio(&xi));
        }
        NormingFunction::LorentzDual(pi) => {
            best = best.max(ratio(&pi.terms(len)));
        }
        _ => {}
    }

    let mut rng = seeded_rng(seed);
    for _ in 0..sample_count {
        let mut xi: Vec<f64> = (0..len).map(|_| rng.random::<f64>()).collect();
        if rng.random::<bool>() {
            for x in xi.iter_mut() {
                *x = x.powi(4);
            }
        }
        xi.sort_by(|a, b| b.total_cmp(a));
        best = best.max(ratio(&xi));
    }
    closed - best
}

/// Trace pairing against the Hölder-type bound for the adjoint ideal.
#[derive(Debug, Clone, Copy)]
pub struct DualityGap {
    /// `Tr(TS)`.
    pub pairing: C64,
    /// `‖T‖_{Φ*} · ‖S‖_Φ`.
    pub bound: f64,
    /// `bound − |pairing|`.
    pub gap: f64,
}

pub fn duality_gap(phi: &NormingFunction, t: &ComplexMatrix, s: &ComplexMatrix) -> Result<DualityGap> {
    t.ensure_same_order(s)?;
    let pairing = (t * s).trace();
    let bound = op_norm(&phi.adjoint(), t) * op_norm(phi, s);
    Ok(DualityGap { pairing, bound, gap: bound - pairing.norm() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SandwichCheck {
    pub lower_ok: bool,
    pub upper_ok: bool,
}

/// Rank threshold relative to the largest singular value.
pub const RANK_REL_TOL: f64 = 1e-10;

/// Checks `‖F₁−F₂‖ ≤ ‖F₁−F₂‖_Φ ≤ 2k‖F₁−F₂‖` for matrices of rank at most `k`.
pub fn rank_sandwich_check(
    phi: &NormingFunction,
    k: usize,
    f1: &ComplexMatrix,
    f2: &ComplexMatrix,
) -> Result<SandwichCheck> {
    f1.ensure_same_order(f2)?;
    for f in [f1, f2] {
        let r = rank(f, RANK_REL_TOL);
        if r > k {
            return Err(LeafError::RankTooHigh { rank: r, k });
        }
    }
    let d = f1 - f2;
    let s = singular_values(&d);
    let op = s[0];
    let phi_norm = phi.eval(&s);
    Ok(SandwichCheck { lower_ok: op <= phi_norm + 1e-9, upper_ok: phi_norm <= 2.0 * k as f64 * op + 1e-9 })
}

/// `‖f(A)‖_Φ ≤ ‖A‖_Φ + 1e-9` for a PSD contraction `A` and `f` with
/// `0 ≤ f(t) ≤ t` nondecreasing.
pub fn calculus_monotonicity_check(
    phi: &NormingFunction,
    a: &ComplexMatrix,
    f: impl Fn(f64) -> f64,
) -> Result<bool> {
    let fa = function_calculus(a, f)?;
    Ok(op_norm(phi, &fa) <= op_norm(phi, a) + 1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_complex, random_low_rank, random_psd_contraction};
    use proptest::prelude::*;
    use rand::Rng;

    fn all_phis() -> Vec<NormingFunction> {
        let pi = PiSequence::power(0.5).unwrap();
        vec![
            NormingFunction::sum(),
            NormingFunction::schatten(1.5).unwrap(),
            NormingFunction::schatten(2.0).unwrap(),
            NormingFunction::schatten(3.0).unwrap(),
            NormingFunction::max(),
            NormingFunction::LorentzPi(pi.clone()),
            NormingFunction::LorentzDual(pi),
        ]
    }

    #[test]
    fn display_strings_round_trip() {
        for phi in all_phis() {
            assert_eq!(phi.to_string().parse::<NormingFunction>().unwrap(), phi);
        }
        assert_eq!("sum".parse::<NormingFunction>().unwrap(), NormingFunction::sum());
        assert_eq!("max".parse::<NormingFunction>().unwrap(), NormingFunction::max());
        assert_eq!("schatten:1.5".parse::<NormingFunction>().unwrap(), NormingFunction::schatten(1.5).unwrap());
        for bad in ["schatten:0.5", "schatten:x", "lorentz:power:1", "frobenius", "lorentz-dual:"] {
            assert!(bad.parse::<NormingFunction>().is_err(), "{bad}");
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(eval_snf(&NormingFunction::sum(), &[3.0, 1.0]), 4.0);
        assert_eq!(eval_snf(&NormingFunction::max(), &[3.0, 1.0]), 3.0);
        // max(3/1, 4/2) by direct enumeration of the partial-sum ratios.
        let dual = NormingFunction::LorentzDual(PiSequence::constant());
        assert_eq!(eval_snf(&dual, &[3.0, 1.0]), 3.0);
        assert_eq!(eval_snf(&dual, &[1.0, 3.0]), 3.0);
    }

    #[test]
    fn matrix_norm_examples() {
        assert_eq!(op_norm(&NormingFunction::sum(), &ComplexMatrix::identity(2)), 2.0);
        let d = ComplexMatrix::from_real_diag(&[3.0, -1.0]);
        assert!((op_norm(&NormingFunction::schatten(2.0).unwrap(), &d) - 10f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn adjoint_pairs() {
        assert_eq!(NormingFunction::schatten(2.0).unwrap().adjoint(), NormingFunction::schatten(2.0).unwrap());
        assert_eq!(NormingFunction::sum().adjoint(), NormingFunction::max());
        assert_eq!(NormingFunction::max().adjoint(), NormingFunction::sum());
        let pi = PiSequence::power(0.5).unwrap();
        assert_eq!(NormingFunction::LorentzPi(pi.clone()).adjoint(), NormingFunction::LorentzDual(pi));
        for phi in all_phis() {
            assert_eq!(phi.adjoint().adjoint(), phi);
        }
    }

    #[test]
    fn adjoint_defect_examples() {
        let two = NormingFunction::schatten(2.0).unwrap();
        let d = adjoint_defect(&two, &[1.0, 0.0], 0, 0);
        assert!((-1e-9..=1e-6).contains(&d));
        let d = adjoint_defect(&NormingFunction::sum(), &[5.0, 3.0], 50, 1);
        assert!(d.abs() <= 1e-9);
        for phi in all_phis() {
            assert_eq!(adjoint_defect(&phi, &[0.0], 10, 2), 0.0);
        }
    }

    #[test]
    fn adjoint_dominates_samples() {
        let mut rng = seeded_rng(17);
        for phi in all_phis() {
            for seed in 0..20 {
                let len = 1 + (seed as usize % 8);
                let eta: Vec<f64> = (0..len).map(|_| rng.random::<f64>() * 3.0).collect();
                assert!(adjoint_defect(&phi, &eta, 200, seed) >= -1e-9, "{phi}");
            }
        }
    }

    #[test]
    fn duality_examples() {
        let i2 = ComplexMatrix::identity(2);
        let g = duality_gap(&NormingFunction::schatten(2.0).unwrap(), &i2, &i2).unwrap();
        assert!((g.pairing.re - 2.0).abs() < 1e-15 && (g.bound - 2.0).abs() < 1e-15 && g.gap.abs() < 1e-15);
        let t = ComplexMatrix::from_real_diag(&[1.0, 0.0]);
        let s = ComplexMatrix::from_real_diag(&[0.0, 1.0]);
        for phi in all_phis() {
            let g = duality_gap(&phi, &t, &s).unwrap();
            assert_eq!(g.pairing.norm(), 0.0);
            assert_eq!(g.gap, g.bound);
        }
        assert!(duality_gap(&NormingFunction::sum(), &i2, &ComplexMatrix::identity(3)).is_err());
    }

    #[test]
    fn sandwich_examples() {
        let mut rng = seeded_rng(4);
        let f = random_low_rank(4, 1, &mut rng);
        let phi = NormingFunction::sum();
        let same = rank_sandwich_check(&phi, 1, &f, &f).unwrap();
        assert!(same.lower_ok && same.upper_ok);
        let zero = ComplexMatrix::zeros(4, 4);
        let c = rank_sandwich_check(&phi, 1, &f, &zero).unwrap();
        assert!(c.lower_ok && c.upper_ok);
        // Trace norm of a rank-one matrix equals its spectral norm.
        let s = singular_values(&f);
        assert!((phi.eval(&s) - s[0]).abs() < 1e-9 * s[0]);
        let big = random_complex(4, 4, &mut rng);
        assert!(matches!(rank_sandwich_check(&phi, 1, &big, &zero), Err(LeafError::RankTooHigh { .. })));
    }

    #[test]
    fn calculus_monotonicity_examples() {
        let mut rng = seeded_rng(8);
        let f = |t: f64| 1.0 - (1.0 - t).sqrt();
        for _ in 0..20 {
            let a = random_psd_contraction(5, &mut rng);
            for phi in all_phis() {
                assert!(calculus_monotonicity_check(&phi, &a, |_| 0.0).unwrap());
                assert!(calculus_monotonicity_check(&phi, &a, |t| t).unwrap());
                assert!(calculus_monotonicity_check(&phi, &a, |t| f(t).min(t)).unwrap());
                // Oracle: apply f to the eigenvalues directly, then compare.
                let eig = crate::opcore::hermitian_eigen(&a).unwrap();
                let lhs: Vec<f64> = eig.values.iter().map(|&t| f(t.clamp(0.0, 1.0))).collect();
                assert!(phi.eval(&lhs) <= phi.eval(&eig.values) + 1e-9);
                assert!(eig.values.iter().all(|&t| f(t.clamp(0.0, 1.0)) <= t.clamp(0.0, 1.0) + 1e-15));
            }
        }
    }

    #[test]
    fn op_norm_dominates_operator_norm() {
        let mut rng = seeded_rng(21);
        for _ in 0..20 {
            let a = random_complex(5, 5, &mut rng);
            let s = singular_values(&a);
            for phi in all_phis() {
                let v = op_norm(&phi, &a);
                assert!(s[0] <= v + 1e-9);
                assert!(v <= s.iter().sum::<f64>() + 1e-9);
            }
        }
    }

    #[test]
    fn ideal_property() {
        let mut rng = seeded_rng(22);
        for _ in 0..20 {
            let a = random_complex(4, 4, &mut rng);
            let t = random_complex(4, 4, &mut rng);
            let b = random_complex(4, 4, &mut rng);
            let atb = &(&a * &t) * &b;
            for phi in all_phis() {
                assert!(op_norm(&phi, &atb) <= a.norm2() * op_norm(&phi, &t) * b.norm2() + 1e-9);
            }
        }
    }

    fn seq() -> impl Strategy<Value = Vec<f64>> {
        proptest::collection::vec(-10.0f64..10.0, 1..12)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn axioms_hold(xi in seq(), eta in seq(), alpha in -5.0f64..5.0) {
            let len = xi.len().max(eta.len());
            let mut x = xi.clone();
            x.resize(len, 0.0);
            let mut y = eta.clone();
            y.resize(len, 0.0);
            let sum: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
            let scaled: Vec<f64> = x.iter().map(|a| alpha * a).collect();
            let mut rev = x.clone();
            rev.reverse();
            for phi in all_phis() {
                let fx = phi.eval(&x);
                if x.iter().any(|&v| v != 0.0) {
                    prop_assert!(fx > 0.0);
                }
                prop_assert!((phi.eval(&scaled) - alpha.abs() * fx).abs() <= 1e-12 * fx.max(1.0) * alpha.abs().max(1.0));
                prop_assert!(phi.eval(&sum) <= fx + phi.eval(&y) + 1e-9);
                prop_assert_eq!(phi.eval(&[1.0]), 1.0);
                prop_assert_eq!(phi.eval(&rev), fx);
            }
        }

        #[test]
        fn sandwich_between_extremes(xi in seq()) {
            let max = NormingFunction::max().eval(&xi);
            let sum = NormingFunction::sum().eval(&xi);
            for phi in all_phis() {
                let v = phi.eval(&xi);
                prop_assert!(max <= v + 1e-9 && v <= sum + 1e-9);
            }
        }

        #[test]
        fn schatten_adjoint_involution(p in 1.0f64..50.0) {
            let phi = NormingFunction::schatten(p).unwrap();
            prop_assert_eq!(phi.adjoint().adjoint(), phi.clone());
            match phi.adjoint() {
                NormingFunction::Schatten(e) => prop_assert!((1.0 / e.p() + 1.0 / p - 1.0).abs() <= 1e-12),
                other => prop_assert!(false, "unexpected {other}"),
            }
        }
    }
}
