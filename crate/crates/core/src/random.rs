//! Seeded random matrix generators.
//!
//! All randomness flows from an explicit seed through ChaCha8, so a seed
//! reproduces its output bit for bit on every platform. Skew-Hermitian
//! draws use independent standard normal real and imaginary parts followed
//! by antisymmetrization.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::opcore::calculus::matrix_exp;
use crate::opcore::matrix::{ComplexMatrix, C64};

pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn normal(rng: &mut SeededRng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn uniform(rng: &mut SeededRng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..hi)
}

pub fn index(rng: &mut SeededRng, lo: usize, hi_inclusive: usize) -> usize {
    rng.random_range(lo..=hi_inclusive)
}

pub fn complex_normal(rng: &mut SeededRng) -> C64 {
    C64::new(normal(rng), normal(rng))
}

/// Entries with independent standard normal real and imaginary parts.
pub fn random_complex(rows: usize, cols: usize, rng: &mut SeededRng) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_normal(rng))
}

pub fn random_hermitian(n: usize, rng: &mut SeededRng) -> ComplexMatrix {
    random_complex(n, n, rng).hermitian_part()
}

pub fn random_skew_hermitian(n: usize, rng: &mut SeededRng) -> ComplexMatrix {
    random_complex(n, n, rng).skew_part()
}

/// `exp(scale · K)` for a random skew-Hermitian `K`.
pub fn random_unitary(n: usize, scale: f64, rng: &mut SeededRng) -> ComplexMatrix {
    let k = random_skew_hermitian(n, rng).scale_real(scale);
    matrix_exp(&k).expect("skew part is skew-Hermitian")
}

/// Random unit vector in `Cⁿ`.
pub fn random_unit_vector(n: usize, rng: &mut SeededRng) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..n).map(|_| complex_normal(rng)).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// `U diag(values) U*` for a Haar-like random unitary `U`.
pub fn random_with_spectrum(values: &[f64], rng: &mut SeededRng) -> ComplexMatrix {
    let n = values.len();
    let u = random_unitary(n, 3.0, rng);
    ComplexMatrix::from_real_diag(values).conjugate_by(&u.adjoint())
}

/// Positive semidefinite contraction with spectrum drawn from `[0, 1]`.
pub fn random_psd_contraction(n: usize, rng: &mut SeededRng) -> ComplexMatrix {
    let values: Vec<f64> = (0..n).map(|_| uniform(rng, 0.0, 1.0)).collect();
    random_with_spectrum(&values, rng)
}

/// Random matrix of rank at most `k`.
pub fn random_low_rank(n: usize, k: usize, rng: &mut SeededRng) -> ComplexMatrix {
    let left = random_complex(n, k, rng);
    let right = random_complex(k, n, rng);
    &left * &right
}
