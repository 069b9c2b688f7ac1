//! Reference computations that do not share code paths with `twosided`.
//!
//! The acceptance suite in `tests/acceptance.rs` compares the library
//! against these: plain trapezoid quadrature, an O(Z²) DFT and the
//! nalgebra SVD.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twosided::{CMatrix, C64};

/// Equispaced nodes on `[-half, half]` with the composite trapezoid rule.
pub struct Trapezoid {
    pub nodes: Vec<f64>,
    pub step: f64,
}

impl Trapezoid {
    pub fn new(half: f64, step: f64) -> Self {
        let n = (half / step).round() as i64;
        Trapezoid {
            nodes: (-n..=n).map(|k| k as f64 * step).collect(),
            step,
        }
    }

    /// `(2π)^{-1/2} ∫ f(t) e^{-iωt} dt` from samples of `f` on the nodes.
    pub fn fourier(&self, samples: &[C64], omega: f64) -> C64 {
        let s: C64 = self
            .nodes
            .iter()
            .zip(samples)
            .map(|(&t, &f)| f * C64::from_polar(1.0, -omega * t))
            .sum();
        s * self.step / (2.0 * PI).sqrt()
    }

    pub fn integrate(&self, samples: &[C64]) -> C64 {
        samples.iter().sum::<C64>() * self.step
    }
}

/// Direct evaluation of `X_k = Σ_m x_m e^{-2πikm/Z}`.
pub fn naive_dft(x: &[f64]) -> Vec<C64> {
    let z = x.len();
    (0..z)
        .map(|k| {
            x.iter()
                .enumerate()
                .map(|(m, &v)| C64::from_polar(v, -2.0 * PI * ((k * m) % z) as f64 / z as f64))
                .sum()
        })
        .collect()
}

pub fn random_complex(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    })
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn to_nalgebra(a: &CMatrix) -> nalgebra::DMatrix<C64> {
    nalgebra::DMatrix::from_fn(a.rows(), a.cols(), |i, j| a[(i, j)])
}

/// Singular values from nalgebra, largest first.
pub fn reference_singular_values(a: &CMatrix) -> Vec<f64> {
    let mut s: Vec<f64> = to_nalgebra(a).singular_values().iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}
