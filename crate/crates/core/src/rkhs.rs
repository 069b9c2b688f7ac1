//! Finite-dimensional reproducing kernel Hilbert spaces with two-sided
//! (time and frequency) point evaluations.
//!
//! The Fourier-symmetric Sobolev space is truncated to Hermite modes
//! `0..=N` with inner product `⟨f, g⟩ = Σ a_n conj(b_n) E_n`, `E_n = n + 1/2`.
//! Its kernel and the representers of `f ↦ f̂(ω)` are then finite sums:
//!
//! ```text
//! K(x, y)  = Σ E_n⁻¹ φ_n(x) φ_n(y)
//! L_ω(t)   = Σ E_n⁻¹ iⁿ φ_n(ω) φ_n(t)      = conj(K̂_t(ω))
//! K̂_t(ω)   = Σ E_n⁻¹ (-i)ⁿ φ_n(ω) φ_n(t)
//! L̂_ω'(ω)  = Σ E_n⁻¹ φ_n(ω') φ_n(ω)
//! ```

use crate::basis::{hermite_all, i_pow, minus_i_pow, BasisFamily};
use crate::error::{Error, Result};
use crate::numerics::{solve_min_norm, CMatrix, HermitianFactor, C64};
use crate::sampling::SamplingScheme;

pub const DEFAULT_TRUNCATION: usize = 32;

/// `span{Φ_0 … Φ_N}` with the bilinear form `aᵀ G b`.
#[derive(Debug, Clone)]
pub struct GramRKHS {
    family: BasisFamily,
    gram: CMatrix,
    factor: HermitianFactor,
}

impl GramRKHS {
    /// Fails unless `gram` is an `order × order` Hermitian positive definite matrix.
    pub fn new(family: BasisFamily, gram: CMatrix) -> Result<Self> {
        let n = family.order();
        if gram.shape() != (n, n) {
            return Err(Error::DimensionMismatch(format!(
                "Gram matrix is {}x{} but the family has {n} functions",
                gram.rows(),
                gram.cols()
            )));
        }
        let factor = HermitianFactor::new(&gram)?;
        Ok(GramRKHS {
            family,
            gram,
            factor,
        })
    }

    pub fn family(&self) -> &BasisFamily {
        &self.family
    }

    pub fn gram(&self) -> &CMatrix {
        &self.gram
    }

    fn features(&self, x: f64) -> Vec<C64> {
        self.family
            .eval_all(x)
            .into_iter()
            .map(|v| C64::new(v, 0.0))
            .collect()
    }

    /// Basis coefficients of the representer `K_y`, i.e. `G⁻¹ Φ(y)`.
    pub fn representer_coeffs(&self, y: f64) -> Vec<C64> {
        self.factor.solve(&self.features(y))
    }

    /// `K(x, y) = Φ(x)ᵀ G⁻¹ Φ(y)`.
    pub fn kernel_eval(&self, x: f64, y: f64) -> C64 {
        let phi_x = self.features(x);
        let k_y = self.representer_coeffs(y);
        phi_x.iter().zip(&k_y).map(|(a, b)| a * b).sum()
    }

    /// `aᵀ G b`.
    pub fn inner(&self, a: &[C64], b: &[C64]) -> C64 {
        let gb = self.gram.mul_vec(b);
        a.iter().zip(&gb).map(|(x, y)| x * y).sum()
    }
}

/// Truncated Fourier-symmetric Sobolev kernel over Hermite modes `0..modes`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SobolevKernel {
    modes: usize,
}

impl Default for SobolevKernel {
    fn default() -> Self {
        SobolevKernel {
            modes: DEFAULT_TRUNCATION,
        }
    }
}

impl SobolevKernel {
    /// Kernel truncated to `modes` Hermite functions (`N + 1 = modes`).
    pub fn new(modes: usize) -> Result<Self> {
        if modes == 0 {
            return Err(Error::InvalidInput(
                "Sobolev kernel needs at least one mode".into(),
            ));
        }
        Ok(SobolevKernel { modes })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    /// `E_n = n + 1/2`.
    pub fn weight(n: usize) -> f64 {
        n as f64 + 0.5
    }

    pub fn weights(&self) -> Vec<f64> {
        (0..self.modes).map(Self::weight).collect()
    }

    /// The same space as a [`GramRKHS`] with `G = diag(E_0 … E_N)`.
    pub fn as_gram(&self) -> Result<GramRKHS> {
        let diag: Vec<C64> = self
            .weights()
            .into_iter()
            .map(|e| C64::new(e, 0.0))
            .collect();
        GramRKHS::new(BasisFamily::hermite(self.modes)?, CMatrix::diag(&diag))
    }

    fn hermite(&self, x: f64) -> Vec<f64> {
        hermite_all(self.modes - 1, x)
    }

    /// `Σ E_n⁻¹ phase_n φ_n(a) φ_n(b)` from precomputed Hermite vectors.
    fn weighted_sum(phi_a: &[f64], phi_b: &[f64], phase: impl Fn(usize) -> C64) -> C64 {
        phi_a
            .iter()
            .zip(phi_b)
            .enumerate()
            .map(|(n, (a, b))| phase(n) * (a * b / Self::weight(n)))
            .sum()
    }

    /// `K(x, y)`.
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        Self::weighted_sum(&self.hermite(x), &self.hermite(y), |_| C64::new(1.0, 0.0)).re
    }

    /// Representer of `f ↦ f̂(ω)` evaluated at time `t`: `L_ω(t)`.
    pub fn freq_representer_eval(&self, omega: f64, t: f64) -> C64 {
        Self::weighted_sum(&self.hermite(omega), &self.hermite(t), i_pow)
    }

    /// Fourier transform of `K_t` (first variable) at `ω`: `K̂_t(ω)`.
    pub fn kernel_fourier_eval(&self, t: f64, omega: f64) -> C64 {
        Self::weighted_sum(&self.hermite(omega), &self.hermite(t), minus_i_pow)
    }

    /// `L̂_{ω'}(ω)`; equal to `K(ω', ω)` by Fourier symmetry.
    pub fn freq_freq_eval(&self, omega_rep: f64, omega: f64) -> f64 {
        self.eval(omega_rep, omega)
    }
}

/// The `(K+L) × (K+L)` system relating representer coefficients `(α, β)` to
/// the samples `(c, ĉ)`. Row `j` is a measurement, column `i` a representer.
pub fn assemble_block(kernel: &SobolevKernel, scheme: &SamplingScheme) -> CMatrix {
    let k = scheme.num_time();
    let n = scheme.len();
    let t_phi: Vec<Vec<f64>> = scheme
        .time_nodes()
        .iter()
        .map(|&t| kernel.hermite(t))
        .collect();
    let w_phi: Vec<Vec<f64>> = scheme
        .freq_nodes()
        .iter()
        .map(|&w| kernel.hermite(w))
        .collect();
    let one = |_| C64::new(1.0, 0.0);

    CMatrix::from_fn(n, n, |row, col| match (row < k, col < k) {
        // K_{t_i}(t_j)
        (true, true) => SobolevKernel::weighted_sum(&t_phi[col], &t_phi[row], one),
        // L_{ω_i}(t_j)
        (true, false) => SobolevKernel::weighted_sum(&w_phi[col - k], &t_phi[row], i_pow),
        // K̂_{t_i}(ω_j)
        (false, true) => SobolevKernel::weighted_sum(&w_phi[row - k], &t_phi[col], minus_i_pow),
        // L̂_{ω_i}(ω_j)
        (false, false) => SobolevKernel::weighted_sum(&w_phi[col - k], &w_phi[row - k], one),
    })
}

/// A recovered function `f* = Σ α_i K_{t_i} + Σ β_i L_{ω_i}`.
#[derive(Debug, Clone)]
pub struct RkhsInterpolant {
    pub kernel: SobolevKernel,
    pub scheme: SamplingScheme,
    pub alpha: Vec<C64>,
    pub beta: Vec<C64>,
}

impl RkhsInterpolant {
    /// `f*(t)` summed over the representers.
    pub fn eval(&self, t: f64) -> C64 {
        let time: C64 = self
            .scheme
            .time_nodes()
            .iter()
            .zip(&self.alpha)
            .map(|(&ti, a)| a * self.kernel.eval(t, ti))
            .sum();
        let freq: C64 = self
            .scheme
            .freq_nodes()
            .iter()
            .zip(&self.beta)
            .map(|(&wi, b)| b * self.kernel.freq_representer_eval(wi, t))
            .sum();
        time + freq
    }

    /// `f̂*(ω)` summed over the transformed representers.
    pub fn eval_fourier(&self, omega: f64) -> C64 {
        let time: C64 = self
            .scheme
            .time_nodes()
            .iter()
            .zip(&self.alpha)
            .map(|(&ti, a)| a * self.kernel.kernel_fourier_eval(ti, omega))
            .sum();
        let freq: C64 = self
            .scheme
            .freq_nodes()
            .iter()
            .zip(&self.beta)
            .map(|(&wi, b)| b * self.kernel.freq_freq_eval(wi, omega))
            .sum();
        time + freq
    }

    /// Coefficients of `f*` in the Hermite basis.
    pub fn hermite_coefficients(&self) -> Vec<C64> {
        let mut coeffs = vec![C64::new(0.0, 0.0); self.kernel.modes()];
        for (&t, a) in self.scheme.time_nodes().iter().zip(&self.alpha) {
            for (n, v) in self.kernel.hermite(t).into_iter().enumerate() {
                coeffs[n] += a * (v / SobolevKernel::weight(n));
            }
        }
        for (&w, b) in self.scheme.freq_nodes().iter().zip(&self.beta) {
            for (n, v) in self.kernel.hermite(w).into_iter().enumerate() {
                coeffs[n] += b * i_pow(n) * (v / SobolevKernel::weight(n));
            }
        }
        coeffs
    }

    pub fn eval_grid(&self, grid: &[f64]) -> Vec<C64> {
        grid.iter().map(|&t| self.eval(t)).collect()
    }

    pub fn eval_fourier_grid(&self, grid: &[f64]) -> Vec<C64> {
        grid.iter().map(|&w| self.eval_fourier(w)).collect()
    }
}

/// Solves the block system for `(α, β)` with the minimum-norm pseudoinverse.
pub fn rkhs_recover(
    kernel: &SobolevKernel,
    scheme: &SamplingScheme,
    c: &[C64],
    c_hat: &[C64],
    rtol: Option<f64>,
) -> Result<RkhsInterpolant> {
    let (k, l) = (scheme.num_time(), scheme.num_freq());
    if c.len() != k || c_hat.len() != l {
        return Err(Error::DimensionMismatch(format!(
            "expected {k} time and {l} frequency measurements, got {} and {}",
            c.len(),
            c_hat.len()
        )));
    }
    let block = assemble_block(kernel, scheme);
    let rhs: Vec<C64> = c.iter().chain(c_hat).copied().collect();
    let coeffs = solve_min_norm(&block, &rhs, rtol)?;
    Ok(RkhsInterpolant {
        kernel: *kernel,
        scheme: scheme.clone(),
        alpha: coeffs[..k].to_vec(),
        beta: coeffs[k..].to_vec(),
    })
}
