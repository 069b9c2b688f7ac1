//! Finite reconstruction families and their Fourier transforms.
//!
//! Fourier transforms use the unitary convention
//! `f̂(ω) = (2π)^{-1/2} ∫ f(t) e^{-iωt} dt`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::{CMatrix, C64};

const RESCALE_ABOVE: f64 = 1e150;
const RESCALE_BY: f64 = 1e-150;

/// A finite family `Φ_0 … Φ_{order-1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BasisFamily {
    /// Hermite functions `φ_0 … φ_{order-1}`.
    Hermite { order: usize },
    /// Shifted sinc functions `s_n(t) = sinc((t - nT)/T)`, unnormalized.
    ShiftedSinc { order: usize, step: f64 },
}

impl BasisFamily {
    pub fn hermite(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidInput("basis order must be at least 1".into()));
        }
        Ok(BasisFamily::Hermite { order })
    }

    pub fn shifted_sinc(order: usize) -> Result<Self> {
        Self::shifted_sinc_with_step(order, 1.0)
    }

    pub fn shifted_sinc_with_step(order: usize, step: f64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidInput("basis order must be at least 1".into()));
        }
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::InvalidInput(format!(
                "sinc step must be > 0, got {step}"
            )));
        }
        Ok(BasisFamily::ShiftedSinc { order, step })
    }

    /// Number of functions in the family.
    pub fn order(&self) -> usize {
        match *self {
            BasisFamily::Hermite { order } | BasisFamily::ShiftedSinc { order, .. } => order,
        }
    }

    /// All basis functions evaluated at `t`.
    pub fn eval_all(&self, t: f64) -> Vec<f64> {
        match *self {
            BasisFamily::Hermite { order } => hermite_all(order - 1, t),
            BasisFamily::ShiftedSinc { order, step } => {
                (0..order).map(|n| sinc_eval(n, t, step)).collect()
            }
        }
    }

    /// All Fourier-transformed basis functions evaluated at `omega`.
    pub fn fourier_all(&self, omega: f64) -> Result<Vec<C64>> {
        match *self {
            BasisFamily::Hermite { order } => Ok(hermite_all(order - 1, omega)
                .into_iter()
                .enumerate()
                .map(|(n, v)| minus_i_pow(n) * v)
                .collect()),
            BasisFamily::ShiftedSinc { order, step } => (0..order)
                .map(|n| sinc_fourier_eval(n, omega, step))
                .collect(),
        }
    }
}

/// `(-i)^n`.
pub(crate) fn minus_i_pow(n: usize) -> C64 {
    match n % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, -1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, 1.0),
    }
}

/// `i^n`.
pub(crate) fn i_pow(n: usize) -> C64 {
    minus_i_pow(n).conj()
}

/// Hermite functions `φ_0(x) … φ_{nmax}(x)`.
///
/// The normalized three-term recurrence is run on `φ_n(x) e^{x²/2}` with a
/// tracked log-scale, so neither the Gaussian factor underflows nor the
/// polynomial part overflows for large `n` or `|x|`.
pub fn hermite_all(nmax: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(nmax + 1);
    let base = -0.5 * x * x - 0.25 * PI.ln();
    let mut log_scale = 0.0;
    let mut prev = 0.0;
    let mut cur = 1.0;
    out.push(base.exp());
    for n in 1..=nmax {
        let nf = n as f64;
        let next = x * (2.0 / nf).sqrt() * cur - ((nf - 1.0) / nf).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_ABOVE {
            cur *= RESCALE_BY;
            prev *= RESCALE_BY;
            log_scale -= RESCALE_BY.ln();
        }
        out.push(cur * (base + log_scale).exp());
    }
    out
}

/// Hermite function `φ_n(x)`.
pub fn hermite_eval(n: usize, x: f64) -> f64 {
    hermite_all(n, x)[n]
}

/// `F[φ_n](ω) = (-i)^n φ_n(ω)`.
pub fn hermite_fourier_eval(n: usize, omega: f64) -> C64 {
    minus_i_pow(n) * hermite_eval(n, omega)
}

/// Normalized sinc, `sin(πx)/(πx)`, exactly zero at nonzero integers.
pub fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    let k = x.round();
    let r = x - k;
    let sign = if (k as i64).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    };
    sign * (PI * r).sin() / (PI * x)
}

/// `s_n(t) = sinc((t - nT)/T)`.
pub fn sinc_eval(n: usize, t: f64, step: f64) -> f64 {
    sinc((t - n as f64 * step) / step)
}

/// `ŝ_n(ω) = (2π)^{-1/2} e^{-iωn}` on the closed band `|ω| ≤ π`, zero outside.
/// Only the unit-step family has this closed form.
pub fn sinc_fourier_eval(n: usize, omega: f64, step: f64) -> Result<C64> {
    if step != 1.0 {
        return Err(Error::Unsupported(format!(
            "sinc Fourier samples require unit step, got {step}"
        )));
    }
    if omega.abs() > PI {
        return Ok(C64::new(0.0, 0.0));
    }
    Ok(C64::from_polar(1.0 / (2.0 * PI).sqrt(), -omega * n as f64))
}

fn check_nodes(nodes: &[f64]) -> Result<()> {
    if nodes.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("sampling nodes"));
    }
    Ok(())
}

/// Time-domain evaluation matrix with entries `Φ_j(nodes_i)`.
pub fn eval_matrix(family: &BasisFamily, nodes: &[f64]) -> Result<CMatrix> {
    check_nodes(nodes)?;
    let cols = family.order();
    let mut m = CMatrix::zeros(nodes.len(), cols);
    for (i, &t) in nodes.iter().enumerate() {
        for (dst, v) in m.row_mut(i).iter_mut().zip(family.eval_all(t)) {
            *dst = C64::new(v, 0.0);
        }
    }
    Ok(m)
}

/// Frequency-domain evaluation matrix with entries `Φ̂_j(nodes_i)`.
pub fn fourier_matrix(family: &BasisFamily, nodes: &[f64]) -> Result<CMatrix> {
    check_nodes(nodes)?;
    let cols = family.order();
    let mut m = CMatrix::zeros(nodes.len(), cols);
    for (i, &w) in nodes.iter().enumerate() {
        m.row_mut(i).copy_from_slice(&family.fourier_all(w)?);
    }
    Ok(m)
}
