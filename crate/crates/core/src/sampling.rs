//! Stacked two-sided basis systems.
//!
//! Time samples `c_i = f(t_i)` and frequency samples `ĉ_i = f̂(ω_i)` of
//! `f = Σ α_n Φ_n` give the block system
//!
//! ```text
//! ( c )   ( Φ_j(t_i) )
//! (   ) = (          ) α
//! ( ĉ )   ( Φ̂_j(ω_i) )
//! ```
//!
//! which is solved for the minimum-norm least-squares `α`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::basis::{eval_matrix, fourier_matrix, BasisFamily};
use crate::error::{Error, Result};
use crate::numerics::{solve_min_norm, svd, CMatrix, C64};

/// Ratio `σ_min/σ_max` below which a square system counts as numerically singular.
pub const DEFAULT_RATIO_TOL: f64 = 1.85e-5;

/// Nodes closer than this are duplicates.
pub const NODE_SEPARATION: f64 = 1e-9;

/// Time nodes (seconds) and frequency nodes (rad/s).
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingScheme {
    time_nodes: Vec<f64>,
    freq_nodes: Vec<f64>,
}

impl SamplingScheme {
    /// Canonical scheme: each node vector is sorted and must be free of
    /// duplicates (separation below [`NODE_SEPARATION`]).
    pub fn new(mut time_nodes: Vec<f64>, mut freq_nodes: Vec<f64>) -> Result<Self> {
        Self::check_basic(&time_nodes, &freq_nodes)?;
        for (nodes, what) in [(&mut time_nodes, "time"), (&mut freq_nodes, "frequency")] {
            nodes.sort_by(f64::total_cmp);
            if let Some(w) = nodes.windows(2).find(|w| w[1] - w[0] < NODE_SEPARATION) {
                return Err(Error::InvalidInput(format!(
                    "duplicate {what} nodes {} and {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(SamplingScheme {
            time_nodes,
            freq_nodes,
        })
    }

    /// Scheme kept exactly as given: no sorting, duplicates allowed.
    /// Used to study degenerate configurations such as repeated nodes.
    pub fn raw(time_nodes: Vec<f64>, freq_nodes: Vec<f64>) -> Result<Self> {
        Self::check_basic(&time_nodes, &freq_nodes)?;
        Ok(SamplingScheme {
            time_nodes,
            freq_nodes,
        })
    }

    fn check_basic(time_nodes: &[f64], freq_nodes: &[f64]) -> Result<()> {
        if time_nodes.is_empty() && freq_nodes.is_empty() {
            return Err(Error::InvalidInput(
                "a scheme needs at least one node".into(),
            ));
        }
        if time_nodes.iter().chain(freq_nodes).any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("sampling nodes"));
        }
        Ok(())
    }

    pub fn time_nodes(&self) -> &[f64] {
        &self.time_nodes
    }

    pub fn freq_nodes(&self) -> &[f64] {
        &self.freq_nodes
    }

    /// Number of time samples `K`.
    pub fn num_time(&self) -> usize {
        self.time_nodes.len()
    }

    /// Number of frequency samples `L`.
    pub fn num_freq(&self) -> usize {
        self.freq_nodes.len()
    }

    pub fn len(&self) -> usize {
        self.num_time() + self.num_freq()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The assembled `(K+L) × order` measurement matrix and what it was built from.
#[derive(Debug, Clone)]
pub struct StackedSystem {
    pub matrix: CMatrix,
    pub scheme: SamplingScheme,
    pub family: BasisFamily,
}

impl StackedSystem {
    pub fn time_block(&self) -> CMatrix {
        self.matrix.row_block(0..self.scheme.num_time())
    }

    pub fn freq_block(&self) -> CMatrix {
        self.matrix
            .row_block(self.scheme.num_time()..self.matrix.rows())
    }

    pub fn is_square(&self) -> bool {
        self.matrix.rows() == self.matrix.cols()
    }
}

/// Stacks the time-domain rows over the frequency-domain rows.
pub fn assemble(family: &BasisFamily, scheme: &SamplingScheme) -> Result<StackedSystem> {
    let top = eval_matrix(family, scheme.time_nodes())?;
    let bottom = fourier_matrix(family, scheme.freq_nodes())?;
    Ok(StackedSystem {
        matrix: CMatrix::vstack(&top, &bottom)?,
        scheme: scheme.clone(),
        family: *family,
    })
}

/// Minimum-norm least-squares coefficients for time samples `c` and frequency samples `c_hat`.
pub fn recover(
    system: &StackedSystem,
    c: &[C64],
    c_hat: &[C64],
    rtol: Option<f64>,
) -> Result<Vec<C64>> {
    let (k, l) = (system.scheme.num_time(), system.scheme.num_freq());
    if c.len() != k || c_hat.len() != l {
        return Err(Error::DimensionMismatch(format!(
            "expected {k} time and {l} frequency measurements, got {} and {}",
            c.len(),
            c_hat.len()
        )));
    }
    let rhs: Vec<C64> = c.iter().chain(c_hat).copied().collect();
    solve_min_norm(&system.matrix, &rhs, rtol)
}

fn check_coeffs(family: &BasisFamily, coeffs: &[C64]) -> Result<()> {
    if coeffs.len() != family.order() {
        return Err(Error::DimensionMismatch(format!(
            "{} coefficients for a family of order {}",
            coeffs.len(),
            family.order()
        )));
    }
    Ok(())
}

/// `f(t) = Σ α_n Φ_n(t)` on `grid`.
pub fn synthesize(family: &BasisFamily, coeffs: &[C64], grid: &[f64]) -> Result<Vec<C64>> {
    check_coeffs(family, coeffs)?;
    Ok(eval_matrix(family, grid)?.mul_vec(coeffs))
}

/// `f̂(ω) = Σ α_n Φ̂_n(ω)` on `grid`.
pub fn synthesize_fourier(family: &BasisFamily, coeffs: &[C64], grid: &[f64]) -> Result<Vec<C64>> {
    check_coeffs(family, coeffs)?;
    Ok(fourier_matrix(family, grid)?.mul_vec(coeffs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridMode {
    /// `a + k(b-a)/count`, right endpoint excluded.
    SpacingOverCount,
    /// `a + k(b-a)/(count-1)`, both endpoints included.
    InclusiveEndpoints,
}

impl std::str::FromStr for GridMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spacing-over-count" => Ok(GridMode::SpacingOverCount),
            "inclusive-endpoints" => Ok(GridMode::InclusiveEndpoints),
            other => Err(Error::InvalidInput(format!("unknown grid mode '{other}'"))),
        }
    }
}

pub fn gen_equispaced(a: f64, b: f64, count: usize, mode: GridMode) -> Result<Vec<f64>> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::InvalidInput(format!("need a < b, got [{a}, {b}]")));
    }
    if count == 0 {
        return Err(Error::InvalidInput(
            "equispaced grid needs count >= 1".into(),
        ));
    }
    let step = match mode {
        GridMode::SpacingOverCount => (b - a) / count as f64,
        GridMode::InclusiveEndpoints if count == 1 => 0.0,
        GridMode::InclusiveEndpoints => (b - a) / (count - 1) as f64,
    };
    Ok((0..count).map(|k| a + k as f64 * step).collect())
}

/// `count` sorted iid uniform draws on `[a, b)`; draws within
/// [`NODE_SEPARATION`] of an earlier one are redrawn.
pub fn gen_uniform_random(a: f64, b: f64, count: usize, seed: u64) -> Result<Vec<f64>> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::InvalidInput(format!("need a < b, got [{a}, {b}]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<f64> = Vec::with_capacity(count);
    while out.len() < count {
        let x = rng.random_range(a..b);
        let pos = out.partition_point(|&y| y < x);
        let clash = out.get(pos).is_some_and(|&y| y - x < NODE_SEPARATION)
            || pos > 0 && x - out[pos - 1] < NODE_SEPARATION;
        if !clash {
            out.insert(pos, x);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Invertible,
    NumericallySingular,
    Rectangular,
}

/// Square systems with `σ_min/σ_max < ratio_tol` are numerically singular.
pub fn classify(system: &StackedSystem, ratio_tol: f64) -> Result<Classification> {
    if !system.is_square() {
        return Ok(Classification::Rectangular);
    }
    Ok(if singular_value_ratio(&system.matrix)? < ratio_tol {
        Classification::NumericallySingular
    } else {
        Classification::Invertible
    })
}

/// `σ_min/σ_max`, zero for the zero matrix.
pub fn singular_value_ratio(a: &CMatrix) -> Result<f64> {
    let f = svd(a)?;
    let smax = f.sigma_max();
    Ok(if smax == 0.0 {
        0.0
    } else {
        f.sigma_min() / smax
    })
}
