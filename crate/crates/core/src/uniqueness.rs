//! Singularity analysis for two-sided schemes.

use crate::basis::BasisFamily;
use crate::error::{Error, Result};
use crate::numerics::C64;
use crate::par::{try_map_range, Execution};
use crate::sampling::{assemble, singular_value_ratio, SamplingScheme};

/// Non-constant factor of the determinant of the `H_2` system with one time
/// node `t0` and frequency nodes `ω0 ≠ ω1`. The system is singular exactly
/// where this vanishes.
pub fn h2_locus(t0: f64, omega0: f64, omega1: f64) -> C64 {
    C64::new(t0 * t0 - omega0 * omega1 - 1.0, t0 * (omega0 + omega1))
}

/// `log(σ_min/σ_max)` of the `H_2` system over a square grid of `(ω0, ω1)`.
#[derive(Debug, Clone)]
pub struct Heatmap {
    pub t0: f64,
    pub grid: Vec<f64>,
    /// Row-major: entry `(i, j)` is the pair `(grid[i], grid[j])`.
    pub log_ratio: Vec<f64>,
    /// Entries whose ratio is below the tolerance.
    pub singular: Vec<bool>,
}

impl Heatmap {
    pub fn size(&self) -> usize {
        self.grid.len()
    }

    pub fn log_ratio_at(&self, i: usize, j: usize) -> f64 {
        self.log_ratio[i * self.size() + j]
    }

    pub fn is_singular(&self, i: usize, j: usize) -> bool {
        self.singular[i * self.size() + j]
    }
}

/// Scans the order-3 Hermite system with `Λ = {t0}`, `M = {ω_i, ω_j}` over all grid pairs.
pub fn heatmap_scan(t0: f64, grid: &[f64], ratio_tol: f64, exec: Execution) -> Result<Heatmap> {
    if grid.len() < 2 {
        return Err(Error::InvalidInput(
            "heatmap grid needs at least two points".into(),
        ));
    }
    if grid
        .windows(2)
        .any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less))
    {
        return Err(Error::InvalidInput(
            "heatmap grid must be strictly increasing".into(),
        ));
    }
    let family = BasisFamily::hermite(3)?;
    let n = grid.len();
    let rows: Vec<Vec<f64>> = try_map_range(n, exec, |i| {
        (0..n)
            .map(|j| {
                let scheme = SamplingScheme::raw(vec![t0], vec![grid[i], grid[j]])?;
                let sys = assemble(&family, &scheme)?;
                Ok(singular_value_ratio(&sys.matrix)?.ln())
            })
            .collect::<Result<Vec<f64>>>()
    })?;
    let log_ratio: Vec<f64> = rows.into_iter().flatten().collect();
    let log_tol = ratio_tol.ln();
    let singular = log_ratio.iter().map(|&v| v < log_tol).collect();
    Ok(Heatmap {
        t0,
        grid: grid.to_vec(),
        log_ratio,
        singular,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Density {
    Supercritical,
    Subcritical,
    Indeterminate,
}

/// Finite-window proxy for the density condition on a pair of node sequences.
///
/// The limit superior of `|x_j| (x_{j+1} - x_j)` is replaced by the maximum
/// over the trailing `window` gap products, so the verdict only reflects the
/// tail that was actually supplied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityVerdict {
    pub lambda_proxy: f64,
    pub mu_proxy: f64,
    pub verdict: Density,
    pub window: usize,
}

/// `|x_j| (x_{j+1} - x_j)` for each consecutive pair.
pub fn gap_products(nodes: &[f64]) -> Vec<f64> {
    nodes
        .windows(2)
        .map(|w| w[0].abs() * (w[1] - w[0]))
        .collect()
}

fn trailing_max(nodes: &[f64], window: usize, what: &str) -> Result<f64> {
    if nodes.len() <= window {
        return Err(Error::InvalidInput(format!(
            "{what} has {} nodes, need more than the window of {window}",
            nodes.len()
        )));
    }
    if nodes.windows(2).any(|w| {
        w[0].partial_cmp(&w[1])
            .is_none_or(|o| o == std::cmp::Ordering::Greater)
    }) {
        return Err(Error::InvalidInput(format!(
            "{what} nodes must be sorted ascending"
        )));
    }
    let products = gap_products(nodes);
    Ok(products[products.len() - window..]
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Both proxies below `π - tol` is supercritical, both above `π + tol` is
/// subcritical, anything else is indeterminate.
pub fn density_classify(
    lambda_nodes: &[f64],
    mu_nodes: &[f64],
    window: usize,
    tol: f64,
) -> Result<DensityVerdict> {
    if window < 2 {
        return Err(Error::InvalidInput(
            "density window must be at least 2".into(),
        ));
    }
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::InvalidInput(format!(
            "tolerance must be >= 0, got {tol}"
        )));
    }
    let lambda_proxy = trailing_max(lambda_nodes, window, "lambda")?;
    let mu_proxy = trailing_max(mu_nodes, window, "mu")?;
    let pi = std::f64::consts::PI;
    let verdict = if lambda_proxy < pi - tol && mu_proxy < pi - tol {
        Density::Supercritical
    } else if lambda_proxy > pi + tol && mu_proxy > pi + tol {
        Density::Subcritical
    } else {
        Density::Indeterminate
    };
    Ok(DensityVerdict {
        lambda_proxy,
        mu_proxy,
        verdict,
        window,
    })
}

/// `√(2πn)` for `n = 0 .. count-1`.
pub fn rv_nodes(count: usize) -> Vec<f64> {
    let two_pi = 2.0 * std::f64::consts::PI;
    (0..count).map(|n| (two_pi * n as f64).sqrt()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn locus_values() {
        assert_eq!(h2_locus(0.0, 1.0, -1.0), C64::new(0.0, 0.0));
        let z = h2_locus(0.6, 0.8, -0.8);
        assert!(z.norm() < 1e-15);
        assert_eq!(h2_locus(0.0, 1.0, 1.0), C64::new(-2.0, 0.0));
    }

    #[test]
    fn heatmap_diagonal_and_symmetry() {
        let grid: Vec<f64> = (0..21).map(|k| -3.0 + 0.3 * k as f64).collect();
        let h = heatmap_scan(0.0, &grid, 1.85e-5, Execution::Sequential).unwrap();
        for i in 0..h.size() {
            assert!(h.is_singular(i, i));
            for j in 0..i {
                let (a, b) = (h.log_ratio_at(i, j), h.log_ratio_at(j, i));
                assert!((a - b).abs() < 1e-9, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn heatmap_exact_locus_points_are_flagged() {
        // grid containing ±0.5, ±1, ±2 exactly
        let grid: Vec<f64> = (0..25).map(|k| -3.0 + 0.25 * k as f64).collect();
        let h = heatmap_scan(0.0, &grid, 1.85e-5, Execution::Parallel).unwrap();
        let idx = |x: f64| grid.iter().position(|&g| g == x).unwrap();
        for (a, b) in [(1.0, -1.0), (-1.0, 1.0), (0.5, -2.0), (2.0, -0.5)] {
            assert!(h.is_singular(idx(a), idx(b)), "({a}, {b})");
        }
        assert!(!h.is_singular(idx(1.0), idx(0.5)));
    }

    #[test]
    fn heatmap_outside_unit_interval_has_no_offdiagonal_singularities() {
        let grid: Vec<f64> = (0..41).map(|k| -3.0 + 0.15 * k as f64).collect();
        for t0 in [1.2, -1.5, 2.0] {
            let h = heatmap_scan(t0, &grid, 1.85e-5, Execution::Parallel).unwrap();
            for i in 0..h.size() {
                for j in 0..h.size() {
                    if i != j {
                        assert!(!h.is_singular(i, j), "t0={t0} ({}, {})", grid[i], grid[j]);
                    }
                }
            }
        }
    }

    #[test]
    fn heatmap_rejects_bad_grids() {
        assert!(heatmap_scan(0.0, &[1.0], 1e-5, Execution::Sequential).is_err());
        assert!(heatmap_scan(0.0, &[1.0, 0.0], 1e-5, Execution::Sequential).is_err());
    }

    #[test]
    fn density_closed_forms() {
        let half: Vec<f64> = (1..=10_000).map(|j| j as f64 / 2.0).collect();
        let v = density_classify(&half, &half, 100, 1e-3).unwrap();
        assert_eq!(v.verdict, Density::Subcritical);

        let sqrt_pi: Vec<f64> = (1..=10_000).map(|j| (PI * j as f64).sqrt()).collect();
        let v = density_classify(&sqrt_pi, &sqrt_pi, 100, 1e-3).unwrap();
        assert_eq!(v.verdict, Density::Supercritical);
        assert!((v.lambda_proxy - PI / 2.0).abs() < 1e-3);

        let rv = rv_nodes(100_000);
        let v = density_classify(&rv, &rv, 100, 1e-3).unwrap();
        assert_eq!(v.verdict, Density::Indeterminate);
    }

    #[test]
    fn density_ignores_the_head() {
        let tail: Vec<f64> = (1..=2_000).map(|j| (PI * j as f64).sqrt()).collect();
        let mut with_head = vec![-50.0, -3.0, 0.0, 0.5];
        with_head.extend_from_slice(&tail);
        let a = density_classify(&tail, &tail, 50, 1e-3).unwrap();
        let b = density_classify(&with_head, &tail, 50, 1e-3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn density_input_errors() {
        let nodes = [0.0, 1.0, 2.0];
        assert!(density_classify(&nodes, &nodes, 3, 0.0).is_err());
        assert!(density_classify(&nodes, &nodes, 1, 0.0).is_err());
        let unsorted = [0.0, 2.0, 1.0, 3.0];
        assert!(density_classify(&unsorted, &unsorted, 2, 0.0).is_err());
    }

    #[test]
    fn rv_node_values() {
        let r = rv_nodes(3);
        assert_eq!(r[0], 0.0);
        assert!((r[1] - 2.5066282746310002).abs() < 1e-12);
        assert!((r[2] - 3.5449077018110318).abs() < 1e-12);
        assert!(rv_nodes(0).is_empty());
    }
}
