//! Condition-number sweeps over the sampling budget `D`.
//!
//! Each sweep compares time-only sampling with `D` nodes against a two-sided
//! split of `K = ⌈D/2⌉` time and `L = ⌊D/2⌋` frequency nodes for a family of
//! order `D`. Rows are computed independently and returned in `D` order.

use std::f64::consts::PI;
use std::str::FromStr;

use crate::basis::BasisFamily;
use crate::error::{Error, Result};
use crate::numerics::{conditioning, CMatrix, Conditioning, C64};
use crate::par::{try_map_range, Execution};
use crate::sampling::{assemble, gen_equispaced, gen_uniform_random, GridMode, SamplingScheme};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CondnumVariant {
    /// Hermite, time on `[1, 2]`, frequency on `[-1, 0]`, equispaced.
    Hermite,
    /// Hermite with both node sets on `[-1, 1]`, equispaced and seeded random.
    SharedInterval,
    /// Hermite time-only system, then a unitary DFT on the last `⌊D/2⌋` rows.
    DftPost,
    /// Unit-step shifted sinc, random nodes, averaged over seeds.
    Sinc,
}

impl CondnumVariant {
    pub fn default_grid_mode(self) -> GridMode {
        match self {
            CondnumVariant::SharedInterval => GridMode::InclusiveEndpoints,
            _ => GridMode::SpacingOverCount,
        }
    }

    pub fn extra_column(self) -> Option<&'static str> {
        match self {
            CondnumVariant::SharedInterval => Some("cond_random_two_sided"),
            CondnumVariant::DftPost => Some("cond_after_dft"),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CondnumVariant::Hermite => "condnum-hermite",
            CondnumVariant::SharedInterval => "condnum-shared-interval",
            CondnumVariant::DftPost => "condnum-dft-post",
            CondnumVariant::Sinc => "condnum-sinc",
        }
    }
}

impl FromStr for CondnumVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            CondnumVariant::Hermite,
            CondnumVariant::SharedInterval,
            CondnumVariant::DftPost,
            CondnumVariant::Sinc,
        ]
        .into_iter()
        .find(|v| v.name() == s || v.name().trim_start_matches("condnum-") == s)
        .ok_or_else(|| Error::InvalidInput(format!("unknown condition-number experiment `{s}`")))
    }
}

/// A condition number with its rank verdict. Averaged entries are singular if
/// any member was.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CondEntry {
    pub value: f64,
    pub singular: bool,
}

impl From<Conditioning> for CondEntry {
    fn from(c: Conditioning) -> Self {
        CondEntry {
            value: c.value(),
            singular: c.rank_deficient,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CondnumRow {
    pub d: usize,
    pub one_sided: CondEntry,
    pub two_sided: CondEntry,
    pub extra: Option<CondEntry>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CondnumConfig {
    pub variant: CondnumVariant,
    pub d_min: usize,
    pub d_max: usize,
    /// Step between consecutive `D` values.
    pub d_step: usize,
    pub seed: u64,
    pub grid_mode: GridMode,
    /// Seeds averaged per row in the sinc sweep.
    pub sinc_repeats: usize,
}

impl CondnumConfig {
    /// Pinned figure geometry for `variant` over `d_min..=d_max`.
    pub fn new(variant: CondnumVariant, d_min: usize, d_max: usize) -> Self {
        CondnumConfig {
            variant,
            d_min,
            d_max,
            d_step: 1,
            seed: 0,
            grid_mode: variant.default_grid_mode(),
            sinc_repeats: 5,
        }
    }

    pub fn d_values(&self) -> Vec<usize> {
        (self.d_min..=self.d_max)
            .step_by(self.d_step.max(1))
            .collect()
    }
}

pub fn split_budget(d: usize) -> (usize, usize) {
    let k = d.div_ceil(2);
    (k, d - k)
}

/// Mixes a base seed with per-row and per-role indices.
pub fn derive_seed(seed: u64, d: usize, role: u64) -> u64 {
    let mut h = seed ^ 0x2545_F491_4F6C_DD1D;
    for part in [d as u64, role] {
        h = (h ^ part).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        h ^= h >> 29;
    }
    h
}

fn cond_of(family: &BasisFamily, time: Vec<f64>, freq: Vec<f64>) -> Result<Conditioning> {
    let sys = assemble(family, &SamplingScheme::new(time, freq)?)?;
    conditioning(&sys.matrix)
}

/// Unitary DFT `F[j,k] = e^{-2πijk/n} / √n`.
pub fn unitary_dft(n: usize) -> CMatrix {
    let scale = 1.0 / (n as f64).sqrt();
    CMatrix::from_fn(n, n, |j, k| {
        C64::from_polar(scale, -2.0 * PI * ((j * k) % n) as f64 / n as f64)
    })
}

/// `diag(I, F)` applied to `a`, with `F` acting on the last `tail` rows.
pub fn dft_post_process(a: &CMatrix, tail: usize) -> Result<CMatrix> {
    let m = a.rows();
    if tail > m {
        return Err(Error::DimensionMismatch(format!(
            "cannot transform {tail} rows of a {m}-row matrix"
        )));
    }
    let head = m - tail;
    let f = unitary_dft(tail);
    let mut out = a.clone();
    for i in 0..tail {
        for j in 0..a.cols() {
            out[(head + i, j)] = (0..tail).map(|k| f[(i, k)] * a[(head + k, j)]).sum();
        }
    }
    Ok(out)
}

fn hermite_row(d: usize, mode: GridMode) -> Result<CondnumRow> {
    let family = BasisFamily::hermite(d)?;
    let (k, l) = split_budget(d);
    let one = cond_of(&family, gen_equispaced(1.0, 2.0, d, mode)?, vec![])?;
    let two = cond_of(
        &family,
        gen_equispaced(1.0, 2.0, k, mode)?,
        gen_equispaced(-1.0, 0.0, l, mode)?,
    )?;
    Ok(CondnumRow {
        d,
        one_sided: one.into(),
        two_sided: two.into(),
        extra: None,
    })
}

fn shared_interval_row(d: usize, mode: GridMode, seed: u64) -> Result<CondnumRow> {
    let family = BasisFamily::hermite(d)?;
    let (k, l) = split_budget(d);
    let one = cond_of(&family, gen_equispaced(-1.0, 1.0, d, mode)?, vec![])?;
    let two = cond_of(
        &family,
        gen_equispaced(-1.0, 1.0, k, mode)?,
        gen_equispaced(-1.0, 1.0, l, mode)?,
    )?;
    let random = cond_of(
        &family,
        gen_uniform_random(-1.0, 1.0, k, derive_seed(seed, d, 0))?,
        gen_uniform_random(-1.0, 1.0, l, derive_seed(seed, d, 1))?,
    )?;
    Ok(CondnumRow {
        d,
        one_sided: one.into(),
        two_sided: two.into(),
        extra: Some(random.into()),
    })
}

fn dft_post_row(d: usize, mode: GridMode) -> Result<CondnumRow> {
    let family = BasisFamily::hermite(d)?;
    let (_, l) = split_budget(d);
    let sys = assemble(
        &family,
        &SamplingScheme::new(gen_equispaced(1.0, 2.0, d, mode)?, vec![])?,
    )?;
    let one = conditioning(&sys.matrix)?;
    let after = conditioning(&dft_post_process(&sys.matrix, l)?)?;
    // the two-sided column is the same comparison as the Hermite sweep
    let two = hermite_row(d, mode)?.two_sided;
    Ok(CondnumRow {
        d,
        one_sided: one.into(),
        two_sided: two,
        extra: Some(after.into()),
    })
}

fn mean_entry(entries: &[CondEntry]) -> CondEntry {
    CondEntry {
        value: entries.iter().map(|e| e.value).sum::<f64>() / entries.len() as f64,
        singular: entries.iter().any(|e| e.singular),
    }
}

fn sinc_row(d: usize, seed: u64, repeats: usize) -> Result<CondnumRow> {
    let family = BasisFamily::shifted_sinc(d)?;
    let (k, l) = split_budget(d);
    let lo = (-(d as f64) / 2.0 + 1.0).ceil();
    let hi = (d as f64 / 2.0).floor();
    let mut one = Vec::with_capacity(repeats);
    let mut two = Vec::with_capacity(repeats);
    for r in 0..repeats as u64 {
        one.push(
            cond_of(
                &family,
                gen_uniform_random(lo, hi, d, derive_seed(seed, d, 3 * r))?,
                vec![],
            )?
            .into(),
        );
        two.push(
            cond_of(
                &family,
                gen_uniform_random(lo, hi, k, derive_seed(seed, d, 3 * r + 1))?,
                gen_uniform_random(-3.0, 3.0, l, derive_seed(seed, d, 3 * r + 2))?,
            )?
            .into(),
        );
    }
    Ok(CondnumRow {
        d,
        one_sided: mean_entry(&one),
        two_sided: mean_entry(&two),
        extra: None,
    })
}

pub fn condnum_row(config: &CondnumConfig, d: usize) -> Result<CondnumRow> {
    if d == 0 {
        return Err(Error::InvalidInput("budget D must be positive".into()));
    }
    match config.variant {
        CondnumVariant::Hermite => hermite_row(d, config.grid_mode),
        CondnumVariant::SharedInterval => shared_interval_row(d, config.grid_mode, config.seed),
        CondnumVariant::DftPost => dft_post_row(d, config.grid_mode),
        CondnumVariant::Sinc => {
            if config.sinc_repeats == 0 {
                return Err(Error::InvalidInput(
                    "sinc sweep needs at least one repeat".into(),
                ));
            }
            sinc_row(d, config.seed, config.sinc_repeats)
        }
    }
}

pub fn run_condnum(config: &CondnumConfig, exec: Execution) -> Result<Vec<CondnumRow>> {
    if config.d_min == 0 || config.d_min > config.d_max {
        return Err(Error::InvalidInput(format!(
            "D range {}..={} must be nonempty and start at 1 or more",
            config.d_min, config.d_max
        )));
    }
    let ds = config.d_values();
    try_map_range(ds.len(), exec, |i| condnum_row(config, ds[i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_split() {
        assert_eq!(split_budget(2), (1, 1));
        assert_eq!(split_budget(7), (4, 3));
        assert_eq!(split_budget(24), (12, 12));
    }

    #[test]
    fn variant_names_round_trip() {
        for v in [
            CondnumVariant::Hermite,
            CondnumVariant::SharedInterval,
            CondnumVariant::DftPost,
            CondnumVariant::Sinc,
        ] {
            assert_eq!(v.name().parse::<CondnumVariant>().unwrap(), v);
        }
        assert_eq!(
            "sinc".parse::<CondnumVariant>().unwrap(),
            CondnumVariant::Sinc
        );
        assert!("heatmap".parse::<CondnumVariant>().is_err());
    }

    #[test]
    fn unitary_dft_is_unitary() {
        for n in [1, 2, 5, 12] {
            let f = unitary_dft(n);
            let defect = (&f.adjoint() * &f)
                .sub(&CMatrix::identity(n))
                .frobenius_norm();
            assert!(defect < 1e-13, "n={n}: {defect}");
        }
    }

    #[test]
    fn dft_post_keeps_head_rows() {
        let a = CMatrix::from_fn(5, 3, |i, j| C64::new(i as f64, j as f64));
        let b = dft_post_process(&a, 2).unwrap();
        for i in 0..3 {
            assert_eq!(a.row(i), b.row(i));
        }
        assert!((a.frobenius_norm() - b.frobenius_norm()).abs() < 1e-12);
        assert!(dft_post_process(&a, 6).is_err());
    }

    #[test]
    fn sweeps_are_deterministic_across_execution_modes() {
        for variant in [CondnumVariant::SharedInterval, CondnumVariant::Sinc] {
            let cfg = CondnumConfig {
                seed: 17,
                ..CondnumConfig::new(variant, 3, 8)
            };
            let a = run_condnum(&cfg, Execution::Parallel).unwrap();
            let b = run_condnum(&cfg, Execution::Sequential).unwrap();
            assert_eq!(a, b);
            assert_eq!(
                a.iter().map(|r| r.d).collect::<Vec<_>>(),
                vec![3, 4, 5, 6, 7, 8]
            );
        }
    }

    #[test]
    fn shared_interval_equispaced_singularity() {
        // K = L = 3 nodes at {-1, 0, 1} in both domains
        let row =
            condnum_row(&CondnumConfig::new(CondnumVariant::SharedInterval, 6, 6), 6).unwrap();
        assert!(row.two_sided.singular);
        assert!(!row.extra.unwrap().singular);
    }

    #[test]
    fn bad_ranges() {
        assert!(run_condnum(
            &CondnumConfig::new(CondnumVariant::Hermite, 0, 4),
            Execution::Sequential
        )
        .is_err());
        assert!(run_condnum(
            &CondnumConfig::new(CondnumVariant::Hermite, 5, 4),
            Execution::Sequential
        )
        .is_err());
    }
}
