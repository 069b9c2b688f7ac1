//! Spectrum-monitoring simulator.
//!
//! A real signal is streamed through a [`MonitorState`] that keeps a recursive
//! sliding DFT of the last `Z` samples and only every other time sample. On
//! trigger the trailing window is rebuilt from the retained samples plus a
//! handful of the strongest DFT bins.

use std::collections::VecDeque;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::numerics::{pseudoinverse, CMatrix, HermitianFactor, C64};
use crate::par::{try_map_range, Execution};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tone {
    pub bin: usize,
    pub amplitude: f64,
    pub phase: f64,
}

pub const DEFAULT_WINDOW: usize = 1024;
pub const DEFAULT_TONE_BINS: [usize; 4] = [37, 110, 220, 331];
pub const DEFAULT_TONE_AMPLITUDES: [f64; 4] = [1.0, 0.8, 0.6, 0.4];

/// Default four-tone set with phases drawn uniformly from `[0, 2π)`.
pub fn default_tones(rng: &mut impl Rng) -> Vec<Tone> {
    DEFAULT_TONE_BINS
        .iter()
        .zip(DEFAULT_TONE_AMPLITUDES)
        .map(|(&bin, amplitude)| Tone {
            bin,
            amplitude,
            phase: rng.random_range(0.0..2.0 * PI),
        })
        .collect()
}

fn check_tones(z: usize, tones: &[Tone]) -> Result<()> {
    for t in tones {
        if t.bin >= z {
            return Err(Error::InvalidInput(format!(
                "tone bin {} outside [0, {z})",
                t.bin
            )));
        }
        if !(t.amplitude.is_finite() && t.amplitude >= 0.0 && t.phase.is_finite()) {
            return Err(Error::InvalidInput(format!("bad tone parameters {t:?}")));
        }
    }
    Ok(())
}

/// `x[m] = Σ a_k cos(2π b_k m / Z + φ_k)` for `m = 0 .. Z-1`.
pub fn gen_multitone(z: usize, tones: &[Tone]) -> Result<Vec<f64>> {
    multitone_stream(z, tones, z)
}

/// Same tones continued for `len` samples.
pub fn multitone_stream(z: usize, tones: &[Tone], len: usize) -> Result<Vec<f64>> {
    if z == 0 {
        return Err(Error::InvalidInput("window length must be positive".into()));
    }
    check_tones(z, tones)?;
    Ok((0..len)
        .map(|m| {
            tones
                .iter()
                .map(|t| {
                    // reduce b·m mod Z first so long streams stay exactly periodic
                    let k = (t.bin * (m % z)) % z;
                    t.amplitude * (2.0 * PI * k as f64 / z as f64 + t.phase).cos()
                })
                .sum()
        })
        .collect())
}

pub fn signal_power(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>() / x.len() as f64
}

/// Adds white Gaussian noise with variance `power(x) / snr_linear`.
pub fn add_awgn(x: &[f64], snr: f64, snr_is_db: bool, seed: u64) -> Result<Vec<f64>> {
    if x.is_empty() {
        return Err(Error::InvalidInput(
            "cannot add noise to an empty signal".into(),
        ));
    }
    let linear = if snr_is_db {
        10f64.powf(snr / 10.0)
    } else {
        snr
    };
    if !(linear.is_finite() && linear > 0.0) {
        return Err(Error::InvalidInput(format!(
            "SNR must be positive and finite, got {snr}"
        )));
    }
    let power = signal_power(x);
    if !(power.is_finite() && power > 0.0) {
        return Err(Error::InvalidInput("signal power must be positive".into()));
    }
    let normal = Normal::new(0.0, (power / linear).sqrt())
        .map_err(|e| Error::InvalidInput(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(x.iter().map(|v| v + normal.sample(&mut rng)).collect())
}

/// Streaming window with a recursive sliding DFT and a half-rate sample store.
///
/// Samples with an even absolute index are retained. Whenever the window start
/// is even, which includes every multiple of an even `Z`, the retained set is
/// exactly the even offsets `0, 2, …` of the window.
#[derive(Clone)]
pub struct MonitorState {
    window_len: usize,
    drift_period: usize,
    delay: VecDeque<f64>,
    stored: VecDeque<(u64, f64)>,
    bins: Vec<C64>,
    twiddles: Vec<C64>,
    sample_count: u64,
    since_sync: usize,
    fft: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for MonitorState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonitorState")
            .field("window_len", &self.window_len)
            .field("drift_period", &self.drift_period)
            .field("sample_count", &self.sample_count)
            .field("stored", &self.stored.len())
            .finish()
    }
}

impl MonitorState {
    /// Starts from a full first window, treated as samples `0 .. Z-1`.
    pub fn new(first_window: &[f64], drift_period: usize) -> Result<Self> {
        let z = first_window.len();
        if z < 2 {
            return Err(Error::InvalidInput(
                "window length must be at least 2".into(),
            ));
        }
        if drift_period == 0 {
            return Err(Error::InvalidInput("drift period must be positive".into()));
        }
        if first_window.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("stream sample"));
        }
        let fft = FftPlanner::new().plan_fft_forward(z);
        let twiddles = (0..z)
            .map(|k| C64::from_polar(1.0, 2.0 * PI * k as f64 / z as f64))
            .collect();
        let stored = first_window
            .iter()
            .enumerate()
            .filter(|(i, _)| i % 2 == 0)
            .map(|(i, &v)| (i as u64, v))
            .collect();
        let mut state = MonitorState {
            window_len: z,
            drift_period,
            delay: first_window.iter().copied().collect(),
            stored,
            bins: vec![C64::new(0.0, 0.0); z],
            twiddles,
            sample_count: z as u64,
            since_sync: 0,
            fft,
        };
        state.resync();
        Ok(state)
    }

    pub fn window_len(&self) -> usize {
        self.window_len
    }

    pub fn drift_period(&self) -> usize {
        self.drift_period
    }

    pub fn sample_count(&self) -> u64 {
        self.sample_count
    }

    pub fn bins(&self) -> &[C64] {
        &self.bins
    }

    /// The trailing `Z` samples, oldest first. Kept only to drive the recursion.
    pub fn window(&self) -> Vec<f64> {
        self.delay.iter().copied().collect()
    }

    /// Retained samples as `(offset within window, value)`.
    pub fn retained(&self) -> Vec<(usize, f64)> {
        let start = self.sample_count - self.window_len as u64;
        self.stored
            .iter()
            .map(|&(idx, v)| ((idx - start) as usize, v))
            .collect()
    }

    /// Recomputes the bins from the window by FFT.
    pub fn resync(&mut self) {
        let mut buf: Vec<C64> = self.delay.iter().map(|&v| C64::new(v, 0.0)).collect();
        self.fft.process(&mut buf);
        self.bins = buf;
        self.since_sync = 0;
    }

    pub fn sliding_dft_step(&mut self, new_sample: f64) -> Result<()> {
        if !new_sample.is_finite() {
            return Err(Error::NonFinite("stream sample"));
        }
        let oldest = self.delay.pop_front().expect("window is never empty");
        self.delay.push_back(new_sample);
        let delta = new_sample - oldest;
        for (x, w) in self.bins.iter_mut().zip(&self.twiddles) {
            *x = (*x + delta) * w;
        }

        let idx = self.sample_count;
        self.sample_count += 1;
        let start = self.sample_count - self.window_len as u64;
        while self.stored.front().is_some_and(|&(i, _)| i < start) {
            self.stored.pop_front();
        }
        if idx.is_multiple_of(2) {
            self.stored.push_back((idx, new_sample));
        }

        self.since_sync += 1;
        if self.since_sync >= self.drift_period {
            self.resync();
        }
        Ok(())
    }
}

/// Indices of the `count` largest magnitudes, ties going to the lower index.
pub fn select_top_bins(bins: &[C64], count: usize) -> Result<Vec<usize>> {
    if count > bins.len() {
        return Err(Error::InvalidInput(format!(
            "asked for {count} bins out of {}",
            bins.len()
        )));
    }
    let mut idx: Vec<usize> = (0..bins.len()).collect();
    idx.sort_by(|&a, &b| bins[b].norm().total_cmp(&bins[a].norm()).then(a.cmp(&b)));
    idx.truncate(count);
    Ok(idx)
}

fn check_distinct(values: impl Iterator<Item = usize>, z: usize, what: &str) -> Result<()> {
    let mut seen = vec![false; z];
    for v in values {
        if v >= z {
            return Err(Error::InvalidInput(format!("{what} {v} outside [0, {z})")));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidInput(format!("duplicate {what} {v}")));
        }
    }
    Ok(())
}

fn real(v: f64) -> C64 {
    C64::new(v, 0.0)
}

/// Minimum-norm least-squares window estimate from sample and DFT-bin constraints.
///
/// The unknown is real. Sample constraints are identity rows; each bin gives a
/// real and an imaginary row of the unnormalized DFT. The solve never forms the
/// full system: with stored offsets `T`, the rest `U`, and the bin rows
/// `C = [C_T C_U]`,
///
/// ```text
/// x_T = (I + BᵀB)⁻¹ (v + C_Tᵀ Q w),   B = Q C_T,   Q = I − C_U C_U⁺
/// x_U = C_U⁺ (w − C_T x_T)
/// ```
///
/// which is the same point the full pseudoinverse returns, up to the rank
/// cutoff being applied to `C_U` alone.
pub fn reconstruct_window(
    stored: &[(usize, f64)],
    bin_obs: &[(usize, C64)],
    z: usize,
    rtol: Option<f64>,
) -> Result<Vec<f64>> {
    if z == 0 {
        return Err(Error::InvalidInput("window length must be positive".into()));
    }
    check_distinct(stored.iter().map(|s| s.0), z, "offset")?;
    check_distinct(bin_obs.iter().map(|b| b.0), z, "bin")?;
    if stored.iter().any(|s| !s.1.is_finite())
        || bin_obs
            .iter()
            .any(|b| !b.1.re.is_finite() || !b.1.im.is_finite())
    {
        return Err(Error::NonFinite("window constraints"));
    }

    let mut in_t = vec![false; z];
    for &(o, _) in stored {
        in_t[o] = true;
    }
    let t_idx: Vec<usize> = stored.iter().map(|s| s.0).collect();
    let u_idx: Vec<usize> = (0..z).filter(|&m| !in_t[m]).collect();
    let v: Vec<C64> = stored.iter().map(|s| real(s.1)).collect();

    let mut out = vec![0.0; z];
    if bin_obs.is_empty() {
        for &(o, val) in stored {
            out[o] = val;
        }
        return Ok(out);
    }

    let (cos, sin): (Vec<f64>, Vec<f64>) = (0..z)
        .map(|j| (2.0 * PI * j as f64 / z as f64).sin_cos())
        .map(|(s, c)| (c, s))
        .unzip();
    let r = 2 * bin_obs.len();
    let entry = |row: usize, m: usize| {
        let k = bin_obs[row / 2].0;
        let j = (k * m) % z;
        real(if row.is_multiple_of(2) {
            cos[j]
        } else {
            -sin[j]
        })
    };
    let c_t = CMatrix::from_fn(r, t_idx.len(), |i, j| entry(i, t_idx[j]));
    let c_u = CMatrix::from_fn(r, u_idx.len(), |i, j| entry(i, u_idx[j]));
    let w: Vec<C64> = bin_obs
        .iter()
        .flat_map(|&(_, x)| [real(x.re), real(x.im)])
        .collect();

    let (p, q) = if u_idx.is_empty() {
        (CMatrix::zeros(0, r), CMatrix::identity(r))
    } else {
        let p = pseudoinverse(&c_u, rtol)?;
        let q = CMatrix::identity(r).sub(&(&c_u * &p));
        (p, q)
    };

    let x_t = if t_idx.is_empty() {
        Vec::new()
    } else {
        let b = &q * &c_t;
        let qw = q.mul_vec(&w);
        let rhs: Vec<C64> = c_t
            .adjoint()
            .mul_vec(&qw)
            .iter()
            .zip(&v)
            .map(|(a, b)| a + b)
            .collect();
        // Woodbury: (I + BᵀB)⁻¹ = I − Bᵀ (I + BBᵀ)⁻¹ B
        let mut small = &b * &b.adjoint();
        for i in 0..r {
            small[(i, i)] += 1.0;
        }
        let y = HermitianFactor::new(&small)?.solve(&b.mul_vec(&rhs));
        let corr = b.adjoint().mul_vec(&y);
        rhs.iter().zip(&corr).map(|(a, c)| a - c).collect()
    };

    let x_u = if u_idx.is_empty() {
        Vec::new()
    } else {
        let ct_xt = if t_idx.is_empty() {
            vec![real(0.0); r]
        } else {
            c_t.mul_vec(&x_t)
        };
        let resid: Vec<C64> = w.iter().zip(&ct_xt).map(|(a, b)| a - b).collect();
        p.mul_vec(&resid)
    };

    for (&m, x) in t_idx.iter().zip(&x_t) {
        out[m] = x.re;
    }
    for (&m, x) in u_idx.iter().zip(&x_u) {
        out[m] = x.re;
    }
    Ok(out)
}

/// `‖estimate − truth‖² / ‖truth‖²`.
pub fn nmse(estimate: &[f64], truth: &[f64]) -> Result<f64> {
    if estimate.len() != truth.len() {
        return Err(Error::DimensionMismatch(format!(
            "estimate has {} samples, truth has {}",
            estimate.len(),
            truth.len()
        )));
    }
    let energy: f64 = truth.iter().map(|v| v * v).sum();
    if energy.is_nan() || energy <= 0.0 {
        return Err(Error::InvalidInput("truth has zero energy".into()));
    }
    let err: f64 = estimate
        .iter()
        .zip(truth)
        .map(|(a, b)| (a - b).powi(2))
        .sum();
    Ok(err / energy)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub window_len: usize,
    /// `None` draws [`default_tones`] phases per trial.
    pub tones: Option<Vec<Tone>>,
    pub snr: f64,
    pub snr_is_db: bool,
    pub trials: usize,
    pub seed: u64,
    /// Streamed length in windows; the trigger fires after the last sample.
    pub stream_windows: usize,
    /// Bin counts for the three reconstructions.
    pub bin_counts: [usize; 3],
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            window_len: DEFAULT_WINDOW,
            tones: None,
            snr: 16.0,
            snr_is_db: false,
            trials: 10,
            seed: 0,
            stream_windows: 3,
            bin_counts: [0, 2, 4],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub tones: Vec<Tone>,
    pub truth: Vec<f64>,
    pub reconstructions: [Vec<f64>; 3],
    pub nmse: [f64; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioReport {
    pub nmse_time_only: f64,
    pub nmse_plus2: f64,
    pub nmse_plus4: f64,
    pub trials: usize,
    pub seed: u64,
    pub per_trial: Vec<[f64; 3]>,
}

fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(trial as u64)
}

/// One seeded trial: stream signal plus noise, trigger at the end, rebuild three ways.
pub fn run_trial(config: &ScenarioConfig, trial: usize) -> Result<TrialOutcome> {
    let z = config.window_len;
    if z < 2 || config.stream_windows == 0 {
        return Err(Error::InvalidInput(
            "need Z >= 2 and at least one window".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(config.seed, trial));
    let tones = match &config.tones {
        Some(t) => t.clone(),
        None => default_tones(&mut rng),
    };
    let len = z * config.stream_windows;
    let clean = multitone_stream(z, &tones, len)?;
    let noisy = add_awgn(&clean, config.snr, config.snr_is_db, rng.random())?;

    let mut state = MonitorState::new(&noisy[..z], z)?;
    for &x in &noisy[z..] {
        state.sliding_dft_step(x)?;
    }
    let truth = clean[len - z..].to_vec();
    let stored = state.retained();

    let mut recons: Vec<Vec<f64>> = Vec::with_capacity(3);
    let mut errs = [0.0; 3];
    for (slot, &count) in config.bin_counts.iter().enumerate() {
        let obs: Vec<(usize, C64)> = select_top_bins(state.bins(), count)?
            .into_iter()
            .map(|k| (k, state.bins()[k]))
            .collect();
        let est = reconstruct_window(&stored, &obs, z, None)?;
        errs[slot] = nmse(&est, &truth)?;
        recons.push(est);
    }
    let reconstructions: [Vec<f64>; 3] = recons.try_into().expect("three reconstructions");
    Ok(TrialOutcome {
        tones,
        truth,
        reconstructions,
        nmse: errs,
    })
}

pub fn run_scenario(config: &ScenarioConfig, exec: Execution) -> Result<ScenarioReport> {
    if config.trials == 0 {
        return Err(Error::InvalidInput("need at least one trial".into()));
    }
    let per_trial: Vec<[f64; 3]> = try_map_range(config.trials, exec, |t| {
        run_trial(config, t).map(|o| o.nmse)
    })?;
    let mean =
        |slot: usize| per_trial.iter().map(|e| e[slot]).sum::<f64>() / per_trial.len() as f64;
    Ok(ScenarioReport {
        nmse_time_only: mean(0),
        nmse_plus2: mean(1),
        nmse_plus4: mean(2),
        trials: config.trials,
        seed: config.seed,
        per_trial,
    })
}
