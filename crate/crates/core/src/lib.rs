//! Signal recovery from concomitant time-domain and frequency-domain samples.
//!
//! A signal is expanded in a finite family (Hermite functions or shifted
//! sincs) or in the representers of a reproducing kernel, and point samples
//! of the signal and of its Fourier transform are stacked into one linear
//! system that is solved with the Moore–Penrose pseudoinverse.
//!
//! Modules:
//! - [`numerics`]: complex SVD, pseudoinverse, minimum-norm solves, condition numbers
//! - [`basis`]: Hermite and shifted-sinc families with closed-form Fourier transforms
//! - [`sampling`]: stacked two-sided systems, node generators, singularity classification
//! - [`rkhs`]: Gram-matrix kernels, the truncated Fourier-symmetric Sobolev kernel, two-sided representers
//! - [`uniqueness`]: determinant locus, singularity heatmaps, density classification
//! - [`specmon`]: spectrum-monitoring simulator with a recursive sliding DFT
//! - [`experiments`]: condition-number sweeps
//! - [`par`]: sequential / rayon execution switch

pub mod basis;
pub mod error;
pub mod experiments;
pub mod numerics;
pub mod par;
pub mod rkhs;
pub mod sampling;
pub mod specmon;
pub mod uniqueness;

pub use error::{Error, Result};
pub use numerics::{CMatrix, C64};
pub use par::Execution;
