//! Closed forms checked against numerical integration.

mod common;

use common::Trapezoid;
use twosided::basis::{hermite_eval, hermite_fourier_eval, sinc_eval};
use twosided::rkhs::{assemble_block, rkhs_recover, SobolevKernel};
use twosided::sampling::SamplingScheme;
use twosided::C64;

fn samples(q: &Trapezoid, f: impl Fn(f64) -> C64) -> Vec<C64> {
    q.nodes.iter().map(|&t| f(t)).collect()
}

#[test]
fn hermite_functions_are_orthonormal() {
    let q = Trapezoid::new(14.0, 0.02);
    for n in 0..=16 {
        for m in 0..=n {
            let prod = samples(&q, |t| {
                C64::new(hermite_eval(n, t) * hermite_eval(m, t), 0.0)
            });
            let ip = q.integrate(&prod).re;
            let expect = if n == m { 1.0 } else { 0.0 };
            assert!((ip - expect).abs() < 1e-12, "<φ{n}, φ{m}> = {ip}");
        }
    }
}

#[test]
fn hermite_fourier_transform_by_quadrature() {
    let q = Trapezoid::new(14.0, 0.02);
    for n in 0..=20 {
        let f = samples(&q, |t| C64::new(hermite_eval(n, t), 0.0));
        for k in 0..=40 {
            let omega = -5.0 + 0.25 * k as f64;
            let got = q.fourier(&f, omega);
            let want = hermite_fourier_eval(n, omega);
            assert!(
                (got - want).norm() < 1e-10,
                "n={n} ω={omega}: {got} vs {want}"
            );
        }
    }
}

#[test]
fn sinc_shifts_are_orthonormal_on_integers() {
    // Σ_k s_n(k) s_m(k) = δ_nm since s_n vanishes at every other integer
    for n in 0..6 {
        for m in 0..6 {
            let s: f64 = (-50..60)
                .map(|k| sinc_eval(n, k as f64, 1.0) * sinc_eval(m, k as f64, 1.0))
                .sum();
            assert_eq!(s, if n == m { 1.0 } else { 0.0 });
        }
    }
}

/// Sobolev inner product computed from function values only:
/// `½ (∫ t² f ḡ dt + ∫ ω² f̂ ĝ̄ dω)`.
fn sobolev_inner(q: &Trapezoid, f: &[C64], g: &[C64]) -> C64 {
    let time: Vec<C64> = q
        .nodes
        .iter()
        .zip(f.iter().zip(g))
        .map(|(&t, (a, b))| a * b.conj() * t * t)
        .collect();
    let fh: Vec<C64> = q.nodes.iter().map(|&w| q.fourier(f, w)).collect();
    let gh: Vec<C64> = q.nodes.iter().map(|&w| q.fourier(g, w)).collect();
    let freq: Vec<C64> = q
        .nodes
        .iter()
        .zip(fh.iter().zip(&gh))
        .map(|(&w, (a, b))| a * b.conj() * w * w)
        .collect();
    (q.integrate(&time) + q.integrate(&freq)) * 0.5
}

#[test]
fn representers_reproduce_point_values_by_quadrature() {
    let q = Trapezoid::new(11.0, 0.05);
    for modes in [1, 3, 5, 8] {
        let kernel = SobolevKernel::new(modes).unwrap();
        let coeffs: Vec<C64> = (0..modes)
            .map(|n| C64::new(0.3 + 0.1 * n as f64, 0.2 - 0.05 * n as f64))
            .collect();
        let f = samples(&q, |t| {
            coeffs
                .iter()
                .enumerate()
                .map(|(n, a)| a * hermite_eval(n, t))
                .sum()
        });

        for x in [-1.3, 0.0, 0.7, 2.1] {
            let kx = samples(&q, |t| C64::new(kernel.eval(t, x), 0.0));
            let got = sobolev_inner(&q, &f, &kx);
            let want: C64 = coeffs
                .iter()
                .enumerate()
                .map(|(n, a)| a * hermite_eval(n, x))
                .sum();
            assert!(
                (got - want).norm() < 1e-6,
                "modes={modes} K_{x}: {got} vs {want}"
            );
        }
        for omega in [-2.0, -0.4, 0.9, 1.6] {
            let lw = samples(&q, |t| kernel.freq_representer_eval(omega, t));
            let got = sobolev_inner(&q, &f, &lw);
            let want: C64 = coeffs
                .iter()
                .enumerate()
                .map(|(n, a)| a * hermite_fourier_eval(n, omega))
                .sum();
            assert!(
                (got - want).norm() < 1e-6,
                "modes={modes} L_{omega}: {got} vs {want}"
            );

            let lw_hat: Vec<C64> = [-1.0, 0.5, 1.5]
                .iter()
                .map(|&xi| q.fourier(&lw, xi))
                .collect();
            for (xi, v) in [-1.0, 0.5, 1.5].iter().zip(lw_hat) {
                assert!((v - kernel.freq_freq_eval(omega, *xi)).norm() < 1e-10);
            }
        }
    }
}

#[test]
fn kernel_fourier_transform_by_quadrature() {
    let q = Trapezoid::new(12.0, 0.03);
    let kernel = SobolevKernel::new(10).unwrap();
    for t in [-0.8, 0.3, 1.9] {
        let kt = samples(&q, |s| C64::new(kernel.eval(s, t), 0.0));
        for omega in [-2.5, 0.0, 1.2] {
            let got = q.fourier(&kt, omega);
            assert!((got - kernel.kernel_fourier_eval(t, omega)).norm() < 1e-10);
        }
    }
}

#[test]
fn rkhs_interpolant_matches_samples() {
    let kernel = SobolevKernel::new(12).unwrap();
    let scheme = SamplingScheme::new(vec![-1.0, 0.4, 1.3], vec![-0.6, 0.9]).unwrap();
    let c = vec![C64::new(0.5, 0.1), C64::new(-0.2, 0.0), C64::new(0.7, -0.3)];
    let c_hat = vec![C64::new(0.1, 0.4), C64::new(-0.5, 0.2)];
    let interp = rkhs_recover(&kernel, &scheme, &c, &c_hat, None).unwrap();
    for (&t, v) in scheme.time_nodes().iter().zip(&c) {
        assert!((interp.eval(t) - v).norm() < 1e-10);
    }
    for (&w, v) in scheme.freq_nodes().iter().zip(&c_hat) {
        assert!((interp.eval_fourier(w) - v).norm() < 1e-10);
    }
    // the interpolant lives in the span of the first modes, so its transform is exact too
    let q = Trapezoid::new(12.0, 0.03);
    let vals = samples(&q, |t| interp.eval(t));
    for &w in scheme.freq_nodes() {
        assert!((q.fourier(&vals, w) - interp.eval_fourier(w)).norm() < 1e-9);
    }
    let block = assemble_block(&kernel, &scheme);
    assert_eq!(block.shape(), (5, 5));
}
