//! Dense complex linear algebra.
//!
//! The SVD is a one-sided (Hestenes) Jacobi iteration. It is slower than
//! bidiagonalization for large matrices but delivers small singular values
//! to high relative accuracy, which is what the conditioning experiments
//! measure. Everything else (pseudoinverse, minimum-norm solves, condition
//! numbers) is built on top of it.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

const MAX_SWEEPS: usize = 100;

/// Dense complex matrix stored row-major.
///
/// Empty matrices (zero rows or columns) are representable so that one-sided
/// sampling schemes can carry an empty measurement block.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting non-finite values.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("matrix entries"));
        }
        Ok(CMatrix { rows, cols, data })
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::from_row_major(rows, cols, data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn diag(values: &[C64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [C64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: C64) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    /// `self - other`; panics on a shape mismatch.
    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sub");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Matrix-vector product; panics on a length mismatch.
    pub fn mul_vec(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(x.len(), self.cols, "vector length mismatch in mul_vec");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Stacks `top` over `bottom`. Column counts must agree.
    pub fn vstack(top: &CMatrix, bottom: &CMatrix) -> Result<CMatrix> {
        if top.cols != bottom.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {} columns over {} columns",
                top.cols, bottom.cols
            )));
        }
        let mut data = top.data.clone();
        data.extend_from_slice(&bottom.data);
        Ok(CMatrix {
            rows: top.rows + bottom.rows,
            cols: top.cols,
            data,
        })
    }

    /// Copy of the rows in `range`.
    pub fn row_block(&self, range: std::ops::Range<usize>) -> CMatrix {
        let data = self.data[range.start * self.cols..range.end * self.cols].to_vec();
        CMatrix {
            rows: range.len(),
            cols: self.cols,
            data,
        }
    }

    fn columns(&self) -> Vec<Vec<C64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    fn from_columns(rows: usize, cols: &[Vec<C64>]) -> CMatrix {
        CMatrix::from_fn(rows, cols.len(), |i, j| cols[j][i])
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch in matmul");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let a_row = self.row(i);
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for (k, &a) in a_row.iter().enumerate() {
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(rhs.row(k)) {
                    *o += a * b;
                }
            }
        }
        out
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:+.6e}{:+.6e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Thin SVD `A = U diag(σ) Vᴴ` with `r = min(rows, cols)` singular triplets.
#[derive(Debug, Clone)]
pub struct SvdResult {
    pub u: CMatrix,
    pub singular_values: Vec<f64>,
    pub v: CMatrix,
}

impl SvdResult {
    pub fn sigma_max(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }

    pub fn sigma_min(&self) -> f64 {
        self.singular_values.last().copied().unwrap_or(0.0)
    }

    /// Number of singular values above `rtol * σ_max`.
    pub fn rank(&self, rtol: f64) -> usize {
        let cutoff = rtol * self.sigma_max();
        self.singular_values.iter().filter(|&&s| s > cutoff).count()
    }

    pub fn reconstruct(&self) -> CMatrix {
        let sigma: Vec<C64> = self
            .singular_values
            .iter()
            .map(|&s| C64::new(s, 0.0))
            .collect();
        let us = &self.u * &CMatrix::diag(&sigma);
        &us * &self.v.adjoint()
    }
}

/// Default relative cutoff for rank decisions: `max(rows, cols) · ε`.
pub fn default_rtol(rows: usize, cols: usize) -> f64 {
    rows.max(cols) as f64 * f64::EPSILON
}

fn dot(a: &[C64], b: &[C64]) -> C64 {
    // aᴴ b
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm_sqr(a: &[C64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum()
}

/// Orthogonalizes the columns of `work` in place, accumulating the rotations in `v`.
fn jacobi_sweeps(work: &mut [Vec<C64>], v: &mut [Vec<C64>]) -> Result<()> {
    let n = work.len();
    let m = work.first().map_or(0, |c| c.len());
    let tol = f64::EPSILON * (m.max(1) as f64).sqrt();
    // Columns at roundoff level of the whole matrix only churn noise when rotated.
    let frob_sqr: f64 = work.iter().map(|c| norm_sqr(c)).sum();
    let negligible = (f64::EPSILON * f64::EPSILON) * frob_sqr;

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha = norm_sqr(&work[p]);
                let beta = norm_sqr(&work[q]);
                if alpha <= negligible || beta <= negligible {
                    continue;
                }
                let gamma = dot(&work[p], &work[q]);
                let g = gamma.norm();
                if g <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;

                // Rotate the phase out of column q so the pair is a real Jacobi problem.
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;

                for cols in [&mut *work, &mut *v] {
                    let (left, right) = cols.split_at_mut(q);
                    let (cp, cq) = (&mut left[p], &mut right[0]);
                    for (xp, xq) in cp.iter_mut().zip(cq.iter_mut()) {
                        let a = *xp;
                        let b = *xq / phase;
                        *xp = a * c - b * s;
                        *xq = a * s + b * c;
                    }
                }
            }
        }
        if !rotated {
            return Ok(());
        }
    }
    Err(Error::NoConvergence { sweeps: MAX_SWEEPS })
}

/// Fills in zero columns of `u` with unit vectors orthogonal to the others.
fn complete_orthonormal(u: &mut [Vec<C64>], filled: &[bool]) {
    let m = u.first().map_or(0, |c| c.len());
    let mut candidate = 0;
    for j in 0..u.len() {
        if filled[j] {
            continue;
        }
        loop {
            assert!(candidate < m, "ran out of basis vectors while completing U");
            let mut e = vec![C64::new(0.0, 0.0); m];
            e[candidate] = C64::new(1.0, 0.0);
            candidate += 1;
            for _ in 0..2 {
                for k in 0..u.len() {
                    if k == j || (!filled[k] && k > j) {
                        continue;
                    }
                    let proj = dot(&u[k], &e);
                    for (x, y) in e.iter_mut().zip(&u[k]) {
                        *x -= proj * y;
                    }
                }
            }
            let nrm = norm_sqr(&e).sqrt();
            if nrm > 0.5 {
                u[j] = e.into_iter().map(|x| x / nrm).collect();
                break;
            }
        }
    }
}

/// Left vectors, singular values and right vectors, one `Vec` per column.
type ColumnSvd = (Vec<Vec<C64>>, Vec<f64>, Vec<Vec<C64>>);

fn svd_tall(a: &CMatrix) -> Result<ColumnSvd> {
    let (m, n) = a.shape();
    let mut work = a.columns();
    let mut v: Vec<Vec<C64>> = (0..n)
        .map(|j| {
            let mut e = vec![C64::new(0.0, 0.0); n];
            e[j] = C64::new(1.0, 0.0);
            e
        })
        .collect();
    jacobi_sweeps(&mut work, &mut v)?;

    let norms: Vec<f64> = work.iter().map(|c| norm_sqr(c).sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));

    let mut u = Vec::with_capacity(n);
    let mut vs = Vec::with_capacity(n);
    let mut sigma = Vec::with_capacity(n);
    let mut filled = Vec::with_capacity(n);
    for &j in &order {
        let s = norms[j];
        sigma.push(s);
        if s > 0.0 {
            u.push(work[j].iter().map(|x| x / s).collect());
            filled.push(true);
        } else {
            u.push(vec![C64::new(0.0, 0.0); m]);
            filled.push(false);
        }
        vs.push(v[j].clone());
    }
    complete_orthonormal(&mut u, &filled);
    Ok((u, sigma, vs))
}

/// Thin singular value decomposition.
pub fn svd(a: &CMatrix) -> Result<SvdResult> {
    if a.is_empty() {
        return Err(Error::InvalidInput("SVD of an empty matrix".into()));
    }
    if !a.is_finite() {
        return Err(Error::NonFinite("SVD input"));
    }
    let (m, n) = a.shape();
    if m >= n {
        let (u, s, v) = svd_tall(a)?;
        Ok(SvdResult {
            u: CMatrix::from_columns(m, &u),
            singular_values: s,
            v: CMatrix::from_columns(n, &v),
        })
    } else {
        // A = (Aᴴ)ᴴ = (U' Σ V'ᴴ)ᴴ = V' Σ U'ᴴ
        let (u, s, v) = svd_tall(&a.adjoint())?;
        Ok(SvdResult {
            u: CMatrix::from_columns(m, &v),
            singular_values: s,
            v: CMatrix::from_columns(n, &u),
        })
    }
}

/// Moore–Penrose pseudoinverse. Singular values at or below `rtol · σ_max`
/// are treated as zero; `None` selects [`default_rtol`].
pub fn pseudoinverse(a: &CMatrix, rtol: Option<f64>) -> Result<CMatrix> {
    let rtol = check_rtol(a, rtol)?;
    let f = svd(a)?;
    let cutoff = rtol * f.sigma_max();
    let inv: Vec<C64> = f
        .singular_values
        .iter()
        .map(|&s| {
            if s > cutoff && s > 0.0 {
                C64::new(1.0 / s, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .collect();
    let vs = &f.v * &CMatrix::diag(&inv);
    Ok(&vs * &f.u.adjoint())
}

/// Minimum-norm least-squares solution `A† b`.
pub fn solve_min_norm(a: &CMatrix, b: &[C64], rtol: Option<f64>) -> Result<Vec<C64>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has length {} but the matrix has {} rows",
            b.len(),
            a.rows()
        )));
    }
    if b.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite("right-hand side"));
    }
    let rtol = check_rtol(a, rtol)?;
    let f = svd(a)?;
    let cutoff = rtol * f.sigma_max();
    let ub = f.u.adjoint().mul_vec(b);
    let scaled: Vec<C64> = ub
        .iter()
        .zip(&f.singular_values)
        .map(|(&c, &s)| {
            if s > cutoff && s > 0.0 {
                c / s
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .collect();
    Ok(f.v.mul_vec(&scaled))
}

fn check_rtol(a: &CMatrix, rtol: Option<f64>) -> Result<f64> {
    let rtol = rtol.unwrap_or_else(|| default_rtol(a.rows(), a.cols()));
    if !(rtol.is_finite() && rtol >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "rtol must be finite and >= 0, got {rtol}"
        )));
    }
    Ok(rtol)
}

/// Extreme singular values of a matrix together with its numerical rank verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conditioning {
    pub sigma_max: f64,
    pub sigma_min: f64,
    /// `σ_min ≤ rtol · σ_max` under the default rank cutoff.
    pub rank_deficient: bool,
}

impl Conditioning {
    /// `σ_max / σ_min`, or `+∞` when `σ_min` is exactly zero.
    pub fn value(&self) -> f64 {
        if self.sigma_min == 0.0 {
            f64::INFINITY
        } else {
            self.sigma_max / self.sigma_min
        }
    }

    pub fn ratio(&self) -> f64 {
        self.sigma_min / self.sigma_max
    }
}

pub fn conditioning(a: &CMatrix) -> Result<Conditioning> {
    let f = svd(a)?;
    let sigma_max = f.sigma_max();
    if sigma_max == 0.0 {
        return Err(Error::ZeroMatrix);
    }
    let sigma_min = f.sigma_min();
    Ok(Conditioning {
        sigma_max,
        sigma_min,
        rank_deficient: sigma_min <= default_rtol(a.rows(), a.cols()) * sigma_max,
    })
}

/// `σ_max / σ_min` over all `min(rows, cols)` singular values; `+∞` if `σ_min = 0`.
pub fn condition_number(a: &CMatrix) -> Result<f64> {
    conditioning(a).map(|c| c.value())
}

/// Cholesky factor `L` of a Hermitian positive definite matrix, `A = L Lᴴ`.
#[derive(Debug, Clone)]
pub struct HermitianFactor {
    lower: CMatrix,
}

impl HermitianFactor {
    /// Factorizes `a`; fails if it is not Hermitian (to `1e-12` relative) or not positive definite.
    pub fn new(a: &CMatrix) -> Result<Self> {
        let (n, c) = a.shape();
        if n != c || n == 0 {
            return Err(Error::DimensionMismatch(format!(
                "Cholesky needs a nonempty square matrix, got {n}x{c}"
            )));
        }
        if !a.is_finite() {
            return Err(Error::NonFinite("Gram matrix"));
        }
        let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
        if a.sub(&a.adjoint()).frobenius_norm() > 1e-12 * scale {
            return Err(Error::NotPositiveDefinite);
        }
        let mut l = CMatrix::zeros(n, n);
        for j in 0..n {
            let mut d = a[(j, j)].re;
            for k in 0..j {
                d -= l[(j, k)].norm_sqr();
            }
            if d.is_nan() || d <= 0.0 {
                return Err(Error::NotPositiveDefinite);
            }
            let d = d.sqrt();
            l[(j, j)] = C64::new(d, 0.0);
            for i in (j + 1)..n {
                let mut s = a[(i, j)];
                for k in 0..j {
                    s -= l[(i, k)] * l[(j, k)].conj();
                }
                l[(i, j)] = s / d;
            }
        }
        Ok(HermitianFactor { lower: l })
    }

    pub fn dim(&self) -> usize {
        self.lower.rows()
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[C64]) -> Vec<C64> {
        let n = self.dim();
        assert_eq!(b.len(), n, "right-hand side length mismatch");
        let l = &self.lower;
        let mut y = b.to_vec();
        for i in 0..n {
            let mut s = y[i];
            for k in 0..i {
                s -= l[(i, k)] * y[k];
            }
            y[i] = s / l[(i, i)];
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in (i + 1)..n {
                s -= l[(k, i)].conj() * y[k];
            }
            y[i] = s / l[(i, i)];
        }
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn random_matrix(rows: usize, cols: usize, seed: u64) -> CMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        CMatrix::from_fn(rows, cols, |_, _| {
            C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        })
    }

    fn orthonormality_defect(q: &CMatrix) -> f64 {
        (&q.adjoint() * q)
            .sub(&CMatrix::identity(q.cols()))
            .frobenius_norm()
    }

    #[test]
    fn svd_of_diagonal() {
        let a = CMatrix::diag(&[c(3.0), c(1.0)]);
        let f = svd(&a).unwrap();
        assert_eq!(f.singular_values, vec![3.0, 1.0]);
    }

    #[test]
    fn svd_of_zero_matrix() {
        let f = svd(&CMatrix::zeros(2, 2)).unwrap();
        assert_eq!(f.singular_values, vec![0.0, 0.0]);
        assert!(orthonormality_defect(&f.u) < 1e-12);
        assert!(orthonormality_defect(&f.v) < 1e-12);
    }

    #[test]
    fn svd_reconstructs_random_matrices() {
        for (seed, (m, n)) in [(5, 3), (3, 5), (7, 7), (1, 4), (4, 1)]
            .into_iter()
            .enumerate()
        {
            let a = random_matrix(m, n, seed as u64);
            let f = svd(&a).unwrap();
            let resid = a.sub(&f.reconstruct()).frobenius_norm();
            assert!(
                resid < 1e-12 * a.frobenius_norm().max(1.0),
                "{m}x{n}: {resid}"
            );
            assert!(f.singular_values.windows(2).all(|w| w[0] >= w[1]));
            assert!(orthonormality_defect(&f.u) < 1e-10);
            assert!(orthonormality_defect(&f.v) < 1e-10);
        }
    }

    #[test]
    fn svd_rejects_nonfinite_and_empty() {
        assert!(CMatrix::from_real(1, 1, &[f64::NAN]).is_err());
        assert!(matches!(
            svd(&CMatrix::zeros(0, 3)),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn svd_of_rank_deficient_matrix_keeps_orthonormal_u() {
        let a = CMatrix::from_real(3, 2, &[1.0, 2.0, 2.0, 4.0, 3.0, 6.0]).unwrap();
        let f = svd(&a).unwrap();
        assert!(f.sigma_min() < 1e-14 * f.sigma_max());
        assert!(orthonormality_defect(&f.u) < 1e-12);
        assert!(a.sub(&f.reconstruct()).frobenius_norm() < 1e-12 * a.frobenius_norm());
    }

    #[test]
    fn pinv_of_rank_deficient_diagonal() {
        let a = CMatrix::diag(&[c(2.0), c(0.0)]);
        let p = pseudoinverse(&a, None).unwrap();
        assert!(p.sub(&CMatrix::diag(&[c(0.5), c(0.0)])).frobenius_norm() < 1e-15);
    }

    #[test]
    fn pinv_of_unitary_is_adjoint() {
        // unitary DFT matrix
        let n = 5;
        let f = CMatrix::from_fn(n, n, |j, k| {
            C64::from_polar(
                1.0 / (n as f64).sqrt(),
                -2.0 * std::f64::consts::PI * (j * k) as f64 / n as f64,
            )
        });
        let p = pseudoinverse(&f, None).unwrap();
        assert!(p.sub(&f.adjoint()).frobenius_norm() < 1e-12);
    }

    #[test]
    fn pinv_penrose_on_wide_matrix() {
        let a = random_matrix(4, 6, 11);
        let p = pseudoinverse(&a, None).unwrap();
        let apa = &(&a * &p) * &a;
        assert!(apa.sub(&a).frobenius_norm() < 1e-10 * a.frobenius_norm());
    }

    #[test]
    fn pinv_rejects_negative_rtol() {
        assert!(pseudoinverse(&CMatrix::identity(2), Some(-1.0)).is_err());
    }

    #[test]
    fn min_norm_identity_and_split() {
        let x = solve_min_norm(
            &CMatrix::identity(3),
            &[c(1.0), C64::new(0.0, 2.0), c(0.0)],
            None,
        )
        .unwrap();
        assert!((x[0] - c(1.0)).norm() < 1e-15);
        assert!((x[1] - C64::new(0.0, 2.0)).norm() < 1e-15);
        assert!(x[2].norm() < 1e-15);

        let a = CMatrix::from_real(1, 2, &[1.0, 1.0]).unwrap();
        let x = solve_min_norm(&a, &[c(2.0)], None).unwrap();
        assert!((x[0] - c(1.0)).norm() < 1e-14 && (x[1] - c(1.0)).norm() < 1e-14);
    }

    #[test]
    fn min_norm_consistent_overdetermined() {
        let a = random_matrix(8, 4, 3);
        let x0: Vec<C64> = (0..4).map(|k| C64::new(k as f64, 1.0 - k as f64)).collect();
        let b = a.mul_vec(&x0);
        let x = solve_min_norm(&a, &b, None).unwrap();
        let r: f64 = a
            .mul_vec(&x)
            .iter()
            .zip(&b)
            .map(|(p, q)| (p - q).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(r < 1e-10);
    }

    #[test]
    fn min_norm_dimension_mismatch() {
        let err = solve_min_norm(&CMatrix::identity(3), &[c(1.0)], None).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch(_)));
    }

    #[test]
    fn condition_number_cases() {
        let n = 4;
        let f = CMatrix::from_fn(n, n, |j, k| {
            C64::from_polar(
                1.0 / 2.0,
                -2.0 * std::f64::consts::PI * (j * k) as f64 / n as f64,
            )
        });
        assert!((condition_number(&f).unwrap() - 1.0).abs() < 1e-12);

        let d = CMatrix::diag(&[c(10.0), c(1e-3)]);
        assert!((condition_number(&d).unwrap() - 1e4).abs() < 1e-8);

        let s = CMatrix::from_real(2, 2, &[1.0, 1.0, 1.0, 1.0]).unwrap();
        assert_eq!(condition_number(&s).unwrap(), f64::INFINITY);
        assert!(conditioning(&s).unwrap().rank_deficient);

        assert_eq!(
            condition_number(&CMatrix::zeros(2, 3)),
            Err(Error::ZeroMatrix)
        );
    }

    #[test]
    fn cholesky_solves_and_rejects() {
        let a = CMatrix::from_row_major(
            2,
            2,
            vec![c(4.0), C64::new(1.0, 1.0), C64::new(1.0, -1.0), c(3.0)],
        )
        .unwrap();
        let f = HermitianFactor::new(&a).unwrap();
        let b = vec![c(1.0), C64::new(0.0, 2.0)];
        let x = f.solve(&b);
        let ax = a.mul_vec(&x);
        assert!(ax.iter().zip(&b).all(|(p, q)| (p - q).norm() < 1e-14));

        let indefinite = CMatrix::diag(&[c(1.0), c(-1.0)]);
        assert_eq!(
            HermitianFactor::new(&indefinite).unwrap_err(),
            Error::NotPositiveDefinite
        );
        let skew = CMatrix::from_real(2, 2, &[1.0, 0.5, 0.0, 1.0]).unwrap();
        assert_eq!(
            HermitianFactor::new(&skew).unwrap_err(),
            Error::NotPositiveDefinite
        );
    }
}
