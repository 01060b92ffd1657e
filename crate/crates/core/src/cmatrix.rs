//! Small dense complex matrices.
//!
//! Everything in this crate lives in dimension 2 to ~16, so matrices are
//! plain row-major `Vec<Complex64>` buffers and the Hermitian eigensolver is
//! a cyclic two-sided Jacobi iteration.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance used for Hermiticity and eigenbasis invariants.
pub const HERMITIAN_TOL: f64 = 1e-10;

const JACOBI_REL_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Dense square complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting ragged or non-finite input.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut data = Vec::with_capacity(dim * dim);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(Error::NotSquare {
                    row: r,
                    len: row.len(),
                    dim,
                });
            }
            data.extend(row);
        }
        Self::from_vec(dim, data)
    }

    pub fn from_vec(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != dim * dim {
            return Err(Error::NotSquare {
                row: 0,
                len: data.len(),
                dim: dim * dim,
            });
        }
        if let Some(pos) = data
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite {
                row: pos / dim,
                col: pos % dim,
            });
        }
        Ok(Self { dim, data })
    }

    /// Real diagonal matrix.
    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    pub fn complex_diag(values: &[Complex64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.data.chunks(self.dim)
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        self.map(|z| z * factor)
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.map(|z| z * factor)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// `xy - yx`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        let xy = self.mul(other)?;
        let yx = other.mul(self)?;
        Ok(xy.zip_with(&yx, |a, b| a - b))
    }

    /// Hilbert-Schmidt squared norm `Tr(x†x)`.
    pub fn hs_norm_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - self†`.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                let d = (self.data[i * n + j] - self.data[j * n + i].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Sum of matrices that all share one dimension.
    pub fn sum<'a>(mut items: impl Iterator<Item = &'a ComplexMatrix>) -> Option<Self> {
        let first = items.next()?.clone();
        Some(items.fold(first, |acc, m| acc.zip_with(m, |a, b| a + b)))
    }

    /// Adds `other` into `self` in place; dims must already agree.
    pub(crate) fn add_assign_unchecked(&mut self, other: &Self) {
        debug_assert_eq!(self.dim, other.dim);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += *b;
        }
    }

    /// `‖self + sign·other‖²` without allocating.
    pub(crate) fn hs_norm_sq_combined(&self, other: &Self, sign: f64) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a + b * sign).norm_sqr())
            .sum()
    }

    /// Eigendecomposition of a Hermitian matrix.
    pub fn eig_hermitian(&self) -> Result<EigenDecomposition> {
        eig_hermitian(self)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for row in self.rows() {
            write!(f, "  ")?;
            for z in row {
                write!(f, "{:>+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

// Operator sugar for code that has already checked dimensions; these panic on
// mismatch like slice indexing does.
impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix::add(self, rhs).expect("dimension mismatch in matrix addition")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix::sub(self, rhs).expect("dimension mismatch in matrix subtraction")
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix::mul(self, rhs).expect("dimension mismatch in matrix product")
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.map(|z| -z)
    }
}

/// Spectrum of a Hermitian matrix: eigenvalues in descending order, with the
/// matching orthonormal eigenvectors stored as columns.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// `V · diag(f(λ)) · V†`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += v[(i, k)] * fl[k] * v[(j, k)].conj();
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(|l| l)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// `ρ^p` for a positive-semidefinite spectrum, `p ∈ [0, 1]`.
    ///
    /// Eigenvalues in `[-1e-10, 0)` are clamped to zero before powering and
    /// `p = 0` yields the identity exactly (so `0⁰` never arises).
    pub fn power(&self, p: f64) -> Result<ComplexMatrix> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::ExponentRange(p));
        }
        let min = self.min_eigenvalue();
        if min < -HERMITIAN_TOL {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
            });
        }
        if p == 0.0 {
            return Ok(ComplexMatrix::identity(self.eigenvalues.len()));
        }
        Ok(self.reconstruct_with(|l| l.max(0.0).powf(p)))
    }
}

/// Cyclic-by-row complex Jacobi eigensolver for Hermitian input.
pub fn eig_hermitian(x: &ComplexMatrix) -> Result<EigenDecomposition> {
    let defect = x.hermitian_defect();
    if defect > HERMITIAN_TOL || defect.is_nan() {
        return Err(Error::NotHermitian {
            max_asymmetry: defect,
        });
    }
    let n = x.dim();
    // Work on the exactly-Hermitian part.
    let mut a = x.clone();
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let scale = a.hs_norm_sq().sqrt();
    let threshold = JACOBI_REL_TOL * scale;

    let off_norm = |a: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut converged = false;
    for _sweep in 0..=JACOBI_MAX_SWEEPS {
        let off = off_norm(&a);
        if !off.is_finite() {
            return Err(Error::NoConvergence {
                sweeps: _sweep,
                off_diagonal: off,
            });
        }
        if off <= threshold {
            converged = true;
            break;
        }
        if _sweep == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps: JACOBI_MAX_SWEEPS,
                off_diagonal: off,
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    debug_assert!(converged);

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    // Stable sort keeps original index order among ties.
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));

    let mut eigenvectors = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        let pivot = (0..n)
            .map(|r| v[(r, src)])
            .find(|z| z.norm() > 1e-12)
            .unwrap_or(Complex64::new(1.0, 0.0));
        let phase = pivot.conj() / pivot.norm();
        for r in 0..n {
            eigenvectors[(r, col)] = v[(r, src)] * phase;
        }
    }
    Ok(EigenDecomposition {
        eigenvalues: order.iter().map(|&i| diag[i]).collect(),
        eigenvectors,
    })
}

/// One Jacobi rotation annihilating `a[p][q]`.
///
/// The phase of `a[p][q]` is first removed with `D = diag(1, e^{-iφ})` on the
/// (p, q) plane, then the real symmetric 2x2 block is diagonalised by a plane
/// rotation `R`. `G = D·R` is applied as `A ← G†AG`, `V ← VG`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase = apq / g; // e^{iφ}
    let theta = (aqq - app) / (2.0 * g);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let e = phase.conj();
    let gpp = Complex64::new(c, 0.0);
    let gpq = Complex64::new(s, 0.0);
    let gqp = e * (-s);
    let gqq = e * c;

    let n = a.dim();
    // A ← A·G (columns p, q)
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * gpp + akq * gqp;
        a[(k, q)] = akp * gpq + akq * gqq;
    }
    // A ← G†·A (rows p, q)
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = gpp.conj() * apk + gqp.conj() * aqk;
        a[(q, k)] = gpq.conj() * apk + gqq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
    // V ← V·G
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * gpp + vkq * gqp;
        v[(k, q)] = vkp * gpq + vkq * gqq;
    }
}

/// Pauli matrices σ₁, σ₂, σ₃ in the standard representation.
pub mod pauli {
    use super::ComplexMatrix;
    use num_complex::Complex64;

    const O: Complex64 = Complex64::new(0.0, 0.0);
    const ONE: Complex64 = Complex64::new(1.0, 0.0);
    const I: Complex64 = Complex64::new(0.0, 1.0);

    pub fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_vec(2, vec![O, ONE, ONE, O]).unwrap()
    }

    pub fn sigma_y() -> ComplexMatrix {
        ComplexMatrix::from_vec(2, vec![O, -I, I, O]).unwrap()
    }

    pub fn sigma_z() -> ComplexMatrix {
        ComplexMatrix::from_vec(2, vec![ONE, O, O, -ONE]).unwrap()
    }

    /// σ₁, σ₂, σ₃ by 1-based axis index.
    pub fn sigma(axis: usize) -> Option<ComplexMatrix> {
        match axis {
            1 => Some(sigma_x()),
            2 => Some(sigma_y()),
            3 => Some(sigma_z()),
            _ => None,
        }
    }
}
