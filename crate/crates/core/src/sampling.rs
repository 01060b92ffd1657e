//! Seeded random generators for states, channels, unitaries and parameters.
//!
//! Used by the self-test harness and the property suites; every generator
//! takes the caller's RNG so runs are reproducible from a single seed.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::cmatrix::ComplexMatrix;
use crate::quantum::{self, DensityMatrix, KrausChannel, UnitaryOp};
use crate::skewinfo::SkewParams;

/// Uniform in `[0, 1)`.
pub fn probability<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random::<f64>()
}

pub fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn complex_matrix<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let data = (0..dim * dim).map(|_| gaussian_complex(rng)).collect();
    ComplexMatrix::from_vec(dim, data).expect("finite gaussian entries")
}

pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = complex_matrix(rng, dim);
    (&g + &g.adjoint()).scale_real(0.5)
}

/// Full-rank density matrix `GG†/Tr(GG†)`.
pub fn density_matrix<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DensityMatrix {
    let g = complex_matrix(rng, dim);
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(m.scale_real(1.0 / tr)).expect("GG† is a valid state")
}

/// Qubit state with uniformly random direction and radius in `[0, max_radius)`.
pub fn bloch_state<R: Rng + ?Sized>(rng: &mut R, max_radius: f64) -> DensityMatrix {
    let dir: [f64; 3] = [
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
    ];
    let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-300);
    let radius = max_radius * rng.random::<f64>();
    quantum::bloch_state(dir.map(|x| x / norm * radius)).expect("radius below one")
}

/// Haar-like unitary from Gram-Schmidt on a Gaussian matrix.
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> UnitaryOp {
    let g = complex_matrix(rng, dim);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut v: Vec<Complex64> = (0..dim).map(|i| g[(i, j)]).collect();
        for u in &cols {
            let proj: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= proj * ui;
            }
        }
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / n).collect());
    }
    let mut m = ComplexMatrix::zeros(dim);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            m[(i, j)] = z;
        }
    }
    UnitaryOp::new(m).expect("Gram-Schmidt output is unitary")
}

/// Random channel with `n` Kraus operators: `E_i = G_i S^{-1/2}`, `S = Σ G_i†G_i`.
pub fn kraus_channel<R: Rng + ?Sized>(rng: &mut R, dim: usize, n: usize) -> KrausChannel {
    let gs: Vec<ComplexMatrix> = (0..n).map(|_| complex_matrix(rng, dim)).collect();
    let mut s = ComplexMatrix::zeros(dim);
    for g in &gs {
        s = &s + &(&g.adjoint() * g);
    }
    let inv_sqrt = s
        .eig_hermitian()
        .expect("S is Hermitian")
        .reconstruct_with(|l| 1.0 / l.sqrt());
    let ops = gs.iter().map(|g| g * &inv_sqrt).collect();
    KrausChannel::new("random", ops).expect("normalised Kraus family")
}

/// Uniform over the valid `(α, β, γ)` domain.
pub fn skew_params<R: Rng + ?Sized>(rng: &mut R) -> SkewParams {
    let alpha = rng.random::<f64>();
    let beta = (1.0 - alpha) * rng.random::<f64>();
    let gamma = rng.random::<f64>();
    SkewParams::new(alpha, beta, gamma).expect("sampled inside the domain")
}
