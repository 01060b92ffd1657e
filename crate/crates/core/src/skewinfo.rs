//! The (α, β, γ) modified weighted Wigner-Yanase-Dyson skew information
//!
//! ```text
//! K(E) = ½ ‖[W, E] P‖²,   W = (1-γ)ρ^α + γρ^β,   P = ρ^{(1-α-β)/2}
//! ```
//!
//! for arbitrary (not necessarily Hermitian) operators, Kraus channels (sum
//! over the Kraus operators) and unitary channels. The norm is
//! Hilbert-Schmidt. The trace form `-½Tr([W,E†][W,E]ρ^{1-α-β})` is the same
//! quantity but can dip below zero under rounding, so only the norm form is
//! evaluated here.

use serde::{Deserialize, Serialize};

use crate::cmatrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::quantum::{DensityMatrix, KrausChannel, UnitaryOp};

/// Slack on `α + β ≤ 1`; inside it the trailing exponent is taken as exactly 0.
const SUM_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkewParams {
    alpha: f64,
    beta: f64,
    gamma: f64,
}

impl SkewParams {
    /// Requires `α, β ≥ 0`, `α + β ≤ 1` and `0 ≤ γ ≤ 1`.
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let invalid = |reason| Error::InvalidParams {
            alpha,
            beta,
            gamma,
            reason,
        };
        if !(alpha.is_finite() && beta.is_finite() && gamma.is_finite()) {
            return Err(invalid("parameters must be finite"));
        }
        if alpha < 0.0 || beta < 0.0 {
            return Err(invalid("alpha and beta must be nonnegative"));
        }
        if alpha + beta > 1.0 + SUM_SLACK {
            return Err(invalid("alpha + beta must not exceed 1"));
        }
        if !(0.0..=1.0).contains(&gamma) {
            return Err(invalid("gamma must lie in [0, 1]"));
        }
        Ok(Self { alpha, beta, gamma })
    }

    /// The two-parameter family `β = 1 - α`.
    pub fn alpha_gamma(alpha: f64, gamma: f64) -> Result<Self> {
        Self::new(alpha, 1.0 - alpha, gamma)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `(1 - α - β) / 2`, snapped to 0 when `α + β` is within rounding of 1.
    pub fn trailing_exponent(&self) -> f64 {
        let rest = 1.0 - self.alpha - self.beta;
        if rest.abs() <= SUM_SLACK {
            0.0
        } else {
            rest / 2.0
        }
    }
}

/// `W = (1-γ)ρ^α + γρ^β` and `P = ρ^{(1-α-β)/2}` for one state and parameter
/// set, shared by every operator evaluated against that pair.
#[derive(Clone, Debug)]
pub struct WeightedOperatorCache {
    w: ComplexMatrix,
    p: ComplexMatrix,
}

impl WeightedOperatorCache {
    pub fn new(rho: &DensityMatrix, params: &SkewParams) -> Result<Self> {
        let spectrum = rho.spectrum();
        let rho_a = spectrum.power(params.alpha)?;
        let rho_b = spectrum.power(params.beta)?;
        let w = &rho_a.scale_real(1.0 - params.gamma) + &rho_b.scale_real(params.gamma);
        let p = spectrum.power(params.trailing_exponent())?;
        Ok(Self { w, p })
    }

    pub fn w(&self) -> &ComplexMatrix {
        &self.w
    }

    pub fn p(&self) -> &ComplexMatrix {
        &self.p
    }

    pub fn dim(&self) -> usize {
        self.w.dim()
    }

    /// The linear image `[W, E]·P`, whose squared norm is `2K(E)`.
    pub fn image(&self, e: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.w.commutator(e)?.mul(&self.p)
    }

    pub fn skew_info(&self, e: &ComplexMatrix) -> Result<f64> {
        Ok(0.5 * self.image(e)?.hs_norm_sq())
    }

    pub fn skew_info_channel(&self, ch: &KrausChannel) -> Result<f64> {
        ch.ops().iter().map(|e| self.skew_info(e)).sum()
    }
}

pub fn weighted_ops(rho: &DensityMatrix, params: &SkewParams) -> Result<WeightedOperatorCache> {
    WeightedOperatorCache::new(rho, params)
}

/// `K(E)` for a single operator.
pub fn skew_info_op(rho: &DensityMatrix, e: &ComplexMatrix, params: &SkewParams) -> Result<f64> {
    weighted_ops(rho, params)?.skew_info(e)
}

/// `Σ_i K(E_i)` over the channel's Kraus operators.
pub fn skew_info_channel(
    rho: &DensityMatrix,
    ch: &KrausChannel,
    params: &SkewParams,
) -> Result<f64> {
    weighted_ops(rho, params)?.skew_info_channel(ch)
}

/// `K(U)`, which is also the value of the unitary channel `ρ ↦ UρU†`.
pub fn skew_info_unitary(rho: &DensityMatrix, u: &UnitaryOp, params: &SkewParams) -> Result<f64> {
    skew_info_op(rho, u.matrix(), params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmatrix::pauli;
    use crate::quantum::{self, bloch_state};
    use crate::sampling;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn params(a: f64, b: f64, g: f64) -> SkewParams {
        SkewParams::new(a, b, g).unwrap()
    }

    #[test]
    fn params_domain() {
        assert!(SkewParams::new(0.25, 0.75, 0.25).is_ok());
        assert!(SkewParams::new(0.0, 0.0, 0.0).is_ok());
        for (a, b, g) in [
            (-0.1, 0.5, 0.5),
            (0.5, -0.1, 0.5),
            (0.6, 0.5, 0.5),
            (0.2, 0.2, 1.1),
            (0.2, 0.2, -0.1),
            (f64::NAN, 0.2, 0.2),
        ] {
            assert!(
                matches!(SkewParams::new(a, b, g), Err(Error::InvalidParams { .. })),
                "{a} {b} {g}"
            );
        }
        assert_eq!(
            SkewParams::alpha_gamma(0.3, 0.1)
                .unwrap()
                .trailing_exponent(),
            0.0
        );
        assert_eq!(params(0.2, 0.4, 0.0).trailing_exponent(), 0.2);
    }

    #[test]
    fn weighted_ops_examples() {
        let mixed = bloch_state([0.0; 3]).unwrap();
        let p = params(0.3, 0.2, 0.7);
        let cache = weighted_ops(&mixed, &p).unwrap();
        let s = 0.3 * 2f64.powf(-0.3) + 0.7 * 2f64.powf(-0.2);
        assert!(
            cache
                .w()
                .max_abs_diff(&ComplexMatrix::identity(2).scale_real(s))
                < 1e-14
        );

        let rho = quantum::equatorial_state(0.5, 1.0).unwrap();
        let cache = weighted_ops(&rho, &SkewParams::alpha_gamma(0.25, 0.25).unwrap()).unwrap();
        assert_eq!(*cache.p(), ComplexMatrix::identity(2));

        let rho = DensityMatrix::new(ComplexMatrix::diag(&[0.75, 0.25])).unwrap();
        let cache = weighted_ops(&rho, &params(0.5, 0.5, 0.3)).unwrap();
        assert!(
            cache
                .w()
                .max_abs_diff(&ComplexMatrix::diag(&[0.75f64.sqrt(), 0.5]))
                < 1e-14
        );
    }

    #[test]
    fn skew_info_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rho = sampling::density_matrix(&mut rng, 3);
        let p = sampling::skew_params(&mut rng);
        assert!(
            skew_info_op(&rho, &ComplexMatrix::identity(3), &p)
                .unwrap()
                .abs()
                < 1e-14
        );

        let mixed = bloch_state([0.0; 3]).unwrap();
        let e = sampling::complex_matrix(&mut rng, 2);
        assert!(skew_info_op(&mixed, &e, &p).unwrap() < 1e-28);

        let rho = DensityMatrix::new(ComplexMatrix::diag(&[0.75, 0.25])).unwrap();
        for g in [0.0, 0.3, 1.0] {
            let k = skew_info_op(&rho, &pauli::sigma_x(), &params(0.5, 0.5, g)).unwrap();
            assert!((k - (2.0 - 3f64.sqrt()) / 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn dimension_mismatch() {
        let rho = bloch_state([0.1, 0.0, 0.0]).unwrap();
        let err =
            skew_info_op(&rho, &ComplexMatrix::identity(3), &params(0.5, 0.5, 0.5)).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn channel_examples() {
        let rho = bloch_state([0.3, -0.2, 0.5]).unwrap();
        let p = params(0.2, 0.3, 0.6);
        let id = quantum::validate_channel(vec![ComplexMatrix::identity(2)]).unwrap();
        assert_eq!(skew_info_channel(&rho, &id, &p).unwrap(), 0.0);
        for ch in [
            quantum::amplitude_damping(0.0).unwrap(),
            quantum::phase_damping(0.0).unwrap(),
        ] {
            assert!(skew_info_channel(&rho, &ch, &p).unwrap() < 1e-30);
        }
    }

    #[test]
    fn unitary_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rho = sampling::density_matrix(&mut rng, 2);
        let p = sampling::skew_params(&mut rng);
        let id = UnitaryOp::new(ComplexMatrix::identity(2)).unwrap();
        assert!(skew_info_unitary(&rho, &id, &p).unwrap() < 1e-28);
        let phase =
            UnitaryOp::new(ComplexMatrix::identity(2).scale(Complex64::from_polar(1.0, 0.7)))
                .unwrap();
        assert!(skew_info_unitary(&rho, &phase, &p).unwrap() < 1e-28);
    }

    #[test]
    fn gamma_swap_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let rho = sampling::density_matrix(&mut rng, 3);
            let e = sampling::complex_matrix(&mut rng, 3);
            let p = sampling::skew_params(&mut rng);
            let swapped = params(p.beta(), p.alpha(), 1.0 - p.gamma());
            let a = skew_info_op(&rho, &e, &p).unwrap();
            let b = skew_info_op(&rho, &e, &swapped).unwrap();
            assert!((a - b).abs() <= 1e-12 * a.max(1.0), "{a} vs {b}");
        }
    }

    #[test]
    fn scaling_and_commuting() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let rho = sampling::density_matrix(&mut rng, 3);
            let p = sampling::skew_params(&mut rng);
            let e = sampling::complex_matrix(&mut rng, 3);
            let lambda = sampling::gaussian_complex(&mut rng);
            let k = skew_info_op(&rho, &e, &p).unwrap();
            let k_scaled = skew_info_op(&rho, &e.scale(lambda), &p).unwrap();
            assert!(k >= 0.0);
            assert!((k_scaled - lambda.norm_sqr() * k).abs() <= 1e-10 * k_scaled.max(1e-300));

            // Diagonal in ρ's eigenbasis commutes with ρ.
            let spec = rho.spectrum();
            let d: Vec<f64> = (0..3).map(|_| rng.random::<f64>()).collect();
            let e = spec
                .eigenvectors
                .mul(&ComplexMatrix::diag(&d))
                .unwrap()
                .mul(&spec.eigenvectors.adjoint())
                .unwrap();
            assert!(skew_info_op(&rho, &e, &p).unwrap() <= 1e-12);
        }
    }
}
