//! Validated states, channels and unitaries, plus the qubit builders used by
//! the reproduction examples.
//!
//! Basis convention: `|0⟩ = (1, 0)ᵀ`, `|1⟩ = (0, 1)ᵀ`, and σ₁, σ₂, σ₃ are the
//! standard Pauli matrices. Kraus matrix entry placement depends on this.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::cmatrix::{pauli, ComplexMatrix, EigenDecomposition, HERMITIAN_TOL};
use crate::error::{Error, Result};

/// Kraus completeness tolerance, entrywise on `Σ E†E - I`.
pub const COMPLETENESS_TOL: f64 = 1e-8;

/// Hermitian, positive-semidefinite, unit-trace matrix.
///
/// The eigendecomposition is computed once at validation time and kept, since
/// every skew-information evaluation needs fractional powers of the state.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    spectrum: EigenDecomposition,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let spectrum = mat.eig_hermitian()?;
        let trace = mat.trace();
        if (trace.re - 1.0).abs() > HERMITIAN_TOL || trace.im.abs() > HERMITIAN_TOL {
            return Err(Error::Trace(trace.re));
        }
        let min = spectrum.min_eigenvalue();
        if min < -HERMITIAN_TOL {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
            });
        }
        Ok(Self { mat, spectrum })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn spectrum(&self) -> &EigenDecomposition {
        &self.spectrum
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    /// `ρ^p` for `p ∈ [0, 1]`; `p = 0` is the identity exactly.
    pub fn power(&self, p: f64) -> Result<ComplexMatrix> {
        self.spectrum.power(p)
    }
}

/// `ρ^p` via the state's eigendecomposition.
pub fn matrix_power(rho: &DensityMatrix, p: f64) -> Result<ComplexMatrix> {
    rho.power(p)
}

/// Named, ordered list of Kraus operators satisfying `Σ E†E = I`.
#[derive(Clone, Debug)]
pub struct KrausChannel {
    name: String,
    ops: Vec<ComplexMatrix>,
}

impl KrausChannel {
    pub fn new(name: impl Into<String>, ops: Vec<ComplexMatrix>) -> Result<Self> {
        let deviation = completeness_deviation(&ops)?;
        if deviation > COMPLETENESS_TOL {
            return Err(Error::Completeness { deviation });
        }
        Ok(Self {
            name: name.into(),
            ops,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.ops[0].dim()
    }
}

/// Max entrywise deviation of `Σ E†E` from the identity.
pub fn completeness_deviation(ops: &[ComplexMatrix]) -> Result<f64> {
    let first = ops.first().ok_or(Error::EmptyChannel)?;
    let dim = first.dim();
    let mut acc = ComplexMatrix::zeros(dim);
    for op in ops {
        if op.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: op.dim(),
            });
        }
        acc.add_assign_unchecked(&op.adjoint().mul(op)?);
    }
    Ok(acc.max_abs_diff(&ComplexMatrix::identity(dim)))
}

/// Unnamed channel from raw Kraus operators.
pub fn validate_channel(ops: Vec<ComplexMatrix>) -> Result<KrausChannel> {
    KrausChannel::new("channel", ops)
}

#[derive(Clone, Debug)]
pub struct UnitaryOp {
    mat: ComplexMatrix,
}

impl UnitaryOp {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let gram = mat.adjoint().mul(&mat)?;
        let deviation = gram.max_abs_diff(&ComplexMatrix::identity(mat.dim()));
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self { mat })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }
}

/// Qubit state `½(I + r·σ)`.
pub fn bloch_state(r: [f64; 3]) -> Result<DensityMatrix> {
    let norm = r.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !norm.is_finite() || norm > 1.0 + 1e-12 {
        return Err(Error::BlochOutsideBall(norm));
    }
    let mut m = ComplexMatrix::identity(2);
    for (axis, &component) in r.iter().enumerate() {
        let sigma = pauli::sigma(axis + 1).expect("axis in 1..=3");
        m.add_assign_unchecked(&sigma.scale_real(component));
    }
    DensityMatrix::new(m.scale_real(0.5))
}

/// Equatorial Bloch state with radius `radius` at azimuth `theta`.
pub fn equatorial_state(radius: f64, theta: f64) -> Result<DensityMatrix> {
    bloch_state([radius * theta.cos(), radius * theta.sin(), 0.0])
}

fn check_q(q: f64) -> Result<()> {
    if (0.0..1.0).contains(&q) {
        Ok(())
    } else {
        Err(Error::ProbabilityRange(q))
    }
}

fn real(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// `A₁ = |0⟩⟨0| + √(1-q)|1⟩⟨1|`, `A₂ = √q|1⟩⟨1|`, as printed in the source
/// example (note `A₂` sits on the diagonal, which keeps the pair complete).
pub fn amplitude_damping(q: f64) -> Result<KrausChannel> {
    check_q(q)?;
    let a1 = ComplexMatrix::diag(&[1.0, (1.0 - q).sqrt()]);
    let a2 = ComplexMatrix::diag(&[0.0, q.sqrt()]);
    KrausChannel::new("amplitude_damping", vec![a1, a2])
}

/// `B₁ = |0⟩⟨0| + √(1-q)|1⟩⟨1|`, `B₂ = √q|0⟩⟨1|`.
pub fn phase_damping(q: f64) -> Result<KrausChannel> {
    check_q(q)?;
    let b1 = ComplexMatrix::diag(&[1.0, (1.0 - q).sqrt()]);
    let mut b2 = ComplexMatrix::zeros(2);
    b2[(0, 1)] = real(q.sqrt());
    KrausChannel::new("phase_damping", vec![b1, b2])
}

/// `C₁ = √q·I`, `C₂ = √(1-q)·σ₁`.
pub fn bit_flip(q: f64) -> Result<KrausChannel> {
    check_q(q)?;
    let c1 = ComplexMatrix::identity(2).scale_real(q.sqrt());
    let c2 = pauli::sigma_x().scale_real((1.0 - q).sqrt());
    KrausChannel::new("bit_flip", vec![c1, c2])
}

/// `exp(i·angle·σ_axis) = cos(angle)·I + i·sin(angle)·σ_axis`.
pub fn pauli_rotation(axis: usize, angle: f64) -> Result<UnitaryOp> {
    let sigma = pauli::sigma(axis).ok_or(Error::PauliAxis(axis))?;
    let m = ComplexMatrix::identity(2)
        .scale_real(angle.cos())
        .add(&sigma.scale(Complex64::new(0.0, angle.sin())))?;
    UnitaryOp::new(m)
}

/// `diag(e^{iπ/8}, -e^{iπ/8})`: the third unitary exactly as typeset in the
/// source example. It differs from `exp(iπσ₃/8) = diag(e^{iπ/8}, e^{-iπ/8})`.
pub fn printed_u3() -> UnitaryOp {
    let phase = Complex64::from_polar(1.0, PI / 8.0);
    UnitaryOp::new(ComplexMatrix::complex_diag(&[phase, -phase]))
        .expect("diagonal phases are unitary")
}

/// Bloch radius of the channel example state.
pub const CHANNEL_EXAMPLE_RADIUS: f64 = 0.8660254037844386; // √3/2
/// Bloch radius of the unitary example state.
pub const UNITARY_EXAMPLE_RADIUS: f64 = std::f64::consts::FRAC_1_SQRT_2; // √2/2

/// The amplitude-damping, phase-damping and bit-flip channels at one `q`.
pub fn example_channels(q: f64) -> Result<Vec<KrausChannel>> {
    Ok(vec![amplitude_damping(q)?, phase_damping(q)?, bit_flip(q)?])
}

/// `exp(iπσ_k/8)` for k = 1, 2, 3, optionally with the printed third matrix.
pub fn example_unitaries(printed_u3: bool) -> Vec<UnitaryOp> {
    let rot = |axis| pauli_rotation(axis, PI / 8.0).expect("valid axis");
    let u3 = if printed_u3 {
        self::printed_u3()
    } else {
        rot(3)
    };
    vec![rot(1), rot(2), u3]
}
