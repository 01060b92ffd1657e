//! Skew information of quantum channels and sum uncertainty bounds.
//!
//! The central quantity is the (α, β, γ) modified weighted
//! Wigner-Yanase-Dyson skew information of an operator `E` in a state `ρ`,
//!
//! ```text
//! K(E) = ½ ‖[(1-γ)ρ^α + γρ^β, E] ρ^{(1-α-β)/2}‖²
//! ```
//!
//! extended to Kraus channels by summing over Kraus operators. On top of it
//! the crate computes lower bounds on `Σ_t K(Φ_t)` for N channels (with exact
//! maximisation over Kraus-index permutations) and for N unitary channels.
//!
//! ```
//! use skewbound::{bounds, quantum, skewinfo::SkewParams};
//!
//! let rho = quantum::equatorial_state(quantum::CHANNEL_EXAMPLE_RADIUS, std::f64::consts::FRAC_PI_2)?;
//! let channels = quantum::example_channels(0.4)?;
//! let params = SkewParams::new(0.25, 0.75, 0.25)?;
//! let report = bounds::channel_bound_report(&rho, &channels, &params, &Default::default())?;
//! assert!((report.sum - 0.258817).abs() < 5e-6);
//! assert!(report.lb2 <= report.sum);
//! # Ok::<(), skewbound::Error>(())
//! ```

pub mod bounds;
pub mod cmatrix;
mod error;
pub mod formats;
pub mod quantum;
pub mod repro;
pub mod sampling;
pub mod selftest;
pub mod skewinfo;

pub use bounds::{BoundOptions, BoundReport, SignChoice, UnitaryBoundReport};
pub use cmatrix::{ComplexMatrix, EigenDecomposition};
pub use error::{Error, Result};
pub use quantum::{DensityMatrix, KrausChannel, UnitaryOp};
pub use skewinfo::{SkewParams, WeightedOperatorCache};
