//! Seeded runtime checks behind the `selftest` subcommand.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{
    norm_inequality_check, unitary_bound_report, BoundOptions, ChannelBounds, DEFAULT_TUPLE_CAP,
};
use crate::cmatrix::ComplexMatrix;
use crate::error::Result;
use crate::quantum::{self, KrausChannel};
use crate::repro::{self, PUBLISHED_Q02, PUBLISHED_TOL};
use crate::sampling;
use crate::skewinfo::WeightedOperatorCache;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Reported, not asserted.
    Info,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        };
        write!(f, "[{tag}] {}: {}", self.name, self.detail)
    }
}

fn check(name: &'static str, ok: bool, detail: String) -> Check {
    Check {
        name,
        status: if ok { Status::Pass } else { Status::Fail },
        detail,
    }
}

pub fn run(seed: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let opts = BoundOptions::default();

    let rows = repro::table1(&opts)?;
    let worst = rows.iter().map(|r| r.max_abs_error()).fold(0.0, f64::max);
    out.push(check(
        "table1",
        rows.iter().all(|r| r.passes()),
        format!("28 values, max abs error {worst:.2e} (tol {PUBLISHED_TOL:.0e})"),
    ));

    let r = repro::channel_point(
        0.2,
        std::f64::consts::FRAC_PI_2,
        quantum::CHANNEL_EXAMPLE_RADIUS,
        &repro::example_params(),
        &opts,
    )?;
    let err = repro::table_columns(&r)
        .iter()
        .zip(&PUBLISHED_Q02)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    out.push(check(
        "q=0.2 spot check",
        err <= PUBLISHED_TOL,
        format!("max abs error {err:.2e}"),
    ));

    let mut worst_gap = f64::NEG_INFINITY;
    let mut failures = 0;
    for _ in 0..200 {
        let q = sampling::probability(&mut rng);
        let rho = sampling::bloch_state(&mut rng, 0.999);
        let p = sampling::skew_params(&mut rng);
        let report = ChannelBounds::new(&rho, &quantum::example_channels(q)?, &p)?.report(
            &BoundOptions {
                sign: crate::bounds::SignChoice::Best,
                ..opts
            },
        )?;
        for (_, v) in report.bounds() {
            worst_gap = worst_gap.max(v - report.sum);
        }
        failures += usize::from(!report.violations().is_empty());
    }
    out.push(check(
        "channel soundness",
        failures == 0,
        format!("200 configs, {failures} violations, max(bound - sum) = {worst_gap:.3e}"),
    ));

    let mut worst_gap = f64::NEG_INFINITY;
    for _ in 0..200 {
        let rho = sampling::bloch_state(&mut rng, 0.999);
        let p = sampling::skew_params(&mut rng);
        let us: Vec<_> = (0..3).map(|_| sampling::unitary(&mut rng, 2)).collect();
        let r = unitary_bound_report(&rho, &us, &p)?;
        worst_gap = worst_gap.max(r.max_bound() - r.sum);
    }
    out.push(check(
        "unitary soundness",
        worst_gap <= 1e-9,
        format!("200 configs, max(bound - sum) = {worst_gap:.3e}"),
    ));

    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let dim = rng.random_range(2..=4);
        let rho = sampling::density_matrix(&mut rng, dim);
        let p = sampling::skew_params(&mut rng);
        let e = sampling::complex_matrix(&mut rng, dim);
        let cache = WeightedOperatorCache::new(&rho, &p)?;
        let norm_form = cache.skew_info(&e)?;
        let w = cache.w();
        let tail = rho.power(2.0 * p.trailing_exponent())?;
        let trace_form = -0.5
            * (&(&w.commutator(&e.adjoint())? * &w.commutator(&e)?) * &tail)
                .trace()
                .re;
        worst = worst.max((norm_form - trace_form).abs());
    }
    out.push(check(
        "norm form = trace form",
        worst <= 1e-10,
        format!("100 inputs, max diff {worst:.2e}"),
    ));

    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let dim = rng.random_range(2..=4);
        let n = rng.random_range(1..=4);
        let rho = sampling::density_matrix(&mut rng, dim);
        let p = sampling::skew_params(&mut rng);
        let ch = sampling::kraus_channel(&mut rng, dim, n);
        let cache = WeightedOperatorCache::new(&rho, &p)?;
        let summed = cache.skew_info_channel(&ch)?;
        let mut stacked: Vec<Complex64> = Vec::new();
        for e in ch.ops() {
            stacked.extend_from_slice(cache.image(e)?.as_slice());
        }
        let stacked = 0.5 * stacked.iter().map(|z| z.norm_sqr()).sum::<f64>();
        worst = worst.max((summed - stacked).abs());
    }
    out.push(check(
        "channel sum = stacked form",
        worst <= 1e-10,
        format!("100 inputs, max diff {worst:.2e}"),
    ));

    let mut worst = f64::NEG_INFINITY;
    for _ in 0..100 {
        let rho = sampling::density_matrix(&mut rng, 2);
        let p = sampling::skew_params(&mut rng);
        let chans: Vec<_> = (0..3)
            .map(|_| sampling::kraus_channel(&mut rng, 2, 2))
            .collect();
        let cb = ChannelBounds::new(&rho, &chans, &p)?;
        for t in cb.tuple_space(DEFAULT_TUPLE_CAP)?.iter() {
            let v = cb.evaluate(&t);
            worst = worst
                .max(v.ob2 - v.lb2)
                .max(v.ob3[0] - v.lb3[0])
                .max(v.ob3[1] - v.lb3[1])
                .max(v.lb1.unwrap() - v.ob1.unwrap());
        }
    }
    out.push(check(
        "per-tuple dominance",
        worst <= 1e-10,
        format!("100 configs, worst violation margin {worst:.2e}"),
    ));

    let mut held = 0;
    for trial in 0..500 {
        let n = 3 + trial % 3;
        let len = rng.random_range(1..=8);
        let vs: Vec<Vec<Complex64>> = (0..n)
            .map(|_| {
                (0..len)
                    .map(|_| sampling::gaussian_complex(&mut rng))
                    .collect()
            })
            .collect();
        held += usize::from(norm_inequality_check(&vs).all_hold());
    }
    out.push(check(
        "norm inequalities",
        held == 500,
        format!("{held}/500 tuples"),
    ));

    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let dim = rng.random_range(2..=6);
        let h = sampling::hermitian(&mut rng, dim);
        let e = h.eig_hermitian()?;
        let v = &e.eigenvectors;
        worst = worst
            .max(e.reconstruct().max_abs_diff(&h))
            .max((&v.adjoint() * v).max_abs_diff(&ComplexMatrix::identity(dim)));
    }
    out.push(check(
        "eigendecomposition",
        worst <= 1e-10,
        format!("100 matrices, max error {worst:.2e}"),
    ));

    let (original, mixed) = kraus_mixing_experiment(0.4, 1.0)?;
    out.push(Check {
        name: "Kraus representation",
        status: Status::Info,
        detail: format!(
            "amplitude damping q=0.4: K = {original:.12}, after unitary Kraus mixing K = {mixed:.12} (diff {:.1e})",
            (original - mixed).abs()
        ),
    });
    Ok(out)
}

/// Channel value before and after replacing `{A₁, A₂}` by the equivalent
/// family `{cA₁ + sA₂, -sA₁ + cA₂}` (rotation angle 0.7), on the channel
/// example state at `theta`.
pub fn kraus_mixing_experiment(q: f64, theta: f64) -> Result<(f64, f64)> {
    let ch = quantum::amplitude_damping(q)?;
    let (c, s) = (0.7f64.cos(), 0.7f64.sin());
    let [a1, a2] = [&ch.ops()[0], &ch.ops()[1]];
    let mixed = KrausChannel::new(
        "amplitude_damping_mixed",
        vec![
            &a1.scale_real(c) + &a2.scale_real(s),
            &a2.scale_real(c) - &a1.scale_real(s),
        ],
    )?;
    let rho = quantum::equatorial_state(quantum::CHANNEL_EXAMPLE_RADIUS, theta)?;
    let cache = WeightedOperatorCache::new(&rho, &repro::example_params())?;
    Ok((
        cache.skew_info_channel(&ch)?,
        cache.skew_info_channel(&mixed)?,
    ))
}
