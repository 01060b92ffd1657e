//! Reproduction of the published comparison table and the θ sweeps behind the
//! two figures, with CSV output.

use std::f64::consts::PI;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::bounds::{
    unitary_bound_report_with_cache, BoundOptions, BoundReport, ChannelBounds, UnitaryBoundReport,
};
use crate::error::{Error, Result};
use crate::quantum::{self, CHANNEL_EXAMPLE_RADIUS, UNITARY_EXAMPLE_RADIUS};
use crate::skewinfo::{SkewParams, WeightedOperatorCache};

/// Published values carry six decimals.
pub const PUBLISHED_TOL: f64 = 5e-6;

/// Column order of the comparison table.
pub const TABLE_COLUMNS: [&str; 7] = ["ob1", "ob2", "ob3", "lb1", "lb2", "lb3", "sum"];

/// `(label, θ, [ob1, ob2, ob3, lb1, lb2, lb3, sum])` at q = 0.4.
pub const PUBLISHED_TABLE1: [(&str, f64, [f64; 7]); 4] = [
    (
        "pi/2",
        PI / 2.0,
        [
            0.234918, 0.247658, 0.241686, 0.222065, 0.252565, 0.252654, 0.258817,
        ],
    ),
    (
        "pi/3",
        PI / 3.0,
        [
            0.17968, 0.204421, 0.20082, 0.168362, 0.208841, 0.208534, 0.211782,
        ],
    ),
    (
        "pi/5",
        PI / 5.0,
        [
            0.0954994, 0.13303, 0.132687, 0.0879256, 0.135648, 0.135459, 0.135679,
        ],
    ),
    (
        "pi/7",
        PI / 7.0,
        [
            0.066361, 0.104405, 0.104922, 0.0632504, 0.106043, 0.106062, 0.106096,
        ],
    ),
];

pub const TABLE1_Q: f64 = 0.4;

/// The q = 0.2, θ = π/2 spot check, same column order as the table.
pub const PUBLISHED_Q02: [f64; 7] = [
    0.275596, 0.2644, 0.256419, 0.260707, 0.26726, 0.265758, 0.283955,
];

/// α = γ = 1/4, β = 3/4.
pub fn example_params() -> SkewParams {
    SkewParams::new(0.25, 0.75, 0.25).expect("valid example parameters")
}

/// Channel bounds for the three example channels at one `(q, θ)`.
pub fn channel_point(
    q: f64,
    theta: f64,
    radius: f64,
    params: &SkewParams,
    opts: &BoundOptions,
) -> Result<BoundReport> {
    let rho = quantum::equatorial_state(radius, theta)?;
    let channels = quantum::example_channels(q)?;
    ChannelBounds::new(&rho, &channels, params)?.report(opts)
}

/// Report values in table column order.
pub fn table_columns(r: &BoundReport) -> [f64; 7] {
    [
        r.ob1.unwrap_or(f64::NAN),
        r.ob2,
        r.ob3,
        r.lb1.unwrap_or(f64::NAN),
        r.lb2,
        r.lb3,
        r.sum,
    ]
}

#[derive(Clone, Debug)]
pub struct Table1Row {
    pub label: &'static str,
    pub theta: f64,
    pub computed: [f64; 7],
    pub published: [f64; 7],
}

impl Table1Row {
    pub fn max_abs_error(&self) -> f64 {
        self.computed
            .iter()
            .zip(&self.published)
            .map(|(c, p)| (c - p).abs())
            .fold(0.0, f64::max)
    }

    pub fn passes(&self) -> bool {
        self.max_abs_error() <= PUBLISHED_TOL
    }
}

pub fn table1(opts: &BoundOptions) -> Result<Vec<Table1Row>> {
    let params = example_params();
    PUBLISHED_TABLE1
        .iter()
        .map(|&(label, theta, published)| {
            let r = channel_point(TABLE1_Q, theta, CHANNEL_EXAMPLE_RADIUS, &params, opts)?;
            Ok(Table1Row {
                label,
                theta,
                computed: table_columns(&r),
                published,
            })
        })
        .collect()
}

/// Fixed-width table with six decimals and a per-row comparison.
pub fn format_table1(rows: &[Table1Row]) -> String {
    let mut out = String::new();
    let _ = write!(out, "{:<10}", "q=0.4");
    for c in TABLE_COLUMNS {
        let _ = write!(out, "{c:>11}");
    }
    let _ = writeln!(out, "{:>12}  status", "max|err|");
    for row in rows {
        let _ = write!(out, "{:<10}", format!("θ={}", row.label));
        for v in row.computed {
            let _ = write!(out, "{v:>11.6}");
        }
        let status = if row.passes() { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{:>12.1e}  {status}", row.max_abs_error());
        let _ = write!(out, "{:<10}", " published");
        for v in row.published {
            let _ = write!(out, "{v:>11.6}");
        }
        let _ = writeln!(out);
    }
    out
}

pub fn table1_csv(rows: &[Table1Row]) -> String {
    let mut out = String::from("theta_label,theta");
    for c in TABLE_COLUMNS {
        let _ = write!(out, ",{c}");
    }
    for c in TABLE_COLUMNS {
        let _ = write!(out, ",published_{c}");
    }
    out.push_str(",pass\n");
    for row in rows {
        let _ = write!(out, "{},{}", row.label, fmt_sig9(row.theta));
        for v in row.computed.iter().chain(&row.published) {
            let _ = write!(out, ",{}", fmt_sig9(*v));
        }
        let _ = writeln!(out, ",{}", row.passes());
    }
    out
}

/// Grid and model settings for a θ sweep.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub theta_start: f64,
    pub theta_end: f64,
    pub steps: usize,
    pub q: f64,
    pub params: SkewParams,
    pub bloch_radius: f64,
}

impl SweepConfig {
    /// 181 points over `[0, π]` for the channel example.
    pub fn channels(q: f64) -> Self {
        Self {
            theta_start: 0.0,
            theta_end: PI,
            steps: 181,
            q,
            params: example_params(),
            bloch_radius: CHANNEL_EXAMPLE_RADIUS,
        }
    }

    /// 181 points over `[0, π]` for the unitary example.
    pub fn unitaries() -> Self {
        Self {
            bloch_radius: UNITARY_EXAMPLE_RADIUS,
            ..Self::channels(0.0)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::Sweep(format!(
                "steps must be at least 2, got {}",
                self.steps
            )));
        }
        if !(self.theta_start.is_finite() && self.theta_end.is_finite())
            || self.theta_start >= self.theta_end
        {
            return Err(Error::Sweep(format!(
                "theta_start ({}) must be below theta_end ({})",
                self.theta_start, self.theta_end
            )));
        }
        if !(0.0..1.0).contains(&self.q) {
            return Err(Error::Sweep(format!("q = {} outside [0, 1)", self.q)));
        }
        if !(0.0..=1.0).contains(&self.bloch_radius) {
            return Err(Error::Sweep(format!(
                "Bloch radius {} outside [0, 1]",
                self.bloch_radius
            )));
        }
        Ok(())
    }

    /// Closed grid; both endpoints are hit exactly.
    pub fn grid(&self) -> Vec<f64> {
        let last = self.steps - 1;
        let span = self.theta_end - self.theta_start;
        (0..self.steps)
            .map(|k| {
                if k == last {
                    self.theta_end
                } else {
                    self.theta_start + span * (k as f64) / (last as f64)
                }
            })
            .collect()
    }
}

fn check_sound(theta: f64, violations: Vec<String>) -> Result<()> {
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::Soundness {
            context: format!("theta = {theta}"),
            details: violations.join("; "),
        })
    }
}

/// Channel bounds at every grid point; aborts if any point breaks soundness.
pub fn channel_sweep(cfg: &SweepConfig, opts: &BoundOptions) -> Result<Vec<(f64, BoundReport)>> {
    cfg.validate()?;
    let channels = quantum::example_channels(cfg.q)?;
    let rows = cfg
        .grid()
        .into_par_iter()
        .map(|theta| {
            let rho = quantum::equatorial_state(cfg.bloch_radius, theta)?;
            let report = ChannelBounds::new(&rho, &channels, &cfg.params)?.report(opts)?;
            check_sound(theta, report.violations())?;
            Ok((theta, report))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(rows)
}

pub fn channel_sweep_csv(rows: &[(f64, BoundReport)]) -> String {
    let mut out = String::from("theta,sum,ob1,ob2,ob3,lb1,lb2,lb3\n");
    for (theta, r) in rows {
        let cols = table_columns(r);
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            fmt_sig9(*theta),
            fmt_sig9(r.sum),
            fmt_opt(cols[0]),
            fmt_sig9(cols[1]),
            fmt_sig9(cols[2]),
            fmt_opt(cols[3]),
            fmt_sig9(cols[4]),
            fmt_sig9(cols[5]),
        );
    }
    out
}

/// Unitary bounds for the three rotation unitaries at every grid point.
pub fn unitary_sweep(
    cfg: &SweepConfig,
    printed_u3: bool,
) -> Result<Vec<(f64, UnitaryBoundReport)>> {
    cfg.validate()?;
    let unitaries = quantum::example_unitaries(printed_u3);
    cfg.grid()
        .into_par_iter()
        .map(|theta| {
            let rho = quantum::equatorial_state(cfg.bloch_radius, theta)?;
            let cache = WeightedOperatorCache::new(&rho, &cfg.params)?;
            let report = unitary_bound_report_with_cache(&cache, &unitaries)?;
            check_sound(theta, report.violations())?;
            Ok((theta, report))
        })
        .collect()
}

pub fn unitary_sweep_csv(rows: &[(f64, UnitaryBoundReport)]) -> String {
    let mut out = String::from("theta,sum,lb1,lb2,lb3\n");
    for (theta, r) in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            fmt_sig9(*theta),
            fmt_sig9(r.sum),
            fmt_opt(r.lb1.unwrap_or(f64::NAN)),
            fmt_sig9(r.lb2),
            fmt_sig9(r.lb3),
        );
    }
    out
}

/// Share of grid points where the third unitary bound is at least the other two.
pub fn lb3_dominance_fraction(rows: &[(f64, UnitaryBoundReport)]) -> f64 {
    if rows.is_empty() {
        return 0.0;
    }
    let hits = rows
        .iter()
        .filter(|(_, r)| r.lb3 >= r.lb2 && r.lb1.is_none_or(|v| r.lb3 >= v))
        .count();
    hits as f64 / rows.len() as f64
}

fn fmt_opt(v: f64) -> String {
    if v.is_nan() {
        String::new()
    } else {
        fmt_sig9(v)
    }
}

/// Nine significant digits, plain decimal notation in `[1e-4, 1e9)`, trailing
/// zeros trimmed. Locale independent.
pub fn fmt_sig9(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let mag = v.abs();
    if !(1e-4..1e9).contains(&mag) {
        let s = format!("{v:.8e}");
        let (mantissa, exp) = s.split_once('e').expect("exponent form");
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        return format!("{mantissa}e{exp}");
    }
    // Round first so the exponent reflects the rounded value (e.g. 9.999999999 -> 10).
    let rounded: f64 = format!("{v:.8e}").parse().expect("valid float");
    let exp = rounded.abs().log10().floor() as i32;
    let decimals = (8 - exp).max(0) as usize;
    let s = format!("{rounded:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig9_formatting() {
        assert_eq!(fmt_sig9(0.0), "0");
        assert_eq!(fmt_sig9(-0.0), "0");
        assert_eq!(fmt_sig9(0.25881712345678), "0.258817123");
        assert_eq!(fmt_sig9(PI), "3.14159265");
        assert_eq!(fmt_sig9(1.5), "1.5");
        assert_eq!(fmt_sig9(9.9999999999), "10");
        assert_eq!(fmt_sig9(123456789.4), "123456789");
        assert_eq!(fmt_sig9(1.234e-7), "1.234e-7");
        assert_eq!(fmt_sig9(-0.001), "-0.001");
    }

    #[test]
    fn grid_contract() {
        let cfg = SweepConfig::channels(0.4);
        let g = cfg.grid();
        assert_eq!(g.len(), 181);
        assert_eq!(g[0], 0.0);
        assert_eq!(*g.last().unwrap(), PI);
        assert!((g[90] - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn sweep_validation() {
        let mut cfg = SweepConfig::channels(0.4);
        cfg.theta_end = 0.0;
        cfg.steps = 2;
        assert!(matches!(cfg.validate(), Err(Error::Sweep(_))));
        let mut cfg = SweepConfig::channels(0.4);
        cfg.steps = 1;
        assert!(cfg.validate().is_err());
        assert!(SweepConfig::channels(1.0).validate().is_err());
        let mut cfg = SweepConfig::unitaries();
        cfg.bloch_radius = 1.5;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn short_sweep_is_sound_and_deterministic() {
        let cfg = SweepConfig {
            steps: 7,
            ..SweepConfig::channels(0.9)
        };
        let a = channel_sweep_csv(&channel_sweep(&cfg, &BoundOptions::default()).unwrap());
        let b = channel_sweep_csv(&channel_sweep(&cfg, &BoundOptions::default()).unwrap());
        assert_eq!(a, b);
        assert_eq!(a.lines().count(), 8);
        assert!(a.starts_with("theta,sum,ob1,ob2,ob3,lb1,lb2,lb3\n"));
    }

    #[test]
    fn unitary_sweep_rows() {
        let cfg = SweepConfig {
            steps: 5,
            ..SweepConfig::unitaries()
        };
        for printed in [false, true] {
            let rows = unitary_sweep(&cfg, printed).unwrap();
            assert_eq!(rows.len(), 5);
            assert!(rows.iter().all(|(_, r)| r.max_bound() <= r.sum + 1e-9));
            let frac = lb3_dominance_fraction(&rows);
            assert!((0.0..=1.0).contains(&frac));
        }
    }
}
