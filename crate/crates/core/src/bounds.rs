//! Sum uncertainty lower bounds for N channels and N unitaries.
//!
//! For channels `Φ_1..Φ_N` with Kraus operators `E^t_i` every bound is a
//! maximum over permutation tuples `(π_1, .., π_N)` of Kraus indices. One
//! tuple is applied jointly to all pairwise terms, and `π_1` is fixed to the
//! identity because relabelling every channel by a common permutation leaves
//! each bound unchanged.
//!
//! Writing `K±_{ts} = Σ_i K(E^t_{π_t(i)} ± E^s_{π_s(i)})`, the `LB` bounds
//! aggregate square roots per channel pair, `(Σ_{t<s} √K±_{ts})²`, while the
//! older `OB` bounds aggregate per Kraus index,
//! `Σ_i (Σ_{t<s} √K(E^t_{π_t(i)} ± E^s_{π_s(i)}))²`. By Minkowski the pair
//! aggregation is never smaller, so `LB2 ≥ OB2`, `LB3 ≥ OB3` and `LB1 ≤ OB1`
//! hold tuple by tuple.
//!
//! The third bound of each family has two sign variants. With `x ∈ {0, 1}` the
//! linear term sums `K(E^t + (-1)^x E^s)` and the square-root term uses the
//! opposite sign. [`SignChoice`] picks one variant or the larger of the two.

use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cmatrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::quantum::{DensityMatrix, KrausChannel, UnitaryOp};
use crate::skewinfo::{SkewParams, WeightedOperatorCache};

pub const DEFAULT_TUPLE_CAP: u64 = 1_000_000;

/// Values within this distance of the maximum count as ties for the argmax.
const ARGMAX_TIE: f64 = 1e-12;

/// Slack used by the report's soundness checks.
pub const SOUNDNESS_TOL: f64 = 1e-9;

/// One permutation of Kraus indices per channel (0-based), first entry identity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PermutationTuple {
    pub perms: Vec<Vec<usize>>,
}

impl PermutationTuple {
    pub fn identity(n: usize, channels: usize) -> Self {
        Self {
            perms: vec![(0..n).collect(); channels],
        }
    }

    /// Applies `common` after every permutation: `π_t ↦ π_t ∘ common`.
    pub fn relabel(&self, common: &[usize]) -> Self {
        Self {
            perms: self
                .perms
                .iter()
                .map(|p| common.iter().map(|&i| p[i]).collect())
                .collect(),
        }
    }
}

/// Every tuple `(id, π_2, .., π_N)` over `S_n`, in lexicographic order.
#[derive(Clone, Debug)]
pub struct TupleSpace {
    perms: Vec<Vec<usize>>,
    channels: usize,
    count: usize,
}

impl TupleSpace {
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn kraus_count(&self) -> usize {
        self.perms[0].len()
    }

    /// Indices of `π_2..π_N` into the sorted permutation list, most
    /// significant first.
    fn digits(&self, mut index: usize, out: &mut [usize]) {
        let base = self.perms.len();
        for slot in out.iter_mut().rev() {
            *slot = index % base;
            index /= base;
        }
    }

    pub fn get(&self, index: usize) -> PermutationTuple {
        let mut digits = vec![0; self.channels - 1];
        self.digits(index, &mut digits);
        let mut perms = Vec::with_capacity(self.channels);
        perms.push(self.perms[0].clone());
        perms.extend(digits.iter().map(|&d| self.perms[d].clone()));
        PermutationTuple { perms }
    }

    pub fn iter(&self) -> impl Iterator<Item = PermutationTuple> + '_ {
        (0..self.count).map(move |k| self.get(k))
    }
}

/// All `(n!)^{N-1}` permutation tuples with the first fixed to the identity.
pub fn enumerate_tuples(n: usize, channels: usize, cap: u64) -> Result<TupleSpace> {
    if n == 0 {
        return Err(Error::EmptyChannel);
    }
    if channels < 2 {
        return Err(Error::TooFewOperands {
            bound: "permutation search",
            requirement: "N >= 2",
            got: channels,
        });
    }
    let exceeded = |count: String| Error::EnumerationCap { count, cap };
    let mut fact: u64 = 1;
    for k in 2..=n as u64 {
        fact = fact
            .checked_mul(k)
            .ok_or_else(|| exceeded(format!("({n}!)^{}", channels - 1)))?;
    }
    let mut count: u64 = 1;
    for _ in 1..channels {
        count = count
            .checked_mul(fact)
            .ok_or_else(|| exceeded(format!("({n}!)^{}", channels - 1)))?;
    }
    if count > cap || usize::try_from(count).is_err() {
        return Err(exceeded(count.to_string()));
    }
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    Ok(TupleSpace {
        perms,
        channels,
        count: count as usize,
    })
}

/// Which sign variant(s) of the third bound to report.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignChoice {
    /// `x = 0`: linear term over sums, square-root term over differences.
    Sum,
    /// `x = 1`: linear term over differences, square-root term over sums.
    /// The published comparison table is computed with this variant.
    #[default]
    Difference,
    /// The larger of the two.
    Best,
}

impl SignChoice {
    fn variants(self) -> &'static [usize] {
        match self {
            SignChoice::Sum => &[0],
            SignChoice::Difference => &[1],
            SignChoice::Best => &[0, 1],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundOptions {
    pub cap: u64,
    pub sign: SignChoice,
}

impl Default for BoundOptions {
    fn default() -> Self {
        Self {
            cap: DEFAULT_TUPLE_CAP,
            sign: SignChoice::default(),
        }
    }
}

/// Every bound evaluated at one fixed permutation tuple.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TupleValues {
    /// `None` when N = 2.
    pub lb1: Option<f64>,
    pub lb2: f64,
    /// Indexed by the sign variant `x`.
    pub lb3: [f64; 2],
    pub ob1: Option<f64>,
    pub ob2: f64,
    pub ob3: [f64; 2],
}

impl TupleValues {
    fn slots(&self) -> [f64; SLOTS] {
        [
            self.lb1.unwrap_or(f64::NEG_INFINITY),
            self.lb2,
            self.lb3[0],
            self.lb3[1],
            self.ob1.unwrap_or(f64::NEG_INFINITY),
            self.ob2,
            self.ob3[0],
            self.ob3[1],
        ]
    }
}

const SLOTS: usize = 8;
const LB1: usize = 0;
const LB2: usize = 1;
const LB3: usize = 2;
const OB1: usize = 4;
const OB2: usize = 5;
const OB3: usize = 6;

fn nonneg_sqrt(v: f64) -> f64 {
    // Rounding can push a squared norm a hair below zero.
    v.max(0.0).sqrt()
}

/// Precomputed state for evaluating the channel bounds of one configuration.
///
/// `K(E) = ½‖[W,E]P‖²` and `E ↦ [W,E]P` is linear, so the images of the Kraus
/// operators are computed once and every pairwise `K(E^t_a ± E^s_b)` is
/// tabulated before the permutation search starts.
#[derive(Debug)]
pub struct ChannelBounds {
    channels: usize,
    kraus: usize,
    /// `images[t][a] = [W, E^t_a] P`, zero-padded to `kraus` entries.
    images: Vec<Vec<ComplexMatrix>>,
    /// `pair_plus[((t*N + s)*n + a)*n + b] = K(E^t_a + E^s_b)`.
    pair_plus: Vec<f64>,
    pair_minus: Vec<f64>,
    channel_values: Vec<f64>,
}

impl ChannelBounds {
    /// Channels with fewer Kraus operators are padded with zero operators up
    /// to the largest count; zeros contribute nothing to any skew sum.
    pub fn new(
        rho: &DensityMatrix,
        channels: &[KrausChannel],
        params: &SkewParams,
    ) -> Result<Self> {
        let cache = WeightedOperatorCache::new(rho, params)?;
        Self::with_cache(&cache, channels)
    }

    pub fn with_cache(cache: &WeightedOperatorCache, channels: &[KrausChannel]) -> Result<Self> {
        let n_ch = channels.len();
        if n_ch < 2 {
            return Err(Error::TooFewOperands {
                bound: "channel bounds",
                requirement: "N >= 2",
                got: n_ch,
            });
        }
        let dim = cache.dim();
        let kraus = channels.iter().map(KrausChannel::len).max().unwrap_or(0);
        let mut images = Vec::with_capacity(n_ch);
        for ch in channels {
            if ch.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: ch.dim(),
                });
            }
            let mut imgs = ch
                .ops()
                .iter()
                .map(|e| cache.image(e))
                .collect::<Result<Vec<_>>>()?;
            imgs.resize(kraus, ComplexMatrix::zeros(dim));
            images.push(imgs);
        }
        let channel_values = images
            .iter()
            .map(|imgs| imgs.iter().map(|m| 0.5 * m.hs_norm_sq()).sum())
            .collect();

        let mut pair_plus = vec![0.0; n_ch * n_ch * kraus * kraus];
        let mut pair_minus = pair_plus.clone();
        for t in 0..n_ch {
            for s in (t + 1)..n_ch {
                for a in 0..kraus {
                    for b in 0..kraus {
                        let idx = ((t * n_ch + s) * kraus + a) * kraus + b;
                        let (ma, mb) = (&images[t][a], &images[s][b]);
                        pair_plus[idx] = 0.5 * ma.hs_norm_sq_combined(mb, 1.0);
                        pair_minus[idx] = 0.5 * ma.hs_norm_sq_combined(mb, -1.0);
                    }
                }
            }
        }
        Ok(Self {
            channels: n_ch,
            kraus,
            images,
            pair_plus,
            pair_minus,
            channel_values,
        })
    }

    pub fn channel_count(&self) -> usize {
        self.channels
    }

    /// Kraus count after padding.
    pub fn kraus_count(&self) -> usize {
        self.kraus
    }

    /// `K(Φ_t)` for each channel.
    pub fn channel_values(&self) -> &[f64] {
        &self.channel_values
    }

    /// `Σ_t K(Φ_t)`.
    pub fn sum(&self) -> f64 {
        self.channel_values.iter().sum()
    }

    pub fn tuple_space(&self, cap: u64) -> Result<TupleSpace> {
        enumerate_tuples(self.kraus, self.channels, cap)
    }

    /// All bounds at one tuple (no maximisation).
    pub fn evaluate(&self, tuple: &PermutationTuple) -> TupleValues {
        assert_eq!(
            tuple.perms.len(),
            self.channels,
            "tuple has wrong channel count"
        );
        let refs: Vec<&[usize]> = tuple.perms.iter().map(Vec::as_slice).collect();
        self.evaluate_perms(&refs)
    }

    fn evaluate_perms(&self, perms: &[&[usize]]) -> TupleValues {
        let (nc, n) = (self.channels, self.kraus);
        let nf = nc as f64;

        let mut sum_plus = 0.0;
        let mut sum_minus = 0.0;
        let mut pair_root_plus = 0.0;
        let mut pair_root_minus = 0.0;
        let mut index_root_plus = vec![0.0; n];
        let mut index_root_minus = vec![0.0; n];
        for t in 0..nc {
            for s in (t + 1)..nc {
                let base = (t * nc + s) * n;
                let mut kp = 0.0;
                let mut km = 0.0;
                for i in 0..n {
                    let idx = (base + perms[t][i]) * n + perms[s][i];
                    let (p, m) = (self.pair_plus[idx], self.pair_minus[idx]);
                    kp += p;
                    km += m;
                    index_root_plus[i] += nonneg_sqrt(p);
                    index_root_minus[i] += nonneg_sqrt(m);
                }
                sum_plus += kp;
                sum_minus += km;
                pair_root_plus += nonneg_sqrt(kp);
                pair_root_minus += nonneg_sqrt(km);
            }
        }
        let index_sq_plus: f64 = index_root_plus.iter().map(|r| r * r).sum();
        let index_sq_minus: f64 = index_root_minus.iter().map(|r| r * r).sum();

        // Σ_i K(Σ_t E^t_{π_t(i)})
        let mut total = 0.0;
        let mut acc = ComplexMatrix::zeros(self.images[0][0].dim());
        for i in 0..n {
            acc.clone_from(&self.images[0][perms[0][i]]);
            for (images, perm) in self.images.iter().zip(perms).skip(1) {
                acc.add_assign_unchecked(&images[perm[i]]);
            }
            total += 0.5 * acc.hs_norm_sq();
        }

        let (lb1, ob1) = if nc > 2 {
            let d = (nf - 1.0) * (nf - 1.0);
            (
                Some((sum_plus - pair_root_plus * pair_root_plus / d) / (nf - 2.0)),
                Some((sum_plus - index_sq_plus / d) / (nf - 2.0)),
            )
        } else {
            (None, None)
        };
        let c2 = 2.0 / (nf * nf * (nf - 1.0));
        let lb2 = total / nf + c2 * pair_root_minus * pair_root_minus;
        let ob2 = total / nf + c2 * index_sq_minus;

        let c3 = 1.0 / (2.0 * (nf - 1.0));
        let d3 = 2.0 / (nf * (nf - 1.0));
        let lb3 = [
            c3 * (sum_plus + d3 * pair_root_minus * pair_root_minus),
            c3 * (sum_minus + d3 * pair_root_plus * pair_root_plus),
        ];
        let ob3 = [
            c3 * (sum_plus + d3 * index_sq_minus),
            c3 * (sum_minus + d3 * index_sq_plus),
        ];
        TupleValues {
            lb1,
            lb2,
            lb3,
            ob1,
            ob2,
            ob3,
        }
    }

    fn evaluate_index(
        &self,
        space: &TupleSpace,
        index: usize,
        digits: &mut [usize],
    ) -> TupleValues {
        space.digits(index, digits);
        let mut perms: Vec<&[usize]> = Vec::with_capacity(self.channels);
        perms.push(&space.perms[0]);
        perms.extend(digits.iter().map(|&d| space.perms[d].as_slice()));
        self.evaluate_perms(&perms)
    }

    /// Exact maximisation of every bound over the tuple space.
    ///
    /// The maxima come from an order-independent parallel reduction; the
    /// argmax is then the first tuple in lexicographic order within
    /// `1e-12` of each maximum, so results do not depend on thread count.
    pub fn maximize(&self, cap: u64) -> Result<Maxima> {
        let space = self.tuple_space(cap)?;
        let k = self.channels - 1;
        let best = (0..space.len())
            .into_par_iter()
            .map_init(
                || vec![0; k],
                |digits, idx| self.evaluate_index(&space, idx, digits).slots(),
            )
            .reduce(
                || [f64::NEG_INFINITY; SLOTS],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x = x.max(y);
                    }
                    a
                },
            );

        let mut argmax = [usize::MAX; SLOTS];
        let mut pending = (0..SLOTS).filter(|&j| best[j].is_finite()).count();
        let mut digits = vec![0; k];
        for idx in 0..space.len() {
            if pending == 0 {
                break;
            }
            let vals = self.evaluate_index(&space, idx, &mut digits).slots();
            for j in 0..SLOTS {
                if argmax[j] == usize::MAX && best[j].is_finite() && vals[j] >= best[j] - ARGMAX_TIE
                {
                    argmax[j] = idx;
                    pending -= 1;
                }
            }
        }
        Ok(Maxima {
            space,
            best,
            argmax,
        })
    }

    pub fn report(&self, opts: &BoundOptions) -> Result<BoundReport> {
        let maxima = self.maximize(opts.cap)?;
        let mut argmax = BTreeMap::new();

        let mut single = |name: &str, slot: usize| -> Option<f64> {
            maxima.value(slot).inspect(|_| {
                argmax.insert(
                    name.to_string(),
                    Argmax {
                        tuple: maxima.tuple(slot),
                        x: None,
                    },
                );
            })
        };
        let lb1 = single("lb1", LB1);
        let lb2 = single("lb2", LB2).expect("lb2 defined for N >= 2");
        let ob1 = single("ob1", OB1);
        let ob2 = single("ob2", OB2).expect("ob2 defined for N >= 2");

        let mut signed = |name: &str, base: usize| -> f64 {
            let (value, x) = maxima.best_sign(base, opts.sign);
            argmax.insert(
                name.to_string(),
                Argmax {
                    tuple: maxima.tuple(base + x),
                    x: Some(x as u8),
                },
            );
            value
        };
        let lb3 = signed("lb3", LB3);
        let ob3 = signed("ob3", OB3);

        Ok(BoundReport {
            sum: self.sum(),
            channel_values: self.channel_values.clone(),
            lb1,
            lb2,
            lb3,
            ob1,
            ob2,
            ob3,
            sign: opts.sign,
            tuples_searched: maxima.space.len() as u64,
            argmax,
        })
    }
}

/// Per-slot maxima and lexicographically-first argmax indices.
#[derive(Debug)]
pub struct Maxima {
    space: TupleSpace,
    best: [f64; SLOTS],
    argmax: [usize; SLOTS],
}

impl Maxima {
    fn value(&self, slot: usize) -> Option<f64> {
        self.best[slot].is_finite().then_some(self.best[slot])
    }

    fn tuple(&self, slot: usize) -> PermutationTuple {
        self.space.get(self.argmax[slot])
    }

    /// Larger variant wins; on ties the earlier tuple, then the smaller `x`.
    fn best_sign(&self, base: usize, choice: SignChoice) -> (f64, usize) {
        let mut pick: Option<(f64, usize)> = None;
        for &x in choice.variants() {
            let v = self.best[base + x];
            pick = match pick {
                None => Some((v, x)),
                Some((pv, px)) => {
                    let better = v > pv + ARGMAX_TIE
                        || ((v - pv).abs() <= ARGMAX_TIE
                            && self.argmax[base + x] < self.argmax[base + px]);
                    Some(if better { (v, x) } else { (pv, px) })
                }
            };
        }
        pick.expect("at least one sign variant")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Argmax {
    pub tuple: PermutationTuple,
    /// Sign variant for the third bound of each family.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<u8>,
}

/// All six channel bounds and the exact sum for one configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub sum: f64,
    pub channel_values: Vec<f64>,
    /// `None` when N = 2 (the first bound needs N > 2).
    pub lb1: Option<f64>,
    pub lb2: f64,
    pub lb3: f64,
    pub ob1: Option<f64>,
    pub ob2: f64,
    pub ob3: f64,
    pub sign: SignChoice,
    pub tuples_searched: u64,
    pub argmax: BTreeMap<String, Argmax>,
}

impl BoundReport {
    /// `(name, value)` for every defined bound, in `ob1..ob3, lb1..lb3` order.
    pub fn bounds(&self) -> Vec<(&'static str, f64)> {
        let mut out = Vec::with_capacity(6);
        if let Some(v) = self.ob1 {
            out.push(("ob1", v));
        }
        out.push(("ob2", self.ob2));
        out.push(("ob3", self.ob3));
        if let Some(v) = self.lb1 {
            out.push(("lb1", v));
        }
        out.push(("lb2", self.lb2));
        out.push(("lb3", self.lb3));
        out
    }

    /// Descriptions of every violated soundness or dominance invariant.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, v) in self.bounds() {
            if v.is_nan() || v > self.sum + SOUNDNESS_TOL {
                out.push(format!("{name} = {v} exceeds sum = {}", self.sum));
            }
        }
        if self.lb2 < self.ob2 - SOUNDNESS_TOL {
            out.push(format!("lb2 = {} below ob2 = {}", self.lb2, self.ob2));
        }
        if self.lb3 < self.ob3 - SOUNDNESS_TOL {
            out.push(format!("lb3 = {} below ob3 = {}", self.lb3, self.ob3));
        }
        out
    }
}

pub fn channel_bound_report(
    rho: &DensityMatrix,
    channels: &[KrausChannel],
    params: &SkewParams,
    opts: &BoundOptions,
) -> Result<BoundReport> {
    ChannelBounds::new(rho, channels, params)?.report(opts)
}

fn require_more_than_two(bound: &'static str, n: usize) -> Result<()> {
    if n > 2 {
        Ok(())
    } else {
        Err(Error::TooFewOperands {
            bound,
            requirement: "N > 2",
            got: n,
        })
    }
}

/// First channel bound with its argmax tuple. Needs N > 2.
pub fn lb1(
    rho: &DensityMatrix,
    channels: &[KrausChannel],
    params: &SkewParams,
    cap: u64,
) -> Result<(f64, PermutationTuple)> {
    require_more_than_two("LB1", channels.len())?;
    let m = ChannelBounds::new(rho, channels, params)?.maximize(cap)?;
    Ok((m.best[LB1], m.tuple(LB1)))
}

pub fn lb2(
    rho: &DensityMatrix,
    channels: &[KrausChannel],
    params: &SkewParams,
    cap: u64,
) -> Result<(f64, PermutationTuple)> {
    let m = ChannelBounds::new(rho, channels, params)?.maximize(cap)?;
    Ok((m.best[LB2], m.tuple(LB2)))
}

pub fn lb3(
    rho: &DensityMatrix,
    channels: &[KrausChannel],
    params: &SkewParams,
    opts: &BoundOptions,
) -> Result<(f64, PermutationTuple, u8)> {
    let m = ChannelBounds::new(rho, channels, params)?.maximize(opts.cap)?;
    let (v, x) = m.best_sign(LB3, opts.sign);
    Ok((v, m.tuple(LB3 + x), x as u8))
}

/// Per-index counterpart of [`lb1`]. Needs N > 2.
pub fn ob1(
    rho: &DensityMatrix,
    channels: &[KrausChannel],
    params: &SkewParams,
    cap: u64,
) -> Result<(f64, PermutationTuple)> {
    require_more_than_two("OB1", channels.len())?;
    let m = ChannelBounds::new(rho, channels, params)?.maximize(cap)?;
    Ok((m.best[OB1], m.tuple(OB1)))
}

pub fn ob2(
    rho: &DensityMatrix,
    channels: &[KrausChannel],
    params: &SkewParams,
    cap: u64,
) -> Result<(f64, PermutationTuple)> {
    let m = ChannelBounds::new(rho, channels, params)?.maximize(cap)?;
    Ok((m.best[OB2], m.tuple(OB2)))
}

pub fn ob3(
    rho: &DensityMatrix,
    channels: &[KrausChannel],
    params: &SkewParams,
    opts: &BoundOptions,
) -> Result<(f64, PermutationTuple, u8)> {
    let m = ChannelBounds::new(rho, channels, params)?.maximize(opts.cap)?;
    let (v, x) = m.best_sign(OB3, opts.sign);
    Ok((v, m.tuple(OB3 + x), x as u8))
}

/// Bounds on `Σ_t K(U_t)` for unitary channels (a single Kraus operator each,
/// so there is nothing to permute). The third bound takes the larger sign
/// variant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitaryBoundReport {
    pub sum: f64,
    pub values: Vec<f64>,
    /// `None` when N = 2.
    pub lb1: Option<f64>,
    pub lb2: f64,
    pub lb3: f64,
    /// Both sign variants of the third bound, indexed by `x`.
    pub lb3_variants: [f64; 2],
    pub argmax_x: u8,
}

impl UnitaryBoundReport {
    pub fn max_bound(&self) -> f64 {
        self.lb1
            .unwrap_or(f64::NEG_INFINITY)
            .max(self.lb2)
            .max(self.lb3)
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let named = [
            ("lb1", self.lb1),
            ("lb2", Some(self.lb2)),
            ("lb3", Some(self.lb3)),
        ];
        for (name, v) in named {
            if let Some(v) = v {
                if v.is_nan() || v > self.sum + SOUNDNESS_TOL {
                    out.push(format!("{name} = {v} exceeds sum = {}", self.sum));
                }
            }
        }
        out
    }
}

pub fn unitary_bound_report(
    rho: &DensityMatrix,
    unitaries: &[UnitaryOp],
    params: &SkewParams,
) -> Result<UnitaryBoundReport> {
    let cache = WeightedOperatorCache::new(rho, params)?;
    unitary_bound_report_with_cache(&cache, unitaries)
}

pub fn unitary_bound_report_with_cache(
    cache: &WeightedOperatorCache,
    unitaries: &[UnitaryOp],
) -> Result<UnitaryBoundReport> {
    let n = unitaries.len();
    if n < 2 {
        return Err(Error::TooFewOperands {
            bound: "unitary bounds",
            requirement: "N >= 2",
            got: n,
        });
    }
    let images = unitaries
        .iter()
        .map(|u| cache.image(u.matrix()))
        .collect::<Result<Vec<_>>>()?;
    let values: Vec<f64> = images.iter().map(|m| 0.5 * m.hs_norm_sq()).collect();

    let mut sum_plus = 0.0;
    let mut sum_minus = 0.0;
    let mut root_plus = 0.0;
    let mut root_minus = 0.0;
    for t in 0..n {
        for s in (t + 1)..n {
            let kp = 0.5 * images[t].hs_norm_sq_combined(&images[s], 1.0);
            let km = 0.5 * images[t].hs_norm_sq_combined(&images[s], -1.0);
            sum_plus += kp;
            sum_minus += km;
            root_plus += nonneg_sqrt(kp);
            root_minus += nonneg_sqrt(km);
        }
    }
    let total = 0.5
        * ComplexMatrix::sum(images.iter())
            .expect("N >= 2")
            .hs_norm_sq();

    let nf = n as f64;
    let lb1 = (n > 2)
        .then(|| (sum_plus - root_plus * root_plus / ((nf - 1.0) * (nf - 1.0))) / (nf - 2.0));
    let lb2 = total / nf + 2.0 / (nf * nf * (nf - 1.0)) * root_minus * root_minus;
    let c3 = 1.0 / (2.0 * (nf - 1.0));
    let d3 = 2.0 / (nf * (nf - 1.0));
    let lb3_variants = [
        c3 * (sum_plus + d3 * root_minus * root_minus),
        c3 * (sum_minus + d3 * root_plus * root_plus),
    ];
    let argmax_x = if lb3_variants[1] > lb3_variants[0] {
        1
    } else {
        0
    };
    Ok(UnitaryBoundReport {
        sum: values.iter().sum(),
        values,
        lb1,
        lb2,
        lb3: lb3_variants[argmax_x as usize],
        lb3_variants,
        argmax_x,
    })
}

pub fn unitary_lb1(
    rho: &DensityMatrix,
    unitaries: &[UnitaryOp],
    params: &SkewParams,
) -> Result<f64> {
    require_more_than_two("Lb1", unitaries.len())?;
    Ok(unitary_bound_report(rho, unitaries, params)?
        .lb1
        .expect("N > 2 checked"))
}

pub fn unitary_lb2(
    rho: &DensityMatrix,
    unitaries: &[UnitaryOp],
    params: &SkewParams,
) -> Result<f64> {
    Ok(unitary_bound_report(rho, unitaries, params)?.lb2)
}

pub fn unitary_lb3(
    rho: &DensityMatrix,
    unitaries: &[UnitaryOp],
    params: &SkewParams,
) -> Result<(f64, u8)> {
    let r = unitary_bound_report(rho, unitaries, params)?;
    Ok((r.lb3, r.argmax_x))
}

/// Outcome of the three vector-norm inequalities behind the channel bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NormInequalities {
    /// `Σ‖u_t‖² ≥ (1/(N-2))[Σ‖u_t+u_s‖² - (Σ‖u_t+u_s‖)²/(N-1)²]`; `None` for N < 3.
    pub first: Option<bool>,
    /// `Σ‖u_t‖² ≥ ‖Σu_t‖²/N + 2(Σ‖u_t-u_s‖)²/(N²(N-1))`.
    pub second: bool,
    /// The ± / ∓ inequality, required for both sign choices.
    pub third: bool,
}

impl NormInequalities {
    pub fn all_hold(&self) -> bool {
        self.first.unwrap_or(true) && self.second && self.third
    }
}

/// Checks the three inequalities on `vectors` (equal lengths assumed) with
/// slack `1e-9·(1 + Σ‖u_t‖²)`.
pub fn norm_inequality_check(vectors: &[Vec<num_complex::Complex64>]) -> NormInequalities {
    let n = vectors.len();
    let nf = n as f64;
    let sq = |v: &[num_complex::Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let combo = |a: &[num_complex::Complex64], b: &[num_complex::Complex64], sign: f64| {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x + y * sign).norm_sqr())
            .sum::<f64>()
    };
    let lhs: f64 = vectors.iter().map(|v| sq(v)).sum();
    let slack = 1e-9 * (1.0 + lhs);

    let mut sum_plus = 0.0;
    let mut sum_minus = 0.0;
    let mut root_plus = 0.0;
    let mut root_minus = 0.0;
    for t in 0..n {
        for s in (t + 1)..n {
            let p = combo(&vectors[t], &vectors[s], 1.0);
            let m = combo(&vectors[t], &vectors[s], -1.0);
            sum_plus += p;
            sum_minus += m;
            root_plus += p.sqrt();
            root_minus += m.sqrt();
        }
    }
    let len = vectors.iter().map(Vec::len).min().unwrap_or(0);
    let total: f64 = (0..len)
        .map(|k| {
            vectors
                .iter()
                .map(|v| v[k])
                .sum::<num_complex::Complex64>()
                .norm_sqr()
        })
        .sum();

    let first = (n >= 3).then(|| {
        let rhs = (sum_plus - root_plus * root_plus / ((nf - 1.0) * (nf - 1.0))) / (nf - 2.0);
        lhs >= rhs - slack
    });
    let second =
        n < 2 || lhs >= total / nf + 2.0 / (nf * nf * (nf - 1.0)) * root_minus * root_minus - slack;
    let third = n < 2 || {
        let c = 1.0 / (2.0 * (nf - 1.0));
        let d = 2.0 / (nf * (nf - 1.0));
        let upper = c * (d * root_plus * root_plus + sum_minus);
        let lower = c * (d * root_minus * root_minus + sum_plus);
        lhs >= upper - slack && lhs >= lower - slack
    };
    NormInequalities {
        first,
        second,
        third,
    }
}
