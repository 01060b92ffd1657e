//! Brute-force and golden-value checks against the optimised bound code.

use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use skewbound::bounds::{unitary_bound_report, BoundOptions, ChannelBounds, SignChoice};
use skewbound::quantum::{self, UNITARY_EXAMPLE_RADIUS};
use skewbound::skewinfo::skew_info_op;
use skewbound::{sampling, ComplexMatrix, DensityMatrix, KrausChannel, SkewParams};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Maxima of [lb1, lb2, lb3(x=0), lb3(x=1), ob1, ob2, ob3(x=0), ob3(x=1)],
/// each Kraus combination evaluated from scratch.
fn brute_force(rho: &DensityMatrix, chans: &[KrausChannel], p: &SkewParams) -> [f64; 8] {
    let nc = chans.len();
    let n = chans[0].len();
    let nf = nc as f64;
    let k = |e: &ComplexMatrix| skew_info_op(rho, e, p).unwrap();
    let perms = permutations(n);
    let mut best = [f64::NEG_INFINITY; 8];
    let mut tuple = vec![0usize; nc - 1];
    loop {
        let mut chosen: Vec<&Vec<usize>> = vec![&perms[0]];
        chosen.extend(tuple.iter().map(|&i| &perms[i]));
        let op = |t: usize, i: usize| &chans[t].ops()[chosen[t][i]];

        let total: f64 = (0..n)
            .map(|i| k(&ComplexMatrix::sum((0..nc).map(|t| op(t, i))).unwrap()))
            .sum();
        let (mut sp, mut sm, mut rp, mut rm) = (0.0, 0.0, 0.0, 0.0);
        let mut ip = vec![0.0; n];
        let mut im = vec![0.0; n];
        for t in 0..nc {
            for s in t + 1..nc {
                let mut kp = 0.0;
                let mut km = 0.0;
                for i in 0..n {
                    let a = k(&(op(t, i) + op(s, i)));
                    let b = k(&(op(t, i) - op(s, i)));
                    kp += a;
                    km += b;
                    ip[i] += a.sqrt();
                    im[i] += b.sqrt();
                }
                sp += kp;
                sm += km;
                rp += kp.sqrt();
                rm += km.sqrt();
            }
        }
        let iqp: f64 = ip.iter().map(|v| v * v).sum();
        let iqm: f64 = im.iter().map(|v| v * v).sum();
        let d1 = (nf - 1.0).powi(2);
        let c2 = 2.0 / (nf * nf * (nf - 1.0));
        let c3 = 1.0 / (2.0 * (nf - 1.0));
        let d3 = 2.0 / (nf * (nf - 1.0));
        let vals = [
            (sp - rp * rp / d1) / (nf - 2.0),
            total / nf + c2 * rm * rm,
            c3 * (sp + d3 * rm * rm),
            c3 * (sm + d3 * rp * rp),
            (sp - iqp / d1) / (nf - 2.0),
            total / nf + c2 * iqm,
            c3 * (sp + d3 * iqm),
            c3 * (sm + d3 * iqp),
        ];
        for (b, v) in best.iter_mut().zip(vals) {
            *b = b.max(v);
        }

        let mut pos = nc - 1;
        loop {
            if pos == 0 {
                return best;
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < perms.len() {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

fn check_against_brute_force(rho: &DensityMatrix, chans: &[KrausChannel], p: &SkewParams) {
    let expect = brute_force(rho, chans, p);
    let cb = ChannelBounds::new(rho, chans, p).unwrap();
    for (sign, x) in [(SignChoice::Sum, 0), (SignChoice::Difference, 1)] {
        let r = cb
            .report(&BoundOptions {
                sign,
                ..Default::default()
            })
            .unwrap();
        assert_abs_diff_eq!(r.lb1.unwrap(), expect[0], epsilon = 1e-10);
        assert_abs_diff_eq!(r.lb2, expect[1], epsilon = 1e-10);
        assert_abs_diff_eq!(r.lb3, expect[2 + x], epsilon = 1e-10);
        assert_abs_diff_eq!(r.ob1.unwrap(), expect[4], epsilon = 1e-10);
        assert_abs_diff_eq!(r.ob2, expect[5], epsilon = 1e-10);
        assert_abs_diff_eq!(r.ob3, expect[6 + x], epsilon = 1e-10);
    }
}

#[test]
fn example_channels_match_brute_force() {
    let p = SkewParams::new(0.25, 0.75, 0.25).unwrap();
    for (q, theta) in [(0.4, PI / 2.0), (0.4, PI / 5.0), (0.2, 1.0), (0.9, 2.5)] {
        let rho = quantum::equatorial_state(quantum::CHANNEL_EXAMPLE_RADIUS, theta).unwrap();
        check_against_brute_force(&rho, &quantum::example_channels(q).unwrap(), &p);
    }
}

#[test]
fn random_channels_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..12 {
        let dim = 2 + i % 2;
        let n = 2 + (i / 2) % 2;
        let nc = 3 + i % 3 / 2;
        let rho = sampling::density_matrix(&mut rng, dim);
        let p = sampling::skew_params(&mut rng);
        let chans: Vec<_> = (0..nc)
            .map(|_| sampling::kraus_channel(&mut rng, dim, n))
            .collect();
        check_against_brute_force(&rho, &chans, &p);
    }
}

#[test]
fn unitary_goldens_at_theta_zero() {
    let rho = quantum::equatorial_state(UNITARY_EXAMPLE_RADIUS, 0.0).unwrap();
    let p = SkewParams::new(0.25, 0.75, 0.25).unwrap();

    let us = quantum::example_unitaries(false);
    assert_abs_diff_eq!(
        skew_info_op(&rho, us[0].matrix(), &p).unwrap(),
        0.0,
        epsilon = 1e-14
    );
    let r = unitary_bound_report(&rho, &us, &p).unwrap();
    assert_abs_diff_eq!(r.sum, 0.05160514394944658, epsilon = 1e-12);
    assert_abs_diff_eq!(r.lb1.unwrap(), 0.02801608270604658, epsilon = 1e-12);
    assert_abs_diff_eq!(r.lb2, 0.05062136140219174, epsilon = 1e-12);
    assert_abs_diff_eq!(r.lb3_variants[0], 0.050867307039005445, epsilon = 1e-12);
    assert_abs_diff_eq!(r.lb3_variants[1], 0.05086730703900545, epsilon = 1e-12);

    let r = unitary_bound_report(&rho, &quantum::example_unitaries(true), &p).unwrap();
    assert_abs_diff_eq!(r.sum, 0.20199355433513966, epsilon = 1e-12);
    assert_abs_diff_eq!(r.lb1.unwrap(), 0.13885489526606942, epsilon = 1e-12);
    assert_abs_diff_eq!(r.lb2, 0.1851677240691398, epsilon = 1e-12);
    assert_abs_diff_eq!(r.lb3, 0.18937418163563977, epsilon = 1e-12);
}

#[test]
fn unitary_goldens_at_third_pi() {
    let rho = quantum::equatorial_state(UNITARY_EXAMPLE_RADIUS, PI / 3.0).unwrap();
    let p = SkewParams::new(0.25, 0.75, 0.25).unwrap();
    let r = unitary_bound_report(&rho, &quantum::example_unitaries(false), &p).unwrap();
    assert_abs_diff_eq!(r.sum, 0.0516051439494466, epsilon = 1e-12);
    assert_abs_diff_eq!(r.lb1.unwrap(), 0.030040734864730308, epsilon = 1e-12);
    assert_abs_diff_eq!(r.lb2, 0.05130319149781468, epsilon = 1e-12);
    assert_abs_diff_eq!(r.lb3_variants[0], 0.051378679610722656, epsilon = 1e-12);
    assert_abs_diff_eq!(r.lb3_variants[1], 0.04833028275168701, epsilon = 1e-12);
    assert_eq!(r.argmax_x, 0);
}

#[test]
fn per_channel_values_at_table_point() {
    let rho = quantum::equatorial_state(quantum::CHANNEL_EXAMPLE_RADIUS, PI / 2.0).unwrap();
    let p = SkewParams::new(0.25, 0.75, 0.25).unwrap();
    let cb = ChannelBounds::new(&rho, &quantum::example_channels(0.4).unwrap(), &p).unwrap();
    let v = cb.channel_values();
    assert_abs_diff_eq!(v[0], 0.0353392123464712, epsilon = 1e-12);
    assert_abs_diff_eq!(v[1], 0.0353392123464712, epsilon = 1e-12);
    assert_abs_diff_eq!(v[2], 0.18813854557099596, epsilon = 1e-12);
}

#[test]
fn half_half_bounds_are_gamma_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let chans = quantum::example_channels(0.3).unwrap();
    for _ in 0..10 {
        let rho = sampling::bloch_state(&mut rng, 0.95);
        let reference = ChannelBounds::new(&rho, &chans, &SkewParams::new(0.5, 0.5, 0.5).unwrap())
            .unwrap()
            .report(&Default::default())
            .unwrap();
        for gamma in [0.0, 0.2, 0.9, 1.0] {
            let r = ChannelBounds::new(&rho, &chans, &SkewParams::new(0.5, 0.5, gamma).unwrap())
                .unwrap()
                .report(&Default::default())
                .unwrap();
            assert_abs_diff_eq!(r.sum, reference.sum, epsilon = 1e-12);
            for ((_, a), (_, b)) in r.bounds().iter().zip(reference.bounds()) {
                assert_abs_diff_eq!(*a, b, epsilon = 1e-12);
            }
        }
    }
}
