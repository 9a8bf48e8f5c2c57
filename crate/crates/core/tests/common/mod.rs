//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use cpdisc_core::{Interval, PatternSpec, RotationSystem, Window, XiReal, XiSpec};

pub fn xi_pool() -> Vec<XiSpec> {
    let half = BigRational::new(1.into(), 2.into());
    vec![
        XiSpec::sqrt(2).unwrap(),
        XiSpec::golden(),
        XiSpec::sqrt(3).unwrap(),
        XiSpec::sqrt(5).unwrap(),
        XiSpec::new(half.clone(), half, 13).unwrap(),
    ]
}

pub fn random_point<R: Rng>(rng: &mut R, xi: &XiSpec) -> XiReal {
    let den = rng.gen_range(1..=16);
    let r = XiReal::ratio(rng.gen_range(0..den), den);
    let k = if rng.gen_bool(0.5) { 0 } else { rng.gen_range(-4..=4) };
    xi.frac(&(&r + &XiReal::ints(0, k)))
}

/// `intervals` disjoint intervals with random exact endpoints.
pub fn random_window<R: Rng>(rng: &mut R, xi: &XiSpec, intervals: usize) -> Window {
    loop {
        let mut ends: Vec<XiReal> = (0..2 * intervals).map(|_| random_point(rng, xi)).collect();
        ends.sort_by(|a, b| xi.cmp(a, b));
        ends.dedup();
        if ends.len() < 2 * intervals {
            continue;
        }
        let ivs = ends.chunks(2).map(|p| Interval::new(p[0].clone(), p[1].clone())).collect();
        if let Ok(w) = Window::new(xi, ivs) {
            return w;
        }
    }
}

pub fn random_system<R: Rng>(rng: &mut R, max_intervals: usize) -> RotationSystem {
    let xi = xi_pool().choose(rng).unwrap().clone();
    let l = rng.gen_range(1..=max_intervals);
    let w = random_window(rng, &xi, l);
    let base = random_point(rng, &xi);
    RotationSystem::new(xi, base, w)
}

/// Pattern occurrences by sliding a window over a set of hits.
pub fn sliding_matches(hits: &BTreeSet<i64>, p: &PatternSpec, k_min: i64, k_max: i64) -> Vec<i64> {
    (k_min..=k_max)
        .filter(|k| p.required().iter().all(|r| hits.contains(&(k + r))) && p.forbidden().iter().all(|f| !hits.contains(&(k + f))))
        .collect()
}

/// All permutations `σ` with `b_σ(ℓ) − a_ℓ ∈ Z + Zξ` for every `ℓ`.
pub fn exhaustive_oren(w: &Window) -> Vec<Vec<usize>> {
    let ivs = w.intervals();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..ivs.len()).collect();
    permutations(&mut perm, 0, &mut |s| {
        if s.iter().enumerate().all(|(l, &j)| (&ivs[j].hi - &ivs[l].lo).in_z_plus_zxi().is_some()) {
            out.push(s.to_vec());
        }
    });
    out.sort();
    out
}

pub fn permutations(v: &mut [usize], i: usize, f: &mut impl FnMut(&[usize])) {
    if i == v.len() {
        f(v);
        return;
    }
    for j in i..v.len() {
        v.swap(i, j);
        permutations(v, i + 1, f);
        v.swap(i, j);
    }
}

/// `D(N)` from the definition: one exact fractional part per `k`.
pub fn direct_discrepancy(sys: &RotationSystem, n: i64) -> XiReal {
    let xi = sys.xi();
    let hits = (0..=n).filter(|&k| sys.window().contains(xi, &xi.frac(&(sys.basepoint() + &XiReal::ints(0, k))))).count();
    XiReal::from_integer(hits as i64) - sys.window().length().mul_int(n)
}

/// Smallest achievable bottleneck cost over every bijection between
/// integer points `ys` (scaled) and lattice points `ls`.
pub fn brute_force_bottleneck(ys: &[i128], ls: &[i128]) -> i128 {
    let mut best = i128::MAX;
    let mut perm: Vec<usize> = (0..ys.len()).collect();
    permutations(&mut perm, 0, &mut |s| {
        let c = s.iter().enumerate().map(|(i, &j)| (ys[i] - ls[j]).abs()).max().unwrap_or(0);
        best = best.min(c);
    });
    best
}
