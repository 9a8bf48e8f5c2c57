//! Discrepancy of point patterns and cochains, and growth profiles of
//! the local discrepancy `D(N)`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::acceptance::{indicator_hit_count, pattern_density, PatternSpec};
use crate::error::{Error, Result};
use crate::exactnum::{XiReal, XiSpec};
use crate::kernel::{with_kint, KInt, Surd};
use crate::patterns::{PointPattern, RotationSystem, ScanPlan};

/// `#([lo, hi) ∩ Y) − δ·(hi − lo)`, before taking the absolute value.
pub fn signed_disc(xi: &XiSpec, points: &PointPattern, lo: &XiReal, hi: &XiReal, delta: &XiReal) -> Result<XiReal> {
    if xi.cmp(lo, hi) != Ordering::Less {
        return Err(Error::InvalidArgument(format!("empty interval [{lo}, {hi})")));
    }
    let count = points.count_in(ceil_i64(xi, lo)?, ceil_i64(xi, hi)?);
    Ok(XiReal::from_integer(BigInt::from(count)) - xi.mul(delta, &(hi - lo)))
}

/// `|#([lo, hi) ∩ Y) − δ·(hi − lo)|`.
pub fn disc(xi: &XiSpec, points: &PointPattern, lo: &XiReal, hi: &XiReal, delta: &XiReal) -> Result<XiReal> {
    Ok(xi.abs(&signed_disc(xi, points, lo, hi, delta)?))
}

fn ceil_i64(xi: &XiSpec, v: &XiReal) -> Result<i64> {
    let c = -xi.floor(&-v);
    num_traits::ToPrimitive::to_i64(&c).ok_or_else(|| Error::InvalidArgument(format!("{v} out of range")))
}

/// Result of [`estimate_density`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DensityEstimate {
    /// Known from the generating window (unique ergodicity).
    Exact(XiReal),
    /// `(count − 1) / span`, with the absolute change of the estimate
    /// between the first half of the points and all of them.
    Empirical { value: BigRational, sensitivity: BigRational },
}

pub const MIN_DENSITY_POINTS: usize = 100;

pub fn estimate_density(points: &PointPattern) -> Result<DensityEstimate> {
    if points.len() < MIN_DENSITY_POINTS {
        return Err(Error::TooFewPoints {
            need: MIN_DENSITY_POINTS,
            got: points.len(),
        });
    }
    if let Some(d) = points.known_density() {
        return Ok(DensityEstimate::Exact(d.clone()));
    }
    let gaps_density = |pts: &[i64]| {
        let span = pts[pts.len() - 1] - pts[0];
        BigRational::new(BigInt::from(pts.len() - 1), BigInt::from(span))
    };
    let pts = points.points();
    let value = gaps_density(pts);
    let half = gaps_density(&pts[..pts.len() / 2]);
    let sensitivity = (&value - half).abs();
    Ok(DensityEstimate::Empirical { value, sensitivity })
}

/// Which `N` values a profile reports individually.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Schedule {
    /// Upper bound on the number of trace samples; 0 disables the trace.
    pub trace_points: usize,
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule { trace_points: 4096 }
    }
}

impl Schedule {
    pub fn checkpoints_only() -> Self {
        Schedule { trace_points: 0 }
    }

    /// Logarithmically spaced sample positions in `[0, n_max]`: an even
    /// grid inside each decade, `n_max` always included.
    pub fn trace(&self, n_max: u64) -> Vec<u64> {
        if self.trace_points == 0 {
            return Vec::new();
        }
        let decades = (decimal_digits(n_max) + 1) as u64;
        let per_decade = (self.trace_points as u64 / decades).max(1);
        let mut out = BTreeSet::new();
        out.extend((0..per_decade.min(10)).filter(|&n| n <= n_max));
        let mut lo = 1u64;
        while lo <= n_max {
            let width = lo.saturating_mul(9);
            let step = (width / per_decade).max(1);
            let mut n = lo;
            while n < lo.saturating_add(width) && n <= n_max {
                out.insert(n);
                n += step;
            }
            lo = lo.saturating_mul(10);
            if lo == u64::MAX {
                break;
            }
        }
        out.insert(n_max);
        let mut v: Vec<u64> = out.into_iter().collect();
        if v.len() > self.trace_points {
            // thin evenly, keeping n_max
            let keep = self.trace_points;
            let total = v.len();
            v = (0..keep).map(|i| v[i * (total - 1) / (keep - 1).max(1)]).collect();
            v.dedup();
        }
        v
    }
}

fn decimal_digits(n: u64) -> u32 {
    n.checked_ilog10().unwrap_or(0) + 1
}

/// Powers of ten from 100 up to `n_max`, plus `n_max` itself.
fn checkpoints(n_max: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 100u64;
    while p <= n_max {
        out.push(p);
        match p.checked_mul(10) {
            Some(n) => p = n,
            None => break,
        }
    }
    if out.last() != Some(&n_max) {
        out.push(n_max);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileSample {
    pub n: u64,
    pub d: XiReal,
    pub abs_d: XiReal,
    /// `max |D(N')|` over `N' ≤ n`.
    pub running_max: XiReal,
}

/// Exact record of `D(N)` over `0 ≤ N ≤ n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscrepancyProfile {
    pub n_max: u64,
    pub samples: Vec<ProfileSample>,
    /// `(bound, max |D(N)| over N ≤ bound)` for every power of ten
    /// `≥ 100` up to `n_max`, then `n_max` when it is not a power of ten.
    pub decade_maxima: Vec<(u64, XiReal)>,
    pub sup_seen: XiReal,
}

impl DiscrepancyProfile {
    /// Maximum of `|D|` over `N ≤ 10^j`, if recorded.
    pub fn decade_max(&self, j: u32) -> Option<&XiReal> {
        let bound = 10u64.checked_pow(j)?;
        self.decade_maxima.iter().find(|(b, _)| *b == bound).map(|(_, m)| m)
    }

    /// Maxima at exact powers of ten only, as `(j, max)`.
    pub fn power_maxima(&self) -> Vec<(u32, &XiReal)> {
        self.decade_maxima
            .iter()
            .filter_map(|(b, m)| {
                let j = b.checked_ilog10()?;
                (10u64.pow(j) == *b).then_some((j, m))
            })
            .collect()
    }

    /// CSV with columns `N,D_signed,absD,decade_max`; `D_signed` in exact
    /// `a+b*xi` form, the other two as 30-digit truncated decimals.
    pub fn to_csv(&self, xi: &XiSpec, header: &[String]) -> String {
        let mut out = String::new();
        for h in header {
            let _ = writeln!(out, "# {h}");
        }
        let _ = writeln!(out, "# n_max = {}", self.n_max);
        for (b, m) in &self.decade_maxima {
            let _ = writeln!(out, "# decade_max N<={b}: {m} = {}", xi.to_decimal(m, 30));
        }
        out.push_str("N,D_signed,absD,decade_max\n");
        for s in &self.samples {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                s.n,
                s.d,
                xi.to_decimal(&s.abs_d, 30),
                xi.to_decimal(&s.running_max, 30)
            );
        }
        out
    }
}

/// Partial sums of one contiguous block `[start, start + count)` of `N`.
///
/// With `P(N) = #hits in [start, N] − (N − start + 1)·len`, the block
/// stores its last value and its extremes, so that for a known
/// `D(start − 1)` the block's `max |D|` is
/// `max(|D(start−1) + max P|, |D(start−1) + min P|)`.
#[derive(Clone, Debug)]
struct Block {
    end_p: XiReal,
    max_p: XiReal,
    min_p: XiReal,
}

/// Scans consecutive blocks with one walker. `counts` are block lengths.
fn scan_blocks<T: KInt>(plan: &ScanPlan, len: &XiReal, counts: &[u64]) -> Option<Vec<Block>> {
    let mut kernel = plan.kernel::<T>()?;
    let frame = &kernel.frame.clone();
    let len_s: Surd<T> = plan.frame.embed(len)?;
    let up = frame.int(1)?.sub(&len_s)?;
    let mut out = Vec::with_capacity(counts.len());
    for &count in counts {
        let mut p = Surd::<T>::zero();
        let mut max_p: Option<Surd<T>> = None;
        let mut min_p: Option<Surd<T>> = None;
        for _ in 0..count {
            let hit = kernel.next()?.is_some();
            p = if hit { p.add(&up)? } else { p.sub(&len_s)? };
            match (&max_p, &min_p) {
                (Some(mx), Some(mn)) => {
                    // P rises only on hits and falls only on misses
                    if hit {
                        if frame.cmp(&p, mx)? == Ordering::Greater {
                            max_p = Some(p.clone());
                        }
                    } else if frame.cmp(&p, mn)? == Ordering::Less {
                        min_p = Some(p.clone());
                    }
                }
                _ => {
                    max_p = Some(p.clone());
                    min_p = Some(p.clone());
                }
            }
        }
        let zero = Surd::zero();
        out.push(Block {
            end_p: plan.frame.lift(&p),
            max_p: plan.frame.lift(max_p.as_ref().unwrap_or(&zero)),
            min_p: plan.frame.lift(min_p.as_ref().unwrap_or(&zero)),
        });
    }
    Some(out)
}

fn profile_breakpoints(n_max: u64, schedule: &Schedule) -> (Vec<u64>, BTreeSet<u64>, BTreeSet<u64>) {
    let decades: BTreeSet<u64> = checkpoints(n_max).into_iter().collect();
    let trace: BTreeSet<u64> = schedule.trace(n_max).into_iter().collect();
    let bps: Vec<u64> = decades.union(&trace).copied().collect();
    (bps, decades, trace)
}

fn check_profile_args(sys: &RotationSystem, n_max: u64) -> Result<()> {
    if n_max < 100 {
        return Err(Error::InvalidArgument(format!("N_max = {n_max} must be ≥ 100")));
    }
    let n = i64::try_from(n_max).map_err(|_| Error::InvalidArgument("N_max too large".into()))?;
    sys.check_range(0, n)
}

/// Single-pass exact profile of `D(N)` for `0 ≤ N ≤ n_max`.
pub fn profile(sys: &RotationSystem, n_max: u64, schedule: &Schedule) -> Result<DiscrepancyProfile> {
    check_profile_args(sys, n_max)?;
    let (bps, decades, trace) = profile_breakpoints(n_max, schedule);
    let counts: Vec<u64> = block_counts(&bps);
    let len = sys.window().length();
    let plan = sys.plan(sys.window(), 0, std::slice::from_ref(&len));
    let blocks = with_kint!(scan_blocks(&plan, &len, &counts));
    Ok(merge_blocks(sys.xi(), &len, n_max, &bps, &blocks, &decades, &trace))
}

/// Same result as [`profile`], with blocks scanned in parallel. Each
/// block starts from an exactly computed orbit point, so the output does
/// not depend on the number of threads.
pub fn profile_parallel(sys: &RotationSystem, n_max: u64, schedule: &Schedule, shards: usize) -> Result<DiscrepancyProfile> {
    check_profile_args(sys, n_max)?;
    let (mut bps, decades, trace) = profile_breakpoints(n_max, schedule);
    // split long blocks so that every shard has work
    let target = (n_max / shards.max(1) as u64).max(1);
    let mut extra = Vec::new();
    let mut prev = 0u64;
    for &b in &bps {
        let mut cut = prev + target;
        while cut < b {
            extra.push(cut);
            cut += target;
        }
        prev = b;
    }
    bps.extend(extra);
    bps.sort_unstable();
    bps.dedup();
    let counts = block_counts(&bps);
    let len = sys.window().length();
    let starts: Vec<u64> = std::iter::once(0).chain(bps.iter().map(|b| b + 1)).take(bps.len()).collect();
    let blocks: Vec<Block> = starts
        .par_iter()
        .zip(counts.par_iter())
        .map(|(&start, &count)| {
            let plan = sys.plan(sys.window(), start as i64, std::slice::from_ref(&len));
            let cs = [count];
            let mut v = with_kint!(scan_blocks(&plan, &len, &cs));
            v.pop().expect("one block")
        })
        .collect();
    Ok(merge_blocks(sys.xi(), &len, n_max, &bps, &blocks, &decades, &trace))
}

fn block_counts(bps: &[u64]) -> Vec<u64> {
    let mut prev: Option<u64> = None;
    bps.iter()
        .map(|&b| {
            let c = match prev {
                None => b + 1,
                Some(p) => b - p,
            };
            prev = Some(b);
            c
        })
        .collect()
}

fn merge_blocks(
    xi: &XiSpec,
    len: &XiReal,
    n_max: u64,
    bps: &[u64],
    blocks: &[Block],
    decades: &BTreeSet<u64>,
    trace: &BTreeSet<u64>,
) -> DiscrepancyProfile {
    // D(−1) = 0 − (−1)·len
    let mut base = len.clone();
    let mut running = XiReal::zero();
    let mut samples = Vec::new();
    let mut decade_maxima = Vec::new();
    for (b, block) in bps.iter().zip(blocks) {
        let hi = xi.abs(&(&base + &block.max_p));
        let lo = xi.abs(&(&base + &block.min_p));
        running = xi.max(running, xi.max(hi, lo));
        base = &base + &block.end_p;
        if decades.contains(b) {
            decade_maxima.push((*b, running.clone()));
        }
        if trace.contains(b) {
            samples.push(ProfileSample {
                n: *b,
                d: base.clone(),
                abs_d: xi.abs(&base),
                running_max: running.clone(),
            });
        }
    }
    DiscrepancyProfile {
        n_max,
        samples,
        decade_maxima,
        sup_seen: running,
    }
}

/// Evidence-level reading of a profile; never a proof.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EmpiricalVerdict {
    BoundedConsistent,
    UnboundedConsistent,
    Inconclusive,
}

/// Thresholds for [`empirical_verdict_with`].
///
/// A bounded discrepancy sequence usually approaches its supremum without
/// reaching it, so its decade maxima keep creeping up by amounts that
/// shrink like `1/N`. `tolerance` is the growth below which a change
/// counts as "constant"; a zero tolerance means exact equality and strict
/// increase. The default is an engineering choice, not a derived bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmpiricalRule {
    pub tolerance: BigRational,
}

impl EmpiricalRule {
    pub fn exact() -> Self {
        EmpiricalRule {
            tolerance: BigRational::zero(),
        }
    }
}

impl Default for EmpiricalRule {
    fn default() -> Self {
        EmpiricalRule {
            tolerance: BigRational::new(1.into(), 20.into()),
        }
    }
}

/// [`empirical_verdict_with`] under the default rule.
pub fn empirical_verdict(xi: &XiSpec, p: &DiscrepancyProfile) -> EmpiricalVerdict {
    empirical_verdict_with(xi, p, &EmpiricalRule::default())
}

/// Bounded-consistent when the maxima at `10^j`, `j ≥ 3`, grow by at most
/// the tolerance overall; unbounded-consistent when at least 2 of the last
/// 3 decade steps grow by more than the tolerance; inconclusive otherwise.
pub fn empirical_verdict_with(xi: &XiSpec, p: &DiscrepancyProfile, rule: &EmpiricalRule) -> EmpiricalVerdict {
    let maxima: Vec<&XiReal> = p.power_maxima().into_iter().filter(|(j, _)| *j >= 3).map(|(_, m)| m).collect();
    if maxima.len() < 2 {
        return EmpiricalVerdict::Inconclusive;
    }
    let tol = XiReal::rational(rule.tolerance.clone());
    let grows = |a: &XiReal, b: &XiReal| xi.lt(&tol, &(b - a));
    if !grows(maxima[0], maxima[maxima.len() - 1]) {
        return EmpiricalVerdict::BoundedConsistent;
    }
    let steps: Vec<bool> = maxima.windows(2).map(|w| grows(w[0], w[1])).collect();
    let recent = &steps[steps.len().saturating_sub(3)..];
    if recent.iter().filter(|&&up| up).count() >= 2 {
        EmpiricalVerdict::UnboundedConsistent
    } else {
        EmpiricalVerdict::Inconclusive
    }
}

/// Finite linear combination `Σ c_j χ(P_j) + c·dx` of indicator cochains.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cochain {
    terms: Vec<(BigRational, PatternSpec)>,
    dx: BigRational,
}

impl Cochain {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `c·χ(p)`, merging coefficients of equal patterns.
    pub fn term(mut self, c: BigRational, p: PatternSpec) -> Self {
        match self.terms.iter_mut().find(|(_, q)| *q == p) {
            Some((existing, _)) => *existing += c,
            None => self.terms.push((c, p)),
        }
        self.terms.retain(|(c, _)| !c.is_zero());
        self
    }

    pub fn with_dx(mut self, c: BigRational) -> Self {
        self.dx = c;
        self
    }

    pub fn terms(&self) -> &[(BigRational, PatternSpec)] {
        &self.terms
    }

    pub fn dx(&self) -> &BigRational {
        &self.dx
    }

    /// `δ(P_j)` for each term.
    pub fn densities(&self, sys: &RotationSystem) -> Result<Vec<XiReal>> {
        self.terms.iter().map(|(_, p)| pattern_density(sys, p)).collect()
    }

    /// `α` on the union of unit edges starting at `k ∈ [k0, k1)`.
    pub fn evaluate(&self, sys: &RotationSystem, k0: i64, k1: i64) -> Result<XiReal> {
        let mut total = XiReal::rational(&self.dx * BigRational::from_integer((k1 - k0).max(0).into()));
        for (c, p) in &self.terms {
            let n = indicator_hit_count(sys, p, k0, k1 - 1)?;
            total = total + XiReal::rational(c * BigRational::from_integer(n.into()));
        }
        Ok(total)
    }
}

/// `α₀ = Σ c_j (χ(P_j) − δ(P_j) dx)` applied to `[k0, k1)`: the signed
/// discrepancy of the cochain. The `dx` part has zero discrepancy.
pub fn cochain_discrepancy(c: &Cochain, sys: &RotationSystem, k0: i64, k1: i64) -> Result<XiReal> {
    if k0 > k1 {
        return Err(Error::InvalidArgument(format!("empty range [{k0}, {k1})")));
    }
    let length = k1 - k0;
    let densities = c.densities(sys)?;
    let mut total = XiReal::zero();
    for ((coeff, p), delta) in c.terms.iter().zip(&densities) {
        let n = indicator_hit_count(sys, p, k0, k1 - 1)?;
        let term = XiReal::from_integer(n) - delta.mul_int(length);
        total = total + term.scale(coeff);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{local_discrepancy, orbit_hits, Window};

    fn sqrt2() -> XiSpec {
        XiSpec::sqrt(2).unwrap()
    }

    fn system(xi: &XiSpec, w: &str) -> RotationSystem {
        RotationSystem::new(xi.clone(), XiReal::zero(), Window::parse(xi, w).unwrap())
    }

    /// Brute-force oracle: D(N) from scratch for every N.
    fn brute_profile(sys: &RotationSystem, n_max: i64) -> Vec<XiReal> {
        let xi = sys.xi();
        let len = sys.window().length();
        let mut hits = 0i64;
        (0..=n_max)
            .map(|n| {
                if sys.window().contains(xi, &sys.internal_coordinate(n)) {
                    hits += 1;
                }
                XiReal::from_integer(hits) - len.mul_int(n)
            })
            .collect()
    }

    #[test]
    fn disc_examples() {
        let xi = sqrt2();
        let ints = PointPattern::new((-20..40).collect()).unwrap();
        let one = XiReal::one();
        assert!(disc(&xi, &ints, &XiReal::zero(), &XiReal::from_integer(10), &one).unwrap().is_zero());
        assert_eq!(disc(&xi, &ints, &XiReal::zero(), &XiReal::ratio(21, 2), &one).unwrap(), XiReal::ratio(1, 2));
        assert!(disc(&xi, &ints, &one, &one, &one).is_err());
    }

    #[test]
    fn disc_matches_local_discrepancy() {
        let xi = sqrt2();
        let sys = system(&xi, "[0, 1/2)");
        let n = 10_000;
        let pts = orbit_hits(&sys, 0, n).unwrap();
        let half = XiReal::ratio(1, 2);
        let s = signed_disc(&xi, &pts, &XiReal::zero(), &XiReal::from_integer(n), &half).unwrap();
        let d = local_discrepancy(&sys, n - 1).unwrap();
        assert_eq!(s, d - half);
    }

    #[test]
    fn disc_is_additive_over_splits() {
        let xi = sqrt2();
        let sys = system(&xi, "[1/7, 5/7)");
        let pts = orbit_hits(&sys, -500, 500).unwrap();
        let delta = sys.window().length();
        let (a, m, b) = (XiReal::ratio(-301, 3), XiReal::ints(7, 5), XiReal::ratio(399, 2));
        let whole = signed_disc(&xi, &pts, &a, &b, &delta).unwrap();
        let parts = signed_disc(&xi, &pts, &a, &m, &delta).unwrap() + signed_disc(&xi, &pts, &m, &b, &delta).unwrap();
        assert_eq!(whole, parts);
    }

    #[test]
    fn density_estimates() {
        let xi = sqrt2();
        let sys = system(&xi, "[0, -1+1*xi)");
        let pts = orbit_hits(&sys, 0, 1000).unwrap();
        assert_eq!(estimate_density(&pts).unwrap(), DensityEstimate::Exact(XiReal::ints(-1, 1)));
        let evens = PointPattern::from_text(&(0..200).map(|k| format!("{}\n", 2 * k)).collect::<String>()).unwrap();
        match estimate_density(&evens).unwrap() {
            DensityEstimate::Empirical { value, sensitivity } => {
                assert_eq!(value, BigRational::new(1.into(), 2.into()));
                assert!(sensitivity.is_zero());
            }
            other => panic!("{other:?}"),
        }
        let few = PointPattern::new((0..10).collect()).unwrap();
        assert!(matches!(estimate_density(&few), Err(Error::TooFewPoints { .. })));
    }

    #[test]
    fn profile_matches_brute_force() {
        let xi = XiSpec::golden();
        let sys = RotationSystem::new(xi.clone(), XiReal::ratio(3, 7), Window::parse(&xi, "[1/9, 1/2) [3/5, 7/10)").unwrap());
        let n_max = 2500;
        let brute = brute_profile(&sys, n_max as i64);
        let prof = profile(&sys, n_max, &Schedule::default()).unwrap();
        let mut running = XiReal::zero();
        let mut maxima = Vec::new();
        for (n, d) in brute.iter().enumerate() {
            running = xi.max(running, xi.abs(d));
            if [100, 1000, 2500].contains(&n) {
                maxima.push((n as u64, running.clone()));
            }
        }
        assert_eq!(prof.decade_maxima, maxima);
        assert_eq!(prof.sup_seen, running);
        for s in &prof.samples {
            assert_eq!(s.d, brute[s.n as usize]);
        }
        assert!(prof.samples.len() > 100);
    }

    #[test]
    fn parallel_profile_is_identical() {
        let xi = sqrt2();
        let sys = system(&xi, "[0, 1/2)");
        let seq = profile(&sys, 20_000, &Schedule::default()).unwrap();
        for shards in [1, 3, 8] {
            assert_eq!(profile_parallel(&sys, 20_000, &Schedule::default(), shards).unwrap(), seq);
        }
    }

    #[test]
    fn profile_examples() {
        let xi = sqrt2();
        let p = profile(&system(&xi, "[0, 1/2)"), 100, &Schedule::default()).unwrap();
        assert_eq!(p.decade_maxima.len(), 1);
        assert!(profile(&system(&xi, "[0, 1/2)"), 99, &Schedule::default()).is_err());
        let bounded = profile(&system(&xi, "[0, -1+1*xi)"), 100_000, &Schedule::checkpoints_only()).unwrap();
        assert_eq!(empirical_verdict(&xi, &bounded), EmpiricalVerdict::BoundedConsistent);
        let unbounded = profile(&system(&xi, "[0, 1/2)"), 100_000, &Schedule::checkpoints_only()).unwrap();
        assert_eq!(empirical_verdict(&xi, &unbounded), EmpiricalVerdict::UnboundedConsistent);
        // maxima are monotone
        for w in unbounded.decade_maxima.windows(2) {
            assert!(!xi.lt(&w[1].1, &w[0].1));
        }
    }

    #[test]
    fn schedule_trace_shape() {
        let t = Schedule::default().trace(1_000_000);
        assert!(t.len() <= 4096);
        assert_eq!(t.first(), Some(&0));
        assert_eq!(t.last(), Some(&1_000_000));
        assert!(t.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(checkpoints(100), vec![100]);
        assert_eq!(checkpoints(2500), vec![100, 1000, 2500]);
        assert!(Schedule::checkpoints_only().trace(1000).is_empty());
    }

    #[test]
    fn csv_layout() {
        let xi = sqrt2();
        let sys = system(&xi, "[0, 1/2)");
        let p = profile(&sys, 100, &Schedule { trace_points: 8 }).unwrap();
        let csv = p.to_csv(&xi, &sys.describe());
        let header_line = csv.lines().find(|l| !l.starts_with('#')).unwrap();
        assert_eq!(header_line, "N,D_signed,absD,decade_max");
        let row = csv.lines().find(|l| l.starts_with("1,")).unwrap();
        // D(1) = 2 − 1/2
        assert_eq!(row, format!("1,3/2+0*xi,1.{},1.{}", "5".to_string() + &"0".repeat(29), "5".to_string() + &"0".repeat(29)));
    }

    #[test]
    fn cochain_examples() {
        let xi = sqrt2();
        let sys = system(&xi, "[0, -1+1*xi)");
        let point = PatternSpec::point();
        let c = Cochain::new().term(BigRational::from_integer(1.into()), point.clone());
        let pts = orbit_hits(&sys, 0, 999).unwrap();
        let direct = signed_disc(&xi, &pts, &XiReal::zero(), &XiReal::from_integer(1000), &sys.window().length()).unwrap();
        assert_eq!(cochain_discrepancy(&c, &sys, 0, 1000).unwrap(), direct);

        let one = BigRational::from_integer(1.into());
        let zero = Cochain::new().term(one.clone(), point.clone()).term(-one.clone(), point.clone());
        assert!(zero.terms().is_empty());
        assert!(cochain_discrepancy(&zero, &sys, -40, 400).unwrap().is_zero());

        // linearity over two patterns
        let pair = PatternSpec::new([0, 2], []).unwrap();
        let two = Cochain::new().term(BigRational::new(3.into(), 2.into()), point.clone()).term(-one.clone(), pair.clone());
        let a = cochain_discrepancy(&Cochain::new().term(one.clone(), point), &sys, 5, 700).unwrap();
        let b = cochain_discrepancy(&Cochain::new().term(one, pair), &sys, 5, 700).unwrap();
        assert_eq!(
            cochain_discrepancy(&two, &sys, 5, 700).unwrap(),
            a.scale(&BigRational::new(3.into(), 2.into())) - b
        );
        let with_dx = two.clone().with_dx(BigRational::from_integer(5.into()));
        assert_eq!(cochain_discrepancy(&with_dx, &sys, 5, 700).unwrap(), cochain_discrepancy(&two, &sys, 5, 700).unwrap());
    }
}
