//! Randomized cross-validation of exact verdicts against profiles.
//!
//! Case `i` of a suite is drawn from its own ChaCha stream, so cases do not
//! depend on each other or on the order in which they are run.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use num_rational::BigRational;

use crate::bdmatch::{matching_summary, MatchingSummary};
use crate::criteria::{bd_verdict, Verdict};
use crate::discrepancy::{
    empirical_verdict_with, profile, DiscrepancyProfile, EmpiricalRule, EmpiricalVerdict, Schedule,
};
use crate::error::{Error, Result};
use crate::exactnum::{XiReal, XiSpec};
use crate::patterns::{orbit_hits, Interval, PointPattern, RotationSystem, Window};

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub count: usize,
    pub seed: u64,
    pub n_max: u64,
    /// Points used for the matching check on bounded cases; below 2 disables it.
    pub witness_points: usize,
    /// Probability that an endpoint is a pure rational rather than `r + kξ`.
    pub rational_share: f64,
    pub rule: EmpiricalRule,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            count: 1000,
            seed: 7,
            n_max: 1_000_000,
            witness_points: 100_000,
            rational_share: 0.5,
            rule: EmpiricalRule::default(),
        }
    }
}

/// Smallest interval length and gap in generated windows.
pub const MIN_SPACING: (i64, i64) = (1, 50);
const MAX_DRAWS: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteCase {
    pub index: usize,
    pub xi: XiSpec,
    pub basepoint: XiReal,
    pub window: Window,
}

impl SuiteCase {
    pub fn system(&self) -> RotationSystem {
        RotationSystem::new(self.xi.clone(), self.basepoint.clone(), self.window.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCheck {
    pub summary: MatchingSummary,
    /// `(max |D| + 1) / δ`.
    pub bound: XiReal,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteRow {
    pub case: SuiteCase,
    pub exact: Verdict,
    pub empirical: EmpiricalVerdict,
    pub decade_maxima: Vec<(u64, XiReal)>,
    pub witness: Option<WitnessCheck>,
}

impl SuiteRow {
    pub fn disagrees(&self) -> bool {
        matches!(
            (self.exact, self.empirical),
            (Verdict::Bounded, EmpiricalVerdict::UnboundedConsistent)
                | (Verdict::Unbounded, EmpiricalVerdict::BoundedConsistent)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub seed: u64,
    pub n_max: u64,
    pub rows: Vec<SuiteRow>,
}

impl SuiteReport {
    pub fn count(&self) -> usize {
        self.rows.len()
    }

    pub fn exact_count(&self, v: Verdict) -> usize {
        self.rows.iter().filter(|r| r.exact == v).count()
    }

    pub fn empirical_count(&self, v: EmpiricalVerdict) -> usize {
        self.rows.iter().filter(|r| r.empirical == v).count()
    }

    pub fn disagreements(&self) -> Vec<usize> {
        self.rows.iter().filter(|r| r.disagrees()).map(|r| r.case.index).collect()
    }

    pub fn inconclusive_rate(&self) -> f64 {
        if self.rows.is_empty() {
            return 0.0;
        }
        self.empirical_count(EmpiricalVerdict::Inconclusive) as f64 / self.rows.len() as f64
    }

    /// Indices of bounded cases whose matching exceeded the bound.
    pub fn witness_failures(&self) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|r| r.witness.as_ref().is_some_and(|w| !w.holds))
            .map(|r| r.case.index)
            .collect()
    }

    pub fn witness_checked(&self) -> usize {
        self.rows.iter().filter(|r| r.witness.is_some()).count()
    }
}

fn xi_pool() -> Vec<XiSpec> {
    let half = BigRational::new(1.into(), 2.into());
    vec![
        XiSpec::sqrt(2).expect("sqrt 2"),
        XiSpec::golden(),
        XiSpec::sqrt(3).expect("sqrt 3"),
        XiSpec::sqrt(7).expect("sqrt 7"),
        XiSpec::new(half.clone(), half, 13).expect("(1+sqrt 13)/2"),
    ]
}

fn case_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn random_rational<R: Rng>(rng: &mut R, max_den: i64) -> XiReal {
    let den = rng.gen_range(1..=max_den);
    XiReal::ratio(rng.gen_range(0..den), den)
}

/// One attempt at a window: `2L` endpoints `frac(r + kξ)` with `r` drawn
/// from a small pool of rational class representatives.
fn draw_window<R: Rng>(rng: &mut R, xi: &XiSpec, rational_share: f64) -> Option<Window> {
    let l: usize = rng.gen_range(1..=3);
    let pool: Vec<XiReal> = (0..rng.gen_range(1..=l + 1)).map(|_| random_rational(rng, 12)).collect();
    let mut ends: Vec<XiReal> = (0..2 * l)
        .map(|_| {
            let r = pool.choose(rng).expect("nonempty pool");
            let k = if rng.gen_bool(rational_share) { 0 } else { rng.gen_range(-3..=3) };
            xi.frac(&(r + &XiReal::ints(0, k)))
        })
        .collect();
    ends.sort_by(|a, b| xi.cmp(a, b));
    let min = XiReal::ratio(MIN_SPACING.0, MIN_SPACING.1);
    let spaced = ends.windows(2).all(|w| !xi.lt(&(&w[1] - &w[0]), &min))
        && !xi.lt(&(&(&ends[0] + &XiReal::one()) - &ends[2 * l - 1]), &min);
    if !spaced {
        return None;
    }
    let mut ivs: Vec<Interval> = Vec::with_capacity(l + 1);
    if rng.gen_bool(0.5) {
        for pair in ends.chunks(2) {
            ivs.push(Interval::new(pair[0].clone(), pair[1].clone()));
        }
    } else {
        for i in 0..l - 1 {
            ivs.push(Interval::new(ends[2 * i + 1].clone(), ends[2 * i + 2].clone()));
        }
        ivs.push(Interval::new(ends[2 * l - 1].clone(), XiReal::one()));
        if !ends[0].is_zero() {
            ivs.push(Interval::new(XiReal::zero(), ends[0].clone()));
        }
    }
    Window::new(xi, ivs).ok()
}

/// Case `index` of the suite with seed `seed`. Even indices are drawn
/// until the exact verdict is bounded, odd ones until it is unbounded.
pub fn generate_case(seed: u64, index: usize, rational_share: f64) -> Result<SuiteCase> {
    let mut rng = case_rng(seed, index);
    let pool = xi_pool();
    let want = if index.is_multiple_of(2) { Verdict::Bounded } else { Verdict::Unbounded };
    for _ in 0..MAX_DRAWS {
        let xi = pool.choose(&mut rng).expect("nonempty").clone();
        let Some(window) = draw_window(&mut rng, &xi, rational_share) else {
            continue;
        };
        if bd_verdict(&window)?.verdict != want {
            continue;
        }
        let basepoint = random_rational(&mut rng, 7);
        return Ok(SuiteCase {
            index,
            xi,
            basepoint,
            window,
        });
    }
    Err(Error::InvalidArgument(format!("no {want:?} window found for case {index}")))
}

/// Monotone matching of the first `points` hits with `k ≥ 0`, checked
/// against `(max |D| + 1)/δ` where the maximum covers every hit used.
fn witness_check(sys: &RotationSystem, points: usize, prof: &DiscrepancyProfile) -> Result<WitnessCheck> {
    let xi = sys.xi();
    let delta = sys.window().length();
    let mut k_max = (points as f64 / xi.to_f64(&delta) * 1.05) as i64 + 100;
    let hits = loop {
        let hits = orbit_hits(sys, 0, k_max)?;
        if hits.len() >= points {
            break hits;
        }
        k_max += k_max / 2;
    };
    let pattern = PointPattern::new(hits.points()[..points].to_vec())?;
    let last = *pattern.points().last().expect("nonempty") as u64;
    let max_d = if last <= prof.n_max {
        prof.sup_seen.clone()
    } else {
        profile(sys, last.max(100), &Schedule::checkpoints_only())?.sup_seen
    };
    let summary = matching_summary(xi, &pattern, &delta)?;
    let bound = xi.div(&(&max_d + &XiReal::one()), &delta).expect("positive density");
    let holds = !xi.lt(&bound, &summary.sup_displacement);
    Ok(WitnessCheck { summary, bound, holds })
}

pub fn run_case(case: SuiteCase, config: &SuiteConfig) -> Result<SuiteRow> {
    let sys = case.system();
    let exact = bd_verdict(&case.window)?.verdict;
    let prof = profile(&sys, config.n_max, &Schedule::checkpoints_only())?;
    let empirical = empirical_verdict_with(&case.xi, &prof, &config.rule);
    let witness = if exact == Verdict::Bounded && config.witness_points >= 2 {
        Some(witness_check(&sys, config.witness_points, &prof)?)
    } else {
        None
    };
    Ok(SuiteRow {
        case,
        exact,
        empirical,
        decade_maxima: prof.decade_maxima,
        witness,
    })
}

/// Runs all cases in parallel; rows come back in index order.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    let rows = (0..config.count)
        .into_par_iter()
        .map(|i| run_case(generate_case(config.seed, i, config.rational_share)?, config))
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport {
        seed: config.seed,
        n_max: config.n_max,
        rows,
    })
}

/// `(rational, irrational)` endpoint counts of a window.
pub fn endpoint_kinds(w: &Window) -> (usize, usize) {
    let ends = w.endpoints();
    let rational = ends.iter().filter(|e| e.is_rational()).count();
    (rational, ends.len() - rational)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cases_are_reproducible_and_balanced() {
        for i in 0..40 {
            let a = generate_case(11, i, 0.5).unwrap();
            assert_eq!(a, generate_case(11, i, 0.5).unwrap());
            let v = bd_verdict(&a.window).unwrap().verdict;
            assert_eq!(v == Verdict::Bounded, i % 2 == 0);
        }
        assert_ne!(generate_case(11, 3, 0.5).unwrap(), generate_case(12, 3, 0.5).unwrap());
    }

    #[test]
    fn generated_windows_respect_spacing() {
        let min = XiReal::ratio(MIN_SPACING.0, MIN_SPACING.1);
        for i in 0..60 {
            let c = generate_case(5, i, 0.5).unwrap();
            let xi = &c.xi;
            // arcs and gaps on the circle, joining pieces that meet at 0
            let mut ends: Vec<XiReal> = c.window.endpoints();
            if ends[0].is_zero() && ends[ends.len() - 1] == XiReal::one() {
                ends.remove(0);
                ends.pop();
            }
            ends.dedup();
            let n = ends.len();
            assert!(n >= 2 && n.is_multiple_of(2));
            for k in 0..n {
                let next = if k + 1 < n { ends[k + 1].clone() } else { &ends[0] + &XiReal::one() };
                assert!(!xi.lt(&(&next - &ends[k]), &min), "case {i}: {}", c.window);
            }
        }
    }

    #[test]
    fn small_suite_runs() {
        let config = SuiteConfig {
            count: 12,
            seed: 3,
            n_max: 10_000,
            witness_points: 2_000,
            ..SuiteConfig::default()
        };
        let r = run_suite(&config).unwrap();
        assert_eq!(r.count(), 12);
        assert_eq!(r.exact_count(Verdict::Bounded), 6);
        assert!(r.witness_failures().is_empty());
        assert_eq!(r.witness_checked(), 6);
        let again = run_suite(&config).unwrap();
        assert_eq!(r, again);
    }
}
