//! Monotone matchings between a point pattern and a scaled lattice.
//!
//! The `i`-th point (sorted) is paired with `(i + offset) / δ`. With
//! `e_i = δ·y_i − i` the displacement is `|e_i − offset| / δ`, so the best
//! integer offset is one of the two integers around the midpoint of
//! `min e` and `max e`.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::exactnum::{XiReal, XiSpec};
use crate::kernel::{with_kint, FrameSpec, KInt, Surd};
use crate::patterns::PointPattern;

/// Largest instance accepted by [`optimality_check`].
pub const OPTIMALITY_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingPair {
    pub point: XiReal,
    pub lattice_point: XiReal,
    pub displacement: XiReal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingWitness {
    pub delta: XiReal,
    pub offset: BigInt,
    pub pairs: Vec<MatchingPair>,
    pub sup_displacement: XiReal,
    /// Index range the points were taken from, when known.
    pub range: Option<(i64, i64)>,
}

/// Offset and sup displacement without the pair list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingSummary {
    pub delta: XiReal,
    pub offset: BigInt,
    pub n_points: usize,
    pub sup_displacement: XiReal,
}

fn check_inputs(xi: &XiSpec, n: usize, delta: &XiReal) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyPattern);
    }
    if n < 2 {
        return Err(Error::TooFewPoints { need: 2, got: n });
    }
    if xi.sign(delta) != Ordering::Greater {
        return Err(Error::InvalidArgument(format!("density {delta} must be positive")));
    }
    Ok(())
}

/// Best offset for the extremes of `e`, and the resulting `max |e_i − o|`.
fn best_offset(xi: &XiSpec, min_e: &XiReal, max_e: &XiReal) -> (BigInt, XiReal) {
    let mid = (min_e + max_e).scale(&BigRational::new(1.into(), 2.into()));
    let lo = xi.floor(&mid);
    let cost = |o: &BigInt| {
        let o = XiReal::from_integer(o.clone());
        xi.max(max_e - &o, &o - min_e)
    };
    let hi = &lo + BigInt::one();
    let (c_lo, c_hi) = (cost(&lo), cost(&hi));
    if xi.lt(&c_hi, &c_lo) {
        (hi, c_hi)
    } else {
        (lo, c_lo)
    }
}

/// Exact monotone matching of sorted `points` against the lattice `Z/δ`.
pub fn build_witness(xi: &XiSpec, points: &[XiReal], delta: &XiReal) -> Result<MatchingWitness> {
    check_inputs(xi, points.len(), delta)?;
    if let Some(i) = (1..points.len()).find(|&i| !xi.lt(&points[i - 1], &points[i])) {
        return Err(Error::InvalidPattern(format!(
            "points must be strictly increasing (index {i})"
        )));
    }
    let es: Vec<XiReal> = points
        .iter()
        .enumerate()
        .map(|(i, y)| xi.mul(delta, y) - XiReal::from_integer(BigInt::from(i)))
        .collect();
    let (mut min_e, mut max_e) = (&es[0], &es[0]);
    for e in &es[1..] {
        if xi.lt(e, min_e) {
            min_e = e;
        }
        if xi.lt(max_e, e) {
            max_e = e;
        }
    }
    let (offset, cost) = best_offset(xi, min_e, max_e);
    let inv = xi.inv(delta).expect("positive density");
    let pairs: Vec<MatchingPair> = points
        .iter()
        .enumerate()
        .map(|(i, y)| {
            let lattice_point = xi.mul(&XiReal::from_integer(BigInt::from(i) + &offset), &inv);
            let displacement = xi.abs(&(y - &lattice_point));
            MatchingPair {
                point: y.clone(),
                lattice_point,
                displacement,
            }
        })
        .collect();
    let sup_displacement = xi.mul(&cost, &inv);
    debug_assert!(pairs.iter().all(|p| !xi.lt(&sup_displacement, &p.displacement)));
    Ok(MatchingWitness {
        delta: delta.clone(),
        offset,
        pairs,
        sup_displacement,
        range: None,
    })
}

/// [`build_witness`] for an integer point pattern, recording its range.
pub fn build_witness_for_pattern(
    xi: &XiSpec,
    points: &PointPattern,
    delta: &XiReal,
    range: Option<(i64, i64)>,
) -> Result<MatchingWitness> {
    let ys: Vec<XiReal> = points.points().iter().map(|&k| XiReal::from_integer(k)).collect();
    let mut w = build_witness(xi, &ys, delta)?;
    w.range = range;
    Ok(w)
}

fn extremes<T: KInt>(xi: &XiSpec, points: &[i64], delta: &XiReal) -> Option<(XiReal, XiReal)> {
    let fs = FrameSpec::new(xi, [delta]);
    let frame = fs.frame::<T>()?;
    let d: Surd<T> = fs.embed(delta)?;
    let m = &frame.m;
    let mut min_e: Option<Surd<T>> = None;
    let mut max_e: Option<Surd<T>> = None;
    for (i, &y) in points.iter().enumerate() {
        let i = T::from_i64(i64::try_from(i).ok()?).mul(m)?;
        let e = d.mul_int(&T::from_i64(y))?;
        let e = Surd { r: e.r.sub(&i)?, s: e.s };
        if min_e.as_ref().is_none_or(|v| frame.cmp(&e, v) == Some(Ordering::Less)) {
            min_e = Some(e.clone());
        }
        if max_e.as_ref().is_none_or(|v| frame.cmp(&e, v) == Some(Ordering::Greater)) {
            max_e = Some(e);
        }
    }
    Some((fs.lift(&min_e?), fs.lift(&max_e?)))
}

/// Offset and sup displacement of the monotone matching of an integer
/// pattern, on the fast integer kernel.
pub fn matching_summary(xi: &XiSpec, points: &PointPattern, delta: &XiReal) -> Result<MatchingSummary> {
    check_inputs(xi, points.len(), delta)?;
    let pts = points.points();
    let (min_e, max_e) = with_kint!(extremes(xi, pts, delta));
    let (offset, cost) = best_offset(xi, &min_e, &max_e);
    Ok(MatchingSummary {
        delta: delta.clone(),
        offset,
        n_points: pts.len(),
        sup_displacement: xi.div(&cost, delta).expect("positive density"),
    })
}

impl MatchingWitness {
    pub fn summary(&self) -> MatchingSummary {
        MatchingSummary {
            delta: self.delta.clone(),
            offset: self.offset.clone(),
            n_points: self.pairs.len(),
            sup_displacement: self.sup_displacement.clone(),
        }
    }

    /// Recomputes every displacement and the supremum.
    pub fn verify(&self, xi: &XiSpec) -> bool {
        let Some(inv) = xi.inv(&self.delta) else {
            return false;
        };
        let mut sup = XiReal::zero();
        for (i, p) in self.pairs.iter().enumerate() {
            let lp = xi.mul(&XiReal::from_integer(BigInt::from(i) + &self.offset), &inv);
            if lp != p.lattice_point || xi.abs(&(&p.point - &lp)) != p.displacement {
                return false;
            }
            if i > 0 && !xi.lt(&self.pairs[i - 1].point, &p.point) {
                return false;
            }
            sup = xi.max(sup, p.displacement.clone());
        }
        sup == self.sup_displacement
    }

    /// CSV `y,lattice_point,displacement` in exact form, with header
    /// comments and a final `# summary` line.
    pub fn to_csv(&self, header: &[String]) -> String {
        let mut out = String::new();
        for h in header {
            let _ = writeln!(out, "# {h}");
        }
        out.push_str("y,lattice_point,displacement\n");
        for p in &self.pairs {
            let _ = writeln!(out, "{},{},{}", p.point, p.lattice_point, p.displacement);
        }
        let range = match self.range {
            Some((a, b)) => format!("{a}..{b}"),
            None => "-".to_string(),
        };
        let _ = writeln!(
            out,
            "# summary: n={} delta={} offset={} sup_displacement={} range={}",
            self.pairs.len(),
            self.delta,
            self.offset,
            self.sup_displacement,
            range
        );
        out
    }

    pub fn from_csv(s: &str) -> Result<Self> {
        let bad = |line: usize, msg: &str| Error::InvalidPattern(format!("line {}: {msg}", line + 1));
        let mut pairs = Vec::new();
        let mut summary = None;
        let mut seen_header = false;
        for (ln, line) in s.lines().enumerate() {
            let line = line.trim();
            if let Some(rest) = line.strip_prefix("# summary:") {
                summary = Some((ln, rest.trim().to_string()));
                continue;
            }
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if !seen_header {
                if line != "y,lattice_point,displacement" {
                    return Err(bad(ln, "expected header y,lattice_point,displacement"));
                }
                seen_header = true;
                continue;
            }
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 3 {
                return Err(bad(ln, "expected 3 columns"));
            }
            let parse = |c: &str| c.parse::<XiReal>().map_err(|e| bad(ln, &e.to_string()));
            pairs.push(MatchingPair {
                point: parse(cols[0])?,
                lattice_point: parse(cols[1])?,
                displacement: parse(cols[2])?,
            });
        }
        let (ln, summary) = summary.ok_or_else(|| bad(s.lines().count(), "missing summary line"))?;
        let mut delta = None;
        let mut offset = None;
        let mut sup = None;
        let mut range = None;
        let mut n = None;
        for field in summary.split_whitespace() {
            let (k, v) = field.split_once('=').ok_or_else(|| bad(ln, "malformed summary field"))?;
            let num = |v: &str| v.parse::<XiReal>().map_err(|e| bad(ln, &e.to_string()));
            match k {
                "n" => n = Some(v.parse::<usize>().map_err(|e| bad(ln, &e.to_string()))?),
                "delta" => delta = Some(num(v)?),
                "offset" => offset = Some(v.parse::<BigInt>().map_err(|e| bad(ln, &e.to_string()))?),
                "sup_displacement" => sup = Some(num(v)?),
                "range" if v == "-" => range = Some(None),
                "range" => {
                    let (a, b) = v.split_once("..").ok_or_else(|| bad(ln, "malformed range"))?;
                    let p = |x: &str| x.parse::<i64>().map_err(|e| bad(ln, &e.to_string()));
                    range = Some(Some((p(a)?, p(b)?)));
                }
                _ => return Err(bad(ln, &format!("unknown summary field {k}"))),
            }
        }
        if n != Some(pairs.len()) {
            return Err(bad(ln, "point count does not match summary"));
        }
        Ok(MatchingWitness {
            delta: delta.ok_or_else(|| bad(ln, "missing delta"))?,
            offset: offset.ok_or_else(|| bad(ln, "missing offset"))?,
            pairs,
            sup_displacement: sup.ok_or_else(|| bad(ln, "missing sup_displacement"))?,
            range: range.ok_or_else(|| bad(ln, "missing range"))?,
        })
    }
}

/// Whether no bijection onto the same lattice points has a smaller sup
/// displacement than the monotone one. Exhaustive search with pruning.
pub fn optimality_check(xi: &XiSpec, points: &[XiReal], delta: &XiReal) -> Result<bool> {
    if points.len() > OPTIMALITY_CAP {
        return Err(Error::SizeCap {
            got: points.len(),
            cap: OPTIMALITY_CAP,
        });
    }
    let w = build_witness(xi, points, delta)?;
    let n = points.len();
    // below[i][j]: |y_i − L_j| < monotone sup
    let below: Vec<Vec<bool>> = points
        .iter()
        .map(|y| {
            w.pairs
                .iter()
                .map(|p| xi.lt(&xi.abs(&(y - &p.lattice_point)), &w.sup_displacement))
                .collect()
        })
        .collect();
    fn search(i: usize, used: &mut [bool], below: &[Vec<bool>]) -> bool {
        if i == below.len() {
            return true;
        }
        for j in 0..used.len() {
            if !used[j] && below[i][j] {
                used[j] = true;
                if search(i + 1, used, below) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    Ok(!search(0, &mut vec![false; n], &below))
}

impl MatchingSummary {
    pub fn sup_f64(&self, xi: &XiSpec) -> f64 {
        xi.to_f64(&self.sup_displacement)
    }

    pub fn offset_i64(&self) -> Option<i64> {
        self.offset.to_i64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{orbit_hits, RotationSystem, Window};

    fn reals(v: &[&str]) -> Vec<XiReal> {
        v.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn rigid_shift() {
        let xi = XiSpec::sqrt(2).unwrap();
        let pts: Vec<XiReal> = (0..20).map(|k| XiReal::ratio(10 * k + 3, 10)).collect();
        let w = build_witness(&xi, &pts, &XiReal::one()).unwrap();
        assert_eq!(w.sup_displacement, XiReal::ratio(3, 10));
        assert_eq!(w.offset, BigInt::from(0));
        assert!(w.verify(&xi));
    }

    #[test]
    fn two_points_against_fifths() {
        let xi = XiSpec::sqrt(2).unwrap();
        let pts = reals(&["0", "1"]);
        let w = build_witness(&xi, &pts, &XiReal::ratio(5, 1)).unwrap();
        assert_eq!(w.offset, BigInt::from(2));
        assert_eq!(w.sup_displacement, XiReal::ratio(2, 5));
        assert!(optimality_check(&xi, &pts, &XiReal::ratio(5, 1)).unwrap());
    }

    #[test]
    fn errors() {
        let xi = XiSpec::sqrt(2).unwrap();
        assert_eq!(build_witness(&xi, &[], &XiReal::one()), Err(Error::EmptyPattern));
        assert!(build_witness(&xi, &reals(&["0"]), &XiReal::one()).is_err());
        assert!(build_witness(&xi, &reals(&["1", "0"]), &XiReal::one()).is_err());
        assert!(build_witness(&xi, &reals(&["0", "1"]), &XiReal::zero()).is_err());
        let many: Vec<XiReal> = (0..13).map(|k| XiReal::ratio(k, 1)).collect();
        assert_eq!(
            optimality_check(&xi, &many, &XiReal::one()),
            Err(Error::SizeCap { got: 13, cap: 12 })
        );
    }

    #[test]
    fn sqrt2_example_is_stable() {
        let xi = XiSpec::sqrt(2).unwrap();
        let w = Window::parse(&xi, "[0, -1+1*xi)").unwrap();
        let sys = RotationSystem::new(xi.clone(), XiReal::zero(), w);
        let delta = XiReal::ints(-1, 1);
        let small = orbit_hits(&sys, 0, 10).unwrap();
        assert_eq!(small.points(), &[0, 3, 5, 8, 10]);
        let w5 = build_witness_for_pattern(&xi, &small, &delta, Some((0, 10))).unwrap();
        assert!(w5.verify(&xi));
        let big = orbit_hits(&sys, 0, 25_000).unwrap();
        assert!(big.len() >= 10_000);
        let s = matching_summary(&xi, &big, &delta).unwrap();
        let exact = build_witness_for_pattern(&xi, &big, &delta, None).unwrap();
        assert_eq!(s, exact.summary());
        // sup displacement is bounded by (max|D| + 1)/δ ≤ 2/δ for this window
        assert!(xi.lt(&s.sup_displacement, &xi.div(&XiReal::ratio(2, 1), &delta).unwrap()));
        assert!(!xi.lt(&s.sup_displacement, &w5.sup_displacement));
    }

    #[test]
    fn unbounded_window_grows() {
        let xi = XiSpec::sqrt(2).unwrap();
        let w = Window::parse(&xi, "[0, 1/2)").unwrap();
        let sys = RotationSystem::new(xi.clone(), XiReal::zero(), w);
        let delta = XiReal::ratio(1, 2);
        let sups: Vec<XiReal> = [100, 1_000, 10_000, 100_000, 1_000_000, 10_000_000]
            .iter()
            .map(|&n| matching_summary(&xi, &orbit_hits(&sys, 0, n).unwrap(), &delta).unwrap().sup_displacement)
            .collect();
        // even integers here; nondecreasing, rising every few decades
        for s in sups.windows(2) {
            assert!(!xi.lt(&s[1], &s[0]));
        }
        assert!(xi.lt(&sups[0], &sups[2]));
        assert!(xi.lt(&sups[2], &sups[5]));
    }

    #[test]
    fn csv_round_trip() {
        let xi = XiSpec::golden();
        let pts = reals(&["0", "1/3", "3/2+1*xi", "4"]);
        let mut w = build_witness(&xi, &pts, &XiReal::ratio(2, 3)).unwrap();
        let csv = w.to_csv(&["xi = 1/2+1/2*sqrt(5)".to_string()]);
        assert_eq!(MatchingWitness::from_csv(&csv).unwrap(), w);
        w.range = Some((-3, 17));
        assert_eq!(MatchingWitness::from_csv(&w.to_csv(&[])).unwrap(), w);
        assert!(MatchingWitness::from_csv("y,lattice_point,displacement\n0,0,0\n").is_err());
    }

    #[test]
    fn monotone_is_optimal_on_small_sorted_instances() {
        let xi = XiSpec::sqrt(3).unwrap();
        let pts = reals(&["0", "1/5", "1*xi", "2", "5/2", "3*xi", "6", "13/2"]);
        assert!(optimality_check(&xi, &pts, &XiReal::ratio(1, 1)).unwrap());
        assert!(optimality_check(&xi, &pts, &XiReal::ratio(3, 2)).unwrap());
    }
}
