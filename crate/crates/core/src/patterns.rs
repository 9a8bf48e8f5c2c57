//! Windows, rotation systems and the point patterns they generate.
//!
//! A [`RotationSystem`] `(ξ, x̃, W)` defines both the orbit of `x̃` under
//! `x ↦ x + ξ mod 1` and the strip `{(x, y) : ξx − y + x̃ ∈ W}`. The
//! integer `k` is a hit when the internal coordinate `frac(x̃ + kξ)` lies
//! in `W`; the same `k` is the x-coordinate of the unique lattice point of
//! the strip on the vertical line `x = k`.
//!
//! Intervals are half-open `[a, b)`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactnum::{Cursor, XiReal, XiSpec};
use crate::kernel::{FrameSpec, Frame, KInt, Surd};

/// Half-open interval `[lo, hi)` with endpoints in Q(ξ).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: XiReal,
    pub hi: XiReal,
}

impl Interval {
    pub fn new(lo: XiReal, hi: XiReal) -> Self {
        Interval { lo, hi }
    }

    pub fn length(&self) -> XiReal {
        &self.hi - &self.lo
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.lo, self.hi)
    }
}

/// Finite disjoint union of half-open intervals inside `[0, 1)`.
///
/// Intervals are kept sorted, pairwise disjoint and non-adjacent: two
/// intervals sharing an endpoint are merged on construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Window {
    intervals: Vec<Interval>,
}

impl Window {
    /// Validates and normalizes a list of intervals. Rejects intervals
    /// outside `[0, 1]`, empty or reversed intervals, overlaps, and total
    /// length `≥ 1`.
    pub fn new(xi: &XiSpec, intervals: Vec<Interval>) -> Result<Self> {
        let zero = XiReal::zero();
        let one = XiReal::one();
        for iv in &intervals {
            if xi.cmp(&iv.lo, &iv.hi) != Ordering::Less {
                return Err(Error::InvalidWindow(format!("{iv} is empty or reversed")));
            }
            if xi.lt(&iv.lo, &zero) || xi.lt(&one, &iv.hi) {
                return Err(Error::InvalidWindow(format!("{iv} is not inside [0, 1]")));
            }
        }
        let mut sorted = intervals;
        sorted.sort_by(|a, b| xi.cmp(&a.lo, &b.lo));
        let mut merged: Vec<Interval> = Vec::with_capacity(sorted.len());
        for iv in sorted {
            if let Some(last) = merged.last_mut() {
                match xi.cmp(&last.hi, &iv.lo) {
                    Ordering::Greater => {
                        return Err(Error::InvalidWindow(format!("{last} overlaps {iv}")));
                    }
                    Ordering::Equal => {
                        last.hi = iv.hi;
                        continue;
                    }
                    Ordering::Less => {}
                }
            }
            merged.push(iv);
        }
        let w = Window { intervals: merged };
        if xi.cmp(&w.length(), &one) != Ordering::Less {
            return Err(Error::InvalidWindow("total length must be < 1".into()));
        }
        Ok(w)
    }

    /// A single interval `[lo, hi)`.
    pub fn interval(xi: &XiSpec, lo: XiReal, hi: XiReal) -> Result<Self> {
        Self::new(xi, vec![Interval::new(lo, hi)])
    }

    pub fn empty() -> Self {
        Window::default()
    }

    /// Already sorted, disjoint, non-adjacent intervals.
    pub(crate) fn from_normalized(intervals: Vec<Interval>) -> Self {
        Window { intervals }
    }

    /// Parses `[a, b) [c, d) ...`; intervals may be separated by
    /// whitespace, `,`, `;` or `U`.
    pub fn parse(xi: &XiSpec, s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        let mut out = Vec::new();
        loop {
            cur.skip_ws();
            while cur.eat(',') || cur.eat(';') || cur.eat('U') || cur.eat('∪') {
                cur.skip_ws();
            }
            if cur.at_end() {
                break;
            }
            if !cur.eat('[') {
                return Err(Error::parse(cur.pos, "expected '['"));
            }
            let lo = cur.xi_real()?;
            cur.skip_ws();
            if !cur.eat(',') {
                return Err(Error::parse(cur.pos, "expected ','"));
            }
            let hi = cur.xi_real()?;
            cur.skip_ws();
            if !cur.eat(')') {
                let msg = if cur.peek() == Some(']') {
                    "intervals are half-open, close with ')'"
                } else {
                    "expected ')'"
                };
                return Err(Error::parse(cur.pos, msg));
            }
            out.push(Interval::new(lo, hi));
        }
        Window::new(xi, out)
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Total length.
    pub fn length(&self) -> XiReal {
        self.intervals.iter().fold(XiReal::zero(), |acc, iv| acc + iv.length())
    }

    /// All endpoints in increasing order.
    pub fn endpoints(&self) -> Vec<XiReal> {
        self.intervals
            .iter()
            .flat_map(|iv| [iv.lo.clone(), iv.hi.clone()])
            .collect()
    }

    /// Index of the interval containing `v`, if any.
    pub fn locate(&self, xi: &XiSpec, v: &XiReal) -> Option<usize> {
        let idx = self.intervals.partition_point(|iv| xi.cmp(&iv.lo, v) != Ordering::Greater);
        (idx > 0 && xi.lt(v, &self.intervals[idx - 1].hi)).then(|| idx - 1)
    }

    pub fn contains(&self, xi: &XiSpec, v: &XiReal) -> bool {
        self.locate(xi, v).is_some()
    }

    /// `W + t mod 1`, split at 0 where it wraps.
    pub fn shift(&self, xi: &XiSpec, t: &XiReal) -> Window {
        let one = XiReal::one();
        let mut pieces = Vec::new();
        for iv in &self.intervals {
            let (lo, _) = xi.fractional_part(&(&iv.lo + t));
            let hi = &lo + &iv.length();
            if xi.cmp(&hi, &one) == Ordering::Greater {
                pieces.push(Interval::new(lo, one.clone()));
                pieces.push(Interval::new(XiReal::zero(), &hi - &one));
            } else {
                pieces.push(Interval::new(lo, hi));
            }
        }
        normalize_pieces(xi, pieces)
    }

    /// `[0, 1) \ W`.
    pub fn complement(&self, xi: &XiSpec) -> Window {
        let mut out = Vec::new();
        let mut cursor = XiReal::zero();
        for iv in &self.intervals {
            if xi.lt(&cursor, &iv.lo) {
                out.push(Interval::new(cursor.clone(), iv.lo.clone()));
            }
            cursor = iv.hi.clone();
        }
        if xi.lt(&cursor, &XiReal::one()) {
            out.push(Interval::new(cursor, XiReal::one()));
        }
        Window::from_normalized(out)
    }

    pub fn intersect(&self, xi: &XiSpec, other: &Window) -> Window {
        let (a, b) = (&self.intervals, &other.intervals);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            let lo = if xi.lt(&a[i].lo, &b[j].lo) { &b[j].lo } else { &a[i].lo };
            let a_first = xi.lt(&a[i].hi, &b[j].hi);
            let hi = if a_first { &a[i].hi } else { &b[j].hi };
            if xi.lt(lo, hi) {
                out.push(Interval::new(lo.clone(), hi.clone()));
            }
            if a_first {
                i += 1;
            } else {
                j += 1;
            }
        }
        normalize_pieces(xi, out)
    }
}

/// Sorts and merges touching pieces; pieces must be pairwise disjoint.
fn normalize_pieces(xi: &XiSpec, mut pieces: Vec<Interval>) -> Window {
    pieces.sort_by(|a, b| xi.cmp(&a.lo, &b.lo));
    let mut out: Vec<Interval> = Vec::with_capacity(pieces.len());
    for iv in pieces {
        match out.last_mut() {
            Some(last) if xi.cmp(&last.hi, &iv.lo) == Ordering::Equal => last.hi = iv.hi,
            _ => out.push(iv),
        }
    }
    Window::from_normalized(out)
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "(empty)");
        }
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

/// Convex hull `[min endpoint, max endpoint)` of a nonempty window.
pub fn convex_hull_window(w: &Window) -> Result<Window> {
    match (w.intervals.first(), w.intervals.last()) {
        (Some(first), Some(last)) => Ok(Window::from_normalized(vec![Interval::new(
            first.lo.clone(),
            last.hi.clone(),
        )])),
        _ => Err(Error::InvalidWindow("convex hull of an empty window".into())),
    }
}

/// What to do with orbit points landing exactly on a window endpoint.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum BoundaryPolicy {
    /// Resolve by half-open membership: a point on a left endpoint is in,
    /// a point on a right endpoint is out.
    #[default]
    HalfOpen,
    /// Fail with [`Error::SingularOrbit`].
    Reject,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSystem {
    xi: XiSpec,
    basepoint: XiReal,
    window: Window,
    policy: BoundaryPolicy,
}

impl RotationSystem {
    /// The basepoint is reduced mod 1.
    pub fn new(xi: XiSpec, basepoint: XiReal, window: Window) -> Self {
        let basepoint = xi.frac(&basepoint);
        RotationSystem {
            xi,
            basepoint,
            window,
            policy: BoundaryPolicy::default(),
        }
    }

    pub fn with_policy(mut self, policy: BoundaryPolicy) -> Self {
        self.policy = policy;
        self
    }

    /// Same ξ and basepoint, another window.
    pub fn with_window(&self, window: Window) -> Self {
        RotationSystem {
            window,
            ..self.clone()
        }
    }

    pub fn xi(&self) -> &XiSpec {
        &self.xi
    }

    pub fn basepoint(&self) -> &XiReal {
        &self.basepoint
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn policy(&self) -> BoundaryPolicy {
        self.policy
    }

    /// `frac(x̃ + kξ)`, computed directly.
    pub fn internal_coordinate(&self, k: i64) -> XiReal {
        self.xi.frac(&(&self.basepoint + &XiReal::xi().mul_int(k)))
    }

    /// All `k` (over the whole orbit) whose internal coordinate equals a
    /// window endpoint, ascending. Each endpoint is hit at most once since
    /// ξ is irrational: `x̃ + kξ ≡ e (mod 1)` iff `e − x̃ = kξ + m`.
    pub fn singular_indices(&self) -> Vec<i64> {
        let mut ks: Vec<i64> = self
            .window
            .endpoints()
            .iter()
            .filter_map(|e| (e - &self.basepoint).in_z_plus_zxi())
            .filter_map(|k| k.to_i64())
            .collect();
        ks.sort_unstable();
        ks.dedup();
        ks
    }

    /// Errors if the policy is [`BoundaryPolicy::Reject`] and a singular
    /// index falls in `[k_min, k_max]`.
    pub fn check_range(&self, k_min: i64, k_max: i64) -> Result<()> {
        if self.policy == BoundaryPolicy::Reject {
            if let Some(&k) = self.singular_indices().iter().find(|&&k| k_min <= k && k <= k_max) {
                return Err(Error::SingularOrbit { k });
            }
        }
        Ok(())
    }

    pub(crate) fn plan(&self, window: &Window, k_start: i64, extras: &[XiReal]) -> ScanPlan {
        ScanPlan::new(&self.xi, &self.basepoint, window, k_start, extras)
    }

    /// Header lines describing the system, without comment markers.
    pub fn describe(&self) -> Vec<String> {
        vec![
            format!("xi = {}", self.xi),
            format!("basepoint = {}", self.basepoint),
            format!("window = {}", self.window),
        ]
    }
}

/// Label of a point in a colored pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    /// Internal coordinate in interval `ℓ` (0-based; printed 1-based).
    Interval(usize),
    /// In the convex hull but in no interval.
    Omega,
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::Interval(l) => write!(f, "{}", l + 1),
            Color::Omega => write!(f, "omega"),
        }
    }
}

/// Strictly increasing integer positions, optionally colored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PointPattern {
    points: Vec<i64>,
    colors: Option<Vec<Color>>,
    density: Option<XiReal>,
}

impl PointPattern {
    pub fn new(points: Vec<i64>) -> Result<Self> {
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("points must be strictly increasing".into()));
        }
        Ok(PointPattern {
            points,
            colors: None,
            density: None,
        })
    }

    pub fn colored(points: Vec<i64>, colors: Vec<Color>) -> Result<Self> {
        if points.len() != colors.len() {
            return Err(Error::InvalidArgument("one color per point".into()));
        }
        let mut p = Self::new(points)?;
        p.colors = Some(colors);
        Ok(p)
    }

    /// Records the exact density known from the generating window.
    pub fn with_density(mut self, density: XiReal) -> Self {
        self.density = Some(density);
        self
    }

    pub fn points(&self) -> &[i64] {
        &self.points
    }

    pub fn colors(&self) -> Option<&[Color]> {
        self.colors.as_deref()
    }

    pub fn known_density(&self) -> Option<&XiReal> {
        self.density.as_ref()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, k: i64) -> bool {
        self.points.binary_search(&k).is_ok()
    }

    /// Number of points in `[lo, hi)`.
    pub fn count_in(&self, lo: i64, hi: i64) -> usize {
        let a = self.points.partition_point(|&p| p < lo);
        let b = self.points.partition_point(|&p| p < hi);
        b.saturating_sub(a)
    }

    /// Line format: `#`-prefixed header lines, then one `k[,color]` per line.
    pub fn to_text(&self, header: &[String]) -> String {
        let mut out = String::new();
        for h in header {
            out.push_str("# ");
            out.push_str(h);
            out.push('\n');
        }
        for (i, k) in self.points.iter().enumerate() {
            match &self.colors {
                Some(c) => out.push_str(&format!("{k},{}\n", c[i])),
                None => out.push_str(&format!("{k}\n")),
            }
        }
        out
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let mut points = Vec::new();
        let mut colors = Vec::new();
        let mut any_color = false;
        for (lineno, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, c) = match line.split_once(',') {
                Some((k, c)) => (k.trim(), Some(c.trim())),
                None => (line, None),
            };
            let k: i64 = k
                .parse()
                .map_err(|_| Error::parse(0, format!("line {}: bad integer '{k}'", lineno + 1)))?;
            points.push(k);
            if let Some(c) = c {
                any_color = true;
                let color = if c == "omega" {
                    Color::Omega
                } else {
                    match c.parse::<usize>() {
                        Ok(l) if l >= 1 => Color::Interval(l - 1),
                        _ => return Err(Error::parse(0, format!("line {}: bad color '{c}'", lineno + 1))),
                    }
                };
                colors.push(color);
            }
        }
        if any_color {
            if colors.len() != points.len() {
                return Err(Error::parse(0, "either every line or no line carries a color"));
            }
            Self::colored(points, colors)
        } else {
            Self::new(points)
        }
    }
}

/// Exact inputs of an orbit scan, before choosing an integer width.
///
/// The scan walks `w_k = frac(x̃ + kξ − o)` where `o` is the left end of
/// the first interval, so the first interval starts at 0.
#[derive(Clone, Debug)]
pub(crate) struct ScanPlan {
    pub frame: FrameSpec,
    start: XiReal,
    step: XiReal,
    rel: Vec<Interval>,
}

impl ScanPlan {
    pub fn new(xi: &XiSpec, basepoint: &XiReal, window: &Window, k_start: i64, extras: &[XiReal]) -> Self {
        let origin = window.intervals().first().map(|iv| iv.lo.clone()).unwrap_or_else(XiReal::zero);
        let start = xi.frac(&(basepoint + &XiReal::xi().mul_int(k_start) - &origin));
        let step = xi.step();
        let rel: Vec<Interval> = window
            .intervals()
            .iter()
            .map(|iv| Interval::new(&iv.lo - &origin, &iv.hi - &origin))
            .collect();
        let frame = FrameSpec::new(
            xi,
            [&start, &step]
                .into_iter()
                .chain(rel.iter().flat_map(|iv| [&iv.lo, &iv.hi]))
                .chain(extras.iter()),
        );
        ScanPlan { frame, start, step, rel }
    }

    pub fn kernel<T: KInt>(&self) -> Option<OrbitKernel<T>> {
        let frame = self.frame.frame::<T>()?;
        Some(OrbitKernel {
            w: self.frame.embed(&self.start)?,
            step: self.frame.embed(&self.step)?,
            one: frame.int(1)?,
            starts: self.rel.iter().map(|iv| self.frame.embed(&iv.lo)).collect::<Option<_>>()?,
            ends: self.rel.iter().map(|iv| self.frame.embed(&iv.hi)).collect::<Option<_>>()?,
            frame,
        })
    }
}

/// Integer-width orbit walker produced by [`ScanPlan::kernel`].
pub(crate) struct OrbitKernel<T> {
    pub frame: Frame<T>,
    w: Surd<T>,
    step: Surd<T>,
    one: Surd<T>,
    starts: Vec<Surd<T>>,
    ends: Vec<Surd<T>>,
}

impl<T: KInt> OrbitKernel<T> {
    /// Interval index of the current point, then advances by one step.
    /// Outer `None` signals overflow.
    #[inline]
    pub fn next(&mut self) -> Option<Option<usize>> {
        let hit = self.locate()?;
        let w = self.w.add(&self.step)?;
        self.w = if self.frame.cmp(&w, &self.one)? == Ordering::Less {
            w
        } else {
            w.sub(&self.one)?
        };
        Some(hit)
    }

    #[inline]
    fn locate(&self) -> Option<Option<usize>> {
        let n = self.starts.len();
        if n == 0 {
            return Some(None);
        }
        // starts[0] = 0 ≤ w; find the last start ≤ w
        let mut lo = 0usize;
        let mut hi = n;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.frame.cmp(&self.starts[mid], &self.w)? != Ordering::Greater {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some((self.frame.cmp(&self.w, &self.ends[lo])? == Ordering::Less).then_some(lo))
    }
}

fn scan_indices<T: KInt>(plan: &ScanPlan, count: u64) -> Option<Vec<(u64, usize)>> {
    let mut kernel = plan.kernel::<T>()?;
    let mut out = Vec::new();
    for i in 0..count {
        if let Some(l) = kernel.next()? {
            out.push((i, l));
        }
    }
    Some(out)
}

fn scan_count<T: KInt>(plan: &ScanPlan, count: u64) -> Option<u64> {
    let mut kernel = plan.kernel::<T>()?;
    let mut hits = 0u64;
    for _ in 0..count {
        if kernel.next()?.is_some() {
            hits += 1;
        }
    }
    Some(hits)
}

/// `(k, interval index)` for every `k ∈ [k_min, k_max]` whose internal
/// coordinate lies in `window`.
pub(crate) fn window_hits(sys: &RotationSystem, window: &Window, k_min: i64, k_max: i64) -> Vec<(i64, usize)> {
    if k_min > k_max || window.is_empty() {
        return Vec::new();
    }
    let plan = sys.plan(window, k_min, &[]);
    let count = (k_max - k_min) as u64 + 1;
    let found = crate::kernel::with_kint!(scan_indices(&plan, count));
    found.into_iter().map(|(i, l)| (k_min + i as i64, l)).collect()
}

/// Number of `k ∈ [k_min, k_max]` whose internal coordinate lies in `window`.
pub(crate) fn window_hit_count(sys: &RotationSystem, window: &Window, k_min: i64, k_max: i64) -> u64 {
    if k_min > k_max || window.is_empty() {
        return 0;
    }
    let plan = sys.plan(window, k_min, &[]);
    let count = (k_max - k_min) as u64 + 1;
    crate::kernel::with_kint!(scan_count(&plan, count))
}

/// The `k ∈ [k_min, k_max]` with `frac(x̃ + kξ) ∈ W`. An empty range
/// gives an empty pattern.
pub fn orbit_hits(sys: &RotationSystem, k_min: i64, k_max: i64) -> Result<PointPattern> {
    sys.check_range(k_min, k_max)?;
    let points = window_hits(sys, &sys.window, k_min, k_max)
        .into_iter()
        .map(|(k, _)| k)
        .collect();
    Ok(PointPattern {
        points,
        colors: None,
        density: Some(sys.window.length()),
    })
}

/// Colored pattern over the convex hull `E` of the window: label `ℓ` when
/// the internal coordinate is in interval `ℓ`, `ω` otherwise.
pub fn colored_hits(sys: &RotationSystem, k_min: i64, k_max: i64) -> Result<PointPattern> {
    sys.check_range(k_min, k_max)?;
    let hull = convex_hull_window(&sys.window)?;
    let mut points = Vec::new();
    let mut colors = Vec::new();
    // Interval ℓ of W sits inside the hull; locate against W directly.
    for (k, _) in window_hits(sys, &hull, k_min, k_max) {
        let v = sys.internal_coordinate(k);
        points.push(k);
        colors.push(match sys.window.locate(&sys.xi, &v) {
            Some(l) => Color::Interval(l),
            None => Color::Omega,
        });
    }
    Ok(PointPattern {
        points,
        colors: Some(colors),
        density: Some(hull.length()),
    })
}

fn strip_scan<T: KInt>(sys: &RotationSystem, k_min: i64, k_max: i64) -> Option<Vec<i64>> {
    let xi = &sys.xi;
    let ends = sys.window.endpoints();
    let frame_spec = FrameSpec::new(xi, [&XiReal::xi(), &sys.basepoint].into_iter().chain(ends.iter()));
    let frame = frame_spec.frame::<T>()?;
    let xi_s: Surd<T> = frame_spec.embed(&XiReal::xi())?;
    let base: Surd<T> = frame_spec.embed(&sys.basepoint)?;
    let bounds: Vec<(Surd<T>, Surd<T>)> = sys
        .window
        .intervals()
        .iter()
        .map(|iv| Some((frame_spec.embed(&iv.lo)?, frame_spec.embed(&iv.hi)?)))
        .collect::<Option<_>>()?;
    let mut out = Vec::new();
    for k in k_min..=k_max {
        // the lattice line x = k meets the strip at y = floor(ξk + x̃)
        let height = xi_s.mul_int(&T::from_i64(k))?.add(&base)?;
        let y = frame.floor(&height)?;
        let internal = height.sub(&Surd {
            r: y.mul(&frame.m)?,
            s: T::zero(),
        })?;
        let mut inside = false;
        for (lo, hi) in &bounds {
            if frame.cmp(lo, &internal)? != Ordering::Greater && frame.cmp(&internal, hi)? == Ordering::Less {
                inside = true;
                break;
            }
        }
        if inside {
            out.push(k);
        }
    }
    Some(out)
}

/// x-coordinates of the lattice points of the strip
/// `{(x, y) : ξx − y + x̃ ∈ W}` with `k_min ≤ x ≤ k_max`, found line by
/// line: on `x = k` the only candidate is `y = floor(ξk + x̃)`.
pub fn strip_points(sys: &RotationSystem, k_min: i64, k_max: i64) -> Result<PointPattern> {
    sys.check_range(k_min, k_max)?;
    let points = if k_min > k_max {
        Vec::new()
    } else {
        crate::kernel::with_kint!(strip_scan(sys, k_min, k_max))
    };
    Ok(PointPattern {
        points,
        colors: None,
        density: Some(sys.window.length()),
    })
}

/// `D(N) = #{0 ≤ k ≤ N : frac(x̃ + kξ) ∈ W} − N·Length(W)`; for a
/// multi-interval window this is the sum of the per-interval values.
pub fn local_discrepancy(sys: &RotationSystem, n: i64) -> Result<XiReal> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!("N = {n} must be ≥ 0")));
    }
    sys.check_range(0, n)?;
    let hits = window_hit_count(sys, &sys.window, 0, n);
    Ok(XiReal::from_integer(BigInt::from(hits)) - sys.window.length().mul_int(n))
}
