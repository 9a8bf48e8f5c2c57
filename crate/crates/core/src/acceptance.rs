//! Acceptance domains of finite local patterns.
//!
//! A [`PatternSpec`] asks for a set of offsets to be occupied and another
//! set to be empty, relative to an anchor point at offset 0. The point `k`
//! matches when `k + r` is a hit for every required `r` and `k + f` is not
//! a hit for any forbidden `f`. Since `k + r` is a hit iff
//! `frac(x̃ + kξ) ∈ W − rξ (mod 1)`, the matching `k` are exactly those
//! whose internal coordinate lies in
//!
//! ```text
//! W̃ = ⋂_{r ∈ required} (W − rξ)  ∩  ⋂_{f ∈ forbidden} ([0,1) \ (W − fξ))
//! ```
//!
//! Every endpoint of `W̃` is therefore an endpoint of `W` moved by an
//! element of `Z + Zξ`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactnum::{Cursor, XiReal};
use crate::patterns::{window_hit_count, window_hits, PointPattern, RotationSystem, Window};

/// Largest `|offset|` accepted by [`acceptance_domain`].
pub const DEFAULT_OFFSET_BOUND: i64 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PatternSpec {
    required: BTreeSet<i64>,
    forbidden: BTreeSet<i64>,
}

impl PatternSpec {
    /// The anchor offset 0 is always required and is added if missing.
    pub fn new(required: impl IntoIterator<Item = i64>, forbidden: impl IntoIterator<Item = i64>) -> Result<Self> {
        let mut required: BTreeSet<i64> = required.into_iter().collect();
        required.insert(0);
        let forbidden: BTreeSet<i64> = forbidden.into_iter().collect();
        if let Some(both) = required.intersection(&forbidden).next() {
            return Err(Error::InvalidPattern(format!("offset {both} is both required and forbidden")));
        }
        Ok(PatternSpec { required, forbidden })
    }

    /// "A point is present": the pattern whose indicator is the point set.
    pub fn point() -> Self {
        PatternSpec {
            required: [0].into(),
            forbidden: BTreeSet::new(),
        }
    }

    pub fn required(&self) -> &BTreeSet<i64> {
        &self.required
    }

    pub fn forbidden(&self) -> &BTreeSet<i64> {
        &self.forbidden
    }

    pub fn max_abs_offset(&self) -> i64 {
        self.required.iter().chain(&self.forbidden).map(|o| o.abs()).max().unwrap_or(0)
    }

    fn offset_range(&self) -> (i64, i64) {
        let all = self.required.iter().chain(&self.forbidden);
        let lo = all.clone().copied().min().unwrap_or(0);
        let hi = all.copied().max().unwrap_or(0);
        (lo, hi)
    }

    /// Same pattern with `extra` added to the required set.
    pub fn require(&self, extra: i64) -> Result<Self> {
        Self::new(self.required.iter().copied().chain([extra]), self.forbidden.iter().copied())
    }

    /// Same pattern with `extra` added to the forbidden set.
    pub fn forbid(&self, extra: i64) -> Result<Self> {
        Self::new(self.required.iter().copied(), self.forbidden.iter().copied().chain([extra]))
    }
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &BTreeSet<i64>| s.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "require {}", join(&self.required))?;
        if !self.forbidden.is_empty() {
            write!(f, " forbid {}", join(&self.forbidden))?;
        }
        Ok(())
    }
}

impl FromStr for PatternSpec {
    type Err = Error;

    /// `require 0,2 forbid 1`; either clause may be omitted.
    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        let mut required = Vec::new();
        let mut forbidden = Vec::new();
        let mut seen_any = false;
        loop {
            cur.skip_ws();
            if cur.at_end() {
                break;
            }
            let target = if cur.eat_word("require") {
                &mut required
            } else if cur.eat_word("forbid") {
                &mut forbidden
            } else {
                return Err(Error::parse(cur.pos, "expected 'require' or 'forbid'"));
            };
            seen_any = true;
            loop {
                cur.skip_ws();
                let neg = cur.eat('-');
                let pos = cur.pos;
                let v = cur.integer()?;
                let v: i64 = i64::try_from(v).map_err(|_| Error::parse(pos, "offset out of range"))?;
                target.push(if neg { -v } else { v });
                cur.skip_ws();
                if !cur.eat(',') {
                    break;
                }
            }
        }
        if !seen_any {
            return Err(Error::parse(0, "empty pattern spec"));
        }
        PatternSpec::new(required, forbidden)
    }
}

/// Explains one endpoint of an acceptance domain as
/// `window endpoint − offset·ξ + shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndpointOrigin {
    pub value: XiReal,
    /// Index into [`Window::endpoints`] of the defining window.
    pub source: usize,
    pub offset: BigInt,
    pub shift: BigInt,
}

impl fmt::Display for EndpointOrigin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = e{} - ({})*xi + ({})",
            self.value, self.source, self.offset, self.shift
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcceptanceDomain {
    pub window: Window,
    pub provenance: Vec<EndpointOrigin>,
}

impl AcceptanceDomain {
    /// Multi-line report: the intervals, then one provenance line per
    /// endpoint.
    pub fn report(&self) -> String {
        let mut out = format!("acceptance domain: {}\n", self.window);
        for p in &self.provenance {
            out.push_str(&format!("  {p}\n"));
        }
        out
    }
}

fn check_offsets(p: &PatternSpec, bound: i64) -> Result<()> {
    if p.max_abs_offset() > bound {
        return Err(Error::InvalidPattern(format!(
            "offset {} exceeds the bound {bound}",
            p.max_abs_offset()
        )));
    }
    Ok(())
}

/// Acceptance domain with the default offset bound.
pub fn acceptance_domain(sys: &RotationSystem, p: &PatternSpec) -> Result<AcceptanceDomain> {
    acceptance_domain_bounded(sys, p, DEFAULT_OFFSET_BOUND)
}

pub fn acceptance_domain_bounded(sys: &RotationSystem, p: &PatternSpec, bound: i64) -> Result<AcceptanceDomain> {
    check_offsets(p, bound)?;
    let window = domain_window(sys, p);
    let provenance = explain_endpoints(sys, &window)?;
    Ok(AcceptanceDomain { window, provenance })
}

fn domain_window(sys: &RotationSystem, p: &PatternSpec) -> Window {
    let xi = sys.xi();
    let w = sys.window();
    let moved = |r: i64| w.shift(xi, &XiReal::xi().mul_int(-r));
    // 0 is always required, so start from W itself
    let mut acc = w.clone();
    for &r in p.required.iter().filter(|&&r| r != 0) {
        acc = acc.intersect(xi, &moved(r));
    }
    for &f in &p.forbidden {
        acc = acc.intersect(xi, &moved(f).complement(xi));
    }
    acc
}

fn explain_endpoints(sys: &RotationSystem, domain: &Window) -> Result<Vec<EndpointOrigin>> {
    let sources = sys.window().endpoints();
    domain
        .endpoints()
        .into_iter()
        .map(|value| {
            sources
                .iter()
                .enumerate()
                .find_map(|(j, e)| {
                    (&value - e).z_plus_zxi_coords().map(|(k, m)| EndpointOrigin {
                        value: value.clone(),
                        source: j,
                        offset: -k,
                        shift: m,
                    })
                })
                .ok_or_else(|| Error::InvalidWindow(format!("endpoint {value} has no origin in the window")))
        })
        .collect()
}

/// The `k ∈ [k_min, k_max]` at which the pattern occurs.
pub fn indicator_hits(sys: &RotationSystem, p: &PatternSpec, k_min: i64, k_max: i64) -> Result<PointPattern> {
    check_offsets(p, DEFAULT_OFFSET_BOUND)?;
    let (lo, hi) = p.offset_range();
    sys.check_range(k_min.saturating_add(lo), k_max.saturating_add(hi))?;
    let domain = domain_window(sys, p);
    let points = window_hits(sys, &domain, k_min, k_max).into_iter().map(|(k, _)| k).collect();
    Ok(PointPattern::new(points)?.with_density(domain.length()))
}

pub(crate) fn indicator_hit_count(sys: &RotationSystem, p: &PatternSpec, k_min: i64, k_max: i64) -> Result<u64> {
    check_offsets(p, DEFAULT_OFFSET_BOUND)?;
    let (lo, hi) = p.offset_range();
    sys.check_range(k_min.saturating_add(lo), k_max.saturating_add(hi))?;
    Ok(window_hit_count(sys, &domain_window(sys, p), k_min, k_max))
}

/// Frequency of the pattern: the length of its acceptance domain.
pub fn pattern_density(sys: &RotationSystem, p: &PatternSpec) -> Result<XiReal> {
    check_offsets(p, DEFAULT_OFFSET_BOUND)?;
    Ok(domain_window(sys, p).length())
}
