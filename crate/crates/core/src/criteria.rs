//! Exact decision procedures for bounded discrepancy.
//!
//! Two boundary lines `ξx − y = c₁` and `ξx − y = c₂` of a strip are
//! related by a lattice translation `(u, v) ∈ Z²` iff
//! `c₂ − c₁ = ξu − v`, i.e. iff their intercepts differ by an element of
//! `Z + Zξ`. Everything in this module reduces to that membership test on
//! window endpoints.

use serde::Serialize;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactnum::XiReal;
use crate::patterns::Window;

/// `Length(I) = kξ + m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KestenWitness {
    #[serde(serialize_with = "ser_big")]
    pub k: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub m: BigInt,
}

/// `b_{σ(ℓ)} − a_ℓ = k_ℓ ξ + m_ℓ` for every interval `ℓ` (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrenWitness {
    pub sigma: Vec<usize>,
    #[serde(serialize_with = "ser_big_vec")]
    pub ks: Vec<BigInt>,
    #[serde(serialize_with = "ser_big_vec")]
    pub ms: Vec<BigInt>,
}

impl OrenWitness {
    /// Re-derives every difference exactly.
    pub fn verify(&self, w: &Window) -> bool {
        let ivs = w.intervals();
        self.sigma.len() == ivs.len()
            && self.sigma.iter().enumerate().all(|(l, &s)| {
                let diff = &ivs[s].hi - &ivs[l].lo;
                diff.z_plus_zxi_coords() == Some((self.ks[l].clone(), self.ms[l].clone()))
            })
    }
}

fn ser_big<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_big_vec<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|b| b.to_string()))
}

pub fn kesten_condition(w: &Window) -> Result<Option<KestenWitness>> {
    match w.intervals() {
        [iv] => Ok(iv.length().z_plus_zxi_coords().map(|(k, m)| KestenWitness { k, m })),
        ivs => Err(Error::MultiIntervalWindow(ivs.len())),
    }
}

/// Perfect matching of left endpoints to right endpoints along edges
/// `b_j − a_ℓ ∈ Z + Zξ`, by augmenting paths.
pub fn oren_condition(w: &Window) -> Option<OrenWitness> {
    let ivs = w.intervals();
    let n = ivs.len();
    let adj: Vec<Vec<usize>> = ivs
        .iter()
        .map(|left| {
            (0..n)
                .filter(|&j| (&ivs[j].hi - &left.lo).in_z_plus_zxi().is_some())
                .collect()
        })
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for l in 0..n {
        let mut seen = vec![false; n];
        if !augment(l, &adj, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut sigma = vec![0; n];
    for (j, o) in owner.iter().enumerate() {
        sigma[o.expect("perfect matching")] = j;
    }
    let (ks, ms) = sigma
        .iter()
        .enumerate()
        .map(|(l, &j)| (&ivs[j].hi - &ivs[l].lo).z_plus_zxi_coords().expect("matched along an edge"))
        .unzip();
    Some(OrenWitness { sigma, ks, ms })
}

fn augment(l: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
    for &j in &adj[l] {
        if seen[j] {
            continue;
        }
        seen[j] = true;
        if owner[j].is_none_or(|other| augment(other, adj, seen, owner)) {
            owner[j] = Some(l);
            return true;
        }
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndpointRef {
    pub interval: usize,
    pub side: Side,
    #[serde(serialize_with = "ser_display")]
    pub value: XiReal,
}

fn ser_display<S: serde::Serializer, T: std::fmt::Display>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryClass {
    pub members: Vec<EndpointRef>,
    pub left: usize,
    pub right: usize,
}

impl BoundaryClass {
    pub fn balanced(&self) -> bool {
        self.left == self.right
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryClassReport {
    pub n: usize,
    pub classes: Vec<BoundaryClass>,
}

impl BoundaryClassReport {
    pub fn all_balanced(&self) -> bool {
        self.classes.iter().all(BoundaryClass::balanced)
    }
}

/// Endpoints that bound the strip. When the window has an interval
/// starting at 0 and one ending at 1, the two are one interval on the
/// circle and those two endpoints are not boundaries.
fn strip_boundaries(w: &Window) -> Vec<EndpointRef> {
    let ivs = w.intervals();
    let zero = XiReal::zero();
    let one = XiReal::one();
    let glued = ivs.len() >= 2 && ivs[0].lo == zero && ivs[ivs.len() - 1].hi == one;
    let mut out = Vec::with_capacity(2 * ivs.len());
    for (i, iv) in ivs.iter().enumerate() {
        if !(glued && i == 0) {
            out.push(EndpointRef {
                interval: i,
                side: Side::Left,
                value: iv.lo.clone(),
            });
        }
        if !(glued && i == ivs.len() - 1) {
            out.push(EndpointRef {
                interval: i,
                side: Side::Right,
                value: iv.hi.clone(),
            });
        }
    }
    out
}

/// Partition of the boundary endpoints into classes mod `Z + Zξ`.
pub fn boundary_classes(w: &Window) -> BoundaryClassReport {
    let ends = strip_boundaries(w);
    let mut parent: Vec<usize> = (0..ends.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..ends.len() {
        for j in i + 1..ends.len() {
            if (&ends[j].value - &ends[i].value).in_z_plus_zxi().is_some() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[b.max(a)] = a.min(b);
                }
            }
        }
    }
    let mut classes: Vec<(usize, BoundaryClass)> = Vec::new();
    for (i, e) in ends.into_iter().enumerate() {
        let root = find(&mut parent, i);
        let pos = match classes.iter().position(|(r, _)| *r == root) {
            Some(p) => p,
            None => {
                classes.push((
                    root,
                    BoundaryClass {
                        members: Vec::new(),
                        left: 0,
                        right: 0,
                    },
                ));
                classes.len() - 1
            }
        };
        let class = &mut classes[pos].1;
        match e.side {
            Side::Left => class.left += 1,
            Side::Right => class.right += 1,
        }
        class.members.push(e);
    }
    let classes: Vec<BoundaryClass> = classes.into_iter().map(|(_, c)| c).collect();
    BoundaryClassReport {
        n: classes.len(),
        classes,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Bounded,
    Unbounded,
}

/// Ranks attached to a window with `n` boundary classes: `H¹` of the
/// cut torus has rank `n + 1`, bounded-discrepancy classes span a
/// rank-2 subspace, and the quotient has dimension `n − 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub condition: &'static str,
    pub verdict: Verdict,
    pub n: usize,
    pub h1_rank: usize,
    pub bounded_subspace_rank: usize,
    pub h1_ud_dim: usize,
    pub kesten: Option<KestenWitness>,
    pub oren: Option<OrenWitness>,
    pub classes: BoundaryClassReport,
}

pub const BOUNDED_SUBSPACE_RANK: usize = 2;

/// Bounded iff every boundary class has as many left as right endpoints;
/// the Oren matching is computed alongside and must agree.
pub fn bd_verdict(w: &Window) -> Result<CohomologyReport> {
    if w.is_empty() {
        return Err(Error::InvalidWindow("empty window has no strip".into()));
    }
    let classes = boundary_classes(w);
    let oren = oren_condition(w);
    let balanced = classes.all_balanced();
    assert_eq!(
        balanced,
        oren.is_some(),
        "class balance and Oren matching disagree on {w}"
    );
    let kesten = if w.len() == 1 { kesten_condition(w)? } else { None };
    let n = classes.n;
    Ok(CohomologyReport {
        condition: if w.len() == 1 { "kesten" } else { "oren" },
        verdict: if balanced { Verdict::Bounded } else { Verdict::Unbounded },
        n,
        h1_rank: n + 1,
        bounded_subspace_rank: BOUNDED_SUBSPACE_RANK,
        h1_ud_dim: n - 1,
        kesten,
        oren,
        classes,
    })
}
