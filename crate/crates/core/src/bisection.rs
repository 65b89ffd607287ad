//! Compact open graded bisections `Z(mu, nu)` and finite disjoint unions of
//! them.
//!
//! `Z(mu, nu) = {(mu·x, |mu| - |nu|, nu·x) : r(x) = s(mu)}`. Two nonempty
//! cylinders are either nested or disjoint, which makes every operation here
//! exact and symbolic.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, Path};
use crate::point::GroupoidElement;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BasicBisection {
    mu: Path,
    nu: Path,
}

impl Ord for BasicBisection {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.mu.cmp(&other.mu))
            .then_with(|| self.nu.cmp(&other.nu))
    }
}

impl PartialOrd for BasicBisection {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BasicBisection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}|{:?}]", self.mu, self.nu)
    }
}

impl BasicBisection {
    pub fn new(mu: Path, nu: Path) -> Result<BasicBisection> {
        if mu.source() != nu.source() {
            return Err(Error::NotComposable(format!("s({mu:?}) != s({nu:?})")));
        }
        Ok(BasicBisection { mu, nu })
    }

    /// The unit cylinder `Z(p) = Z(p, p)`.
    pub fn unit(p: Path) -> BasicBisection {
        BasicBisection { mu: p.clone(), nu: p }
    }

    pub fn mu(&self) -> &Path {
        &self.mu
    }

    pub fn nu(&self) -> &Path {
        &self.nu
    }

    pub fn degree(&self) -> i64 {
        self.mu.len() as i64 - self.nu.len() as i64
    }

    pub fn is_unit_cylinder(&self) -> bool {
        self.mu == self.nu
    }

    /// `max(|mu|, |nu|)`.
    pub fn depth(&self) -> usize {
        self.mu.len().max(self.nu.len())
    }

    pub fn inverse(&self) -> BasicBisection {
        BasicBisection { mu: self.nu.clone(), nu: self.mu.clone() }
    }

    /// Set product `Z(a,b)·Z(c,d)`: `Z(a·c', d)` when `c = b·c'`,
    /// `Z(a, d·b')` when `b = c·b'`, empty otherwise.
    pub fn mul(&self, other: &BasicBisection) -> Option<BasicBisection> {
        if let Some(rest) = other.mu.strip_prefix(&self.nu) {
            let mu = self.mu.compose(&rest).expect("sources agree");
            return Some(BasicBisection { mu, nu: other.nu.clone() });
        }
        if let Some(rest) = self.nu.strip_prefix(&other.mu) {
            let nu = other.nu.compose(&rest).expect("sources agree");
            return Some(BasicBisection { mu: self.mu.clone(), nu });
        }
        None
    }

    /// Nonempty exactly when one key extends the other by a common tail;
    /// the longer key is then the intersection.
    pub fn intersect(&self, other: &BasicBisection) -> Option<BasicBisection> {
        if self.degree() != other.degree() {
            return None;
        }
        let (short, long) = if self.mu.len() <= other.mu.len() { (self, other) } else { (other, self) };
        let k1 = long.mu.strip_prefix(&short.mu)?;
        let k2 = long.nu.strip_prefix(&short.nu)?;
        (k1 == k2).then(|| long.clone())
    }

    /// True when `self = Z(mu·k, nu·k)` for `other = Z(mu, nu)` (possibly
    /// `k` empty). Implies `self ⊆ other`.
    pub fn extends(&self, other: &BasicBisection) -> bool {
        match (self.mu.strip_prefix(&other.mu), self.nu.strip_prefix(&other.nu)) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }

    /// `Z(mu, nu)` for `self = Z(mu·e, nu·e)`.
    pub fn parent(&self) -> Option<BasicBisection> {
        match (self.mu.last_edge(), self.nu.last_edge()) {
            (Some(a), Some(b)) if a == b => Some(BasicBisection {
                mu: self.mu.drop_last().expect("nonempty"),
                nu: self.nu.drop_last().expect("nonempty"),
            }),
            _ => None,
        }
    }

    /// Strict key ancestors, nearest first.
    pub fn ancestors(&self) -> impl Iterator<Item = BasicBisection> {
        std::iter::successors(self.parent(), |b| b.parent())
    }

    /// `{Z(mu·e, nu·e) : r(e) = s(mu)}`: a partition of `self`.
    pub fn children(&self, graph: &Graph) -> Vec<BasicBisection> {
        let s = self.mu.source();
        graph
            .edges_into(s)
            .iter()
            .map(|&e| BasicBisection {
                mu: self.mu.clone().extended(graph, e).expect("r(e) = s(mu)"),
                nu: self.nu.clone().extended(graph, e).expect("r(e) = s(nu)"),
            })
            .collect()
    }

    /// Topmost key denoting the same set: climbs while the parent has a
    /// single child.
    pub fn shortest_form(&self, graph: &Graph) -> BasicBisection {
        let mut cur = self.clone();
        while let Some(p) = cur.parent() {
            if graph.in_degree(p.mu.source()) != 1 {
                break;
            }
            cur = p;
        }
        cur
    }

    /// Set equality (keys may differ along single-child chains).
    pub fn same_set(&self, other: &BasicBisection, graph: &Graph) -> bool {
        self.shortest_form(graph) == other.shortest_form(graph)
    }

    /// Set inclusion `self ⊆ other`.
    pub fn is_subset_of(&self, other: &BasicBisection, graph: &Graph) -> bool {
        match self.intersect(other) {
            Some(i) => i.same_set(self, graph),
            None => false,
        }
    }

    pub fn contains(&self, g: &GroupoidElement) -> bool {
        g.degree() == self.degree()
            && g.range().starts_with(&self.mu)
            && g.source().starts_with(&self.nu)
            && g.range().shift(self.mu.len()) == g.source().shift(self.nu.len())
    }

    pub fn render(&self, graph: &Graph) -> String {
        format!("[{}|{}]", self.mu.render(graph), self.nu.render(graph))
    }
}

pub fn mul_basic(a: &BasicBisection, b: &BasicBisection) -> Option<BasicBisection> {
    a.mul(b)
}

pub fn inv_basic(a: &BasicBisection) -> BasicBisection {
    a.inverse()
}

pub fn intersect_basic(a: &BasicBisection, b: &BasicBisection) -> Option<BasicBisection> {
    a.intersect(b)
}

pub fn expand_siblings(graph: &Graph, a: &BasicBisection) -> Vec<BasicBisection> {
    a.children(graph)
}

/// Refines weighted keys into pairwise disjoint keys. A key is split into
/// its children exactly when another key lies strictly below it; weights
/// landing on the same key are combined.
pub(crate) fn refine<T>(
    graph: &Graph,
    items: impl IntoIterator<Item = (BasicBisection, T)>,
    mut combine: impl FnMut(&mut T, T),
    split: impl Fn(&T) -> T,
) -> HashMap<BasicBisection, T> {
    let mut map: HashMap<BasicBisection, T> = HashMap::new();
    // number of stored keys strictly below each key
    let mut below: HashMap<BasicBisection, usize> = HashMap::new();
    let mut stack: Vec<(BasicBisection, T)> = items.into_iter().collect();
    stack.reverse();

    while let Some((key, w)) = stack.pop() {
        if let Some(anc) = key.ancestors().find(|a| map.contains_key(a)) {
            let d = map.remove(&anc).expect("present");
            for a in anc.ancestors() {
                let c = below.get_mut(&a).expect("marked");
                *c -= 1;
            }
            stack.push((key, w));
            for child in anc.children(graph) {
                let part = split(&d);
                stack.push((child, part));
            }
            continue;
        }
        if below.get(&key).copied().unwrap_or(0) > 0 {
            for child in key.children(graph) {
                stack.push((child, split(&w)));
            }
            continue;
        }
        match map.get_mut(&key) {
            Some(e) => combine(e, w),
            None => {
                for a in key.ancestors() {
                    *below.entry(a).or_insert(0) += 1;
                }
                map.insert(key, w);
            }
        }
    }
    map
}

/// A finite union of basics stored pairwise disjoint.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CylSet {
    members: Vec<BasicBisection>,
}

impl fmt::Debug for CylSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.iter()).finish()
    }
}

impl CylSet {
    pub fn empty() -> CylSet {
        CylSet::default()
    }

    /// Disjointifies the given cover; the result refines it.
    pub fn new(graph: &Graph, members: impl IntoIterator<Item = BasicBisection>) -> CylSet {
        disjointify(graph, members)
    }

    pub fn single(b: BasicBisection) -> CylSet {
        CylSet { members: vec![b] }
    }

    /// Caller guarantees pairwise disjointness.
    pub(crate) fn from_disjoint(mut members: Vec<BasicBisection>) -> CylSet {
        members.sort();
        members.dedup();
        CylSet { members }
    }

    pub fn members(&self) -> &[BasicBisection] {
        &self.members
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_bisection(&self) -> bool {
        is_bisection(self)
    }

    /// Every member is a unit cylinder `Z(p, p)`.
    pub fn is_unit_set(&self) -> bool {
        self.members.iter().all(BasicBisection::is_unit_cylinder)
    }

    pub fn contains(&self, g: &GroupoidElement) -> bool {
        member(g, self)
    }

    pub fn inverse(&self) -> CylSet {
        CylSet::from_disjoint(self.members.iter().map(BasicBisection::inverse).collect())
    }

    /// Set product `{ab : a ∈ self, b ∈ other, s(a) = r(b)}`.
    pub fn product(&self, graph: &Graph, other: &CylSet) -> CylSet {
        let pieces = self.members.iter().flat_map(|a| other.members.iter().filter_map(move |b| a.mul(b)));
        CylSet::new(graph, pieces.collect::<Vec<_>>())
    }

    /// `{Z(mu) : Z(mu, nu) member}` disjointified.
    pub fn range_set(&self, graph: &Graph) -> CylSet {
        CylSet::new(graph, self.members.iter().map(|b| BasicBisection::unit(b.mu.clone())).collect::<Vec<_>>())
    }

    pub fn source_set(&self, graph: &Graph) -> CylSet {
        CylSet::new(graph, self.members.iter().map(|b| BasicBisection::unit(b.nu.clone())).collect::<Vec<_>>())
    }

    pub fn render(&self, graph: &Graph) -> String {
        let parts: Vec<String> = self.members.iter().map(|b| b.render(graph)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// Replaces a finite cover by pairwise disjoint basics with the same union,
/// each contained in some input, each contained in every input it meets.
pub fn disjointify(graph: &Graph, cover: impl IntoIterator<Item = BasicBisection>) -> CylSet {
    let map = refine(graph, cover.into_iter().map(|b| (b, ())), |_, _| {}, |_| ());
    CylSet::from_disjoint(map.into_keys().collect())
}

/// Range and source cylinders of the members are each pairwise disjoint.
pub fn is_bisection(set: &CylSet) -> bool {
    let overlap = |p: &Path, q: &Path| p.is_prefix_of(q) || q.is_prefix_of(p);
    let m = &set.members;
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            if overlap(&m[i].mu, &m[j].mu) || overlap(&m[i].nu, &m[j].nu) {
                return false;
            }
        }
    }
    true
}

pub fn member(g: &GroupoidElement, set: &CylSet) -> bool {
    set.members.iter().any(|b| b.contains(g))
}
