//! The Steinberg algebra of a graph groupoid: finitely supported locally
//! constant functions, stored as canonical sums of cylinder indicators.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::bisection::{refine, BasicBisection, CylSet};
use crate::coeff::{Gq, Scalar};
use crate::graph::{Graph, Path};
use crate::point::GroupoidElement;

/// `∑ a_U 1_U` in canonical form: keys pairwise disjoint, no zero
/// coefficients, and no complete sibling family with equal coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement<K = Gq> {
    terms: BTreeMap<BasicBisection, K>,
}

impl<K: Scalar> Default for AlgebraElement<K> {
    fn default() -> Self {
        AlgebraElement { terms: BTreeMap::new() }
    }
}

impl<K: Scalar> fmt::Debug for AlgebraElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, c)| format!("{c:?}{k:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<K: Scalar> AlgebraElement<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `1_U` for a single basic.
    pub fn indicator(graph: &Graph, b: BasicBisection) -> Self {
        Self::normalize(graph, [(b, K::one())])
    }

    /// `1 = ∑_v 1_{Z(v)}`.
    pub fn unit(graph: &Graph) -> Self {
        Self::normalize(graph, graph.vertices().map(|v| (BasicBisection::unit(Path::vertex(v)), K::one())))
    }

    /// `c·1_{K}` for a disjoint set.
    pub fn from_set(graph: &Graph, set: &CylSet, c: K) -> Self {
        Self::normalize(graph, set.members().iter().map(|b| (b.clone(), c.clone())))
    }

    /// Canonical form of a raw sum; pointwise values are preserved.
    pub fn normalize(graph: &Graph, raw: impl IntoIterator<Item = (BasicBisection, K)>) -> Self {
        let refined = refine(graph, raw, |acc, c| *acc = acc.clone() + c, |c| c.clone());
        let mut terms: HashMap<BasicBisection, K> = refined.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        merge_families(graph, &mut terms);
        AlgebraElement { terms: terms.into_iter().collect() }
    }

    /// Canonical keys with their coefficients, ordered by degree, then `mu`,
    /// then `nu`.
    pub fn terms(&self) -> impl Iterator<Item = (&BasicBisection, &K)> {
        self.terms.iter()
    }

    /// Number of keys; zero exactly when `is_zero`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, key: &BasicBisection) -> Option<&K> {
        self.terms.get(key)
    }

    pub fn linear_combine(graph: &Graph, c1: &K, f: &Self, c2: &K, g: &Self) -> Self {
        let raw = f
            .terms
            .iter()
            .map(|(k, a)| (k.clone(), c1.clone() * a.clone()))
            .chain(g.terms.iter().map(|(k, a)| (k.clone(), c2.clone() * a.clone())));
        Self::normalize(graph, raw)
    }

    pub fn add(&self, graph: &Graph, other: &Self) -> Self {
        Self::linear_combine(graph, &K::one(), self, &K::one(), other)
    }

    pub fn sub(&self, graph: &Graph, other: &Self) -> Self {
        Self::linear_combine(graph, &K::one(), self, &-K::one(), other)
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        AlgebraElement { terms: self.terms.iter().map(|(k, a)| (k.clone(), c.clone() * a.clone())).collect() }
    }

    /// Convolution, via `1_U 1_V = 1_{UV}` extended bilinearly.
    pub fn mul(&self, graph: &Graph, other: &Self) -> Self {
        let mut raw = Vec::new();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if let Some(uv) = u.mul(v) {
                    raw.push((uv, a.clone() * b.clone()));
                }
            }
        }
        Self::normalize(graph, raw)
    }

    /// `f*(γ) = conj(f(γ⁻¹))`.
    pub fn star(&self) -> Self {
        AlgebraElement { terms: self.terms.iter().map(|(k, a)| (k.inverse(), a.conj())).collect() }
    }

    /// Restriction to the degree-`n` part of the groupoid.
    pub fn homogeneous_component(&self, n: i64) -> Self {
        AlgebraElement { terms: self.terms.iter().filter(|(k, _)| k.degree() == n).map(|(k, a)| (k.clone(), a.clone())).collect() }
    }

    /// Degrees carrying a nonzero component, ascending.
    pub fn degrees(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self.terms.keys().map(BasicBisection::degree).collect();
        out.dedup();
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    pub fn eval(&self, g: &GroupoidElement) -> K {
        self.terms.iter().filter(|(k, _)| k.contains(g)).fold(K::zero(), |acc, (_, a)| acc + a.clone())
    }

    pub fn support(&self) -> CylSet {
        CylSet::from_disjoint(self.terms.keys().cloned().collect())
    }

    /// Longest path appearing in a key.
    pub fn max_key_length(&self) -> usize {
        self.terms.keys().map(BasicBisection::depth).max().unwrap_or(0)
    }

    /// Left and right multiplication by `1_X`, `1_Y` for unit sets.
    pub fn cut(&self, graph: &Graph, x: &CylSet, y: &CylSet) -> Self {
        let one = |s: &CylSet| Self::from_set(graph, s, K::one());
        one(x).mul(graph, self).mul(graph, &one(y))
    }
}

impl<K: Scalar + fmt::Display> AlgebraElement<K> {
    /// Terms joined by ` + `, e.g. `(1)[v|v] + (-1)[a|v]`; zero prints `0`.
    pub fn render(&self, graph: &Graph) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, c)| format!("{c}{}", k.render(graph))).collect();
        parts.join(" + ")
    }
}

/// Replaces complete sibling families with equal coefficients by their
/// parent, deepest first, until none remain.
fn merge_families<K: Scalar>(graph: &Graph, terms: &mut HashMap<BasicBisection, K>) {
    let mut pending: Vec<BasicBisection> = terms.keys().filter_map(BasicBisection::parent).collect();
    pending.sort_by_key(|p| p.depth());
    pending.dedup();
    while let Some(parent) = pending.pop() {
        if terms.contains_key(&parent) {
            continue;
        }
        let children = parent.children(graph);
        let Some(c) = terms.get(&children[0]).cloned() else { continue };
        if !children.iter().all(|ch| terms.get(ch) == Some(&c)) {
            continue;
        }
        for ch in &children {
            terms.remove(ch);
        }
        if let Some(grand) = parent.parent() {
            pending.push(grand);
        }
        terms.insert(parent, c);
        pending.sort_by_key(|p| p.depth());
    }
}

pub fn normalize<K: Scalar>(graph: &Graph, raw: impl IntoIterator<Item = (BasicBisection, K)>) -> AlgebraElement<K> {
    AlgebraElement::normalize(graph, raw)
}

pub fn mul<K: Scalar>(graph: &Graph, f: &AlgebraElement<K>, g: &AlgebraElement<K>) -> AlgebraElement<K> {
    f.mul(graph, g)
}

pub fn star<K: Scalar>(f: &AlgebraElement<K>) -> AlgebraElement<K> {
    f.star()
}

pub fn homogeneous_component<K: Scalar>(f: &AlgebraElement<K>, n: i64) -> AlgebraElement<K> {
    f.homogeneous_component(n)
}

pub fn eval<K: Scalar>(f: &AlgebraElement<K>, g: &GroupoidElement) -> K {
    f.eval(g)
}

pub fn support<K: Scalar>(f: &AlgebraElement<K>) -> CylSet {
    f.support()
}
