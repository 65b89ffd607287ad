//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use steinberg::algebra::AlgebraElement;
use steinberg::bisection::{BasicBisection, CylSet};
use steinberg::coeff::Gq;
use steinberg::graph::{EdgeId, Graph, Path, VertexId};
use steinberg::point::{GroupoidElement, Point};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn p(g: &Graph, s: &str) -> Path {
    steinberg::text::parse_path(s, g).unwrap()
}

pub fn bb(g: &Graph, mu: &str, nu: &str) -> BasicBisection {
    BasicBisection::new(p(g, mu), p(g, nu)).unwrap()
}

pub fn el(g: &Graph, text: &str) -> AlgebraElement {
    steinberg::text::parse_element(text, g).unwrap()
}

/// The graph with vertices `v, w` and edges `e: w -> v`, `f: v -> w`, plus a
/// loop `l` at `v`.
pub fn two_cycle_with_loop() -> Graph {
    Graph::from_lists(&["v", "w"], &[("e", "v", "w"), ("f", "w", "v"), ("l", "v", "v")]).unwrap()
}

/// Every graph with at most 3 vertices and at most 5 edges in which every
/// vertex receives an edge, one per isomorphism class.
pub fn all_small_graphs() -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=3usize {
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|r| (0..n).map(move |s| (r, s))).collect();
        let mut seen = BTreeSet::new();
        for m in n..=5usize {
            let mut multiset = Vec::new();
            multisets(&slots, m, 0, &mut multiset, &mut |edges| {
                if (0..n).any(|v| !edges.iter().any(|&(r, _)| r == v)) {
                    return;
                }
                let canon = canonical_form(n, edges);
                if seen.insert(canon.clone()) {
                    out.push(build_graph(n, &canon));
                }
            });
        }
    }
    out
}

type Visit<'a> = dyn FnMut(&[(usize, usize)]) + 'a;

fn multisets(slots: &[(usize, usize)], m: usize, from: usize, cur: &mut Vec<(usize, usize)>, f: &mut Visit) {
    if cur.len() == m {
        f(cur);
        return;
    }
    for i in from..slots.len() {
        cur.push(slots[i]);
        multisets(slots, m, i, cur, f);
        cur.pop();
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for perm in permutations(n - 1) {
        for i in 0..n {
            let mut q = perm.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn canonical_form(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    permutations(n)
        .into_iter()
        .map(|perm| {
            let mut e: Vec<(usize, usize)> = edges.iter().map(|&(r, s)| (perm[r], perm[s])).collect();
            e.sort();
            e
        })
        .min()
        .expect("nonempty")
}

fn build_graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    let vnames: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let enames: Vec<String> = (0..edges.len()).map(|i| format!("e{i}")).collect();
    let vs: Vec<&str> = vnames.iter().map(String::as_str).collect();
    let es: Vec<(&str, &str, &str)> =
        edges.iter().enumerate().map(|(i, &(r, s))| (enames[i].as_str(), vs[r], vs[s])).collect();
    Graph::from_lists(&vs, &es).unwrap()
}

/// All closed paths of length `1..=max_len`.
pub fn cycles_up_to(g: &Graph, max_len: usize) -> Vec<Path> {
    g.paths_up_to(max_len).into_iter().filter(|c| !c.is_empty() && c.is_cycle()).collect()
}

/// Canonical eventually periodic points with head at most `max_head` edges
/// and primitive cycle at most `max_cycle` edges.
pub fn small_points(g: &Graph, max_head: usize, max_cycle: usize) -> Vec<Point> {
    let cycles = cycles_up_to(g, max_cycle);
    let heads = g.paths_up_to(max_head);
    let mut out = BTreeSet::new();
    for c in &cycles {
        for h in &heads {
            if h.source() != c.range() {
                continue;
            }
            if let Point::EvPer(x) = Point::ev_per(h.clone(), c.clone()).unwrap() {
                if x.head().len() <= max_head && x.cycle().len() <= max_cycle {
                    out.insert(Point::EvPer(x));
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Tail class of an eventually periodic point: the least rotation of its
/// cycle.
pub fn tail_class(x: &Point) -> Vec<EdgeId> {
    let Point::EvPer(p) = x else { panic!("eventually periodic points only") };
    let c = p.cycle();
    (0..c.len()).map(|j| c.rotate_front(j).edges().to_vec()).min().expect("nonempty cycle")
}

/// All `(x, n, y)` with `x ∈ xs`, `y ∈ ys`, `|n| ≤ nmax`.
pub fn elements_between(xs: &[Point], ys: &[Point], nmax: i64) -> Vec<GroupoidElement> {
    let mut by_class: BTreeMap<Vec<EdgeId>, Vec<&Point>> = BTreeMap::new();
    for y in ys {
        by_class.entry(tail_class(y)).or_default().push(y);
    }
    let mut out = Vec::new();
    for x in xs {
        for y in by_class.get(&tail_class(x)).into_iter().flatten() {
            let lag = x.lag_to(y).expect("same class");
            for n in -nmax..=nmax {
                if lag.admits(n) {
                    out.push(GroupoidElement::new(x.clone(), n, (*y).clone()).unwrap());
                }
            }
        }
    }
    out
}

/// `(f * g)(γ) = ∑_{r(α) = r(γ)} f(α) g(α⁻¹γ)`, the sum running over the
/// elements of `supp f` with range `r(γ)`.
pub fn convolution(f: &AlgebraElement, g: &AlgebraElement, gamma: &GroupoidElement) -> Gq {
    let x = gamma.range();
    let mut alphas = BTreeSet::new();
    for (key, _) in f.terms() {
        if !x.starts_with(key.mu()) {
            continue;
        }
        let tail = x.shift(key.mu().len());
        let y = tail.prepend(key.nu()).unwrap();
        alphas.insert(GroupoidElement::new(x.clone(), key.degree(), y).unwrap());
    }
    let mut total = Gq::zero();
    for alpha in alphas {
        let rest = alpha.inverse().compose(gamma).expect("ranges agree");
        total = total + f.eval(&alpha) * g.eval(&rest);
    }
    total
}

/// Pointwise value of a raw (possibly overlapping) sum.
pub fn eval_raw(terms: &[(BasicBisection, Gq)], gamma: &GroupoidElement) -> Gq {
    terms.iter().filter(|(k, _)| k.contains(gamma)).fold(Gq::zero(), |acc, (_, c)| acc + c.clone())
}

/// Random path of length at most `max_len` with range `r`.
pub fn random_path_from(g: &Graph, rng: &mut ChaCha8Rng, r: VertexId, max_len: usize) -> Path {
    let len = rng.gen_range(0..=max_len);
    let mut path = Path::vertex(r);
    for _ in 0..len {
        let e = *g.edges_into(path.source()).choose(rng).unwrap();
        path = path.extended(g, e).unwrap();
    }
    path
}

/// Random path of length at most `max_len` with source `s` (shorter when
/// no edge leaves the current range backwards).
pub fn random_path_to(g: &Graph, rng: &mut ChaCha8Rng, s: VertexId, max_len: usize) -> Path {
    let len = rng.gen_range(0..=max_len);
    let mut edges: Vec<EdgeId> = Vec::new();
    let mut cur = s;
    for _ in 0..len {
        let options: Vec<EdgeId> = g.edges().filter(|&e| g.s(e) == cur).collect();
        let Some(&e) = options.choose(rng) else { break };
        edges.push(e);
        cur = g.r(e);
    }
    edges.reverse();
    if edges.is_empty() {
        Path::vertex(s)
    } else {
        Path::from_edges(g, &edges).unwrap()
    }
}

pub fn random_vertex(g: &Graph, rng: &mut ChaCha8Rng) -> VertexId {
    VertexId(rng.gen_range(0..g.vertex_count() as u32))
}

pub fn random_key(g: &Graph, rng: &mut ChaCha8Rng, max_len: usize) -> BasicBisection {
    let r = random_vertex(g, rng);
    let mu = random_path_from(g, rng, r, max_len);
    let nu = random_path_to(g, rng, mu.source(), max_len);
    BasicBisection::new(mu, nu).unwrap()
}

/// Degree-0 key, handy for closure tests.
pub fn random_key_of_degree(g: &Graph, rng: &mut ChaCha8Rng, max_len: usize, degree: i64) -> Option<BasicBisection> {
    for _ in 0..50 {
        let k = random_key(g, rng, max_len);
        if k.degree() == degree {
            return Some(k);
        }
    }
    None
}

pub fn random_coeff(rng: &mut ChaCha8Rng) -> Gq {
    loop {
        let c = Gq::from_ints(rng.gen_range(-2..=2), rng.gen_range(-2..=2));
        let c = if rng.gen_bool(0.2) { c / Gq::from_int(rng.gen_range(2..=3)) } else { c };
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn random_terms(g: &Graph, rng: &mut ChaCha8Rng, max_keys: usize, max_len: usize) -> Vec<(BasicBisection, Gq)> {
    let n = rng.gen_range(1..=max_keys);
    (0..n).map(|_| (random_key(g, rng, max_len), random_coeff(rng))).collect()
}

pub fn random_element(g: &Graph, rng: &mut ChaCha8Rng, max_keys: usize, max_len: usize) -> AlgebraElement {
    AlgebraElement::normalize(g, random_terms(g, rng, max_keys, max_len))
}

pub fn random_nonzero_element(g: &Graph, rng: &mut ChaCha8Rng, max_keys: usize, max_len: usize) -> AlgebraElement {
    loop {
        let f = random_element(g, rng, max_keys, max_len);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Replaces random terms by their sibling families, repeatedly.
pub fn split_randomly(g: &Graph, rng: &mut ChaCha8Rng, terms: &[(BasicBisection, Gq)], rounds: usize) -> Vec<(BasicBisection, Gq)> {
    let mut cur = terms.to_vec();
    for _ in 0..rounds {
        if cur.is_empty() {
            break;
        }
        let i = rng.gen_range(0..cur.len());
        let (k, c) = cur.swap_remove(i);
        for child in k.children(g) {
            cur.push((child, c.clone()));
        }
    }
    cur.shuffle(rng);
    cur
}

pub fn terms_of(f: &AlgebraElement) -> Vec<(BasicBisection, Gq)> {
    f.terms().map(|(k, c)| (k.clone(), c.clone())).collect()
}

pub fn one() -> Gq {
    Gq::one()
}

/// Points of `pts` lying in the union of the unit cylinders `Z(p)`.
pub fn points_in(pts: &[Point], cyl: &[Path]) -> Vec<Point> {
    pts.iter().filter(|x| cyl.iter().any(|p| x.starts_with(p))).cloned().collect()
}

/// Range and source paths of the keys.
pub fn range_paths(set: &CylSet) -> Vec<Path> {
    set.members().iter().map(|b| b.mu().clone()).collect()
}

pub fn source_paths(set: &CylSet) -> Vec<Path> {
    set.members().iter().map(|b| b.nu().clone()).collect()
}

/// Points grouped by tail class.
pub fn group_by_class(pts: &[Point]) -> BTreeMap<Vec<EdgeId>, Vec<Point>> {
    let mut out: BTreeMap<Vec<EdgeId>, Vec<Point>> = BTreeMap::new();
    for y in pts {
        out.entry(tail_class(y)).or_default().push(y.clone());
    }
    out
}

/// Number of admissible `n` with `|n| ≤ nmax`.
pub fn lag_count(x: &Point, y: &Point, nmax: i64) -> usize {
    let lag = x.lag_to(y).expect("same class");
    (-nmax..=nmax).filter(|&n| lag.admits(n)).count()
}

/// Size of `elements_between(xs, ys, nmax)` without building it, or `None`
/// once it exceeds `cap`.
pub fn count_elements_up_to(
    xs: &[Point],
    ys: &BTreeMap<Vec<EdgeId>, Vec<Point>>,
    nmax: i64,
    cap: usize,
) -> Option<usize> {
    let mut total = 0;
    for x in xs {
        for y in ys.get(&tail_class(x)).into_iter().flatten() {
            total += lag_count(x, y, nmax);
            if total > cap {
                return None;
            }
        }
    }
    Some(total)
}

/// Small named graphs used across the suites.
pub fn test_graphs() -> Vec<(&'static str, Graph)> {
    vec![
        ("R2", Graph::rose(2)),
        ("R3", Graph::rose(3)),
        ("C1", Graph::single_loop()),
        ("v<->w", Graph::two_cycle()),
        ("v<->w+loop", two_cycle_with_loop()),
        ("3-vertex", three_vertex()),
    ]
}

/// A 3-cycle `u -> w -> v -> u` with a loop at `u`.
pub fn three_vertex() -> Graph {
    Graph::from_lists(&["u", "v", "w"], &[("a", "u", "v"), ("b", "v", "w"), ("c", "w", "u"), ("d", "u", "u")]).unwrap()
}

/// Elements between `xs` and the class-grouped `ys`: all of them when there
/// are at most `cap`, otherwise `cap` random ones.
pub fn elements_capped(
    xs: &[Point],
    ys: &BTreeMap<Vec<EdgeId>, Vec<Point>>,
    nmax: i64,
    cap: usize,
    rng: &mut ChaCha8Rng,
) -> (Vec<GroupoidElement>, bool) {
    if count_elements_up_to(xs, ys, nmax, cap).is_some() {
        let flat: Vec<Point> = ys.values().flatten().cloned().collect();
        return (elements_between(xs, &flat, nmax), true);
    }
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < cap && tries < 50 * cap {
        tries += 1;
        let Some(x) = xs.choose(rng) else { break };
        let Some(y) = ys.get(&tail_class(x)).and_then(|c| c.choose(rng)) else { continue };
        let lag = x.lag_to(y).unwrap();
        let ns: Vec<i64> = (-nmax..=nmax).filter(|&n| lag.admits(n)).collect();
        let Some(&n) = ns.choose(rng) else { continue };
        out.push(GroupoidElement::new(x.clone(), n, y.clone()).unwrap());
    }
    (out, false)
}

/// A point of `Z(path)`: extend along first incoming edges until a vertex
/// repeats.
pub fn point_in(g: &Graph, path: &Path) -> Point {
    let mut tail = Path::vertex(path.source());
    let mut seen = vec![path.source()];
    loop {
        let e = g.edges_into(tail.source())[0];
        tail = tail.extended(g, e).unwrap();
        if let Some(i) = seen.iter().position(|&v| v == tail.source()) {
            let head = path.compose(&tail.take_front(i)).unwrap();
            return Point::ev_per(head, tail.drop_front(i)).unwrap();
        }
        seen.push(tail.source());
    }
}
