//! Isotropy, the entrance condition on cycles, and certificates showing
//! that a nonzero element generates an ideal containing some `1_K`.

use num::Zero;

use crate::algebra::AlgebraElement;
use crate::bisection::{BasicBisection, CylSet};
use crate::coeff::Gq;
use crate::error::{Error, Result};
use crate::graph::{Graph, Path, VertexId};
use crate::point::{AperiodicPoint, Point};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropyReport {
    pub point: Point,
    /// Generator of `uGu` inside `Z`; `0` is the trivial group.
    pub generator: u64,
}

pub fn isotropy_group(u: &Point) -> IsotropyReport {
    IsotropyReport { point: u.clone(), generator: u.isotropy_generator() }
}

/// Every cycle has an entrance: no cycle runs entirely through vertices
/// with a single incoming edge.
pub fn condition_l(graph: &Graph) -> bool {
    let n = graph.vertex_count();
    // next(v) = s(e) for the unique e into v
    let next = |v: VertexId| -> Option<VertexId> {
        match graph.edges_into(v) {
            [e] => Some(graph.s(*e)),
            _ => None,
        }
    };
    // 0 = unvisited, 1 = on current walk, 2 = done
    let mut state = vec![0u8; n];
    for start in graph.vertices() {
        let mut walk = Vec::new();
        let mut cur = Some(start);
        while let Some(v) = cur {
            match state[v.index()] {
                1 => return false,
                2 => break,
                _ => {}
            }
            state[v.index()] = 1;
            walk.push(v);
            cur = next(v);
        }
        for v in walk {
            state[v.index()] = 2;
        }
    }
    true
}

/// A point of trivial isotropy inside `Z(mu)`, built from two distinct
/// first-return cycles at a vertex reachable from `s(mu)`.
pub fn trivial_isotropy_witness(graph: &Graph, mu: &Path) -> Option<Point> {
    let mut order: Vec<(usize, VertexId, Path)> = graph
        .vertices()
        .filter_map(|c| graph.shortest_path(mu.source(), c).map(|k| (k.len(), c, k)))
        .collect();
    order.sort_by_key(|(d, c, _)| (*d, *c));
    for (_, c, kappa) in order {
        let cycles: Vec<Path> = graph
            .edges_into(c)
            .iter()
            .filter_map(|&e| {
                let back = graph.shortest_path(graph.s(e), c)?;
                let head = Path::from_edges(graph, &[e]).ok()?;
                head.compose(&back).ok()
            })
            .take(2)
            .collect();
        if let [first, second] = &cycles[..] {
            let seed = AperiodicPoint::fibonacci(first.clone(), second.clone()).ok()?;
            let prefix = mu.compose(&kappa).ok()?;
            return Point::from(seed).prepend(&prefix).ok();
        }
    }
    None
}

/// `1_{X0} · f · 1_{Y0} = c·1_B` with `B` a bisection and
/// `(c·1_B)^*(c·1_B) = |c|²·1_K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// Present for graded certificates.
    pub grade: Option<i64>,
    pub x0: CylSet,
    pub y0: CylSet,
    pub b: CylSet,
    pub c: Gq,
    pub k: CylSet,
    /// Window depth at which the search succeeded.
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CkOutcome {
    Found(Box<Certificate>),
    Exhausted(usize),
}

fn unit_set(p: Path) -> CylSet {
    CylSet::single(BasicBisection::unit(p))
}

/// Component used by the graded certificate: the nonzero component of
/// smallest `|k|`, ties toward positive `k`.
pub fn graded_component(g: &AlgebraElement) -> Option<i64> {
    g.degrees().into_iter().min_by_key(|&k| (k.abs(), -k))
}

fn graded_target(graph: &Graph, g: &AlgebraElement, k: i64) -> AlgebraElement {
    let gk = g.homogeneous_component(k);
    if k == 0 {
        gk
    } else {
        gk.star().mul(graph, &gk)
    }
}

/// Deterministic path `z` with `r(z) = v`: always the first incoming edge.
fn first_edge_path(graph: &Graph, v: VertexId, len: usize) -> Path {
    let mut p = Path::vertex(v);
    for _ in 0..len {
        let e = graph.edges_into(p.source())[0];
        p = p.extended(graph, e).expect("r(e) = s(p)");
    }
    p
}

pub fn graded_certificate(graph: &Graph, g: &AlgebraElement) -> Result<Certificate> {
    let k = graded_component(g).ok_or(Error::ZeroElement)?;
    let f = graded_target(graph, g, k);
    let (key, c) = f.terms().next().map(|(b, c)| (b.clone(), c.clone())).ok_or(Error::ZeroElement)?;
    let limit = f.max_key_length();
    for len in 0..=limit {
        let z = first_edge_path(graph, key.mu().source(), len);
        let x = key.mu().compose(&z).expect("s(mu) = r(z)");
        let y = key.nu().compose(&z).expect("s(nu) = r(z)");
        let (x0, y0) = (unit_set(x.clone()), unit_set(y.clone()));
        let b = CylSet::single(BasicBisection::new(x, y).expect("sources agree"));
        if f.cut(graph, &x0, &y0) == AlgebraElement::from_set(graph, &b, c.clone()) {
            return Ok(Certificate { grade: Some(k), x0, k: y0.clone(), y0, b, c, depth: len });
        }
    }
    unreachable!("windows at the maximal key length isolate a single key")
}

/// Searches windows shrinking around elements whose source runs along
/// `seed`, for each key of `f` in canonical order.
pub fn ck_certificate(graph: &Graph, f: &AlgebraElement, seed: &Point, depth: usize) -> Result<CkOutcome> {
    if f.is_zero() {
        return Err(Error::ZeroElement);
    }
    if !condition_l(graph) {
        log::warn!("graph has a cycle without an entrance; the search may not terminate");
    }
    for (key, c) in f.terms() {
        let Some(kappa) = graph.shortest_path(key.nu().source(), seed.range()) else { continue };
        let u = seed.prepend(&key.nu().compose(&kappa).expect("s(nu) = r(kappa)"))?;
        let n = key.degree();
        let r_alpha = u.shift(key.nu().len()).prepend(key.mu())?;
        for len in 0..=depth {
            let y0 = unit_set(u.prefix(len));
            let x0 = unit_set(r_alpha.prefix((len as i64 + n).max(0) as usize));
            let h = f.cut(graph, &x0, &y0);
            if h.is_zero() || h.terms().any(|(_, a)| a != c) {
                continue;
            }
            let b = h.support();
            if !b.is_bisection() {
                continue;
            }
            if h.star().mul(graph, &h) != AlgebraElement::from_set(graph, &y0, modulus_sq(c)) {
                continue;
            }
            return Ok(CkOutcome::Found(Box::new(Certificate { grade: None, x0, k: y0.clone(), y0, b, c: c.clone(), depth: len })));
        }
    }
    Ok(CkOutcome::Exhausted(depth))
}

/// Recomputes every identity of the certificate against `f` (for graded
/// certificates, against the element `g` it was produced from).
pub fn verify_certificate(graph: &Graph, cert: &Certificate, f: &AlgebraElement) -> bool {
    if cert.c.is_zero() || !cert.b.is_bisection() {
        return false;
    }
    if ![&cert.x0, &cert.y0, &cert.k].iter().all(|s| s.is_unit_set()) {
        return false;
    }
    let target = match cert.grade {
        Some(k) => {
            if f.homogeneous_component(k).is_zero() {
                return false;
            }
            graded_target(graph, f, k)
        }
        None => f.clone(),
    };
    let cb = AlgebraElement::from_set(graph, &cert.b, cert.c.clone());
    if target.cut(graph, &cert.x0, &cert.y0) != cb {
        return false;
    }
    cb.star().mul(graph, &cb) == AlgebraElement::from_set(graph, &cert.k, modulus_sq(&cert.c))
}

fn modulus_sq(c: &Gq) -> Gq {
    Gq::real(c.norm_sqr())
}

impl Certificate {
    pub fn render(&self, graph: &Graph) -> String {
        let mut out = String::new();
        if let Some(k) = self.grade {
            out.push_str(&format!("grade {k}\n"));
        }
        out.push_str(&format!("X0 {}\n", self.x0.render(graph)));
        out.push_str(&format!("Y0 {}\n", self.y0.render(graph)));
        out.push_str(&format!("B {}\n", self.b.render(graph)));
        out.push_str(&format!("c {}\n", self.c));
        out.push_str(&format!("K {}\n", self.k.render(graph)));
        out
    }
}
