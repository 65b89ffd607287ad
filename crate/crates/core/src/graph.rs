//! Finite directed graphs and finite paths.
//!
//! Conventions: an edge `e` has a range `r(e)` and a source `s(e)`; a path
//! `e1 e2 ... en` is composable when `s(ei) = r(ei+1)`. Infinite paths are
//! anchored at their range, so a graph has "no sources" when every vertex
//! receives at least one edge.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub range: VertexId,
    pub source: VertexId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Name {
    Vertex(VertexId),
    Edge(EdgeId),
}

/// A validated finite directed graph with no sources.
#[derive(Clone, Debug)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    into: Vec<Vec<EdgeId>>,
    names: HashMap<String, Name>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Graph {}

/// Unvalidated graph description: vertex names and `(edge, range, source)`
/// name triples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, String)>,
}

impl RawGraph {
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S, S)]) -> Self {
        RawGraph {
            vertices: vertices.iter().map(|v| v.as_ref().to_string()).collect(),
            edges: edges
                .iter()
                .map(|(e, r, s)| (e.as_ref().to_string(), r.as_ref().to_string(), s.as_ref().to_string()))
                .collect(),
        }
    }
}

impl Graph {
    /// Validates a raw description. Names are unique across vertices and
    /// edges, so a lone name in path syntax is never ambiguous.
    pub fn validate(raw: &RawGraph) -> Result<Graph> {
        let mut names = HashMap::new();
        for (i, v) in raw.vertices.iter().enumerate() {
            if names.insert(v.clone(), Name::Vertex(VertexId(i as u32))).is_some() {
                return Err(Error::DuplicateId(v.clone()));
            }
        }
        let mut edges = Vec::with_capacity(raw.edges.len());
        let mut into = vec![Vec::new(); raw.vertices.len()];
        for (i, (name, r, s)) in raw.edges.iter().enumerate() {
            let id = EdgeId(i as u32);
            let lookup = |n: &String| match names.get(n) {
                Some(Name::Vertex(v)) => Ok(*v),
                _ => Err(Error::UnknownVertex(n.clone())),
            };
            let range = lookup(r)?;
            let source = lookup(s)?;
            if names.insert(name.clone(), Name::Edge(id)).is_some() {
                return Err(Error::DuplicateId(name.clone()));
            }
            into[range.index()].push(id);
            edges.push(Edge { name: name.clone(), range, source });
        }
        if let Some(v) = into.iter().position(|es| es.is_empty()) {
            return Err(Error::NoSourcesViolation(raw.vertices[v].clone()));
        }
        Ok(Graph { vertices: raw.vertices.clone(), edges, into, names })
    }

    /// Shorthand for tests and examples.
    pub fn from_lists(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Graph> {
        Graph::validate(&RawGraph::new(vertices, edges))
    }

    /// One vertex `v` with `n` loops named `a`, `b`, `c`, ...
    pub fn rose(n: usize) -> Graph {
        assert!((1..=26).contains(&n));
        let names: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
        let edges: Vec<(&str, &str, &str)> = names.iter().map(|e| (e.as_str(), "v", "v")).collect();
        Graph::from_lists(&["v"], &edges).expect("rose is valid")
    }

    /// The single-loop graph `C1`; its algebra is the Laurent polynomials.
    pub fn single_loop() -> Graph {
        Graph::rose(1)
    }

    /// `v <-> w` with `e: w -> v` and `f: v -> w`.
    pub fn two_cycle() -> Graph {
        Graph::from_lists(&["v", "w"], &[("e", "v", "w"), ("f", "w", "v")]).expect("valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.index()]
    }

    pub fn r(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].range
    }

    pub fn s(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].source
    }

    /// Edges `e` with `r(e) = v`, in declaration order.
    pub fn edges_into(&self, v: VertexId) -> &[EdgeId] {
        &self.into[v.index()]
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.into[v.index()].len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.index()]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.index()].name
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        match self.names.get(name) {
            Some(Name::Vertex(v)) => Some(*v),
            _ => None,
        }
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        match self.names.get(name) {
            Some(Name::Edge(e)) => Some(*e),
            _ => None,
        }
    }

    /// Path from edge names, e.g. `["a", "b"]`.
    pub fn path(&self, edges: &[&str]) -> Result<Path> {
        let ids = edges
            .iter()
            .map(|n| self.edge_by_name(n).ok_or_else(|| Error::UnknownEdge(n.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Path::from_edges(self, &ids)
    }

    /// Empty path at the named vertex.
    pub fn vertex_path(&self, name: &str) -> Result<Path> {
        self.vertex_by_name(name)
            .map(Path::vertex)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// All paths with `r = v` and exactly `len` edges.
    pub fn paths_from(&self, v: VertexId, len: usize) -> Vec<Path> {
        let mut layer = vec![Path::vertex(v)];
        for _ in 0..len {
            layer = layer
                .iter()
                .flat_map(|p| self.edges_into(p.source()).iter().map(move |&e| p.clone().extended_unchecked(e, self.s(e))))
                .collect();
        }
        layer
    }

    /// All paths with at most `max_len` edges, shortest first.
    pub fn paths_up_to(&self, max_len: usize) -> Vec<Path> {
        let mut out = Vec::new();
        for v in self.vertices() {
            out.push(Path::vertex(v));
        }
        let mut layer = out.clone();
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|p| self.edges_into(p.source()).iter().map(move |&e| p.clone().extended_unchecked(e, self.s(e))))
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    /// Shortest path `k` with `r(k) = from` and `s(k) = to`, if any.
    pub fn shortest_path(&self, from: VertexId, to: VertexId) -> Option<Path> {
        let mut prev: Vec<Option<EdgeId>> = vec![None; self.vertex_count()];
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::from([from]);
        seen[from.index()] = true;
        while let Some(u) = queue.pop_front() {
            if u == to {
                let mut edges = Vec::new();
                let mut cur = u;
                while cur != from {
                    let e = prev[cur.index()].expect("bfs parent");
                    edges.push(e);
                    cur = self.r(e);
                }
                edges.reverse();
                if edges.is_empty() {
                    return Some(Path::vertex(from));
                }
                return Some(Path::from_edges(self, &edges).expect("bfs path composes"));
            }
            for &e in self.edges_into(u) {
                let w = self.s(e);
                if !seen[w.index()] {
                    seen[w.index()] = true;
                    prev[w.index()] = Some(e);
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Canonical text form; parses back to an identical graph.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(&format!("v {v}\n"));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "e {} {} {}\n",
                e.name,
                self.vertices[e.range.index()],
                self.vertices[e.source.index()]
            ));
        }
        out
    }
}

/// A finite path. Stores its vertex chain so that slicing and composing
/// never need the graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    edges: Vec<EdgeId>,
    // verts[0] = r(path), verts[i + 1] = s(edges[i])
    verts: Vec<VertexId>,
}

impl Path {
    pub fn vertex(v: VertexId) -> Path {
        Path { edges: Vec::new(), verts: vec![v] }
    }

    pub fn from_edges(graph: &Graph, edges: &[EdgeId]) -> Result<Path> {
        let Some(&first) = edges.first() else {
            return Err(Error::NotComposable("empty edge list has no anchor".into()));
        };
        let mut p = Path::vertex(graph.r(first));
        for &e in edges {
            p = p.extended(graph, e)?;
        }
        Ok(p)
    }

    /// `self · e`; requires `s(self) = r(e)`.
    pub fn extended(mut self, graph: &Graph, e: EdgeId) -> Result<Path> {
        if graph.r(e) != self.source() {
            return Err(Error::NotComposable(format!(
                "edge `{}` does not continue a path ending at `{}`",
                graph.edge_name(e),
                graph.vertex_name(self.source())
            )));
        }
        self.edges.push(e);
        self.verts.push(graph.s(e));
        Ok(self)
    }

    pub(crate) fn extended_unchecked(mut self, e: EdgeId, source: VertexId) -> Path {
        self.edges.push(e);
        self.verts.push(source);
        self
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn range(&self) -> VertexId {
        self.verts[0]
    }

    pub fn source(&self) -> VertexId {
        *self.verts.last().expect("path has an anchor")
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn vertex_chain(&self) -> &[VertexId] {
        &self.verts
    }

    pub fn last_edge(&self) -> Option<EdgeId> {
        self.edges.last().copied()
    }

    pub fn first_edge(&self) -> Option<EdgeId> {
        self.edges.first().copied()
    }

    pub fn is_cycle(&self) -> bool {
        !self.is_empty() && self.range() == self.source()
    }

    /// `self · other`; requires `s(self) = r(other)`.
    pub fn compose(&self, other: &Path) -> Result<Path> {
        if self.source() != other.range() {
            return Err(Error::NotComposable(format!(
                "source vertex #{} differs from range vertex #{}",
                self.source().0,
                other.range().0
            )));
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        let mut verts = self.verts.clone();
        verts.extend_from_slice(&other.verts[1..]);
        Ok(Path { edges, verts })
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        self.range() == other.range() && other.edges.starts_with(&self.edges)
    }

    /// `k` with `self = prefix · k`.
    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        if !prefix.is_prefix_of(self) {
            return None;
        }
        Some(self.drop_front(prefix.len()))
    }

    /// The path with its first `k` edges removed (`k <= len`).
    pub fn drop_front(&self, k: usize) -> Path {
        Path { edges: self.edges[k..].to_vec(), verts: self.verts[k..].to_vec() }
    }

    /// The first `k` edges (`k <= len`).
    pub fn take_front(&self, k: usize) -> Path {
        Path { edges: self.edges[..k].to_vec(), verts: self.verts[..=k].to_vec() }
    }

    /// The path with its last edge removed, if nonempty.
    pub fn drop_last(&self) -> Option<Path> {
        if self.is_empty() {
            None
        } else {
            Some(self.take_front(self.len() - 1))
        }
    }

    /// `self^n` for a cycle.
    pub fn power(&self, n: usize) -> Path {
        debug_assert!(self.range() == self.source());
        let mut p = Path::vertex(self.range());
        for _ in 0..n {
            p = p.compose(self).expect("cycle composes with itself");
        }
        p
    }

    /// Rotation of a cycle moving its last edge to the front.
    pub fn rotate_back(&self) -> Path {
        debug_assert!(self.is_cycle());
        let n = self.len();
        let mut edges = Vec::with_capacity(n);
        edges.push(self.edges[n - 1]);
        edges.extend_from_slice(&self.edges[..n - 1]);
        let mut verts = Vec::with_capacity(n + 1);
        verts.push(self.verts[n - 1]);
        verts.extend_from_slice(&self.verts[..n]);
        Path { edges, verts }
    }

    /// Rotation of a cycle moving its first `k` edges to the back.
    pub fn rotate_front(&self, k: usize) -> Path {
        debug_assert!(self.is_cycle());
        let k = k % self.len();
        self.drop_front(k).compose(&self.take_front(k)).expect("rotation of a cycle")
    }

    /// `.`-separated edge names, or the vertex name for an empty path.
    pub fn render(&self, graph: &Graph) -> String {
        if self.is_empty() {
            return graph.vertex_name(self.range()).to_string();
        }
        self.edges.iter().map(|&e| graph.edge_name(e)).collect::<Vec<_>>().join(".")
    }

    pub fn display<'a>(&'a self, graph: &'a Graph) -> PathDisplay<'a> {
        PathDisplay { path: self, graph }
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.edges.is_empty() {
            write!(f, "v{}", self.verts[0].0)
        } else {
            let parts: Vec<String> = self.edges.iter().map(|e| format!("e{}", e.0)).collect();
            write!(f, "{}", parts.join("."))
        }
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    graph: &'a Graph,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.path.render(self.graph))
    }
}
