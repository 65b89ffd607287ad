//! Computable points of the infinite-path space and elements of the
//! graph groupoid `{(x, k - l, y) : shift^k(x) = shift^l(y)}`.
//!
//! Every point type has an exact canonical form, so point equality (and
//! hence groupoid-element equality) is decidable.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Path, VertexId};

/// The eventually periodic infinite path `head · cycle · cycle · ...`.
///
/// Canonical: `cycle` is primitive and `head` is as short as possible.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EvPerPoint {
    head: Path,
    cycle: Path,
}

impl EvPerPoint {
    /// Canonical form of `head · cycle^∞`.
    pub fn new(head: Path, cycle: Path) -> Result<EvPerPoint> {
        if !cycle.is_cycle() {
            return Err(Error::NotACycle(format!("{cycle:?}")));
        }
        if head.source() != cycle.range() {
            return Err(Error::NotComposable(format!("head {head:?} does not reach cycle {cycle:?}")));
        }
        let mut cycle = primitive_root(&cycle);
        let mut head = head;
        while let (Some(h), Some(c)) = (head.last_edge(), cycle.last_edge()) {
            if h != c {
                break;
            }
            head = head.drop_last().expect("nonempty head");
            cycle = cycle.rotate_back();
        }
        Ok(EvPerPoint { head, cycle })
    }

    /// `cycle^∞` anchored at `r(cycle)`.
    pub fn periodic(cycle: Path) -> Result<EvPerPoint> {
        let head = Path::vertex(cycle.range());
        EvPerPoint::new(head, cycle)
    }

    pub fn head(&self) -> &Path {
        &self.head
    }

    pub fn cycle(&self) -> &Path {
        &self.cycle
    }

    pub fn range(&self) -> VertexId {
        self.head.range()
    }

    pub fn edge_at(&self, i: usize) -> EdgeId {
        let h = self.head.len();
        if i < h {
            self.head.edges()[i]
        } else {
            self.cycle.edges()[(i - h) % self.cycle.len()]
        }
    }

    pub fn prefix(&self, n: usize) -> Path {
        let h = self.head.len();
        if n <= h {
            return self.head.take_front(n);
        }
        let p = self.cycle.len();
        let reps = (n - h) / p;
        let rest = (n - h) % p;
        self.head
            .compose(&self.cycle.power(reps))
            .and_then(|q| q.compose(&self.cycle.take_front(rest)))
            .expect("prefix of a point composes")
    }

    pub fn shift(&self, k: usize) -> EvPerPoint {
        let h = self.head.len();
        if k <= h {
            return EvPerPoint { head: self.head.drop_front(k), cycle: self.cycle.clone() };
        }
        let cycle = self.cycle.rotate_front((k - h) % self.cycle.len());
        EvPerPoint { head: Path::vertex(cycle.range()), cycle }
    }

    pub fn prepend(&self, path: &Path) -> Result<EvPerPoint> {
        EvPerPoint::new(path.compose(&self.head)?, self.cycle.clone())
    }
}

impl fmt::Debug for EvPerPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({:?})^inf", self.head, self.cycle)
    }
}

fn primitive_root(cycle: &Path) -> Path {
    let n = cycle.len();
    let edges = cycle.edges();
    for d in 1..=n {
        if n.is_multiple_of(d) && (d..n).all(|i| edges[i] == edges[i - d]) {
            return cycle.take_front(d);
        }
    }
    unreachable!("the cycle itself is a root")
}

/// A deterministic infinite edge sequence that is not eventually periodic.
pub trait EdgeStream: Send + Sync {
    /// `r` of the first edge.
    fn anchor(&self) -> VertexId;
    fn edge_at(&self, i: usize) -> EdgeId;
    /// `r(edge_at(i))`.
    fn vertex_at(&self, i: usize) -> VertexId;
    /// Identity of the stream; streams with equal keys generate equal sequences.
    fn key(&self) -> &str;
}

/// Routes the Fibonacci word `abaababaabaab...` over two distinct
/// first-return cycles at one vertex: letter `a` traverses the first cycle,
/// letter `b` the second.
///
/// The resulting path is never eventually periodic: cutting it at the
/// returns to the anchor recovers the Fibonacci word, which is aperiodic.
pub struct FibonacciRouting {
    cycles: [Path; 2],
    key: String,
    cache: RwLock<Vec<(EdgeId, VertexId)>>,
}

impl FibonacciRouting {
    pub fn new(first: Path, second: Path) -> Result<FibonacciRouting> {
        for c in [&first, &second] {
            if !c.is_cycle() {
                return Err(Error::NotACycle(format!("{c:?}")));
            }
            let anchor = c.range();
            if c.vertex_chain()[1..c.len()].contains(&anchor) {
                return Err(Error::InvalidPoint(format!("{c:?} is not a first-return cycle")));
            }
        }
        if first.range() != second.range() {
            return Err(Error::InvalidPoint("routing cycles must share their vertex".into()));
        }
        if first == second {
            return Err(Error::InvalidPoint("routing cycles must be distinct".into()));
        }
        let key = format!("fib[{first:?};{second:?}]");
        Ok(FibonacciRouting { cycles: [first, second], key, cache: RwLock::new(Vec::new()) })
    }

    pub fn cycles(&self) -> &[Path; 2] {
        &self.cycles
    }

    fn ensure(&self, len: usize) {
        if self.cache.read().expect("cache lock").len() > len {
            return;
        }
        let mut cache = self.cache.write().expect("cache lock");
        if cache.len() > len {
            return;
        }
        // every letter contributes at least one edge
        let letters = fibonacci_word(len + 1);
        cache.clear();
        for &l in &letters {
            let c = &self.cycles[l as usize];
            for (i, &e) in c.edges().iter().enumerate() {
                cache.push((e, c.vertex_chain()[i]));
            }
            if cache.len() > len {
                break;
            }
        }
    }
}

impl EdgeStream for FibonacciRouting {
    fn anchor(&self) -> VertexId {
        self.cycles[0].range()
    }

    fn edge_at(&self, i: usize) -> EdgeId {
        self.ensure(i);
        self.cache.read().expect("cache lock")[i].0
    }

    fn vertex_at(&self, i: usize) -> VertexId {
        self.ensure(i);
        self.cache.read().expect("cache lock")[i].1
    }

    fn key(&self) -> &str {
        &self.key
    }
}

/// First `len` letters of the Fibonacci word over `{0, 1}` (`0 = a`).
pub fn fibonacci_word(len: usize) -> Vec<u8> {
    let mut prev = vec![0u8];
    let mut cur = vec![0u8, 1];
    while cur.len() < len {
        let next: Vec<u8> = cur.iter().chain(prev.iter()).copied().collect();
        prev = cur;
        cur = next;
    }
    cur.truncate(len);
    cur
}

/// `head · shift^offset(stream)`, canonical when `head` cannot absorb
/// into the stream (its last edge differs from `stream[offset - 1]`).
#[derive(Clone)]
pub struct AperiodicPoint {
    head: Path,
    stream: Arc<dyn EdgeStream>,
    offset: usize,
}

impl AperiodicPoint {
    pub fn new(stream: Arc<dyn EdgeStream>) -> AperiodicPoint {
        let head = Path::vertex(stream.anchor());
        AperiodicPoint { head, stream, offset: 0 }
    }

    pub fn fibonacci(first: Path, second: Path) -> Result<AperiodicPoint> {
        Ok(AperiodicPoint::new(Arc::new(FibonacciRouting::new(first, second)?)))
    }

    fn canonical(mut head: Path, stream: Arc<dyn EdgeStream>, mut offset: usize) -> AperiodicPoint {
        while offset > 0 && head.last_edge() == Some(stream.edge_at(offset - 1)) {
            head = head.drop_last().expect("nonempty head");
            offset -= 1;
        }
        AperiodicPoint { head, stream, offset }
    }

    pub fn head(&self) -> &Path {
        &self.head
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn stream(&self) -> &Arc<dyn EdgeStream> {
        &self.stream
    }

    pub fn range(&self) -> VertexId {
        self.head.range()
    }

    pub fn edge_at(&self, i: usize) -> EdgeId {
        let h = self.head.len();
        if i < h {
            self.head.edges()[i]
        } else {
            self.stream.edge_at(self.offset + i - h)
        }
    }

    fn vertex_at(&self, i: usize) -> VertexId {
        let h = self.head.len();
        if i <= h {
            self.head.vertex_chain()[i]
        } else {
            self.stream.vertex_at(self.offset + i - h)
        }
    }

    pub fn prefix(&self, n: usize) -> Path {
        let h = self.head.len();
        if n <= h {
            return self.head.take_front(n);
        }
        let mut p = self.head.clone();
        for i in h..n {
            let e = self.edge_at(i);
            p = p.extended_unchecked(e, self.vertex_at(i + 1));
        }
        p
    }

    pub fn shift(&self, k: usize) -> AperiodicPoint {
        let h = self.head.len();
        if k <= h {
            return AperiodicPoint { head: self.head.drop_front(k), stream: self.stream.clone(), offset: self.offset };
        }
        let offset = self.offset + (k - h);
        let head = Path::vertex(self.stream.vertex_at(offset));
        AperiodicPoint { head, stream: self.stream.clone(), offset }
    }

    pub fn prepend(&self, path: &Path) -> Result<AperiodicPoint> {
        let head = path.compose(&self.head)?;
        Ok(AperiodicPoint::canonical(head, self.stream.clone(), self.offset))
    }

    fn identity(&self) -> (&str, usize, &Path) {
        (self.stream.key(), self.offset, &self.head)
    }
}

impl PartialEq for AperiodicPoint {
    fn eq(&self, other: &Self) -> bool {
        self.identity() == other.identity()
    }
}

impl Eq for AperiodicPoint {}

impl PartialOrd for AperiodicPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AperiodicPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.identity().cmp(&other.identity())
    }
}

impl Hash for AperiodicPoint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.identity().hash(state)
    }
}

impl fmt::Debug for AperiodicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}·{}>>{}", self.head, self.stream.key(), self.offset)
    }
}

/// A computable unit of the groupoid.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    EvPer(EvPerPoint),
    Aperiodic(AperiodicPoint),
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::EvPer(p) => p.fmt(f),
            Point::Aperiodic(p) => p.fmt(f),
        }
    }
}

impl From<EvPerPoint> for Point {
    fn from(p: EvPerPoint) -> Self {
        Point::EvPer(p)
    }
}

impl From<AperiodicPoint> for Point {
    fn from(p: AperiodicPoint) -> Self {
        Point::Aperiodic(p)
    }
}

/// Admissible lags of a tail-equivalent pair: `n ∈ base + period·Z`
/// (`period = 0` means `n = base` only).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lag {
    pub base: i64,
    pub period: u64,
}

impl Lag {
    pub fn admits(&self, n: i64) -> bool {
        if self.period == 0 {
            n == self.base
        } else {
            (n - self.base).rem_euclid(self.period as i64) == 0
        }
    }
}

impl Point {
    pub fn periodic(cycle: Path) -> Result<Point> {
        EvPerPoint::periodic(cycle).map(Point::EvPer)
    }

    pub fn ev_per(head: Path, cycle: Path) -> Result<Point> {
        EvPerPoint::new(head, cycle).map(Point::EvPer)
    }

    pub fn range(&self) -> VertexId {
        match self {
            Point::EvPer(p) => p.range(),
            Point::Aperiodic(p) => p.range(),
        }
    }

    pub fn edge_at(&self, i: usize) -> EdgeId {
        match self {
            Point::EvPer(p) => p.edge_at(i),
            Point::Aperiodic(p) => p.edge_at(i),
        }
    }

    /// The unique initial path of length `n`.
    pub fn prefix(&self, n: usize) -> Path {
        match self {
            Point::EvPer(p) => p.prefix(n),
            Point::Aperiodic(p) => p.prefix(n),
        }
    }

    pub fn starts_with(&self, path: &Path) -> bool {
        path.range() == self.range() && path.edges().iter().enumerate().all(|(i, &e)| self.edge_at(i) == e)
    }

    pub fn shift(&self, k: usize) -> Point {
        match self {
            Point::EvPer(p) => Point::EvPer(p.shift(k)),
            Point::Aperiodic(p) => Point::Aperiodic(p.shift(k)),
        }
    }

    /// `path · self`; requires `s(path) = r(self)`.
    pub fn prepend(&self, path: &Path) -> Result<Point> {
        match self {
            Point::EvPer(p) => p.prepend(path).map(Point::EvPer),
            Point::Aperiodic(p) => p.prepend(path).map(Point::Aperiodic),
        }
    }

    pub fn is_eventually_periodic(&self) -> bool {
        matches!(self, Point::EvPer(_))
    }

    /// Lags `n` for which `(self, n, other)` is a groupoid element, or `None`
    /// when the tails differ. Points from different aperiodic streams are
    /// never identified.
    pub fn lag_to(&self, other: &Point) -> Option<Lag> {
        match (self, other) {
            (Point::EvPer(x), Point::EvPer(y)) => {
                let p = x.cycle.len();
                if y.cycle.len() != p {
                    return None;
                }
                let j = (0..p).find(|&j| x.cycle.rotate_front(j) == y.cycle)?;
                let base = (x.head.len() + j) as i64 - y.head.len() as i64;
                Some(Lag { base, period: p as u64 })
            }
            (Point::Aperiodic(x), Point::Aperiodic(y)) => {
                if x.stream.key() != y.stream.key() {
                    return None;
                }
                let base = (x.head.len() as i64 - x.offset as i64) - (y.head.len() as i64 - y.offset as i64);
                Some(Lag { base, period: 0 })
            }
            _ => None,
        }
    }

    /// Generator of the isotropy group `uGu` as a subgroup of `Z`
    /// (`0` when the isotropy is trivial).
    pub fn isotropy_generator(&self) -> u64 {
        match self {
            Point::EvPer(p) => p.cycle.len() as u64,
            Point::Aperiodic(_) => 0,
        }
    }

    pub fn render(&self, graph: &Graph) -> String {
        match self {
            Point::EvPer(p) => format!("{}:{}", p.head.render(graph), p.cycle.render(graph)),
            Point::Aperiodic(p) => format!("{}@{}", p.head.render(graph), p.offset),
        }
    }
}

/// `(x, n, y)` with `shift^k(x) = shift^l(y)` for some `k - l = n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupoidElement {
    x: Point,
    n: i64,
    y: Point,
}

impl fmt::Debug for GroupoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {}, {:?})", self.x, self.n, self.y)
    }
}

impl GroupoidElement {
    pub fn new(x: Point, n: i64, y: Point) -> Result<GroupoidElement> {
        match x.lag_to(&y) {
            Some(lag) if lag.admits(n) => Ok(GroupoidElement { x, n, y }),
            _ => Err(Error::NotInGroupoid(format!("({x:?}, {n}, {y:?})"))),
        }
    }

    pub fn unit(x: Point) -> GroupoidElement {
        GroupoidElement { y: x.clone(), x, n: 0 }
    }

    /// `(mu·z, |mu| - |nu|, nu·z)`.
    pub fn from_paths(mu: &Path, nu: &Path, z: &Point) -> Result<GroupoidElement> {
        let x = z.prepend(mu)?;
        let y = z.prepend(nu)?;
        Ok(GroupoidElement { x, n: mu.len() as i64 - nu.len() as i64, y })
    }

    pub fn range(&self) -> &Point {
        &self.x
    }

    pub fn source(&self) -> &Point {
        &self.y
    }

    pub fn degree(&self) -> i64 {
        self.n
    }

    pub fn inverse(&self) -> GroupoidElement {
        GroupoidElement { x: self.y.clone(), n: -self.n, y: self.x.clone() }
    }

    /// `self · other` when `s(self) = r(other)`.
    pub fn compose(&self, other: &GroupoidElement) -> Option<GroupoidElement> {
        (self.y == other.x).then(|| GroupoidElement { x: self.x.clone(), n: self.n + other.n, y: other.y.clone() })
    }

    /// Smallest witness lengths `(k, l)` with `k - l = n` and
    /// `shift^k(x) = shift^l(y)`.
    pub fn witness(&self) -> (usize, usize) {
        // tail agreement persists under further shifts, so the scan ends
        let mut k = self.n.max(0);
        loop {
            let l = k - self.n;
            if self.x.shift(k as usize) == self.y.shift(l as usize) {
                return (k as usize, l as usize);
            }
            k += 1;
        }
    }
}
