//! Representations of compact open bisections by matrices, the induced
//! homomorphism on the algebra, and the regular representation on a fiber.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::{One, Zero};

use crate::algebra::AlgebraElement;
use crate::bisection::BasicBisection;
use crate::coeff::{Gq, Scalar};
use crate::error::{Error, Result};
use crate::graph::{Graph, Path};
use crate::point::{GroupoidElement, Point};

/// Dense square matrix over the Gaussian rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    data: Vec<Gq>,
}

impl Matrix {
    pub fn zero(n: usize) -> Matrix {
        Matrix { n, data: vec![Gq::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zero(n);
        for i in 0..n {
            m.data[i * n + i] = Gq::one();
        }
        m
    }

    /// Row-major entries; the length must be a perfect square.
    pub fn from_rows(n: usize, data: Vec<Gq>) -> Result<Matrix> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch(format!("expected {} entries, got {}", n * n, data.len())));
        }
        Ok(Matrix { n, data })
    }

    pub fn scalar(c: Gq) -> Matrix {
        Matrix { n: 1, data: vec![c] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Gq {
        &self.data[i * self.n + j]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if !b.is_zero() {
                        out.data[i * n + j] = &out.data[i * n + j] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        Matrix { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: &Gq) -> Matrix {
        Matrix { n: self.n, data: self.data.iter().map(|a| c * a).collect() }
    }

    pub fn entries(&self) -> &[Gq] {
        &self.data
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_plain_string()).collect();
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Whether sums of disjoint bisections of different degree are checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CocycleMode {
    #[default]
    Canonical,
    Trivial,
}

/// Matrices for `p_v`, `s_e`, `s_e^*`, extended to basics by
/// `t_{Z(mu,nu)} = s_mu · s_nu^*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorAssignment {
    dim: usize,
    p: Vec<Matrix>,
    s: Vec<Matrix>,
    sstar: Vec<Matrix>,
    pub mode: CocycleMode,
}

impl GeneratorAssignment {
    pub fn new(graph: &Graph, dim: usize, p: Vec<Matrix>, s: Vec<Matrix>, sstar: Vec<Matrix>) -> Result<Self> {
        if p.len() != graph.vertex_count() || s.len() != graph.edge_count() || sstar.len() != graph.edge_count() {
            return Err(Error::DimensionMismatch("generator count does not match the graph".into()));
        }
        if let Some(m) = p.iter().chain(&s).chain(&sstar).find(|m| m.dim() != dim) {
            return Err(Error::DimensionMismatch(format!("matrix of size {} in dimension {dim}", m.dim())));
        }
        Ok(GeneratorAssignment { dim, p, s, sstar, mode: CocycleMode::Canonical })
    }

    /// All generators zero; fill in with the setters.
    pub fn zeros(graph: &Graph, dim: usize) -> Self {
        GeneratorAssignment {
            dim,
            p: vec![Matrix::zero(dim); graph.vertex_count()],
            s: vec![Matrix::zero(dim); graph.edge_count()],
            sstar: vec![Matrix::zero(dim); graph.edge_count()],
            mode: CocycleMode::Canonical,
        }
    }

    pub fn with_mode(mut self, mode: CocycleMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn p(&self, v: crate::graph::VertexId) -> &Matrix {
        &self.p[v.index()]
    }

    pub fn s(&self, e: crate::graph::EdgeId) -> &Matrix {
        &self.s[e.index()]
    }

    pub fn sstar(&self, e: crate::graph::EdgeId) -> &Matrix {
        &self.sstar[e.index()]
    }

    pub fn set_p(&mut self, v: crate::graph::VertexId, m: Matrix) -> Result<()> {
        self.check_dim(&m)?;
        self.p[v.index()] = m;
        Ok(())
    }

    pub fn set_s(&mut self, e: crate::graph::EdgeId, m: Matrix) -> Result<()> {
        self.check_dim(&m)?;
        self.s[e.index()] = m;
        Ok(())
    }

    pub fn set_sstar(&mut self, e: crate::graph::EdgeId, m: Matrix) -> Result<()> {
        self.check_dim(&m)?;
        self.sstar[e.index()] = m;
        Ok(())
    }

    fn check_dim(&self, m: &Matrix) -> Result<()> {
        if m.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!("matrix of size {} in dimension {}", m.dim(), self.dim)));
        }
        Ok(())
    }

    fn fits(&self, graph: &Graph) -> Result<()> {
        if self.p.len() != graph.vertex_count() || self.s.len() != graph.edge_count() {
            return Err(Error::DimensionMismatch("assignment belongs to a different graph".into()));
        }
        Ok(())
    }

    /// `s_mu · s_nu^*` for the literal key, no canonicalization.
    fn raw_t(&self, mu: &Path, nu: &Path) -> Matrix {
        let left = if mu.is_empty() {
            self.p[mu.range().index()].clone()
        } else {
            mu.edges().iter().skip(1).fold(self.s[mu.edges()[0].index()].clone(), |m, e| m.mul(&self.s[e.index()]))
        };
        let right = if nu.is_empty() {
            self.p[nu.range().index()].clone()
        } else {
            nu.edges().iter().rev().skip(1).fold(self.sstar[nu.edges()[nu.len() - 1].index()].clone(), |m, e| {
                m.mul(&self.sstar[e.index()])
            })
        };
        left.mul(&right)
    }

    /// `t_U`, computed on the canonical key of `U`.
    pub fn t(&self, graph: &Graph, b: &BasicBisection) -> Matrix {
        let canon = canonical_key(graph, b);
        self.raw_t(canon.mu(), canon.nu())
    }
}

fn canonical_key(graph: &Graph, b: &BasicBisection) -> BasicBisection {
    let one: AlgebraElement = AlgebraElement::indicator(graph, b.clone());
    let key = one.terms().next().map(|(k, _)| k.clone()).expect("basics are nonempty");
    key
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    R1,
    R2,
    R3,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomReport {
    Verified { depth: usize },
    Violation { axiom: Axiom, detail: String },
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        matches!(self, AxiomReport::Verified { .. })
    }
}

/// Checks the representation axioms on all basics with `|mu|, |nu| ≤ depth`:
/// empty products map to zero, products map to products, and disjoint unions
/// (including every sibling family) map to sums.
pub fn check_axioms(graph: &Graph, a: &GeneratorAssignment, depth: usize) -> Result<AxiomReport> {
    a.fits(graph)?;
    let paths = graph.paths_up_to(depth);
    let mut basics = Vec::new();
    for mu in &paths {
        for nu in &paths {
            if mu.source() == nu.source() {
                basics.push(BasicBisection::new(mu.clone(), nu.clone()).expect("sources agree"));
            }
        }
    }
    basics.sort();
    let mut cache: HashMap<BasicBisection, Matrix> = HashMap::new();
    let mut t = |b: &BasicBisection| -> Matrix {
        let canon = canonical_key(graph, b);
        cache.entry(canon.clone()).or_insert_with(|| a.raw_t(canon.mu(), canon.nu())).clone()
    };
    let render = |b: &BasicBisection| b.render(graph);

    for u in &basics {
        for v in &basics {
            if u.mul(v).is_none() {
                let prod = t(u).mul(&t(v));
                if !prod.is_zero() {
                    let detail = format!("{}·{} is empty but t_U t_V != 0", render(u), render(v));
                    return Ok(AxiomReport::Violation { axiom: Axiom::R1, detail });
                }
            }
        }
    }
    for u in &basics {
        for v in &basics {
            if let Some(uv) = u.mul(v) {
                if t(u).mul(&t(v)) != t(&uv) {
                    let detail = format!("t_U t_V != t_UV for {}·{} = {}", render(u), render(v), render(&uv));
                    return Ok(AxiomReport::Violation { axiom: Axiom::R2, detail });
                }
            }
        }
    }
    for (i, u) in basics.iter().enumerate() {
        for v in &basics[i + 1..] {
            if a.mode == CocycleMode::Canonical && u.degree() != v.degree() {
                continue;
            }
            if u.intersect(v).is_some() {
                continue;
            }
            let union: AlgebraElement = AlgebraElement::normalize(graph, [(u.clone(), Gq::one()), (v.clone(), Gq::one())]);
            let rhs = union.terms().fold(Matrix::zero(a.dim), |m, (k, _)| m.add(&t(k)));
            if t(u).add(&t(v)) != rhs {
                let detail = format!("t_U + t_V != t_(U∪V) for {} and {}", render(u), render(v));
                return Ok(AxiomReport::Violation { axiom: Axiom::R3, detail });
            }
        }
    }
    for w in &basics {
        let sum = w.children(graph).iter().fold(Matrix::zero(a.dim), |m, c| m.add(&t(c)));
        if sum != t(w) {
            let detail = format!("sum over the sibling family of {} differs from its t", render(w));
            return Ok(AxiomReport::Violation { axiom: Axiom::R3, detail });
        }
    }
    Ok(AxiomReport::Verified { depth })
}

/// An assignment whose axioms passed to a given depth.
#[derive(Clone, Debug)]
pub struct VerifiedAssignment {
    assignment: GeneratorAssignment,
    depth: usize,
}

impl VerifiedAssignment {
    /// Runs the axiom check; returns the report on failure.
    pub fn verify(graph: &Graph, a: GeneratorAssignment, depth: usize) -> Result<std::result::Result<Self, AxiomReport>> {
        Ok(match check_axioms(graph, &a, depth)? {
            AxiomReport::Verified { depth } => Ok(VerifiedAssignment { assignment: a, depth }),
            report => Err(report),
        })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn assignment(&self) -> &GeneratorAssignment {
        &self.assignment
    }
}

/// `π(f) = ∑ a_U t_U` over the canonical keys of `f`.
pub fn extend_pi(graph: &Graph, a: &VerifiedAssignment, f: &AlgebraElement) -> Result<Matrix> {
    let needed = f.max_key_length();
    if needed > a.depth {
        return Err(Error::DepthInsufficient { verified: a.depth, needed });
    }
    Ok(pi_of_terms(graph, &a.assignment, f.terms().map(|(k, c)| (k.clone(), c.clone()))))
}

/// `∑ a_U t_U` for an arbitrary (not necessarily canonical) expression.
pub fn pi_of_terms(graph: &Graph, a: &GeneratorAssignment, terms: impl IntoIterator<Item = (BasicBisection, Gq)>) -> Matrix {
    terms.into_iter().fold(Matrix::zero(a.dim), |m, (k, c)| m.add(&a.t(graph, &k).scale(&c)))
}

/// A finitely supported vector on the fiber `{β : s(β) = base}`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiberVector {
    base: Point,
    entries: BTreeMap<GroupoidElement, Gq>,
}

impl fmt::Debug for FiberVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter()).finish()
    }
}

impl FiberVector {
    pub fn zero(base: Point) -> Self {
        FiberVector { base, entries: BTreeMap::new() }
    }

    /// `δ_u` for the unit at the base.
    pub fn delta_unit(base: Point) -> Self {
        let unit = GroupoidElement::unit(base.clone());
        FiberVector { base, entries: BTreeMap::from([(unit, Gq::one())]) }
    }

    pub fn delta(beta: GroupoidElement) -> Self {
        let base = beta.source().clone();
        FiberVector { base, entries: BTreeMap::from([(beta, Gq::one())]) }
    }

    pub fn base(&self) -> &Point {
        &self.base
    }

    pub fn entries(&self) -> impl Iterator<Item = (&GroupoidElement, &Gq)> {
        self.entries.iter()
    }

    pub fn get(&self, beta: &GroupoidElement) -> Gq {
        self.entries.get(beta).cloned().unwrap_or_else(Gq::zero)
    }

    pub fn add_at(&mut self, beta: GroupoidElement, c: Gq) -> Result<()> {
        if beta.source() != &self.base {
            return Err(Error::BaseMismatch);
        }
        let slot = self.entries.entry(beta.clone()).or_insert_with(Gq::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.entries.remove(&beta);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

/// `ρ(f) δ_β = ∑_{s(α) = r(β)} f(α) δ_{αβ}`, extended linearly.
pub fn regular_rep_apply(f: &AlgebraElement, x: &FiberVector) -> FiberVector {
    let mut out = FiberVector::zero(x.base.clone());
    for (beta, b) in &x.entries {
        let r = beta.range();
        for (key, a) in f.terms() {
            if !r.starts_with(key.nu()) {
                continue;
            }
            let tail = r.shift(key.nu().len());
            let alpha_range = tail.prepend(key.mu()).expect("s(mu) = r(tail)");
            let ab = GroupoidElement::new(alpha_range, key.degree() + beta.degree(), beta.source().clone())
                .expect("composable by construction");
            out.add_at(ab, a * b).expect("same base");
        }
    }
    out
}

/// `⟨x, y⟩ = ∑_β conj(x(β)) y(β)`.
pub fn inner_product(x: &FiberVector, y: &FiberVector) -> Result<Gq> {
    if x.base != y.base {
        return Err(Error::BaseMismatch);
    }
    Ok(x.entries.iter().fold(Gq::zero(), |acc, (beta, a)| acc + a.conj() * y.get(beta)))
}
