//! Leavitt path algebra words, reduction to the spanning form
//! `∑ a·s_mu s_nu^*`, and the isomorphism with the Steinberg algebra.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::{One, Zero};

use crate::algebra::AlgebraElement;
use crate::bisection::BasicBisection;
use crate::coeff::Gq;
use crate::graph::{EdgeId, Graph, Path, VertexId};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum LpaSymbol {
    P(VertexId),
    S(EdgeId),
    SStar(EdgeId),
}

impl LpaSymbol {
    pub fn render(&self, graph: &Graph) -> String {
        match *self {
            LpaSymbol::P(v) => format!("p_{}", graph.vertex_name(v)),
            LpaSymbol::S(e) => format!("s_{}", graph.edge_name(e)),
            LpaSymbol::SStar(e) => format!("s_{}^*", graph.edge_name(e)),
        }
    }
}

/// `coeff · x_1 x_2 ... x_k`; the empty product is the unit `∑_v p_v`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LpaWord {
    pub coeff: Gq,
    pub symbols: Vec<LpaSymbol>,
}

impl LpaWord {
    pub fn new(coeff: Gq, symbols: Vec<LpaSymbol>) -> Self {
        LpaWord { coeff, symbols }
    }

    pub fn monomial(symbols: Vec<LpaSymbol>) -> Self {
        LpaWord { coeff: Gq::one(), symbols }
    }

    /// `s_mu s_nu^*` (with `p_v` for the vertex monomial).
    pub fn from_pair(mu: &Path, nu: &Path) -> Self {
        LpaWord::monomial(pair_symbols(mu, nu))
    }
}

fn pair_symbols(mu: &Path, nu: &Path) -> Vec<LpaSymbol> {
    if mu.is_empty() && nu.is_empty() {
        return vec![LpaSymbol::P(mu.range())];
    }
    let mut out: Vec<LpaSymbol> = mu.edges().iter().map(|&e| LpaSymbol::S(e)).collect();
    out.extend(nu.edges().iter().rev().map(|&e| LpaSymbol::SStar(e)));
    out
}

/// A formal sum of words.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LpaExpr {
    pub words: Vec<LpaWord>,
}

impl LpaExpr {
    pub fn new(words: Vec<LpaWord>) -> Self {
        LpaExpr { words }
    }

    /// Formal product: all concatenations.
    pub fn mul(&self, other: &LpaExpr) -> LpaExpr {
        let mut words = Vec::new();
        for x in &self.words {
            for y in &other.words {
                let mut symbols = x.symbols.clone();
                symbols.extend(y.symbols.iter().copied());
                words.push(LpaWord::new(x.coeff.clone() * y.coeff.clone(), symbols));
            }
        }
        LpaExpr { words }
    }

    pub fn render(&self, graph: &Graph) -> String {
        if self.words.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .words
            .iter()
            .map(|w| {
                let syms: Vec<String> = w.symbols.iter().map(|s| s.render(graph)).collect();
                if syms.is_empty() {
                    w.coeff.to_string()
                } else {
                    format!("{} {}", w.coeff, syms.join(" "))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl From<LpaWord> for LpaExpr {
    fn from(w: LpaWord) -> Self {
        LpaExpr { words: vec![w] }
    }
}

/// `∑ a·s_mu s_nu^*` in canonical form, keyed like algebra elements.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LpaNormal {
    terms: BTreeMap<BasicBisection, Gq>,
}

impl fmt::Debug for LpaNormal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl LpaNormal {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Pairs `(mu, nu)` with coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Path, &Gq)> {
        self.terms.iter().map(|(k, c)| (k.mu(), k.nu(), c))
    }

    pub fn to_expr(&self) -> LpaExpr {
        LpaExpr {
            words: self.terms.iter().map(|(k, c)| LpaWord::new(c.clone(), pair_symbols(k.mu(), k.nu()))).collect(),
        }
    }

    pub fn render(&self, graph: &Graph) -> String {
        self.to_expr().render(graph)
    }
}

/// Left-to-right reduction of a word by the first Cuntz-Krieger relation;
/// `None` is zero. The unit word reduces to all vertex projections.
fn reduce_word(graph: &Graph, symbols: &[LpaSymbol]) -> Vec<(Path, Path)> {
    let Some((first, rest)) = symbols.split_first() else {
        return graph.vertices().map(|v| (Path::vertex(v), Path::vertex(v))).collect();
    };
    let mut cur = match *first {
        LpaSymbol::P(v) => (Path::vertex(v), Path::vertex(v)),
        LpaSymbol::S(e) => (Path::from_edges(graph, &[e]).expect("edge"), Path::vertex(graph.s(e))),
        LpaSymbol::SStar(e) => (Path::vertex(graph.s(e)), Path::from_edges(graph, &[e]).expect("edge")),
    };
    for &sym in rest {
        let (mu, nu) = cur;
        cur = match sym {
            LpaSymbol::P(w) => {
                if nu.range() != w {
                    return Vec::new();
                }
                (mu, nu)
            }
            LpaSymbol::S(e) => match nu.first_edge() {
                None => {
                    if nu.range() != graph.r(e) {
                        return Vec::new();
                    }
                    let mu = mu.extended(graph, e).expect("r(e) = s(mu)");
                    (mu, Path::vertex(graph.s(e)))
                }
                Some(f) => {
                    if f != e {
                        return Vec::new();
                    }
                    (mu, nu.drop_front(1))
                }
            },
            LpaSymbol::SStar(e) => {
                if graph.s(e) != nu.range() {
                    return Vec::new();
                }
                let head = Path::from_edges(graph, &[e]).expect("edge");
                (mu, head.compose(&nu).expect("s(e) = r(nu)"))
            }
        };
    }
    vec![cur]
}

/// Rewrites to the spanning form using the Cuntz-Krieger relations.
pub fn reduce_lpa(graph: &Graph, x: &LpaExpr) -> LpaNormal {
    // first relation: every word collapses to at most one monomial
    let mut by_degree: BTreeMap<i64, Vec<(Path, Path, Gq)>> = BTreeMap::new();
    for w in &x.words {
        if w.coeff.is_zero() {
            continue;
        }
        for (mu, nu) in reduce_word(graph, &w.symbols) {
            let d = mu.len() as i64 - nu.len() as i64;
            by_degree.entry(d).or_default().push((mu, nu, w.coeff.clone()));
        }
    }
    // second relation: expand each degree to a common length, then contract
    let mut terms = BTreeMap::new();
    for (_, monos) in by_degree {
        let target = monos.iter().map(|(mu, _, _)| mu.len()).max().unwrap_or(0);
        let mut level: HashMap<(Path, Path), Gq> = HashMap::new();
        for (mu, nu, c) in monos {
            for (m, n) in expand_to(graph, mu, nu, target) {
                let slot = level.entry((m, n)).or_insert_with(Gq::zero);
                *slot = slot.clone() + c.clone();
            }
        }
        level.retain(|_, c| !c.is_zero());
        for ((mu, nu), c) in contract(graph, level, target) {
            terms.insert(BasicBisection::new(mu, nu).expect("sources agree"), c);
        }
    }
    LpaNormal { terms }
}

/// `s_mu s_nu^* = ∑_{r(e)=s(mu)} s_{mu e} s_{nu e}^*`, applied until
/// `|mu| = len`.
fn expand_to(graph: &Graph, mu: Path, nu: Path, len: usize) -> Vec<(Path, Path)> {
    let mut cur = vec![(mu, nu)];
    while cur.first().is_some_and(|(m, _)| m.len() < len) {
        let mut next = Vec::new();
        for (m, n) in cur {
            for &e in graph.edges_into(m.source()) {
                next.push((m.clone().extended(graph, e).expect("edge"), n.clone().extended(graph, e).expect("edge")));
            }
        }
        cur = next;
    }
    cur
}

type Family = Vec<((Path, Path), Gq)>;

/// Inverse of `expand_to` on complete families with equal coefficients,
/// one length at a time from `len` down.
fn contract(graph: &Graph, level: HashMap<(Path, Path), Gq>, len: usize) -> Vec<((Path, Path), Gq)> {
    let mut done = Vec::new();
    let mut current = level;
    let mut l = len;
    while !current.is_empty() {
        let mut parents: HashMap<(Path, Path), Family> = HashMap::new();
        let mut next = HashMap::new();
        for ((m, n), c) in current {
            match (m.last_edge(), n.last_edge()) {
                (Some(a), Some(b)) if a == b && l > 0 => {
                    let key = (m.drop_last().expect("nonempty"), n.drop_last().expect("nonempty"));
                    parents.entry(key).or_default().push(((m, n), c));
                }
                _ => done.push(((m, n), c)),
            }
        }
        for ((pm, pn), kids) in parents {
            let family = graph.in_degree(pm.source());
            let c = kids[0].1.clone();
            if kids.len() == family && kids.iter().all(|(_, k)| *k == c) {
                next.insert((pm, pn), c);
            } else {
                done.extend(kids);
            }
        }
        current = next;
        l = l.saturating_sub(1);
    }
    done
}

fn generator(graph: &Graph, sym: LpaSymbol) -> AlgebraElement {
    let (mu, nu) = match sym {
        LpaSymbol::P(v) => (Path::vertex(v), Path::vertex(v)),
        LpaSymbol::S(e) => (Path::from_edges(graph, &[e]).expect("edge"), Path::vertex(graph.s(e))),
        LpaSymbol::SStar(e) => (Path::vertex(graph.s(e)), Path::from_edges(graph, &[e]).expect("edge")),
    };
    AlgebraElement::indicator(graph, BasicBisection::new(mu, nu).expect("sources agree"))
}

/// The homomorphism sending `s_mu s_nu^*` to `1_{Z(mu, nu)}`.
pub fn phi(graph: &Graph, x: &LpaExpr) -> AlgebraElement {
    let mut acc = AlgebraElement::zero();
    for w in &x.words {
        let mut prod = AlgebraElement::unit(graph);
        for &sym in &w.symbols {
            prod = prod.mul(graph, &generator(graph, sym));
        }
        acc = AlgebraElement::linear_combine(graph, &Gq::one(), &acc, &w.coeff, &prod);
    }
    acc
}

pub fn phi_inverse(f: &AlgebraElement) -> LpaNormal {
    LpaNormal { terms: f.terms().map(|(k, c)| (k.clone(), c.clone())).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(g: &Graph, s: &str) -> LpaSymbol {
        if let Some(v) = s.strip_prefix("p_") {
            LpaSymbol::P(g.vertex_by_name(v).unwrap())
        } else if let Some(e) = s.strip_prefix("s_").and_then(|e| e.strip_suffix("^*")) {
            LpaSymbol::SStar(g.edge_by_name(e).unwrap())
        } else {
            LpaSymbol::S(g.edge_by_name(s.strip_prefix("s_").unwrap()).unwrap())
        }
    }

    fn expr(g: &Graph, words: &[&str]) -> LpaExpr {
        LpaExpr::new(words.iter().map(|w| LpaWord::monomial(w.split_whitespace().map(|s| sym(g, s)).collect())).collect())
    }

    fn pv(g: &Graph) -> LpaNormal {
        phi_inverse(&AlgebraElement::indicator(g, BasicBisection::unit(g.vertex_path("v").unwrap())))
    }

    #[test]
    fn reduce_examples() {
        let g = Graph::rose(2);
        assert!(reduce_lpa(&g, &expr(&g, &["s_a^* s_b"])).is_zero());
        assert_eq!(reduce_lpa(&g, &expr(&g, &["s_a s_a^*", "s_b s_b^*"])), pv(&g));
        assert_eq!(reduce_lpa(&g, &expr(&g, &["s_a^* s_a"])), pv(&g));
        assert_eq!(reduce_lpa(&g, &expr(&g, &["s_a s_a^*", "s_b s_b^*"])).render(&g), "(1) p_v");
    }

    #[test]
    fn reduce_mixed_lengths() {
        let g = Graph::rose(2);
        let x = expr(&g, &["p_v", "s_a s_a s_a^* s_a^*", "s_a s_b s_b^* s_a^*", "s_b s_b^*"]);
        // s_a s_a^* expanded then contracted, plus p_v
        let got = reduce_lpa(&g, &x);
        let want = phi_inverse(&phi(&g, &x));
        assert_eq!(got, want);
        assert_eq!(got.render(&g), "(2) p_v");
    }

    #[test]
    fn phi_examples() {
        let g = Graph::rose(2);
        assert_eq!(phi(&g, &expr(&g, &["p_v"])).render(&g), "(1)[v|v]");
        assert_eq!(phi(&g, &expr(&g, &["s_a s_b^*"])).render(&g), "(1)[a|b]");
        assert!(phi(&g, &expr(&g, &["s_a^* s_b"])).is_zero());
    }

    #[test]
    fn phi_inverse_examples() {
        let g = Graph::rose(2);
        let ab_b = BasicBisection::new(g.path(&["a", "b"]).unwrap(), g.path(&["b"]).unwrap()).unwrap();
        let f = AlgebraElement::indicator(&g, ab_b);
        assert_eq!(phi_inverse(&f).render(&g), "(1) s_a s_b s_b^*");
        assert_eq!(pv(&g).render(&g), "(1) p_v");
    }

    #[test]
    fn single_loop_contracts_chains() {
        let g = Graph::single_loop();
        assert_eq!(reduce_lpa(&g, &expr(&g, &["s_a s_a^*"])), pv(&g));
        let x = expr(&g, &["s_a s_a s_a^*"]);
        assert_eq!(reduce_lpa(&g, &x), phi_inverse(&phi(&g, &x)));
    }
}
