//! The Deaconu-Renault groupoid of the one-sided shift on a subshift of
//! finite type, with basic sets
//! `Z(U, V, k, l) = {(x, k - l, y) : x ∈ U, y ∈ V, T^k x = T^l y}`.
//!
//! Internally a basic is a finite set of word pairs `(P, Q)` sharing their
//! last letter, each denoting `{(P·z, |P| - |Q|, Q·z)}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::bisection::{BasicBisection, CylSet};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Path};

pub type Letter = u32;
pub type Word = Vec<Letter>;

/// Alphabet with a 0-1 transition matrix; every letter has a successor.
#[derive(Clone, PartialEq, Eq)]
pub struct Sft {
    alphabet: Vec<String>,
    allow: Vec<Vec<bool>>,
}

impl fmt::Debug for Sft {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sft{:?}", self.alphabet)
    }
}

impl Sft {
    pub fn new(alphabet: Vec<String>, allowed: &[(String, String)]) -> Result<Sft> {
        let n = alphabet.len();
        if n == 0 {
            return Err(Error::InvalidSft("empty alphabet".into()));
        }
        let mut seen = BTreeSet::new();
        for a in &alphabet {
            if !seen.insert(a.as_str()) {
                return Err(Error::InvalidSft(format!("letter {a} declared twice")));
            }
        }
        let mut sft = Sft { alphabet, allow: vec![vec![false; n]; n] };
        for (x, y) in allowed {
            let i = sft.letter(x)?;
            let j = sft.letter(y)?;
            sft.allow[i as usize][j as usize] = true;
        }
        if let Some(i) = (0..n).find(|&i| !sft.allow[i].iter().any(|&b| b)) {
            return Err(Error::InvalidSft(format!("letter {} has no successor", sft.alphabet[i])));
        }
        Ok(sft)
    }

    /// The full shift on the given letters.
    pub fn full(letters: &[&str]) -> Sft {
        let alphabet: Vec<String> = letters.iter().map(|s| s.to_string()).collect();
        let pairs: Vec<(String, String)> =
            alphabet.iter().flat_map(|x| alphabet.iter().map(move |y| (x.clone(), y.clone()))).collect();
        Sft::new(alphabet, &pairs).expect("full shift is valid")
    }

    /// Letters are edges; `e` may precede `f` iff `s(e) = r(f)`.
    pub fn edge_shift(graph: &Graph) -> Sft {
        let alphabet: Vec<String> = graph.edges().map(|e| graph.edge_name(e).to_string()).collect();
        let n = alphabet.len();
        let mut allow = vec![vec![false; n]; n];
        for e in graph.edges() {
            for f in graph.edges() {
                allow[e.index()][f.index()] = graph.s(e) == graph.r(f);
            }
        }
        Sft { alphabet, allow }
    }

    pub fn len(&self) -> usize {
        self.alphabet.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphabet.is_empty()
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.alphabet
            .iter()
            .position(|a| a == name)
            .map(|i| i as Letter)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn letter_name(&self, l: Letter) -> &str {
        &self.alphabet[l as usize]
    }

    pub fn allows(&self, x: Letter, y: Letter) -> bool {
        self.allow[x as usize][y as usize]
    }

    pub fn successors(&self, x: Letter) -> impl Iterator<Item = Letter> + '_ {
        (0..self.len() as Letter).filter(move |&y| self.allows(x, y))
    }

    pub fn is_admissible(&self, w: &[Letter]) -> bool {
        w.windows(2).all(|p| self.allows(p[0], p[1]))
    }

    /// `allow` pairs in letter order.
    pub fn allowed_pairs(&self) -> Vec<(Letter, Letter)> {
        let n = self.len() as Letter;
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| self.allows(x, y)).collect()
    }

    pub fn word(&self, letters: &[&str]) -> Result<Word> {
        let w = letters.iter().map(|l| self.letter(l)).collect::<Result<Word>>()?;
        if !self.is_admissible(&w) {
            return Err(Error::InvalidSft(format!("inadmissible word {}", letters.join("."))));
        }
        Ok(w)
    }

    pub fn render_word(&self, w: &[Letter]) -> String {
        w.iter().map(|&l| self.letter_name(l)).collect::<Vec<_>>().join(".")
    }

    /// All admissible one-step extensions, applied until length `len`.
    fn refine(&self, w: &[Letter], len: usize) -> Vec<Word> {
        let mut cur = vec![w.to_vec()];
        while cur.first().is_some_and(|x| x.len() < len) {
            cur = cur
                .into_iter()
                .flat_map(|x| {
                    let last = *x.last().expect("words are nonempty");
                    self.successors(last).map(move |y| {
                        let mut z = x.clone();
                        z.push(y);
                        z
                    })
                })
                .collect();
        }
        cur
    }

    fn refine_all(&self, words: &[Word], len: usize) -> BTreeSet<Word> {
        words.iter().flat_map(|w| self.refine(w, len)).collect()
    }
}

/// `Z(U, V, k, l)` with `T^k|U`, `T^l|V` injective and `T^k(U) = T^l(V)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DrBasic {
    u: Vec<Word>,
    v: Vec<Word>,
    k: usize,
    l: usize,
}

impl DrBasic {
    pub fn u(&self) -> &[Word] {
        &self.u
    }

    pub fn v(&self) -> &[Word] {
        &self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn cocycle(&self) -> i64 {
        self.k as i64 - self.l as i64
    }

    pub fn inverse(&self) -> DrBasic {
        DrBasic { u: self.v.clone(), v: self.u.clone(), k: self.l, l: self.k }
    }

    /// Word pairs `(P, Q)` with `|P| - k = |Q| - l ≥ 1` and
    /// `P[k..] = Q[l..]`.
    pub fn pairs(&self, sft: &Sft) -> BTreeSet<(Word, Word)> {
        let j = self
            .u
            .iter()
            .map(|w| w.len().saturating_sub(self.k))
            .chain(self.v.iter().map(|w| w.len().saturating_sub(self.l)))
            .chain([1])
            .max()
            .expect("nonempty");
        let us = sft.refine_all(&self.u, self.k + j);
        let vs = sft.refine_all(&self.v, self.l + j);
        let mut by_tail: BTreeMap<&[Letter], Vec<&Word>> = BTreeMap::new();
        for q in &vs {
            by_tail.entry(&q[self.l..]).or_default().push(q);
        }
        let mut out = BTreeSet::new();
        for p in &us {
            for q in by_tail.get(&p[self.k..]).into_iter().flatten() {
                out.insert((p.clone(), (*q).clone()));
            }
        }
        out
    }

    /// The single-pair basic `Z([P], [Q], |P| - 1, |Q| - 1)`.
    pub fn from_pair(p: Word, q: Word) -> DrBasic {
        let (k, l) = (p.len() - 1, q.len() - 1);
        DrBasic { u: vec![p], v: vec![q], k, l }
    }

    pub fn render(&self, sft: &Sft) -> String {
        let set = |ws: &[Word]| ws.iter().map(|w| format!("[{}]", sft.render_word(w))).collect::<Vec<_>>().join("+");
        format!("Z({},{},{},{})", set(&self.u), set(&self.v), self.k, self.l)
    }
}

/// `T^n` on a word set, as the set of refined suffixes, or `None` when it
/// is not injective.
fn image(sft: &Sft, words: &[Word], n: usize, len: usize) -> Option<BTreeSet<Word>> {
    let refined = sft.refine_all(words, len);
    let mut out = BTreeSet::new();
    for w in &refined {
        if !out.insert(w[n..].to_vec()) {
            return None;
        }
    }
    Some(out)
}

pub fn dr_validate(sft: &Sft, u: Vec<Word>, v: Vec<Word>, k: usize, l: usize) -> Result<DrBasic> {
    for w in u.iter().chain(&v) {
        if w.is_empty() || !sft.is_admissible(w) {
            return Err(Error::InvalidSft(format!("inadmissible cylinder word {}", sft.render_word(w))));
        }
    }
    let j = u
        .iter()
        .map(|w| w.len().saturating_sub(k))
        .chain(v.iter().map(|w| w.len().saturating_sub(l)))
        .chain([1])
        .max()
        .expect("nonempty");
    let iu = image(sft, &u, k, k + j).ok_or_else(|| Error::NotInjective(format!("T^{k} on U")))?;
    let iv = image(sft, &v, l, l + j).ok_or_else(|| Error::NotInjective(format!("T^{l} on V")))?;
    if iu != iv {
        return Err(Error::ImageMismatch(format!("T^{k}(U) != T^{l}(V)")));
    }
    Ok(DrBasic { u, v, k, l })
}

fn strip<'a>(w: &'a [Letter], prefix: &[Letter]) -> Option<&'a [Letter]> {
    w.strip_prefix(prefix)
}

fn mul_pair(a: &(Word, Word), b: &(Word, Word)) -> Option<(Word, Word)> {
    let (p, q) = a;
    let (p2, q2) = b;
    if let Some(rest) = strip(p2, q) {
        let mut x = p.clone();
        x.extend_from_slice(rest);
        return Some((x, q2.clone()));
    }
    if let Some(rest) = strip(q, p2) {
        let mut y = q2.clone();
        y.extend_from_slice(rest);
        return Some((p.clone(), y));
    }
    None
}

/// Symbolic composition as a union of single-pair basics; empty when
/// nothing composes.
pub fn dr_mul(sft: &Sft, a: &DrBasic, b: &DrBasic) -> Vec<DrBasic> {
    let bp = b.pairs(sft);
    let out: BTreeSet<(Word, Word)> = a.pairs(sft).iter().flat_map(|x| bp.iter().filter_map(move |y| mul_pair(x, y))).collect();
    out.into_iter().map(|(p, q)| DrBasic::from_pair(p, q)).collect()
}

/// Cocycle value on every element of the basic.
pub fn dr_cocycle(d: &DrBasic) -> i64 {
    d.cocycle()
}

fn pairs_by_degree(sft: &Sft, basics: &[DrBasic]) -> BTreeMap<i64, Vec<(Word, Word)>> {
    let mut by_degree: BTreeMap<i64, Vec<(Word, Word)>> = BTreeMap::new();
    for d in basics {
        for pq in d.pairs(sft) {
            by_degree.entry(pq.0.len() as i64 - pq.1.len() as i64).or_default().push(pq);
        }
    }
    by_degree
}

/// Pairs extended so that every `P` has length `len`.
fn refine_pairs(sft: &Sft, pairs: &[(Word, Word)], len: usize) -> BTreeSet<(Word, Word)> {
    let mut set = BTreeSet::new();
    for (p, q) in pairs {
        let extra = len - p.len();
        for tail in sft.refine(&[*p.last().expect("nonempty")], extra + 1) {
            let mut x = p.clone();
            x.extend_from_slice(&tail[1..]);
            let mut y = q.clone();
            y.extend_from_slice(&tail[1..]);
            set.insert((x, y));
        }
    }
    set
}

/// Equality of the unions of two families of basics: pairs are refined per
/// degree to a common length, where the representation is unique.
pub fn dr_set_eq(sft: &Sft, a: &[DrBasic], b: &[DrBasic]) -> bool {
    let (pa, pb) = (pairs_by_degree(sft, a), pairs_by_degree(sft, b));
    if !pa.keys().eq(pb.keys()) {
        return false;
    }
    pa.iter().all(|(deg, xs)| {
        let ys = &pb[deg];
        let len = xs.iter().chain(ys).map(|(p, _)| p.len()).max().unwrap_or(0);
        refine_pairs(sft, xs, len) == refine_pairs(sft, ys, len)
    })
}

/// Translation to the graph groupoid of `graph`, whose edge shift must be
/// `sft`.
pub fn dr_to_graph(graph: &Graph, sft: &Sft, d: &DrBasic) -> Result<CylSet> {
    if &Sft::edge_shift(graph) != sft {
        return Err(Error::NotEdgeShift("alphabet or transitions differ from the edge shift".into()));
    }
    let path = |w: &Word| -> Path {
        let edges: Vec<EdgeId> = w.iter().map(|&l| EdgeId(l)).collect();
        Path::from_edges(graph, &edges).expect("admissible words are paths")
    };
    let basics: Vec<BasicBisection> = d
        .pairs(sft)
        .iter()
        .map(|(p, q)| BasicBisection::new(path(p), path(q)).expect("shared last edge"))
        .collect();
    Ok(CylSet::new(graph, basics))
}
