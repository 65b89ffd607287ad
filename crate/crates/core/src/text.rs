//! Parsers for the text formats. Printers live next to their types
//! (`render`/`to_text`); every parser accepts exactly what they emit.

use std::str::FromStr;

use num::{BigRational, One, Zero};

use crate::algebra::AlgebraElement;
use crate::bisection::{BasicBisection, CylSet};
use crate::coeff::Gq;
use crate::dr::{dr_validate, DrBasic, Sft, Word};
use crate::error::{Error, Result};
use crate::graph::{Graph, Path, RawGraph};
use crate::lpa::{LpaExpr, LpaSymbol, LpaWord};
use crate::point::{AperiodicPoint, GroupoidElement, Point};
use crate::rep::{CocycleMode, GeneratorAssignment, Matrix};
use crate::uniqueness::Certificate;

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// Character cursor with 1-based line/column positions.
struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line0: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { chars: src.chars().collect(), pos: 0, line0: 1, _src: src }
    }

    fn at_line(src: &'a str, line: usize) -> Self {
        Cursor { line0: line, ..Cursor::new(src) }
    }

    fn location(&self) -> (usize, usize) {
        let mut line = self.line0;
        let mut col = 1;
        for &c in &self.chars[..self.pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self.location();
        Error::syntax(line, col, msg)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |x| format!("`{x}`"));
            Err(self.error(format!("expected `{c}`, found {found}")))
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        let n = s.chars().count();
        if self.chars[self.pos..].iter().take(n).copied().eq(s.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn name(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(is_name_char) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a name"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn rational(&mut self) -> Result<BigRational> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit() || c == '/') {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        parse_rational(&text).map_err(|_| {
            self.pos = start;
            self.error(format!("malformed rational `{text}`"))
        })
    }

    fn unsigned(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().map_err(|_| {
            self.pos = start;
            self.error("expected a nonnegative integer")
        })
    }

    fn finish(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error(format!("unexpected `{}`", self.peek().expect("not at end"))))
        }
    }
}

fn parse_rational(text: &str) -> std::result::Result<BigRational, ()> {
    if text.is_empty() || text.ends_with('/') || text.matches('/').count() > 1 {
        return Err(());
    }
    let r = BigRational::from_str(text).map_err(|_| ())?;
    if text.contains("/0") && text.split('/').nth(1).is_some_and(|d| d.chars().all(|c| c == '0')) {
        return Err(());
    }
    Ok(r)
}

/// `p/q`, `p/q+r/si` or `p/q-r/si` (no parentheses).
fn coeff_body(cur: &mut Cursor) -> Result<Gq> {
    let re = cur.rational()?;
    cur.skip_ws();
    let save = cur.pos;
    let sign = match cur.peek() {
        Some('+') => BigRational::one(),
        Some('-') => -BigRational::one(),
        Some('i') => {
            cur.pos += 1;
            return Ok(Gq::new(BigRational::zero(), re));
        }
        _ => return Ok(Gq::real(re)),
    };
    cur.pos += 1;
    let mag = cur.rational();
    match mag {
        Ok(m) if cur.peek() == Some('i') && !m.numer().sign().eq(&num::bigint::Sign::Minus) => {
            cur.pos += 1;
            Ok(Gq::new(re, sign * m))
        }
        _ => {
            cur.pos = save;
            Ok(Gq::real(re))
        }
    }
}

/// A coefficient without parentheses, as in representation files.
pub fn parse_coeff(text: &str) -> Result<Gq> {
    let mut cur = Cursor::new(text);
    let c = coeff_body(&mut cur)?;
    cur.finish()?;
    Ok(c)
}

fn paren_coeff(cur: &mut Cursor) -> Result<Gq> {
    cur.expect('(')?;
    let c = coeff_body(cur)?;
    cur.expect(')')?;
    Ok(c)
}

/// `a.b.c` or a lone vertex name.
fn path(cur: &mut Cursor, graph: &Graph) -> Result<Path> {
    let first = cur.name()?;
    if cur.peek() != Some('.') {
        if let Some(v) = graph.vertex_by_name(&first) {
            return Ok(Path::vertex(v));
        }
    }
    let mut names = vec![first];
    while cur.peek() == Some('.') {
        cur.pos += 1;
        names.push(cur.name()?);
    }
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    graph.path(&refs)
}

pub fn parse_path(text: &str, graph: &Graph) -> Result<Path> {
    let mut cur = Cursor::new(text);
    let p = path(&mut cur, graph)?;
    cur.finish()?;
    Ok(p)
}

fn basic(cur: &mut Cursor, graph: &Graph) -> Result<BasicBisection> {
    cur.expect('[')?;
    let mu = path(cur, graph)?;
    cur.expect('|')?;
    let nu = path(cur, graph)?;
    cur.expect(']')?;
    BasicBisection::new(mu, nu)
}

pub fn parse_basic(text: &str, graph: &Graph) -> Result<BasicBisection> {
    let mut cur = Cursor::new(text);
    let b = basic(&mut cur, graph)?;
    cur.finish()?;
    Ok(b)
}

/// Raw terms of `coeff[mu|nu] (+|-) coeff[mu|nu] ...`, before normalizing.
pub fn parse_terms(text: &str, graph: &Graph) -> Result<Vec<(BasicBisection, Gq)>> {
    let mut cur = Cursor::new(text);
    if cur.eat_str("0") && cur.at_end() {
        return Ok(Vec::new());
    }
    cur.pos = 0;
    let mut out = Vec::new();
    let mut sign = Gq::one();
    if cur.eat('-') {
        sign = -Gq::one();
    } else {
        cur.eat('+');
    }
    loop {
        let c = paren_coeff(&mut cur)?;
        let b = basic(&mut cur, graph)?;
        out.push((b, sign * c));
        if cur.at_end() {
            break;
        }
        sign = if cur.eat('+') {
            Gq::one()
        } else if cur.eat('-') {
            -Gq::one()
        } else {
            return Err(cur.error("expected `+` or `-` between terms"));
        };
    }
    Ok(out)
}

/// Parses and normalizes an element expression.
pub fn parse_element(text: &str, graph: &Graph) -> Result<AlgebraElement> {
    Ok(AlgebraElement::normalize(graph, parse_terms(text, graph)?))
}

/// Lines `v <name>` and `e <name> <range> <source>`; `#` starts a comment.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut cur = Cursor::at_line(line, i + 1);
        if cur.at_end() {
            continue;
        }
        let kw = cur.name()?;
        match kw.as_str() {
            "v" => vertices.push(cur.name()?),
            "e" => {
                let name = cur.name()?;
                let r = cur.name()?;
                let s = cur.name()?;
                edges.push((name, r, s));
            }
            other => {
                cur.pos = 0;
                cur.skip_ws();
                return Err(cur.error(format!("unknown directive `{other}`")));
            }
        }
        cur.finish()?;
    }
    Graph::validate(&RawGraph { vertices, edges })
}

/// Sums of words `coeff? sym sym ...` with symbols `p_v`, `s_e`, `s_e^*`;
/// a bare coefficient is a multiple of the unit and `0` is the empty sum.
pub fn parse_lpa(text: &str, graph: &Graph) -> Result<LpaExpr> {
    if text.trim() == "0" {
        return Ok(LpaExpr::default());
    }
    let mut cur = Cursor::new(text);
    let mut words = Vec::new();
    let mut sign = Gq::one();
    if cur.eat('-') {
        sign = -Gq::one();
    } else {
        cur.eat('+');
    }
    loop {
        cur.skip_ws();
        let explicit = cur.peek() == Some('(');
        let coeff = if explicit { paren_coeff(&mut cur)? } else { Gq::one() };
        let mut symbols = Vec::new();
        loop {
            cur.skip_ws();
            if !cur.peek().is_some_and(is_name_char) {
                break;
            }
            let start = cur.pos;
            let tok = cur.name()?;
            let sym = if let Some(v) = tok.strip_prefix("p_") {
                LpaSymbol::P(graph.vertex_by_name(v).ok_or_else(|| Error::UnknownVertex(v.to_string()))?)
            } else if let Some(e) = tok.strip_prefix("s_") {
                let id = graph.edge_by_name(e).ok_or_else(|| Error::UnknownEdge(e.to_string()))?;
                if cur.peek() == Some('^') {
                    cur.pos += 1;
                    if cur.peek() != Some('*') {
                        return Err(cur.error("expected `*` after `^`"));
                    }
                    cur.pos += 1;
                    LpaSymbol::SStar(id)
                } else {
                    LpaSymbol::S(id)
                }
            } else {
                cur.pos = start;
                return Err(Error::UnknownSymbol(tok));
            };
            symbols.push(sym);
        }
        if symbols.is_empty() && !explicit {
            return Err(cur.error("expected a generator `p_<v>`, `s_<e>` or `s_<e>^*`"));
        }
        words.push(LpaWord::new(sign * coeff, symbols));
        if cur.at_end() {
            break;
        }
        sign = if cur.eat('+') {
            Gq::one()
        } else if cur.eat('-') {
            -Gq::one()
        } else {
            return Err(cur.error("expected `+` or `-` between words"));
        };
    }
    Ok(LpaExpr::new(words))
}

/// `dim n`, then `p <v>`, `s <e>`, `sstar <e>` lines of `n²` row-major
/// entries; an optional `cocycle trivial|canonical` line. Unlisted
/// generators are zero.
pub fn parse_rep(text: &str, graph: &Graph) -> Result<GeneratorAssignment> {
    let mut asg: Option<GeneratorAssignment> = None;
    let mut mode = CocycleMode::Canonical;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut cur = Cursor::at_line(line, i + 1);
        if cur.at_end() {
            continue;
        }
        let kw = cur.name()?;
        match kw.as_str() {
            "dim" => {
                if asg.is_some() {
                    return Err(cur.error("`dim` given twice"));
                }
                let n = cur.unsigned()?;
                if n == 0 {
                    return Err(cur.error("dimension must be positive"));
                }
                asg = Some(GeneratorAssignment::zeros(graph, n));
            }
            "cocycle" => {
                mode = match cur.name()?.as_str() {
                    "trivial" => CocycleMode::Trivial,
                    "canonical" => CocycleMode::Canonical,
                    other => return Err(cur.error(format!("unknown cocycle mode `{other}`"))),
                };
            }
            "p" | "s" | "sstar" => {
                let Some(a) = asg.as_mut() else {
                    return Err(cur.error("`dim` must come first"));
                };
                let name = cur.name()?;
                let mut entries = Vec::new();
                while !cur.at_end() {
                    entries.push(coeff_body(&mut cur)?);
                }
                let m = Matrix::from_rows(a.dim(), entries)?;
                match kw.as_str() {
                    "p" => a.set_p(graph.vertex_by_name(&name).ok_or(Error::UnknownVertex(name))?, m)?,
                    "s" => a.set_s(graph.edge_by_name(&name).ok_or(Error::UnknownEdge(name))?, m)?,
                    _ => a.set_sstar(graph.edge_by_name(&name).ok_or(Error::UnknownEdge(name))?, m)?,
                }
            }
            other => return Err(Error::syntax(i + 1, 1, format!("unknown directive `{other}`"))),
        }
        cur.finish()?;
    }
    let asg = asg.ok_or_else(|| Error::syntax(1, 1, "missing `dim` line"))?;
    Ok(asg.with_mode(mode))
}

/// Inverse of [`parse_rep`].
pub fn rep_to_text(graph: &Graph, a: &GeneratorAssignment) -> String {
    let entries = |m: &Matrix| m.entries().iter().map(Gq::to_plain_string).collect::<Vec<_>>().join(" ");
    let mut out = format!("dim {}\n", a.dim());
    if a.mode == CocycleMode::Trivial {
        out.push_str("cocycle trivial\n");
    }
    for v in graph.vertices() {
        out.push_str(&format!("p {} {}\n", graph.vertex_name(v), entries(a.p(v))));
    }
    for e in graph.edges() {
        out.push_str(&format!("s {} {}\n", graph.edge_name(e), entries(a.s(e))));
    }
    for e in graph.edges() {
        out.push_str(&format!("sstar {} {}\n", graph.edge_name(e), entries(a.sstar(e))));
    }
    out
}

/// `alphabet a b ...` then `allow x y` lines.
pub fn parse_sft(text: &str) -> Result<Sft> {
    let mut alphabet: Option<Vec<String>> = None;
    let mut allowed = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut cur = Cursor::at_line(line, i + 1);
        if cur.at_end() {
            continue;
        }
        match cur.name()?.as_str() {
            "alphabet" => {
                let mut letters = Vec::new();
                while !cur.at_end() {
                    letters.push(cur.name()?);
                }
                alphabet = Some(letters);
            }
            "allow" => {
                let x = cur.name()?;
                let y = cur.name()?;
                allowed.push((x, y));
            }
            other => return Err(Error::syntax(i + 1, 1, format!("unknown directive `{other}`"))),
        }
        cur.finish()?;
    }
    let alphabet = alphabet.ok_or_else(|| Error::syntax(1, 1, "missing `alphabet` line"))?;
    Sft::new(alphabet, &allowed)
}

/// Inverse of [`parse_sft`].
pub fn sft_to_text(sft: &Sft) -> String {
    let letters: Vec<&str> = (0..sft.len() as u32).map(|l| sft.letter_name(l)).collect();
    let mut out = format!("alphabet {}\n", letters.join(" "));
    for (x, y) in sft.allowed_pairs() {
        out.push_str(&format!("allow {} {}\n", sft.letter_name(x), sft.letter_name(y)));
    }
    out
}

fn word(cur: &mut Cursor, sft: &Sft) -> Result<Word> {
    cur.expect('[')?;
    let mut letters = vec![cur.name()?];
    while cur.peek() == Some('.') {
        cur.pos += 1;
        letters.push(cur.name()?);
    }
    cur.expect(']')?;
    let refs: Vec<&str> = letters.iter().map(String::as_str).collect();
    sft.word(&refs)
}

fn word_set(cur: &mut Cursor, sft: &Sft) -> Result<Vec<Word>> {
    let mut out = vec![word(cur, sft)?];
    while cur.eat('+') {
        out.push(word(cur, sft)?);
    }
    Ok(out)
}

/// `Z([a.b]+[b.a],[b],1,0)`, validated.
pub fn parse_dr_basic(text: &str, sft: &Sft) -> Result<DrBasic> {
    let mut cur = Cursor::new(text);
    if !cur.eat('Z') {
        return Err(cur.error("expected `Z(`"));
    }
    cur.expect('(')?;
    let u = word_set(&mut cur, sft)?;
    cur.expect(',')?;
    let v = word_set(&mut cur, sft)?;
    cur.expect(',')?;
    let k = cur.unsigned()?;
    cur.expect(',')?;
    let l = cur.unsigned()?;
    cur.expect(')')?;
    cur.finish()?;
    dr_validate(sft, u, v, k, l)
}

fn cylset(cur: &mut Cursor, graph: &Graph) -> Result<CylSet> {
    cur.expect('{')?;
    let mut members = Vec::new();
    if !cur.eat('}') {
        loop {
            members.push(basic(cur, graph)?);
            if cur.eat('}') {
                break;
            }
            cur.expect(',')?;
        }
    }
    Ok(CylSet::new(graph, members))
}

/// `{[a.b|a.b], [b|b]}`; the members are disjointified.
pub fn parse_cylset(text: &str, graph: &Graph) -> Result<CylSet> {
    let mut cur = Cursor::new(text);
    let s = cylset(&mut cur, graph)?;
    cur.finish()?;
    Ok(s)
}

/// Routing cycles for aperiodic points.
pub type SeedCycles = (Path, Path);

/// `head:cycle` for eventually periodic points, `head@offset` for the
/// aperiodic point routed over the seed cycles.
pub fn parse_point(text: &str, graph: &Graph, seeds: Option<&SeedCycles>) -> Result<Point> {
    let mut cur = Cursor::new(text);
    let head = path(&mut cur, graph)?;
    let p = if cur.eat(':') {
        let cycle = path(&mut cur, graph)?;
        Point::ev_per(head, cycle)?
    } else if cur.eat('@') {
        let offset = cur.unsigned()?;
        let (c1, c2) = seeds.ok_or_else(|| Error::InvalidPoint("aperiodic points need --seed-cycles".into()))?;
        let base = AperiodicPoint::fibonacci(c1.clone(), c2.clone())?.shift(offset);
        Point::from(base.prepend(&head)?)
    } else {
        return Err(cur.error("expected `:` or `@` after the head path"));
    };
    cur.finish()?;
    Ok(p)
}

/// `x n y`.
pub fn parse_groupoid_element(text: &str, graph: &Graph, seeds: Option<&SeedCycles>) -> Result<GroupoidElement> {
    let parts: Vec<&str> = text.split_whitespace().collect();
    let [x, n, y] = parts[..] else {
        return Err(Error::syntax(1, 1, "expected `<point> <degree> <point>`"));
    };
    let n: i64 = n.parse().map_err(|_| Error::syntax(1, 1, format!("malformed degree `{n}`")))?;
    GroupoidElement::new(parse_point(x, graph, seeds)?, n, parse_point(y, graph, seeds)?)
}

pub fn render_groupoid_element(g: &GroupoidElement, graph: &Graph) -> String {
    format!("{} {} {}", g.range().render(graph), g.degree(), g.source().render(graph))
}

/// `a.b,b` style pair of cycles.
pub fn parse_seed_cycles(text: &str, graph: &Graph) -> Result<SeedCycles> {
    let Some((a, b)) = text.split_once(',') else {
        return Err(Error::syntax(1, 1, "expected two cycles separated by `,`"));
    };
    Ok((parse_path(a.trim(), graph)?, parse_path(b.trim(), graph)?))
}

/// Certificate text as produced by `Certificate::render`.
pub fn parse_certificate(text: &str, graph: &Graph) -> Result<Certificate> {
    let mut grade = None;
    let (mut x0, mut y0, mut b, mut c, mut k) = (None, None, None, None, None);
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut cur = Cursor::at_line(line, i + 1);
        if cur.at_end() {
            continue;
        }
        let kw = cur.name()?;
        match kw.as_str() {
            "grade" => {
                let neg = cur.eat('-');
                let v = cur.unsigned()? as i64;
                grade = Some(if neg { -v } else { v });
            }
            "X0" => x0 = Some(cylset(&mut cur, graph)?),
            "Y0" => y0 = Some(cylset(&mut cur, graph)?),
            "B" => b = Some(cylset(&mut cur, graph)?),
            "K" => k = Some(cylset(&mut cur, graph)?),
            "c" => c = Some(paren_coeff(&mut cur)?),
            other => return Err(Error::syntax(i + 1, 1, format!("unknown certificate field `{other}`"))),
        }
        cur.finish()?;
    }
    let missing = |f: &str| Error::syntax(1, 1, format!("certificate lacks `{f}`"));
    Ok(Certificate {
        grade,
        x0: x0.ok_or_else(|| missing("X0"))?,
        y0: y0.ok_or_else(|| missing("Y0"))?,
        b: b.ok_or_else(|| missing("B"))?,
        c: c.ok_or_else(|| missing("c"))?,
        k: k.ok_or_else(|| missing("K"))?,
        depth: 0,
    })
}
