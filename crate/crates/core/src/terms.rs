//! Free matrad terms and their wiring graphs.
//!
//! A [`Term`] is the unit, a generator `θ_m^n` (`m` inputs, `n` outputs), or
//! a fraction `γ(A₁…A_q; B₁…B_p)` in which output `j` of `B_i` feeds input
//! `i` of `A_j`. Two terms are equal in the free prematrad exactly when their
//! [`FractionGraph`]s coincide.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::trees::PlanarTree;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Unit,
    Gen { m: usize, n: usize },
    Gamma { num: Vec<Term>, den: Vec<Term> },
}

impl Term {
    /// `θ_m^n`; `θ_1^1` is the unit.
    pub fn gen(m: usize, n: usize) -> Term {
        assert!(m >= 1 && n >= 1, "generators need m, n >= 1");
        if (m, n) == (1, 1) {
            Term::Unit
        } else {
            Term::Gen { m, n }
        }
    }

    /// The fraction `num / den`, checked for arity. A lone unit on either
    /// side is absorbed.
    pub fn gamma(num: Vec<Term>, den: Vec<Term>) -> Result<Term> {
        let (q, p) = (num.len(), den.len());
        if q == 0 || p == 0 {
            return Err(Error::Arity("empty numerator or denominator".into()));
        }
        if let Some(a) = num.iter().find(|a| a.arity().0 != p) {
            return Err(Error::Arity(format!("{a} needs {} inputs, got {p}", a.arity().0)));
        }
        if let Some(b) = den.iter().find(|b| b.arity().1 != q) {
            return Err(Error::Arity(format!("{b} has {} outputs, need {q}", b.arity().1)));
        }
        if num == [Term::Unit] {
            return Ok(den.into_iter().next().expect("p = 1"));
        }
        if den == [Term::Unit] {
            return Ok(num.into_iter().next().expect("q = 1"));
        }
        Ok(Term::Gamma { num, den })
    }

    /// `(inputs, outputs)`.
    pub fn arity(&self) -> (usize, usize) {
        match self {
            Term::Unit => (1, 1),
            Term::Gen { m, n } => (*m, *n),
            Term::Gamma { num, den } => (den.iter().map(|b| b.arity().0).sum(), num.iter().map(|a| a.arity().1).sum()),
        }
    }

    /// Sum of `m+n-3` over the generators.
    pub fn dim(&self) -> usize {
        match self {
            Term::Unit => 0,
            Term::Gen { m, n } => m + n - 3,
            Term::Gamma { num, den } => num.iter().chain(den).map(Term::dim).sum(),
        }
    }

    /// Number of generator occurrences (units excluded).
    pub fn generator_count(&self) -> usize {
        match self {
            Term::Unit => 0,
            Term::Gen { .. } => 1,
            Term::Gamma { num, den } => num.iter().chain(den).map(Term::generator_count).sum(),
        }
    }

    /// Generator occurrences in pre-order (numerators before denominators).
    pub fn generators(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        fn rec(t: &Term, out: &mut Vec<(usize, usize)>) {
            match t {
                Term::Unit => {}
                Term::Gen { m, n } => out.push((*m, *n)),
                Term::Gamma { num, den } => num.iter().chain(den).for_each(|x| rec(x, out)),
            }
        }
        rec(self, &mut out);
        out
    }

    /// Replaces the `k`-th generator occurrence (pre-order) by `r` of the same arity.
    pub fn substitute(&self, k: usize, r: &Term) -> Term {
        fn rec(t: &Term, k: &mut usize, r: &Term) -> Term {
            match t {
                Term::Unit => Term::Unit,
                Term::Gen { .. } => {
                    let hit = *k == 0;
                    *k = k.wrapping_sub(1);
                    if hit {
                        r.clone()
                    } else {
                        t.clone()
                    }
                }
                Term::Gamma { num, den } => Term::Gamma {
                    num: num.iter().map(|x| rec(x, k, r)).collect(),
                    den: den.iter().map(|x| rec(x, k, r)).collect(),
                },
            }
        }
        let mut k = k;
        rec(self, &mut k, r)
    }

    /// The same wiring read upside down: inputs and outputs trade places.
    pub fn dual(&self) -> Term {
        match self {
            Term::Unit => Term::Unit,
            Term::Gen { m, n } => Term::Gen { m: *n, n: *m },
            Term::Gamma { num, den } => {
                Term::Gamma { num: den.iter().map(Term::dual).collect(), den: num.iter().map(Term::dual).collect() }
            }
        }
    }

    pub fn graph(&self) -> FractionGraph {
        FractionGraph::of(self).expect("terms built through the checked constructors are well wired")
    }

    /// The tree of input groupings: `θ_m^n ↦` the `m`-corolla, fractions
    /// graft the numerators' common contraction onto the denominators.
    pub fn row_tree(&self) -> PlanarTree {
        match self {
            Term::Unit => PlanarTree::Leaf,
            Term::Gen { m, .. } => PlanarTree::corolla(*m),
            Term::Gamma { num, den } => {
                let top = PlanarTree::meet(&num.iter().map(Term::row_tree).collect::<Vec<_>>()).expect("equal arity");
                top.graft(&den.iter().map(Term::row_tree).collect::<Vec<_>>()).expect("one subtree per input")
            }
        }
    }

    /// Dual of [`Term::row_tree`] on outputs.
    pub fn col_tree(&self) -> PlanarTree {
        match self {
            Term::Unit => PlanarTree::Leaf,
            Term::Gen { n, .. } => PlanarTree::corolla(*n),
            Term::Gamma { num, den } => {
                let top = PlanarTree::meet(&den.iter().map(Term::col_tree).collect::<Vec<_>>()).expect("equal arity");
                top.graft(&num.iter().map(Term::col_tree).collect::<Vec<_>>()).expect("one subtree per output")
            }
        }
    }

    pub fn display(&self, notation: Notation) -> String {
        let mut s = String::new();
        write_term(self, notation, false, &mut s);
        s
    }
}

/// Upper and lower contact sequences of a fraction.
pub fn contact_sequences(f: &Term) -> Result<(Vec<Vec<usize>>, Vec<Vec<usize>>)> {
    match f {
        Term::Gamma { num, den } => Ok((
            num.iter().map(|a| a.row_tree().leaf_sequence()).collect(),
            den.iter().map(|b| b.col_tree().leaf_sequence()).collect(),
        )),
        _ => Err(Error::Unsupported(format!("{f} is not a fraction"))),
    }
}

/// The strict elementary fraction product of two tensor rows.
pub fn fraction(num: &[Term], den: &[Term]) -> Option<Term> {
    Term::gamma(num.to_vec(), den.to_vec()).ok()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Notation {
    /// `γ(θ₂¹θ₂¹;θ₁²θ₁²)`
    #[default]
    Gamma,
    /// `θ₂¹θ₂¹/θ₁²θ₁²`
    Fraction,
    /// `g(t2^1 t2^1; t1^2 t1^2)`
    Ascii,
}

fn digits(v: usize, table: &[char; 10]) -> String {
    v.to_string().chars().map(|c| table[c.to_digit(10).unwrap() as usize]).collect()
}
const SUB: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

fn write_term(t: &Term, nt: Notation, nested: bool, s: &mut String) {
    match t {
        Term::Unit => s.push('1'),
        Term::Gen { m, n } => match nt {
            Notation::Ascii => s.push_str(&format!("t{m}^{n}")),
            _ => s.push_str(&format!("θ{}{}", digits(*m, &SUB), digits(*n, &SUP))),
        },
        Term::Gamma { num, den } => {
            let row = |v: &[Term], s: &mut String| {
                for (k, x) in v.iter().enumerate() {
                    if k > 0 && nt == Notation::Ascii {
                        s.push(' ');
                    }
                    write_term(x, nt, true, s);
                }
            };
            match nt {
                Notation::Gamma | Notation::Ascii => {
                    s.push_str(if nt == Notation::Ascii { "g(" } else { "γ(" });
                    row(num, s);
                    s.push_str(if nt == Notation::Ascii { "; " } else { ";" });
                    row(den, s);
                    s.push(')');
                }
                Notation::Fraction => {
                    if nested {
                        s.push('(');
                    }
                    row(num, s);
                    s.push('/');
                    row(den, s);
                    if nested {
                        s.push(')');
                    }
                }
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display(Notation::Gamma))
    }
}

/// Parses a GF(2) sum of terms in any of the [`Notation`] forms.
///
/// Inside a fraction each side is a sum of tensor rows, and products
/// distribute: `g(a; b + c)` is `g(a; b) + g(a; c)`. A `-` is read as `+`.
/// The fraction form `A/B` may stand bare at the top level; nested
/// fractions need parentheses.
pub fn parse_terms(s: &str) -> Result<Vec<Term>> {
    let mut p = Parser { c: s.chars().collect(), pos: 0 };
    let mut rows = p.sum()?;
    if p.peek() == Some('/') {
        p.pos += 1;
        let den = p.sum()?;
        rows = p.combine(rows, den)?.into_iter().map(|t| vec![t]).collect();
    }
    p.ws();
    if p.pos != p.c.len() {
        return p.err("trailing input");
    }
    rows.into_iter()
        .map(|r| {
            if r.len() == 1 {
                Ok(r.into_iter().next().unwrap())
            } else {
                Err(Error::Parse { pos: 0, msg: "a top-level summand must be a single term".into() })
            }
        })
        .collect()
}

/// Parses exactly one term.
pub fn parse_term(s: &str) -> Result<Term> {
    let v = parse_terms(s)?;
    if v.len() != 1 {
        return Err(Error::Parse { pos: 0, msg: format!("expected one term, found {}", v.len()) });
    }
    Ok(v.into_iter().next().unwrap())
}

struct Parser {
    c: Vec<char>,
    pos: usize,
}

impl Parser {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn ws(&mut self) {
        while self.c.get(self.pos).is_some_and(|c| c.is_whitespace() || *c == '·') {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.c.get(self.pos).copied()
    }

    /// `row (('+'|'-') row)*`
    fn sum(&mut self) -> Result<Vec<Vec<Term>>> {
        let mut out = self.row()?;
        while matches!(self.peek(), Some('+' | '-' | '−')) {
            self.pos += 1;
            out.extend(self.row()?);
        }
        Ok(out)
    }

    /// One or more juxtaposed factors; each factor may stand for several terms.
    fn row(&mut self) -> Result<Vec<Vec<Term>>> {
        let mut alts: Vec<Vec<Term>> = vec![vec![]];
        while let Some(c) = self.peek() {
            if !matches!(c, '1' | 'θ' | 't' | 'γ' | 'g' | '(') {
                break;
            }
            let f = self.factor()?;
            alts = alts
                .into_iter()
                .flat_map(|a| f.iter().map(move |x| a.iter().cloned().chain([x.clone()]).collect::<Vec<_>>()))
                .collect();
        }
        if alts.iter().any(Vec::is_empty) {
            return self.err("expected a factor");
        }
        Ok(alts)
    }

    fn number(&mut self, table: &[char; 10]) -> Option<usize> {
        // one digit style per number, so the unit in "θ₁²1" stays a unit
        let start = self.pos;
        let ascii = self.c.get(start).is_some_and(|c| c.is_ascii_digit());
        let mut v = 0usize;
        while let Some(&c) = self.c.get(self.pos) {
            let d = if ascii { c.to_digit(10) } else { table.iter().position(|&x| x == c).map(|d| d as u32) };
            match d {
                Some(d) => v = v * 10 + d as usize,
                None => break,
            }
            self.pos += 1;
        }
        (self.pos > start).then_some(v)
    }

    fn factor(&mut self) -> Result<Vec<Term>> {
        match self.peek() {
            Some('1') => {
                self.pos += 1;
                Ok(vec![Term::Unit])
            }
            Some('θ' | 't') => {
                self.pos += 1;
                if self.c.get(self.pos) == Some(&'_') {
                    self.pos += 1;
                }
                let m = match self.number(&SUB) {
                    Some(m) => m,
                    None => return self.err("expected input count"),
                };
                if self.c.get(self.pos) == Some(&'^') {
                    self.pos += 1;
                }
                let n = match self.number(&SUP) {
                    Some(n) => n,
                    None => return self.err("expected output count"),
                };
                if m == 0 || n == 0 {
                    return self.err("generator arities start at 1");
                }
                Ok(vec![Term::gen(m, n)])
            }
            Some('γ' | 'g') => {
                self.pos += 1;
                if self.peek() != Some('(') {
                    return self.err("expected '('");
                }
                self.pos += 1;
                let num = self.sum()?;
                if self.peek() != Some(';') {
                    return self.err("expected ';'");
                }
                self.pos += 1;
                let den = self.sum()?;
                if self.peek() != Some(')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                self.combine(num, den)
            }
            Some('(') => {
                self.pos += 1;
                let num = self.sum()?;
                if self.peek() != Some('/') {
                    return self.err("expected '/'");
                }
                self.pos += 1;
                let den = self.sum()?;
                if self.peek() != Some(')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                self.combine(num, den)
            }
            _ => self.err("expected a factor"),
        }
    }

    fn combine(&self, num: Vec<Vec<Term>>, den: Vec<Vec<Term>>) -> Result<Vec<Term>> {
        let mut out = Vec::new();
        for a in &num {
            for b in &den {
                out.push(
                    Term::gamma(a.clone(), b.clone())
                        .map_err(|e| Error::Parse { pos: self.pos, msg: e.to_string() })?,
                );
            }
        }
        Ok(out)
    }
}

/// A GF(2) sum of terms, identified by wiring graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TermSum {
    terms: BTreeMap<FractionGraph, Term>,
}

impl TermSum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `t`; a term already present cancels.
    pub fn add(&mut self, t: Term) {
        let g = t.graph();
        if self.terms.remove(&g).is_none() {
            self.terms.insert(g, t);
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.terms.contains_key(&t.graph())
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.terms.values()
    }

    pub fn graphs(&self) -> impl Iterator<Item = &FractionGraph> {
        self.terms.keys()
    }
}

impl FromIterator<Term> for TermSum {
    fn from_iter<I: IntoIterator<Item = Term>>(iter: I) -> Self {
        let mut s = TermSum::new();
        iter.into_iter().for_each(|t| s.add(t));
        s
    }
}

impl fmt::Display for TermSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&self.terms.values().join(" + "))
    }
}

/// Where an input of a graph node comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Port {
    /// Global input leg `k`.
    Input(usize),
    /// Output `j` of node `v`.
    Node(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GraphNode {
    pub inputs: usize,
    pub outputs: usize,
    pub sources: Vec<Port>,
}

/// Canonical wiring graph of a term: nodes in breadth-first discovery order
/// from the input legs, then the output legs; units removed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FractionGraph {
    pub inputs: usize,
    pub outputs: usize,
    pub nodes: Vec<GraphNode>,
    pub output_sources: Vec<Port>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum End {
    In(usize, usize),
    Out(usize, usize),
    GIn(usize),
    GOut(usize),
}

impl FractionGraph {
    pub fn of(t: &Term) -> Result<FractionGraph> {
        let mut nodes: Vec<(usize, usize)> = Vec::new();
        let mut src: HashMap<End, End> = HashMap::new();
        let (ins, outs) = build(t, &mut nodes, &mut src)?;
        let (m, n) = (ins.len(), outs.len());
        for (k, d) in ins.iter().enumerate() {
            src.insert(*d, End::GIn(k));
        }
        for (k, s) in outs.iter().enumerate() {
            src.insert(End::GOut(k), *s);
        }
        let units: Vec<usize> = (0..nodes.len()).filter(|&v| nodes[v] == (1, 1)).collect();
        let mut tgt: HashMap<End, End> = src.iter().map(|(d, s)| (*s, *d)).collect();
        for &v in &units {
            let s = src.remove(&End::In(v, 0)).expect("unit input wired");
            let d = tgt.remove(&End::Out(v, 0)).expect("unit output wired");
            src.insert(d, s);
            tgt.insert(s, d);
        }
        let mut order: HashMap<usize, usize> = HashMap::new();
        let mut queue: Vec<usize> = Vec::new();
        let disc = |e: End, order: &mut HashMap<usize, usize>, queue: &mut Vec<usize>| {
            if let End::In(v, _) | End::Out(v, _) = e {
                if !order.contains_key(&v) {
                    order.insert(v, order.len());
                    queue.push(v);
                }
            }
        };
        for k in 0..m {
            disc(tgt[&End::GIn(k)], &mut order, &mut queue);
        }
        for k in 0..n {
            disc(src[&End::GOut(k)], &mut order, &mut queue);
        }
        let mut h = 0;
        while h < queue.len() {
            let v = queue[h];
            h += 1;
            let (a, b) = nodes[v];
            for i in 0..a {
                disc(src[&End::In(v, i)], &mut order, &mut queue);
            }
            for j in 0..b {
                disc(tgt[&End::Out(v, j)], &mut order, &mut queue);
            }
        }
        if order.len() != nodes.len() - units.len() {
            return Err(Error::Arity("disconnected wiring".into()));
        }
        let code = |e: End| match e {
            End::GIn(k) => Port::Input(k),
            End::Out(v, j) => Port::Node(order[&v], j),
            _ => unreachable!("sources are inputs or node outputs"),
        };
        let gnodes = queue
            .iter()
            .map(|&v| {
                let (a, b) = nodes[v];
                GraphNode { inputs: a, outputs: b, sources: (0..a).map(|i| code(src[&End::In(v, i)])).collect() }
            })
            .collect();
        Ok(FractionGraph {
            inputs: m,
            outputs: n,
            nodes: gnodes,
            output_sources: (0..n).map(|k| code(src[&End::GOut(k)])).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.nodes.iter().map(|v| v.inputs + v.outputs - 3).sum()
    }
}

fn build(t: &Term, nodes: &mut Vec<(usize, usize)>, src: &mut HashMap<End, End>) -> Result<(Vec<End>, Vec<End>)> {
    match t {
        Term::Unit | Term::Gen { .. } => {
            let (m, n) = t.arity();
            let v = nodes.len();
            nodes.push((m, n));
            Ok(((0..m).map(|i| End::In(v, i)).collect(), (0..n).map(|j| End::Out(v, j)).collect()))
        }
        Term::Gamma { num, den } => {
            let (q, p) = (num.len(), den.len());
            let bs: Vec<_> = den.iter().map(|b| build(b, nodes, src)).collect::<Result<_>>()?;
            let as_: Vec<_> = num.iter().map(|a| build(a, nodes, src)).collect::<Result<_>>()?;
            if bs.iter().any(|(_, o)| o.len() != q) || as_.iter().any(|(i, _)| i.len() != p) {
                return Err(Error::Arity(format!("ill-wired fraction {t}")));
            }
            for (j, (ai, _)) in as_.iter().enumerate() {
                for (i, d) in ai.iter().enumerate() {
                    src.insert(*d, bs[i].1[j]);
                }
            }
            Ok((bs.into_iter().flat_map(|b| b.0).collect(), as_.into_iter().flat_map(|a| a.1).collect()))
        }
    }
}

/// A matrix of terms. Bisequence matrices have constant output counts along
/// rows and constant input counts along columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TermMatrix {
    entries: Vec<Vec<Term>>,
}

impl TermMatrix {
    pub fn new(entries: Vec<Vec<Term>>) -> Result<Self> {
        let p = entries.first().map_or(0, Vec::len);
        if p == 0 || entries.iter().any(|r| r.len() != p) {
            return Err(Error::Arity("ragged or empty matrix".into()));
        }
        let m = Self { entries };
        for (i, r) in m.entries.iter().enumerate() {
            if r.iter().map(|e| e.arity().1).dedup().count() != 1 {
                return Err(Error::Arity(format!("row {i} has varying output counts")));
            }
        }
        for j in 0..p {
            if m.entries.iter().map(|r| r[j].arity().0).dedup().count() != 1 {
                return Err(Error::Arity(format!("column {j} has varying input counts")));
            }
        }
        Ok(m)
    }

    /// The `q×p` matrix of units.
    pub fn units(q: usize, p: usize) -> Self {
        Self { entries: vec![vec![Term::Unit; p]; q] }
    }

    /// Entry `(i, j)` is `θ_{x_j}^{y_i}`.
    pub fn of_generators(y: &[usize], x: &[usize]) -> Self {
        Self { entries: y.iter().map(|&yi| x.iter().map(|&xj| Term::gen(xj, yi)).collect()).collect() }
    }

    pub fn entries(&self) -> &[Vec<Term>] {
        &self.entries
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.entries.len(), self.entries[0].len())
    }

    /// Input leaf sequence (per column).
    pub fn rls(&self) -> Vec<usize> {
        self.entries[0].iter().map(|e| e.arity().0).collect()
    }

    /// Output leaf sequence (per row).
    pub fn cls(&self) -> Vec<usize> {
        self.entries.iter().map(|r| r[0].arity().1).collect()
    }

    pub fn arities(&self) -> Vec<Vec<(usize, usize)>> {
        self.entries.iter().map(|r| r.iter().map(Term::arity).collect()).collect()
    }

    pub fn dim(&self) -> usize {
        self.entries.iter().flatten().map(Term::dim).sum()
    }

    pub fn graphs(&self) -> Vec<Vec<FractionGraph>> {
        self.entries.iter().map(|r| r.iter().map(Term::graph).collect()).collect()
    }
}

/// How a block transverse pair cuts its two matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blocking {
    /// For each column `l` of the upper matrix, the sizes of its `t` row blocks.
    pub row_blocks: Vec<Vec<usize>>,
    /// For each row `i` of the lower matrix, the lengths of its `s` column runs.
    pub col_runs: Vec<Vec<usize>>,
}

fn compositions_into(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 || k > n {
        return vec![];
    }
    (1..n)
        .combinations(k - 1)
        .map(|c| {
            let pts: Vec<usize> = std::iter::once(0).chain(c).chain(std::iter::once(n)).collect();
            pts.windows(2).map(|w| w[1] - w[0]).collect()
        })
        .collect()
}

/// Finds the blocking that makes `(a, b)` a block transverse pair, given
/// only the `(inputs, outputs)` of the entries. `a` is `q×s`, `b` is `t×p`.
pub fn btp_blocking(a: &[Vec<(usize, usize)>], b: &[Vec<(usize, usize)>]) -> Option<Blocking> {
    let (q, s) = (a.len(), a.first()?.len());
    let t = b.len();
    b.first()?;
    if t > q {
        return None;
    }
    let comps = compositions_into(q, t);
    let mut row_blocks = Vec::with_capacity(s);
    let mut col_runs = vec![Vec::with_capacity(s); t];
    fn rec(
        l: usize,
        cpos: &mut Vec<usize>,
        a: &[Vec<(usize, usize)>],
        b: &[Vec<(usize, usize)>],
        comps: &[Vec<usize>],
        row_blocks: &mut Vec<Vec<usize>>,
        col_runs: &mut Vec<Vec<usize>>,
    ) -> bool {
        let (s, t, p) = (a[0].len(), b.len(), b[0].len());
        if l == s {
            return cpos.iter().all(|&c| c == p);
        }
        'comp: for qs in comps {
            let saved = cpos.clone();
            let mut r0 = 0;
            let mut runs = Vec::with_capacity(t);
            for i in 0..t {
                let ins = a[r0][l].0;
                if (r0..r0 + qs[i]).any(|r| a[r][l].0 != ins) || cpos[i] + ins > p {
                    *cpos = saved;
                    continue 'comp;
                }
                if (cpos[i]..cpos[i] + ins).any(|c| b[i][c].1 != qs[i]) {
                    *cpos = saved;
                    continue 'comp;
                }
                cpos[i] += ins;
                runs.push(ins);
                r0 += qs[i];
            }
            row_blocks.push(qs.clone());
            for (i, r) in runs.into_iter().enumerate() {
                col_runs[i].push(r);
            }
            if rec(l + 1, cpos, a, b, comps, row_blocks, col_runs) {
                return true;
            }
            row_blocks.pop();
            for c in col_runs.iter_mut() {
                c.pop();
            }
            *cpos = saved;
        }
        false
    }
    let mut cpos = vec![0; t];
    rec(0, &mut cpos, a, b, &comps, &mut row_blocks, &mut col_runs).then_some(Blocking { row_blocks, col_runs })
}

/// The blocking of a term-matrix pair, if it is a block transverse pair.
pub fn btp_decompose(a: &TermMatrix, b: &TermMatrix) -> Option<Blocking> {
    btp_blocking(&a.arities(), &b.arities())
}

/// `Υ(A, B)`: blockwise fractions over the BTP blocking, or `None` (zero).
pub fn upsilon(a: &TermMatrix, b: &TermMatrix) -> Option<TermMatrix> {
    let bl = btp_decompose(a, b)?;
    let t = b.entries.len();
    let s = a.entries[0].len();
    let mut out = vec![Vec::with_capacity(s); t];
    let mut cpos = vec![0usize; t];
    for l in 0..s {
        let mut r0 = 0;
        for i in 0..t {
            let qi = bl.row_blocks[l][i];
            let pi = bl.col_runs[i][l];
            let num: Vec<Term> = (r0..r0 + qi).map(|r| a.entries[r][l].clone()).collect();
            let den: Vec<Term> = b.entries[i][cpos[i]..cpos[i] + pi].to_vec();
            out[i].push(Term::gamma(num, den).ok()?);
            r0 += qi;
            cpos[i] += pi;
        }
    }
    Some(TermMatrix { entries: out })
}

/// Evaluates a string of matrices under the first association (leftmost
/// split first) that is a sequence of BTPs.
pub fn product(mats: &[TermMatrix]) -> Option<TermMatrix> {
    let r = mats.len();
    if r == 0 {
        return None;
    }
    let mut memo: BTreeMap<(usize, usize), Option<TermMatrix>> = BTreeMap::new();
    fn go(
        i: usize,
        j: usize,
        mats: &[TermMatrix],
        memo: &mut BTreeMap<(usize, usize), Option<TermMatrix>>,
    ) -> Option<TermMatrix> {
        if i == j {
            return Some(mats[i].clone());
        }
        if let Some(v) = memo.get(&(i, j)) {
            return v.clone();
        }
        let mut res = None;
        for k in (i..j).rev() {
            if let (Some(l), Some(r)) = (go(i, k, mats, memo), go(k + 1, j, mats, memo)) {
                if let Some(x) = upsilon(&l, &r) {
                    res = Some(x);
                    break;
                }
            }
        }
        memo.insert((i, j), res.clone());
        res
    }
    go(0, r - 1, mats, &mut memo)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn th(m: usize, n: usize) -> Term {
        Term::gen(m, n)
    }

    #[test]
    fn dimensions() {
        assert_eq!(th(3, 2).dim(), 2);
        assert_eq!(Term::gamma(vec![th(1, 2)], vec![th(2, 1)]).unwrap().dim(), 0);
        assert_eq!(th(1, 1), Term::Unit);
    }

    #[test]
    fn printing_and_parsing() {
        let t = Term::gamma(vec![th(2, 1), th(2, 1)], vec![th(1, 2), th(1, 2)]).unwrap();
        assert_eq!(t.to_string(), "γ(θ₂¹θ₂¹;θ₁²θ₁²)");
        assert_eq!(t.display(Notation::Fraction), "θ₂¹θ₂¹/θ₁²θ₁²");
        assert_eq!(t.display(Notation::Ascii), "g(t2^1 t2^1; t1^2 t1^2)");
        for nt in [Notation::Gamma, Notation::Ascii] {
            assert_eq!(parse_term(&t.display(nt)).unwrap(), t);
        }
        assert_eq!(parse_term("(θ₂¹θ₂¹/θ₁²θ₁²)").unwrap(), t);
        let sum = parse_terms("g(t2^1; t2^1 1 + 1 t2^1)").unwrap();
        assert_eq!(sum.len(), 2);
        assert!(parse_term("g(t2^1; t2^1)").is_err());
    }

    #[test]
    fn dual_swaps_arity() {
        let t = parse_term("g(t2^1 t2^1 t2^1; g(t1^2 1; t1^2) t1^3)").unwrap();
        assert_eq!(t.dual().arity(), (3, 2));
        assert_eq!(t.dual().dual(), t);
        assert_eq!(t.dual().to_string(), "γ(γ(θ₂¹;θ₂¹1)θ₃¹;θ₁²θ₁²θ₁²)");
    }

    #[test]
    fn arity_errors() {
        assert!(Term::gamma(vec![th(2, 1)], vec![th(1, 2)]).is_err());
        assert!(Term::gamma(vec![], vec![th(1, 2)]).is_err());
    }

    #[test]
    fn unit_legs_are_elided() {
        let a = Term::gamma(vec![th(2, 1)], vec![th(2, 1), Term::Unit]).unwrap();
        let g = a.graph();
        assert_eq!((g.inputs, g.outputs, g.nodes.len()), (3, 1, 2));
        assert_eq!(Term::Unit.graph().output_sources, vec![Port::Input(0)]);
        let padded = Term::gamma(vec![Term::Unit, Term::Unit], vec![th(1, 2)]).unwrap();
        assert_eq!(padded.graph(), th(1, 2).graph());
    }

    #[test]
    fn fraction_product_is_not_associative() {
        let w = th(2, 1);
        let ab = fraction(std::slice::from_ref(&w), &[w.clone(), Term::Unit]).unwrap();
        assert!(fraction(&[ab], &[w.clone(), Term::Unit, Term::Unit]).is_some());
        assert!(fraction(&[w.clone(), Term::Unit], &[w.clone(), Term::Unit, Term::Unit]).is_none());
    }

    #[test]
    fn trees_of_a_fraction() {
        let a = parse_term("g(t2^1 t2^1; t1^2 t2^2)").unwrap();
        assert_eq!(a.row_tree().to_string(), "(x(xx))");
        assert_eq!(a.col_tree().to_string(), "(xx)");
        let f = parse_term("g(t3^1 g(t2^1 t2^1; t1^2 t2^2); t1^2 t1^2 t1^2)").unwrap();
        let (up, low) = contact_sequences(&f).unwrap();
        assert_eq!(up, vec![vec![3], vec![1, 2]]);
        assert_eq!(low, vec![vec![2], vec![2], vec![2]]);
        assert!(contact_sequences(&th(2, 2)).is_err());
    }

    #[test]
    fn transverse_pair_is_one_block() {
        let a = TermMatrix::of_generators(&[1, 1], &[2]);
        let b = TermMatrix::of_generators(&[2], &[1, 1]);
        let bl = btp_decompose(&a, &b).unwrap();
        assert_eq!(bl.row_blocks, vec![vec![2]]);
        let u = upsilon(&a, &b).unwrap();
        assert_eq!(u.entries()[0][0].to_string(), "γ(θ₂¹θ₂¹;θ₁²θ₁²)");
    }

    #[test]
    fn mismatched_totals_are_zero() {
        let a = TermMatrix::of_generators(&[1, 1, 1], &[2]);
        let b = TermMatrix::of_generators(&[2], &[1, 1]);
        assert!(upsilon(&a, &b).is_none());
    }

    #[test]
    fn two_by_two_blocking() {
        let a = TermMatrix::of_generators(&[1, 5, 4, 3], &[2, 1]);
        let b = TermMatrix::of_generators(&[3, 1], &[1, 2, 3]);
        let bl = btp_decompose(&a, &b).unwrap();
        assert_eq!(bl.row_blocks, vec![vec![3, 1], vec![3, 1]]);
        assert_eq!(bl.col_runs, vec![vec![2, 1], vec![2, 1]]);
        let c = upsilon(&a, &b).unwrap();
        assert_eq!(c.shape(), (2, 2));
        assert_eq!(c.rls(), vec![3, 3]);
        assert_eq!(c.cls(), vec![10, 3]);
        assert_eq!(c.dim(), a.dim() + b.dim());
    }
}
