//! The posets `PP_{n,m}` of matrix sequences and their quotients `KK_{n+1,m+1}`.
//!
//! A base element pairs a vertex of `P_m^(n)` (an `(n+1)`-tuple of
//! permutations of `m`) with a vertex of `P_n^(m)`, written as the sequence
//! `A_1 … A_m B_n … B_1` of matrices over `{1, ^, v}` where `^` is `θ_2^1`
//! and `v` is `θ_1^2`. Transpositions swap an adjacent `A B` pair into `B A`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::diagonal::subdivision_complex;
use crate::error::{Error, Result};
use crate::partition::{weak_le, OrderedPartition};
use crate::terms::btp_blocking;
use crate::trees::{planar_tree_of, PlanarTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Entry {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "^")]
    Up,
    #[serde(rename = "v")]
    Down,
}

impl Entry {
    fn arity(self) -> (usize, usize) {
        match self {
            Entry::One => (1, 1),
            Entry::Up => (2, 1),
            Entry::Down => (1, 2),
        }
    }

    fn swapped(self) -> Entry {
        match self {
            Entry::One => Entry::One,
            Entry::Up => Entry::Down,
            Entry::Down => Entry::Up,
        }
    }

    fn symbol(self) -> char {
        match self {
            Entry::One => '1',
            Entry::Up => '^',
            Entry::Down => 'v',
        }
    }
}

/// Whether a matrix came from the `X` side (`A`) or the `Y` side (`B`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Kind {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Matrix {
    pub kind: Kind,
    pub rows: Vec<Vec<Entry>>,
}

impl Matrix {
    fn arities(&self) -> Vec<Vec<(usize, usize)>> {
        self.rows.iter().map(|r| r.iter().map(|e| e.arity()).collect()).collect()
    }

    fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.rows[0].len())
    }

    fn transposed_swapped(&self) -> Matrix {
        let (r, c) = self.shape();
        Matrix {
            kind: if self.kind == Kind::A { Kind::B } else { Kind::A },
            rows: (0..c).map(|j| (0..r).map(|i| self.rows[i][j].swapped()).collect()).collect(),
        }
    }

    fn is_con(&self) -> bool {
        let (r, c) = self.shape();
        let const_rows = self.rows.iter().all(|row| row.iter().all(|e| *e == row[0]));
        let const_cols = (0..c).all(|j| (0..r).all(|i| self.rows[i][j] == self.rows[0][j]));
        const_rows || const_cols
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|r| r.iter().map(|e| e.symbol()).collect()).collect();
        write!(f, "[{}]", rows.join(";"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MatrixSeq(pub Vec<Matrix>);

impl MatrixSeq {
    /// The word of kinds, e.g. `AAB`.
    pub fn sigma(&self) -> String {
        self.0.iter().map(|m| if m.kind == Kind::A { 'A' } else { 'B' }).collect()
    }

    /// Every matrix has constant rows or constant columns.
    pub fn is_con(&self) -> bool {
        self.0.iter().all(Matrix::is_con)
    }

    /// Some association of the sequence is a chain of block transverse pairs.
    pub fn is_composable(&self) -> bool {
        let mats: Vec<Vec<Vec<(usize, usize)>>> = self.0.iter().map(Matrix::arities).collect();
        let r = mats.len();
        if r == 0 {
            return true;
        }
        let mut memo: BTreeMap<(usize, usize), BTreeSet<Vec<Vec<(usize, usize)>>>> = BTreeMap::new();
        fn go(
            a: usize,
            b: usize,
            mats: &[Vec<Vec<(usize, usize)>>],
            memo: &mut BTreeMap<(usize, usize), BTreeSet<Vec<Vec<(usize, usize)>>>>,
        ) -> BTreeSet<Vec<Vec<(usize, usize)>>> {
            if a == b {
                return [mats[a].clone()].into_iter().collect();
            }
            if let Some(v) = memo.get(&(a, b)) {
                return v.clone();
            }
            let mut out = BTreeSet::new();
            for k in a..b {
                for l in go(a, k, mats, memo) {
                    for r in go(k + 1, b, mats, memo) {
                        if let Some(p) = arity_product(&l, &r) {
                            out.insert(p);
                        }
                    }
                }
            }
            memo.insert((a, b), out.clone());
            out
        }
        !go(0, r - 1, &mats, &mut memo).is_empty()
    }

    /// `(i, j, k)` for every `(i, j)`-edge pair at positions `k, k+1` (0-based).
    pub fn edge_pairs(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for k in 0..self.0.len().saturating_sub(1) {
            let (a, b) = (&self.0[k], &self.0[k + 1]);
            if a.kind != Kind::A || b.kind != Kind::B {
                continue;
            }
            let ((ra, ca), (rb, cb)) = (a.shape(), b.shape());
            if ra != rb + 1 || cb != ca + 1 || btp_blocking(&a.arities(), &b.arities()).is_none() {
                continue;
            }
            for i in 0..ra - 1 {
                for j in 0..ca {
                    if a.rows[i][j] == Entry::Up
                        && a.rows[i + 1][j] == Entry::Up
                        && b.rows[i][j] == Entry::Down
                        && b.rows[i][j + 1] == Entry::Down
                    {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    /// `T^k_{ij}`: replaces `A B` at `k, k+1` by `B` without column `j`, then
    /// `A` without row `i`. Indices are 0-based.
    pub fn transpose(&self, i: usize, j: usize, k: usize) -> Result<MatrixSeq> {
        if !self.edge_pairs().contains(&(i, j, k)) {
            return Err(Error::NotAnEdgePair(format!("({i},{j}) at {k} in {self}")));
        }
        let (a, b) = (&self.0[k], &self.0[k + 1]);
        let bn = Matrix {
            kind: Kind::B,
            rows: b
                .rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, e)| *e).collect())
                .collect(),
        };
        let an = Matrix {
            kind: Kind::A,
            rows: a.rows.iter().enumerate().filter(|(r, _)| *r != i).map(|(_, x)| x.clone()).collect(),
        };
        let mut v = self.0.clone();
        v[k] = bn;
        v[k + 1] = an;
        Ok(MatrixSeq(v))
    }

    /// Reverse, transpose each matrix, swap `^`/`v` and `A`/`B`.
    pub fn transpose_dual(&self) -> MatrixSeq {
        MatrixSeq(self.0.iter().rev().map(Matrix::transposed_swapped).collect())
    }
}

impl fmt::Display for MatrixSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|m| write!(f, "{m}"))
    }
}

fn arity_product(a: &[Vec<(usize, usize)>], b: &[Vec<(usize, usize)>]) -> Option<Vec<Vec<(usize, usize)>>> {
    let bl = btp_blocking(a, b)?;
    let (t, s) = (b.len(), a[0].len());
    let mut out = vec![Vec::with_capacity(s); t];
    let mut cpos = vec![0; t];
    for l in 0..s {
        let mut r0 = 0;
        for i in 0..t {
            let (qi, pi) = (bl.row_blocks[l][i], bl.col_runs[i][l]);
            let ins: usize = b[i][cpos[i]..cpos[i] + pi].iter().map(|x| x.0).sum();
            let outs: usize = (r0..r0 + qi).map(|r| a[r][l].1).sum();
            out[i].push((ins, outs));
            r0 += qi;
            cpos[i] += pi;
        }
    }
    Some(out)
}

/// Row of the `^` in level `i` (1-based, counted from the root) for the
/// permutation `a` written leaf level first.
fn pos(a: &[u8], i: usize) -> usize {
    let m = a.len();
    let g = a[m - i];
    1 + a[m - i + 1..].iter().filter(|&&x| x < g).count()
}

/// `A_1 … A_m` for an `(n+1)`-tuple of permutations of `m`.
pub fn x_seq(vs: &[Vec<u8>]) -> Vec<Matrix> {
    let m = vs[0].len();
    (1..=m)
        .map(|i| Matrix {
            kind: Kind::A,
            rows: vs
                .iter()
                .map(|v| (1..=i).map(|c| if c == pos(v, i) { Entry::Up } else { Entry::One }).collect())
                .collect(),
        })
        .collect()
}

/// `B_n … B_1` for an `(m+1)`-tuple of permutations of `n`.
pub fn y_seq(ws: &[Vec<u8>]) -> Vec<Matrix> {
    let n = ws[0].len();
    (1..=n)
        .rev()
        .map(|j| Matrix {
            kind: Kind::B,
            rows: (1..=j)
                .map(|r| ws.iter().map(|w| if r == pos(w, j) { Entry::Down } else { Entry::One }).collect())
                .collect(),
        })
        .collect()
}

/// A vertex of `P_m^(n) × P_n^(m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseElement {
    pub x: Vec<Vec<u8>>,
    pub y: Vec<Vec<u8>>,
    pub seq: MatrixSeq,
}

impl BaseElement {
    fn perms(&self) -> impl Iterator<Item = &Vec<u8>> {
        self.x.iter().chain(&self.y)
    }
}

/// Componentwise weak order on tuples of permutations.
pub fn product_le(u: &BaseElement, v: &BaseElement) -> bool {
    u.perms().zip(v.perms()).all(|(a, b)| weak_le(a, b))
}

/// The base elements `X_m^{n+1} × Y_n^{m+1}`; `n = 0` is allowed.
pub fn build_xy(m: usize, n: usize) -> Vec<BaseElement> {
    let xs = subdivision_complex(m, n).vertices();
    let ys = subdivision_complex(n, m).vertices();
    let mut out = Vec::with_capacity(xs.len() * ys.len());
    for x in &xs {
        for y in &ys {
            let mut s = if m > 0 { x_seq(x) } else { vec![] };
            if n > 0 {
                s.extend(y_seq(y));
            }
            out.push(BaseElement { x: x.clone(), y: y.clone(), seq: MatrixSeq(s) });
        }
    }
    out
}

/// A finite relation closed transitively, with its covering pairs.
#[derive(Clone, Debug)]
pub struct Poset {
    pub labels: Vec<String>,
    /// `above[i]`: elements strictly reachable from `i`.
    pub above: Vec<BTreeSet<usize>>,
    pub covers: Vec<(usize, usize)>,
}

impl Poset {
    pub fn from_relation(labels: Vec<String>, rel: &BTreeSet<(usize, usize)>) -> Poset {
        let n = labels.len();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in rel {
            adj[a].push(b);
        }
        let above: Vec<BTreeSet<usize>> = (0..n)
            .map(|i| {
                let mut seen = BTreeSet::new();
                let mut st = vec![i];
                while let Some(x) = st.pop() {
                    for &y in &adj[x] {
                        if seen.insert(y) {
                            st.push(y);
                        }
                    }
                }
                seen
            })
            .collect();
        let mut covers = Vec::new();
        for i in 0..n {
            for &j in &above[i] {
                if j != i && !above[i].iter().any(|&k| k != j && k != i && above[k].contains(&j)) {
                    covers.push((i, j));
                }
            }
        }
        Poset { labels, above, covers }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn is_acyclic(&self) -> bool {
        (0..self.len()).all(|i| !self.above[i].contains(&i))
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.above[a].contains(&b)
    }
}

/// Hasse diagram in DOT, nodes in index order.
pub fn export_dot(p: &Poset) -> String {
    let mut s = String::from("digraph poset {\n");
    for (i, l) in p.labels.iter().enumerate() {
        s.push_str(&format!("  n{i} [label=\"{}\"];\n", l.replace('"', "\\\"")));
    }
    for (a, b) in &p.covers {
        s.push_str(&format!("  n{a} -> n{b};\n"));
    }
    s.push_str("}\n");
    s
}

/// `PP_{n,m}` with the data needed for quotients.
#[derive(Clone, Debug)]
pub struct PPPoset {
    pub n: usize,
    pub m: usize,
    pub base: Vec<BaseElement>,
    pub elements: Vec<MatrixSeq>,
    /// Elements reached from base element `u` with kind word `σ`.
    pub t_sigma: BTreeMap<(usize, String), BTreeSet<usize>>,
    pub poset: Poset,
}

fn runs(sig: &str, t: char) -> Vec<usize> {
    let mut out = Vec::new();
    let mut cur = 0;
    for c in sig.chars() {
        if c == t {
            cur += 1;
        } else if cur > 0 {
            out.push(cur);
            cur = 0;
        }
    }
    if cur > 0 {
        out.push(cur);
    }
    out
}

fn same_runs(a: &[u8], b: &[u8], rl: &[usize]) -> bool {
    let mut k = 0;
    for &r in rl {
        let (sa, sb): (BTreeSet<u8>, BTreeSet<u8>) =
            (a[k..k + r].iter().copied().collect(), b[k..k + r].iter().copied().collect());
        if sa != sb {
            return false;
        }
        k += r;
    }
    true
}

fn chi_perm(a: &[u8]) -> Vec<u8> {
    let m = a.len() as u8;
    a.iter().rev().map(|x| m + 1 - x).collect()
}

/// Builds `PP_{n,m}` (`m+n ≤ 4` is the intended range).
pub fn build_pp(n: usize, m: usize) -> PPPoset {
    let base = build_xy(m, n);
    let mut index: BTreeMap<MatrixSeq, usize> = BTreeMap::new();
    let mut elements: Vec<MatrixSeq> = Vec::new();
    let mut intern = |s: &MatrixSeq, elements: &mut Vec<MatrixSeq>| -> usize {
        *index.entry(s.clone()).or_insert_with(|| {
            elements.push(s.clone());
            elements.len() - 1
        })
    };
    for b in &base {
        intern(&b.seq, &mut elements);
    }
    let mut rel: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut t_sigma: BTreeMap<(usize, String), BTreeSet<usize>> = BTreeMap::new();
    for (ui, b) in base.iter().enumerate() {
        let s0 = intern(&b.seq, &mut elements);
        t_sigma.entry((ui, b.seq.sigma())).or_default().insert(s0);
        let mut seen = BTreeSet::from([s0]);
        let mut st = vec![b.seq.clone()];
        while let Some(c) = st.pop() {
            let ci = intern(&c, &mut elements);
            for (i, j, k) in c.edge_pairs() {
                let d = c.transpose(i, j, k).expect("listed edge pair");
                let di = intern(&d, &mut elements);
                rel.insert((ci, di));
                t_sigma.entry((ui, d.sigma())).or_default().insert(di);
                if seen.insert(di) {
                    st.push(d);
                }
            }
        }
    }
    let nb = base.len();
    let le: Vec<Vec<bool>> = (0..nb).map(|a| (0..nb).map(|b| product_le(&base[a], &base[b])).collect()).collect();
    let cover = |a: usize, b: usize| a != b && le[a][b] && !(0..nb).any(|c| c != a && c != b && le[a][c] && le[c][b]);
    for a in 0..nb {
        for b in 0..nb {
            if a != b && le[a][b] {
                rel.insert((a, b));
            }
        }
    }
    let sigmas: BTreeSet<String> = t_sigma.keys().map(|(_, s)| s.clone()).collect();
    for sg in &sigmas {
        let (ra, rb) = (runs(sg, 'A'), runs(sg, 'B'));
        for a in 0..nb {
            let Some(za) = t_sigma.get(&(a, sg.clone())) else { continue };
            for b in 0..nb {
                if a == b || !le[a][b] {
                    continue;
                }
                let Some(zb) = t_sigma.get(&(b, sg.clone())) else { continue };
                let ok = cover(a, b)
                    || (base[a].x.iter().zip(&base[b].x).all(|(x1, x2)| same_runs(&chi_perm(x1), &chi_perm(x2), &ra))
                        && base[a].y.iter().zip(&base[b].y).all(|(y1, y2)| same_runs(y1, y2, &rb)));
                if ok {
                    for &z1 in za {
                        for &z2 in zb {
                            if z1 != z2 {
                                rel.insert((z1, z2));
                            }
                        }
                    }
                }
            }
        }
    }
    let labels = elements.iter().map(MatrixSeq::to_string).collect();
    let poset = Poset::from_relation(labels, &rel);
    PPPoset { n, m, base, elements, t_sigma, poset }
}

impl PPPoset {
    pub fn con_count(&self) -> usize {
        self.elements.iter().filter(|e| e.is_con()).count()
    }

    pub fn index_of(&self, s: &MatrixSeq) -> Option<usize> {
        self.elements.iter().position(|e| e == s)
    }
}

fn vertex_tree(a: &[u8]) -> PlanarTree {
    let p = OrderedPartition::from_permutation(a).expect("vertices are permutations");
    planar_tree_of(&p)
}

/// `KK_{n+1,m+1} = PP_{n,m}/∼`.
#[derive(Clone, Debug)]
pub struct KKQuotient {
    pub pp: PPPoset,
    /// Class of each element of `pp`.
    pub projection: Vec<usize>,
    pub poset: Poset,
}

/// Identifies comparable elements reached by the same `σ` from base
/// elements whose permutations have the same trees.
pub fn quotient_kk(n: usize, m: usize) -> KKQuotient {
    let pp = build_pp(n, m);
    let ne = pp.elements.len();
    let mut parent: Vec<usize> = (0..ne).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let trees: Vec<Vec<PlanarTree>> = pp.base.iter().map(|b| b.perms().map(|v| vertex_tree(v)).collect()).collect();
    let nb = pp.base.len();
    let sigmas: BTreeSet<&String> = pp.t_sigma.keys().map(|(_, s)| s).collect();
    for a in 0..nb {
        for b in 0..nb {
            if a == b || trees[a] != trees[b] {
                continue;
            }
            for sg in &sigmas {
                let (Some(za), Some(zb)) = (pp.t_sigma.get(&(a, (*sg).clone())), pp.t_sigma.get(&(b, (*sg).clone())))
                else {
                    continue;
                };
                for &i in za {
                    for &j in zb {
                        if i != j && (pp.poset.less(i, j) || pp.poset.less(j, i)) {
                            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                            parent[ri] = rj;
                        }
                    }
                }
            }
        }
    }
    let mut class_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut projection = Vec::with_capacity(ne);
    let mut labels: Vec<String> = Vec::new();
    for i in 0..ne {
        let r = find(&mut parent, i);
        let c = *class_of.entry(r).or_insert_with(|| {
            labels.push(pp.poset.labels[i].clone());
            labels.len() - 1
        });
        projection.push(c);
    }
    let mut rel = BTreeSet::new();
    for (a, up) in pp.poset.above.iter().enumerate() {
        for &b in up {
            if projection[a] != projection[b] {
                rel.insert((projection[a], projection[b]));
            }
        }
    }
    let poset = Poset::from_relation(labels, &rel);
    KKQuotient { pp, projection, poset }
}

/// Counts of the `(m,n)`-subdivision of the face `m̲|(n̲+m)` of `P_{m+n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SubdivisionCount {
    pub basic_vertices: usize,
    pub top_cells: usize,
}

/// Vertices of `X × Y` not already vertices of `P_{m+n}`, and top cells of
/// the product subdivision `P_m^(n) × P_n^(m)`.
pub fn count_basic_subdivision(m: usize, n: usize, cell: &OrderedPartition) -> Result<SubdivisionCount> {
    let want = OrderedPartition::new(m + n, vec![(1..=m as u8).collect(), (m as u8 + 1..=(m + n) as u8).collect()])?;
    if *cell != want {
        return Err(Error::Unsupported(format!("({m},{n})-subdivision is defined on {want}, not {cell}")));
    }
    let (x, y) = (subdivision_complex(m, n), subdivision_complex(n, m));
    let fact = |k: usize| (1..=k).product::<usize>();
    Ok(SubdivisionCount {
        basic_vertices: x.vertices().len() * y.vertices().len() - fact(m) * fact(n),
        top_cells: x.top.len().max(1) * y.top.len().max(1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> MatrixSeq {
        let mut out = Vec::new();
        for part in s.trim_start_matches('[').trim_end_matches(']').split("][") {
            let rows: Vec<Vec<Entry>> = part
                .split(';')
                .map(|r| {
                    r.chars()
                        .map(|c| match c {
                            '^' => Entry::Up,
                            'v' => Entry::Down,
                            _ => Entry::One,
                        })
                        .collect()
                })
                .collect();
            let kind = if rows.iter().flatten().any(|e| *e == Entry::Down) { Kind::B } else { Kind::A };
            out.push(Matrix { kind, rows });
        }
        MatrixSeq(out)
    }

    #[test]
    fn smallest_poset() {
        let pp = build_pp(1, 1);
        let labels: BTreeSet<&str> = pp.poset.labels.iter().map(String::as_str).collect();
        assert_eq!(labels, BTreeSet::from(["[^;^][vv]", "[v][^]"]));
        assert_eq!(pp.poset.covers.len(), 1);
        let (a, b) = pp.poset.covers[0];
        assert_eq!((pp.poset.labels[a].as_str(), pp.poset.labels[b].as_str()), ("[^;^][vv]", "[v][^]"));
    }

    #[test]
    fn transposition_chain() {
        let u1 = seq("[^;^][^1;^1][vvv]");
        let t1 = u1.transpose(0, 0, 1).unwrap();
        assert_eq!(t1.to_string(), "[^;^][vv][^1]");
        assert_eq!(t1.sigma(), "ABA");
        let (i, j, k) = t1.edge_pairs()[0];
        assert_eq!(t1.transpose(i, j, k).unwrap().to_string(), "[v][^][^1]");
        let u2 = seq("[^;^][^1;1^][vvv]");
        assert!(u2.edge_pairs().is_empty());
        assert!(matches!(u2.transpose(0, 0, 1), Err(Error::NotAnEdgePair(_))));
    }

    #[test]
    fn dual_is_an_involution() {
        let u = seq("[^;^][^1;^1][vvv]");
        assert_eq!(u.transpose_dual().transpose_dual(), u);
        assert_eq!(u.transpose_dual().to_string(), "[^;^;^][vv;11][vv]");
    }

    #[test]
    fn dot_of_empty_poset() {
        let p = Poset::from_relation(vec![], &BTreeSet::new());
        assert_eq!(export_dot(&p), "digraph poset {\n}\n");
    }

    #[test]
    fn subdivision_needs_the_distinguished_face() {
        let c: OrderedPartition = "12|34".parse().unwrap();
        assert_eq!(count_basic_subdivision(2, 2, &c).unwrap(), SubdivisionCount { basic_vertices: 12, top_cells: 9 });
        assert!(count_basic_subdivision(3, 1, &c).is_err());
    }

    #[test]
    fn symmetric_group_quotient_is_catalan() {
        for (k, cat) in [(1, 1), (2, 2), (3, 5), (4, 14)] {
            let q = quotient_kk(0, k);
            assert_eq!(q.pp.elements.len(), (1..=k).product::<usize>());
            assert_eq!(q.poset.len(), cat);
        }
    }
}
