//! Faces of permutahedra as ordered set partitions.
//!
//! A face of `P_n` is an ordered list of nonempty disjoint blocks covering
//! `{1..n}`; its dimension is `n - #blocks`. Vertices are permutations
//! (all blocks singletons). The text form joins blocks with `|`, e.g. `13|24`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::chain::Z2Chain;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPartition", into = "RawPartition")]
pub struct OrderedPartition {
    n: usize,
    blocks: Vec<Vec<u8>>,
}

#[derive(Serialize, Deserialize)]
struct RawPartition {
    n: usize,
    blocks: Vec<Vec<u8>>,
}

impl TryFrom<RawPartition> for OrderedPartition {
    type Error = Error;
    fn try_from(r: RawPartition) -> Result<Self> {
        OrderedPartition::new(r.n, r.blocks)
    }
}

impl From<OrderedPartition> for RawPartition {
    fn from(p: OrderedPartition) -> Self {
        RawPartition { n: p.n, blocks: p.blocks }
    }
}

impl OrderedPartition {
    /// Validates and canonicalizes (blocks sorted internally).
    pub fn new(n: usize, blocks: Vec<Vec<u8>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        let mut blocks = blocks;
        for b in blocks.iter_mut() {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            b.sort_unstable();
            for &e in b.iter() {
                let e = e as usize;
                if e == 0 || e > n {
                    return Err(Error::InvalidPartition(format!("element {e} outside 1..{n}")));
                }
                if seen[e] {
                    return Err(Error::InvalidPartition(format!("element {e} repeated")));
                }
                seen[e] = true;
            }
        }
        if let Some(miss) = (1..=n).find(|&e| !seen[e]) {
            return Err(Error::InvalidPartition(format!("element {miss} missing")));
        }
        Ok(Self { n, blocks })
    }

    pub(crate) fn from_blocks_unchecked(n: usize, blocks: Vec<Vec<u8>>) -> Self {
        Self { n, blocks }
    }

    /// The top cell `12…n`.
    pub fn top(n: usize) -> Self {
        Self { n, blocks: if n == 0 { vec![] } else { vec![(1..=n as u8).collect()] } }
    }

    /// The vertex `a₁|…|a_n`.
    pub fn from_permutation(word: &[u8]) -> Result<Self> {
        Self::new(word.len(), word.iter().map(|&a| vec![a]).collect())
    }

    pub fn as_permutation(&self) -> Option<Vec<u8>> {
        self.is_vertex().then(|| self.blocks.iter().map(|b| b[0]).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<u8>] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        self.n - self.blocks.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    /// Every ordered 2-split of one block.
    pub fn boundary(&self) -> Z2Chain<OrderedPartition> {
        let mut out = Z2Chain::new();
        for (k, b) in self.blocks.iter().enumerate() {
            for r in 1..b.len() {
                for left in b.iter().copied().combinations(r) {
                    let right: Vec<u8> = b.iter().copied().filter(|e| !left.contains(e)).collect();
                    let mut blocks = self.blocks[..k].to_vec();
                    blocks.push(left);
                    blocks.push(right);
                    blocks.extend_from_slice(&self.blocks[k + 1..]);
                    out.add(Self { n: self.n, blocks });
                }
            }
        }
        out
    }

    /// All faces of this face (itself included).
    pub fn faces(&self) -> Vec<OrderedPartition> {
        let per_block: Vec<Vec<Vec<Vec<u8>>>> = self.blocks.iter().map(|b| ordered_partitions(b)).collect();
        per_block
            .iter()
            .multi_cartesian_product()
            .map(|parts| Self { n: self.n, blocks: parts.into_iter().flatten().cloned().collect() })
            .collect()
    }

    /// Reverses the blocks and sends `e` to `n+1-e`.
    pub fn chi(&self) -> Self {
        let n = self.n as u8;
        let blocks = self
            .blocks
            .iter()
            .rev()
            .map(|b| {
                let mut c: Vec<u8> = b.iter().map(|&e| n + 1 - e).collect();
                c.sort_unstable();
                c
            })
            .collect();
        Self { n: self.n, blocks }
    }

    /// Renames `e` to the `e`-th smallest element of `block`.
    pub fn relabel(&self, block: &[u8]) -> Self {
        let mut s = block.to_vec();
        s.sort_unstable();
        let blocks = self.blocks.iter().map(|b| b.iter().map(|&e| s[e as usize - 1]).collect()).collect();
        Self { n: self.n, blocks }
    }
}

fn ordered_partitions(set: &[u8]) -> Vec<Vec<Vec<u8>>> {
    if set.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for r in 1..=set.len() {
        for first in set.iter().copied().combinations(r) {
            let rest: Vec<u8> = set.iter().copied().filter(|e| !first.contains(e)).collect();
            for tail in ordered_partitions(&rest) {
                let mut p = vec![first.clone()];
                p.extend(tail);
                out.push(p);
            }
        }
    }
    out
}

/// All faces of `P_n`, optionally of one dimension, sorted by dimension then blocks.
pub fn enumerate_faces(n: usize, dim: Option<usize>) -> Result<Vec<OrderedPartition>> {
    if n == 0 {
        return Err(Error::InvalidPartition("ground set must be nonempty".into()));
    }
    let set: Vec<u8> = (1..=n as u8).collect();
    let mut out: Vec<OrderedPartition> = ordered_partitions(&set)
        .into_iter()
        .map(|blocks| OrderedPartition { n, blocks })
        .filter(|p| dim.is_none_or(|d| p.dim() == d))
        .collect();
    out.sort_by(|a, b| (a.dim(), &a.blocks).cmp(&(b.dim(), &b.blocks)));
    Ok(out)
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n > 9 { "," } else { "" };
        let s = self.blocks.iter().map(|b| b.iter().join(sep)).join("|");
        f.write_str(&s)
    }
}

impl FromStr for OrderedPartition {
    type Err = Error;

    /// Accepts `13|24`, or `1,3|2,4` when elements exceed 9. The ground set
    /// size is the number of elements.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let comma = s.contains(',');
        let mut blocks = Vec::new();
        for part in s.split('|') {
            let items: Vec<&str> = if comma {
                part.split(',').map(str::trim).collect()
            } else {
                part.trim().char_indices().map(|(i, c)| &part.trim()[i..i + c.len_utf8()]).collect()
            };
            let mut b = Vec::new();
            for it in items {
                let v: u8 = it.parse().map_err(|_| Error::InvalidPartition(format!("bad element {it:?} in {s:?}")))?;
                b.push(v);
            }
            blocks.push(b);
        }
        let n = blocks.iter().map(Vec::len).sum();
        OrderedPartition::new(n, blocks)
    }
}

/// Index data `(i; j)` of a combinatorial join.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct JoinIndex {
    pub i: Vec<usize>,
    pub j: Vec<usize>,
}

impl JoinIndex {
    pub fn s(&self) -> usize {
        self.i.iter().chain(&self.j).copied().max().unwrap_or(0)
    }
}

impl fmt::Display for JoinIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{})", self.i.iter().join(","), self.j.iter().join(","))
    }
}

/// `A₁|…|A_k ∗_(i;j) B₁|…|B_l`, a face of `P_{m+n}`.
pub fn comb_join(a: &OrderedPartition, b: &OrderedPartition, ij: &JoinIndex) -> Result<OrderedPartition> {
    let bad = |msg: &str| Err(Error::InvalidJoinIndex(format!("{ij}: {msg}")));
    if ij.i.len() != a.blocks.len() || ij.j.len() != b.blocks.len() {
        return bad("lengths do not match the block counts");
    }
    if !ij.i.windows(2).all(|w| w[0] < w[1]) || !ij.j.windows(2).all(|w| w[0] < w[1]) {
        return bad("indices must be strictly increasing");
    }
    let s = ij.s();
    let mut covered = vec![false; s + 1];
    for &x in ij.i.iter().chain(&ij.j) {
        if x == 0 {
            return bad("indices start at 1");
        }
        covered[x] = true;
    }
    if covered[1..].iter().any(|c| !c) {
        return bad("i ∪ j must be {1..s}");
    }
    let m = a.n as u8;
    let mut blocks = vec![Vec::new(); s];
    for (r, &pos) in ij.i.iter().enumerate() {
        blocks[pos - 1].extend_from_slice(&a.blocks[r]);
    }
    for (t, &pos) in ij.j.iter().enumerate() {
        blocks[pos - 1].extend(b.blocks[t].iter().map(|&e| e + m));
    }
    OrderedPartition::new(a.n + b.n, blocks)
}

/// The unique triple `(a, b, (i;j))` with `comb_join(a, b, ij) = e`.
pub fn join_decompose(
    e: &OrderedPartition,
    m: usize,
    n: usize,
) -> Result<(OrderedPartition, OrderedPartition, JoinIndex)> {
    if m == 0 || n == 0 || e.n != m + n {
        return Err(Error::InvalidPartition(format!("{e} is not a face of P_{m}+P_{n}")));
    }
    let (mut ab, mut bb, mut i, mut j) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for (r, blk) in e.blocks.iter().enumerate() {
        let lo: Vec<u8> = blk.iter().copied().filter(|&x| (x as usize) <= m).collect();
        let hi: Vec<u8> = blk.iter().copied().filter(|&x| (x as usize) > m).map(|x| x - m as u8).collect();
        if !lo.is_empty() {
            ab.push(lo);
            i.push(r + 1);
        }
        if !hi.is_empty() {
            bb.push(hi);
            j.push(r + 1);
        }
    }
    Ok((OrderedPartition::new(m, ab)?, OrderedPartition::new(n, bb)?, JoinIndex { i, j }))
}

/// One row of a join table.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct JoinRow {
    pub index: JoinIndex,
    pub a: OrderedPartition,
    pub b: OrderedPartition,
    pub join: OrderedPartition,
}

/// All joins of faces of `P_m` and `P_n` with `|i ∪ j| = s`.
pub fn join_table(m: usize, n: usize, s: usize) -> Result<Vec<JoinRow>> {
    let mut rows = Vec::new();
    for a in enumerate_faces(m, None)? {
        for b in enumerate_faces(n, None)? {
            let (k, l) = (a.blocks.len(), b.blocks.len());
            if s < k.max(l) || s > k + l {
                continue;
            }
            for i in (1..=s).combinations(k) {
                let rest: Vec<usize> = (1..=s).filter(|x| !i.contains(x)).collect();
                // j must contain the complement of i and l - |rest| of i's positions
                if rest.len() > l {
                    continue;
                }
                for extra in i.iter().copied().combinations(l - rest.len()) {
                    let mut j = rest.clone();
                    j.extend(extra);
                    j.sort_unstable();
                    let index = JoinIndex { i: i.clone(), j };
                    let join = comb_join(&a, &b, &index)?;
                    rows.push(JoinRow { index, a: a.clone(), b: b.clone(), join });
                }
            }
        }
    }
    rows.sort();
    Ok(rows)
}

/// The codimension-1 face `e_(y,x)` of `P_{|x|+|y|-2}`.
///
/// `y` is the output column and `x` the input row. Returns `None` when the
/// formula leaves one of the two blocks empty.
pub fn special_cell(y: &[usize], x: &[usize]) -> Result<Option<OrderedPartition>> {
    if x.is_empty() || y.is_empty() || x.contains(&0) || y.contains(&0) {
        return Err(Error::InvalidSequence("leaf sequences must be nonempty with positive entries".into()));
    }
    let m: usize = x.iter().sum();
    let n: usize = y.iter().sum();
    if m + n < 3 {
        return Err(Error::InvalidSequence("need |x| + |y| >= 3".into()));
    }
    let (a1, b1): (Vec<usize>, Vec<usize>) = if x.iter().all(|&e| e == 1) {
        ((1..m).collect(), vec![])
    } else if x.len() == 1 {
        (vec![], (1..m).collect())
    } else {
        // x is read on the inverted (input) tree, which cancels the reflection a -> m - a
        gap_split(x)
    };
    let (a2, b2): (Vec<usize>, Vec<usize>) = if y.iter().all(|&e| e == 1) {
        (vec![], (1..n).collect())
    } else if y.len() == 1 {
        ((1..n).collect(), vec![])
    } else {
        gap_split(y)
    };
    let a: Vec<u8> = a1.into_iter().chain(a2.into_iter().map(|e| e + m - 1)).map(|e| e as u8).collect();
    let b: Vec<u8> = b1.into_iter().chain(b2.into_iter().map(|e| e + m - 1)).map(|e| e as u8).collect();
    if a.is_empty() || b.is_empty() {
        return Ok(None);
    }
    OrderedPartition::new(m + n - 2, vec![a, b]).map(Some)
}

/// Gaps of a leaf sequence: (inside the groups, between the groups).
fn gap_split(v: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let (mut inner, mut root, mut pos) = (Vec::new(), Vec::new(), 0);
    for (k, &e) in v.iter().enumerate() {
        inner.extend((1..e).map(|t| pos + t));
        pos += e;
        if k + 1 < v.len() {
            root.push(pos);
        }
    }
    (inner, root)
}

/// Weak order on permutations: `b` is reached from `a` by swapping adjacent ascents.
pub fn weak_le(a: &[u8], b: &[u8]) -> bool {
    // a ≤ b iff every inverted value pair of a is inverted in b
    let pos = |w: &[u8]| {
        let mut p = vec![0usize; w.len() + 1];
        for (i, &x) in w.iter().enumerate() {
            p[x as usize] = i;
        }
        p
    };
    if a.len() != b.len() {
        return false;
    }
    let (pa, pb) = (pos(a), pos(b));
    let n = a.len();
    (1..=n).all(|x| ((x + 1)..=n).all(|y| pa[x] < pa[y] || pb[x] > pb[y]))
}
