//! Step matrices, derived matrices and the diagonal `Δ_P`.
//!
//! A permutation is read as a staircase: the first letter sits in the
//! bottom-left corner, a smaller next letter goes one row up, a larger one
//! one column right. Guarded down/right shifts of subsets produce derived
//! matrices; the columns and the reversed rows of a derived matrix form a
//! complementary pair, and the pairs sum to `Δ_P` of the top cell.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::chain::Z2Chain;
use crate::error::{Error, Result};
use crate::partition::OrderedPartition;

/// A `q×p` matrix over `{0} ∪ {1..n}`, zero meaning empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ShiftMatrix {
    rows: Vec<Vec<u8>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftKind {
    Down,
    Right,
}

impl ShiftMatrix {
    pub fn new(rows: Vec<Vec<u8>>) -> Result<Self> {
        let p = rows.first().map_or(0, Vec::len);
        if p == 0 || rows.iter().any(|r| r.len() != p) {
            return Err(Error::Arity("ragged or empty matrix".into()));
        }
        let mut seen: Vec<u8> = rows.iter().flatten().copied().filter(|&e| e != 0).collect();
        seen.sort_unstable();
        if seen.iter().enumerate().any(|(k, &e)| e as usize != k + 1) {
            return Err(Error::InvalidPartition("entries must be 1..n once each".into()));
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn q(&self) -> usize {
        self.rows.len()
    }

    pub fn p(&self) -> usize {
        self.rows[0].len()
    }

    pub fn row_entries(&self, i: usize) -> Vec<u8> {
        self.rows[i].iter().copied().filter(|&e| e != 0).collect()
    }

    pub fn col_entries(&self, j: usize) -> Vec<u8> {
        self.rows.iter().map(|r| r[j]).filter(|&e| e != 0).collect()
    }

    /// Sorted nonzero entries.
    pub fn entries(&self) -> Vec<u8> {
        let mut v: Vec<u8> = self.rows.iter().flatten().copied().filter(|&e| e != 0).collect();
        v.sort_unstable();
        v
    }

    /// `A_j` = column `j`, `B_i` = row `i`, returned as `(A₁|…|A_p, B_q|…|B₁)`.
    pub fn complementary_pair(&self) -> (OrderedPartition, OrderedPartition) {
        let n = self.entries().len();
        let a = (0..self.p()).map(|j| self.col_entries(j)).collect();
        let b = (0..self.q()).rev().map(|i| self.row_entries(i)).collect();
        (OrderedPartition::from_blocks_unchecked(n, a), OrderedPartition::from_blocks_unchecked(n, b))
    }

    /// `D_S` on row `index` or `R_T` on column `index` (0-based).
    ///
    /// Returns the matrix unchanged when the guard fails.
    pub fn shift(&self, kind: ShiftKind, index: usize, subset: &[u8]) -> Result<Self> {
        let line = match kind {
            ShiftKind::Down if index < self.q() => self.row_entries(index),
            ShiftKind::Right if index < self.p() => self.col_entries(index),
            _ => return Err(Error::OutOfRange(format!("{kind:?} index {index}"))),
        };
        if subset.iter().any(|e| !line.contains(e)) || (!subset.is_empty() && subset.len() >= line.len()) {
            return Err(Error::InvalidSubset(format!("{subset:?} is not a proper subset of {line:?}")));
        }
        Ok(match kind {
            ShiftKind::Down => self.shift_down(index, subset),
            ShiftKind::Right => self.transpose().shift_down(index, subset).map(|m| m.transpose()),
        }
        .unwrap_or_else(|| self.clone()))
    }

    fn transpose(&self) -> Self {
        Self { rows: (0..self.p()).map(|j| self.rows.iter().map(|r| r[j]).collect()).collect() }
    }

    // The right shift is the down shift of the transpose; the guards read
    // "max of the next line < min S" and "next line empty from min S onward".
    fn shift_down(&self, i: usize, s: &[u8]) -> Option<Self> {
        let mn = *s.iter().min()?;
        if i + 1 >= self.q() {
            return None;
        }
        let j = self.rows[i].iter().position(|&e| e == mn)?;
        if self.row_entries(i + 1).iter().any(|&e| e >= mn) {
            return None;
        }
        if self.rows[i + 1][j..].iter().any(|&e| e != 0) {
            return None;
        }
        let mut rows = self.rows.clone();
        for k in 0..self.p() {
            if s.contains(&rows[i][k]) {
                let t = rows[i][k];
                rows[i][k] = rows[i + 1][k];
                rows[i + 1][k] = t;
            }
        }
        Some(Self { rows })
    }

    /// Reads the staircase back; `None` unless this is a step matrix.
    pub fn permutation(&self) -> Option<Vec<u8>> {
        let (mut i, mut j) = (self.q() - 1, 0);
        let mut word = vec![self.rows[i][j]];
        if word[0] == 0 {
            return None;
        }
        loop {
            if i > 0 && self.rows[i - 1][j] != 0 {
                i -= 1;
            } else if j + 1 < self.p() && self.rows[i][j + 1] != 0 {
                j += 1;
            } else {
                break;
            }
            word.push(self.rows[i][j]);
        }
        (step_matrix_of(&word).as_ref() == Ok(self)).then_some(word)
    }

    pub fn is_step_matrix(&self) -> bool {
        self.permutation().is_some()
    }
}

impl fmt::Display for ShiftMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.rows.iter().map(|r| r.iter().join(" ")).join("; ");
        write!(f, "[{s}]")
    }
}

/// The step matrix of a permutation of `{1..n}`.
pub fn step_matrix_of(perm: &[u8]) -> Result<ShiftMatrix> {
    OrderedPartition::from_permutation(perm)?;
    let n = perm.len();
    let d = perm.windows(2).filter(|w| w[1] < w[0]).count();
    let (q, p) = (d + 1, n - d);
    let mut rows = vec![vec![0u8; p]; q];
    let (mut i, mut j) = (q - 1, 0);
    rows[i][j] = perm[0];
    for w in perm.windows(2) {
        if w[1] < w[0] {
            i -= 1;
        } else {
            j += 1;
        }
        rows[i][j] = w[1];
    }
    Ok(ShiftMatrix { rows })
}

fn proper_subsets(v: &[u8]) -> impl Iterator<Item = Vec<u8>> + '_ {
    (0..v.len()).flat_map(move |r| v.iter().copied().combinations(r))
}

/// All matrices from one pass of down shifts on rows `1..q`, then right
/// shifts on columns `1..p`, over every admissible subset choice.
pub fn derived_matrices(e: &ShiftMatrix) -> BTreeSet<ShiftMatrix> {
    let mut cur = BTreeSet::from([e.clone()]);
    for i in 0..e.q() {
        let mut next = BTreeSet::new();
        for m in &cur {
            for s in proper_subsets(&m.row_entries(i)) {
                next.insert(m.shift_down(i, &s).unwrap_or_else(|| m.clone()));
            }
        }
        cur = next;
    }
    for j in 0..e.p() {
        let mut next = BTreeSet::new();
        for m in &cur {
            let t = m.transpose();
            for s in proper_subsets(&m.col_entries(j)) {
                next.insert(t.shift_down(j, &s).map(|x| x.transpose()).unwrap_or_else(|| m.clone()));
            }
        }
        cur = next;
    }
    cur
}

/// A complementary pair together with the derived matrix it came from.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ComplementaryPair {
    pub a: OrderedPartition,
    pub b: OrderedPartition,
    pub source: ShiftMatrix,
}

/// Every complementary pair over all step matrices of `S_n`, with repetitions.
pub fn complementary_pairs(n: usize) -> Vec<ComplementaryPair> {
    let mut out = Vec::new();
    for perm in (1..=n as u8).permutations(n) {
        let e = step_matrix_of(&perm).expect("a permutation");
        for m in derived_matrices(&e) {
            let (a, b) = m.complementary_pair();
            out.push(ComplementaryPair { a, b, source: m });
        }
    }
    out.sort();
    out
}

type Pairs = Arc<Vec<(OrderedPartition, OrderedPartition)>>;

fn delta_top(n: usize) -> Pairs {
    static CACHE: OnceLock<Mutex<HashMap<usize, Pairs>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&n) {
        return v.clone();
    }
    let chain: Z2Chain<(OrderedPartition, OrderedPartition)> =
        complementary_pairs(n).into_iter().map(|c| (c.a, c.b)).collect();
    let v: Pairs = Arc::new(chain.into_iter().collect());
    cache.lock().unwrap().insert(n, v.clone());
    v
}

/// An ordered tuple of faces of the same `P_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TensorCell {
    pub factors: Vec<OrderedPartition>,
}

impl TensorCell {
    pub fn new(factors: Vec<OrderedPartition>) -> Self {
        Self { factors }
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(OrderedPartition::dim).sum()
    }
}

impl fmt::Display for TensorCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.factors.iter().join(" ⊗ "))
    }
}

/// `Δ_P`, extended multiplicatively over the blocks of `face`.
pub fn delta_p(face: &OrderedPartition) -> Z2Chain<TensorCell> {
    let n = face.n();
    let mut acc: Vec<(Vec<Vec<u8>>, Vec<Vec<u8>>)> = vec![(vec![], vec![])];
    for block in face.blocks() {
        let comps = delta_top(block.len());
        let mut next = Vec::with_capacity(acc.len() * comps.len());
        for (x, y) in &acc {
            for (a, b) in comps.iter() {
                let (a, b) = (a.relabel(block), b.relabel(block));
                let mut xa = x.clone();
                xa.extend_from_slice(a.blocks());
                let mut yb = y.clone();
                yb.extend_from_slice(b.blocks());
                next.push((xa, yb));
            }
        }
        acc = next;
    }
    acc.into_iter()
        .map(|(a, b)| {
            TensorCell::new(vec![
                OrderedPartition::from_blocks_unchecked(n, a),
                OrderedPartition::from_blocks_unchecked(n, b),
            ])
        })
        .collect()
}

/// The left iterate `Δ^(k) = (Δ ⊗ 1^{k-1}) Δ^(k-1)`; `k = 0` is the identity.
pub fn iterated_delta(face: &OrderedPartition, k: usize) -> Z2Chain<TensorCell> {
    let mut cur: Z2Chain<TensorCell> = [TensorCell::new(vec![face.clone()])].into_iter().collect();
    for _ in 0..k {
        let mut next = Z2Chain::new();
        for t in cur.iter() {
            for d in delta_p(&t.factors[0]).into_iter() {
                let mut f = d.factors;
                f.extend_from_slice(&t.factors[1..]);
                next.add(TensorCell::new(f));
            }
        }
        cur = next;
    }
    cur
}

/// Faces of `P_n` where `(∂⊗1 + 1⊗∂)Δ_P ≠ Δ_P ∂`.
pub fn chain_map_defects(n: usize) -> Result<Vec<OrderedPartition>> {
    let mut bad = Vec::new();
    for f in crate::partition::enumerate_faces(n, None)? {
        let mut lhs = Z2Chain::new();
        for t in delta_p(&f).into_iter() {
            let (a, b) = (&t.factors[0], &t.factors[1]);
            for a2 in a.boundary().into_iter() {
                lhs.add(TensorCell::new(vec![a2, b.clone()]));
            }
            for b2 in b.boundary().into_iter() {
                lhs.add(TensorCell::new(vec![a.clone(), b2]));
            }
        }
        let mut rhs = Z2Chain::new();
        for g in f.boundary().into_iter() {
            rhs.add_chain(delta_p(&g));
        }
        if lhs != rhs {
            bad.push(f);
        }
    }
    Ok(bad)
}

/// The cells of the `k`-subdivision of `P_n`.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub n: usize,
    pub k: usize,
    /// Top-dimensional components of `Δ^(k)(12…n)`.
    pub top: Vec<TensorCell>,
    /// Product-face closure of `top`.
    pub cells: BTreeSet<TensorCell>,
}

impl Subdivision {
    pub fn f_vector(&self) -> Vec<usize> {
        let d = self.cells.iter().map(TensorCell::dim).max().unwrap_or(0);
        let mut f = vec![0; d + 1];
        for c in &self.cells {
            f[c.dim()] += 1;
        }
        f
    }

    /// Vertices as tuples of permutations.
    pub fn vertices(&self) -> Vec<Vec<Vec<u8>>> {
        if self.n == 0 {
            return vec![vec![vec![]; self.k + 1]];
        }
        self.cells
            .iter()
            .filter(|c| c.dim() == 0)
            .map(|c| c.factors.iter().map(|f| f.as_permutation().expect("vertex")).collect())
            .collect()
    }
}

/// Builds `P_n^(k)`; `n = 0` gives the empty permutahedron with one vertex.
pub fn subdivision_complex(n: usize, k: usize) -> Subdivision {
    if n == 0 {
        return Subdivision { n, k, top: vec![], cells: BTreeSet::new() };
    }
    let top: Vec<TensorCell> = iterated_delta(&OrderedPartition::top(n), k).into_iter().collect();
    let mut faces: HashMap<OrderedPartition, Vec<OrderedPartition>> = HashMap::new();
    let mut cells = BTreeSet::new();
    for t in &top {
        let per: Vec<Vec<OrderedPartition>> =
            t.factors.iter().map(|f| faces.entry(f.clone()).or_insert_with(|| f.faces()).clone()).collect();
        for combo in per.iter().multi_cartesian_product() {
            cells.insert(TensorCell::new(combo.into_iter().cloned().collect()));
        }
    }
    Subdivision { n, k, top, cells }
}
