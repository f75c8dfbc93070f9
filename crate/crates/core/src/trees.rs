//! Planar rooted trees, leveled trees and the Tonks projection.
//!
//! A face `B₁|…|B_k` of `P_n` is a leveled tree with `n+1` leaves: gap `g`
//! (between leaves `g` and `g+1`) is closed at the level of the block that
//! contains it, `B₁` being the level nearest the leaves. Forgetting levels
//! gives a face of the associahedron `K_{n+1}`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::chain::Z2Chain;
use crate::diagonal::delta_p;
use crate::error::{Error, Result};
use crate::partition::OrderedPartition;

/// A planar rooted tree without unary vertices; `x` is the leaf.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlanarTree {
    Leaf,
    Node(Vec<PlanarTree>),
}

impl PlanarTree {
    /// The `k`-leaf corolla; a single leaf when `k = 1`.
    pub fn corolla(k: usize) -> Self {
        if k == 1 {
            PlanarTree::Leaf
        } else {
            PlanarTree::Node(vec![PlanarTree::Leaf; k])
        }
    }

    pub fn leaves(&self) -> usize {
        match self {
            PlanarTree::Leaf => 1,
            PlanarTree::Node(c) => c.iter().map(Self::leaves).sum(),
        }
    }

    pub fn internal_nodes(&self) -> usize {
        match self {
            PlanarTree::Leaf => 0,
            PlanarTree::Node(c) => 1 + c.iter().map(Self::internal_nodes).sum::<usize>(),
        }
    }

    /// Dimension as a face of `K_{leaves}`.
    pub fn dim(&self) -> usize {
        self.leaves() - 1 - self.internal_nodes()
    }

    pub fn is_binary(&self) -> bool {
        match self {
            PlanarTree::Leaf => true,
            PlanarTree::Node(c) => c.len() == 2 && c.iter().all(Self::is_binary),
        }
    }

    /// Replaces the leaves, left to right, by `subs`.
    pub fn graft(&self, subs: &[PlanarTree]) -> Result<PlanarTree> {
        if subs.len() != self.leaves() {
            return Err(Error::Arity(format!("{} leaves, {} subtrees", self.leaves(), subs.len())));
        }
        let mut it = subs.iter();
        fn rec<'a>(t: &PlanarTree, it: &mut impl Iterator<Item = &'a PlanarTree>) -> PlanarTree {
            match t {
                PlanarTree::Leaf => it.next().expect("counted").clone(),
                PlanarTree::Node(c) => PlanarTree::Node(c.iter().map(|x| rec(x, it)).collect()),
            }
        }
        Ok(rec(self, &mut it))
    }

    /// Leaf intervals `[lo, hi)` of the internal nodes.
    fn intervals(&self) -> BTreeSet<(usize, usize)> {
        fn rec(t: &PlanarTree, lo: usize, out: &mut BTreeSet<(usize, usize)>) -> usize {
            match t {
                PlanarTree::Leaf => lo + 1,
                PlanarTree::Node(c) => {
                    let hi = c.iter().fold(lo, |h, x| rec(x, h, out));
                    out.insert((lo, hi));
                    hi
                }
            }
        }
        let mut out = BTreeSet::new();
        rec(self, 0, &mut out);
        out
    }

    fn from_intervals(iv: &BTreeSet<(usize, usize)>, lo: usize, hi: usize) -> PlanarTree {
        if hi - lo == 1 {
            return PlanarTree::Leaf;
        }
        let mut children = Vec::new();
        let mut k = lo;
        while k < hi {
            let end = iv
                .iter()
                .filter(|&&(l, h)| l == k && h <= hi && (l, h) != (lo, hi))
                .map(|&(_, h)| h)
                .max()
                .unwrap_or(k + 1);
            children.push(Self::from_intervals(iv, k, end));
            k = end;
        }
        PlanarTree::Node(children)
    }

    /// The finest common contraction of trees with equal leaf counts.
    pub fn meet(trees: &[PlanarTree]) -> Result<PlanarTree> {
        let first = trees.first().ok_or_else(|| Error::Arity("meet of no trees".into()))?;
        let l = first.leaves();
        if trees.iter().any(|t| t.leaves() != l) {
            return Err(Error::Arity("meet of trees with different leaf counts".into()));
        }
        if l == 1 {
            return Ok(PlanarTree::Leaf);
        }
        let mut common = first.intervals();
        for t in &trees[1..] {
            let iv = t.intervals();
            common.retain(|x| iv.contains(x));
        }
        Ok(Self::from_intervals(&common, 0, l))
    }

    /// Arity profile read with maximal grouping: a node whose children are
    /// all leaves counts as one group, every other leaf as 1.
    pub fn leaf_sequence(&self) -> Vec<usize> {
        fn rec(t: &PlanarTree, out: &mut Vec<usize>) {
            match t {
                PlanarTree::Leaf => out.push(1),
                PlanarTree::Node(c) if c.iter().all(|x| *x == PlanarTree::Leaf) => out.push(c.len()),
                PlanarTree::Node(c) => c.iter().for_each(|x| rec(x, out)),
            }
        }
        let mut out = Vec::new();
        rec(self, &mut out);
        out
    }

    /// Faces of codimension one more: group a proper run of at least two children.
    pub fn boundary(&self) -> Z2Chain<PlanarTree> {
        let mut out = Z2Chain::new();
        if let PlanarTree::Node(c) = self {
            let k = c.len();
            for len in 2..k {
                for start in 0..=k - len {
                    let mut ch = c[..start].to_vec();
                    ch.push(PlanarTree::Node(c[start..start + len].to_vec()));
                    ch.extend_from_slice(&c[start + len..]);
                    out.add(PlanarTree::Node(ch));
                }
            }
            for (i, x) in c.iter().enumerate() {
                for y in x.boundary().into_iter() {
                    let mut ch = c.clone();
                    ch[i] = y;
                    out.add(PlanarTree::Node(ch));
                }
            }
        }
        out
    }

    /// A face of `P_{leaves-1}` with one node per level projecting onto this tree.
    pub fn section(&self) -> OrderedPartition {
        fn rec(t: &PlanarTree, lo: usize, blocks: &mut Vec<Vec<u8>>) -> usize {
            match t {
                PlanarTree::Leaf => lo + 1,
                PlanarTree::Node(c) => {
                    let mut gaps = Vec::new();
                    let mut h = lo;
                    for (i, x) in c.iter().enumerate() {
                        h = rec(x, h, blocks);
                        if i + 1 < c.len() {
                            gaps.push(h as u8);
                        }
                    }
                    blocks.push(gaps);
                    h
                }
            }
        }
        let mut blocks = Vec::new();
        let l = self.leaves();
        rec(self, 1, &mut blocks);
        // leaves are numbered from 1 so the gap after leaf g is g
        let blocks = blocks.into_iter().map(|b| b.into_iter().map(|g| g - 1).collect()).collect();
        OrderedPartition::new(l - 1, blocks).expect("one block per node")
    }
}

impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanarTree::Leaf => f.write_str("x"),
            PlanarTree::Node(c) => {
                f.write_str("(")?;
                for x in c {
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl FromStr for PlanarTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        fn parse(c: &[char], pos: &mut usize) -> Result<PlanarTree> {
            match c.get(*pos) {
                Some('x') => {
                    *pos += 1;
                    Ok(PlanarTree::Leaf)
                }
                Some('(') => {
                    *pos += 1;
                    let mut ch = Vec::new();
                    while c.get(*pos) != Some(&')') {
                        if *pos >= c.len() {
                            return Err(Error::Parse { pos: *pos, msg: "unclosed '('".into() });
                        }
                        ch.push(parse(c, pos)?);
                    }
                    *pos += 1;
                    if ch.len() < 2 {
                        return Err(Error::Parse { pos: *pos, msg: "node needs two children".into() });
                    }
                    Ok(PlanarTree::Node(ch))
                }
                _ => Err(Error::Parse { pos: *pos, msg: "expected 'x' or '('".into() }),
            }
        }
        let mut pos = 0;
        let t = parse(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(Error::Parse { pos, msg: "trailing input".into() });
        }
        Ok(t)
    }
}

impl Serialize for PlanarTree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PlanarTree::Leaf => s.serialize_str("x"),
            PlanarTree::Node(c) => c.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for PlanarTree {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Leaf(String),
            Node(Vec<PlanarTree>),
        }
        match Raw::deserialize(d)? {
            Raw::Leaf(s) if s == "x" => Ok(PlanarTree::Leaf),
            Raw::Leaf(s) => Err(serde::de::Error::custom(format!("expected \"x\", got {s:?}"))),
            Raw::Node(c) if c.len() >= 2 => Ok(PlanarTree::Node(c)),
            Raw::Node(_) => Err(serde::de::Error::custom("node needs two children")),
        }
    }
}

/// The planar tree of a face, levels forgotten (always succeeds).
pub fn planar_tree_of(face: &OrderedPartition) -> PlanarTree {
    let n = face.n();
    let mut level = vec![0usize; n + 1];
    for (k, b) in face.blocks().iter().enumerate() {
        for &g in b {
            level[g as usize] = k;
        }
    }
    fn rec(level: &[usize], lo: usize, hi: usize) -> PlanarTree {
        if lo == hi {
            return PlanarTree::Leaf;
        }
        let top = (lo..hi).map(|g| level[g]).max().expect("nonempty");
        let mut children = Vec::new();
        let mut s = lo;
        for g in lo..hi {
            if level[g] == top {
                children.push(rec(level, s, g));
                s = g + 1;
            }
        }
        children.push(rec(level, s, hi));
        PlanarTree::Node(children)
    }
    rec(&level, 1, n + 1)
}

/// The Tonks projection `ϑ₀`; `None` when levels merge and the dimension drops.
pub fn tonks_project(face: &OrderedPartition) -> Option<PlanarTree> {
    let t = planar_tree_of(face);
    (t.internal_nodes() == face.blocks().len()).then_some(t)
}

/// `Δ_K(t) = (ϑ₀⊗ϑ₀) Δ_P(s)` for a section `s` of `t`, degenerate terms dropped.
pub fn delta_k(t: &PlanarTree) -> Z2Chain<(PlanarTree, PlanarTree)> {
    if *t == PlanarTree::Leaf {
        return [(PlanarTree::Leaf, PlanarTree::Leaf)].into_iter().collect();
    }
    let mut out = Z2Chain::new();
    for c in delta_p(&t.section()).into_iter() {
        if let (Some(a), Some(b)) = (tonks_project(&c.factors[0]), tonks_project(&c.factors[1])) {
            out.add((a, b));
        }
    }
    out
}

/// All faces of `K_leaves` (leaves ≥ 2), by projecting the faces of `P_{leaves-1}`.
pub fn associahedron_faces(leaves: usize) -> Result<BTreeSet<PlanarTree>> {
    Ok(crate::partition::enumerate_faces(leaves - 1, None)?.iter().filter_map(tonks_project).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Up,
    Down,
}

/// A planar leveled tree stored by its leaf-sequence rows, root level first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LevelTree {
    pub orientation: Orientation,
    pub levels: Vec<Vec<usize>>,
}

impl LevelTree {
    pub fn leaves(&self) -> usize {
        self.levels.last().map_or(1, |r| r.iter().sum())
    }
}

/// The `n+1`-leaf leveled tree of a face of `P_n`.
pub fn partition_to_plt(face: &OrderedPartition, orientation: Orientation) -> LevelTree {
    let n = face.n();
    // strand boundaries: a strand is a run of leaves; gap g separates leaves g, g+1
    let mut open: Vec<usize> = (1..=n).collect();
    let mut levels = Vec::new();
    for b in face.blocks() {
        let mut row = vec![1usize];
        let mut still = Vec::new();
        for &g in &open {
            if b.contains(&(g as u8)) {
                *row.last_mut().unwrap() += 1;
            } else {
                row.push(1);
                still.push(g);
            }
        }
        levels.push(row);
        open = still;
    }
    levels.reverse();
    LevelTree { orientation, levels }
}

/// Inverse of [`partition_to_plt`].
pub fn plt_to_partition(tree: &LevelTree) -> Result<OrderedPartition> {
    let leaves = tree.leaves();
    let mut open: Vec<usize> = (1..leaves).collect();
    let mut blocks = Vec::new();
    for row in tree.levels.iter().rev() {
        if row.iter().sum::<usize>() != open.len() + 1 || row.contains(&0) {
            return Err(Error::InvalidSequence(format!("level {row:?} does not fit {} strands", open.len() + 1)));
        }
        let mut block = Vec::new();
        let mut still = Vec::new();
        let mut k = 0;
        for &e in row {
            block.extend(open[k..k + e - 1].iter().map(|&g| g as u8));
            if k + e - 1 < open.len() {
                still.push(open[k + e - 1]);
            }
            k += e;
        }
        if block.is_empty() {
            return Err(Error::InvalidSequence(format!("level {row:?} merges nothing")));
        }
        blocks.push(block);
        open = still;
    }
    if !open.is_empty() {
        return Err(Error::InvalidSequence("root level leaves strands open".into()));
    }
    OrderedPartition::new(leaves - 1, blocks)
}

/// Level-by-level leaf sequences: root first for up-rooted trees, leaf
/// level first for down-rooted ones.
pub fn descent_sequences(tree: &LevelTree) -> Vec<Vec<usize>> {
    match tree.orientation {
        Orientation::Up => tree.levels.clone(),
        Orientation::Down => tree.levels.iter().rev().cloned().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> OrderedPartition {
        s.parse().unwrap()
    }
    fn t(s: &str) -> PlanarTree {
        s.parse().unwrap()
    }

    #[test]
    fn left_comb_from_vertex() {
        assert_eq!(planar_tree_of(&p("1|2")), t("((xx)x)"));
        assert_eq!(planar_tree_of(&p("2|1")), t("(x(xx))"));
        assert_eq!(planar_tree_of(&p("123")), PlanarTree::corolla(4));
    }

    #[test]
    fn degenerate_edge() {
        assert_eq!(tonks_project(&p("13|2")), None);
        assert_eq!(tonks_project(&p("3|1|2")), tonks_project(&p("1|3|2")));
        assert!(tonks_project(&p("3|1|2")).is_some());
    }

    #[test]
    fn meet_and_graft() {
        let m = PlanarTree::meet(&[t("((xx)x)"), t("(x(xx))")]).unwrap();
        assert_eq!(m, t("(xxx)"));
        assert_eq!(t("(xx)").graft(&[t("(xx)"), PlanarTree::Leaf]).unwrap(), t("((xx)x)"));
        assert_eq!(PlanarTree::meet(&[PlanarTree::Leaf]).unwrap(), PlanarTree::Leaf);
    }

    #[test]
    fn leaf_sequences() {
        assert_eq!(t("(x(xx))").leaf_sequence(), vec![1, 2]);
        assert_eq!(t("(xxx)").leaf_sequence(), vec![3]);
        assert_eq!(PlanarTree::Leaf.leaf_sequence(), vec![1]);
        assert_eq!(t("((xx)(xx))").leaf_sequence(), vec![2, 2]);
    }

    #[test]
    fn section_projects_back() {
        for s in ["((xx)x)", "(x(xxx))", "((xx)(xx))", "(xxxx)", "(x(xx)x)"] {
            let tr = t(s);
            let f = tr.section();
            assert_eq!(tonks_project(&f), Some(tr.clone()), "{s}");
            assert_eq!(f.dim(), tr.dim());
        }
    }

    #[test]
    fn level_tree_round_trip() {
        let f = p("1|2");
        let lt = partition_to_plt(&f, Orientation::Up);
        assert_eq!(lt.levels, vec![vec![2], vec![2, 1]]);
        assert_eq!(plt_to_partition(&lt).unwrap(), f);
        assert_eq!(partition_to_plt(&p("123"), Orientation::Up).levels, vec![vec![4]]);
        let down = partition_to_plt(&f, Orientation::Down);
        assert_eq!(descent_sequences(&down), vec![vec![2, 1], vec![2]]);
    }

    #[test]
    fn tree_boundary_squares_to_zero() {
        let c = PlanarTree::corolla(5);
        let mut dd = Z2Chain::new();
        for x in c.boundary().into_iter() {
            dd.add_chain(x.boundary());
        }
        assert!(dd.is_empty());
        assert_eq!(PlanarTree::corolla(4).boundary().len(), 5);
    }

    #[test]
    fn json_nested_arrays() {
        let tr = t("((xx)x)");
        let s = serde_json::to_string(&tr).unwrap();
        assert_eq!(s, r#"[["x","x"],"x"]"#);
        assert_eq!(serde_json::from_str::<PlanarTree>(&s).unwrap(), tr);
    }
}
