//! The differential on the generators `θ_m^n` and the complexes `KK_{n,m}`.
//!
//! Bidegrees are keyed `(m, n)` = (inputs, outputs) throughout, so `θ_m^n`
//! lives at `(m, n)` and spans `KK_{n,m}`. Everything is over GF(2).

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;
use serde::Serialize;

use crate::diagonal::iterated_delta;
use crate::error::{Error, Result};
use crate::gf2;
use crate::partition::{special_cell, OrderedPartition};
use crate::terms::{contact_sequences, FractionGraph, Term, TermSum};
use crate::trees::{planar_tree_of, tonks_project, PlanarTree};

/// Compositions of `n` (ordered, positive parts).
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    (1..=n)
        .flat_map(|first| {
            compositions(n - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// One summand `γ(α; β)` of `∂θ_m^n` together with its leaf sequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissiblePair {
    pub alpha: Vec<Term>,
    pub beta: Vec<Term>,
    pub y: Vec<usize>,
    pub x: Vec<usize>,
}

impl AdmissiblePair {
    pub fn term(&self) -> Term {
        Term::gamma(self.alpha.clone(), self.beta.clone()).expect("admissible pairs are composable")
    }
}

#[derive(Clone, Debug, Default)]
struct Bidegree {
    pairs: Vec<AdmissiblePair>,
    boundary: TermSum,
    cells: BTreeMap<FractionGraph, (Term, usize)>,
}

/// Boundaries and cells of every bidegree with `m+n ≤ max_total`.
#[derive(Clone, Debug)]
pub struct GenTable {
    max_total: usize,
    data: BTreeMap<(usize, usize), Bidegree>,
}

impl GenTable {
    pub fn build(max_total: usize) -> Result<GenTable> {
        let mut t = GenTable { max_total, data: BTreeMap::new() };
        for tot in 2..=max_total {
            for m in 1..tot {
                let n = tot - m;
                let pairs = if tot >= 3 { t.admissible_pairs(m, n)? } else { vec![] };
                let boundary = pairs.iter().map(AdmissiblePair::term).collect();
                t.data.insert((m, n), Bidegree { pairs, boundary, cells: BTreeMap::new() });
                let cells = t.close(vec![Term::gen(m, n)])?;
                t.data.get_mut(&(m, n)).expect("just inserted").cells = cells;
            }
        }
        Ok(t)
    }

    /// A process-wide table covering at least `max_total`.
    pub fn shared(max_total: usize) -> Result<Arc<GenTable>> {
        static CACHE: OnceLock<Mutex<Option<Arc<GenTable>>>> = OnceLock::new();
        let mut slot = CACHE.get_or_init(|| Mutex::new(None)).lock().unwrap();
        if let Some(t) = slot.as_ref().filter(|t| t.max_total >= max_total) {
            return Ok(t.clone());
        }
        let t = Arc::new(GenTable::build(max_total)?);
        *slot = Some(t.clone());
        Ok(t)
    }

    pub fn max_total(&self) -> usize {
        self.max_total
    }

    fn bidegree(&self, m: usize, n: usize) -> Result<&Bidegree> {
        self.data.get(&(m, n)).ok_or_else(|| Error::Missing(format!("bidegree ({m},{n}) not built")))
    }

    /// All cells of `KK_{n,m}` with their dimensions.
    pub fn cells(&self, m: usize, n: usize) -> Result<impl Iterator<Item = (&Term, usize)>> {
        Ok(self.bidegree(m, n)?.cells.values().map(|(t, d)| (t, *d)))
    }

    /// Numerator monomials for `p` inputs and output sequence `y`.
    pub fn gamma_bases_upper(&self, p: usize, y: &[usize]) -> Result<Vec<Vec<Term>>> {
        let q = y.len();
        if q == 1 {
            return Ok(vec![vec![Term::gen(p, y[0])]]);
        }
        if p == 1 {
            let big = y.iter().filter(|&&v| v > 1).count();
            return Ok(if big == 1 { vec![y.iter().map(|&v| Term::gen(1, v)).collect()] } else { vec![] });
        }
        self.bases(p - 1, q - 1, y, |yj| (p, yj), Term::row_tree)
    }

    /// Denominator monomials for input sequence `x` and `q` outputs.
    pub fn gamma_bases_lower(&self, x: &[usize], q: usize) -> Result<Vec<Vec<Term>>> {
        let p = x.len();
        if p == 1 {
            return Ok(vec![vec![Term::gen(x[0], q)]]);
        }
        if q == 1 {
            let big = x.iter().filter(|&&v| v > 1).count();
            return Ok(if big == 1 { vec![x.iter().map(|&v| Term::gen(v, 1)).collect()] } else { vec![] });
        }
        self.bases(q - 1, p - 1, x, |xi| (xi, q), Term::col_tree)
    }

    /// One factor per component of `Δ^(k)(P_perm)`: cells whose tree is the
    /// component's tree and whose dimension is raised by the free arity.
    fn bases(
        &self,
        perm: usize,
        k: usize,
        seq: &[usize],
        key: impl Fn(usize) -> (usize, usize),
        tree: fn(&Term) -> PlanarTree,
    ) -> Result<Vec<Vec<Term>>> {
        let mut res: BTreeMap<Vec<FractionGraph>, Vec<Term>> = BTreeMap::new();
        for comp in iterated_delta(&OrderedPartition::top(perm), k).iter() {
            let mut choices = Vec::with_capacity(seq.len());
            for (f, &s) in comp.factors.iter().zip(seq) {
                let (t, d) = (planar_tree_of(f), f.dim() + s - 1);
                let (a, b) = key(s);
                let c: Vec<Term> = self
                    .bidegree(a, b)?
                    .cells
                    .values()
                    .filter(|(e, dd)| *dd == d && tree(e) == t)
                    .map(|(e, _)| e.clone())
                    .collect();
                choices.push(c);
            }
            for ch in choices.into_iter().multi_cartesian_product() {
                res.insert(ch.iter().map(Term::graph).collect(), ch);
            }
        }
        Ok(res.into_values().collect())
    }

    /// The summands of `∂θ_m^n` before cancellation.
    pub fn admissible_pairs(&self, m: usize, n: usize) -> Result<Vec<AdmissiblePair>> {
        let mut out = Vec::new();
        for y in compositions(n) {
            for x in compositions(m) {
                if special_cell(&y, &x)?.is_none() {
                    continue;
                }
                let uppers = self.gamma_bases_upper(x.len(), &y)?;
                let lowers = self.gamma_bases_lower(&x, y.len())?;
                for a in &uppers {
                    for b in &lowers {
                        out.push(AdmissiblePair { alpha: a.clone(), beta: b.clone(), y: y.clone(), x: x.clone() });
                    }
                }
            }
        }
        Ok(out)
    }

    /// `∂θ_m^n`.
    pub fn boundary_generator(&self, m: usize, n: usize) -> Result<&TermSum> {
        Ok(&self.bidegree(m, n)?.boundary)
    }

    pub fn pairs(&self, m: usize, n: usize) -> Result<&[AdmissiblePair]> {
        Ok(&self.bidegree(m, n)?.pairs)
    }

    /// `∂` extended to a term as a derivation.
    pub fn leibniz_boundary(&self, t: &Term) -> Result<TermSum> {
        let mut out = TermSum::new();
        for (k, (a, b)) in t.generators().into_iter().enumerate() {
            if a + b == 3 {
                continue;
            }
            for r in self.bidegree(a, b)?.boundary.terms() {
                out.add(t.substitute(k, r));
            }
        }
        Ok(out)
    }

    /// `∂` of a sum.
    pub fn leibniz_sum(&self, s: &TermSum) -> Result<TermSum> {
        let mut out = TermSum::new();
        for t in s.terms() {
            for r in self.leibniz_boundary(t)?.terms() {
                out.add(r.clone());
            }
        }
        Ok(out)
    }

    /// Closure of `seeds` under taking boundary components.
    fn close(&self, seeds: Vec<Term>) -> Result<BTreeMap<FractionGraph, (Term, usize)>> {
        let mut cells = BTreeMap::new();
        let mut stack = Vec::new();
        for s in seeds {
            let d = s.dim();
            if cells.insert(s.graph(), (s.clone(), d)).is_none() {
                stack.push(s);
            }
        }
        while let Some(e) = stack.pop() {
            for ne in self.leibniz_boundary(&e)?.terms() {
                if let std::collections::btree_map::Entry::Vacant(slot) = cells.entry(ne.graph()) {
                    slot.insert((ne.clone(), ne.dim()));
                    stack.push(ne.clone());
                }
            }
        }
        Ok(cells)
    }

    /// Checks `∂∂θ_m^n = 0` for every built bidegree with `m+n ≤ max_total`.
    pub fn verify_d_squared(&self, max_total: usize) -> Result<DSquaredReport> {
        let mut entries = Vec::new();
        for (&(m, n), b) in &self.data {
            if m + n > max_total || m + n < 3 {
                continue;
            }
            let residue = self.leibniz_sum(&b.boundary)?;
            entries.push(DSquaredEntry {
                m,
                n,
                terms: b.boundary.len(),
                residue: residue.terms().map(Term::to_string).collect(),
            });
        }
        if max_total > self.max_total {
            return Err(Error::Missing(format!("table built to {} only", self.max_total)));
        }
        Ok(DSquaredReport { entries })
    }

    /// The cell complex spanned by `θ_m^n` (`KK_{n,m}`).
    pub fn kk_cells(&self, n: usize, m: usize) -> Result<KKComplex> {
        let b = self.bidegree(m, n)?;
        let top = m + n - 3;
        let mut cells: Vec<Vec<Term>> = vec![vec![]; top + 1];
        let mut index: BTreeMap<&FractionGraph, usize> = BTreeMap::new();
        for (g, (t, d)) in &b.cells {
            index.insert(g, cells[*d].len());
            cells[*d].push(t.clone());
        }
        let mut boundary = vec![vec![]];
        for d in 1..=top {
            let mut rows = Vec::with_capacity(cells[d].len());
            for t in &cells[d] {
                let bd = self.leibniz_boundary(t)?;
                rows.push(bd.graphs().map(|g| index[g]).sorted().collect());
            }
            boundary.push(rows);
        }
        Ok(KKComplex { n, m, cells, boundary })
    }

    /// Every elementary fraction `γ(A; B)` of lower-degree cells with bidegree
    /// `(m, n)`, grouped by graph.
    pub fn fractions(&self, m: usize, n: usize) -> Result<BTreeMap<FractionGraph, Vec<Term>>> {
        let mut out: BTreeMap<FractionGraph, Vec<Term>> = BTreeMap::new();
        for y in compositions(n) {
            for x in compositions(m) {
                let (q, p) = (y.len(), x.len());
                if (q == 1 && p == m) || (p == 1 && q == n) {
                    continue;
                }
                let ach: Vec<Vec<Term>> = y
                    .iter()
                    .map(|&yj| Ok(self.cells(p, yj)?.map(|(t, _)| t.clone()).collect()))
                    .collect::<Result<_>>()?;
                let bch: Vec<Vec<Term>> = x
                    .iter()
                    .map(|&xi| Ok(self.cells(xi, q)?.map(|(t, _)| t.clone()).collect()))
                    .collect::<Result<_>>()?;
                let bs: Vec<Vec<Term>> = bch.into_iter().multi_cartesian_product().collect();
                for a in ach.into_iter().multi_cartesian_product() {
                    for b in &bs {
                        let e = Term::gamma(a.clone(), b.clone())?;
                        out.entry(e.graph()).or_default().push(e);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Fractions counted by dimension.
    pub fn census(&self, m: usize, n: usize) -> Result<Vec<usize>> {
        let fr = self.fractions(m, n)?;
        let mut prof = vec![0; m + n - 2];
        for g in fr.keys() {
            if g.dim() >= prof.len() {
                prof.resize(g.dim() + 1, 0);
            }
            prof[g.dim()] += 1;
        }
        Ok(prof)
    }

    /// Codimension-one fractions whose contact sequences are leaf sequences
    /// of components of the iterated `Δ_K` on corollas.
    pub fn selection_rule(&self, m: usize, n: usize) -> Result<BTreeMap<FractionGraph, Term>> {
        let mut sel = BTreeMap::new();
        for (g, es) in self.fractions(m, n)? {
            for e in es {
                if e.dim() + 4 != m + n {
                    continue;
                }
                let Term::Gamma { num, den } = &e else { continue };
                let (q, p) = (num.len(), den.len());
                let (up, low) = contact_sequences(&e)?;
                if delta_k_leaf_sequences(p, q - 1).contains(&up) && delta_k_leaf_sequences(q, p - 1).contains(&low) {
                    sel.insert(g, e);
                    break;
                }
            }
        }
        Ok(sel)
    }

    /// Closure of the selected fractions under the boundary, with `θ_m^n`.
    pub fn admissible_closure(&self, m: usize, n: usize) -> Result<BTreeMap<FractionGraph, (Term, usize)>> {
        let mut seeds: Vec<Term> = self.selection_rule(m, n)?.into_values().collect();
        seeds.push(Term::gen(m, n));
        self.close(seeds)
    }
}

/// Leaf-sequence lists of the components of `Δ_K^(k)` on the `p`-leaf corolla.
pub fn delta_k_leaf_sequences(p: usize, k: usize) -> BTreeSet<Vec<Vec<usize>>> {
    if p == 1 {
        return [vec![vec![1]; k + 1]].into_iter().collect();
    }
    let mut comps: BTreeSet<Vec<PlanarTree>> = BTreeSet::new();
    for c in iterated_delta(&OrderedPartition::top(p - 1), k).iter() {
        let ts: Option<Vec<PlanarTree>> = c.factors.iter().map(tonks_project).collect();
        if let Some(ts) = ts {
            if !comps.remove(&ts) {
                comps.insert(ts);
            }
        }
    }
    comps.iter().map(|ts| ts.iter().map(PlanarTree::leaf_sequence).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DSquaredEntry {
    pub m: usize,
    pub n: usize,
    pub terms: usize,
    pub residue: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DSquaredReport {
    pub entries: Vec<DSquaredEntry>,
}

impl DSquaredReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.residue.is_empty())
    }
}

/// Cells of `KK_{n,m}` by dimension, with boundary incidences.
#[derive(Clone, Debug)]
pub struct KKComplex {
    pub n: usize,
    pub m: usize,
    pub cells: Vec<Vec<Term>>,
    /// `boundary[d][i]`: indices of the `(d-1)`-cells in the boundary of cell `i` of dimension `d`.
    pub boundary: Vec<Vec<Vec<usize>>>,
}

impl KKComplex {
    pub fn f_vector(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) }).sum()
    }

    /// Betti numbers over GF(2).
    pub fn homology(&self) -> Vec<usize> {
        let top = self.cells.len() - 1;
        let ranks: Vec<usize> = (0..=top + 1)
            .map(|d| if d == 0 || d > top { 0 } else { gf2::rank(&self.boundary[d], self.cells[d - 1].len()) })
            .collect();
        (0..=top).map(|d| self.cells[d].len() - ranks[d] - ranks[d + 1]).collect()
    }

    /// `∂∂ = 0` on the cellular chains.
    pub fn is_chain_complex(&self) -> bool {
        (2..self.cells.len()).all(|d| {
            self.boundary[d].iter().all(|row| {
                let mut acc: BTreeSet<usize> = BTreeSet::new();
                for &i in row {
                    for &j in &self.boundary[d - 1][i] {
                        if !acc.remove(&j) {
                            acc.insert(j);
                        }
                    }
                }
                acc.is_empty()
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::parse_terms;

    fn table() -> Arc<GenTable> {
        GenTable::shared(5).unwrap()
    }

    #[test]
    fn compositions_count() {
        for n in 1..6 {
            assert_eq!(compositions(n).len(), 1 << (n - 1));
        }
        assert_eq!(compositions(3), vec![vec![1, 1, 1], vec![1, 2], vec![2, 1], vec![3]]);
    }

    #[test]
    fn low_boundaries() {
        let t = table();
        assert!(t.boundary_generator(2, 1).unwrap().is_empty());
        assert!(t.boundary_generator(1, 2).unwrap().is_empty());
        let want: TermSum = parse_terms("g(t1^2; t2^1) + g(t2^1 t2^1; t1^2 t1^2)").unwrap().into_iter().collect();
        assert_eq!(t.boundary_generator(2, 2).unwrap(), &want);
        let want: TermSum = parse_terms("g(t2^1; t2^1 1) + g(t2^1; 1 t2^1)").unwrap().into_iter().collect();
        assert_eq!(t.boundary_generator(3, 1).unwrap(), &want);
    }

    #[test]
    fn numerators_and_denominators() {
        let t = table();
        assert_eq!(t.gamma_bases_upper(2, &[1, 1, 1]).unwrap(), vec![vec![Term::gen(2, 1); 3]]);
        assert_eq!(t.gamma_bases_upper(1, &[3]).unwrap(), vec![vec![Term::gen(1, 3)]]);
        assert_eq!(t.gamma_bases_upper(3, &[1, 1]).unwrap().len(), 2);
        assert_eq!(t.gamma_bases_lower(&[2, 1], 3).unwrap().len(), 3);
        assert_eq!(t.gamma_bases_lower(&[4], 1).unwrap(), vec![vec![Term::gen(4, 1)]]);
    }

    #[test]
    fn heptagon_edge_has_two_vertices() {
        let t = table();
        let kk = t.kk_cells(2, 3).unwrap();
        assert_eq!(kk.f_vector(), vec![7, 7, 1]);
        assert!(kk.boundary[1].iter().all(|r| r.len() == 2));
        assert!(kk.is_chain_complex());
    }

    #[test]
    fn zero_dimensional_cells_have_no_boundary() {
        let t = table();
        let a = Term::gamma(vec![Term::gen(1, 2)], vec![Term::gen(2, 1)]).unwrap();
        assert!(t.leibniz_boundary(&a).unwrap().is_empty());
    }

    #[test]
    fn corolla_diagonal_sequences() {
        let s = delta_k_leaf_sequences(3, 1);
        assert_eq!(s.len(), 2);
        assert!(s.contains(&vec![vec![2, 1], vec![3]]));
        assert_eq!(delta_k_leaf_sequences(1, 2), [vec![vec![1]; 3]].into_iter().collect());
    }
}
