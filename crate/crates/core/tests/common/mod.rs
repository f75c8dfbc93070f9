#![allow(dead_code)]
//! Listings of the codimension-1 boundary terms, used as oracles.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use biassoc::hinf::GenTable;
use biassoc::partition::special_cell;
use biassoc::terms::{parse_terms, upsilon, FractionGraph, TermMatrix};
use biassoc::{OrderedPartition, Term};

pub struct Row {
    pub label: &'static str,
    pub x: &'static [usize],
    pub y: &'static [usize],
    pub expr: &'static str,
}

const fn row(label: &'static str, x: &'static [usize], y: &'static [usize], expr: &'static str) -> Row {
    Row { label, x, y, expr }
}

pub const KK22: &[Row] =
    &[row("1|2", &[1, 1], &[1, 1], "g(t2^1 t2^1; t1^2 t1^2)"), row("2|1", &[2], &[2], "g(t1^2; t2^1)")];

// θ_2^3
pub const KK32: &[Row] = &[
    row("1|23", &[1, 1], &[1, 1, 1], "g(t2^1 t2^1 t2^1; g(t1^2 1; t1^2) t1^3 + t1^3 g(1 t1^2; t1^2))"),
    row("13|2", &[1, 1], &[1, 2], "g(t2^1 t2^2; t1^2 t1^2)"),
    row("3|12", &[2], &[1, 2], "g(1 t1^2; t2^2)"),
    row("12|3", &[1, 1], &[2, 1], "g(t2^2 t2^1; t1^2 t1^2)"),
    row("2|13", &[2], &[2, 1], "g(t1^2 1; t2^2)"),
    row("23|1", &[2], &[3], "g(t1^3; t2^1)"),
];

// θ_3^2
pub const KK23: &[Row] = &[
    row("1|23", &[2, 1], &[1, 1], "g(t2^1 t2^1; t2^2 t1^2)"),
    row("13|2", &[2, 1], &[2], "g(t2^2; t2^1 1)"),
    row("3|12", &[3], &[2], "g(t1^2; t3^1)"),
    row("12|3", &[1, 1, 1], &[1, 1], "g(g(t2^1; t2^1 1) t3^1 + t3^1 g(t2^1; 1 t2^1); t1^2 t1^2 t1^2)"),
    row("2|13", &[1, 2], &[1, 1], "g(t2^1 t2^1; t1^2 t2^2)"),
    row("23|1", &[1, 2], &[2], "g(t2^2; 1 t2^1)"),
];

pub const KK33: &[Row] = &[
    row(
        "1|234",
        &[2, 1],
        &[1, 1, 1],
        "g(t2^1 t2^1 t2^1; t2^3 g(1 t1^2; t1^2) + g(t2^2 t2^1; t1^2 t1^2) t1^3 + g(t1^2 1; t2^2) t1^3)",
    ),
    row(
        "123|4",
        &[1, 1, 1],
        &[2, 1],
        "g(g(t2^1 t2^1; t2^2 t1^2) t3^1 + g(t2^2; t2^1 1) t3^1 + t3^2 g(t2^1; 1 t2^1); t1^2 t1^2 t1^2)",
    ),
    row(
        "2|134",
        &[1, 2],
        &[1, 1, 1],
        "g(t2^1 t2^1 t2^1; g(t1^2 1; t1^2) t2^3 + t1^3 g(t2^1 t2^2; t1^2 t1^2) + t1^3 g(1 t1^2; t2^2))",
    ),
    row(
        "124|3",
        &[1, 1, 1],
        &[1, 2],
        "g(t3^1 g(t2^1 t2^1; t1^2 t2^2) + t3^1 g(t2^2; 1 t2^1) + g(t2^1; t2^1 1) t3^2; t1^2 t1^2 t1^2)",
    ),
    row("134|2", &[2, 1], &[3], "g(t2^3; t2^1 1)"),
    row("234|1", &[1, 2], &[3], "g(t2^3; 1 t2^1)"),
    row("3|124", &[3], &[2, 1], "g(t1^2 1; t3^2)"),
    row("4|123", &[3], &[1, 2], "g(1 t1^2; t3^2)"),
    row("13|24", &[2, 1], &[2, 1], "g(t2^2 t2^1; t2^2 t1^2)"),
    row("24|13", &[1, 2], &[1, 2], "g(t2^1 t2^2; t1^2 t2^2)"),
    row("14|23", &[2, 1], &[1, 2], "g(t2^1 t2^2; t2^2 t1^2)"),
    row("23|14", &[1, 2], &[2, 1], "g(t2^2 t2^1; t1^2 t2^2)"),
    row("34|12", &[3], &[3], "g(t1^3; t3^1)"),
    row(
        "12|34",
        &[1, 1, 1],
        &[1, 1, 1],
        "g(t3^1 g(t2^1; 1 t2^1) g(t2^1; 1 t2^1) + g(t2^1; t2^1 1) t3^1 g(t2^1; 1 t2^1) \
         + g(t2^1; t2^1 1) g(t2^1; t2^1 1) t3^1; \
         t1^3 g(1 t1^2; t1^2) g(1 t1^2; t1^2) + g(t1^2 1; t1^2) t1^3 g(1 t1^2; t1^2) \
         + g(t1^2 1; t1^2) g(t1^2 1; t1^2) t1^3)",
    ),
];

pub const DEN3: &str = "t1^3 g(1 t1^2; t1^2) + g(t1^2 1; t1^2) t1^3";

// θ_2^4; DEN3 is spliced into three rows by `terms_of`.
pub const KK42: &[Row] = &[
    row("123|4", &[1, 1], &[3, 1], "g(t2^3 t2^1; t1^2 t1^2)"),
    row("2|134", &[2], &[2, 1, 1], "g(t1^2 1 1; t2^3)"),
    row("124|3", &[1, 1], &[2, 2], "g(t2^2 t2^2; t1^2 t1^2)"),
    row("134|2", &[1, 1], &[1, 3], "g(t2^1 t2^3; t1^2 t1^2)"),
    row("234|1", &[2], &[4], "g(t1^4; t2^1)"),
    row("3|124", &[2], &[1, 2, 1], "g(1 t1^2 1; t2^3)"),
    row("4|123", &[2], &[1, 1, 2], "g(1 1 t1^2; t2^3)"),
    row("13|24", &[1, 1], &[1, 2, 1], "g(t2^1 t2^2 t2^1; DEN3)"),
    row("14|23", &[1, 1], &[1, 1, 2], "g(t2^1 t2^1 t2^2; DEN3)"),
    row("23|14", &[2], &[3, 1], "g(t1^3 1; t2^2)"),
    row("34|12", &[2], &[1, 3], "g(1 t1^3; t2^2)"),
    row("12|34", &[1, 1], &[2, 1, 1], "g(t2^2 t2^1 t2^1; DEN3)"),
    row(
        "1|234",
        &[1, 1],
        &[1, 1, 1, 1],
        "g(t2^1 t2^1 t2^1 t2^1; \
         t1^4 g(1 g(1 t1^2; t1^2); t1^2) \
         + g(g(t1^2 1; t1^2) 1; t1^2) t1^4 \
         - g(t1^2 1 1; t1^3) g(1 1 t1^2; t1^3) \
         + g(t1^3 1; t1^2) g(1 t1^2 1; t1^3) \
         + g(t1^3 1; t1^2) g(1 t1^3; t1^2) \
         + g(1 t1^2 1; t1^3) g(1 t1^3; t1^2))",
    ),
];

pub fn table() -> &'static GenTable {
    static T: OnceLock<GenTable> = OnceLock::new();
    T.get_or_init(|| GenTable::build(6).expect("table"))
}

pub fn terms_of(r: &Row) -> Vec<Term> {
    parse_terms(&r.expr.replace("DEN3", DEN3)).unwrap_or_else(|e| panic!("{}: {e}", r.label))
}

/// Compares the listing with ∂θ_m^n, and the label of each row with its
/// leaf sequences.
pub fn compare_listing(m: usize, n: usize, rows: &[Row], expected_terms: usize) -> Result<(), String> {
    let t = table();
    let bd: BTreeSet<FractionGraph> = t.boundary_generator(m, n).unwrap().graphs().cloned().collect();
    let mut listed = BTreeSet::new();
    for r in rows {
        let label: OrderedPartition = r.label.parse().unwrap();
        let cell = special_cell(r.y, r.x).unwrap();
        if cell.as_ref() != Some(&label) {
            return Err(format!("({m},{n}) {}: special cell is {cell:?}", r.label));
        }
        for term in terms_of(r) {
            if term.arity() != (m, n) {
                return Err(format!("({m},{n}) {}: {term} has arity {:?}", r.label, term.arity()));
            }
            let g = term.graph();
            let Some(pair) = t.pairs(m, n).unwrap().iter().find(|p| p.term().graph() == g) else {
                return Err(format!("({m},{n}) {}: {term} is not a boundary term", r.label));
            };
            if (pair.x.as_slice(), pair.y.as_slice()) != (r.x, r.y) {
                return Err(format!("({m},{n}) {}: {term} comes from x={:?}, y={:?}", r.label, pair.x, pair.y));
            }
            if !listed.insert(g) {
                return Err(format!("({m},{n}) {}: {term} listed twice", r.label));
            }
        }
    }
    if listed.len() != expected_terms || listed != bd {
        return Err(format!("({m},{n}): {} listed terms, {} boundary terms", listed.len(), bd.len()));
    }
    Ok(())
}

pub fn check_listing(m: usize, n: usize, rows: &[Row], expected_terms: usize) {
    compare_listing(m, n, rows, expected_terms).unwrap();
}

pub fn seqs(max_len: usize, max_entry: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut all = Vec::new();
    for _ in 0..max_len {
        out = out
            .into_iter()
            .flat_map(|s: Vec<usize>| {
                (1..=max_entry).map(move |e| {
                    let mut t = s.clone();
                    t.push(e);
                    t
                })
            })
            .collect();
        all.extend(out.iter().cloned());
    }
    all
}

/// Generator bisequence matrices whose entries all have m+n ≤ 4.
pub fn generator_matrices() -> &'static Vec<TermMatrix> {
    static M: OnceLock<Vec<TermMatrix>> = OnceLock::new();
    M.get_or_init(|| {
        let ss = seqs(3, 3);
        let mut out = Vec::new();
        for y in &ss {
            for x in &ss {
                if y.iter().all(|a| x.iter().all(|b| a + b <= 4)) {
                    out.push(TermMatrix::of_generators(y, x));
                }
            }
        }
        out
    })
}

/// All BTP pairs among the generator matrices, with their products.
pub fn composable_pairs() -> &'static Vec<(usize, usize, TermMatrix)> {
    static P: OnceLock<Vec<(usize, usize, TermMatrix)>> = OnceLock::new();
    P.get_or_init(|| {
        let ms = generator_matrices();
        let mut out = Vec::new();
        for (i, a) in ms.iter().enumerate() {
            for (j, b) in ms.iter().enumerate() {
                if let Some(ab) = upsilon(a, b) {
                    out.push((i, j, ab));
                }
            }
        }
        out
    })
}

/// The seven covers of the PP_{1,2} digraph: u₁ < T₁u₁ < T₂u₁, u₁ < u₂ < u₃,
/// u₃ < T₁u₃ < T₂u₃ and T₂u₁ < T₂u₃.
pub const PP12_COVERS: [(&str, &str); 7] = [
    ("[^;^][^1;^1][vvv]", "[^;^][vv][^1]"),
    ("[^;^][vv][^1]", "[v][^][^1]"),
    ("[^;^][^1;^1][vvv]", "[^;^][^1;1^][vvv]"),
    ("[^;^][^1;1^][vvv]", "[^;^][1^;1^][vvv]"),
    ("[^;^][1^;1^][vvv]", "[^;^][vv][1^]"),
    ("[^;^][vv][1^]", "[v][^][1^]"),
    ("[v][^][^1]", "[v][^][1^]"),
];

pub fn pp12_is_the_heptagon_digraph() -> bool {
    let pp = biassoc::posets::build_pp(1, 2);
    let got: BTreeSet<(&str, &str)> =
        pp.poset.covers.iter().map(|(a, b)| (pp.poset.labels[*a].as_str(), pp.poset.labels[*b].as_str())).collect();
    pp.poset.len() == 7 && got == PP12_COVERS.into_iter().collect()
}
