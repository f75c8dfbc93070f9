//! The `biassoc` command line. [`run`] does all the work so tests can call it.

use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use serde_json::{json, Value};

use crate::diagonal::{chain_map_defects, iterated_delta, subdivision_complex};
use crate::error::{Error, Result};
use crate::formats::{encode, Check, Report};
use crate::hinf::GenTable;
use crate::partition::{enumerate_faces, join_table, OrderedPartition};
use crate::posets::{build_pp, count_basic_subdivision, export_dot, quotient_kk, Poset};
use crate::terms::{parse_term, Notation, TermSum};
use crate::trees::{delta_k, PlanarTree};

/// A pair `a,b` of positive integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pair(pub usize, pub usize);

impl FromStr for Pair {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Pair, String> {
        let (a, b) = s.split_once(',').ok_or_else(|| format!("expected a,b but got {s:?}"))?;
        let p = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
        let (a, b) = (p(a)?, p(b)?);
        if a == 0 || b == 0 {
            return Err("both entries must be positive".into());
        }
        Ok(Pair(a, b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NotationArg {
    Fraction,
    Gamma,
    Ascii,
}

impl From<NotationArg> for Notation {
    fn from(n: NotationArg) -> Notation {
        match n {
            NotationArg::Fraction => Notation::Fraction,
            NotationArg::Gamma => Notation::Gamma,
            NotationArg::Ascii => Notation::Ascii,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "biassoc", version, about = "Permutahedra, associahedra and biassociahedra over GF(2)")]
pub struct Cli {
    /// Spaces per indentation level; 0 prints compact JSON.
    #[arg(long, global = true, default_value_t = 2)]
    pub json_indent: usize,
    /// How terms are printed.
    #[arg(long, global = true, value_enum, default_value_t = NotationArg::Gamma)]
    pub notation: NotationArg,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Faces of P_n, optionally of one dimension.
    Faces {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// The diagonal (or its k-th iterate) on a face; checks the chain-map identity on P_n.
    Diagonal {
        /// A face such as 12|3; defaults to the top face of P_n.
        #[arg(long)]
        face: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        iterate: usize,
    },
    /// The associahedral diagonal on a tree such as (x(xx)) or on a corolla.
    DeltaK {
        #[arg(long)]
        tree: Option<String>,
        #[arg(long)]
        leaves: Option<usize>,
    },
    /// The boundary of the generator with m inputs and n outputs.
    Boundary {
        #[arg(long)]
        gen: Pair,
    },
    /// Checks that the boundary squares to zero on all generators up to a total arity.
    D2check {
        #[arg(long, default_value_t = 6)]
        max_total: usize,
        /// Adds this term to the boundary of its own generator first.
        #[arg(long)]
        inject: Option<String>,
    },
    /// f-vector, homology and Euler characteristic of KK_{n,m}.
    Fvector {
        #[arg(long)]
        kk: Pair,
    },
    /// The poset PP_{n,m}.
    PpPoset {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        dot: bool,
    },
    /// The quotient KK_{n+1,m+1} of PP_{n,m}.
    KkPoset {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        dot: bool,
    },
    /// Combinatorial joins of faces of P_m and P_n over s positions.
    JoinTable {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
    },
    /// Basic vertices and top cells of the (m,n)-subdivision of the face m|n+m.
    Subdivision {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Defaults to the distinguished face.
        #[arg(long)]
        cell: Option<String>,
    },
}

/// Text for stdout and stderr, and the exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    let indent = (cli.json_indent > 0).then_some(cli.json_indent);
    match execute(&cli) {
        Ok(Output::Report(r)) => {
            Outcome { stdout: encode(&r, indent) + "\n", stderr: String::new(), code: r.exit_code() }
        }
        Ok(Output::Dot(s, code)) => Outcome { stdout: s, stderr: String::new(), code },
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: 1 },
    }
}

enum Output {
    Report(Report),
    Dot(String, i32),
}

fn report(command: &str, inputs: Value, payload: Value, checks: Vec<Check>) -> Output {
    Output::Report(Report { command: command.into(), inputs, payload, checks })
}

fn terms_json(s: &TermSum, nt: Notation) -> Value {
    json!(s.terms().map(|t| t.display(nt)).collect::<Vec<_>>())
}

fn poset_json(p: &Poset) -> Value {
    json!({
        "elements": p.labels,
        "covers": p.covers.iter().map(|(a, b)| [a, b]).collect::<Vec<_>>(),
    })
}

fn execute(cli: &Cli) -> Result<Output> {
    let nt: Notation = cli.notation.into();
    Ok(match &cli.command {
        Command::Faces { n, dim } => {
            let faces = enumerate_faces(*n, *dim)?;
            report(
                "faces",
                json!({"n": n, "dim": dim}),
                json!({"count": faces.len(), "faces": faces.iter().map(ToString::to_string).collect::<Vec<_>>()}),
                vec![],
            )
        }
        Command::Diagonal { face, n, iterate } => {
            let f: OrderedPartition = match (face, n) {
                (Some(s), _) => s.parse()?,
                (None, Some(n)) => OrderedPartition::top(*n),
                (None, None) => return Err(Error::Missing("--face or --n".into())),
            };
            let d = iterated_delta(&f, *iterate);
            let defects = if f.n() <= 5 { chain_map_defects(f.n())? } else { vec![] };
            let checks = vec![Check::new(
                "chain map",
                defects.is_empty(),
                if f.n() <= 5 {
                    format!("{} defective faces of P_{}", defects.len(), f.n())
                } else {
                    "skipped above n = 5".into()
                },
            )];
            report(
                "diagonal",
                json!({"face": f.to_string(), "iterate": iterate}),
                json!({"count": d.len(), "terms": d.iter().map(ToString::to_string).collect::<Vec<_>>()}),
                checks,
            )
        }
        Command::DeltaK { tree, leaves } => {
            let t: PlanarTree = match (tree, leaves) {
                (Some(s), _) => s.parse()?,
                (None, Some(k)) => PlanarTree::corolla(*k),
                (None, None) => return Err(Error::Missing("--tree or --leaves".into())),
            };
            let d = delta_k(&t);
            report(
                "delta-k",
                json!({"tree": t.to_string()}),
                json!({"count": d.len(), "terms": d.iter().map(|(a, b)| format!("{a} ⊗ {b}")).collect::<Vec<_>>()}),
                vec![],
            )
        }
        Command::Boundary { gen: Pair(m, n) } => {
            let (m, n) = (*m, *n);
            if m + n < 3 {
                return Err(Error::OutOfRange("the boundary needs m+n ≥ 3".into()));
            }
            let table = GenTable::shared((m + n).max(3))?;
            let bd = table.boundary_generator(m, n)?;
            let pure = bd.terms().all(|t| t.dim() + 4 == m + n && t.arity() == (m, n));
            let residue = table.leibniz_sum(bd)?;
            report(
                "boundary",
                json!({"gen": [m, n]}),
                json!({"count": bd.len(), "terms": terms_json(bd, nt)}),
                vec![
                    Check::new("pure codimension one", pure, format!("all terms of dimension {}", m + n - 4)),
                    Check::new("boundary squared", residue.is_empty(), format!("{} residue terms", residue.len())),
                ],
            )
        }
        Command::D2check { max_total, inject } => {
            let table = GenTable::shared(*max_total)?;
            let mut checks = Vec::new();
            let injected = inject.as_deref().map(parse_term).transpose()?;
            for tot in 3..=*max_total {
                for m in 1..tot {
                    let n = tot - m;
                    let mut bd = table.boundary_generator(m, n)?.clone();
                    if let Some(t) = injected.as_ref().filter(|t| t.arity() == (m, n)) {
                        bd.add(t.clone());
                    }
                    let res = table.leibniz_sum(&bd)?;
                    checks.push(Check::new(
                        format!("({m},{n})"),
                        res.is_empty(),
                        format!("{} terms, {} residue terms", bd.len(), res.len()),
                    ));
                }
            }
            report(
                "d2check",
                json!({"max_total": max_total, "inject": inject}),
                json!({"bidegrees": checks.len()}),
                checks,
            )
        }
        Command::Fvector { kk: Pair(n, m) } => {
            let (n, m) = (*n, *m);
            let table = GenTable::shared((m + n).max(2))?;
            let kk = table.kk_cells(n, m)?;
            let h = kk.homology();
            let expected: Vec<usize> = (0..h.len()).map(|i| usize::from(i == 0)).collect();
            report(
                "fvector",
                json!({"kk": [n, m]}),
                json!({"f": kk.f_vector(), "homology": h, "euler": kk.euler_characteristic()}),
                vec![
                    Check::new("boundary squared", kk.is_chain_complex(), ""),
                    Check::new("homology of a point", h == expected, format!("{h:?}")),
                    Check::new(
                        "euler characteristic",
                        kk.euler_characteristic() == 1,
                        kk.euler_characteristic().to_string(),
                    ),
                ],
            )
        }
        Command::PpPoset { n, m, dot } => {
            let pp = build_pp(*n, *m);
            let fact: usize = (1..=n + m).product();
            let checks = vec![
                Check::new("acyclic", pp.poset.is_acyclic(), ""),
                Check::new("con count", pp.con_count() == fact, format!("{} of {}", pp.con_count(), fact)),
                Check::new("composable", pp.elements.iter().all(|e| e.is_composable()), ""),
            ];
            if *dot {
                let code = if checks.iter().all(|c| c.pass) { 0 } else { 2 };
                return Ok(Output::Dot(export_dot(&pp.poset), code));
            }
            let mut payload = poset_json(&pp.poset);
            payload["size"] = json!(pp.elements.len());
            payload["con"] = json!(pp.con_count());
            report("pp-poset", json!({"n": n, "m": m}), payload, checks)
        }
        Command::KkPoset { n, m, dot } => {
            let q = quotient_kk(*n, *m);
            let checks = vec![Check::new("acyclic", q.poset.is_acyclic(), "")];
            if *dot {
                let code = if q.poset.is_acyclic() { 0 } else { 2 };
                return Ok(Output::Dot(export_dot(&q.poset), code));
            }
            let mut payload = poset_json(&q.poset);
            payload["size"] = json!(q.poset.len());
            payload["projection"] = json!(q.projection);
            report("kk-poset", json!({"n": n, "m": m}), payload, checks)
        }
        Command::JoinTable { m, n, s } => {
            let rows = join_table(*m, *n, *s)?;
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| json!({"index": r.index.to_string(), "a": r.a.to_string(), "b": r.b.to_string(), "join": r.join.to_string()}))
                .collect();
            report("join-table", json!({"m": m, "n": n, "s": s}), json!({"count": rows.len(), "rows": rows}), vec![])
        }
        Command::Subdivision { m, n, cell } => {
            let c: OrderedPartition = match cell {
                Some(s) => s.parse()?,
                None => OrderedPartition::new(
                    m + n,
                    vec![(1..=*m as u8).collect(), (*m as u8 + 1..=(m + n) as u8).collect()],
                )?,
            };
            let counts = count_basic_subdivision(*m, *n, &c)?;
            report(
                "subdivision",
                json!({"m": m, "n": n, "cell": c.to_string()}),
                json!({
                    "basic_vertices": counts.basic_vertices,
                    "top_cells": counts.top_cells,
                    "x_f": subdivision_complex(*m, *n).f_vector(),
                    "y_f": subdivision_complex(*n, *m).f_vector(),
                }),
                vec![],
            )
        }
    })
}

/// Joined stderr and stdout, for quick display.
pub fn describe(o: &Outcome) -> String {
    [o.stderr.as_str(), o.stdout.as_str()].iter().filter(|s| !s.is_empty()).join("")
}
