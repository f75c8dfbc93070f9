//! Canonical JSON for the exported types and the CLI report envelope.
//!
//! Object keys come out sorted (serde_json's default map is ordered).
//! Terms encode as `"unit"`, `{"gen":[m,n]}` or `{"prod":[M₁,…,M_r]}` where
//! each `M` is a matrix (list of rows) of terms; a fraction `γ(A;B)` is the
//! product of the column `A` with the row `B`.

use serde::ser::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::partition::OrderedPartition;
use crate::terms::{product, Term, TermMatrix};

pub fn term_to_json(t: &Term) -> Value {
    match t {
        Term::Unit => json!("unit"),
        Term::Gen { m, n } => json!({ "gen": [m, n] }),
        Term::Gamma { num, den } => {
            let col: Vec<Value> = num.iter().map(|a| json!([term_to_json(a)])).collect();
            let row: Vec<Value> = den.iter().map(term_to_json).collect();
            json!({ "prod": [col, [row]] })
        }
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        term_to_json(self).serialize(s)
    }
}

fn err<T>(path: &str, msg: impl Into<String>) -> Result<T> {
    Err(Error::Decode { path: if path.is_empty() { "$".into() } else { path.into() }, msg: msg.into() })
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().map_or_else(|| err(path, "expected an array"), Ok)
}

fn as_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64().map_or_else(|| err(path, "expected a non-negative integer"), |x| Ok(x as usize))
}

/// Values that decode from JSON with error paths like `$.prod[1][0][2]`.
pub trait Decode: Sized {
    fn decode_value(v: &Value, path: &str) -> Result<Self>;
}

impl Decode for Term {
    fn decode_value(v: &Value, path: &str) -> Result<Term> {
        if v.as_str() == Some("unit") {
            return Ok(Term::Unit);
        }
        let Some(obj) = v.as_object() else { return err(path, "expected \"unit\" or an object") };
        if obj.len() != 1 {
            return err(path, "expected exactly one of gen, prod");
        }
        if let Some(g) = obj.get("gen") {
            let p = format!("{path}.gen");
            let a = as_array(g, &p)?;
            if a.len() != 2 {
                return err(&p, "expected [m, n]");
            }
            let (m, n) = (as_usize(&a[0], &format!("{p}[0]"))?, as_usize(&a[1], &format!("{p}[1]"))?);
            if m == 0 || n == 0 {
                return err(&p, "arities start at 1");
            }
            return Ok(Term::gen(m, n));
        }
        if let Some(pr) = obj.get("prod") {
            let p = format!("{path}.prod");
            let mut mats = Vec::new();
            for (k, mv) in as_array(pr, &p)?.iter().enumerate() {
                let pk = format!("{p}[{k}]");
                let mut rows = Vec::new();
                for (i, rv) in as_array(mv, &pk)?.iter().enumerate() {
                    let pi = format!("{pk}[{i}]");
                    let row = as_array(rv, &pi)?
                        .iter()
                        .enumerate()
                        .map(|(j, e)| Term::decode_value(e, &format!("{pi}[{j}]")))
                        .collect::<Result<Vec<_>>>()?;
                    rows.push(row);
                }
                mats.push(TermMatrix::new(rows).or_else(|e| err(&pk, e.to_string()))?);
            }
            if let [a, b] = mats.as_slice() {
                if a.shape().1 == 1 && b.shape().0 == 1 {
                    let num = a.entries().iter().map(|r| r[0].clone()).collect();
                    return Term::gamma(num, b.entries()[0].clone()).or_else(|e| err(&p, e.to_string()));
                }
            }
            let Some(res) = product(&mats) else {
                return err(&p, "no association is a chain of block transverse pairs");
            };
            if res.shape() != (1, 1) {
                return err(&p, format!("product is {:?}, not a single term", res.shape()));
            }
            return Ok(res.entries()[0][0].clone());
        }
        err(path, "expected exactly one of gen, prod")
    }
}

impl Decode for OrderedPartition {
    fn decode_value(v: &Value, path: &str) -> Result<OrderedPartition> {
        let Some(obj) = v.as_object() else { return err(path, "expected an object") };
        let n = as_usize(obj.get("n").unwrap_or(&Value::Null), &format!("{path}.n"))?;
        let bp = format!("{path}.blocks");
        let mut blocks = Vec::new();
        for (i, b) in as_array(obj.get("blocks").unwrap_or(&Value::Null), &bp)?.iter().enumerate() {
            let pi = format!("{bp}[{i}]");
            let block = as_array(b, &pi)?
                .iter()
                .enumerate()
                .map(|(j, e)| {
                    let x = as_usize(e, &format!("{pi}[{j}]"))?;
                    u8::try_from(x).or_else(|_| err(&format!("{pi}[{j}]"), "element too large"))
                })
                .collect::<Result<Vec<u8>>>()?;
            blocks.push(block);
        }
        if let Some(extra) = obj.keys().find(|k| *k != "n" && *k != "blocks") {
            return err(&format!("{path}.{extra}"), "unknown field");
        }
        OrderedPartition::new(n, blocks).or_else(|e| err(path, e.to_string()))
    }
}

impl<T: Decode> Decode for Vec<T> {
    fn decode_value(v: &Value, path: &str) -> Result<Vec<T>> {
        as_array(v, path)?.iter().enumerate().map(|(i, e)| T::decode_value(e, &format!("{path}[{i}]"))).collect()
    }
}

/// Parses JSON text and decodes it.
pub fn decode<T: Decode>(s: &str) -> Result<T> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Decode { path: "$".into(), msg: e.to_string() })?;
    T::decode_value(&v, "$")
}

/// Canonical JSON text; `indent = None` is compact.
pub fn encode<T: Serialize + ?Sized>(v: &T, indent: Option<usize>) -> String {
    let value = serde_json::to_value(v).expect("exported types serialize");
    match indent {
        None => value.to_string(),
        Some(k) => {
            let pad = vec![b' '; k];
            let mut buf = Vec::new();
            let fmt = serde_json::ser::PrettyFormatter::with_indent(&pad);
            let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
            value.serialize(&mut ser).expect("writing to memory");
            String::from_utf8(buf).expect("serde_json writes UTF-8")
        }
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

/// What every CLI command prints.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub payload: Value,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// 0 when every check passed, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            2
        }
    }
}
