//! JSON documents for rings, modules, morphisms and complexes.
//!
//! Matrices are row-major arrays of arrays. Entries are written as decimal
//! strings so arbitrary precision survives; plain JSON integers are accepted
//! on input.

use std::fmt;
use std::path::Path;

use fundseq_core::uct::Complex;
use fundseq_core::{Error, FPModule, Int, IntMat, Morphism, RingDesc};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("schema error at {location}: {message}")]
    Schema { location: String, message: String },
    #[error("{location}: {source}")]
    Math { location: String, source: Error },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("usage: {0}")]
    Usage(String),
}

impl CliError {
    pub fn schema(location: impl Into<String>, message: impl fmt::Display) -> CliError {
        CliError::Schema { location: location.into(), message: message.to_string() }
    }

    pub fn math(location: impl Into<String>, source: Error) -> CliError {
        CliError::Math { location: location.into(), source }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// A matrix entry as read from JSON.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum Entry {
    Text(String),
    Number(i64),
}

impl Entry {
    fn to_int(&self, location: &str) -> CliResult<Int> {
        match self {
            Entry::Number(v) => Ok(Int::from(*v)),
            Entry::Text(s) => s.trim().parse().map_err(|_| CliError::schema(location, format!("`{s}` is not an integer"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum RingDoc {
    Z,
    ZmodN { n: u64 },
}

impl RingDoc {
    pub fn to_ring(&self, location: &str) -> CliResult<RingDesc> {
        match self {
            RingDoc::Z => Ok(RingDesc::Integers),
            RingDoc::ZmodN { n } if *n >= 2 => Ok(RingDesc::ModN(Int::from(*n))),
            RingDoc::ZmodN { n } => Err(CliError::schema(location, format!("modulus {n} must be at least 2"))),
        }
    }

    pub fn from_ring(ring: &RingDesc) -> RingDoc {
        match ring {
            RingDesc::Integers => RingDoc::Z,
            RingDesc::ModN(n) => RingDoc::ZmodN { n: n.try_into().expect("modulus fits in 64 bits") },
        }
    }
}

/// Parses `Z`, `Z/n`, `Zn` or `ZmodN:n` from the command line.
pub fn parse_ring(s: &str) -> CliResult<RingDesc> {
    let t = s.trim();
    if t == "Z" {
        return Ok(RingDesc::Integers);
    }
    let digits = t
        .strip_prefix("Z/")
        .or_else(|| t.strip_prefix("ZmodN:"))
        .or_else(|| t.strip_prefix('Z'))
        .ok_or_else(|| CliError::Usage(format!("unknown ring `{s}` (expected Z or Z/n)")))?;
    let n: u64 = digits.parse().map_err(|_| CliError::Usage(format!("unknown ring `{s}` (expected Z or Z/n)")))?;
    RingDoc::ZmodN { n }.to_ring("--ring").map_err(|e| CliError::Usage(e.to_string()))
}

#[derive(Clone, Debug, Deserialize)]
struct ModuleIn {
    ring: Option<RingDoc>,
    gens: usize,
    #[serde(default)]
    relations: Vec<Vec<Entry>>,
}

#[derive(Clone, Debug, Deserialize)]
struct MorphismIn {
    ring: Option<RingDoc>,
    source: ModuleIn,
    target: ModuleIn,
    #[serde(alias = "G")]
    matrix: Vec<Vec<Entry>>,
}

#[derive(Clone, Debug, Deserialize)]
struct ComplexIn {
    ring: Option<RingDoc>,
    support: [i64; 2],
    terms: Vec<ModuleIn>,
    #[serde(default)]
    differentials: Vec<Vec<Vec<Entry>>>,
}

fn matrix(rows: &[Vec<Entry>], nrows: usize, location: &str) -> CliResult<IntMat> {
    if rows.is_empty() {
        return Ok(IntMat::zeros(nrows, 0));
    }
    if rows.len() != nrows {
        return Err(CliError::schema(location, format!("expected {nrows} rows, found {}", rows.len())));
    }
    let ncols = rows[0].len();
    let mut out = Vec::with_capacity(nrows);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != ncols {
            return Err(CliError::schema(format!("{location}[{i}]"), format!("expected {ncols} entries, found {}", row.len())));
        }
        let parsed: CliResult<Vec<Int>> =
            row.iter().enumerate().map(|(j, e)| e.to_int(&format!("{location}[{i}][{j}]"))).collect();
        out.push(parsed?);
    }
    Ok(IntMat::from_int_rows(nrows, ncols, out))
}

/// A map matrix; empty documents stand for the zero-sized shapes.
fn sized_matrix(rows: &[Vec<Entry>], nrows: usize, ncols: usize, location: &str) -> CliResult<IntMat> {
    if nrows == 0 || ncols == 0 {
        if rows.iter().any(|r| !r.is_empty()) || (nrows == 0 && !rows.is_empty()) {
            return Err(CliError::schema(location, format!("expected a {nrows}x{ncols} matrix")));
        }
        return Ok(IntMat::zeros(nrows, ncols));
    }
    matrix(rows, nrows, location)
}

/// Resolves the ring of a document against an outer default.
fn pick_ring(own: Option<&RingDoc>, outer: Option<&RingDesc>, location: &str) -> CliResult<RingDesc> {
    match (own, outer) {
        (Some(doc), Some(r)) => {
            let mine = doc.to_ring(location)?;
            if &mine != r {
                return Err(CliError::math(location, Error::RingMismatch(format!("document is over {mine}, expected {r}"))));
            }
            Ok(mine)
        }
        (Some(doc), None) => doc.to_ring(location),
        (None, Some(r)) => Ok(r.clone()),
        (None, None) => Err(CliError::schema(location, "no ring given (add \"ring\" or pass --ring)")),
    }
}

fn build_module(doc: &ModuleIn, outer: Option<&RingDesc>, location: &str) -> CliResult<FPModule> {
    let ring = pick_ring(doc.ring.as_ref(), outer, location)?;
    let rel = matrix(&doc.relations, doc.gens, &format!("{location}.relations"))?;
    Ok(FPModule::new(ring, rel))
}

fn build_morphism(doc: &MorphismIn, outer: Option<&RingDesc>, location: &str) -> CliResult<Morphism> {
    let ring = pick_ring(doc.ring.as_ref(), outer, location)?;
    let src = build_module(&doc.source, Some(&ring), &format!("{location}.source"))?;
    let tgt = build_module(&doc.target, Some(&ring), &format!("{location}.target"))?;
    let mat_loc = format!("{location}.matrix");
    let g = sized_matrix(&doc.matrix, tgt.gens(), src.gens(), &mat_loc)?;
    if g.cols() != src.gens() {
        return Err(CliError::schema(mat_loc, format!("expected {} columns, found {}", src.gens(), g.cols())));
    }
    Morphism::new(&src, &tgt, g).map_err(|e| CliError::math(mat_loc, e))
}

fn build_complex(doc: &ComplexIn, outer: Option<&RingDesc>, location: &str) -> CliResult<Complex> {
    let ring = pick_ring(doc.ring.as_ref(), outer, location)?;
    let [lo, hi] = doc.support;
    if hi < lo || (hi - lo + 1) as usize != doc.terms.len() {
        return Err(CliError::schema(
            format!("{location}.support"),
            format!("support [{lo},{hi}] does not match {} terms", doc.terms.len()),
        ));
    }
    if doc.differentials.len() + 1 != doc.terms.len() {
        return Err(CliError::schema(
            format!("{location}.differentials"),
            format!("expected {} differentials, found {}", doc.terms.len() - 1, doc.differentials.len()),
        ));
    }
    let terms: Vec<FPModule> = doc
        .terms
        .iter()
        .enumerate()
        .map(|(k, t)| build_module(t, Some(&ring), &format!("{location}.terms[{k}]")))
        .collect::<CliResult<_>>()?;
    let mut diffs = Vec::new();
    for (k, rows) in doc.differentials.iter().enumerate() {
        let loc = format!("{location}.differentials[{k}]");
        let (src, tgt) = (&terms[k + 1], &terms[k]);
        let g = sized_matrix(rows, tgt.gens(), src.gens(), &loc)?;
        if g.cols() != src.gens() {
            return Err(CliError::schema(loc, format!("expected {} columns, found {}", src.gens(), g.cols())));
        }
        diffs.push(Morphism::new(src, tgt, g).map_err(|e| CliError::math(loc, e))?);
    }
    Complex::new(ring, lo, terms, diffs).map_err(|e| CliError::math(location, e))
}

/// Any of the three document kinds.
#[derive(Clone, Debug)]
pub enum Input {
    Module(FPModule),
    Morphism(Morphism),
    Complex(Complex),
}

fn from_value<T: for<'de> Deserialize<'de>>(v: &Value, location: &str) -> CliResult<T> {
    serde_json::from_value(v.clone()).map_err(|e| CliError::schema(location, e))
}

/// Dispatches on the shape of the document: `support` marks a complex,
/// `source` a morphism, `gens` a module.
pub fn parse_input(doc: &Value, ring: Option<&RingDesc>) -> CliResult<Input> {
    let obj = doc.as_object().ok_or_else(|| CliError::schema("$", "expected a JSON object"))?;
    if obj.contains_key("support") {
        Ok(Input::Complex(build_complex(&from_value(doc, "$")?, ring, "$")?))
    } else if obj.contains_key("source") {
        Ok(Input::Morphism(build_morphism(&from_value(doc, "$")?, ring, "$")?))
    } else if obj.contains_key("gens") {
        Ok(Input::Module(build_module(&from_value(doc, "$")?, ring, "$")?))
    } else {
        Err(CliError::schema("$", "not a module, morphism or complex document"))
    }
}

pub fn parse_str(text: &str, ring: Option<&RingDesc>, name: &str) -> CliResult<Input> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| CliError::schema(format!("{name}:{}:{}", e.line(), e.column()), e))?;
    parse_input(&v, ring).map_err(|e| match e {
        CliError::Schema { location, message } => CliError::Schema { location: format!("{name}: {location}"), message },
        CliError::Math { location, source } => CliError::Math { location: format!("{name}: {location}"), source },
        other => other,
    })
}

pub fn read_input(path: &Path, ring: Option<&RingDesc>) -> CliResult<Input> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_str(&text, ring, &path.display().to_string())
}

pub fn read_module(path: &Path, ring: Option<&RingDesc>) -> CliResult<FPModule> {
    match read_input(path, ring)? {
        Input::Module(m) => Ok(m),
        _ => Err(CliError::schema(path.display().to_string(), "expected a module document")),
    }
}

pub fn read_morphism(path: &Path, ring: Option<&RingDesc>) -> CliResult<Morphism> {
    match read_input(path, ring)? {
        Input::Morphism(m) => Ok(m),
        _ => Err(CliError::schema(path.display().to_string(), "expected a morphism document")),
    }
}

pub fn read_complex(path: &Path, ring: Option<&RingDesc>) -> CliResult<Complex> {
    match read_input(path, ring)? {
        Input::Complex(c) => Ok(c),
        _ => Err(CliError::schema(path.display().to_string(), "expected a complex document")),
    }
}

fn matrix_value(m: &IntMat) -> Value {
    Value::Array(
        m.to_rows().iter().map(|r| Value::Array(r.iter().map(|x| Value::String(x.to_string())).collect())).collect(),
    )
}

fn module_body(m: &FPModule) -> serde_json::Map<String, Value> {
    let mut o = serde_json::Map::new();
    o.insert("gens".into(), m.gens().into());
    o.insert("relations".into(), matrix_value(m.relations()));
    o
}

fn ring_value(r: &RingDesc) -> Value {
    serde_json::to_value(RingDoc::from_ring(r)).expect("ring documents serialize")
}

pub fn module_json(m: &FPModule) -> Value {
    let mut o = serde_json::Map::new();
    o.insert("ring".into(), ring_value(m.ring()));
    o.extend(module_body(m));
    Value::Object(o)
}

pub fn morphism_json(f: &Morphism) -> Value {
    let mut o = serde_json::Map::new();
    o.insert("ring".into(), ring_value(f.ring()));
    o.insert("source".into(), Value::Object(module_body(f.source())));
    o.insert("target".into(), Value::Object(module_body(f.target())));
    o.insert("matrix".into(), matrix_value(f.matrix()));
    Value::Object(o)
}

pub fn complex_json(c: &Complex) -> Value {
    let (lo, hi) = c.support();
    let mut o = serde_json::Map::new();
    o.insert("ring".into(), ring_value(c.ring()));
    o.insert("support".into(), Value::Array(vec![lo.into(), hi.into()]));
    o.insert("terms".into(), Value::Array(c.terms().iter().map(|t| Value::Object(module_body(t))).collect()));
    o.insert("differentials".into(), Value::Array(c.differentials().iter().map(|d| matrix_value(d.matrix())).collect()));
    Value::Object(o)
}

pub fn input_json(x: &Input) -> Value {
    match x {
        Input::Module(m) => module_json(m),
        Input::Morphism(f) => morphism_json(f),
        Input::Complex(c) => complex_json(c),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn parses_cyclic_module() {
        let doc = json!({"ring": {"kind": "Z"}, "gens": 1, "relations": [[2]]});
        let Input::Module(m) = parse_input(&doc, None).unwrap() else { panic!() };
        assert_eq!(m.to_string(), "Z/2");
        let doc = json!({"ring": {"kind": "ZmodN", "n": 4}, "gens": 2, "relations": [["2"], ["0"]]});
        let Input::Module(m) = parse_input(&doc, None).unwrap() else { panic!() };
        assert_eq!(m.ring(), &RingDesc::zmod(4));
        assert!(m.iso(&FPModule::diagonal(RingDesc::zmod(4), &[2.into()], 1)));
    }

    #[test]
    fn rejects_bad_documents() {
        let doc = json!({"ring": {"kind": "Z"}, "source": {"gens": 1, "relations": [[2]]},
            "target": {"gens": 1, "relations": [[4]]}, "G": [[1]]});
        let err = parse_input(&doc, None).unwrap_err();
        assert!(matches!(err, CliError::Math { source: Error::NotWellDefined(_), .. }), "{err}");

        let doc = json!({"ring": {"kind": "Z"}, "support": [0, 2],
            "terms": [{"gens": 1}, {"gens": 1}, {"gens": 1}], "differentials": [[[2]], [[3]]]});
        let err = parse_input(&doc, None).unwrap_err();
        assert!(matches!(err, CliError::Math { source: Error::NotAComplex(_), .. }), "{err}");

        let doc = json!({"ring": {"kind": "Z"}, "gens": 2, "relations": [[1, 2], [3]]});
        let err = parse_input(&doc, None).unwrap_err();
        assert!(matches!(&err, CliError::Schema { location, .. } if location == "$.relations[1]"), "{err}");
        assert!(parse_input(&json!({"gens": 1}), None).is_err());
        assert!(parse_input(&json!({"ring": {"kind": "ZmodN", "n": 1}, "gens": 1}), None).is_err());
        assert!(parse_input(&json!({"gens": 1, "relations": [["x"]]}), Some(&RingDesc::Integers)).is_err());
    }

    #[test]
    fn ring_flags() {
        assert_eq!(parse_ring("Z").unwrap(), RingDesc::Integers);
        assert_eq!(parse_ring("Z/12").unwrap(), RingDesc::zmod(12));
        assert_eq!(parse_ring("Z8").unwrap(), RingDesc::zmod(8));
        assert!(parse_ring("Q").is_err());
        assert!(parse_ring("Z/1").is_err());
    }

    #[test]
    fn outer_ring_must_agree() {
        let doc = json!({"ring": {"kind": "Z"}, "gens": 1});
        assert!(matches!(
            parse_input(&doc, Some(&RingDesc::zmod(4))),
            Err(CliError::Math { source: Error::RingMismatch(_), .. })
        ));
    }
}
