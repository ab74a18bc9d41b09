//! File formats: pattern JSON, ASCII masks and partial-matrix JSON.
//!
//! ```text
//! {"kind": "bipartite", "m": 2, "n": 2, "edges": [[0, 0], [1, 1]]}
//! {"kind": "symmetric", "n": 2, "edges": [[0, 0], [0, 1]]}
//! {"kind": "bipartite", "m": 1, "n": 2, "edges": [[0, 1]], "values": [[0, 1, "2.5"]]}
//! ```
//!
//! Partial-matrix values are decimal strings for real data and integers for
//! F_p data; an optional `"prime"` names the field.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::complete::{PartialMatrix, SymPartialMatrix};
use crate::error::{Error, Result};
use crate::ffmat::PrimeField;
use crate::pattern::{BipartitePattern, Pattern, SymmetricPattern};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PatternKind {
    Bipartite,
    Symmetric,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PatternFile {
    pub kind: PatternKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub n: usize,
    #[serde(default)]
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<(usize, usize, Value)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
}

impl PatternFile {
    pub fn from_pattern(p: &Pattern) -> Self {
        let (kind, m, n, edges) = match p {
            Pattern::Bipartite(b) => (PatternKind::Bipartite, Some(b.m()), b.n(), b.edges()),
            Pattern::Symmetric(s) => (PatternKind::Symmetric, None, s.n(), s.edges()),
        };
        Self {
            kind,
            m,
            n,
            edges: edges.into_iter().map(|(i, j)| [i, j]).collect(),
            values: None,
            prime: None,
        }
    }

    /// The pattern; edges default to the keys of `values` when absent.
    pub fn pattern(&self) -> Result<Pattern> {
        let keys: Vec<(usize, usize)> = if self.edges.is_empty() {
            self.values.iter().flatten().map(|(i, j, _)| (*i, *j)).collect()
        } else {
            self.edges.iter().map(|e| (e[0], e[1])).collect()
        };
        Ok(match self.kind {
            PatternKind::Bipartite => {
                let m = self.m.ok_or_else(|| Error::Parse("bipartite pattern needs \"m\"".into()))?;
                Pattern::Bipartite(BipartitePattern::new(m, self.n, keys)?)
            }
            PatternKind::Symmetric => Pattern::Symmetric(SymmetricPattern::new(self.n, keys)?),
        })
    }
}

/// Pattern JSON or, failing a leading `{`, an ASCII mask.
pub fn parse_pattern(text: &str) -> Result<Pattern> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str::<PatternFile>(text)?.pattern()
    } else {
        Ok(Pattern::Bipartite(BipartitePattern::from_mask_str(text)?))
    }
}

pub fn pattern_to_json(p: &Pattern) -> String {
    serde_json::to_string_pretty(&PatternFile::from_pattern(p)).expect("pattern files always serialize")
}

pub fn read_pattern(path: impl AsRef<Path>) -> Result<Pattern> {
    parse_pattern(&fs::read_to_string(path)?)
}

pub fn write_pattern(path: impl AsRef<Path>, p: &Pattern) -> Result<()> {
    fs::write(path, pattern_to_json(p) + "\n")?;
    Ok(())
}

/// A partial matrix as read from disk.
#[derive(Clone, Debug, PartialEq)]
pub enum PartialData {
    Real(PartialMatrix<f64>),
    Fp(PrimeField, PartialMatrix<u64>),
    SymReal(SymPartialMatrix<f64>),
    SymFp(PrimeField, SymPartialMatrix<u64>),
}

enum Scalar {
    Real(f64),
    Int(i64),
}

fn scalar(v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => {
            let x: f64 = s.trim().parse().map_err(|_| Error::Parse(format!("`{s}` is not a decimal number")))?;
            if !x.is_finite() {
                return Err(Error::NonFiniteEntry);
            }
            Ok(Scalar::Real(x))
        }
        Value::Number(n) => n
            .as_i64()
            .map(Scalar::Int)
            .ok_or_else(|| Error::Parse(format!("{n} is not an integer; real values are written as strings"))),
        other => Err(Error::Parse(format!("unsupported value {other}"))),
    }
}

/// Orders `(key, value)` pairs along `edges`, which they must cover exactly once.
fn align<T: Copy>(edges: &[(usize, usize)], cells: BTreeMap<(usize, usize), T>) -> Result<Vec<T>> {
    if cells.len() != edges.len() {
        return Err(Error::ShapeMismatch(format!("{} values for {} known entries", cells.len(), edges.len())));
    }
    edges
        .iter()
        .map(|e| cells.get(e).copied().ok_or_else(|| Error::ShapeMismatch(format!("no value for entry {e:?}"))))
        .collect()
}

impl PartialData {
    pub fn from_file(file: &PatternFile) -> Result<Self> {
        let values = file
            .values
            .as_ref()
            .ok_or_else(|| Error::Parse("partial matrix needs \"values\"".into()))?;
        let pattern = file.pattern()?;
        let symmetric = matches!(pattern, Pattern::Symmetric(_));
        let key = |i: usize, j: usize| if symmetric { (i.min(j), i.max(j)) } else { (i, j) };
        let mut reals = BTreeMap::new();
        let mut ints = BTreeMap::new();
        for (i, j, v) in values {
            let k = key(*i, *j);
            if reals.contains_key(&k) || ints.contains_key(&k) {
                return Err(Error::Parse(format!("entry ({i}, {j}) given twice")));
            }
            match scalar(v)? {
                Scalar::Real(x) => reals.insert(k, x),
                Scalar::Int(x) => ints.insert(k, x).map(|x| x as f64),
            };
        }
        if !reals.is_empty() && !ints.is_empty() {
            return Err(Error::Parse("values mix decimal strings and integers".into()));
        }
        let is_fp = !ints.is_empty() || (reals.is_empty() && file.prime.is_some());
        let field = match file.prime {
            Some(p) => PrimeField::new(p)?,
            None => PrimeField::default(),
        };
        let fp_cells = || ints.iter().map(|(&k, &v)| (k, field.from_i64(v))).collect::<BTreeMap<_, _>>();
        Ok(match (pattern, is_fp) {
            (Pattern::Bipartite(p), false) => {
                let v = align(&p.edges(), reals)?;
                PartialData::Real(PartialMatrix::new(p, v)?)
            }
            (Pattern::Bipartite(p), true) => {
                let v = align(&p.edges(), fp_cells())?;
                PartialData::Fp(field, PartialMatrix::new(p, v)?)
            }
            (Pattern::Symmetric(p), false) => {
                let v = align(&p.edges(), reals)?;
                PartialData::SymReal(SymPartialMatrix::new(p, v)?)
            }
            (Pattern::Symmetric(p), true) => {
                let v = align(&p.edges(), fp_cells())?;
                PartialData::SymFp(field, SymPartialMatrix::new(p, v)?)
            }
        })
    }

    pub fn to_file(&self) -> PatternFile {
        let real = |v: f64| Value::String(format!("{v}"));
        let (pattern, values, prime): (Pattern, Vec<(usize, usize, Value)>, Option<u64>) = match self {
            PartialData::Real(x) => (x.pattern().clone().into(), x.entries().map(|(i, j, v)| (i, j, real(v))).collect(), None),
            PartialData::Fp(f, x) => (
                x.pattern().clone().into(),
                x.entries().map(|(i, j, v)| (i, j, Value::from(v))).collect(),
                Some(f.modulus()),
            ),
            PartialData::SymReal(x) => (x.pattern().clone().into(), x.entries().map(|(i, j, v)| (i, j, real(v))).collect(), None),
            PartialData::SymFp(f, x) => (
                x.pattern().clone().into(),
                x.entries().map(|(i, j, v)| (i, j, Value::from(v))).collect(),
                Some(f.modulus()),
            ),
        };
        PatternFile {
            values: Some(values),
            prime,
            ..PatternFile::from_pattern(&pattern)
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_file(&serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("partial matrices always serialize")
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }
}
