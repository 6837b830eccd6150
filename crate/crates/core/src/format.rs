//! Text file format for algebras: JSON with exact rational strings.
//!
//! ```json
//! {
//!   "dim": 3,
//!   "basis": ["h", "e", "f"],
//!   "brackets": [{ "i": 1, "j": 2, "coeffs": { "2": "2" } }],
//!   "metric": [["8", "0", "0"], ["0", "0", "4"], ["0", "4", "0"]],
//!   "meta": { "p": 1, "k": 0 }
//! }
//! ```
//!
//! Indices are 1-based. Unlisted brackets are zero and `[e_j, e_i] = -[e_i, e_j]`
//! is filled in for every listed pair whose partner is absent.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::catalog::{CatalogEntry, Meta};
use crate::error::{Error, Result};
use crate::exactlin::{format_scalar, parse_scalar, Matrix};
use crate::lie::{BilinearForm, LieAlgebra, StructureConstants};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: BTreeMap<usize, String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileMeta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<FileMeta>,
}

/// A validated algebra with its optional metric and metadata.
#[derive(Debug, Clone)]
pub struct AlgebraInput {
    pub name: Option<String>,
    pub algebra: LieAlgebra,
    pub metric: Option<BilinearForm>,
    pub meta: Option<Meta>,
}

impl From<&CatalogEntry> for AlgebraInput {
    fn from(e: &CatalogEntry) -> Self {
        Self {
            name: Some(e.name.clone()),
            algebra: e.algebra.clone(),
            metric: e.metric().cloned(),
            meta: e.meta.p.map(|_| e.meta),
        }
    }
}

impl AlgebraFile {
    /// Parses JSON text; syntax errors carry line and column.
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("file types always serialize");
        s.push('\n');
        s
    }

    /// Sparse description of an algebra: only nonzero brackets with `i < j`.
    pub fn from_algebra(name: Option<&str>, g: &LieAlgebra, metric: Option<&BilinearForm>, meta: Option<&Meta>) -> Self {
        let n = g.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let coeffs: BTreeMap<usize, String> = g
                    .bracket_basis(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                    .map(|(k, c)| (k + 1, format_scalar(c)))
                    .collect();
                if !coeffs.is_empty() {
                    brackets.push(BracketEntry { i: i + 1, j: j + 1, coeffs });
                }
            }
        }
        Self {
            name: name.map(str::to_string),
            dim: n,
            basis: g.basis_names().to_vec(),
            brackets,
            metric: metric.map(|m| {
                m.gram()
                    .row_vectors()
                    .iter()
                    .map(|r| r.iter().map(format_scalar).collect())
                    .collect()
            }),
            meta: meta.map(|m| FileMeta { p: m.p, k: m.k }),
        }
    }

    pub fn from_entry(e: &CatalogEntry) -> Self {
        let meta = e.meta.p.map(|_| e.meta);
        Self::from_algebra(Some(&e.name), &e.algebra, e.metric(), meta.as_ref())
    }

    /// Range and format checks, antisymmetric completion and Lie validation.
    pub fn to_input(&self) -> Result<AlgebraInput> {
        let n = self.dim;
        if self.basis.len() != n {
            return Err(Error::Parse(format!(
                "basis lists {} names for dim {n}",
                self.basis.len()
            )));
        }
        let index = |v: usize, what: &str| {
            if (1..=n).contains(&v) {
                Ok(v - 1)
            } else {
                Err(Error::Parse(format!("{what} index {v} outside 1..={n}")))
            }
        };
        let mut sc = StructureConstants::zeros(n);
        let mut listed = BTreeSet::new();
        for b in &self.brackets {
            let (i, j) = (index(b.i, "bracket")?, index(b.j, "bracket")?);
            if !listed.insert((i, j)) {
                return Err(Error::Parse(format!("bracket ({}, {}) listed twice", b.i, b.j)));
            }
            for (&k, value) in &b.coeffs {
                let k = index(k, "coefficient")?;
                let c = parse_scalar(value)
                    .map_err(|_| Error::Parse(format!("bad rational {value:?} in bracket ({}, {})", b.i, b.j)))?;
                sc.set_raw(i, j, k, c);
            }
        }
        for &(i, j) in &listed {
            if !listed.contains(&(j, i)) {
                for k in 0..n {
                    let c = -sc.get(i, j, k).clone();
                    sc.set_raw(j, i, k, c);
                }
            }
        }
        let algebra = LieAlgebra::new(self.basis.clone(), sc)?;
        let metric = match &self.metric {
            None => None,
            Some(rows) => {
                let parsed = rows
                    .iter()
                    .map(|r| r.iter().map(|v| parse_scalar(v)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()
                    .map_err(|_| Error::Parse("bad rational in metric".into()))?;
                if parsed.len() != n {
                    return Err(Error::Parse(format!("metric has {} rows for dim {n}", parsed.len())));
                }
                Some(BilinearForm::new(
                    Matrix::from_rows(n, parsed).map_err(|_| Error::Parse("metric rows must have dim entries".into()))?,
                ))
            }
        };
        let meta = self.meta.map(|m| Meta {
            p: m.p,
            k: m.k,
            semisimple: algebra.is_semisimple(),
            compact_type: m.p.is_some(),
        });
        Ok(AlgebraInput {
            name: self.name.clone(),
            algebra,
            metric,
            meta,
        })
    }
}

/// Parses and validates algebra text in one step.
pub fn load(text: &str) -> Result<AlgebraInput> {
    AlgebraFile::parse(text)?.to_input()
}
