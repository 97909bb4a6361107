//! Serialized forms of a semigroup and its resolution: a versioned JSON
//! document, plain text, and Macaulay2 / Singular scripts.
//!
//! JSON matrix entries are `[row, col, "polynomial"]` triples with 0-based
//! indices, in row-major order.

use std::fmt::Write as _;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::complex::{basis, GradedComplex, Level};
use crate::error::{Error, Result};
use crate::poly::{PolyMatrix, SparsePolynomial};
use crate::semigroup::{RepunitParams, RepunitSemigroup};

pub const SCHEMA: &str = "repunit-resolution/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsDoc {
    pub b: i64,
    pub n: i64,
    pub a: i64,
}

impl From<RepunitParams> for ParamsDoc {
    fn from(p: RepunitParams) -> Self {
        Self {
            b: p.b,
            n: p.n,
            a: p.a,
        }
    }
}

impl From<ParamsDoc> for RepunitParams {
    fn from(p: ParamsDoc) -> Self {
        RepunitParams::new(p.b, p.n, p.a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelDoc {
    pub j: usize,
    pub betti: usize,
    pub shifts: Vec<i64>,
    pub entries: Vec<(usize, usize, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionDocument {
    pub schema: String,
    pub params: ParamsDoc,
    pub generators: Vec<i64>,
    pub extended: i64,
    pub c: i64,
    pub levels: Vec<LevelDoc>,
}

impl ResolutionDocument {
    pub fn new(s: &RepunitSemigroup, gc: &GradedComplex) -> Self {
        Self {
            schema: SCHEMA.to_string(),
            params: s.params().into(),
            generators: s.generators().to_vec(),
            extended: s.extended(),
            c: s.c(),
            levels: gc
                .levels()
                .iter()
                .map(|l| LevelDoc {
                    j: l.j,
                    betti: l.shifts.len(),
                    shifts: l.shifts.clone(),
                    entries: l
                        .differential
                        .entries()
                        .map(|(r, c, p)| (r, c, p.to_string()))
                        .collect(),
                })
                .collect(),
        }
    }

    /// Compact JSON followed by a newline.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string(self).expect("document serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("resolution JSON: {e}")))?;
        if doc.schema != SCHEMA {
            return Err(Error::Parse(format!(
                "unsupported schema {:?}, expected {SCHEMA:?}",
                doc.schema
            )));
        }
        Ok(doc)
    }

    /// Rebuilds the complex; bases are regenerated from the level index.
    pub fn to_complex(&self) -> Result<GradedComplex> {
        let nvars = self.generators.len();
        let mut prev = 1;
        let mut levels = Vec::with_capacity(self.levels.len());
        for doc in &self.levels {
            let basis = basis(nvars, doc.j)?;
            if basis.len() != doc.betti || doc.shifts.len() != doc.betti {
                return Err(Error::Parse(format!(
                    "level {} has inconsistent sizes",
                    doc.j
                )));
            }
            let mut differential = PolyMatrix::zeros(prev, doc.betti, nvars);
            for (r, c, text) in &doc.entries {
                if *r >= prev || *c >= doc.betti {
                    return Err(Error::Parse(format!("entry ({r}, {c}) out of bounds")));
                }
                differential.set(*r, *c, SparsePolynomial::parse(text, nvars)?);
            }
            levels.push(Level {
                j: doc.j,
                basis,
                shifts: doc.shifts.clone(),
                differential,
            });
            prev = doc.betti;
        }
        Ok(GradedComplex::from_levels(self.generators.clone(), levels))
    }
}

/// Summary of the semigroup and its Betti data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfoDocument {
    pub params: ParamsDoc,
    pub generators: Vec<i64>,
    pub extended: i64,
    pub c: i64,
    pub betti: Vec<usize>,
    pub pseudo_frobenius: Vec<i64>,
    pub frobenius: i64,
}

impl InfoDocument {
    pub fn new(s: &RepunitSemigroup) -> Result<Self> {
        let n = s.embedding_dimension();
        Ok(Self {
            params: s.params().into(),
            generators: s.generators().to_vec(),
            extended: s.extended(),
            c: s.c(),
            betti: (1..n)
                .map(|j| crate::complex::betti_number(n, j))
                .collect::<Result<_>>()?,
            pseudo_frobenius: s.pf_formula()?,
            frobenius: s.frobenius(),
        })
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string(self).expect("document serializes");
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let list = |v: &[i64]| v.iter().join(", ");
        let p = self.params;
        let mut out = String::new();
        writeln!(out, "parameters: b = {}, n = {}, a = {}", p.b, p.n, p.a).unwrap();
        writeln!(out, "generators: {}", list(&self.generators)).unwrap();
        writeln!(out, "a_(n+1): {}", self.extended).unwrap();
        writeln!(out, "c: {}", self.c).unwrap();
        writeln!(out, "betti: ({})", self.betti.iter().join(", ")).unwrap();
        writeln!(
            out,
            "pseudo-Frobenius: {{{}}}",
            list(&self.pseudo_frobenius)
        )
        .unwrap();
        writeln!(out, "Frobenius number: {}", self.frobenius).unwrap();
        out
    }
}

pub fn resolution_text(s: &RepunitSemigroup, gc: &GradedComplex) -> String {
    let p = s.params();
    let mut out = String::new();
    writeln!(out, "resolution for b = {}, n = {}, a = {}", p.b, p.n, p.a).unwrap();
    writeln!(out, "generators: {}", s.generators().iter().join(", ")).unwrap();
    for level in gc.levels() {
        let d = &level.differential;
        writeln!(
            out,
            "level {}: beta = {}, delta_{} is {}x{}",
            level.j,
            level.shifts.len(),
            level.j,
            d.rows(),
            d.cols()
        )
        .unwrap();
        for (e, shift) in level.basis.iter().zip(&level.shifts) {
            writeln!(out, "  {e}  shift {shift}").unwrap();
        }
        for (r, c, poly) in d.entries() {
            writeln!(out, "  ({r}, {c}): {poly}").unwrap();
        }
    }
    out
}

fn script_header(s: &RepunitSemigroup, gc: &GradedComplex, comment: &str) -> String {
    let p = s.params();
    let mut out = String::new();
    writeln!(
        out,
        "{comment} generalized repunit semigroup b = {}, n = {}, a = {}",
        p.b, p.n, p.a
    )
    .unwrap();
    writeln!(
        out,
        "{comment} generators: {}; a_(n+1) = {}; c = {}",
        s.generators().iter().join(" "),
        s.extended(),
        s.c()
    )
    .unwrap();
    for level in gc.levels() {
        let mut shifts = level.shifts.clone();
        shifts.sort_unstable();
        writeln!(
            out,
            "{comment} expected shifts at level {}: {}",
            level.j,
            shifts.iter().join(" ")
        )
        .unwrap();
    }
    out
}

fn minors(gc: &GradedComplex) -> String {
    gc.level(1)
        .map(|l| {
            l.differential
                .entries()
                .map(|(_, _, p)| p.to_string())
                .join(", ")
        })
        .unwrap_or_default()
}

pub fn macaulay2_script(s: &RepunitSemigroup, gc: &GradedComplex) -> String {
    let vars = (1..=s.embedding_dimension())
        .map(|i| format!("x{i}"))
        .join(", ");
    let mut out = script_header(s, gc, "--");
    writeln!(
        out,
        "R = QQ[{vars}, Degrees => {{{}}}];",
        s.generators().iter().join(", ")
    )
    .unwrap();
    writeln!(out, "I = ideal({});", minors(gc)).unwrap();
    writeln!(out, "C = res I;").unwrap();
    writeln!(out, "betti C").unwrap();
    out
}

pub fn singular_script(s: &RepunitSemigroup, gc: &GradedComplex) -> String {
    let vars = (1..=s.embedding_dimension())
        .map(|i| format!("x{i}"))
        .join(", ");
    let mut out = script_header(s, gc, "//");
    writeln!(
        out,
        "ring R = 0, ({vars}), wp({});",
        s.generators().iter().join(", ")
    )
    .unwrap();
    writeln!(out, "ideal I = {};", minors(gc)).unwrap();
    writeln!(out, "resolution F = mres(I, 0);").unwrap();
    writeln!(out, "print(betti(F), \"betti\");").unwrap();
    out
}
