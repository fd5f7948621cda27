//! The JSON file formats shared by the CLI, the test fixtures, and the
//! Python bindings. One self-describing text format per object kind;
//! rationals are always strings `"p/q"` (or `"p"` when the denominator
//! is one), matrices are row-major arrays of such strings.
//!
//! Sparse tensor entries and structure constants use 1-based indices;
//! omitted entries are zero.

use crate::calgebra::{CAlgebraInstance, Tensor3};
use crate::courant::{Bivector, DiracCandidate, Poly, Poly2Form};
use crate::liealg::BilinearOp;
use crate::linalg::{span, Rat, RatMat, RatVec};
use crate::omni::{OmniElement, OmniSubspace};
use serde::{Deserialize, Serialize};
use std::str::FromStr;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid rational {value:?} in {context}")]
    BadRational { value: String, context: String },
    #[error("index out of range in {context}: ({indices:?}) with bound {bound}")]
    BadIndex { context: String, indices: Vec<i64>, bound: usize },
    #[error("{0}")]
    Shape(String),
}

pub fn parse_rat(s: &str, context: &str) -> Result<Rat, FormatError> {
    Rat::from_str(s.trim()).map_err(|_| FormatError::BadRational {
        value: s.to_string(),
        context: context.to_string(),
    })
}

pub fn rat_string(r: &Rat) -> String {
    r.to_string()
}

pub fn vec_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat_string).collect()
}

pub fn mat_strings(m: &RatMat) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| vec_strings(m.row(i))).collect()
}

pub fn parse_vec(v: &[String], context: &str) -> Result<RatVec, FormatError> {
    v.iter().map(|s| parse_rat(s, context)).collect()
}

pub fn parse_mat(rows: &[Vec<String>], context: &str) -> Result<RatMat, FormatError> {
    let parsed: Result<Vec<RatVec>, _> = rows.iter().map(|r| parse_vec(r, context)).collect();
    let parsed = parsed?;
    let width = parsed.first().map_or(0, Vec::len);
    if parsed.iter().any(|r| r.len() != width) {
        return Err(FormatError::Shape(format!("{context}: ragged matrix rows")));
    }
    Ok(RatMat::from_rows(parsed))
}

/// `{"a": [[...]], "v": [...]}` with `"p/q"` entries.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OmniElementJson {
    pub a: Vec<Vec<String>>,
    pub v: Vec<String>,
}

impl OmniElementJson {
    pub fn from_element(e: &OmniElement) -> Self {
        OmniElementJson { a: mat_strings(e.matrix()), v: vec_strings(e.vector()) }
    }

    pub fn to_element(&self) -> Result<OmniElement, FormatError> {
        let a = parse_mat(&self.a, "omni element matrix")?;
        let v = parse_vec(&self.v, "omni element vector")?;
        if !a.is_square() || a.rows() != v.len() {
            return Err(FormatError::Shape(format!(
                "omni element must pair an n x n matrix with an n-vector, got {}x{} and {}",
                a.rows(),
                a.cols(),
                v.len()
            )));
        }
        Ok(OmniElement::new(a, v))
    }
}

/// `{"n": n, "basis": [omni elements]}`; the stored basis list may be any
/// spanning set, the parsed subspace is canonicalized.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OmniSubspaceJson {
    pub n: usize,
    pub basis: Vec<OmniElementJson>,
}

impl OmniSubspaceJson {
    pub fn from_subspace(f: &OmniSubspace) -> Self {
        OmniSubspaceJson {
            n: f.n(),
            basis: f.basis_elements().iter().map(OmniElementJson::from_element).collect(),
        }
    }

    pub fn to_subspace(&self) -> Result<OmniSubspace, FormatError> {
        if self.n == 0 {
            return Err(FormatError::Shape("dimension tag n must be positive".to_string()));
        }
        let elements: Result<Vec<OmniElement>, _> =
            self.basis.iter().map(OmniElementJson::to_element).collect();
        let elements = elements?;
        for e in &elements {
            if e.dim() != self.n {
                return Err(FormatError::Shape(format!(
                    "basis element has dimension {}, expected {}",
                    e.dim(),
                    self.n
                )));
            }
        }
        Ok(OmniSubspace::from_elements(self.n, &elements))
    }
}

/// One sparse entry `B(e_i, e_j) += val * e_k`, 1-based.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StructureEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub val: String,
}

/// `{"n": n, "entries": [{i, j, k, val}]}`, omitted entries zero.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StructureConstantsJson {
    pub n: usize,
    pub entries: Vec<StructureEntry>,
}

impl StructureConstantsJson {
    pub fn from_op(b: &BilinearOp) -> Self {
        let n = b.n();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = b.at(i, j, k);
                    if !num_traits::Zero::is_zero(v) {
                        entries.push(StructureEntry {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                            val: rat_string(v),
                        });
                    }
                }
            }
        }
        StructureConstantsJson { n, entries }
    }

    pub fn to_op(&self) -> Result<BilinearOp, FormatError> {
        if self.n == 0 {
            return Err(FormatError::Shape("dimension n must be positive".to_string()));
        }
        let mut b = BilinearOp::zero(self.n);
        for e in &self.entries {
            check_indices("structure constants", &[e.i, e.j, e.k], self.n)?;
            let val = parse_rat(&e.val, "structure constants")?;
            b.set(e.i - 1, e.j - 1, e.k - 1, val);
        }
        Ok(b)
    }
}

fn check_indices(context: &str, indices: &[usize], bound: usize) -> Result<(), FormatError> {
    if indices.iter().any(|&i| i == 0 || i > bound) {
        return Err(FormatError::BadIndex {
            context: context.to_string(),
            indices: indices.iter().map(|&i| i as i64).collect(),
            bound,
        });
    }
    Ok(())
}

/// Sparse tensor entry, 1-based.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TensorEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub val: String,
}

/// C-algebra instance file:
/// `{dimA, dimE, mulA, act, pairing, bracket, rho}` with sparse 1-based
/// triples for the tensors and a list of `dimA x dimA` matrices for rho.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceJson {
    #[serde(rename = "dimA")]
    pub dim_a: usize,
    #[serde(rename = "dimE")]
    pub dim_e: usize,
    #[serde(rename = "mulA", default)]
    pub mul_a: Vec<TensorEntry>,
    #[serde(default)]
    pub act: Vec<TensorEntry>,
    #[serde(default)]
    pub pairing: Vec<TensorEntry>,
    #[serde(default)]
    pub bracket: Vec<TensorEntry>,
    pub rho: Vec<Vec<Vec<String>>>,
}

impl InstanceJson {
    pub fn to_instance(&self) -> Result<CAlgebraInstance, FormatError> {
        if self.dim_a == 0 || self.dim_e == 0 {
            return Err(FormatError::Shape("dimA and dimE must be positive".to_string()));
        }
        let tensor = |entries: &[TensorEntry],
                      name: &str,
                      d0: usize,
                      d1: usize,
                      d2: usize|
         -> Result<Tensor3, FormatError> {
            let mut t = Tensor3::zeros(d0, d1, d2);
            for e in entries {
                if e.i == 0 || e.i > d0 || e.j == 0 || e.j > d1 || e.k == 0 || e.k > d2 {
                    return Err(FormatError::BadIndex {
                        context: name.to_string(),
                        indices: vec![e.i as i64, e.j as i64, e.k as i64],
                        bound: d0.max(d1).max(d2),
                    });
                }
                t.set(e.i - 1, e.j - 1, e.k - 1, parse_rat(&e.val, name)?);
            }
            Ok(t)
        };
        let (da, de) = (self.dim_a, self.dim_e);
        if self.rho.len() != de {
            return Err(FormatError::Shape(format!(
                "rho must list one matrix per E-basis element ({} expected, {} given)",
                de,
                self.rho.len()
            )));
        }
        let rho: Result<Vec<RatMat>, FormatError> = self
            .rho
            .iter()
            .map(|m| {
                let m = parse_mat(m, "rho")?;
                if m.rows() != da || m.cols() != da {
                    return Err(FormatError::Shape(format!(
                        "rho matrices must be {da} x {da}"
                    )));
                }
                Ok(m)
            })
            .collect();
        Ok(CAlgebraInstance {
            dim_a: da,
            dim_e: de,
            mul_a: tensor(&self.mul_a, "mulA", da, da, da)?,
            action: tensor(&self.act, "act", da, de, de)?,
            pairing: tensor(&self.pairing, "pairing", de, de, da)?,
            bracket: tensor(&self.bracket, "bracket", de, de, de)?,
            rho: rho?,
        })
    }

    pub fn from_instance(c: &CAlgebraInstance) -> Self {
        let entries = |t: &Tensor3| {
            let (d0, d1, d2) = t.dims();
            let mut out = Vec::new();
            for i in 0..d0 {
                for j in 0..d1 {
                    for k in 0..d2 {
                        let v = t.at(i, j, k);
                        if !num_traits::Zero::is_zero(v) {
                            out.push(TensorEntry { i: i + 1, j: j + 1, k: k + 1, val: rat_string(v) });
                        }
                    }
                }
            }
            out
        };
        InstanceJson {
            dim_a: c.dim_a,
            dim_e: c.dim_e,
            mul_a: entries(&c.mul_a),
            act: entries(&c.action),
            pairing: entries(&c.pairing),
            bracket: entries(&c.bracket),
            rho: c.rho.iter().map(mat_strings).collect(),
        }
    }
}

/// One polynomial term `coeff * x^exps`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exps: Vec<u32>,
}

pub fn poly_to_json(p: &Poly) -> Vec<TermJson> {
    p.terms()
        .map(|(e, c)| TermJson { coeff: rat_string(c), exps: e.to_vec() })
        .collect()
}

pub fn poly_from_json(terms: &[TermJson], nvars: usize) -> Result<Poly, FormatError> {
    let mut p = Poly::zero(nvars);
    for t in terms {
        if t.exps.len() != nvars {
            return Err(FormatError::Shape(format!(
                "polynomial term has {} exponents, expected {}",
                t.exps.len(),
                nvars
            )));
        }
        p.add_term(&t.exps, parse_rat(&t.coeff, "polynomial coefficient")?);
    }
    Ok(p)
}

/// Upper-triangle entry of a bivector or 2-form, 1-based with `i < j`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UpperEntryJson {
    pub i: usize,
    pub j: usize,
    pub poly: Vec<TermJson>,
}

/// Dirac candidate file:
/// `{"kind": "bivector" | "two-form" | "foliation", "nvars": n, ...}`
/// with `entries` (upper-triangle polynomials) for the graph kinds and
/// `basis` (constant vectors spanning `B`) for foliations.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiracCandidateJson {
    pub kind: String,
    pub nvars: usize,
    #[serde(default)]
    pub entries: Vec<UpperEntryJson>,
    #[serde(default)]
    pub basis: Vec<Vec<String>>,
}

impl DiracCandidateJson {
    pub fn to_candidate(&self) -> Result<DiracCandidate, FormatError> {
        let n = self.nvars;
        if n == 0 {
            return Err(FormatError::Shape("nvars must be positive".to_string()));
        }
        let upper = |entries: &[UpperEntryJson]| -> Result<Vec<(usize, usize, Poly)>, FormatError> {
            entries
                .iter()
                .map(|e| {
                    check_indices("upper-triangle entry", &[e.i, e.j], n)?;
                    if e.i >= e.j {
                        return Err(FormatError::Shape(format!(
                            "upper-triangle entries need i < j, got ({}, {})",
                            e.i, e.j
                        )));
                    }
                    Ok((e.i - 1, e.j - 1, poly_from_json(&e.poly, n)?))
                })
                .collect()
        };
        match self.kind.as_str() {
            "bivector" => Ok(DiracCandidate::Bivector(Bivector::from_upper(n, &upper(&self.entries)?))),
            "two-form" | "two_form" | "2-form" => {
                Ok(DiracCandidate::TwoForm(Poly2Form::from_upper(n, &upper(&self.entries)?)))
            }
            "foliation" => {
                let vectors: Result<Vec<RatVec>, _> =
                    self.basis.iter().map(|v| parse_vec(v, "foliation basis")).collect();
                let vectors = vectors?;
                for v in &vectors {
                    if v.len() != n {
                        return Err(FormatError::Shape(format!(
                            "foliation basis vector length {} differs from nvars {}",
                            v.len(),
                            n
                        )));
                    }
                }
                Ok(DiracCandidate::Foliation(span(&vectors, n)))
            }
            other => Err(FormatError::Shape(format!(
                "unknown candidate kind {other:?} (expected bivector, two-form, or foliation)"
            ))),
        }
    }
}
