//! JSON input documents describing a variety: explicit arrangement data,
//! general explicit data, or a member of the bundled catalog.

use std::path::Path;
use std::str::FromStr;

use arrvar::catalog::{instantiate, Params};
use arrvar::faces::DEFAULT_ORACLE_BUDGET;
use arrvar::geometry::VarietyModel;
use arrvar::lattice::{FgAbGroup, GroupElement, IntMatrix, RatMatrix};
use arrvar::varspec::{ArrangementSpec, GeneralSpec, Relation, Term, VarLayout, VarSpec};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// A class in `K`, in the coordinates of the chosen presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassDoc {
    pub free: Vec<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub torsion: Vec<i64>,
}

impl ClassDoc {
    pub fn element(&self) -> GroupElement {
        GroupElement::from_i64(&self.free, &self.torsion)
    }
}

/// A presentation `K ≅ Z^k ⊕ ⊕ Z/t_i` given by the images of the
/// coordinate vectors of `Z^{n+m}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisDoc {
    pub free: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub torsion_orders: Vec<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub torsion: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primes: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementDoc {
    pub c: usize,
    pub r: usize,
    pub n: Vec<usize>,
    pub m: usize,
    pub l: Vec<Vec<u32>>,
    /// Rational entries written as `"p/q"` or `"p"`.
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    pub d: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<ClassDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_basis: Option<BasisDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub coeff: String,
    pub exponents: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDoc {
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneralDoc {
    pub n: Vec<usize>,
    pub m: usize,
    pub t: usize,
    #[serde(rename = "P")]
    pub p: Vec<Vec<i64>>,
    pub relations: Vec<RelationDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<ClassDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_basis: Option<BasisDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogDoc {
    pub family: usize,
    #[serde(default)]
    pub params: Params,
    /// Replaces the family's ample class template.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<ClassDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SpecDocument {
    Arrangement(ArrangementDoc),
    General(GeneralDoc),
    Catalog(CatalogDoc),
}

const KINDS: [&str; 3] = ["arrangement", "general", "catalog"];

fn variant<T: serde::de::DeserializeOwned>(kind: &str, value: serde_json::Value) -> Result<T, CliError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." {
            CliError::Schema(format!("{kind} document: {inner}"))
        } else {
            CliError::Schema(format!("{kind} document at `{path}`: {inner}"))
        }
    })
}

/// Parses a document. Syntax errors carry line and column; schema errors
/// carry the path of the offending field.
pub fn parse_document(text: &str) -> Result<SpecDocument, CliError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))?;
    let serde_json::Value::Object(mut map) = value else {
        return Err(CliError::Schema("top level must be an object".into()));
    };
    let kind = match map.remove("kind") {
        Some(serde_json::Value::String(k)) => k,
        Some(_) => return Err(CliError::Schema("`kind` must be a string".into())),
        None => return Err(CliError::Schema(format!("missing field `kind`, expected one of {KINDS:?}"))),
    };
    let rest = serde_json::Value::Object(map);
    match kind.as_str() {
        "arrangement" => variant(&kind, rest).map(SpecDocument::Arrangement),
        "general" => variant(&kind, rest).map(SpecDocument::General),
        "catalog" => variant(&kind, rest).map(SpecDocument::Catalog),
        other => Err(CliError::Schema(format!("unknown kind `{other}`, expected one of {KINDS:?}"))),
    }
}

pub fn load_document(path: &Path) -> Result<SpecDocument, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_document(&text)
}

fn int_matrix(rows: &[Vec<i64>], cols: usize, what: &str) -> Result<IntMatrix, CliError> {
    if rows.iter().any(|r| r.len() != cols) {
        return Err(CliError::Schema(format!("{what}: every row needs {cols} entries")));
    }
    Ok(IntMatrix::from_i64(rows))
}

fn rational(s: &str, what: &str) -> Result<BigRational, CliError> {
    BigRational::from_str(s.trim()).map_err(|_| CliError::Schema(format!("{what}: cannot read {s:?} as a rational number")))
}

fn group_for(p: &IntMatrix, basis: Option<&BasisDoc>) -> Result<FgAbGroup, CliError> {
    let Some(b) = basis else {
        return Ok(FgAbGroup::cokernel(p));
    };
    let cols = p.cols();
    let free = int_matrix(&b.free, cols, "degree_basis.free")?;
    let torsion = if b.torsion.is_empty() { IntMatrix::zeros(0, cols) } else { int_matrix(&b.torsion, cols, "degree_basis.torsion")? };
    let orders: Vec<BigInt> = b.torsion_orders.iter().map(|&x| BigInt::from(x)).collect();
    Ok(FgAbGroup::presented(p, free, orders, torsion)?)
}

fn oracle_settings(doc: Option<&OracleDoc>) -> (Vec<u64>, u64) {
    let primes = doc.and_then(|o| o.primes.clone()).unwrap_or_else(arrvar::faces::oracle_primes);
    let budget = doc.and_then(|o| o.budget).unwrap_or(DEFAULT_ORACLE_BUDGET);
    (primes, budget)
}

fn require_u(u: &Option<ClassDoc>) -> Result<GroupElement, CliError> {
    u.as_ref().map(ClassDoc::element).ok_or_else(|| CliError::Schema("u: an ample class is required".into()))
}

impl ArrangementDoc {
    pub fn spec(&self) -> Result<ArrangementSpec, CliError> {
        if self.l.len() != self.r + 1 {
            return Err(CliError::Schema(format!("l: expected r + 1 = {} blocks", self.r + 1)));
        }
        let n: Vec<usize> = self.l.iter().map(Vec::len).collect();
        if n != self.n {
            return Err(CliError::Schema(format!("n: block sizes of l are {n:?}")));
        }
        let a_rows: Vec<Vec<BigRational>> = self
            .a
            .iter()
            .map(|row| row.iter().map(|s| rational(s, "A")).collect())
            .collect::<Result<_, _>>()?;
        if a_rows.iter().any(|r| r.len() != self.r + 1) {
            return Err(CliError::Schema(format!("A: every row needs r + 1 = {} entries", self.r + 1)));
        }
        let a = RatMatrix::from_rows(self.r + 1, a_rows)?;
        let len = n.iter().sum::<usize>() + self.m;
        let d = int_matrix(&self.d, len, "d")?;
        Ok(ArrangementSpec::new(self.c, self.l.clone(), self.m, a, d)?)
    }
}

impl GeneralDoc {
    pub fn spec(&self) -> Result<GeneralSpec, CliError> {
        let layout = VarLayout::new(self.n.clone(), self.m);
        let p = int_matrix(&self.p, layout.len(), "P")?;
        let relations = self
            .relations
            .iter()
            .map(|r| {
                let terms = r
                    .terms
                    .iter()
                    .map(|t| Ok(Term { coeff: rational(&t.coeff, "relations.coeff")?, exponents: t.exponents.clone() }))
                    .collect::<Result<_, CliError>>()?;
                Ok(Relation::new(terms))
            })
            .collect::<Result<_, CliError>>()?;
        Ok(GeneralSpec::new(layout, self.t, p, relations)?)
    }
}

impl SpecDocument {
    /// Builds the model described by the document.
    pub fn model(&self) -> Result<VarietyModel, CliError> {
        match self {
            SpecDocument::Arrangement(doc) => {
                let spec: VarSpec = doc.spec()?.into();
                let group = group_for(spec.p(), doc.degree_basis.as_ref())?;
                let (primes, budget) = oracle_settings(doc.oracle.as_ref());
                Ok(VarietyModel::with_oracle(spec, group, require_u(&doc.u)?, primes, budget)?)
            }
            SpecDocument::General(doc) => {
                let spec: VarSpec = doc.spec()?.into();
                let group = group_for(spec.p(), doc.degree_basis.as_ref())?;
                let (primes, budget) = oracle_settings(doc.oracle.as_ref());
                Ok(VarietyModel::with_oracle(spec, group, require_u(&doc.u)?, primes, budget)?)
            }
            SpecDocument::Catalog(doc) => {
                let inst = instantiate(doc.family, &doc.params)?;
                match &doc.u {
                    Some(u) => Ok(inst.model.at(u.element())?),
                    None => Ok(inst.model),
                }
            }
        }
    }
}
