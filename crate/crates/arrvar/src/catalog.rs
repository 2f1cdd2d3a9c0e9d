//! Encoded families of smooth projective general arrangement varieties of
//! complexity two and Picard number two, with parameter validation,
//! instantiation, grid verification and duplication of free weights.
//!
//! The rows live in `data/catalog.json`. Templates are written as small
//! JSON expressions: an integer, a parameter name, an affine form such as
//! `{"a3": 2, "1": 1}` for `2a3 + 1`, or one of `{"max": [...]}`,
//! `{"min": [...]}` and `{"sum": [...]}`. Inside `max` and `min` the name of
//! a list parameter stands for all of its entries.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{geometry_report, FanoStatus, VarietyModel};
use crate::lattice::{FgAbGroup, GroupElement, IntMatrix};
use crate::varspec::{a_from_kernel, complete_p_from_q, VarSpec};

const CATALOG_JSON: &str = include_str!("../../../data/catalog.json");

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum Expr {
    Int(i64),
    Name(String),
    Max { max: Vec<Expr> },
    Min { min: Vec<Expr> },
    Sum { sum: Vec<Expr> },
    Affine(BTreeMap<String, i64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub enum CompareOp {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "==")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Condition {
    pub lhs: Expr,
    pub op: CompareOp,
    pub rhs: Expr,
    /// Human-readable form used in error messages.
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MRange {
    pub min: usize,
    #[serde(default)]
    pub max: Option<usize>,
}

/// Degrees of the free variables: the `prefix` columns first, then one
/// `each` column per further variable, with `x` bound to the matching
/// entry of the list parameter when there is one.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FreeTemplate {
    #[serde(default)]
    pub prefix: Vec<Vec<Expr>>,
    pub each: Vec<Expr>,
    #[serde(default)]
    pub list: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum GridParam {
    Range { name: String, lo: Expr, hi: Expr },
    Value { name: String, value: Expr },
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyRow {
    pub id: usize,
    pub params: Vec<String>,
    /// Abbreviations computed from the parameters.
    #[serde(default, rename = "let")]
    pub lets: BTreeMap<String, Expr>,
    #[serde(default)]
    pub defaults: BTreeMap<String, i64>,
    /// Exponents `l_ij` of the relation variables, block by block.
    pub blocks: Vec<Vec<Expr>>,
    /// Coefficient vectors of the relations over the blocks; all ones when
    /// absent.
    #[serde(default)]
    pub kernel: Option<Vec<Vec<Expr>>>,
    /// Degree matrix restricted to the relation variables.
    pub q: Vec<Vec<Expr>>,
    pub m: MRange,
    #[serde(default)]
    pub free: Option<FreeTemplate>,
    #[serde(default)]
    pub conditions: Vec<Condition>,
    pub u: Vec<Expr>,
    pub dim: Expr,
    #[serde(default)]
    pub grid: Vec<GridParam>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Catalog {
    pub version: u32,
    pub rows: Vec<FamilyRow>,
}

impl Catalog {
    pub fn from_json(text: &str) -> Result<Catalog> {
        let catalog: Catalog = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("catalog: {e}")))?;
        for (i, row) in catalog.rows.iter().enumerate() {
            if row.id != i + 1 {
                return Err(Error::Invalid(format!("catalog row {} out of order", row.id)));
            }
        }
        Ok(catalog)
    }

    pub fn row(&self, id: usize) -> Result<&FamilyRow> {
        self.rows.iter().find(|r| r.id == id).ok_or(Error::UnknownRow(id))
    }
}

/// The catalog shipped with the crate.
pub fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| Catalog::from_json(CATALOG_JSON).expect("bundled catalog is valid"))
}

/// Parameter values of one family member.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Params {
    #[serde(default)]
    pub m: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub d: Vec<i64>,
    #[serde(flatten)]
    pub values: BTreeMap<String, i64>,
}

impl Params {
    pub fn new(values: &[(&str, i64)], m: usize, d: Vec<i64>) -> Params {
        Params { m, d, values: values.iter().map(|(k, v)| (k.to_string(), *v)).collect() }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
        parts.push(format!("m={}", self.m));
        if !self.d.is_empty() {
            parts.push(format!("d={:?}", self.d));
        }
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Clone, Debug, Default)]
struct Env {
    scalars: BTreeMap<String, i64>,
    lists: BTreeMap<String, Vec<i64>>,
}

impl Env {
    fn scalar(&self, name: &str) -> Result<i64> {
        self.scalars.get(name).copied().ok_or_else(|| Error::Invalid(format!("unknown parameter {name}")))
    }

    fn eval(&self, e: &Expr) -> Result<i64> {
        match e {
            Expr::Int(v) => Ok(*v),
            Expr::Name(n) => self.scalar(n),
            Expr::Max { max } => self.flatten(max)?.into_iter().max().ok_or_else(|| Error::Invalid("max of nothing".into())),
            Expr::Min { min } => self.flatten(min)?.into_iter().min().ok_or_else(|| Error::Invalid("min of nothing".into())),
            Expr::Sum { sum } => sum.iter().map(|x| self.eval(x)).sum(),
            Expr::Affine(form) => form
                .iter()
                .map(|(k, c)| if k == "1" { Ok(*c) } else { Ok(c * self.scalar(k)?) })
                .sum(),
        }
    }

    fn flatten(&self, items: &[Expr]) -> Result<Vec<i64>> {
        let mut out = Vec::new();
        for item in items {
            match item {
                Expr::Name(n) if self.lists.contains_key(n) => out.extend(&self.lists[n]),
                other => out.push(self.eval(other)?),
            }
        }
        Ok(out)
    }

    fn holds(&self, c: &Condition) -> Result<bool> {
        let (a, b) = (self.eval(&c.lhs)?, self.eval(&c.rhs)?);
        Ok(match c.op {
            CompareOp::Le => a <= b,
            CompareOp::Lt => a < b,
            CompareOp::Eq => a == b,
            CompareOp::Ge => a >= b,
            CompareOp::Gt => a > b,
        })
    }
}

fn row_env(row: &FamilyRow, params: &Params) -> Result<Env> {
    for k in params.values.keys() {
        if !row.params.contains(k) {
            return Err(Error::Invalid(format!("row {} has no parameter {k}", row.id)));
        }
    }
    let mut env = Env::default();
    for name in &row.params {
        let v = params
            .values
            .get(name)
            .or_else(|| row.defaults.get(name))
            .ok_or_else(|| Error::Invalid(format!("row {} needs parameter {name}", row.id)))?;
        env.scalars.insert(name.clone(), *v);
    }
    env.scalars.insert("m".into(), params.m as i64);
    let free = row.free.as_ref();
    let list = free.and_then(|f| f.list.as_ref());
    match list {
        Some(name) => {
            env.lists.insert(name.clone(), params.d.clone());
        }
        None if !params.d.is_empty() => return Err(Error::Invalid(format!("row {} takes no list d", row.id))),
        None => {}
    }
    let lets: Vec<(String, i64)> = row.lets.iter().map(|(k, e)| Ok((k.clone(), env.eval(e)?))).collect::<Result<_>>()?;
    env.scalars.extend(lets);
    Ok(env)
}

fn check_admissible(row: &FamilyRow, params: &Params, env: &Env) -> Result<()> {
    let m = params.m;
    if m < row.m.min {
        return Err(Error::SideCondition(format!("m ≥ {}", row.m.min)));
    }
    if let Some(max) = row.m.max {
        if m > max {
            return Err(Error::SideCondition(if max == row.m.min { format!("m = {max}") } else { format!("m ≤ {max}") }));
        }
    }
    if let Some(free) = &row.free {
        if m < free.prefix.len() {
            return Err(Error::SideCondition(format!("m ≥ {}", free.prefix.len())));
        }
        if free.list.is_some() {
            let need = m - free.prefix.len();
            if params.d.len() != need {
                return Err(Error::Invalid(format!("row {} with m = {m} needs {need} entries in d", row.id)));
            }
            if params.d.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::SideCondition("d nondecreasing".into()));
            }
        }
    } else if m > 0 {
        return Err(Error::SideCondition("m = 0".into()));
    }
    for c in &row.conditions {
        if !env.holds(c)? {
            return Err(Error::SideCondition(c.text.clone()));
        }
    }
    Ok(())
}

/// One member of a family.
#[derive(Clone, Debug)]
pub struct Instance {
    pub row: usize,
    pub params: Params,
    pub q: IntMatrix,
    pub model: VarietyModel,
    pub expected_dim: usize,
}

/// Builds the member of row `id` with the given parameters.
pub fn instantiate(id: usize, params: &Params) -> Result<Instance> {
    let row = catalog().row(id)?;
    let env = row_env(row, params)?;
    check_admissible(row, params, &env)?;
    let l: Vec<Vec<u32>> = row
        .blocks
        .iter()
        .map(|b| {
            b.iter()
                .map(|e| {
                    let v = env.eval(e)?;
                    u32::try_from(v).ok().filter(|&x| x >= 1).ok_or_else(|| Error::SideCondition("positive exponents".into()))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let mut cols: Vec<Vec<i64>> = (0..row.q[0].len())
        .map(|j| row.q.iter().map(|r| env.eval(&r[j])).collect())
        .collect::<Result<_>>()?;
    if let Some(free) = &row.free {
        for col in &free.prefix {
            cols.push(col.iter().map(|e| env.eval(e)).collect::<Result<_>>()?);
        }
        let count = params.m - free.prefix.len();
        for k in 0..count {
            let mut local = env.clone();
            if free.list.is_some() {
                local.scalars.insert("x".into(), params.d[k]);
            }
            cols.push(free.each.iter().map(|e| local.eval(e)).collect::<Result<_>>()?);
        }
    }
    let q_rows: Vec<Vec<i64>> = (0..row.q.len()).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let q = IntMatrix::from_i64(&q_rows);
    let kernel: Vec<Vec<BigRational>> = match &row.kernel {
        Some(rows) => rows
            .iter()
            .map(|r| r.iter().map(|e| Ok(BigRational::from_integer(env.eval(e)?.into()))).collect())
            .collect::<Result<_>>()?,
        None => vec![vec![BigRational::from_integer(1.into()); row.blocks.len()]],
    };
    let a = a_from_kernel(&kernel)?;
    let spec = complete_p_from_q(&q, &l, params.m, a)?;
    let u: Vec<i64> = row.u.iter().map(|e| env.eval(e)).collect::<Result<_>>()?;
    let model = VarietyModel::with_degree_basis(spec.into(), &q, GroupElement::from_i64(&u, &[]))?;
    let expected_dim = usize::try_from(env.eval(&row.dim)?).map_err(|_| Error::Invalid("negative dimension".into()))?;
    Ok(Instance { row: id, params: params.clone(), q, model, expected_dim })
}

/// Which part of the catalog to sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridOptions {
    /// Upper bound for the free parameters and list entries.
    pub max_param: i64,
    /// Upper bound for the number of free variables.
    pub max_m: usize,
    /// Also compute the Fano status of every instance.
    pub fano: bool,
}

impl Default for GridOptions {
    fn default() -> Self {
        GridOptions { max_param: 3, max_m: 3, fano: false }
    }
}

fn nondecreasing_lists(len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in lo..=hi {
        for mut rest in nondecreasing_lists(len - 1, first, hi) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn grid_scalars(grid: &[GridParam], env: &mut Env, acc: &mut Vec<BTreeMap<String, i64>>, names: &[String]) -> Result<()> {
    let Some((head, tail)) = grid.split_first() else {
        acc.push(names.iter().map(|n| (n.clone(), env.scalars[n])).collect());
        return Ok(());
    };
    match head {
        GridParam::Value { name, value } => {
            let v = env.eval(value)?;
            env.scalars.insert(name.clone(), v);
            grid_scalars(tail, env, acc, names)?;
        }
        GridParam::Range { name, lo, hi } => {
            let (lo, hi) = (env.eval(lo)?, env.eval(hi)?);
            for v in lo..=hi {
                env.scalars.insert(name.clone(), v);
                grid_scalars(tail, env, acc, names)?;
            }
        }
    }
    env.scalars.remove(match head {
        GridParam::Value { name, .. } | GridParam::Range { name, .. } => name,
    });
    Ok(())
}

/// Admissible parameter points of row `id` within the grid bounds.
pub fn grid(id: usize, opts: &GridOptions) -> Result<Vec<Params>> {
    let row = catalog().row(id)?;
    let mut env = Env::default();
    env.scalars.insert("K".into(), opts.max_param);
    let gridded: Vec<String> = row
        .grid
        .iter()
        .map(|g| match g {
            GridParam::Value { name, .. } | GridParam::Range { name, .. } => name.clone(),
        })
        .collect();
    let mut scalar_points = Vec::new();
    grid_scalars(&row.grid, &mut env, &mut scalar_points, &gridded)?;
    let m_max = row.m.max.unwrap_or(opts.max_m.max(row.m.min));
    let mut out = Vec::new();
    for m in row.m.min..=m_max {
        let lists = match &row.free {
            Some(FreeTemplate { prefix, list: Some(_), .. }) if m >= prefix.len() => {
                nondecreasing_lists(m - prefix.len(), 0, opts.max_param)
            }
            _ => vec![vec![]],
        };
        for values in &scalar_points {
            for d in &lists {
                let params = Params { m, d: d.clone(), values: values.clone() };
                let env = row_env(row, &params)?;
                if check_admissible(row, &params, &env).is_ok() {
                    out.push(params);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanoSummary {
    pub status: String,
    /// Integers are written in decimal to keep arbitrary precision.
    pub anticanonical: Vec<String>,
    pub gorenstein_index: Option<String>,
}

/// Verification verdicts for one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceReport {
    pub row: usize,
    pub params: Params,
    pub smooth: bool,
    pub cl_is_z2: bool,
    pub pic_is_cl: bool,
    pub u_ample: bool,
    pub dim: usize,
    pub expected_dim: usize,
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fano: Option<FanoSummary>,
}

impl InstanceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fano_status(&self) -> Option<&str> {
        self.fano.as_ref().map(|f| f.status.as_str())
    }
}

fn zero_names(model: &VarietyModel, face: crate::faces::FaceId) -> String {
    let layout = model.spec().layout();
    let names: Vec<String> = face.zero_set(model.len()).into_iter().map(|q| layout.name(q)).collect();
    format!("{{{}}}", names.join(", "))
}

/// Checks smoothness, `Cl = Pic = Z²`, ampleness of `u` and the dimension.
pub fn verify_instance(inst: &Instance, fano: bool) -> InstanceReport {
    let mut report = InstanceReport {
        row: inst.row,
        params: inst.params.clone(),
        smooth: false,
        cl_is_z2: false,
        pic_is_cl: false,
        u_ample: false,
        dim: 0,
        expected_dim: inst.expected_dim,
        failures: Vec::new(),
        fano: None,
    };
    let geo = match geometry_report(&inst.model) {
        Ok(g) => g,
        Err(e) => {
            report.failures.push(format!("analysis failed: {e}"));
            return report;
        }
    };
    report.smooth = geo.smoothness.smooth;
    report.cl_is_z2 = geo.cl_group.free_rank() == 2 && geo.cl_group.torsion().is_empty();
    report.pic_is_cl = geo.pic_index == Some(BigInt::from(1));
    report.u_ample = geo.u_ample;
    report.dim = geo.dim;
    for piece in geo.smoothness.singular_pieces() {
        let why = if piece.quasismooth { "not factorial" } else { "not quasismooth" };
        report.failures.push(format!("piece with zero set {} {why}", zero_names(&inst.model, piece.face)));
    }
    if !report.cl_is_z2 {
        report.failures.push("class group is not Z^2".into());
    }
    if !report.pic_is_cl {
        report.failures.push("Pic is a proper subgroup of Cl".into());
    }
    if !report.u_ample {
        report.failures.push("u is not ample".into());
    }
    if report.dim != report.expected_dim {
        report.failures.push(format!("dimension {} differs from {}", report.dim, report.expected_dim));
    }
    if fano {
        report.fano = Some(FanoSummary {
            status: geo.fano.status.label().to_string(),
            anticanonical: geo.fano.anticanonical.free.iter().map(|x| x.to_string()).collect(),
            gorenstein_index: geo.fano.gorenstein_index.as_ref().map(|x| x.to_string()),
        });
    }
    report
}

/// Verifies every admissible grid point of row `id`.
pub fn verify_row(id: usize, opts: &GridOptions) -> Result<Vec<InstanceReport>> {
    let points = grid(id, opts)?;
    Ok(points
        .par_iter()
        .map(|p| match instantiate(id, p) {
            Ok(inst) => verify_instance(&inst, opts.fano),
            Err(e) => InstanceReport {
                row: id,
                params: p.clone(),
                smooth: false,
                cl_is_z2: false,
                pic_is_cl: false,
                u_ample: false,
                dim: 0,
                expected_dim: 0,
                failures: vec![format!("instantiation failed: {e}")],
                fano: None,
            },
        })
        .collect())
}

/// Verifies the listed rows, all fourteen when `rows` is empty.
pub fn verify_catalog(rows: &[usize], opts: &GridOptions) -> Result<Vec<InstanceReport>> {
    let ids: Vec<usize> = if rows.is_empty() { catalog().rows.iter().map(|r| r.id).collect() } else { rows.to_vec() };
    let mut out = Vec::new();
    for id in ids {
        out.extend(verify_row(id, opts)?);
    }
    Ok(out)
}

/// Grid instances whose anticanonical class is ample or truly almost ample.
pub fn fano_sweep(rows: &[usize], opts: &GridOptions) -> Result<Vec<InstanceReport>> {
    let opts = GridOptions { fano: true, ..opts.clone() };
    let wanted = [FanoStatus::Fano.label(), FanoStatus::TrulyAlmostFano.label()];
    Ok(verify_catalog(rows, &opts)?
        .into_iter()
        .filter(|r| r.fano_status().is_some_and(|s| wanted.contains(&s)))
        .collect())
}

fn extend_projection(m: &IntMatrix, k: usize) -> Result<IntMatrix> {
    m.hstack(&m.select_cols(&[k]))
}

/// Adds a free variable `S'` with the degree of the free variable `S_{k+1}`.
pub fn duplicate_free_weight(model: &VarietyModel, k: usize) -> Result<VarietyModel> {
    let spec: VarSpec = match model.spec() {
        VarSpec::Arrangement(a) => a.duplicate_free(k)?.into(),
        VarSpec::General(g) => g.duplicate_free(k)?.into(),
    };
    let q = model.spec().layout().free_index(k);
    let g = model.group();
    let group = FgAbGroup::presented(
        spec.p(),
        extend_projection(g.free_projection(), q)?,
        g.torsion().to_vec(),
        extend_projection(g.torsion_projection(), q)?,
    )?;
    VarietyModel::with_group(spec, group, model.u().clone())
}
