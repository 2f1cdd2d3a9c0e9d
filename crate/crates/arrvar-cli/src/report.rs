//! Serializable report documents and their text rendering.

use std::fmt::Write as _;

use arrvar::catalog::InstanceReport;
use arrvar::faces::FaceId;
use arrvar::geometry::{geometry_report, isotropy, ChamberFan, FanoStatus, GeometryReport, VarietyModel, WallKind};
use arrvar::lattice::{FgAbGroup, GroupElement};
use arrvar::polyhedral::Cone;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::error::CliError;

/// Version of the report layout.
pub const REPORT_VERSION: u32 = 1;

/// An integer written as a JSON number when it fits in `i64`, else as a
/// decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) => s.serialize_i64(x),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

fn ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().cloned().map(Int).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassOut {
    pub free: Vec<Int>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub torsion: Vec<Int>,
}

impl From<&GroupElement> for ClassOut {
    fn from(g: &GroupElement) -> Self {
        ClassOut { free: ints(&g.free), torsion: ints(&g.torsion) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupOut {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
    pub display: String,
}

impl From<&FgAbGroup> for GroupOut {
    fn from(g: &FgAbGroup) -> Self {
        GroupOut { free_rank: g.free_rank(), torsion: ints(g.torsion()), display: g.to_string() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConeOut {
    pub rays: Vec<Vec<Int>>,
    pub lineality: Vec<Vec<Int>>,
    pub display: String,
}

impl From<&Cone> for ConeOut {
    fn from(c: &Cone) -> Self {
        ConeOut {
            rays: c.rays().iter().map(|r| ints(r)).collect(),
            lineality: c.lineality().iter().map(|r| ints(r)).collect(),
            display: c.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightOut {
    pub variable: String,
    pub degree: ClassOut,
}

#[derive(Clone, Debug, Serialize)]
pub struct PicOut {
    pub index: Option<Int>,
    pub generators: Vec<ClassOut>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConesOut {
    pub eff: ConeOut,
    pub mov: ConeOut,
    pub samp: ConeOut,
}

#[derive(Clone, Debug, Serialize)]
pub struct PieceOut {
    /// Variables vanishing on the piece.
    pub zero_set: Vec<String>,
    pub class: String,
    pub maximal: bool,
    pub quasismooth: bool,
    pub factorial: bool,
    pub qfactorial: bool,
    pub smooth: bool,
    pub heuristic: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SmoothnessOut {
    pub smooth: bool,
    pub quasismooth: bool,
    pub factorial: bool,
    pub qfactorial: bool,
    pub heuristic: bool,
    pub singular_pieces: usize,
    pub pieces: Vec<PieceOut>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FanoOut {
    pub status: String,
    pub anticanonical: ClassOut,
    pub gorenstein_index: Option<Int>,
    pub heuristic: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IsotropyOut {
    pub variable: String,
    pub group: GroupOut,
    /// Order of the group when it is finite.
    pub order: Option<Int>,
}

/// Everything `analyze` reports on a model.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub version: u32,
    pub dim: usize,
    pub complexity: usize,
    pub relations: Vec<String>,
    pub cl_group: GroupOut,
    pub weights: Vec<WeightOut>,
    pub u: ClassOut,
    pub u_ample: bool,
    pub pic: PicOut,
    pub cones: ConesOut,
    pub canonical_class: ClassOut,
    pub smoothness: SmoothnessOut,
    pub fano: FanoOut,
    /// Isotropy along the divisor of each variable whose zero set is relevant.
    pub isotropy: Vec<IsotropyOut>,
    pub warnings: Vec<String>,
    /// Some verdict rests on the finite-field face oracle.
    pub heuristic: bool,
}

fn names(model: &VarietyModel, f: FaceId) -> Vec<String> {
    let layout = model.spec().layout();
    f.zero_set(model.len()).into_iter().map(|q| layout.name(q)).collect()
}

pub fn analysis_report(model: &VarietyModel) -> Result<AnalysisReport, CliError> {
    let g: GeometryReport = geometry_report(model)?;
    let layout = model.spec().layout();
    let relations = model.spec().relations().iter().map(|r| r.display(layout)).collect();
    let weights = g
        .weights
        .iter()
        .enumerate()
        .map(|(q, w)| WeightOut { variable: layout.name(q), degree: w.into() })
        .collect();
    let pieces: Vec<PieceOut> = g
        .smoothness
        .pieces
        .iter()
        .map(|p| PieceOut {
            zero_set: names(model, p.face),
            class: p.class.to_string(),
            maximal: p.maximal,
            quasismooth: p.quasismooth,
            factorial: p.factorial,
            qfactorial: p.qfactorial,
            smooth: p.smooth,
            heuristic: p.heuristic,
        })
        .collect();
    let singular_pieces = g.smoothness.pieces.iter().filter(|p| p.maximal && !p.smooth).count();
    let mut iso = Vec::new();
    for q in 0..model.len() {
        let f = FaceId::from_zero_set(model.len(), &[q]);
        if !model.relevant().faces.iter().any(|v| v.face == f) {
            continue;
        }
        let group = isotropy(model, f)?;
        let order = (group.free_rank() == 0).then(|| Int(group.torsion_order()));
        iso.push(IsotropyOut { variable: layout.name(q), group: (&group).into(), order });
    }
    Ok(AnalysisReport {
        version: REPORT_VERSION,
        dim: g.dim,
        complexity: g.complexity,
        relations,
        cl_group: (&g.cl_group).into(),
        weights,
        u: (&g.u).into(),
        u_ample: g.u_ample,
        pic: PicOut { index: g.pic_index.clone().map(Int), generators: g.pic.generators().iter().map(Into::into).collect() },
        cones: ConesOut { eff: (&g.cones.eff).into(), mov: (&g.cones.mov).into(), samp: (&g.cones.samp).into() },
        canonical_class: (&g.canonical_class).into(),
        smoothness: SmoothnessOut {
            smooth: g.smoothness.smooth,
            quasismooth: g.smoothness.quasismooth,
            factorial: g.smoothness.factorial,
            qfactorial: g.smoothness.qfactorial,
            heuristic: g.smoothness.heuristic,
            singular_pieces,
            pieces,
        },
        fano: FanoOut {
            status: g.fano.status.label().to_string(),
            anticanonical: (&g.fano.anticanonical).into(),
            gorenstein_index: g.fano.gorenstein_index.clone().map(Int),
            heuristic: g.fano.heuristic,
        },
        isotropy: iso,
        warnings: g.warnings.clone(),
        heuristic: g.heuristic,
    })
}

fn class_text(c: &ClassOut) -> String {
    let mut parts: Vec<String> = c.free.iter().map(|x| x.0.to_string()).collect();
    parts.extend(c.torsion.iter().map(|x| format!("{}\u{0304}", x.0)));
    format!("({})", parts.join(", "))
}

fn mark(heuristic: bool) -> &'static str {
    if heuristic {
        " [heuristic]"
    } else {
        ""
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn fano_phrase(status: &str) -> String {
    if status == FanoStatus::None.label() {
        "not Fano".to_string()
    } else {
        status.to_string()
    }
}

/// Human-readable summary; heuristic verdicts carry a `[heuristic]` tag.
pub fn render_analysis(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "dim {}, complexity {}", r.dim, r.complexity);
    let _ = writeln!(s, "Cl(X) = {}", r.cl_group.display);
    for rel in &r.relations {
        let _ = writeln!(s, "relation: {rel}");
    }
    let _ = writeln!(s, "degrees:");
    for w in &r.weights {
        let _ = writeln!(s, "  {:<6} {}", w.variable, class_text(&w.degree));
    }
    let _ = writeln!(s, "u = {}, ample: {}", class_text(&r.u), yes(r.u_ample));
    match &r.pic.index {
        Some(i) => {
            let _ = writeln!(s, "Pic(X) has index {} in Cl(X)", i.0);
        }
        None => {
            let _ = writeln!(s, "Pic(X) has infinite index in Cl(X)");
        }
    }
    let _ = writeln!(s, "Eff(X) = {}", r.cones.eff.display);
    let _ = writeln!(s, "Mov(X) = {}", r.cones.mov.display);
    let _ = writeln!(s, "SAmple(X) = {}", r.cones.samp.display);
    let _ = writeln!(s, "K_X = {}", class_text(&r.canonical_class));
    let sm = &r.smoothness;
    let _ = writeln!(
        s,
        "smooth: {}, quasismooth: {}, factorial: {}, Q-factorial: {}{}",
        yes(sm.smooth),
        yes(sm.quasismooth),
        yes(sm.factorial),
        yes(sm.qfactorial),
        mark(sm.heuristic)
    );
    let index = r.fano.gorenstein_index.as_ref().map_or("undefined".to_string(), |i| i.0.to_string());
    let _ = writeln!(
        s,
        "{}, Gorenstein index {}, singular pieces: {}{}",
        fano_phrase(&r.fano.status),
        index,
        sm.singular_pieces,
        mark(r.fano.heuristic || sm.heuristic)
    );
    let _ = writeln!(s, "-K_X = {}", class_text(&r.fano.anticanonical));
    let _ = writeln!(s, "maximal pieces:");
    for p in sm.pieces.iter().filter(|p| p.maximal) {
        let _ = writeln!(
            s,
            "  V({}) {} {}{}",
            p.zero_set.join(","),
            p.class,
            if p.smooth { "smooth" } else { "singular" },
            mark(p.heuristic)
        );
    }
    if !r.isotropy.is_empty() {
        let _ = writeln!(s, "isotropy along divisors:");
        for i in &r.isotropy {
            let _ = writeln!(s, "  {:<6} {}", i.variable, i.group.display);
        }
    }
    for w in &r.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    if r.heuristic {
        let _ = writeln!(s, "note: verdicts marked [heuristic] rely on the finite-field face oracle");
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceOut {
    pub zero_set: Vec<String>,
    pub nonzero: Vec<String>,
    pub class: String,
    pub maximal: bool,
    pub heuristic: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FacesReport {
    pub version: u32,
    pub faces: Vec<FaceOut>,
    pub warnings: Vec<String>,
    pub heuristic: bool,
}

pub fn faces_report(model: &VarietyModel) -> FacesReport {
    let layout = model.spec().layout();
    let minimal: Vec<FaceId> = model.minimal_relevant().into_iter().map(|v| v.face).collect();
    let faces = model
        .relevant()
        .faces
        .iter()
        .map(|v| FaceOut {
            zero_set: names(model, v.face),
            nonzero: v.face.nonzero(model.len()).into_iter().map(|q| layout.name(q)).collect(),
            class: v.class.to_string(),
            maximal: minimal.contains(&v.face),
            heuristic: v.heuristic,
        })
        .collect();
    FacesReport {
        version: REPORT_VERSION,
        faces,
        warnings: model.relevant().warnings.clone(),
        heuristic: model.is_heuristic(),
    }
}

pub fn render_faces(r: &FacesReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} relevant faces", r.faces.len());
    for f in &r.faces {
        let _ = writeln!(
            s,
            "  zero set {{{}}} {}{}{}",
            f.zero_set.join(","),
            f.class,
            if f.maximal { " maximal" } else { "" },
            mark(f.heuristic)
        );
    }
    for w in &r.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct ChamberOut {
    pub cone: ConeOut,
    pub sample: Vec<Int>,
    pub ample: bool,
    pub relevant_faces: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct WallOut {
    pub ray: Vec<Int>,
    pub kind: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChambersReport {
    pub version: u32,
    pub chambers: Vec<ChamberOut>,
    pub walls: Vec<WallOut>,
    pub heuristic: bool,
}

fn wall_label(k: WallKind) -> &'static str {
    match k {
        WallKind::SmallModification => "small modification",
        WallKind::Divisorial => "divisorial contraction",
        WallKind::Fibration => "fibration",
    }
}

pub fn chambers_report(fan: &ChamberFan) -> ChambersReport {
    ChambersReport {
        version: REPORT_VERSION,
        chambers: fan
            .chambers
            .iter()
            .enumerate()
            .map(|(i, c)| ChamberOut {
                cone: (&c.cone).into(),
                sample: ints(&c.sample),
                ample: fan.ample_index == Some(i),
                relevant_faces: c.relevant.len(),
            })
            .collect(),
        walls: fan.walls.iter().map(|(ray, k)| WallOut { ray: ints(ray), kind: wall_label(*k).to_string() }).collect(),
        heuristic: fan.heuristic,
    }
}

pub fn render_chambers(r: &ChambersReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} chambers{}", r.chambers.len(), mark(r.heuristic));
    for (i, c) in r.chambers.iter().enumerate() {
        let _ = writeln!(s, "  {i}: {}{}", c.cone.display, if c.ample { "  <- ample" } else { "" });
    }
    for w in &r.walls {
        let ray: Vec<String> = w.ray.iter().map(|x| x.0.to_string()).collect();
        let _ = writeln!(s, "wall ({}): {}", ray.join(","), w.kind);
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogSummary {
    pub version: u32,
    pub instances: usize,
    pub failures: usize,
    pub reports: Vec<InstanceReport>,
}

pub fn catalog_summary(reports: Vec<InstanceReport>) -> CatalogSummary {
    CatalogSummary {
        version: REPORT_VERSION,
        instances: reports.len(),
        failures: reports.iter().filter(|r| !r.passed()).count(),
        reports,
    }
}

pub fn render_catalog(summary: &CatalogSummary, fano: bool) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "row  params                              smooth Cl=Z2 Pic=Cl ample dim  verdict");
    for r in &summary.reports {
        let _ = write!(
            s,
            "{:<4} {:<35} {:<6} {:<5} {:<6} {:<5} {:<4} {}",
            r.row,
            r.params.to_string(),
            yes(r.smooth),
            yes(r.cl_is_z2),
            yes(r.pic_is_cl),
            yes(r.u_ample),
            r.dim,
            if r.passed() { "pass" } else { "FAIL" }
        );
        if fano {
            if let Some(f) = &r.fano {
                let index = f.gorenstein_index.as_deref().unwrap_or("undefined");
                let _ = write!(s, "  {}, Gorenstein index {}", fano_phrase(&f.status), index);
            }
        }
        for f in &r.failures {
            let _ = write!(s, "  [{f}]");
        }
        s.push('\n');
    }
    let _ = writeln!(s, "{} instances, {} failures", summary.instances, summary.failures);
    s
}
