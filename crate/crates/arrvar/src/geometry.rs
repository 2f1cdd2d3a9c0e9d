//! Divisor class geometry of a variety model: cones of divisor classes,
//! Picard group, canonical class, smoothness, Fano status, isotropy groups,
//! Mori chambers and the general orbit closure.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::faces::{
    big_piece_quasismooth, classify_face_with, finite_field_face_oracle, jacobian_rank_mod_p, maximal_pieces,
    oracle_primes, relevant_faces_with, FaceClass, FaceId, FaceVerdict, OracleVerdict, RelevantFaces,
    DEFAULT_ORACLE_BUDGET,
};
use crate::lattice::{
    cokernel, divisibility_index, hermite_basis, left_kernel_basis, primitive, saturation, FgAbGroup, GroupElement,
    IntMatrix, RatMatrix, Subgroup,
};
use crate::polyhedral::{contains_generated, rel_interior_of_generated, Cone, Fan};
use crate::varspec::{degree_data_in, relation_degrees, VarSpec};

/// A spec together with a class `u` in the interior of the effective cone.
#[derive(Clone, Debug)]
pub struct VarietyModel {
    spec: VarSpec,
    group: FgAbGroup,
    weights: Vec<GroupElement>,
    mu: Option<GroupElement>,
    u: GroupElement,
    relevant: RelevantFaces,
    primes: Vec<u64>,
    budget: u64,
}

impl VarietyModel {
    /// Model in the canonical presentation of `K`.
    pub fn new(spec: VarSpec, u: GroupElement) -> Result<VarietyModel> {
        let group = FgAbGroup::cokernel(spec.p());
        VarietyModel::with_group(spec, group, u)
    }

    /// Model whose free coordinates on `K` are given by the rows of `basis`.
    pub fn with_degree_basis(spec: VarSpec, basis: &IntMatrix, u: GroupElement) -> Result<VarietyModel> {
        let group = FgAbGroup::cokernel(spec.p()).with_free_basis(basis)?;
        VarietyModel::with_group(spec, group, u)
    }

    pub fn with_group(spec: VarSpec, group: FgAbGroup, u: GroupElement) -> Result<VarietyModel> {
        VarietyModel::with_oracle(spec, group, u, oracle_primes(), DEFAULT_ORACLE_BUDGET)
    }

    pub fn with_oracle(
        spec: VarSpec,
        group: FgAbGroup,
        u: GroupElement,
        primes: Vec<u64>,
        budget: u64,
    ) -> Result<VarietyModel> {
        group.check(&u)?;
        let u = group.reduce(u);
        let dd = degree_data_in(&spec, group)?;
        let relevant = relevant_faces_with(&spec, &dd.weights, &u, &primes, budget)?;
        if relevant.faces.is_empty() {
            return Err(Error::NotRelevant("no relevant face contains the class in its interior".into()));
        }
        Ok(VarietyModel { spec, group: dd.group, weights: dd.weights, mu: dd.mu, u, relevant, primes, budget })
    }

    /// The same spec at another class.
    pub fn at(&self, u: GroupElement) -> Result<VarietyModel> {
        VarietyModel::with_oracle(self.spec.clone(), self.group.clone(), u, self.primes.clone(), self.budget)
    }

    pub fn spec(&self) -> &VarSpec {
        &self.spec
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn weights(&self) -> &[GroupElement] {
        &self.weights
    }

    pub fn mu(&self) -> Option<&GroupElement> {
        self.mu.as_ref()
    }

    pub fn u(&self) -> &GroupElement {
        &self.u
    }

    pub fn relevant(&self) -> &RelevantFaces {
        &self.relevant
    }

    pub fn is_heuristic(&self) -> bool {
        self.relevant.heuristic
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    fn free_weights(&self) -> Vec<Vec<BigInt>> {
        self.weights.iter().map(|w| w.free.clone()).collect()
    }

    fn face_weights(&self, f: FaceId) -> Vec<Vec<BigInt>> {
        f.nonzero(self.len()).into_iter().map(|q| self.weights[q].free.clone()).collect()
    }

    /// `Q(γ₀)` as a cone in the free part of `K`.
    pub fn image_cone(&self, f: FaceId) -> Result<Cone> {
        Cone::new(self.group.free_rank(), self.face_weights(f))
    }

    /// Minimal relevant faces; they index the maximal X-cones.
    pub fn minimal_relevant(&self) -> Vec<FaceVerdict> {
        let faces = &self.relevant.faces;
        faces.iter().filter(|f| !faces.iter().any(|g| g.face != f.face && g.face.is_subface_of(&f.face))).cloned().collect()
    }

    /// All X̄-faces with a heuristic flag when the oracle was consulted.
    pub fn xbar_faces(&self) -> Result<(Vec<FaceVerdict>, bool)> {
        let mut out = Vec::new();
        let mut heuristic = false;
        for s in crate::polyhedral::subsets_by_popcount(self.len()) {
            let v = classify_face_with(&self.spec, FaceId(s), &self.primes, self.budget)?;
            heuristic |= v.heuristic;
            if v.class.is_xbar_face() {
                out.push(v);
            }
        }
        Ok((out, heuristic))
    }
}

/// Effective, movable and semiample cones in the free part of `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCones {
    pub eff: Cone,
    pub mov: Cone,
    pub samp: Cone,
}

pub fn class_cones(model: &VarietyModel) -> Result<ClassCones> {
    let k = model.group.free_rank();
    let all = model.free_weights();
    let eff = Cone::new(k, all.clone())?;
    let mut mov = eff.clone();
    for q in 0..all.len() {
        let rest: Vec<Vec<BigInt>> = all.iter().enumerate().filter(|(p, _)| *p != q).map(|(_, w)| w.clone()).collect();
        mov = mov.intersect(&Cone::new(k, rest)?)?;
    }
    let mut samp = eff.clone();
    for f in model.minimal_relevant() {
        samp = samp.intersect(&model.image_cone(f.face)?)?;
    }
    Ok(ClassCones { eff, mov, samp })
}

/// Whether `v` lies in `Q(γ₀)°` for every relevant face `γ₀`.
pub fn ample_contains(model: &VarietyModel, v: &GroupElement) -> Result<bool> {
    let k = model.group.free_rank();
    for f in &model.relevant.faces {
        if !rel_interior_of_generated(k, &model.face_weights(f.face), &v.free)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Pic(X) = ⋂ Q(lin(γ₀) ∩ Z^{n+m})` over the relevant faces.
pub fn picard_group(model: &VarietyModel) -> Result<Subgroup> {
    let mut pic = Subgroup::whole(&model.group);
    for f in model.minimal_relevant() {
        let gens: Vec<GroupElement> = f.face.nonzero(model.len()).into_iter().map(|q| model.weights[q].clone()).collect();
        pic = pic.intersect(&Subgroup::generated(&model.group, &gens)?)?;
    }
    Ok(pic)
}

/// `-Σ deg T_ij - Σ deg S_k + Σ deg g_t`.
pub fn canonical_class_ci(model: &VarietyModel) -> Result<GroupElement> {
    let g = &model.group;
    let rel_degs = relation_degrees(g, &model.spec.relations())?;
    Ok(g.add(&g.neg(&g.sum(&model.weights)), &g.sum(&rel_degs)))
}

/// `-Σ w_ij - Σ w_k + (r-c) Σ_j l_0j w_0j` for arrangement specs.
pub fn canonical_class_arrangement(model: &VarietyModel) -> Option<GroupElement> {
    let spec = model.spec.as_arrangement()?;
    let g = &model.group;
    let layout = spec.layout();
    let block0: Vec<GroupElement> =
        layout.block(0).map(|q| g.scale(&BigInt::from(spec.exponent(q)), &model.weights[q])).collect();
    let mu = g.sum(&block0);
    let k = BigInt::from(spec.r() - spec.c());
    Some(g.add(&g.neg(&g.sum(&model.weights)), &g.scale(&k, &mu)))
}

/// The canonical class; both formulas are evaluated for arrangement specs
/// and must agree.
pub fn canonical_class(model: &VarietyModel) -> Result<GroupElement> {
    let ci = canonical_class_ci(model)?;
    if let Some(arr) = canonical_class_arrangement(model) {
        if arr != ci {
            return Err(Error::InconsistentDegrees("canonical class formulas disagree".into()));
        }
    }
    Ok(ci)
}

/// Verdicts on one piece `X(γ₀)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceReport {
    pub face: FaceId,
    pub class: FaceClass,
    pub quasismooth: bool,
    pub factorial: bool,
    pub qfactorial: bool,
    pub smooth: bool,
    pub maximal: bool,
    pub heuristic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothnessReport {
    pub pieces: Vec<PieceReport>,
    pub quasismooth: bool,
    pub factorial: bool,
    pub qfactorial: bool,
    pub smooth: bool,
    pub heuristic: bool,
}

impl SmoothnessReport {
    pub fn singular_pieces(&self) -> impl Iterator<Item = &PieceReport> {
        self.pieces.iter().filter(|p| !p.smooth)
    }
}

fn general_piece_quasismooth(model: &VarietyModel, f: FaceId) -> Result<bool> {
    let rels = model.spec.relations();
    if rels.is_empty() {
        return Ok(true);
    }
    match finite_field_face_oracle(&rels, model.len(), f, &model.primes, model.budget)? {
        OracleVerdict::Exists { prime, point } => {
            Ok(jacobian_rank_mod_p(&rels, &point, prime).is_some_and(|r| r == rels.len()))
        }
        OracleVerdict::NotFound { .. } => Ok(false),
    }
}

pub fn smoothness_report(model: &VarietyModel) -> Result<SmoothnessReport> {
    let k = model.group.free_rank();
    let maximal: Vec<FaceId> = maximal_pieces(&model.relevant.faces).into_iter().map(|v| v.face).collect();
    let mut pieces = Vec::new();
    for v in &model.relevant.faces {
        let (quasismooth, heuristic) = match model.spec.as_arrangement() {
            Some(a) => (!v.class.is_big() || big_piece_quasismooth(a, v.face), false),
            None => (general_piece_quasismooth(model, v.face)?, true),
        };
        let gens: Vec<GroupElement> = v.face.nonzero(model.len()).into_iter().map(|q| model.weights[q].clone()).collect();
        let factorial = Subgroup::generated(&model.group, &gens)? == Subgroup::whole(&model.group);
        let free: Vec<Vec<BigRational>> =
            gens.iter().map(|g| g.free.iter().cloned().map(BigRational::from_integer).collect()).collect();
        let qfactorial = RatMatrix::from_rows(k, free)?.rank() == k;
        pieces.push(PieceReport {
            face: v.face,
            class: v.class.clone(),
            quasismooth,
            factorial,
            qfactorial,
            smooth: quasismooth && factorial,
            maximal: maximal.contains(&v.face),
            heuristic: heuristic || v.heuristic,
        });
    }
    Ok(SmoothnessReport {
        quasismooth: pieces.iter().all(|p| p.quasismooth),
        factorial: pieces.iter().all(|p| p.factorial),
        qfactorial: pieces.iter().all(|p| p.qfactorial),
        smooth: pieces.iter().all(|p| p.smooth),
        heuristic: model.relevant.heuristic || pieces.iter().any(|p| p.heuristic),
        pieces,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FanoStatus {
    /// `-K_X` is ample.
    Fano,
    /// `-K_X` is semiample and big but not ample.
    TrulyAlmostFano,
    /// `-K_X` is semiample but neither big nor ample.
    AlmostFano,
    None,
}

impl FanoStatus {
    pub fn label(&self) -> &'static str {
        match self {
            FanoStatus::Fano => "Fano",
            FanoStatus::TrulyAlmostFano => "truly almost Fano",
            FanoStatus::AlmostFano => "almost Fano",
            FanoStatus::None => "none",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanoReport {
    pub status: FanoStatus,
    pub anticanonical: GroupElement,
    pub gorenstein_index: Option<BigInt>,
    pub heuristic: bool,
}

pub fn fano_status(model: &VarietyModel) -> Result<FanoReport> {
    let kx = canonical_class(model)?;
    let anti = model.group.neg(&kx);
    let cones = class_cones(model)?;
    let status = if ample_contains(model, &anti)? {
        FanoStatus::Fano
    } else if cones.samp.contains(&anti.free)? {
        if cones.eff.rel_interior_contains(&anti.free)? {
            FanoStatus::TrulyAlmostFano
        } else {
            FanoStatus::AlmostFano
        }
    } else {
        FanoStatus::None
    };
    let pic = picard_group(model)?;
    let gorenstein_index = divisibility_index(&kx, &pic)?;
    Ok(FanoReport { status, anticanonical: anti, gorenstein_index, heuristic: model.is_heuristic() })
}

/// Number of leading coordinates of `Z^{t+s}` forming the quotient part.
fn quotient_rows(spec: &VarSpec) -> usize {
    spec.t()
}

fn group_from_invariants(free_rank: usize, torsion: &[BigInt]) -> FgAbGroup {
    let n = free_rank + torsion.len();
    let mut m = IntMatrix::zeros(torsion.len(), n);
    for (i, d) in torsion.iter().enumerate() {
        m[(i, i)] = d.clone();
    }
    cokernel(&m)
}

/// Character group of the isotropy group along the piece of `σ = P(γ₀*)`.
pub fn isotropy(model: &VarietyModel, f: FaceId) -> Result<FgAbGroup> {
    if !model.relevant.faces.iter().any(|v| v.face == f) {
        return Err(Error::NotRelevant(format!("face with zero set {:?} is not relevant", f.zero_set(model.len()))));
    }
    Ok(isotropy_of_cone(model.spec.p(), quotient_rows(&model.spec), &f.zero_set(model.len())))
}

/// `(L ∩ lin σ) ⊕ (pr(lin σ) ∩ Z^t) / pr(lin σ ∩ Z^{t+s})` for the cone
/// spanned by the given columns of `P`.
pub fn isotropy_of_cone(p: &IntMatrix, t: usize, columns: &[usize]) -> FgAbGroup {
    if columns.is_empty() {
        return FgAbGroup::free(0);
    }
    let gens = p.select_cols(columns).transpose();
    let lattice = saturation(&gens);
    let head: Vec<usize> = (0..t).collect();
    let pr = lattice.select_cols(&head);
    let in_l = left_kernel_basis(&pr);
    let free_rank = in_l.rows();
    let image = hermite_basis(&pr);
    let quotient = cokernel(&image);
    group_from_invariants(free_rank, quotient.torsion())
}

/// Which contraction the wall of the ample chamber induces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WallKind {
    SmallModification,
    Divisorial,
    Fibration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber {
    pub cone: Cone,
    /// Interior sample class.
    pub sample: Vec<BigInt>,
    /// Relevant faces at the sample, in canonical order.
    pub relevant: Vec<FaceId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberFan {
    pub chambers: Vec<Chamber>,
    /// Index of the chamber containing `u`.
    pub ample_index: Option<usize>,
    /// Boundary rays of the ample chamber with their classification.
    pub walls: Vec<(Vec<BigInt>, WallKind)>,
    pub heuristic: bool,
}

fn cross2(a: &[BigInt], b: &[BigInt]) -> BigInt {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// Chamber decomposition of `Eff(X)` for free rank two.
pub fn mori_chambers(model: &VarietyModel) -> Result<ChamberFan> {
    if model.group.free_rank() != 2 {
        return Err(Error::RankNotTwo);
    }
    let cones = class_cones(model)?;
    if !cones.eff.is_pointed() || !cones.eff.is_full_dimensional() {
        return Err(Error::NotPointed);
    }
    let mut rays: Vec<Vec<BigInt>> = model.free_weights();
    if let Some(mu) = &model.mu {
        rays.push(mu.free.clone());
    }
    let mut rays: Vec<Vec<BigInt>> = rays.iter().filter(|r| r.iter().any(|x| !x.is_zero())).map(|r| primitive(r)).collect();
    let start = cones.eff.rays()[0].clone();
    let start = if rays.iter().all(|r| !cross2(&start, r).is_negative()) { start } else { cones.eff.rays()[1].clone() };
    rays.sort_by(|a, b| {
        let c = cross2(a, b);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    });
    rays.dedup();
    debug_assert_eq!(rays[0], start);
    let (xbar, heuristic) = model.xbar_faces()?;
    let free = model.free_weights();
    let mut chambers: Vec<Chamber> = Vec::new();
    for w in rays.windows(2) {
        let sample: Vec<BigInt> = w[0].iter().zip(&w[1]).map(|(a, b)| a + b).collect();
        let mut lambda = cones.eff.clone();
        for v in &xbar {
            let gens: Vec<Vec<BigInt>> = v.face.nonzero(free.len()).into_iter().map(|q| free[q].clone()).collect();
            if contains_generated(2, &gens, &sample)? {
                lambda = lambda.intersect(&Cone::new(2, gens)?)?;
            }
        }
        let mut relevant = Vec::new();
        for v in &xbar {
            let gens: Vec<Vec<BigInt>> = v.face.nonzero(free.len()).into_iter().map(|q| free[q].clone()).collect();
            if rel_interior_of_generated(2, &gens, &sample)? {
                relevant.push(v.face);
            }
        }
        match chambers.last_mut() {
            Some(last) if last.relevant == relevant => {
                last.cone = Cone::new(2, [last.cone.rays().to_vec(), lambda.rays().to_vec()].concat())?;
            }
            _ => chambers.push(Chamber { cone: lambda, sample, relevant }),
        }
    }
    let u = &model.u.free;
    let ample_index = chambers.iter().position(|c| c.cone.rel_interior_contains(u).unwrap_or(false));
    let mut walls = Vec::new();
    if let Some(i) = ample_index {
        for ray in chambers[i].cone.rays() {
            let kind = if !cones.eff.rel_interior_contains(ray)? {
                WallKind::Fibration
            } else if cones.mov.rel_interior_contains(ray)? {
                WallKind::SmallModification
            } else {
                WallKind::Divisorial
            };
            walls.push((ray.clone(), kind));
        }
    }
    Ok(ChamberFan { chambers, ample_index, walls, heuristic: heuristic || model.is_heuristic() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitClosureReport {
    pub fan: Fan,
    pub is_subfan: bool,
    pub has_big_cone: bool,
    /// `Some(holds)` when the fan is a subfan and the rank bound applies.
    pub rank_bound_holds: Option<bool>,
}

/// The fan `Σ_L` of the normalized general torus orbit closure, built from
/// the minimal ambient fan of the model.
pub fn orbit_closure_fan(model: &VarietyModel) -> Result<OrbitClosureReport> {
    let p = model.spec.p();
    let t = quotient_rows(&model.spec);
    let dim = p.rows();
    let len = model.len();
    let mut eqs = Vec::new();
    for i in 0..t {
        let mut e = vec![BigInt::zero(); dim];
        e[i] = BigInt::one();
        eqs.push(e);
    }
    let l_space = Cone::from_inequalities(dim, vec![], eqs)?;
    let sigma: Vec<Cone> = model
        .minimal_relevant()
        .iter()
        .map(|v| Cone::new(dim, f_cols(p, &v.face.zero_set(len))))
        .collect::<Result<_>>()?;
    let slices: Vec<Cone> = sigma.iter().map(|s| s.intersect(&l_space)).collect::<Result<_>>()?;
    let fan = Fan::new(dim, slices)?;
    let mut is_subfan = true;
    'outer: for tau in fan.all_cones() {
        for s in &sigma {
            if tau.is_face_of(s)? {
                continue 'outer;
            }
        }
        is_subfan = false;
        break;
    }
    let has_big_cone = model.relevant.faces.iter().any(|v| v.class.is_big());
    let rank_bound_holds = is_subfan.then(|| {
        let n = model.spec.layout().n_total() as i64;
        let blocks = model.spec.layout().blocks() as i64;
        let rk_x = model.group.free_rank() as i64;
        let rk_y = blocks - t as i64;
        rk_x - rk_y > n - (blocks - 1) - 1
    });
    Ok(OrbitClosureReport { fan, is_subfan, has_big_cone, rank_bound_holds })
}

fn f_cols(p: &IntMatrix, cols: &[usize]) -> Vec<Vec<BigInt>> {
    cols.iter().map(|&q| p.col(q)).collect()
}

/// `(dim X, complexity)`.
pub fn dim_and_complexity(spec: &VarSpec) -> (usize, usize) {
    let c = spec.complexity();
    (spec.s() + c, c)
}

/// Aggregated report on a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometryReport {
    pub dim: usize,
    pub complexity: usize,
    pub cl_group: FgAbGroup,
    pub weights: Vec<GroupElement>,
    pub u: GroupElement,
    pub pic: Subgroup,
    pub pic_index: Option<BigInt>,
    pub cones: ClassCones,
    /// `u` lies in the interior of a full-dimensional semiample cone, so it
    /// is ample on a Q-factorial model.
    pub u_ample: bool,
    pub canonical_class: GroupElement,
    pub smoothness: SmoothnessReport,
    pub fano: FanoReport,
    pub warnings: Vec<String>,
    pub heuristic: bool,
}

pub fn geometry_report(model: &VarietyModel) -> Result<GeometryReport> {
    let (dim, complexity) = dim_and_complexity(&model.spec);
    let pic = picard_group(model)?;
    let smoothness = smoothness_report(model)?;
    let fano = fano_status(model)?;
    let cones = class_cones(model)?;
    Ok(GeometryReport {
        dim,
        complexity,
        cl_group: model.group.clone(),
        weights: model.weights.clone(),
        u: model.u.clone(),
        pic_index: pic.index(),
        pic,
        u_ample: ample_contains(model, &model.u)? && cones.samp.is_full_dimensional() && cones.samp.rel_interior_contains(&model.u.free)?,
        cones,
        canonical_class: canonical_class(model)?,
        heuristic: model.is_heuristic() || smoothness.heuristic,
        smoothness,
        fano,
        warnings: model.relevant.warnings.clone(),
    })
}
