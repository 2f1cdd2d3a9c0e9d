//! Faces of the positive orthant: big and leaf types, relevant faces,
//! elementary big cones, witness points and a finite-field existence oracle.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{GroupElement, RatMatrix};
use crate::polyhedral::{rel_interior_of_generated, subsets_by_popcount};
use crate::varspec::{ArrangementSpec, Relation, VarSpec};

/// Maximal number of coordinates handled by face enumeration.
pub const MAX_COORDINATES: usize = 24;

/// Default primes of the finite-field oracle.
pub const DEFAULT_ORACLE_PRIMES: [u64; 3] = [5, 7, 11];

/// Default node budget of the finite-field oracle per prime.
pub const DEFAULT_ORACLE_BUDGET: u64 = 20_000_000;

/// A face `γ₀` of the orthant, stored as the bitset of coordinates `q` with
/// `e_q ∈ γ₀`. These are the coordinates that are nonzero on `z_{γ₀}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceId(pub u64);

impl FaceId {
    pub fn from_nonzero(coords: &[usize]) -> FaceId {
        FaceId(coords.iter().fold(0u64, |acc, &q| acc | 1 << q))
    }

    /// The face whose complementary face `γ₀*` is spanned by `zeros`.
    pub fn from_zero_set(len: usize, zeros: &[usize]) -> FaceId {
        FaceId::full(len).complement_in(len, FaceId::from_nonzero(zeros))
    }

    pub fn full(len: usize) -> FaceId {
        FaceId(if len == 64 { u64::MAX } else { (1u64 << len) - 1 })
    }

    pub fn contains(&self, q: usize) -> bool {
        self.0 >> q & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.0.count_ones() as usize
    }

    /// Coordinates `q` with `e_q ∈ γ₀`.
    pub fn nonzero(&self, len: usize) -> Vec<usize> {
        (0..len).filter(|&q| self.contains(q)).collect()
    }

    /// Coordinates spanning the complementary face `γ₀*`.
    pub fn zero_set(&self, len: usize) -> Vec<usize> {
        (0..len).filter(|&q| !self.contains(q)).collect()
    }

    /// The complementary face `γ₀*`.
    pub fn complement(&self, len: usize) -> FaceId {
        FaceId(!self.0 & FaceId::full(len).0)
    }

    fn complement_in(self, len: usize, other: FaceId) -> FaceId {
        FaceId(self.0 & !other.0 & FaceId::full(len).0)
    }

    pub fn is_subface_of(&self, other: &FaceId) -> bool {
        self.0 & !other.0 == 0
    }
}

/// Type of a face with respect to the total coordinate space `X̄`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FaceClass {
    Big,
    ElementaryBig,
    /// Leaf type; carries the blocks `i` in which `z_{γ₀}` has a zero.
    Leaf(Vec<usize>),
    NotXbarFace,
}

impl FaceClass {
    pub fn is_xbar_face(&self) -> bool {
        !matches!(self, FaceClass::NotXbarFace)
    }

    pub fn is_big(&self) -> bool {
        matches!(self, FaceClass::Big | FaceClass::ElementaryBig)
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, FaceClass::Leaf(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            FaceClass::Big => "big",
            FaceClass::ElementaryBig => "elementary big",
            FaceClass::Leaf(_) => "leaf",
            FaceClass::NotXbarFace => "not an X-bar face",
        }
    }
}

impl fmt::Display for FaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FaceClass::Leaf(i) => write!(f, "leaf {i:?}"),
            other => f.write_str(other.label()),
        }
    }
}

/// Classification of one face, with a flag for heuristic verdicts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FaceVerdict {
    pub face: FaceId,
    pub class: FaceClass,
    pub heuristic: bool,
}

/// Blocks in which the face has a zero coordinate.
fn zero_blocks(layout: &crate::varspec::VarLayout, f: FaceId) -> Vec<usize> {
    (0..layout.blocks()).filter(|&i| layout.block(i).any(|q| !f.contains(q))).collect()
}

fn is_elementary_pattern(layout: &crate::varspec::VarLayout, f: FaceId) -> bool {
    let blocks_ok = (0..layout.blocks()).all(|i| layout.block(i).filter(|&q| !f.contains(q)).count() == 1);
    let free_ok = (0..layout.m()).all(|k| f.contains(layout.free_index(k)));
    blocks_ok && free_ok
}

/// Exact classification for arrangement data.
pub fn classify_arrangement_face(spec: &ArrangementSpec, f: FaceId) -> FaceClass {
    let layout = spec.layout();
    let zeros = zero_blocks(layout, f);
    if zeros.len() == layout.blocks() {
        if is_elementary_pattern(layout, f) {
            FaceClass::ElementaryBig
        } else {
            FaceClass::Big
        }
    } else if zeros.len() <= spec.c() {
        FaceClass::Leaf(zeros)
    } else {
        FaceClass::NotXbarFace
    }
}

/// Primes for the finite-field oracle, taken from `ARRVAR_ORACLE_PRIMES`
/// (comma separated) when set.
pub fn oracle_primes() -> Vec<u64> {
    std::env::var("ARRVAR_ORACLE_PRIMES")
        .ok()
        .and_then(|s| {
            let parsed: Option<Vec<u64>> = s.split(',').map(|x| x.trim().parse().ok()).collect();
            parsed.filter(|v| !v.is_empty())
        })
        .unwrap_or_else(|| DEFAULT_ORACLE_PRIMES.to_vec())
}

/// Classifies a face, consulting the finite-field oracle only where
/// no exact rule applies.
pub fn classify_face(spec: &VarSpec, f: FaceId) -> Result<FaceVerdict> {
    classify_face_with(spec, f, &oracle_primes(), DEFAULT_ORACLE_BUDGET)
}

pub fn classify_face_with(spec: &VarSpec, f: FaceId, primes: &[u64], budget: u64) -> Result<FaceVerdict> {
    match spec {
        VarSpec::Arrangement(a) => Ok(FaceVerdict { face: f, class: classify_arrangement_face(a, f), heuristic: false }),
        VarSpec::General(g) => {
            let layout = g.layout();
            let rels = g.relations();
            let surviving: Vec<usize> = rels.iter().map(|r| surviving_terms(r, f).count()).collect();
            let zeros = zero_blocks(layout, f);
            let big_class = || {
                if is_elementary_pattern(layout, f) {
                    FaceClass::ElementaryBig
                } else {
                    FaceClass::Big
                }
            };
            if surviving.iter().all(|&s| s == 0) {
                return Ok(FaceVerdict { face: f, class: big_class(), heuristic: false });
            }
            if surviving.contains(&1) {
                return Ok(FaceVerdict { face: f, class: FaceClass::NotXbarFace, heuristic: false });
            }
            if surviving.iter().filter(|&&s| s > 0).count() == 1 {
                return Ok(FaceVerdict { face: f, class: FaceClass::Leaf(zeros), heuristic: false });
            }
            let verdict = finite_field_face_oracle(rels, layout.len(), f, primes, budget)?;
            let class = match verdict {
                OracleVerdict::Exists { .. } => FaceClass::Leaf(zeros),
                OracleVerdict::NotFound { .. } => FaceClass::NotXbarFace,
            };
            Ok(FaceVerdict { face: f, class, heuristic: true })
        }
    }
}

fn surviving_terms(rel: &Relation, f: FaceId) -> impl Iterator<Item = &crate::varspec::Term> {
    rel.terms.iter().filter(move |t| t.exponents.iter().enumerate().all(|(q, &e)| e == 0 || f.contains(q)))
}

/// Outcome of the finite-field search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    /// A point over `F_p` with the zero pattern of the face solving all relations.
    Exists { prime: u64, point: Vec<u64> },
    /// No point found; `definite` is set when a relation keeps a single
    /// monomial, which never vanishes on the torus.
    NotFound { definite: bool },
}

fn mod_p(x: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let num = x.numer().mod_floor(&pb).to_u64()?;
    let den = x.denom().mod_floor(&pb).to_u64()?;
    if den == 0 {
        return None;
    }
    Some(num * pow_mod(den, p - 2, p) % p)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

struct PTerm {
    coeff: u64,
    vars: Vec<(usize, u32)>,
}

/// Searches for a point of `X̄` over `F_p` whose zero coordinates are
/// exactly the complement of `f`.
pub fn finite_field_face_oracle(
    relations: &[Relation],
    len: usize,
    f: FaceId,
    primes: &[u64],
    budget: u64,
) -> Result<OracleVerdict> {
    let surviving: Vec<Vec<&crate::varspec::Term>> = relations.iter().map(|r| surviving_terms(r, f).collect()).collect();
    if surviving.iter().any(|s| s.len() == 1) {
        return Ok(OracleVerdict::NotFound { definite: true });
    }
    let mut order: Vec<usize> = Vec::new();
    for s in &surviving {
        for t in s {
            for (q, &e) in t.exponents.iter().enumerate() {
                if e > 0 && !order.contains(&q) {
                    order.push(q);
                }
            }
        }
    }
    let pos = |q: usize| order.iter().position(|&x| x == q).expect("variable in order");
    let completes: Vec<usize> = surviving
        .iter()
        .map(|s| s.iter().flat_map(|t| t.exponents.iter().enumerate().filter(|(_, &e)| e > 0).map(|(q, _)| pos(q))).max().unwrap_or(0))
        .collect();
    'primes: for &p in primes {
        let mut rels: Vec<(usize, Vec<PTerm>)> = Vec::new();
        for (k, s) in surviving.iter().enumerate() {
            if s.is_empty() {
                continue;
            }
            let mut terms = Vec::new();
            for t in s {
                let Some(coeff) = mod_p(&t.coeff, p) else { continue 'primes };
                let vars = t.exponents.iter().enumerate().filter(|(_, &e)| e > 0).map(|(q, &e)| (pos(q), e)).collect();
                terms.push(PTerm { coeff, vars });
            }
            rels.push((completes[k], terms));
        }
        if rels.is_empty() {
            let mut point = vec![0u64; len];
            for q in f.nonzero(len) {
                point[q] = 1;
            }
            return Ok(OracleVerdict::Exists { prime: p, point });
        }
        let mut values = vec![0u64; order.len()];
        let mut nodes = 0u64;
        if search(0, &mut values, &rels, p, &mut nodes, budget)? {
            let mut point = vec![0u64; len];
            for q in f.nonzero(len) {
                point[q] = 1;
            }
            for (k, &q) in order.iter().enumerate() {
                point[q] = values[k];
            }
            return Ok(OracleVerdict::Exists { prime: p, point });
        }
    }
    Ok(OracleVerdict::NotFound { definite: false })
}

fn search(depth: usize, values: &mut [u64], rels: &[(usize, Vec<PTerm>)], p: u64, nodes: &mut u64, budget: u64) -> Result<bool> {
    if depth == values.len() {
        return Ok(true);
    }
    for v in 1..p {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::BudgetExceeded(format!("finite-field search over F_{p} exceeded {budget} nodes")));
        }
        values[depth] = v;
        let ok = rels.iter().filter(|(c, _)| *c == depth).all(|(_, terms)| {
            terms.iter().fold(0u64, |acc, t| {
                let m = t.vars.iter().fold(t.coeff, |m, &(k, e)| m * pow_mod(values[k], e as u64, p) % p);
                (acc + m) % p
            }) == 0
        });
        if ok && search(depth + 1, values, rels, p, nodes, budget)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Rank of a matrix over `F_p`.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map(Vec::len).unwrap_or(0);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] % p != 0) else { continue };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][c], p - 2, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] % p != 0 {
                let factor = rows[r][c] * inv % p;
                for j in 0..cols {
                    let sub = factor * rows[rank][j] % p;
                    rows[r][j] = (rows[r][j] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of the Jacobian of `relations` at a point over `F_p`.
pub fn jacobian_rank_mod_p(relations: &[Relation], point: &[u64], p: u64) -> Option<usize> {
    let mut rows = Vec::new();
    for rel in relations {
        let mut row = vec![0u64; point.len()];
        for t in &rel.terms {
            let c = mod_p(&t.coeff, p)?;
            for q in 0..point.len() {
                let e = t.exponents[q];
                if e == 0 {
                    continue;
                }
                let mut v = c * (e as u64 % p) % p;
                for (k, &ek) in t.exponents.iter().enumerate() {
                    let ek = if k == q { ek - 1 } else { ek };
                    v = v * pow_mod(point[k], ek as u64, p) % p;
                }
                row[q] = (row[q] + v) % p;
            }
        }
        rows.push(row);
    }
    Some(rank_mod_p(rows, p))
}

/// Rank of the Jacobian of `relations` at a rational point.
pub fn jacobian_rank(relations: &[Relation], z: &[BigRational]) -> usize {
    let rows: Vec<Vec<BigRational>> = relations.iter().map(|r| (0..z.len()).map(|q| r.partial(q, z)).collect()).collect();
    RatMatrix::from_rows(z.len(), rows).map(|m| m.rank()).unwrap_or(0)
}

/// Whether the points of `X̄(γ₀)` are smooth points of `X̄`, decided by the
/// combinatorial form of the Jacobian criterion.
pub fn xbar_stratum_smooth(spec: &ArrangementSpec, f: FaceId) -> bool {
    let class = classify_arrangement_face(spec, f);
    if !class.is_big() {
        return true;
    }
    bad_blocks(spec, f) < spec.c() + 2
}

/// Number of blocks that have a zero `z_ij` with `l_ij >= 2` or at least two
/// zeros with `l_ij = 1`.
pub fn bad_blocks(spec: &ArrangementSpec, f: FaceId) -> usize {
    let layout = spec.layout();
    (0..layout.blocks())
        .filter(|&i| {
            let zeros: Vec<usize> = layout.block(i).filter(|&q| !f.contains(q)).collect();
            zeros.iter().any(|&q| spec.exponent(q) >= 2) || zeros.len() >= 2
        })
        .count()
}

/// Whether the piece of a big face satisfies the quasismoothness condition:
/// among any `c+2` blocks one has a single zero `z_ij` and `l_ij = 1`.
pub fn big_piece_quasismooth(spec: &ArrangementSpec, f: FaceId) -> bool {
    let layout = spec.layout();
    let good = (0..layout.blocks())
        .filter(|&i| {
            let zeros: Vec<usize> = layout.block(i).filter(|&q| !f.contains(q)).collect();
            zeros.len() == 1 && spec.exponent(zeros[0]) == 1
        })
        .count();
    layout.blocks() - good <= spec.c() + 1
}

/// All faces whose complementary face picks exactly one `e_ij` per block
/// and no free coordinate.
pub fn elementary_big_cones(spec: &VarSpec) -> Vec<FaceId> {
    let layout = spec.layout();
    let len = layout.len();
    let mut out = vec![Vec::<usize>::new()];
    for i in 0..layout.blocks() {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                layout.block(i).map(move |q| {
                    let mut v = prefix.clone();
                    v.push(q);
                    v
                })
            })
            .collect();
    }
    let mut faces: Vec<FaceId> = out.iter().map(|zeros| FaceId::from_zero_set(len, zeros)).collect();
    faces.sort();
    faces
}

/// Whether some elementary big face is relevant.
pub fn has_elementary_big(relevant: &[FaceVerdict]) -> bool {
    relevant.iter().any(|v| v.class == FaceClass::ElementaryBig)
}

/// The relevant faces at a class `u` with accompanying diagnostics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelevantFaces {
    pub faces: Vec<FaceVerdict>,
    pub warnings: Vec<String>,
    pub heuristic: bool,
}

/// Warning emitted for classes on a wall of the chamber fan.
pub const WALL_WARNING: &str = "class lies on a chamber wall; model may be non-Q-factorial";

/// All faces with `u ∈ Q(γ₀)°` in canonical order, without classification.
pub fn faces_with_class_in_interior(weights: &[Vec<BigInt>], u: &[BigInt]) -> Result<Vec<FaceId>> {
    let len = weights.len();
    if len > MAX_COORDINATES {
        return Err(Error::Invalid(format!("at most {MAX_COORDINATES} coordinates are supported")));
    }
    let dim = u.len();
    let subsets = subsets_by_popcount(len);
    let hits: Vec<Result<Option<FaceId>>> = subsets
        .par_iter()
        .map(|&s| {
            let f = FaceId(s);
            let gens: Vec<Vec<BigInt>> = f.nonzero(len).into_iter().map(|q| weights[q].clone()).collect();
            Ok(rel_interior_of_generated(dim, &gens, u)?.then_some(f))
        })
        .collect();
    hits.into_iter().filter_map(|r| r.transpose()).collect()
}

/// The X̄-faces `γ₀` with `u ∈ Q(γ₀)°`, using the free parts of the degrees.
pub fn relevant_faces(spec: &VarSpec, weights: &[GroupElement], u: &GroupElement) -> Result<RelevantFaces> {
    relevant_faces_with(spec, weights, u, &oracle_primes(), DEFAULT_ORACLE_BUDGET)
}

pub fn relevant_faces_with(
    spec: &VarSpec,
    weights: &[GroupElement],
    u: &GroupElement,
    primes: &[u64],
    budget: u64,
) -> Result<RelevantFaces> {
    let free: Vec<Vec<BigInt>> = weights.iter().map(|w| w.free.clone()).collect();
    if !rel_interior_of_generated(u.free.len(), &free, &u.free)? {
        return Err(Error::ClassNotInEffInterior);
    }
    let candidates = faces_with_class_in_interior(&free, &u.free)?;
    let verdicts: Vec<Result<FaceVerdict>> =
        candidates.par_iter().map(|&f| classify_face_with(spec, f, primes, budget)).collect();
    let mut faces = Vec::new();
    let mut heuristic = false;
    for v in verdicts {
        let v = v?;
        heuristic |= v.heuristic;
        if v.class.is_xbar_face() {
            faces.push(v);
        }
    }
    let dim = u.free.len();
    let mut warnings = Vec::new();
    for v in &faces {
        let gens: Vec<Vec<BigInt>> = v.face.nonzero(free.len()).into_iter().map(|q| free[q].clone()).collect();
        if RatMatrix::from_rows(dim, gens.iter().map(|g| g.iter().cloned().map(BigRational::from_integer).collect()).collect())?
            .rank()
            < dim
        {
            warnings.push(WALL_WARNING.to_string());
            break;
        }
    }
    Ok(RelevantFaces { faces, warnings, heuristic })
}

/// Relevant faces whose cone `P(γ₀*)` is maximal among the big cones,
/// resp. among the leaf cones, in canonical order.
pub fn maximal_pieces(relevant: &[FaceVerdict]) -> Vec<FaceVerdict> {
    relevant
        .iter()
        .filter(|f| {
            !relevant.iter().any(|g| g.face != f.face && g.class.is_big() == f.class.is_big() && g.face.is_subface_of(&f.face))
        })
        .cloned()
        .collect()
}

/// Certificate that a face meets `X̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A rational point with the zero pattern of the face on which every
    /// relation vanishes.
    Rational(Vec<BigRational>),
    /// Values `y_i` of the block monomials `T_i^{l_i}` lying in the row space
    /// of `A` with the required zero pattern; a point exists after extracting
    /// roots over the algebraic closure.
    AlgebraicClosure(Vec<BigRational>),
}

fn rational_root(x: &BigRational, g: u32) -> Option<BigRational> {
    if g == 1 {
        return Some(x.clone());
    }
    if x.is_negative() && g % 2 == 0 {
        return None;
    }
    let root_int = |n: &BigInt| {
        let r = n.abs().nth_root(g);
        (num_traits::pow(r.clone(), g as usize) == n.abs()).then_some(r)
    };
    let n = root_int(x.numer())?;
    let d = root_int(x.denom())?;
    let r = BigRational::new(n, d);
    Some(if x.is_negative() { -r } else { r })
}

/// Integers `c_j` with `Σ c_j l_j = gcd(l)`.
fn bezout(l: &[u32]) -> (u32, Vec<i64>) {
    let mut g = 0i64;
    let mut coeffs: Vec<i64> = Vec::with_capacity(l.len());
    for &x in l {
        let e = (g).extended_gcd(&(x as i64));
        for c in coeffs.iter_mut() {
            *c *= e.x;
        }
        coeffs.push(e.y);
        g = e.gcd;
    }
    if g < 0 {
        g = -g;
        for c in coeffs.iter_mut() {
            *c = -*c;
        }
    }
    (g as u32, coeffs)
}

fn rpow(x: &BigRational, e: i64) -> BigRational {
    let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// Finds a point of `X̄` in the stratum of `f`, or `None` when `f` is not
/// an X̄-face.
pub fn witness_point(spec: &ArrangementSpec, f: FaceId) -> Option<Witness> {
    let layout = spec.layout();
    let len = layout.len();
    let blocks = layout.blocks();
    let zeros = zero_blocks(layout, f);
    let a = spec.a();
    let rows: Vec<Vec<BigRational>> = zeros.iter().map(|&i| a.col(i)).collect();
    let basis = if rows.is_empty() {
        (0..a.rows())
            .map(|k| (0..a.rows()).map(|j| if j == k { BigRational::one() } else { BigRational::zero() }).collect())
            .collect()
    } else {
        RatMatrix::from_rows(a.rows(), rows).ok()?.kernel()
    };
    let base_point = || -> Vec<BigRational> {
        (0..len).map(|q| if f.contains(q) { BigRational::one() } else { BigRational::zero() }).collect()
    };
    if zeros.len() == blocks {
        return Some(Witness::Rational(base_point()));
    }
    if basis.is_empty() {
        return None;
    }
    let alive: Vec<usize> = (0..blocks).filter(|i| !zeros.contains(i)).collect();
    let at = a.transpose();
    let bound = 3i64;
    let dim = basis.len();
    let total = (2 * bound + 1).pow(dim as u32);
    let mut certificate: Option<Vec<BigRational>> = None;
    let mut candidates: Vec<Vec<i64>> = (0..total)
        .map(|mut code| {
            (0..dim)
                .map(|_| {
                    let v = code % (2 * bound + 1) - bound;
                    code /= 2 * bound + 1;
                    v
                })
                .collect()
        })
        .filter(|v: &Vec<i64>| v.iter().any(|&x| x != 0))
        .collect();
    candidates.sort_by_key(|v| (v.iter().map(|x| x.abs()).max(), v.iter().map(|x| x.abs()).sum::<i64>(), v.clone()));
    for coeffs in candidates {
        let mut x = vec![BigRational::zero(); a.rows()];
        for (c, b) in coeffs.iter().zip(&basis) {
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += BigRational::from_integer(BigInt::from(*c)) * bi;
            }
        }
        let y = at.mul_vec(&x);
        if alive.iter().any(|&i| y[i].is_zero()) {
            continue;
        }
        if certificate.is_none() {
            certificate = Some(y.clone());
        }
        let mut z = base_point();
        let mut ok = true;
        for &i in &alive {
            let l = &spec.l()[i];
            let (g, c) = bezout(l);
            match rational_root(&y[i], g) {
                Some(rho) => {
                    for (j, q) in layout.block(i).enumerate() {
                        z[q] = rpow(&rho, c[j]);
                    }
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && spec.relations().iter().all(|r| r.eval(&z).is_zero()) {
            return Some(Witness::Rational(z));
        }
    }
    certificate.map(Witness::AlgebraicClosure)
}

/// Checks a witness against the relations and the zero pattern of `f`.
pub fn check_witness(spec: &ArrangementSpec, f: FaceId, w: &Witness) -> bool {
    let layout = spec.layout();
    match w {
        Witness::Rational(z) => {
            z.len() == layout.len()
                && (0..z.len()).all(|q| z[q].is_zero() != f.contains(q))
                && spec.relations().iter().all(|r| r.eval(z).is_zero())
        }
        Witness::AlgebraicClosure(y) => {
            let zeros = zero_blocks(layout, f);
            y.len() == layout.blocks()
                && (0..y.len()).all(|i| y[i].is_zero() == zeros.contains(&i))
                && spec.relations().iter().all(|r| {
                    let k = r.block_coefficients.as_ref().expect("arrangement relation");
                    k.iter().zip(y).map(|(a, b)| a * b).sum::<BigRational>().is_zero()
                })
        }
    }
}
