//! Rational polyhedral cones and fans.
//!
//! A [`Cone`] keeps both descriptions in canonical form: a Hermite basis of
//! its lineality lattice plus primitive extreme rays orthogonal to it, and a
//! Hermite basis of the equations of its span plus primitive facet normals
//! lying in the span. Both are produced by a double description method.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{dot, hermite_basis, primitive, primitive_from_rational, saturation, IntMatrix, RatMatrix};

/// A rational polyhedral cone in `Q^ambient_dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    ambient_dim: usize,
    rays: Vec<Vec<BigInt>>,
    lineality: Vec<Vec<BigInt>>,
    facets: Vec<Vec<BigInt>>,
    equations: Vec<Vec<BigInt>>,
}

/// Summary of the combinatorial type of a cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConeReport {
    pub dim: usize,
    pub pointed: bool,
    pub simplicial: bool,
    pub regular: bool,
}

struct DdRay {
    v: Vec<BigInt>,
    tight: Vec<bool>,
}

/// Computes `{a : h·a >= 0 for all h in constraints}` as
/// `(lineality basis, extreme rays modulo lineality)`.
fn double_description(dim: usize, constraints: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let mut lin: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = 1.into();
            e
        })
        .collect();
    let mut rays: Vec<DdRay> = Vec::new();
    let m = constraints.len();
    for (idx, h) in constraints.iter().enumerate() {
        if h.iter().all(Zero::is_zero) {
            for r in &mut rays {
                r.tight[idx] = true;
            }
            continue;
        }
        if let Some(pos) = lin.iter().position(|l| !dot(h, l).is_zero()) {
            let mut l0 = lin.remove(pos);
            let mut hl0 = dot(h, &l0);
            if hl0.is_negative() {
                l0.iter_mut().for_each(|x| *x = -x.clone());
                hl0 = -hl0;
            }
            for l in &mut lin {
                let hl = dot(h, l);
                if !hl.is_zero() {
                    let nl: Vec<BigInt> = l.iter().zip(&l0).map(|(a, b)| &hl0 * a - &hl * b).collect();
                    *l = primitive(&nl);
                }
            }
            for r in &mut rays {
                let hr = dot(h, &r.v);
                if !hr.is_zero() {
                    let nr: Vec<BigInt> = r.v.iter().zip(&l0).map(|(a, b)| &hl0 * a - &hr * b).collect();
                    r.v = primitive(&nr);
                }
                r.tight[idx] = true;
            }
            let mut tight = vec![false; m];
            tight[..idx].iter_mut().for_each(|t| *t = true);
            rays.push(DdRay { v: primitive(&l0), tight });
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(h, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            for (i, r) in rays.iter_mut().enumerate() {
                if vals[i].is_zero() {
                    r.tight[idx] = true;
                }
            }
            continue;
        }
        let mut new_rays = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common: Vec<bool> = rays[p].tight.iter().zip(&rays[n].tight).map(|(a, b)| *a && *b).collect();
                let blocked = (0..rays.len()).any(|k| {
                    k != p && k != n && common.iter().zip(&rays[k].tight).all(|(c, t)| !*c || *t)
                });
                if blocked {
                    continue;
                }
                let v: Vec<BigInt> = rays[n]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(a, b)| &vals[p] * a - &vals[n] * b)
                    .collect();
                let mut tight = common;
                tight[idx] = true;
                new_rays.push(DdRay { v: primitive(&v), tight });
            }
        }
        let mut kept: Vec<DdRay> = Vec::new();
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i].is_negative() {
                continue;
            }
            if vals[i].is_zero() {
                r.tight[idx] = true;
            }
            kept.push(r);
        }
        kept.extend(new_rays);
        rays = kept;
    }
    (lin, rays.into_iter().map(|r| r.v).collect())
}

/// Hermite basis of the saturated lattice spanned by `vecs`.
fn canonical_subspace(dim: usize, vecs: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if vecs.is_empty() {
        return vec![];
    }
    let m = IntMatrix::from_rows(dim, vecs.to_vec()).expect("uniform vector lengths");
    let sat = saturation(&m);
    if sat.rows() == 0 {
        return vec![];
    }
    hermite_basis(&sat).to_rows()
}

/// Projects vectors orthogonally onto the complement of `space`, makes them
/// primitive, removes zeros and duplicates and sorts them.
fn canonical_rays(dim: usize, space: &[Vec<BigInt>], rays: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut out = BTreeSet::new();
    let gram_inv = if space.is_empty() {
        None
    } else {
        let k = space.len();
        let mut gram = RatMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                gram[(i, j)] = BigRational::from_integer(dot(&space[i], &space[j]));
            }
        }
        Some(gram)
    };
    for r in rays {
        let projected: Vec<BigInt> = match &gram_inv {
            None => r.clone(),
            Some(gram) => {
                let rhs: Vec<BigRational> = space.iter().map(|s| BigRational::from_integer(dot(s, r))).collect();
                let coeff = gram.solve(&rhs).expect("Gram matrix of a basis is invertible");
                let v: Vec<BigRational> = (0..dim)
                    .map(|t| {
                        let mut x = BigRational::from_integer(r[t].clone());
                        for (c, s) in coeff.iter().zip(space) {
                            x -= c * BigRational::from_integer(s[t].clone());
                        }
                        x
                    })
                    .collect();
                primitive_from_rational(&v)
            }
        };
        if projected.iter().any(|x| !x.is_zero()) {
            out.insert(primitive(&projected));
        }
    }
    out.into_iter().collect()
}

fn check_dims(dim: usize, vecs: &[Vec<BigInt>]) -> Result<()> {
    for v in vecs {
        if v.len() != dim {
            return Err(Error::Dimension(format!("vector of length {} in ambient dimension {dim}", v.len())));
        }
    }
    Ok(())
}

fn with_negatives(vecs: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut out = vecs.to_vec();
    out.extend(vecs.iter().map(|v| v.iter().map(|x| -x).collect::<Vec<_>>()));
    out
}

impl Cone {
    /// The cone generated by the given vectors.
    pub fn new(ambient_dim: usize, generators: Vec<Vec<BigInt>>) -> Result<Cone> {
        check_dims(ambient_dim, &generators)?;
        let (eq_raw, fac_raw) = double_description(ambient_dim, &generators);
        let equations = canonical_subspace(ambient_dim, &eq_raw);
        let facets = canonical_rays(ambient_dim, &equations, &fac_raw);
        let mut h = facets.clone();
        h.extend(with_negatives(&equations));
        let (lin_raw, ray_raw) = double_description(ambient_dim, &h);
        let lineality = canonical_subspace(ambient_dim, &lin_raw);
        let rays = canonical_rays(ambient_dim, &lineality, &ray_raw);
        Ok(Cone { ambient_dim, rays, lineality, facets, equations })
    }

    pub fn from_i64(ambient_dim: usize, generators: &[Vec<i64>]) -> Cone {
        let g = generators.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Cone::new(ambient_dim, g).expect("generator lengths match the ambient dimension")
    }

    /// The cone `{x : a·x >= 0 for a in inequalities, b·x = 0 for b in equations}`.
    pub fn from_inequalities(
        ambient_dim: usize,
        inequalities: Vec<Vec<BigInt>>,
        equations: Vec<Vec<BigInt>>,
    ) -> Result<Cone> {
        check_dims(ambient_dim, &inequalities)?;
        check_dims(ambient_dim, &equations)?;
        let mut h = inequalities;
        h.extend(with_negatives(&equations));
        let (lin_raw, ray_raw) = double_description(ambient_dim, &h);
        let mut gens = ray_raw;
        gens.extend(with_negatives(&lin_raw));
        Cone::new(ambient_dim, gens)
    }

    pub fn zero(ambient_dim: usize) -> Cone {
        Cone::new(ambient_dim, vec![]).expect("empty generator list")
    }

    pub fn whole_space(ambient_dim: usize) -> Cone {
        Cone::from_inequalities(ambient_dim, vec![], vec![]).expect("empty constraint list")
    }

    /// The positive orthant of `Q^n`.
    pub fn orthant(n: usize) -> Cone {
        let gens = (0..n)
            .map(|i| {
                let mut e = vec![BigInt::zero(); n];
                e[i] = 1.into();
                e
            })
            .collect();
        Cone::new(n, gens).expect("unit vectors")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Extreme rays of the cone modulo its lineality space.
    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<BigInt>] {
        &self.lineality
    }

    /// Inner facet normals `a` with `a·x >= 0` on the cone.
    pub fn facets(&self) -> &[Vec<BigInt>] {
        &self.facets
    }

    /// Equations of the linear span of the cone.
    pub fn equations(&self) -> &[Vec<BigInt>] {
        &self.equations
    }

    /// All generators: rays together with both signs of the lineality basis,
    /// sorted lexicographically.
    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        let mut g: BTreeSet<Vec<BigInt>> = self.rays.iter().cloned().collect();
        g.extend(with_negatives(&self.lineality));
        g.into_iter().collect()
    }

    pub fn dim(&self) -> usize {
        self.ambient_dim - self.equations.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn dual(&self) -> Cone {
        Cone {
            ambient_dim: self.ambient_dim,
            rays: self.facets.clone(),
            lineality: self.equations.clone(),
            facets: self.rays.clone(),
            equations: self.lineality.clone(),
        }
    }

    fn check_vec(&self, v: &[BigInt]) -> Result<()> {
        if v.len() != self.ambient_dim {
            return Err(Error::Dimension(format!(
                "vector of length {} in ambient dimension {}",
                v.len(),
                self.ambient_dim
            )));
        }
        Ok(())
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        self.check_vec(v)?;
        Ok(self.equations.iter().all(|e| dot(e, v).is_zero()) && self.facets.iter().all(|f| !dot(f, v).is_negative()))
    }

    /// Membership in the relative interior: lying in the span and strictly
    /// satisfying every facet inequality.
    pub fn rel_interior_contains(&self, v: &[BigInt]) -> Result<bool> {
        self.check_vec(v)?;
        Ok(self.equations.iter().all(|e| dot(e, v).is_zero()) && self.facets.iter().all(|f| dot(f, v).is_positive()))
    }

    pub fn contains_cone(&self, other: &Cone) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(&g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::Dimension(format!(
                "intersecting cones in dimensions {} and {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        let mut ineq = self.facets.clone();
        ineq.extend(other.facets.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Cone::from_inequalities(self.ambient_dim, ineq, eqs)
    }

    /// All faces, ordered by dimension and then by generators.
    pub fn faces(&self) -> Vec<Cone> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let all: Vec<usize> = (0..self.rays.len()).collect();
        let mut stack = vec![all];
        while let Some(rays) = stack.pop() {
            if !seen.insert(rays.clone()) {
                continue;
            }
            for f in &self.facets {
                let tight: Vec<usize> = rays.iter().copied().filter(|&i| dot(f, &self.rays[i]).is_zero()).collect();
                if tight.len() < rays.len() {
                    stack.push(tight);
                }
            }
        }
        let mut faces: Vec<Cone> = seen
            .into_iter()
            .map(|idx| {
                let mut gens: Vec<Vec<BigInt>> = idx.iter().map(|&i| self.rays[i].clone()).collect();
                gens.extend(with_negatives(&self.lineality));
                Cone::new(self.ambient_dim, gens).expect("dimensions already checked")
            })
            .collect();
        faces.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.generators().cmp(&b.generators())));
        faces.dedup();
        faces
    }

    /// Whether `self` is a face of `other`.
    pub fn is_face_of(&self, other: &Cone) -> Result<bool> {
        if !other.contains_cone(self)? {
            return Ok(false);
        }
        if self.dim() == other.dim() {
            return Ok(self == other);
        }
        let inside: Vec<&Vec<BigInt>> = other
            .facets
            .iter()
            .filter(|f| self.generators().iter().all(|g| dot(f, g).is_zero()))
            .collect();
        let mut gens: Vec<Vec<BigInt>> = other
            .rays
            .iter()
            .filter(|r| inside.iter().all(|f| dot(f, r).is_zero()))
            .cloned()
            .collect();
        gens.extend(with_negatives(&other.lineality));
        let face = Cone::new(self.ambient_dim, gens)?;
        Ok(&face == self)
    }

    pub fn report(&self) -> ConeReport {
        cone_report(self)
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators()
            .iter()
            .map(|g| format!("({})", g.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "cone({})", gens.join(", "))
    }
}

/// Dimension, pointedness, simpliciality and regularity of a cone.
pub fn cone_report(c: &Cone) -> ConeReport {
    let dim = c.dim();
    let pointed = c.is_pointed();
    let simplicial = pointed && c.rays.len() == dim;
    let regular = simplicial && {
        if c.rays.is_empty() {
            true
        } else {
            let m = IntMatrix::from_rows(c.ambient_dim, c.rays.clone()).expect("uniform rays");
            m.maximal_minor_gcd() == BigInt::from(1)
        }
    };
    ConeReport { dim, pointed, simplicial, regular }
}

pub fn dual(c: &Cone) -> Cone {
    c.dual()
}

pub fn intersect(a: &Cone, b: &Cone) -> Result<Cone> {
    a.intersect(b)
}

fn cross2(a: &[BigInt], b: &[BigInt]) -> BigInt {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// Whether `v` lies in the relative interior of the cone generated by
/// `gens`, with direct arithmetic in ambient dimensions up to two.
pub fn rel_interior_of_generated(dim: usize, gens: &[Vec<BigInt>], v: &[BigInt]) -> Result<bool> {
    check_dims(dim, gens)?;
    check_dims(dim, std::slice::from_ref(&v.to_vec()))?;
    let nonzero: Vec<&Vec<BigInt>> = gens.iter().filter(|g| g.iter().any(|x| !x.is_zero())).collect();
    let v_zero = v.iter().all(Zero::is_zero);
    match dim {
        0 => Ok(true),
        1 => {
            let pos = nonzero.iter().any(|g| g[0].is_positive());
            let neg = nonzero.iter().any(|g| g[0].is_negative());
            Ok(match (pos, neg) {
                (true, true) => true,
                (true, false) => v[0].is_positive(),
                (false, true) => v[0].is_negative(),
                (false, false) => v_zero,
            })
        }
        2 => {
            if nonzero.is_empty() {
                return Ok(v_zero);
            }
            let g0 = nonzero[0];
            if nonzero.iter().all(|g| cross2(g0, g).is_zero()) {
                if !cross2(g0, v).is_zero() {
                    return Ok(false);
                }
                let sign = |w: &[BigInt]| dot(g0, w);
                let pos = nonzero.iter().any(|g| sign(g).is_positive());
                let neg = nonzero.iter().any(|g| sign(g).is_negative());
                let sv = sign(v);
                return Ok(match (pos, neg) {
                    (true, true) => true,
                    (true, false) => sv.is_positive(),
                    _ => sv.is_negative(),
                });
            }
            for g in &nonzero {
                for n in [[-g[1].clone(), g[0].clone()], [g[1].clone(), -g[0].clone()]] {
                    if nonzero.iter().all(|h| !dot(&n, h).is_negative()) {
                        if !dot(&n, v).is_positive() {
                            return Ok(false);
                        }
                    }
                }
            }
            Ok(true)
        }
        _ => Cone::new(dim, gens.to_vec())?.rel_interior_contains(v),
    }
}

/// Whether `v` lies in the cone generated by `gens`.
pub fn contains_generated(dim: usize, gens: &[Vec<BigInt>], v: &[BigInt]) -> Result<bool> {
    check_dims(dim, gens)?;
    if dim == 1 {
        let pos = gens.iter().any(|g| g[0].is_positive());
        let neg = gens.iter().any(|g| g[0].is_negative());
        return Ok(v[0].is_zero() || (v[0].is_positive() && pos) || (v[0].is_negative() && neg));
    }
    Cone::new(dim, gens.to_vec())?.contains(v)
}

/// A finite collection of cones, stored by its maximal members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    ambient_dim: usize,
    cones: Vec<Cone>,
    generator_matrix: IntMatrix,
}

impl Fan {
    /// Builds a fan from a list of cones, keeping the maximal ones and
    /// verifying that any two meet in a common face.
    pub fn new(ambient_dim: usize, cones: Vec<Cone>) -> Result<Fan> {
        for c in &cones {
            if c.ambient_dim != ambient_dim {
                return Err(Error::Dimension("cone outside the fan's ambient space".into()));
            }
        }
        let mut uniq: Vec<Cone> = Vec::new();
        for c in cones {
            if !uniq.contains(&c) {
                uniq.push(c);
            }
        }
        let mut maximal: Vec<Cone> = Vec::new();
        for (i, c) in uniq.iter().enumerate() {
            let mut dominated = false;
            for (j, d) in uniq.iter().enumerate() {
                if i != j && d.dim() > c.dim() && d.contains_cone(c)? {
                    dominated = true;
                    break;
                }
            }
            if !dominated {
                maximal.push(c.clone());
            }
        }
        maximal.sort_by(|a, b| b.dim().cmp(&a.dim()).then_with(|| a.generators().cmp(&b.generators())));
        for i in 0..maximal.len() {
            for j in i + 1..maximal.len() {
                let meet = maximal[i].intersect(&maximal[j])?;
                if !meet.is_face_of(&maximal[i])? || !meet.is_face_of(&maximal[j])? {
                    return Err(Error::Invalid(format!(
                        "cones {} and {} do not meet in a common face",
                        maximal[i], maximal[j]
                    )));
                }
            }
        }
        let rays: BTreeSet<Vec<BigInt>> = maximal.iter().flat_map(|c| c.generators()).collect();
        let cols: Vec<Vec<BigInt>> = rays.into_iter().collect();
        let generator_matrix = IntMatrix::from_cols(ambient_dim, &cols)?;
        Ok(Fan { ambient_dim, cones: maximal, generator_matrix })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        &self.cones
    }

    /// Columns are the primitive ray generators of the fan.
    pub fn generator_matrix(&self) -> &IntMatrix {
        &self.generator_matrix
    }

    /// Every cone of the fan, without repetitions.
    pub fn all_cones(&self) -> Vec<Cone> {
        let mut out: Vec<Cone> = Vec::new();
        for c in &self.cones {
            for f in c.faces() {
                if !out.contains(&f) {
                    out.push(f);
                }
            }
        }
        out.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.generators().cmp(&b.generators())));
        out
    }

    pub fn contains_cone(&self, c: &Cone) -> Result<bool> {
        for m in &self.cones {
            if c.is_face_of(m)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Whether the union of the cones is the whole ambient space, checked by
    /// testing that every facet of a full-dimensional maximal cone is shared
    /// with exactly one other full-dimensional maximal cone.
    pub fn is_complete(&self) -> Result<bool> {
        if self.cones.iter().any(|c| !c.is_full_dimensional()) {
            return Ok(false);
        }
        if self.ambient_dim == 0 {
            return Ok(true);
        }
        for c in &self.cones {
            for f in c.faces().into_iter().filter(|f| f.dim() + 1 == self.ambient_dim) {
                let count = self.cones.iter().filter(|d| f.is_face_of(d).unwrap_or(false)).count();
                if count != 2 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Iterates subsets of `0..n` as bitmasks by popcount, then lexicographically.
pub fn subsets_by_popcount(n: usize) -> Vec<u64> {
    let mut all: Vec<u64> = (0..(1u64 << n)).collect();
    all.sort_by_key(|&s| (s.count_ones(), s.reverse_bits()));
    all
}

/// The normal fan `{P(γ₀*) : u ∈ Q(γ₀)°}` over all faces `γ₀` of the orthant.
///
/// `p` has one column per coordinate, `weights` holds the free parts of
/// the degrees as columns and `u` is the free part of the class.
pub fn normal_fan(p: &IntMatrix, weights: &IntMatrix, u: &[BigInt]) -> Result<Fan> {
    let n = p.cols();
    if weights.cols() != n {
        return Err(Error::Dimension("P and Q must have the same number of columns".into()));
    }
    if n > 24 {
        return Err(Error::Invalid("at most 24 coordinates are supported".into()));
    }
    let k = weights.rows();
    let wcols = weights.to_cols();
    let pcols = p.to_cols();
    if !rel_interior_of_generated(k, &wcols, u)? {
        return Err(Error::ClassNotInEffInterior);
    }
    let mut cones = Vec::new();
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    for face in 0..=full {
        let gens: Vec<Vec<BigInt>> = (0..n).filter(|q| face >> q & 1 == 1).map(|q| wcols[q].clone()).collect();
        if !rel_interior_of_generated(k, &gens, u)? {
            continue;
        }
        let comp: Vec<Vec<BigInt>> = (0..n).filter(|q| face >> q & 1 == 0).map(|q| pcols[q].clone()).collect();
        cones.push(Cone::new(p.rows(), comp)?);
    }
    Fan::new(p.rows(), cones)
}
