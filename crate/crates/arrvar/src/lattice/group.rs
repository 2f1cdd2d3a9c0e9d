//! Finitely generated abelian groups presented as cokernels, their elements
//! and their subgroups.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::normal_form::{
    echelon_coordinates, hermite_basis, left_kernel_basis, right_inverse, smith_decompose,
};
use crate::error::{Error, Result};

/// An element of `Z^free_rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub free: Vec<BigInt>,
    pub torsion: Vec<BigInt>,
}

impl GroupElement {
    pub fn new(free: Vec<BigInt>, torsion: Vec<BigInt>) -> Self {
        GroupElement { free, torsion }
    }

    pub fn from_i64(free: &[i64], torsion: &[i64]) -> Self {
        GroupElement {
            free: free.iter().map(|&x| x.into()).collect(),
            torsion: torsion.iter().map(|&x| x.into()).collect(),
        }
    }

    /// Concatenation of the free and torsion coordinates.
    pub fn lift(&self) -> Vec<BigInt> {
        self.free.iter().chain(&self.torsion).cloned().collect()
    }

    pub fn is_torsion(&self) -> bool {
        self.free.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let mut first = true;
        for x in &self.free {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{x}")?;
        }
        for x in &self.torsion {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{x}\u{304}")?;
        }
        write!(f, ")")
    }
}

/// A finitely generated abelian group `Z^k ⊕ Z/d_1 ⊕ … ⊕ Z/d_t` with
/// `d_1 | d_2 | …`, together with a surjection from `Z^source_dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgAbGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
    free_proj: IntMatrix,
    torsion_proj: IntMatrix,
}

impl FgAbGroup {
    /// The group `Z^cols / (row space of m)` with its canonical projection.
    pub fn cokernel(m: &IntMatrix) -> FgAbGroup {
        let n = m.cols();
        let smith = smith_decompose(m);
        let factors = smith.invariant_factors();
        let rank = factors.len();
        let tors_idx: Vec<usize> = (0..rank).filter(|&i| !factors[i].is_one()).collect();
        let torsion: Vec<BigInt> = tors_idx.iter().map(|&i| factors[i].clone()).collect();
        let free_idx: Vec<usize> = (rank..n).collect();
        let vt = smith.v.transpose();
        let free_raw = vt.select_rows(&free_idx);
        let free_proj = if free_raw.rows() > 0 { hermite_basis(&free_raw) } else { IntMatrix::zeros(0, n) };
        let mut torsion_proj = vt.select_rows(&tors_idx);
        for (k, d) in torsion.iter().enumerate() {
            for j in 0..n {
                let x = torsion_proj[(k, j)].mod_floor(d);
                torsion_proj[(k, j)] = x;
            }
        }
        FgAbGroup { free_rank: free_idx.len(), torsion, free_proj, torsion_proj }
    }

    /// A free group `Z^k` with the identity projection.
    pub fn free(k: usize) -> FgAbGroup {
        FgAbGroup {
            free_rank: k,
            torsion: vec![],
            free_proj: IntMatrix::identity(k),
            torsion_proj: IntMatrix::zeros(0, k),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn source_dim(&self) -> usize {
        self.free_proj.cols()
    }

    pub fn free_projection(&self) -> &IntMatrix {
        &self.free_proj
    }

    pub fn torsion_projection(&self) -> &IntMatrix {
        &self.torsion_proj
    }

    /// Free rows stacked over torsion rows.
    pub fn projection(&self) -> IntMatrix {
        self.free_proj.vstack(&self.torsion_proj).expect("projection blocks share columns")
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().fold(BigInt::one(), |a, b| a * b)
    }

    /// Same free rank and torsion chain.
    pub fn is_isomorphic(&self, other: &FgAbGroup) -> bool {
        self.free_rank == other.free_rank && self.torsion == other.torsion
    }

    /// Image of a vector of `Z^source_dim`.
    pub fn project(&self, x: &[BigInt]) -> GroupElement {
        let free = self.free_proj.mul_vec(x);
        let torsion = self.torsion_proj.mul_vec(x);
        self.reduce(GroupElement { free, torsion })
    }

    /// Image of the `j`-th canonical basis vector.
    pub fn project_basis(&self, j: usize) -> GroupElement {
        let free = self.free_proj.col(j);
        let torsion = self.torsion_proj.col(j);
        self.reduce(GroupElement { free, torsion })
    }

    /// Images of all canonical basis vectors.
    pub fn basis_images(&self) -> Vec<GroupElement> {
        (0..self.source_dim()).map(|j| self.project_basis(j)).collect()
    }

    pub fn check(&self, g: &GroupElement) -> Result<()> {
        if g.free.len() != self.free_rank || g.torsion.len() != self.torsion.len() {
            return Err(Error::MismatchedAmbient(format!(
                "element {g} does not live in a group with free rank {} and {} torsion factors",
                self.free_rank,
                self.torsion.len()
            )));
        }
        Ok(())
    }

    pub fn reduce(&self, mut g: GroupElement) -> GroupElement {
        for (x, d) in g.torsion.iter_mut().zip(&self.torsion) {
            *x = x.mod_floor(d);
        }
        g
    }

    pub fn element(&self, free: Vec<BigInt>, torsion: Vec<BigInt>) -> Result<GroupElement> {
        let g = GroupElement { free, torsion };
        self.check(&g)?;
        Ok(self.reduce(g))
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            free: vec![BigInt::zero(); self.free_rank],
            torsion: vec![BigInt::zero(); self.torsion.len()],
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let free = a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect();
        let torsion = a.torsion.iter().zip(&b.torsion).map(|(x, y)| x + y).collect();
        self.reduce(GroupElement { free, torsion })
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        let free = a.free.iter().map(|x| -x).collect();
        let torsion = a.torsion.iter().map(|x| -x).collect();
        self.reduce(GroupElement { free, torsion })
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: &BigInt, a: &GroupElement) -> GroupElement {
        let free = a.free.iter().map(|x| k * x).collect();
        let torsion = a.torsion.iter().map(|x| k * x).collect();
        self.reduce(GroupElement { free, torsion })
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a GroupElement>) -> GroupElement {
        items.into_iter().fold(self.zero(), |acc, g| self.add(&acc, g))
    }

    /// Rewrites the free coordinates so that the free projection equals
    /// `target`, which must differ from the current one by a unimodular
    /// change of basis.
    pub fn with_free_basis(&self, target: &IntMatrix) -> Result<FgAbGroup> {
        if target.rows() != self.free_rank || target.cols() != self.source_dim() {
            return Err(Error::Dimension(format!(
                "degree matrix must be {}x{}",
                self.free_rank,
                self.source_dim()
            )));
        }
        let inv = right_inverse(&self.free_proj)
            .ok_or_else(|| Error::Invalid("free projection is not surjective".into()))?;
        let g = target.mul(&inv)?;
        let recomposed = g.mul(&self.free_proj)?;
        if &recomposed != target || !g.det()?.abs().is_one() {
            return Err(Error::Invalid(
                "degree matrix is not a unimodular change of the free basis".into(),
            ));
        }
        Ok(FgAbGroup { free_proj: target.clone(), ..self.clone() })
    }

    /// The group `Z^cols / (row space of p)` with a prescribed projection,
    /// e.g. a published degree matrix. Fails unless the projection kills the
    /// rows of `p`, is surjective and the invariants match.
    pub fn presented(p: &IntMatrix, free_proj: IntMatrix, torsion: Vec<BigInt>, torsion_proj: IntMatrix) -> Result<FgAbGroup> {
        let canonical = FgAbGroup::cokernel(p);
        let n = p.cols();
        if free_proj.cols() != n || torsion_proj.cols() != n || torsion_proj.rows() != torsion.len() {
            return Err(Error::Dimension("projection blocks must have one column per coordinate".into()));
        }
        if free_proj.rows() != canonical.free_rank || torsion != canonical.torsion {
            return Err(Error::Invalid(format!("presentation does not match the invariants {canonical}")));
        }
        let mut torsion_proj = torsion_proj;
        for (k, d) in torsion.iter().enumerate() {
            for j in 0..n {
                let x = torsion_proj[(k, j)].mod_floor(d);
                torsion_proj[(k, j)] = x;
            }
        }
        let g = FgAbGroup { free_rank: free_proj.rows(), torsion, free_proj, torsion_proj };
        for i in 0..p.rows() {
            if g.project(p.row(i)) != g.zero() {
                return Err(Error::Invalid("projection does not vanish on the relations".into()));
            }
        }
        if Subgroup::generated(&g, &g.basis_images())? != Subgroup::whole(&g) {
            return Err(Error::Invalid("projection is not surjective".into()));
        }
        Ok(g)
    }

    /// Sublattice of `Z^{k+t}` whose quotient is this group.
    fn relation_rows(&self) -> Vec<Vec<BigInt>> {
        let dim = self.free_rank + self.torsion.len();
        self.torsion
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let mut v = vec![BigInt::zero(); dim];
                v[self.free_rank + i] = d.clone();
                v
            })
            .collect()
    }

    /// Order of an element, `None` when it has infinite order.
    pub fn order(&self, g: &GroupElement) -> Option<BigInt> {
        if !g.is_torsion() {
            return None;
        }
        Some(g.torsion.iter().zip(&self.torsion).fold(BigInt::one(), |acc, (x, d)| {
            acc.lcm(&(d / x.gcd(d)))
        }))
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// A subgroup of an [`FgAbGroup`], stored as the Hermite basis of its
/// preimage in `Z^{k+t}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    ambient: FgAbGroup,
    lattice: IntMatrix,
}

impl Subgroup {
    pub fn generated(ambient: &FgAbGroup, gens: &[GroupElement]) -> Result<Subgroup> {
        let dim = ambient.free_rank + ambient.torsion.len();
        let mut rows = ambient.relation_rows();
        for g in gens {
            ambient.check(g)?;
            rows.push(g.lift());
        }
        let m = IntMatrix::from_rows(dim, rows)?;
        let lattice = if m.rows() == 0 { m } else { hermite_basis(&m) };
        Ok(Subgroup { ambient: ambient.clone(), lattice })
    }

    pub fn whole(ambient: &FgAbGroup) -> Subgroup {
        let dim = ambient.free_rank + ambient.torsion.len();
        Subgroup { ambient: ambient.clone(), lattice: IntMatrix::identity(dim) }
    }

    pub fn trivial(ambient: &FgAbGroup) -> Subgroup {
        Subgroup::generated(ambient, &[]).expect("no generators to check")
    }

    pub fn ambient(&self) -> &FgAbGroup {
        &self.ambient
    }

    fn same_ambient(&self, other: &Subgroup) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::MismatchedAmbient("subgroups of different groups".into()));
        }
        Ok(())
    }

    pub fn member(&self, g: &GroupElement) -> Result<bool> {
        self.ambient.check(g)?;
        Ok(echelon_coordinates(&self.lattice, &g.lift()).is_some())
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> Result<bool> {
        self.same_ambient(other)?;
        Ok((0..other.lattice.rows()).all(|i| echelon_coordinates(&self.lattice, other.lattice.row(i)).is_some()))
    }

    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        self.same_ambient(other)?;
        let dim = self.lattice.cols();
        let (a, b) = (&self.lattice, &other.lattice);
        if a.rows() == 0 || b.rows() == 0 {
            return Ok(Subgroup { ambient: self.ambient.clone(), lattice: IntMatrix::zeros(0, dim) });
        }
        let mut neg_b = b.clone();
        for i in 0..neg_b.rows() {
            neg_b.negate_row(i);
        }
        let stacked = a.vstack(&neg_b)?;
        let kernel = left_kernel_basis(&stacked);
        let mut rows = Vec::new();
        for i in 0..kernel.rows() {
            let x = &kernel.row(i)[..a.rows()];
            rows.push(a.vec_mul(x));
        }
        let m = IntMatrix::from_rows(dim, rows)?;
        let lattice = if m.rows() == 0 { m } else { hermite_basis(&m) };
        Ok(Subgroup { ambient: self.ambient.clone(), lattice })
    }

    /// Index in the ambient group, `None` when infinite.
    pub fn index(&self) -> Option<BigInt> {
        let dim = self.lattice.cols();
        if self.lattice.rows() < dim {
            return None;
        }
        let mut prod = BigInt::one();
        for i in 0..dim {
            prod *= &self.lattice[(i, i)];
        }
        Some(prod.abs())
    }

    /// Nonzero generators read off the Hermite basis.
    pub fn generators(&self) -> Vec<GroupElement> {
        let k = self.ambient.free_rank;
        (0..self.lattice.rows())
            .map(|i| {
                let row = self.lattice.row(i);
                self.ambient.reduce(GroupElement { free: row[..k].to_vec(), torsion: row[k..].to_vec() })
            })
            .filter(|g| g.free.iter().chain(&g.torsion).any(|x| !x.is_zero()))
            .collect()
    }

    /// Smallest `k >= 1` with `k * g` in the subgroup.
    pub fn divisibility_index(&self, g: &GroupElement) -> Result<Option<BigInt>> {
        divisibility_index(g, self)
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators().iter().map(ToString::to_string).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

/// Smallest `k >= 1` with `k * g ∈ h`, or `None` when no multiple lies in `h`.
pub fn divisibility_index(g: &GroupElement, h: &Subgroup) -> Result<Option<BigInt>> {
    h.ambient.check(g)?;
    let dim = h.lattice.cols();
    if h.lattice.rows() == 0 {
        let zero = g.lift().iter().all(Zero::is_zero);
        return Ok(if zero { Some(BigInt::one()) } else { None });
    }
    let smith = smith_decompose(&h.lattice);
    let factors = smith.invariant_factors();
    let coords = smith.v.transpose().mul_vec(&g.lift());
    let mut k = BigInt::one();
    for (i, c) in coords.iter().enumerate().take(dim) {
        match factors.get(i) {
            Some(d) => {
                let r = c.mod_floor(d);
                k = k.lcm(&(d / r.gcd(d)));
            }
            None => {
                if !c.is_zero() {
                    return Ok(None);
                }
            }
        }
    }
    Ok(Some(k))
}
