//! Defining data of explicit T-varieties and general arrangement varieties:
//! validation, assembly of the generator matrix `P`, relations and the
//! degree map.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{
    content, echelon_coordinates, hermite_basis, hermite_decompose, kernel_basis, primitive_from_rational,
    smith_decompose, FgAbGroup, GroupElement, IntMatrix, RatMatrix,
};

/// Bookkeeping of the variables `T_ij` (grouped in blocks `i = 0..=r`) and
/// the free variables `S_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarLayout {
    n: Vec<usize>,
    m: usize,
    offsets: Vec<usize>,
}

impl VarLayout {
    pub fn new(n: Vec<usize>, m: usize) -> VarLayout {
        let mut offsets = Vec::with_capacity(n.len());
        let mut acc = 0;
        for &ni in &n {
            offsets.push(acc);
            acc += ni;
        }
        VarLayout { n, m, offsets }
    }

    /// Block sizes `n_0, …, n_r`.
    pub fn n(&self) -> &[usize] {
        &self.n
    }

    pub fn blocks(&self) -> usize {
        self.n.len()
    }

    /// Number of free variables.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of block variables `n = n_0 + … + n_r`.
    pub fn n_total(&self) -> usize {
        self.n.iter().sum()
    }

    /// Total number of variables `n + m`.
    pub fn len(&self) -> usize {
        self.n_total() + self.m
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Coordinate of `T_ij` with `j` counted from zero.
    pub fn index(&self, i: usize, j: usize) -> usize {
        self.offsets[i] + j
    }

    /// Coordinate of `S_k` with `k` counted from zero.
    pub fn free_index(&self, k: usize) -> usize {
        self.n_total() + k
    }

    /// Coordinates of block `i`.
    pub fn block(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i] + self.n[i]
    }

    /// `Some((i, j))` for a block coordinate, `None` for a free one.
    pub fn locate(&self, q: usize) -> Option<(usize, usize)> {
        if q >= self.n_total() {
            return None;
        }
        let i = self.offsets.iter().rposition(|&o| o <= q).expect("offsets start at zero");
        Some((i, q - self.offsets[i]))
    }

    /// Human-readable variable name (`T01`, `T3_12`, `S1`, …).
    pub fn name(&self, q: usize) -> String {
        match self.locate(q) {
            Some((i, j)) if i < 10 && j < 9 => format!("T{}{}", i, j + 1),
            Some((i, j)) => format!("T{}_{}", i, j + 1),
            None => format!("S{}", q - self.n_total() + 1),
        }
    }
}

/// One term `coeff * T^exponents` of a relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: BigRational,
    pub exponents: Vec<u32>,
}

/// A polynomial relation stored symbolically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub terms: Vec<Term>,
    /// Coefficients over the blocks `0..=r` for arrangement relations.
    pub block_coefficients: Option<Vec<BigRational>>,
}

impl Relation {
    pub fn new(terms: Vec<Term>) -> Relation {
        Relation { terms, block_coefficients: None }
    }

    /// Evaluates the relation at a rational point.
    pub fn eval(&self, z: &[BigRational]) -> BigRational {
        self.terms
            .iter()
            .map(|t| {
                let mut v = t.coeff.clone();
                for (x, &e) in z.iter().zip(&t.exponents) {
                    if e > 0 {
                        v *= num_traits::pow(x.clone(), e as usize);
                    }
                }
                v
            })
            .sum()
    }

    /// Formal partial derivative evaluated at a rational point.
    pub fn partial(&self, q: usize, z: &[BigRational]) -> BigRational {
        self.terms
            .iter()
            .filter(|t| t.exponents[q] > 0)
            .map(|t| {
                let mut v = &t.coeff * BigRational::from_integer(t.exponents[q].into());
                for (p, (x, &e)) in z.iter().zip(&t.exponents).enumerate() {
                    let e = if p == q { e - 1 } else { e };
                    if e > 0 {
                        v *= num_traits::pow(x.clone(), e as usize);
                    }
                }
                v
            })
            .sum()
    }

    /// Variables occurring in the relation.
    pub fn support(&self) -> BTreeSet<usize> {
        self.terms.iter().flat_map(|t| t.exponents.iter().enumerate().filter(|(_, &e)| e > 0).map(|(q, _)| q)).collect()
    }

    pub fn display(&self, layout: &VarLayout) -> String {
        let mut out = String::new();
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let abs = t.coeff.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = t
                .exponents
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(q, &e)| if e == 1 { layout.name(q) } else { format!("{}^{}", layout.name(q), e) })
                .collect();
            if !abs.is_one() || mono.is_empty() {
                out.push_str(&abs.to_string());
                if !mono.is_empty() {
                    out.push('*');
                }
            }
            out.push_str(&mono.join("*"));
        }
        out
    }
}

/// Data `(c, l, m, A, d)` of a general arrangement variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrangementSpec {
    c: usize,
    l: Vec<Vec<u32>>,
    layout: VarLayout,
    a: RatMatrix,
    d: IntMatrix,
    p: IntMatrix,
}

/// Generator matrix `P₀` with rows `[-l_0, l_i]` and zero free columns.
pub fn build_p0(l: &[Vec<u32>], m: usize) -> IntMatrix {
    let layout = VarLayout::new(l.iter().map(Vec::len).collect(), m);
    let r = l.len().saturating_sub(1);
    let mut p0 = IntMatrix::zeros(r, layout.len());
    for i in 1..=r {
        for (j, &x) in l[0].iter().enumerate() {
            p0[(i - 1, layout.index(0, j))] = -BigInt::from(x);
        }
        for (j, &x) in l[i].iter().enumerate() {
            p0[(i - 1, layout.index(i, j))] = BigInt::from(x);
        }
    }
    p0
}

fn check_p_columns(p: &IntMatrix, layout: &VarLayout) -> Result<()> {
    let mut seen = BTreeSet::new();
    for q in 0..p.cols() {
        let col = p.col(q);
        if !content(&col).is_one() {
            return Err(Error::InvalidPColumn(format!("column {} ({}) is not primitive", q, layout.name(q))));
        }
        if !seen.insert(col) {
            return Err(Error::InvalidPColumn(format!("column {} ({}) is repeated", q, layout.name(q))));
        }
    }
    if p.rank() != p.rows() {
        return Err(Error::PNotFullRank);
    }
    Ok(())
}

/// Kernel vector of a `(c+1) x (c+2)` matrix by signed maximal minors.
fn cross_product(a: &RatMatrix) -> Result<Vec<BigRational>> {
    let k = a.cols();
    (0..k)
        .map(|j| {
            let cols: Vec<usize> = (0..k).filter(|&x| x != j).collect();
            let det = a.select_cols(&cols).det()?;
            Ok(if j % 2 == 0 { det } else { -det })
        })
        .collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Checks that any `c+1` columns of `A` are linearly independent.
pub fn check_general_position(a: &RatMatrix) -> Result<()> {
    let k = a.rows();
    if k > a.cols() {
        return Err(Error::NotGeneralPosition("A has more rows than columns".into()));
    }
    for cols in combinations(a.cols(), k) {
        if a.select_cols(&cols).det()?.is_zero() {
            return Err(Error::NotGeneralPosition(format!("columns {cols:?} are dependent")));
        }
    }
    Ok(())
}

/// The `r - c` relations `g_t = det[[a_0 … a_c, a_{c+t}], [T_0^{l_0} … T_{c+t}^{l_{c+t}}]]`,
/// scaled so that the coefficient of `T_{c+t}^{l_{c+t}}` is one.
pub fn arrangement_relations(a: &RatMatrix, l: &[Vec<u32>], m: usize) -> Result<Vec<Relation>> {
    check_general_position(a)?;
    let c = a.rows() - 1;
    let r = a.cols() - 1;
    if l.len() != r + 1 {
        return Err(Error::Dimension(format!("A has {} columns but there are {} exponent blocks", r + 1, l.len())));
    }
    let layout = VarLayout::new(l.iter().map(Vec::len).collect(), m);
    let mut out = Vec::new();
    for t in 1..=r - c {
        let mut idx: Vec<usize> = (0..=c).collect();
        idx.push(c + t);
        let kappa = cross_product(&a.select_cols(&idx))?;
        let last = kappa[c + 1].clone();
        let mut coeffs = vec![BigRational::zero(); r + 1];
        let mut terms = Vec::new();
        for (pos, &i) in idx.iter().enumerate() {
            let coeff = &kappa[pos] / &last;
            let mut exponents = vec![0u32; layout.len()];
            for (j, &e) in l[i].iter().enumerate() {
                exponents[layout.index(i, j)] = e;
            }
            coeffs[i] = coeff.clone();
            terms.push(Term { coeff, exponents });
        }
        out.push(Relation { terms, block_coefficients: Some(coeffs) });
    }
    Ok(out)
}

/// Rational matrix whose rows span the orthogonal complement of the span of
/// `kernel_vectors`; its kernel is that span.
pub fn a_from_kernel(kernel_vectors: &[Vec<BigRational>]) -> Result<RatMatrix> {
    let cols = kernel_vectors.first().map(Vec::len).ok_or_else(|| Error::Invalid("no kernel vectors".into()))?;
    let ints: Vec<Vec<BigInt>> = kernel_vectors.iter().map(|v| primitive_from_rational(v)).collect();
    let k = IntMatrix::from_rows(cols, ints)?;
    let perp = kernel_basis(&k);
    let rows = perp
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(BigRational::from_integer).collect())
        .collect();
    RatMatrix::from_rows(cols, rows)
}

impl ArrangementSpec {
    /// Validates the data and assembles `P = [P₀; d]`.
    pub fn new(c: usize, l: Vec<Vec<u32>>, m: usize, a: RatMatrix, d: IntMatrix) -> Result<ArrangementSpec> {
        if l.is_empty() {
            return Err(Error::Invalid("at least one exponent block is required".into()));
        }
        let r = l.len() - 1;
        if c < 1 || r < c {
            return Err(Error::Invalid(format!("need 1 <= c <= r, got c = {c}, r = {r}")));
        }
        if l.iter().any(|b| b.is_empty() || b.contains(&0)) {
            return Err(Error::Invalid("exponent blocks must be non-empty tuples of positive integers".into()));
        }
        if a.rows() != c + 1 || a.cols() != r + 1 {
            return Err(Error::Dimension(format!(
                "A must be {}x{}, got {}x{}",
                c + 1,
                r + 1,
                a.rows(),
                a.cols()
            )));
        }
        check_general_position(&a)?;
        let layout = VarLayout::new(l.iter().map(Vec::len).collect(), m);
        let s = d.rows();
        if d.cols() != layout.len() {
            return Err(Error::Dimension(format!("d must have {} columns, got {}", layout.len(), d.cols())));
        }
        if s < 1 || s + r > layout.len() {
            return Err(Error::Invalid(format!("need 1 <= s <= n+m-r, got s = {s}")));
        }
        let p = build_p0(&l, m).vstack(&d)?;
        check_p_columns(&p, &layout)?;
        Ok(ArrangementSpec { c, l, layout, a, d, p })
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn r(&self) -> usize {
        self.l.len() - 1
    }

    pub fn s(&self) -> usize {
        self.d.rows()
    }

    pub fn m(&self) -> usize {
        self.layout.m()
    }

    pub fn n(&self) -> &[usize] {
        self.layout.n()
    }

    pub fn l(&self) -> &[Vec<u32>] {
        &self.l
    }

    pub fn a(&self) -> &RatMatrix {
        &self.a
    }

    pub fn d(&self) -> &IntMatrix {
        &self.d
    }

    pub fn layout(&self) -> &VarLayout {
        &self.layout
    }

    pub fn p(&self) -> &IntMatrix {
        &self.p
    }

    /// Exponent `l_ij` of the variable at coordinate `q` (one for free variables).
    pub fn exponent(&self, q: usize) -> u32 {
        match self.layout.locate(q) {
            Some((i, j)) => self.l[i][j],
            None => 1,
        }
    }

    pub fn relations(&self) -> Vec<Relation> {
        arrangement_relations(&self.a, &self.l, self.layout.m()).expect("validated at construction")
    }

    /// True iff `l_i1 + … + l_in_i >= 2` for every block.
    pub fn is_irredundant(&self) -> bool {
        is_irredundant(&self.l)
    }

    /// Adds a free variable with the degree of the free variable `k`.
    pub fn duplicate_free(&self, k: usize) -> Result<ArrangementSpec> {
        if k >= self.layout.m() {
            return Err(Error::Invalid(format!("S{} is not a free variable", k + 1)));
        }
        let old = self.layout.len();
        let mut d = self.d.hstack(&IntMatrix::zeros(self.d.rows(), 1))?;
        let mut row = vec![BigInt::zero(); old + 1];
        row[self.layout.free_index(k)] = BigInt::one();
        row[old] = -BigInt::one();
        d = d.vstack(&IntMatrix::from_rows(old + 1, vec![row])?)?;
        ArrangementSpec::new(self.c, self.l.clone(), self.layout.m() + 1, self.a.clone(), d)
    }
}

/// True iff `l_i1 + … + l_in_i >= 2` for every block.
pub fn is_irredundant(l: &[Vec<u32>]) -> bool {
    l.iter().all(|b| b.iter().sum::<u32>() >= 2)
}

/// Data of Construction-style explicit T-varieties that need not be of
/// arrangement shape: a generator matrix with a quotient part of `t` rows
/// and arbitrary relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralSpec {
    layout: VarLayout,
    t: usize,
    p: IntMatrix,
    relations: Vec<Relation>,
}

impl GeneralSpec {
    pub fn new(layout: VarLayout, t: usize, p: IntMatrix, relations: Vec<Relation>) -> Result<GeneralSpec> {
        if p.cols() != layout.len() {
            return Err(Error::Dimension(format!("P must have {} columns", layout.len())));
        }
        if t > p.rows() {
            return Err(Error::Invalid("t exceeds the number of rows of P".into()));
        }
        for rel in &relations {
            if rel.terms.iter().any(|term| term.exponents.len() != layout.len()) {
                return Err(Error::Dimension("relation exponent vectors must cover every variable".into()));
            }
        }
        check_p_columns(&p, &layout)?;
        Ok(GeneralSpec { layout, t, p, relations })
    }

    /// Assembles `P` from `B`, exponents `l` and the blocks `d`, `d'`:
    /// `v_ij = (l_ij u_i, d_ij)` and `v_k = (0, d'_k)`.
    pub fn from_construction(
        b: &IntMatrix,
        l: &[Vec<u32>],
        d: &IntMatrix,
        d_free: &IntMatrix,
        relations: Vec<Relation>,
    ) -> Result<GeneralSpec> {
        if b.cols() != l.len() {
            return Err(Error::Dimension("B needs one column per exponent block".into()));
        }
        let m = d_free.cols();
        let layout = VarLayout::new(l.iter().map(Vec::len).collect(), m);
        let t = b.rows();
        let s = d.rows();
        if d.cols() != layout.n_total() || d_free.rows() != s {
            return Err(Error::Dimension("d must be s x n and d' must be s x m".into()));
        }
        let mut p = IntMatrix::zeros(t + s, layout.len());
        for (i, block) in l.iter().enumerate() {
            for (j, &e) in block.iter().enumerate() {
                let q = layout.index(i, j);
                for row in 0..t {
                    p[(row, q)] = &b[(row, i)] * BigInt::from(e);
                }
                for row in 0..s {
                    p[(t + row, q)] = d[(row, q)].clone();
                }
            }
        }
        for k in 0..m {
            for row in 0..s {
                p[(t + row, layout.free_index(k))] = d_free[(row, k)].clone();
            }
        }
        GeneralSpec::new(layout, t, p, relations)
    }

    pub fn layout(&self) -> &VarLayout {
        &self.layout
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn s(&self) -> usize {
        self.p.rows() - self.t
    }

    pub fn p(&self) -> &IntMatrix {
        &self.p
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Adds a free variable with the degree of the free variable `k`.
    pub fn duplicate_free(&self, k: usize) -> Result<GeneralSpec> {
        if k >= self.layout.m() {
            return Err(Error::Invalid(format!("S{} is not a free variable", k + 1)));
        }
        let old = self.layout.len();
        let mut p = self.p.hstack(&IntMatrix::zeros(self.p.rows(), 1))?;
        let mut row = vec![BigInt::zero(); old + 1];
        row[self.layout.free_index(k)] = BigInt::one();
        row[old] = -BigInt::one();
        p = p.vstack(&IntMatrix::from_rows(old + 1, vec![row])?)?;
        let relations = self
            .relations
            .iter()
            .map(|rel| {
                let terms = rel
                    .terms
                    .iter()
                    .map(|t| {
                        let mut exponents = t.exponents.clone();
                        exponents.push(0);
                        Term { coeff: t.coeff.clone(), exponents }
                    })
                    .collect();
                Relation { terms, block_coefficients: rel.block_coefficients.clone() }
            })
            .collect();
        GeneralSpec::new(VarLayout::new(self.layout.n().to_vec(), self.layout.m() + 1), self.t, p, relations)
    }
}

/// Either kind of defining data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarSpec {
    Arrangement(ArrangementSpec),
    General(GeneralSpec),
}

impl VarSpec {
    pub fn p(&self) -> &IntMatrix {
        match self {
            VarSpec::Arrangement(a) => a.p(),
            VarSpec::General(g) => g.p(),
        }
    }

    pub fn layout(&self) -> &VarLayout {
        match self {
            VarSpec::Arrangement(a) => a.layout(),
            VarSpec::General(g) => g.layout(),
        }
    }

    pub fn relations(&self) -> Vec<Relation> {
        match self {
            VarSpec::Arrangement(a) => a.relations(),
            VarSpec::General(g) => g.relations().to_vec(),
        }
    }

    /// Number of rows of the quotient part of `P`.
    pub fn t(&self) -> usize {
        match self {
            VarSpec::Arrangement(a) => a.r(),
            VarSpec::General(g) => g.t(),
        }
    }

    pub fn s(&self) -> usize {
        match self {
            VarSpec::Arrangement(a) => a.s(),
            VarSpec::General(g) => g.s(),
        }
    }

    /// Complexity of the torus action.
    pub fn complexity(&self) -> usize {
        match self {
            VarSpec::Arrangement(a) => a.c(),
            VarSpec::General(g) => g.t() - g.relations().len(),
        }
    }

    pub fn as_arrangement(&self) -> Option<&ArrangementSpec> {
        match self {
            VarSpec::Arrangement(a) => Some(a),
            VarSpec::General(_) => None,
        }
    }
}

impl From<ArrangementSpec> for VarSpec {
    fn from(a: ArrangementSpec) -> Self {
        VarSpec::Arrangement(a)
    }
}

impl From<GeneralSpec> for VarSpec {
    fn from(g: GeneralSpec) -> Self {
        VarSpec::General(g)
    }
}

/// `P` of either kind of spec.
pub fn build_p(spec: &VarSpec) -> IntMatrix {
    spec.p().clone()
}

/// Class group `K`, generator degrees and the common relation degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeData {
    pub group: FgAbGroup,
    pub weights: Vec<GroupElement>,
    pub mu: Option<GroupElement>,
}

/// Degree of every relation, checking that each relation is homogeneous.
pub fn relation_degrees(group: &FgAbGroup, relations: &[Relation]) -> Result<Vec<GroupElement>> {
    relations
        .iter()
        .enumerate()
        .map(|(t, rel)| {
            let mut deg: Option<GroupElement> = None;
            for term in &rel.terms {
                let e: Vec<BigInt> = term.exponents.iter().map(|&x| BigInt::from(x)).collect();
                let g = group.project(&e);
                match &deg {
                    None => deg = Some(g),
                    Some(d) if *d != g => {
                        return Err(Error::InconsistentDegrees(format!("relation {} is not homogeneous", t + 1)));
                    }
                    _ => {}
                }
            }
            deg.ok_or_else(|| Error::Invalid(format!("relation {} has no terms", t + 1)))
        })
        .collect()
}

/// `K = Z^{n+m} / im(Pᵀ)`, the degrees `Q(e_q)` and the common degree `μ`
/// of the relations.
pub fn degree_data(spec: &VarSpec) -> Result<DegreeData> {
    let group = FgAbGroup::cokernel(spec.p());
    degree_data_in(spec, group)
}

/// As [`degree_data`], but in a given presentation of `K`.
pub fn degree_data_in(spec: &VarSpec, group: FgAbGroup) -> Result<DegreeData> {
    let weights = group.basis_images();
    let mu = match spec {
        VarSpec::Arrangement(a) => {
            let layout = a.layout();
            let mut mu: Option<GroupElement> = None;
            for i in 0..=a.r() {
                let block_deg = group.sum(
                    &layout
                        .block(i)
                        .map(|q| group.scale(&BigInt::from(a.exponent(q)), &weights[q]))
                        .collect::<Vec<_>>(),
                );
                match &mu {
                    None => mu = Some(block_deg),
                    Some(x) if *x != block_deg => {
                        return Err(Error::InconsistentDegrees(format!("block {i} has a different degree")));
                    }
                    _ => {}
                }
            }
            mu
        }
        VarSpec::General(g) => {
            if g.relations().is_empty() {
                None
            } else {
                let degs = relation_degrees(&group, g.relations())?;
                if degs.iter().all(|d| *d == degs[0]) {
                    Some(degs[0].clone())
                } else {
                    None
                }
            }
        }
    };
    Ok(DegreeData { group, weights, mu })
}

/// Completes the rows of `P₀` to a lattice basis of `ker(Q)`, producing an
/// arrangement spec whose class group is the image of `Q`.
pub fn complete_p_from_q(q: &IntMatrix, l: &[Vec<u32>], m: usize, a: RatMatrix) -> Result<ArrangementSpec> {
    let p0 = build_p0(l, m);
    if q.cols() != p0.cols() {
        return Err(Error::Dimension(format!("Q must have {} columns", p0.cols())));
    }
    if !q.mul(&p0.transpose())?.is_zero() {
        return Err(Error::IncompatibleDegreeMatrix);
    }
    let kb = kernel_basis(q);
    let r = p0.rows();
    if kb.rows() <= r {
        return Err(Error::Invalid("ker(Q) leaves no room for a d-block".into()));
    }
    let s = kb.rows() - r;
    let coords: Vec<Vec<BigInt>> = (0..r)
        .map(|i| echelon_coordinates(&kb, p0.row(i)).expect("rows of P₀ lie in ker(Q)"))
        .collect();
    let cmat = IntMatrix::from_rows(kb.rows(), coords)?;
    let smith = smith_decompose(&cmat);
    let factors = smith.invariant_factors();
    if factors.len() != r || factors.iter().any(|f| !f.is_one()) {
        return Err(Error::Invalid("the rows of P₀ are not saturated in ker(Q)".into()));
    }
    let (_, v_inv) = hermite_decompose(&smith.v);
    let tail: Vec<usize> = (r..kb.rows()).collect();
    let d_coords = v_inv.select_rows(&tail);
    let d = hermite_basis(&d_coords.mul(&kb)?);
    debug_assert_eq!(d.rows(), s);
    let c = a.rows().checked_sub(1).ok_or_else(|| Error::Invalid("A has no rows".into()))?;
    ArrangementSpec::new(c, l.to_vec(), m, a, d)
}

impl fmt::Display for ArrangementSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "arrangement spec c={} r={} n={:?} m={} P={}", self.c, self.r(), self.n(), self.m(), self.p)
    }
}
