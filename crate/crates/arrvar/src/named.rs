//! Constructors for the named example varieties used throughout the tests,
//! the command line tool and the acceptance harness.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::Result;
use crate::geometry::VarietyModel;
use crate::lattice::{FgAbGroup, GroupElement, IntMatrix, RatMatrix};
use crate::varspec::{a_from_kernel, complete_p_from_q, ArrangementSpec, GeneralSpec, Relation, Term, VarLayout, VarSpec};

fn m(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

fn rm(rows: &[&[i64]]) -> RatMatrix {
    RatMatrix::from_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

/// The K*-surface with relation `T01^3 T02 + T11^3 + T21^2`.
pub fn e6_surface() -> Result<ArrangementSpec> {
    ArrangementSpec::new(1, vec![vec![3, 1], vec![3], vec![2]], 1, rm(&[&[1, 0, -1], &[0, 1, -1]]), m(&[&[-2, -1, 1, 1, 1]]))
}

/// Model of the K*-surface at the sum of all generator degrees.
pub fn e6_model() -> Result<VarietyModel> {
    let spec: VarSpec = e6_surface()?.into();
    let g = FgAbGroup::cokernel(spec.p());
    let u = g.project(&vec![BigInt::one(); spec.layout().len()]);
    VarietyModel::with_group(spec, g, u)
}

/// The threefold with relation `T01 T02^2 + T11^2 + T21^2 + T31^4`.
pub fn gorenstein_threefold() -> Result<ArrangementSpec> {
    ArrangementSpec::new(
        2,
        vec![vec![1, 2], vec![2], vec![2], vec![4]],
        0,
        rm(&[&[1, 0, 0, -1], &[0, 1, 0, -1], &[0, 0, 1, -1]]),
        m(&[&[-1, -3, 1, 1, 1]]),
    )
}

/// Class group presentation of the threefold with the published degree matrix
/// `[[2,1,2,2,1],[0,0,1,1,0],[0,1,0,1,0]]` in `Z ⊕ Z/2 ⊕ Z/2`.
pub fn gorenstein_threefold_group(spec: &ArrangementSpec) -> Result<FgAbGroup> {
    FgAbGroup::presented(
        spec.p(),
        m(&[&[2, 1, 2, 2, 1]]),
        vec![BigInt::from(2), BigInt::from(2)],
        m(&[&[0, 0, 1, 1, 0], &[0, 1, 0, 1, 0]]),
    )
}

/// Model of the threefold at the ample class `(2, 0̄, 0̄)`.
pub fn gorenstein_threefold_model() -> Result<VarietyModel> {
    let spec = gorenstein_threefold()?;
    let g = gorenstein_threefold_group(&spec)?;
    VarietyModel::with_group(spec.into(), g, GroupElement::from_i64(&[2], &[0, 0]))
}

fn term(coeff: i64, exponents: &[u32]) -> Term {
    Term { coeff: BigRational::from_integer(coeff.into()), exponents: exponents.to_vec() }
}

/// The fourfold over `P1 x P1` with relations
/// `T41^2 - T01 T31 + T11 T21` and `T51 T52^2 - T01 T21 + T11 T31`.
pub fn genconstrex() -> Result<GeneralSpec> {
    let p = m(&[
        &[-1, 1, 0, 0, 0, 0, 0, 0],
        &[0, 0, -1, 1, 0, 0, 0, 0],
        &[-1, 0, -1, 0, 2, 0, 0, 0],
        &[-1, 0, -1, 0, 0, 1, 2, 0],
        &[-1, -1, 1, 1, -1, 1, -1, -1],
        &[0, 1, 0, 1, 0, 1, 2, -1],
    ]);
    let g1 = Relation::new(vec![
        term(1, &[0, 0, 0, 0, 2, 0, 0, 0]),
        term(-1, &[1, 0, 0, 1, 0, 0, 0, 0]),
        term(1, &[0, 1, 1, 0, 0, 0, 0, 0]),
    ]);
    let g2 = Relation::new(vec![
        term(1, &[0, 0, 0, 0, 0, 1, 2, 0]),
        term(-1, &[1, 0, 1, 0, 0, 0, 0, 0]),
        term(1, &[0, 1, 0, 1, 0, 0, 0, 0]),
    ]);
    GeneralSpec::new(VarLayout::new(vec![1, 1, 1, 1, 1, 2], 1), 4, p, vec![g1, g2])
}

/// Free coordinates on the class group of the fourfold in which the
/// published class `(8,-4)` lies in the chamber of the anticanonical class.
pub fn genconstrex_degree_basis() -> IntMatrix {
    m(&[&[0, 0, 6, 6, 3, 4, 1, 12], &[-1, -1, -1, -1, -1, -4, 1, -4]])
}

pub fn genconstrex_model() -> Result<VarietyModel> {
    VarietyModel::with_degree_basis(genconstrex()?.into(), &genconstrex_degree_basis(), GroupElement::from_i64(&[8, -4], &[]))
}

/// Vandermonde matrix with nodes `0..=r`; any `c+1` columns are independent.
pub fn vandermonde(c: usize, r: usize) -> RatMatrix {
    let rows = (0..=c)
        .map(|k| (0..=r).map(|i| BigRational::from_integer(BigInt::from(i).pow(k as u32))).collect())
        .collect();
    RatMatrix::from_rows(r + 1, rows).expect("rectangular")
}

/// The complete intersection of `r-c` divisors of bidegree `(a,b)` in
/// `P_r x P_r` with degree basis `T_i1 ↦ e1`, `T_i2 ↦ e2`.
pub fn pr_times_pr(r: usize, c: usize, a: u32, b: u32) -> Result<VarietyModel> {
    let (u, v) = bezout_pair(a as i64, b as i64);
    let len = 2 * (r + 1);
    let mut d = IntMatrix::zeros(r, len);
    for i in 1..=r {
        d[(i - 1, 0)] = BigInt::from(-v);
        d[(i - 1, 1)] = BigInt::from(-u);
        d[(i - 1, 2 * i)] = BigInt::from(v);
        d[(i - 1, 2 * i + 1)] = BigInt::from(u);
    }
    let spec = ArrangementSpec::new(c, vec![vec![a, b]; r + 1], 0, vandermonde(c, r), d)?;
    let mut q = IntMatrix::zeros(2, len);
    for i in 0..=r {
        q[(0, 2 * i)] = BigInt::one();
        q[(1, 2 * i + 1)] = BigInt::one();
    }
    VarietyModel::with_degree_basis(spec.into(), &q, GroupElement::from_i64(&[1, 1], &[]))
}

/// Integers `(u, v)` with `u a - v b = 1`.
fn bezout_pair(a: i64, b: i64) -> (i64, i64) {
    use num_integer::Integer;
    let e = a.extended_gcd(&b);
    assert_eq!(e.gcd, 1, "a and b must be coprime");
    (e.x, -e.y)
}

/// The quadric `V(T0^2 + T1T2 + T3T4 + T5T6)` in `P6`.
pub fn intro_quadric() -> Result<VarietyModel> {
    let a = a_from_kernel(&[vec![BigRational::one(); 4]])?;
    let q = IntMatrix::from_i64(&[vec![1; 7]]);
    let spec = complete_p_from_q(&q, &[vec![2], vec![1, 1], vec![1, 1], vec![1, 1]], 0, a)?;
    VarietyModel::with_degree_basis(spec.into(), &q, GroupElement::from_i64(&[1], &[]))
}

/// The ring `T1T2 + T3^2T4 + T5^2T6 + T7^2T8` with `m` free variables of
/// degree `(1,0)` and parameter `b`.
pub fn section_six_ring(b: i64, free: usize) -> Result<VarietyModel> {
    let mut top = vec![0, 2 * b + 1, b, 1, b, 1, b, 1];
    let mut bottom = vec![1, 1, 1, 0, 1, 0, 1, 0];
    top.extend(std::iter::repeat(1).take(free));
    bottom.extend(std::iter::repeat(0).take(free));
    let q = IntMatrix::from_i64(&[top, bottom]);
    let a = a_from_kernel(&[vec![BigRational::one(); 4]])?;
    let spec = complete_p_from_q(&q, &[vec![1, 1], vec![2, 1], vec![2, 1], vec![2, 1]], free, a)?;
    VarietyModel::with_degree_basis(spec.into(), &q, GroupElement::from_i64(&[2 * b + 2, 1], &[]))
}
