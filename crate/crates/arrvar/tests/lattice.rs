use arrvar::lattice::{
    cokernel, divisibility_index, hermite_decompose, kernel_basis, smith_decompose, FgAbGroup,
    GroupElement, IntMatrix, Subgroup,
};
use arrvar::{Error, Int};
use num_traits::{One, Signed, Zero};

fn m(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

fn check_smith(a: &IntMatrix) {
    let s = smith_decompose(a);
    assert_eq!(s.u.mul(a).unwrap().mul(&s.v).unwrap(), s.d);
    assert!(s.u.det().unwrap().abs().is_one());
    assert!(s.v.det().unwrap().abs().is_one());
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            if i != j {
                assert!(s.d[(i, j)].is_zero());
            }
        }
    }
    let f = s.invariant_factors();
    for w in f.windows(2) {
        assert!((&w[1] % &w[0]).is_zero());
    }
}

#[test]
fn smith_identity() {
    let id = IntMatrix::identity(3);
    let s = smith_decompose(&id);
    assert_eq!(s.d, id);
    assert_eq!(s.u, id);
    assert_eq!(s.v, id);
}

#[test]
fn smith_diag_2_3() {
    let a = m(&[&[2, 0], &[0, 3]]);
    let s = smith_decompose(&a);
    assert_eq!(s.d, m(&[&[1, 0], &[0, 6]]));
    check_smith(&a);
}

#[test]
fn smith_e6_transpose() {
    let p = m(&[&[-3, -1, 3, 0, 0], &[-3, -1, 0, 2, 0], &[-2, -1, 1, 1, 1]]);
    let s = smith_decompose(&p.transpose());
    assert_eq!(s.invariant_factors(), vec![Int::one(), Int::one(), Int::one()]);
    check_smith(&p.transpose());
}

#[test]
fn smith_is_deterministic() {
    let a = m(&[&[4, 6, 8], &[10, -3, 7], &[0, 5, 5]]);
    assert_eq!(smith_decompose(&a), smith_decompose(&a));
    check_smith(&a);
}

#[test]
fn cokernel_of_empty_relations_is_free() {
    let g = cokernel(&IntMatrix::zeros(0, 2));
    assert_eq!(g.free_rank(), 2);
    assert!(g.torsion().is_empty());
    assert_eq!(g.projection(), IntMatrix::identity(2));
}

#[test]
fn cokernel_e6() {
    let p = m(&[&[-3, -1, 3, 0, 0], &[-3, -1, 0, 2, 0], &[-2, -1, 1, 1, 1]]);
    let g = cokernel(&p);
    assert_eq!(g.free_rank(), 2);
    assert!(g.torsion().is_empty());
    assert!(g.projection().mul(&p.transpose()).unwrap().is_zero());
}

#[test]
fn cokernel_threefold_has_two_torsion_factors() {
    let p = m(&[
        &[-1, -2, 2, 0, 0],
        &[-1, -2, 0, 2, 0],
        &[-1, -2, 0, 0, 4],
        &[-1, -3, 1, 1, 1],
    ]);
    let g = cokernel(&p);
    assert_eq!(g.free_rank(), 1);
    assert_eq!(g.torsion(), &[Int::from(2), Int::from(2)]);
    for i in 0..p.rows() {
        assert_eq!(g.project(p.row(i)), g.zero());
    }
}

#[test]
fn kernel_is_saturated() {
    let a = m(&[&[2, 4, 6]]);
    let k = kernel_basis(&a);
    assert_eq!(k.rows(), 2);
    assert!(a.mul(&k.transpose()).unwrap().is_zero());
    let s = smith_decompose(&k);
    assert!(s.invariant_factors().iter().all(|x| x.is_one()));
}

#[test]
fn hermite_form_shape() {
    let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    let (h, u) = hermite_decompose(&a);
    assert_eq!(u.mul(&a).unwrap(), h);
    assert!(u.det().unwrap().abs().is_one());
    assert!(h[(1, 0)].is_zero() && h[(2, 0)].is_zero() && h[(2, 1)].is_zero());
}

fn threefold_group() -> FgAbGroup {
    let p = m(&[
        &[-1, -2, 2, 0, 0],
        &[-1, -2, 0, 2, 0],
        &[-1, -2, 0, 0, 4],
        &[-1, -3, 1, 1, 1],
    ]);
    cokernel(&p)
}

#[test]
fn subgroup_full_generators_have_index_one() {
    let g = threefold_group();
    let h = Subgroup::generated(&g, &g.basis_images()).unwrap();
    assert_eq!(h.index(), Some(Int::one()));
    assert_eq!(h, Subgroup::whole(&g));
}

#[test]
fn subgroup_four_zero_zero_has_index_sixteen() {
    let g = threefold_group();
    let four = GroupElement::from_i64(&[4], &[0, 0]);
    let h = Subgroup::generated(&g, &[four.clone()]).unwrap();
    assert_eq!(h.index(), Some(Int::from(16)));
    assert!(h.member(&four).unwrap());
    assert!(!h.member(&GroupElement::from_i64(&[2], &[0, 0])).unwrap());
    assert!(!h.member(&GroupElement::from_i64(&[4], &[1, 0])).unwrap());
    assert_eq!(divisibility_index(&four, &h).unwrap(), Some(Int::one()));
    let two = GroupElement::from_i64(&[2], &[1, 0]);
    assert_eq!(divisibility_index(&two, &h).unwrap(), Some(Int::from(2)));
}

#[test]
fn subgroup_ambient_mismatch_is_error() {
    let g = threefold_group();
    let bad = GroupElement::from_i64(&[1, 0], &[]);
    assert!(matches!(Subgroup::generated(&g, &[bad]), Err(Error::MismatchedAmbient(_))));
    let other = FgAbGroup::free(1);
    let h1 = Subgroup::whole(&g);
    let h2 = Subgroup::whole(&other);
    assert!(h1.intersect(&h2).is_err());
}

#[test]
fn subgroup_intersection_in_z2() {
    let g = FgAbGroup::free(2);
    let a = Subgroup::generated(&g, &[GroupElement::from_i64(&[2, 0], &[]), GroupElement::from_i64(&[0, 3], &[])])
        .unwrap();
    let b = Subgroup::generated(&g, &[GroupElement::from_i64(&[3, 0], &[]), GroupElement::from_i64(&[0, 2], &[])])
        .unwrap();
    let c = a.intersect(&b).unwrap();
    assert_eq!(c.index(), Some(Int::from(36)));
    assert_eq!(c, b.intersect(&a).unwrap());
    assert!(a.contains_subgroup(&c).unwrap());
}

#[test]
fn divisibility_none_for_free_obstruction() {
    let g = FgAbGroup::free(2);
    let h = Subgroup::generated(&g, &[GroupElement::from_i64(&[1, 0], &[])]).unwrap();
    let x = GroupElement::from_i64(&[0, 1], &[]);
    assert_eq!(divisibility_index(&x, &h).unwrap(), None);
}

#[test]
fn change_of_free_basis() {
    let p = m(&[&[-3, -1, 3, 0, 0], &[-3, -1, 0, 2, 0], &[-2, -1, 1, 1, 1]]);
    let g = cokernel(&p);
    let target = g.free_projection().clone();
    let mut swapped = target.clone();
    swapped.swap_rows(0, 1);
    let h = g.with_free_basis(&swapped).unwrap();
    assert_eq!(h.free_projection(), &swapped);
    let mut doubled = target;
    for j in 0..doubled.cols() {
        let x = &doubled[(0, j)] * Int::from(2);
        doubled[(0, j)] = x;
    }
    assert!(g.with_free_basis(&doubled).is_err());
}
