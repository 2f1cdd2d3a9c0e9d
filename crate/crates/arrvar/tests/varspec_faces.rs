use arrvar::faces::{
    check_witness, classify_arrangement_face, classify_face_with, elementary_big_cones, finite_field_face_oracle,
    jacobian_rank, maximal_pieces, relevant_faces, witness_point, FaceClass, FaceId, OracleVerdict, Witness,
};
use arrvar::lattice::{cokernel, GroupElement, IntMatrix, RatMatrix};
use arrvar::varspec::{
    a_from_kernel, arrangement_relations, build_p0, complete_p_from_q, degree_data, degree_data_in, ArrangementSpec,
    GeneralSpec, VarSpec,
};
use arrvar::{Error, Int, Rational};
use num_traits::{One, Zero};

fn m(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

fn rm(rows: &[&[i64]]) -> RatMatrix {
    RatMatrix::from_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

fn e6() -> ArrangementSpec {
    ArrangementSpec::new(1, vec![vec![3, 1], vec![3], vec![2]], 1, rm(&[&[1, 0, -1], &[0, 1, -1]]), m(&[&[-2, -1, 1, 1, 1]]))
        .unwrap()
}

fn threefold() -> ArrangementSpec {
    ArrangementSpec::new(
        2,
        vec![vec![1, 2], vec![2], vec![2], vec![4]],
        0,
        rm(&[&[1, 0, 0, -1], &[0, 1, 0, -1], &[0, 0, 1, -1]]),
        m(&[&[-1, -3, 1, 1, 1]]),
    )
    .unwrap()
}

fn row1_q() -> IntMatrix {
    m(&[&[0, 0, 1, 1, 1, 1, 1, 1, 1], &[1, 1, 0, 1, 1, 1, 1, 1, 1]])
}

fn row1() -> ArrangementSpec {
    let a = a_from_kernel(&[vec![Rational::one(); 4]]).unwrap();
    complete_p_from_q(&row1_q(), &[vec![1, 1, 2], vec![1, 1], vec![1, 1], vec![1, 1]], 0, a).unwrap()
}

#[test]
fn e6_generator_matrix_both_constructions() {
    let expected = m(&[&[-3, -1, 3, 0, 0], &[-3, -1, 0, 2, 0], &[-2, -1, 1, 1, 1]]);
    assert_eq!(e6().p(), &expected);
    let g = GeneralSpec::from_construction(
        &m(&[&[-1, 1, 0], &[-1, 0, 1]]),
        &[vec![3, 1], vec![3], vec![2]],
        &m(&[&[-2, -1, 1, 1]]),
        &m(&[&[1]]),
        e6().relations(),
    )
    .unwrap();
    assert_eq!(g.p(), &expected);
    assert_eq!(VarSpec::from(g).complexity(), 1);
}

#[test]
fn e6_relation_text() {
    let spec = e6();
    let rels = spec.relations();
    assert_eq!(rels.len(), 1);
    assert_eq!(rels[0].display(spec.layout()), "T01^3*T02 + T11^3 + T21^2");
}

#[test]
fn threefold_matrix_relation_and_group() {
    let spec = threefold();
    assert_eq!(
        spec.p(),
        &m(&[&[-1, -2, 2, 0, 0], &[-1, -2, 0, 2, 0], &[-1, -2, 0, 0, 4], &[-1, -3, 1, 1, 1]])
    );
    let rels = spec.relations();
    assert_eq!(rels.len(), 1);
    assert_eq!(rels[0].display(spec.layout()), "T01*T02^2 + T11^2 + T21^2 + T31^4");
    let dd = degree_data(&spec.clone().into()).unwrap();
    assert_eq!(dd.group.free_rank(), 1);
    assert_eq!(dd.group.torsion(), &[Int::from(2), Int::from(2)]);
    assert!(spec.is_irredundant());
    for i in 0..spec.p().rows() {
        assert_eq!(dd.group.project(spec.p().row(i)), dd.group.zero());
    }
}

#[test]
fn duplicate_column_is_rejected() {
    let r = ArrangementSpec::new(1, vec![vec![1, 1], vec![1], vec![1]], 0, rm(&[&[1, 0, -1], &[0, 1, -1]]), m(&[&[0, 0, 0, 0]]));
    assert!(matches!(r, Err(Error::InvalidPColumn(_))));
}

#[test]
fn relations_for_two_by_five_kernel() {
    let a = rm(&[&[1, 0, 0, -1, -1], &[0, 1, 0, -1, -2], &[0, 0, 1, -1, -3]]);
    let l = vec![vec![1]; 5];
    let rels = arrangement_relations(&a, &l, 0).unwrap();
    assert_eq!(rels.len(), 2);
    for (t, rel) in rels.iter().enumerate() {
        assert_eq!(rel.terms.len(), 4);
        let k = rel.block_coefficients.as_ref().unwrap();
        assert_eq!(k.iter().filter(|x| !x.is_zero()).count(), 4);
        assert!(a.mul_vec(k).iter().all(|x| x.is_zero()));
        assert!(k[3 + t].is_one());
    }
}

#[test]
fn no_relations_when_c_equals_r() {
    let a = rm(&[&[1, 0], &[0, 1]]);
    assert!(arrangement_relations(&a, &[vec![1, 1], vec![1, 1]], 0).unwrap().is_empty());
}

#[test]
fn dependent_columns_are_rejected() {
    let a = rm(&[&[1, 2, 0, 1], &[0, 0, 1, 1], &[0, 0, 0, 1]]);
    assert!(matches!(arrangement_relations(&a, &vec![vec![1]; 4], 0), Err(Error::NotGeneralPosition(_))));
}

#[test]
fn complete_row1_and_reproduce_degrees() {
    let spec = row1();
    assert_eq!((spec.p().rows(), spec.p().cols()), (7, 9));
    let v: VarSpec = spec.clone().into();
    let g = degree_data(&v).unwrap().group.with_free_basis(&row1_q()).unwrap();
    let dd = degree_data_in(&v, g).unwrap();
    assert_eq!(dd.mu, Some(GroupElement::from_i64(&[2, 2], &[])));
    assert_eq!(dd.weights[0], GroupElement::from_i64(&[0, 1], &[]));
    assert_eq!(dd.weights[2], GroupElement::from_i64(&[1, 0], &[]));
    assert_eq!(spec.relations()[0].display(spec.layout()), "T01*T02*T03^2 + T11*T12 + T21*T22 + T31*T32");
}

#[test]
fn incompatible_degree_matrix_is_rejected() {
    let mut q = row1_q();
    q[(0, 0)] = Int::from(1);
    let a = a_from_kernel(&[vec![Rational::one(); 4]]).unwrap();
    let r = complete_p_from_q(&q, &[vec![1, 1, 2], vec![1, 1], vec![1, 1], vec![1, 1]], 0, a);
    assert!(matches!(r, Err(Error::IncompatibleDegreeMatrix)));
}

#[test]
fn complete_row14_two_relations() {
    let one = Rational::one;
    let z = Rational::zero;
    let r = |x: i64| Rational::from_integer(x.into());
    let a = a_from_kernel(&[vec![one(), one(), one(), one(), z()], vec![z(), r(2), r(3), one(), one()]]).unwrap();
    let q = m(&[&[1, 0, 1, 0, 1, 0, 1, 0, 1, 0], &[0, 1, 0, 1, 0, 1, 0, 1, 0, 1]]);
    let spec = complete_p_from_q(&q, &vec![vec![1, 1]; 5], 0, a.clone()).unwrap();
    assert_eq!((spec.c(), spec.r()), (2, 4));
    assert_eq!((spec.p().rows(), spec.p().cols()), (8, 10));
    let rels = spec.relations();
    assert_eq!(rels.len(), 2);
    for rel in &rels {
        assert!(a.mul_vec(rel.block_coefficients.as_ref().unwrap()).iter().all(|x| x.is_zero()));
    }
}

#[test]
fn irredundance() {
    assert!(threefold().is_irredundant());
    let spec = ArrangementSpec::new(1, vec![vec![1], vec![2], vec![2]], 0, rm(&[&[1, 0, -1], &[0, 1, -1]]), m(&[&[0, 1, 1]]));
    assert!(!spec.unwrap().is_irredundant());
}

#[test]
fn torsion_of_p0_injects() {
    let spec = threefold();
    let p0 = build_p0(spec.l(), spec.m());
    let t0 = cokernel(&p0.transpose()).torsion_order();
    let k = cokernel(spec.p()).torsion_order();
    assert!((&k % &t0).is_zero());
}

#[test]
fn threefold_face_types() {
    let spec = threefold();
    let sigma1 = FaceId::from_zero_set(5, &[0, 2, 3, 4]);
    assert!(classify_arrangement_face(&spec, sigma1).is_big());
    let tau4 = FaceId::from_zero_set(5, &[2, 3]);
    assert_eq!(classify_arrangement_face(&spec, tau4), FaceClass::Leaf(vec![1, 2]));
    assert_eq!(classify_arrangement_face(&spec, FaceId::full(5)), FaceClass::Leaf(vec![]));
    assert!(classify_arrangement_face(&spec, FaceId(0)).is_big());
    let not = FaceId::from_zero_set(5, &[2, 3, 4]);
    assert_eq!(classify_arrangement_face(&spec, not), FaceClass::NotXbarFace);
}

#[test]
fn threefold_relevant_maximal_pieces() {
    let spec = threefold();
    let v: VarSpec = spec.clone().into();
    let dd = degree_data(&v).unwrap();
    let u = dd.group.project(&vec![Int::one(); 5]);
    let rlv = relevant_faces(&v, &dd.weights, &u).unwrap();
    assert!(rlv.warnings.is_empty());
    let minimal = maximal_pieces(&rlv.faces);
    let mut zero_sets: Vec<Vec<usize>> = minimal.iter().map(|f| f.face.zero_set(5)).collect();
    zero_sets.sort();
    let mut expected = vec![
        vec![0, 2, 3, 4],
        vec![1, 2, 3, 4],
        vec![0, 1, 2],
        vec![0, 1, 3],
        vec![0, 1, 4],
        vec![2, 3],
        vec![2, 4],
        vec![3, 4],
    ];
    expected.sort();
    assert_eq!(zero_sets, expected);
    assert_eq!(minimal.iter().filter(|f| f.class.is_big()).count(), 2);
}

#[test]
fn elementary_big_count_row1() {
    assert_eq!(elementary_big_cones(&row1().into()).len(), 24);
}

#[test]
fn witness_equivalence_small_examples() {
    for spec in [e6(), threefold()] {
        let len = spec.layout().len();
        for s in 0..(1u64 << len) {
            let f = FaceId(s);
            let class = classify_arrangement_face(&spec, f);
            let w = witness_point(&spec, f);
            assert_eq!(class.is_xbar_face(), w.is_some(), "face {:?}", f.zero_set(len));
            if let Some(w) = w {
                assert!(check_witness(&spec, f, &w));
            }
        }
    }
}

#[test]
fn leaf_witness_is_rational_with_sign_choice() {
    let spec = threefold();
    let tau4 = FaceId::from_zero_set(5, &[2, 3]);
    match witness_point(&spec, tau4).unwrap() {
        Witness::Rational(z) => {
            assert!(spec.relations()[0].eval(&z).is_zero());
            assert_eq!(jacobian_rank(&spec.relations(), &z), 1);
        }
        other => panic!("expected rational witness, got {other:?}"),
    }
}

#[test]
fn finite_field_oracle_cases() {
    let spec = threefold();
    let rels = spec.relations();
    let v = finite_field_face_oracle(&rels, 5, FaceId(0), &[5], 1000).unwrap();
    assert!(matches!(v, OracleVerdict::Exists { .. }));
    let single = FaceId::from_nonzero(&[4]);
    let v = finite_field_face_oracle(&rels, 5, single, &[5, 7], 1000).unwrap();
    assert_eq!(v, OracleVerdict::NotFound { definite: true });
    let generic = FaceId::full(5);
    let v = finite_field_face_oracle(&rels, 5, generic, &[5], 1_000_000).unwrap();
    match v {
        OracleVerdict::Exists { prime, point } => {
            assert_eq!(prime, 5);
            assert!(point.iter().all(|&x| x != 0));
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        finite_field_face_oracle(&rels, 5, FaceId::from_nonzero(&[0, 1, 2]), &[5], 1),
        Err(Error::BudgetExceeded(_)) | Ok(_)
    ));
}

#[test]
fn general_spec_single_relation_rule() {
    let spec = threefold();
    let g = GeneralSpec::new(spec.layout().clone(), 3, spec.p().clone(), spec.relations()).unwrap();
    let v: VarSpec = g.into();
    for s in 0..32u64 {
        let f = FaceId(s);
        let verdict = classify_face_with(&v, f, &[5], 1000).unwrap();
        assert!(!verdict.heuristic);
        assert_eq!(verdict.class.is_xbar_face(), classify_arrangement_face(&spec, f).is_xbar_face());
    }
}
