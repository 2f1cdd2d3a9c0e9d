use arrvar::lattice::{big_vec, IntMatrix};
use arrvar::polyhedral::{cone_report, normal_fan, Cone};
use arrvar::Int;

fn cone(dim: usize, gens: &[&[i64]]) -> Cone {
    Cone::from_i64(dim, &gens.iter().map(|g| g.to_vec()).collect::<Vec<_>>())
}

#[test]
fn dual_of_orthant_is_orthant() {
    let c = Cone::orthant(2);
    assert_eq!(c.dual(), c);
}

#[test]
fn dual_of_ray_is_halfplane() {
    let c = cone(2, &[&[1, 0]]);
    let d = c.dual();
    assert_eq!(d, cone(2, &[&[1, 0], &[0, 1], &[0, -1]]));
    assert_eq!(d.generators(), vec![big_vec(&[0, -1]), big_vec(&[0, 1]), big_vec(&[1, 0])]);
    assert_eq!(d.dual(), c);
}

#[test]
fn dual_of_zero_cone_is_everything() {
    let z = Cone::zero(3);
    assert_eq!(z.dual(), Cone::whole_space(3));
    assert_eq!(z.dual().dim(), 3);
}

#[test]
fn reports() {
    let r = cone_report(&cone(2, &[&[1, 0], &[0, 1]]));
    assert!(r.dim == 2 && r.pointed && r.simplicial && r.regular);
    let r = cone_report(&cone(2, &[&[2, 0], &[0, 1]]));
    assert!(r.regular);
    let r = cone_report(&cone(2, &[&[1, 1], &[1, -1]]));
    assert!(r.simplicial && !r.regular);
}

#[test]
fn threefold_big_cone_is_singular() {
    // columns v01, v11, v21, v31 of the threefold's P
    let c = cone(4, &[&[-1, -1, -1, -1], &[2, 0, 0, 1], &[0, 2, 0, 1], &[0, 0, 4, 1]]);
    let r = cone_report(&c);
    assert!(r.simplicial && !r.regular);
}

#[test]
fn intersections() {
    let a = cone(2, &[&[0, 1], &[1, 1]]);
    let b = cone(2, &[&[1, 0], &[1, 2]]);
    assert_eq!(a.intersect(&a).unwrap(), a);
    assert_eq!(a.intersect(&b).unwrap(), cone(2, &[&[1, 1], &[1, 2]]));
    assert!(a.intersect(&Cone::orthant(3)).is_err());
}

#[test]
fn relative_interior() {
    let a3 = 1;
    let c = cone(2, &[&[1, a3], &[0, 1]]);
    assert!(c.rel_interior_contains(&big_vec(&[1, a3 + 1])).unwrap());
    assert!(!c.rel_interior_contains(&big_vec(&[1, a3])).unwrap());
    let ray = cone(2, &[&[1, 1]]);
    assert!(ray.rel_interior_contains(&big_vec(&[2, 2])).unwrap());
    assert!(!ray.rel_interior_contains(&big_vec(&[2, 3])).unwrap());
    assert!(!ray.rel_interior_contains(&big_vec(&[0, 0])).unwrap());
}

#[test]
fn simplicial_face_count() {
    let c = cone(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 1]]);
    assert_eq!(c.faces().len(), 8);
    let square = cone(3, &[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]]);
    assert_eq!(square.faces().len(), 1 + 4 + 4 + 1);
}

#[test]
fn normal_fan_of_p1() {
    let p = IntMatrix::from_i64(&[vec![1, -1]]);
    let q = IntMatrix::from_i64(&[vec![1, 1]]);
    let fan = normal_fan(&p, &q, &[Int::from(1)]).unwrap();
    assert_eq!(fan.maximal_cones().len(), 2);
    assert!(fan.is_complete().unwrap());
    assert_eq!(fan.all_cones().len(), 3);
    assert!(normal_fan(&p, &q, &[Int::from(-1)]).is_err());
}
