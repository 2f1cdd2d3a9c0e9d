//! Property checks shared by the randomized suites and the acceptance
//! harness. Every check panics with a descriptive message on failure.
#![allow(dead_code)]

use arrvar::catalog::{catalog, grid, instantiate, GridOptions};
use arrvar::faces::{check_witness, classify_arrangement_face, jacobian_rank, witness_point, xbar_stratum_smooth, FaceId, Witness};
use arrvar::geometry::{canonical_class_arrangement, canonical_class_ci, class_cones, mori_chambers, VarietyModel};
use arrvar::lattice::{big_vec, cokernel, dot, kernel_basis, primitive, smith_decompose, GroupElement, IntMatrix, RatMatrix};
use arrvar::named::{e6_model, genconstrex_model, pr_times_pr, section_six_ring, vandermonde};
use arrvar::polyhedral::Cone;
use arrvar::varspec::{build_p0, ArrangementSpec};
use arrvar::Int;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub fn random_matrix(rng: &mut impl Rng) -> IntMatrix {
    let (r, c) = (rng.gen_range(1..6), rng.gen_range(1..6));
    let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-9..10)).collect()).collect();
    IntMatrix::from_i64(&rows)
}

/// `U·A·V = D` with unimodular `U, V` and `D` in Smith form.
pub fn smith_contract(a: &IntMatrix) {
    let s = smith_decompose(a);
    assert_eq!(s.u.mul(a).unwrap().mul(&s.v).unwrap(), s.d, "U·A·V = D for {a}");
    assert!(s.u.det().unwrap().abs().is_one(), "U unimodular for {a}");
    assert!(s.v.det().unwrap().abs().is_one(), "V unimodular for {a}");
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            if i != j {
                assert!(s.d[(i, j)].is_zero(), "D diagonal for {a}");
            }
        }
    }
    let k = s.d.rows().min(s.d.cols());
    let diag: Vec<Int> = (0..k).map(|i| s.d[(i, i)].clone()).collect();
    for w in diag.windows(2) {
        if w[0].is_zero() {
            assert!(w[1].is_zero(), "zeros trail in D for {a}");
        } else {
            assert!((&w[1] % &w[0]).is_zero(), "divisibility chain in D for {a}");
        }
    }
    assert!(diag.iter().all(|x| !x.is_negative()), "nonnegative diagonal for {a}");
    assert_eq!(s.rank(), a.rank());
}

pub fn random_cone(rng: &mut impl Rng) -> (usize, Vec<Vec<i64>>) {
    let dim = rng.gen_range(1..6);
    let n = rng.gen_range(0..7);
    (dim, (0..n).map(|_| (0..dim).map(|_| rng.gen_range(-3..4)).collect()).collect())
}

/// Facet normals of a full-dimensional pointed cone by brute force over
/// all `dim-1` subsets of generators.
fn facet_oracle(dim: usize, gens: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let mut out = std::collections::BTreeSet::new();
    let n = gens.len();
    if dim == 1 {
        for g in gens {
            if !g[0].is_zero() {
                out.insert(vec![if g[0].is_positive() { Int::one() } else { -Int::one() }]);
            }
        }
        return out.into_iter().collect();
    }
    if n < dim - 1 {
        return vec![];
    }
    let mut idx: Vec<usize> = (0..dim - 1).collect();
    loop {
        let rows: Vec<Vec<Int>> = idx.iter().map(|&i| gens[i].clone()).collect();
        let m = IntMatrix::from_rows(dim, rows).unwrap();
        if RatMatrix::from_int(&m).rank() == dim - 1 {
            let normal = primitive(kernel_basis(&m).row(0));
            for sign in [1i64, -1] {
                let nv: Vec<Int> = normal.iter().map(|x| x * Int::from(sign)).collect();
                if gens.iter().all(|g| !dot(&nv, g).is_negative()) {
                    out.insert(nv);
                }
            }
        }
        let mut i = dim - 1;
        loop {
            if i == 0 {
                return out.into_iter().collect();
            }
            i -= 1;
            if idx[i] < n - (dim - 1 - i) {
                idx[i] += 1;
                for j in i + 1..dim - 1 {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// `C^∨∨ = C`, V- and H-descriptions agree, and facets match brute force.
pub fn dual_involution(dim: usize, gens: &[Vec<i64>]) {
    let gens: Vec<Vec<Int>> = gens.iter().map(|g| big_vec(g)).collect();
    let c = Cone::new(dim, gens.clone()).unwrap();
    for g in &gens {
        assert!(c.contains(g).unwrap(), "generator {g:?} in {c}");
    }
    let d = c.dual();
    let d_again = Cone::new(dim, d.generators()).unwrap();
    assert_eq!(d_again, d, "dual of {c} is canonical");
    let dd = Cone::new(dim, d_again.dual().generators()).unwrap();
    assert_eq!(dd, c, "double dual of {c}");
    let from_h = Cone::from_inequalities(dim, c.facets().to_vec(), c.equations().to_vec()).unwrap();
    assert_eq!(from_h, c, "H-description of {c}");
    if c.is_full_dimensional() && c.is_pointed() {
        assert_eq!(c.facets().to_vec(), facet_oracle(dim, &gens), "facets of {c}");
    }
}

/// Every member of the catalog grid.
pub fn grid_models(opts: &GridOptions) -> Vec<(String, VarietyModel)> {
    let mut out = Vec::new();
    for row in &catalog().rows {
        for p in grid(row.id, opts).unwrap() {
            let inst = instantiate(row.id, &p).unwrap();
            out.push((format!("row {} {}", row.id, p), inst.model));
        }
    }
    out
}

/// Canonical class formulas agree and the torsion of `Z^r/im(P₀)` divides
/// the torsion of `K`.
pub fn check_canonical_and_torsion(label: &str, model: &VarietyModel) {
    let spec = model.spec().as_arrangement().expect("arrangement data");
    let ci = canonical_class_ci(model).unwrap();
    assert_eq!(Some(ci), canonical_class_arrangement(model), "canonical class formulas for {label}");
    let t0 = cokernel(&build_p0(spec.l(), spec.m()).transpose()).torsion_order();
    let t = cokernel(spec.p()).torsion_order();
    assert!((&t % &t0).is_zero(), "torsion injection for {label}");
}

/// Witness exists exactly for big and leaf faces; returns the number of
/// faces examined (zero when `n+m > 12`).
pub fn check_witnesses(label: &str, spec: &ArrangementSpec) -> usize {
    let len = spec.layout().len();
    if len > 12 {
        return 0;
    }
    for s in 0..(1u64 << len) {
        let f = FaceId(s);
        let class = classify_arrangement_face(spec, f);
        let w = witness_point(spec, f);
        assert_eq!(class.is_xbar_face(), w.is_some(), "witness for {label} zero set {:?}", f.zero_set(len));
        if let Some(w) = w {
            assert!(check_witness(spec, f, &w), "witness check for {label} zero set {:?}", f.zero_set(len));
        }
    }
    1 << len
}

/// Random irredundant arrangement data with `r - c ∈ {1, 2}` and `n+m ≤ 12`.
pub fn random_spec(rng: &mut impl Rng) -> ArrangementSpec {
    loop {
        let c = rng.gen_range(1..=2);
        let r = c + rng.gen_range(1..=2);
        let l: Vec<Vec<u32>> = (0..=r)
            .map(|_| {
                let n = rng.gen_range(1..=3);
                if n == 1 {
                    vec![rng.gen_range(2..=3)]
                } else {
                    (0..n).map(|_| rng.gen_range(1..=3)).collect()
                }
            })
            .collect();
        let m = rng.gen_range(0..=2);
        let len = l.iter().map(Vec::len).sum::<usize>() + m;
        if len > 12 {
            continue;
        }
        let d: Vec<i64> = (0..len).map(|_| rng.gen_range(-3..=3)).collect();
        if let Ok(spec) = ArrangementSpec::new(c, l, m, vandermonde(c, r), IntMatrix::from_i64(&[d])) {
            return spec;
        }
    }
}

/// Smoothness of `X̄` along a stratum decided by the Jacobian at a witness.
fn jacobian_smooth(spec: &ArrangementSpec, f: FaceId) -> Option<bool> {
    match witness_point(spec, f)? {
        Witness::Rational(z) => Some(jacobian_rank(&spec.relations(), &z) == spec.r() - spec.c()),
        Witness::AlgebraicClosure(_) => None,
    }
}

fn check_clause(spec: &ArrangementSpec, nonzero: &[usize], xbar: bool, smooth: Option<bool>, clause: &str) {
    let f = FaceId::from_nonzero(nonzero);
    let class = classify_arrangement_face(spec, f);
    assert_eq!(class.is_xbar_face(), xbar, "clause {clause}: {nonzero:?} in {spec}");
    if let (true, Some(expected)) = (xbar, smooth) {
        assert_eq!(xbar_stratum_smooth(spec, f), expected, "clause {clause} smoothness: {nonzero:?} in {spec}");
        if let Some(j) = jacobian_smooth(spec, f) {
            assert_eq!(j, expected, "clause {clause} Jacobian: {nonzero:?} in {spec}");
        }
    }
}

/// The case table for rays and two-dimensional faces of the orthant,
/// compared with the general classification and smoothness criteria.
pub fn check_low_dimensional_faces(spec: &ArrangementSpec) {
    let layout = spec.layout().clone();
    let n = layout.n().to_vec();
    let (r, c) = (spec.r(), spec.c());
    let l = |i: usize, j: usize| spec.l()[i][j];
    let free: Vec<usize> = (0..layout.m()).map(|k| layout.free_index(k)).collect();

    for &k in &free {
        check_clause(spec, &[k], true, Some(false), "(i) single free ray");
        for &k2 in free.iter().filter(|&&k2| k2 > k) {
            check_clause(spec, &[k, k2], true, Some(false), "(i) two free rays");
        }
    }
    for i in 0..=r {
        for j in 0..n[i] {
            let q = layout.index(i, j);
            let xbar = n[i] >= 2;
            let smooth = r == c + 1 && n[i] == 2 && l(i, 1 - j.min(1)) == 1;
            check_clause(spec, &[q], xbar, Some(smooth), "(ii) ray");
            for &k in &free {
                check_clause(spec, &[q, k], xbar, Some(smooth), "(ii) ray plus free ray");
            }
            for j2 in (j + 1)..n[i] {
                let rest: Vec<usize> = (0..n[i]).filter(|&x| x != j && x != j2).collect();
                let smooth = r == c + 1 && n[i] == 3 && rest.iter().all(|&x| l(i, x) == 1);
                check_clause(spec, &[q, layout.index(i, j2)], n[i] >= 3, Some(smooth), "(iii)");
            }
            for i2 in (i + 1)..=r {
                for j2 in 0..n[i2] {
                    let both_big = n[i] >= 2 && n[i2] >= 2;
                    let both_leaf = n[i] == 1 && n[i2] == 1 && r == c + 1;
                    let good = |ii: usize, jj: usize| n[ii] == 2 && l(ii, 1 - jj) == 1;
                    let smooth = both_big
                        && ((r == c + 1 && (good(i, j) || good(i2, j2))) || (r == c + 2 && good(i, j) && good(i2, j2)));
                    check_clause(spec, &[q, layout.index(i2, j2)], both_big || both_leaf, both_big.then_some(smooth), "(iv)");
                }
            }
        }
    }
}

/// Rank-two models: named examples plus a few members of every row.
pub fn rank_two_models() -> Vec<(String, VarietyModel)> {
    let mut out = vec![
        ("E6 surface".to_string(), e6_model().unwrap()),
        ("fourfold".to_string(), genconstrex_model().unwrap()),
        ("ring b=1 m=2".to_string(), section_six_ring(1, 2).unwrap()),
        ("P2xP2 (1,1)".to_string(), pr_times_pr(2, 1, 1, 1).unwrap()),
        ("P3xP3 (2,1)".to_string(), pr_times_pr(3, 1, 2, 1).unwrap()),
    ];
    let opts = GridOptions { max_param: 2, max_m: 2, fano: false };
    for row in &catalog().rows {
        for p in grid(row.id, &opts).unwrap().into_iter().take(3) {
            out.push((format!("row {} {}", row.id, p), instantiate(row.id, &p).unwrap().model));
        }
    }
    out
}

fn cross(a: &[BigInt], b: &[BigInt]) -> BigInt {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// Rays of a two-dimensional cone ordered counterclockwise.
pub fn ordered(rays: &[Vec<BigInt>]) -> (Vec<BigInt>, Vec<BigInt>) {
    assert_eq!(rays.len(), 2);
    if cross(&rays[0], &rays[1]).is_positive() {
        (rays[0].clone(), rays[1].clone())
    } else {
        (rays[1].clone(), rays[0].clone())
    }
}

/// Chambers tile `Eff` with disjoint interiors and the chamber of `u` is
/// the semiample cone.
pub fn check_chamber_partition(label: &str, model: &VarietyModel) {
    let fan = mori_chambers(model).unwrap();
    let cones = class_cones(model).unwrap();
    let (eff_lo, eff_hi) = ordered(cones.eff.rays());
    let bounds: Vec<_> = fan.chambers.iter().map(|c| ordered(c.cone.rays())).collect();
    assert!(!bounds.is_empty(), "{label}");
    assert_eq!(bounds[0].0, eff_lo, "{label}: first chamber starts at a boundary ray of Eff");
    assert_eq!(bounds.last().unwrap().1, eff_hi, "{label}: last chamber ends at the other boundary ray");
    for w in bounds.windows(2) {
        assert_eq!(w[0].1, w[1].0, "{label}: consecutive chambers share a wall");
    }
    for (i, c) in fan.chambers.iter().enumerate() {
        assert!(c.cone.is_full_dimensional(), "{label}");
        assert!(c.cone.rel_interior_contains(&c.sample).unwrap(), "{label}");
        for (j, other) in fan.chambers.iter().enumerate() {
            if i != j {
                assert!(!other.cone.rel_interior_contains(&c.sample).unwrap(), "{label}: interiors of {i} and {j} meet");
            }
        }
    }
    let i = fan.ample_index.unwrap_or_else(|| panic!("{label}: u lies in no chamber interior"));
    assert_eq!(fan.chambers[i].cone, cones.samp, "{label}: ample chamber is SAmple");
}

/// Moving `u` inside its chamber keeps chambers, walls and wall types.
pub fn check_wall_stability(label: &str, model: &VarietyModel, rng: &mut impl Rng, samples: usize) {
    let fan = mori_chambers(model).unwrap();
    let ample = &fan.chambers[fan.ample_index.unwrap()];
    let (lo, hi) = ordered(ample.cone.rays());
    for _ in 0..samples {
        let a: i64 = rng.gen_range(1..=20);
        let b: i64 = rng.gen_range(1..=20);
        let free: Vec<BigInt> = lo.iter().zip(&hi).map(|(x, y)| x * a + y * b).collect();
        let torsion = vec![BigInt::zero(); model.group().torsion().len()];
        let moved = model.at(GroupElement::new(free.clone(), torsion)).unwrap();
        let moved_fan = mori_chambers(&moved).unwrap();
        assert_eq!(moved_fan.chambers, fan.chambers, "{label} at {free:?}");
        assert_eq!(moved_fan.ample_index, fan.ample_index, "{label} at {free:?}");
        assert_eq!(moved_fan.walls, fan.walls, "{label} at {free:?}");
        assert_eq!(class_cones(&moved).unwrap().samp, ample.cone, "{label} at {free:?}");
    }
}
