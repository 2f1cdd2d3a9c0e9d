//! Acceptance harness: one pass/fail line per criterion with its running
//! time and budget. Exits nonzero when any criterion fails.

mod support;

use std::panic;
use std::time::{Duration, Instant};

use arrvar::catalog::{catalog, grid, instantiate, verify_catalog, GridOptions, Params};
use arrvar::faces::FaceId;
use arrvar::geometry::{
    class_cones, dim_and_complexity, fano_status, geometry_report, isotropy, picard_group, smoothness_report, FanoStatus,
    VarietyModel,
};
use arrvar::graded::Grading;
use arrvar::lattice::{GroupElement, Subgroup};
use arrvar::named::{e6_model, genconstrex_model, gorenstein_threefold_model, pr_times_pr, section_six_ring};
use arrvar::polyhedral::Cone;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Duration,
    run: fn() -> String,
}

fn cone2(rays: &[[i64; 2]]) -> Cone {
    Cone::from_i64(2, &rays.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

fn e6_surface() -> String {
    let m = e6_model().unwrap();
    assert_eq!(dim_and_complexity(m.spec()), (2, 1));
    assert_eq!(m.group().free_rank(), 2);
    assert!(m.group().torsion().is_empty());
    let rel = m.spec().relations()[0].display(m.spec().layout());
    assert_eq!(rel, "T01^3*T02 + T11^3 + T21^2");
    let orders: Vec<BigInt> = (0..4)
        .map(|q| {
            let g = isotropy(&m, FaceId::from_zero_set(m.len(), &[q])).unwrap();
            assert_eq!(g.free_rank(), 0);
            g.torsion_order()
        })
        .collect();
    assert_eq!(orders, [3, 1, 3, 2].map(BigInt::from));
    let e1 = isotropy(&m, FaceId::from_zero_set(m.len(), &[4])).unwrap();
    assert_eq!((e1.free_rank(), e1.torsion().len()), (1, 0));
    format!("Cl = {}, {rel}, isotropy orders (3,1,3,2), rank 1 along E1", m.group())
}

fn threefold() -> String {
    let m = gorenstein_threefold_model().unwrap();
    assert_eq!(m.group().free_rank(), 1);
    assert_eq!(m.group().torsion(), &[BigInt::from(2), BigInt::from(2)][..]);
    let pic = picard_group(&m).unwrap();
    assert_eq!(pic, Subgroup::generated(m.group(), &[GroupElement::from_i64(&[4], &[0, 0])]).unwrap());
    assert_eq!(pic.index(), Some(BigInt::from(16)));
    let fano = fano_status(&m).unwrap();
    assert_eq!(fano.anticanonical, GroupElement::from_i64(&[4], &[0, 0]));
    assert_eq!(fano.status, FanoStatus::Fano);
    assert_eq!(fano.gorenstein_index, Some(BigInt::from(1)));
    let report = smoothness_report(&m).unwrap();
    let maximal: Vec<_> = report.pieces.iter().filter(|p| p.maximal).collect();
    assert_eq!(maximal.iter().filter(|p| p.class.is_big()).count(), 2);
    assert_eq!(maximal.iter().filter(|p| p.class.is_leaf()).count(), 6);
    let singular: Vec<_> = report.singular_pieces().filter(|p| p.maximal).map(|p| p.face).collect();
    assert_eq!(singular, maximal.iter().map(|p| p.face).collect::<Vec<_>>());
    format!("Cl = {}, Pic index 16, -K = (4,0,0), Fano, index 1, 2 big + 6 leaf pieces all singular", m.group())
}

fn fourfold() -> String {
    let m = genconstrex_model().unwrap();
    assert_eq!(m.u(), &GroupElement::from_i64(&[8, -4], &[]));
    assert_eq!(m.group().free_rank(), 2);
    assert!(m.group().torsion().is_empty());
    let report = geometry_report(&m).unwrap();
    assert!(report.smoothness.qfactorial);
    assert_eq!(report.fano.status, FanoStatus::Fano);
    assert_eq!(report.fano.gorenstein_index, Some(BigInt::from(30)));
    assert!(report.heuristic && report.fano.heuristic);
    "Cl = Z^2, Q-factorial, Fano, Gorenstein index 30 (heuristic oracle verdict flagged)".into()
}

fn sweep() -> String {
    let reports = verify_catalog(&[], &GridOptions::default()).unwrap();
    let failures: Vec<String> =
        reports.iter().filter(|r| !r.passed()).map(|r| format!("row {} {}: {:?}", r.row, r.params, r.failures)).collect();
    assert!(failures.is_empty(), "{} failures, first: {}", failures.len(), failures[0]);
    for id in 1..=14 {
        assert!(reports.iter().any(|r| r.row == id), "row {id} has no admissible instance");
    }
    for r in &reports {
        assert!(r.smooth && r.cl_is_z2 && r.pic_is_cl && r.u_ample && r.dim == r.expected_dim);
    }
    format!("{} instances over 14 rows, all smooth with Cl = Pic = Z^2, u ample, dim as listed", reports.len())
}

fn semiample_cones() -> String {
    let mut n = 0;
    for p in grid(1, &GridOptions::default()).unwrap() {
        let a3 = p.values["a3"];
        let samp = class_cones(&instantiate(1, &p).unwrap().model).unwrap().samp;
        assert_eq!(samp, cone2(&[[1, a3], [0, 1]]), "row 1 {p}");
        n += 1;
    }
    let samp = class_cones(&instantiate(2, &Params::default()).unwrap().model).unwrap().samp;
    assert_eq!(samp, cone2(&[[0, 1], [1, 1]]));
    let quadrant = cone2(&[[1, 0], [0, 1]]);
    for (r, c, a, b) in [(2, 1, 1, 1), (3, 1, 2, 1), (3, 2, 3, 2), (4, 2, 3, 1)] {
        let cones = class_cones(&pr_times_pr(r, c, a, b).unwrap()).unwrap();
        assert_eq!(cones.eff, quadrant);
        assert_eq!(cones.samp, quadrant);
    }
    format!("row 1 on {n} instances, row 2, and four P_r x P_r intersections")
}

fn pr_times_pr_law() -> String {
    let mut n = 0;
    for c in 1..=3usize {
        for r in [c + 1, c + 2] {
            for (a, b) in [(1u32, 1u32), (2, 1), (3, 1), (3, 2)] {
                let m = pr_times_pr(r, c, a, b).unwrap();
                let smooth = smoothness_report(&m).unwrap().smooth;
                let expected = (r == c + 1 && b == 1) || (r == c + 2 && a == 1 && b == 1);
                assert_eq!(smooth, expected, "smoothness r={r} c={c} a={a} b={b}");
                let k = (r - c) as i64;
                let (ri, ai, bi) = (r as i64 + 1, a as i64, b as i64);
                let fano = fano_status(&m).unwrap();
                assert_eq!(fano.anticanonical, GroupElement::from_i64(&[ri - k * ai, ri - k * bi], &[]), "r={r} c={c} a={a} b={b}");
                let is_fano = k * ai < ri && k * bi < ri;
                assert_eq!(fano.status == FanoStatus::Fano, is_fano, "Fano r={r} c={c} a={a} b={b}");
                n += 1;
            }
        }
    }
    format!("{n} parameter tuples: smoothness, -K and Fano status as predicted")
}

/// Compares the counting formula with the rank oracle at random degrees
/// that are sums of one to three generator degrees.
fn random_rank_queries(label: &str, model: &VarietyModel, rng: &mut ChaCha8Rng, wanted: usize) {
    let grading = Grading::from_model(model).unwrap();
    let weights = model.weights();
    let mut done = 0;
    let mut attempts = 0;
    while done < wanted {
        attempts += 1;
        assert!(attempts < 100 * wanted, "{label}: too few small degrees");
        let k = rng.gen_range(1..=3);
        let picks: Vec<&GroupElement> = (0..k).map(|_| &weights[rng.gen_range(0..weights.len())]).collect();
        let w = model.group().sum(picks);
        let count = grading.count_monomials(&w).unwrap();
        if count > 150 {
            continue;
        }
        assert_eq!(grading.graded_dim(&w).unwrap(), grading.graded_dim_by_rank(&w, 200).unwrap(), "{label} at {w}");
        done += 1;
    }
}

fn graded_dims() -> String {
    let w4 = GroupElement::from_i64(&[1, 0], &[]);
    let twice = GroupElement::from_i64(&[2, 0], &[]);
    let ring = section_six_ring(0, 2).unwrap();
    assert_eq!(arrvar::graded::graded_dim(&ring, &w4).unwrap(), 5);
    assert_eq!(arrvar::graded::graded_dim(&ring, &twice).unwrap(), 15);
    for b in 1..=3 {
        let other = section_six_ring(b, 2).unwrap();
        assert_eq!(arrvar::graded::graded_dim(&other, &w4).unwrap(), 5, "b={b}");
        assert_eq!(arrvar::graded::graded_dim(&other, &twice).unwrap(), 15, "b={b}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut families = vec![("ring".to_string(), ring)];
    for row in &catalog().rows {
        let p = grid(row.id, &GridOptions::default()).unwrap().remove(0);
        families.push((format!("row {}", row.id), instantiate(row.id, &p).unwrap().model));
    }
    for (label, model) in &families {
        random_rank_queries(label, model, &mut rng, 50);
    }
    format!("dim R_w4 = 5, dim R_2w4 = 15; rank oracle agrees on 50 queries for each of {} families", families.len())
}

fn property_suites() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    for _ in 0..500 {
        support::smith_contract(&support::random_matrix(&mut rng));
    }
    for _ in 0..200 {
        let (dim, gens) = support::random_cone(&mut rng);
        support::dual_involution(dim, &gens);
    }
    let models = support::grid_models(&GridOptions::default());
    let mut faces = 0;
    for (label, model) in &models {
        support::check_canonical_and_torsion(label, model);
        faces += support::check_witnesses(label, model.spec().as_arrangement().unwrap());
    }
    for _ in 0..300 {
        support::check_low_dimensional_faces(&support::random_spec(&mut rng));
    }
    format!(
        "SNF x500, dual x200, canonical class and torsion on {} instances, witnesses on {faces} faces, case table on 300 specs",
        models.len()
    )
}

fn chambers() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC4A3);
    let models = support::rank_two_models();
    for (label, model) in &models {
        support::check_chamber_partition(label, model);
        support::check_wall_stability(label, model, &mut rng, 4);
    }
    format!("partition, ample chamber = SAmple and wall stability on {} models", models.len())
}

fn panic_message(payload: &(dyn std::any::Any + Send)) -> String {
    if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else if let Some(s) = payload.downcast_ref::<&str>() {
        s.to_string()
    } else {
        "panic".into()
    }
}

fn main() {
    let criteria = [
        Criterion { id: 1, title: "E6 surface", budget: Duration::from_secs(1), run: e6_surface },
        Criterion { id: 2, title: "Gorenstein threefold", budget: Duration::from_secs(5), run: threefold },
        Criterion { id: 3, title: "fourfold with two relations", budget: Duration::from_secs(60), run: fourfold },
        Criterion { id: 4, title: "classification sweep", budget: Duration::from_secs(300), run: sweep },
        Criterion { id: 5, title: "semiample cones", budget: Duration::from_secs(60), run: semiample_cones },
        Criterion { id: 6, title: "P_r x P_r smoothness law", budget: Duration::from_secs(30), run: pr_times_pr_law },
        Criterion { id: 7, title: "graded dimensions", budget: Duration::from_secs(30), run: graded_dims },
        Criterion { id: 8, title: "property suites", budget: Duration::from_secs(180), run: property_suites },
        Criterion { id: 9, title: "Mori chambers", budget: Duration::from_secs(30), run: chambers },
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = panic::catch_unwind(c.run);
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(_) if elapsed > c.budget => (false, format!("over budget of {:.0} s", c.budget.as_secs_f64())),
            Ok(detail) => (true, detail),
            Err(payload) => (false, panic_message(payload.as_ref())),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {} {} {}: {} ({:.2} s, budget {:.0} s)",
            c.id,
            if ok { "PASS" } else { "FAIL" },
            c.title,
            detail,
            elapsed.as_secs_f64(),
            c.budget.as_secs_f64()
        );
    }
    let _ = panic::take_hook();
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
