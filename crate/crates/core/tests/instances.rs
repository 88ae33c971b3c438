//! Reduction pipeline, expander certificates, gap demo and random model.

mod common;

use common::oracle;
use fhp_core::exact::{solve_exact_bfs, ExactOptions};
use fhp_core::instances::embed::{completeness_margin, soundness_check, EMBED_SCALE};
use fhp_core::instances::expander::{lambda_threshold, second_eigenvalue};
use fhp_core::instances::random_model::{random_margin_study, random_margin_study_with};
use fhp_core::instances::{
    assignment_to_hyperplane, build_expander, gen_circle, points_from_sym, reduce, sdp_gap_demo, CnfFormula,
    SymFormula,
};
use fhp_core::{margin_of, Error, Tolerances};

/// Largest adjacency eigenvalue in absolute value on the complement of the
/// all-ones vector, by power iteration with deflation.
fn deflated_power(m: usize, edges: &[(usize, usize)]) -> f64 {
    let mut adj = vec![Vec::new(); m];
    for &(i, j) in edges {
        adj[i].push(j);
        adj[j].push(i);
    }
    let apply = |v: &[f64]| -> Vec<f64> { (0..m).map(|i| adj[i].iter().map(|&j| v[j]).sum()).collect() };
    let project = |v: &mut Vec<f64>| {
        let mean = v.iter().sum::<f64>() / m as f64;
        v.iter_mut().for_each(|x| *x -= mean);
        let r = oracle::norm(v);
        v.iter_mut().for_each(|x| *x /= r);
    };
    let mut v: Vec<f64> = (0..m).map(|i| ((i * 7919) % 101) as f64 - 50.0).collect();
    project(&mut v);
    // iterate on A² so that ±λ are treated alike
    for _ in 0..3000 {
        let mut next = apply(&apply(&v));
        project(&mut next);
        v = next;
    }
    let av = apply(&v);
    oracle::norm(&av)
}

#[test]
fn expander_eigenvalue_matches_independent_power_iteration() {
    for (m, seed) in [(40, 1), (60, 2)] {
        let g = build_expander(m, seed).unwrap();
        let direct = second_eigenvalue(m, g.edges());
        assert!((direct - g.lambda2).abs() < 1e-9);
        assert!((deflated_power(m, g.edges()) - direct).abs() < 1e-4);
        assert!(direct <= lambda_threshold(14));
    }
}

#[test]
fn reduction_pipeline_structure_and_completeness() {
    for seed in 0..6 {
        let (phi, a) = CnfFormula::planted_3sat13(10 + seed as usize, 15 + 2 * seed as usize, seed).unwrap();
        let r = reduce(&phi, seed).unwrap();
        let m = phi.num_clauses();
        let d = r.psi.num_vars();
        assert_eq!(r.psi.num_clauses(), 16 * m);
        assert!(r.psi.occurrences().iter().all(|&c| c <= 30));
        for (k, clause) in r.psi.clauses().iter().enumerate() {
            let raw = oracle::norm(r.points.point(k)) * EMBED_SCALE;
            let want = if clause.len() == 4 { 12f64.sqrt() } else { 2f64.sqrt() };
            assert!((raw - want).abs() < 1e-12);
        }
        let full = r.psi.extend_assignment(&a);
        assert_eq!(r.psi.satisfied_count(&full), 16 * m);
        let w = assignment_to_hyperplane(&full);
        assert!(margin_of(&w, &r.points).unwrap() >= completeness_margin(d) - 1e-12);
    }
}

#[test]
fn embedded_inner_products_are_integers_over_root_twelve_d() {
    // for ±1/√D normals every clause point projects to an integer multiple
    // of 1/√(12D): 0 exactly when the clause pair is violated
    let (phi, a) = CnfFormula::planted_3sat13(9, 15, 4).unwrap();
    let r = reduce(&phi, 4).unwrap();
    let d = r.psi.num_vars();
    let mut assignment = r.psi.extend_assignment(&a);
    assignment[0] = !assignment[0];
    let w = assignment_to_hyperplane(&assignment);
    let unit = completeness_margin(d);
    for (k, clause) in r.psi.clauses().iter().enumerate() {
        let v = oracle::dot(&w, r.points.point(k)) / unit;
        assert!((v - v.round()).abs() < 1e-9);
        let pair_ok = r.psi.pairs().iter().find(|p| p.0 == k || p.1 == k).map(|&(x, y)| {
            let sat = |c: &Vec<i32>| c.iter().any(|&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0));
            sat(&r.psi.clauses()[x]) && sat(&r.psi.clauses()[y])
        });
        assert_eq!(pair_ok.unwrap(), v.round() != 0.0, "clause {k} {clause:?}");
    }
}

#[test]
fn soundness_counting_on_small_instances() {
    let tol = Tolerances::DEFAULT;
    for seed in 0..4 {
        let (phi, a) = CnfFormula::planted_3sat13(10, 15, seed).unwrap();
        let r = reduce(&phi, seed).unwrap();
        let w = assignment_to_hyperplane(&r.psi.extend_assignment(&a));
        for k in 0..w.len() {
            for f in [0.5, 0.99, -0.2] {
                let mut v = w.clone();
                v[k] *= f;
                let n = oracle::norm(&v);
                v.iter_mut().for_each(|x| *x /= n);
                let c = soundness_check(&r.psi, &r.points, &v, &tol).unwrap();
                assert!(c.holds, "seed {seed} coordinate {k} factor {f}: {c:?}");
            }
        }
    }
}

#[test]
fn occurrence_violations_are_rejected_with_the_variable() {
    let mut clauses: Vec<Vec<i32>> = (0..15).map(|i| vec![2, 3 + (i % 10), -(13 + (i % 3))]).collect();
    clauses[0] = vec![1, 3, 4];
    let phi = CnfFormula::new(15, clauses).unwrap();
    match reduce(&phi, 0) {
        Err(Error::OccurrenceBound { variable, count, limit }) => {
            assert_eq!((variable, count, limit), (2, 14, 13));
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn sym_files_roundtrip() {
    let (phi, _) = CnfFormula::planted_3sat13(11, 17, 9).unwrap();
    let r = reduce(&phi, 9).unwrap();
    let back = SymFormula::from_parts(&r.psi.to_dimacs(), &r.psi.to_sidecar()).unwrap();
    assert_eq!(back, r.psi);
    assert_eq!(points_from_sym(&back).unwrap(), r.points);
}

#[test]
fn unsatisfiable_formula_still_reduces() {
    let mut clauses: Vec<Vec<i32>> = (0..8)
        .map(|m| (1..=3).map(|v| if m & (1 << (v - 1)) != 0 { v } else { -v }).collect())
        .collect();
    clauses.extend((0..7).map(|i| vec![4 + i, 11 + (i % 3), -(14 + (i % 2))]));
    let phi = CnfFormula::new(15, clauses).unwrap();
    assert!(phi.find_satisfying_assignment().is_none());
    let r = reduce(&phi, 3).unwrap();
    assert_eq!(r.psi.num_clauses(), 16 * 15);
}

#[test]
fn gap_demo_against_angle_sweep() {
    let mut last = 0.0;
    for n in [8, 16, 32] {
        let g = sdp_gap_demo(n).unwrap();
        let sweep = oracle::angle_sweep_theta(gen_circle(n).unwrap().points());
        assert!((g.integral_theta - sweep).abs() < 1e-9);
        assert!(g.ratio > last);
        assert!(g.feasibility.holds);
        last = g.ratio;
    }
}

#[test]
fn random_model_one_dimensional_sandwich() {
    let r = random_margin_study_with(7, 1, 30, 11, 1.0, 1.0).unwrap();
    assert!(r.per_trial.iter().all(|t| (t.lower - t.upper).abs() < 1e-9));
}

#[test]
fn random_model_upper_bound_is_valid() {
    // small sizes take the exact route; check the lower certificate never
    // exceeds it
    let r = random_margin_study(6, 2, 20, 5).unwrap();
    assert!(r.per_trial.iter().all(|t| t.exact_upper && t.lower <= t.upper + 1e-12));
    let exact = solve_exact_bfs(&gen_circle(6).unwrap(), &ExactOptions::default()).unwrap();
    assert!(exact.margin > 0.0);
}
