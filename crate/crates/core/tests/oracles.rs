//! Library solvers against the brute-force references.

mod common;

use common::oracle;
use fhp_core::exact::{
    enumerate_feasible_labelings, solve_eps_net, solve_exact_bfs, solve_random_hyperplane, ExactOptions,
    NetOptions, RandomOptions, SampleBudget,
};
use fhp_core::instances::{gen_circle, gen_gaussian};
use fhp_core::mmc::{solve_mmc, InnerSolver};
use fhp_core::{solve_labeled, PointSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn instance(seed: u64) -> PointSet {
    let n = 2 + (seed % 5) as usize;
    let d = 1 + (seed / 5 % 3) as usize;
    gen_gaussian(n, d, seed).unwrap()
}

#[test]
fn labeled_solver_matches_face_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for seed in 0..60 {
        let ps = instance(seed);
        for _ in 0..4 {
            let labels: Vec<i8> = (0..ps.len()).map(|_| if rng.random() { 1 } else { -1 }).collect();
            let got = solve_labeled(&labels, &ps).unwrap();
            let want = oracle::labeled_margin(ps.points(), &labels);
            assert_eq!(got.feasible, want > 0.0, "seed {seed} labels {labels:?}");
            assert!((got.solved_margin - want).abs() < 1e-7, "seed {seed}: {} vs {want}", got.solved_margin);
        }
    }
}

#[test]
fn bfs_matches_exhaustive_scan() {
    for seed in 100..140 {
        let ps = instance(seed);
        let got = solve_exact_bfs(&ps, &ExactOptions::default()).unwrap().margin;
        let want = oracle::exhaustive_theta(ps.points());
        assert!((got - want).abs() < 1e-6, "seed {seed}: {got} vs {want}");
    }
}

#[test]
fn planar_solvers_match_angle_sweep() {
    for seed in 200..220 {
        let ps = gen_gaussian(2 + (seed % 5) as usize, 2, seed).unwrap();
        let want = oracle::angle_sweep_theta(ps.points());
        let bfs = solve_exact_bfs(&ps, &ExactOptions::default()).unwrap();
        assert!((bfs.margin - want).abs() < 1e-9, "seed {seed}");
        let net = solve_eps_net(&ps, &NetOptions::default()).unwrap();
        assert!((net.margin - want).abs() < 1e-6, "seed {seed}");
        let budget = SampleBudget::from_theta(ps.len(), want, 4.0, seed).unwrap();
        let random = solve_random_hyperplane(&ps, &budget, &RandomOptions::default()).unwrap();
        assert!((random.margin - want).abs() < 1e-6, "seed {seed}");
    }
}

#[test]
fn planar_enumeration_counts_arcs() {
    for seed in 300..330 {
        let ps = gen_gaussian(2 + (seed % 6) as usize, 2, seed).unwrap();
        let got = enumerate_feasible_labelings(&ps, &ExactOptions::default()).unwrap().len();
        assert_eq!(got, oracle::angle_sweep_labelings(ps.points()), "seed {seed}");
        assert_eq!(got, 2 * ps.len());
    }
}

#[test]
fn circle_optimum() {
    for n in [4, 6, 8, 12] {
        let ps = gen_circle(n).unwrap();
        let got = solve_exact_bfs(&ps, &ExactOptions::default()).unwrap().margin;
        assert!((got - oracle::angle_sweep_theta(ps.points())).abs() < 1e-9);
        assert!((got - (std::f64::consts::PI / n as f64).sin()).abs() < 1e-9);
    }
}

#[test]
fn mmc_matches_offset_sweep() {
    let inner = InnerSolver::Bfs(ExactOptions::default());
    for seed in 400..415 {
        let ps = gen_gaussian(3 + (seed % 4) as usize, 2, seed).unwrap();
        let got = solve_mmc(&ps, &inner).unwrap().margin;
        let want = oracle::mmc_sweep(&ps.original_points());
        assert!((got - want).abs() < 1e-4, "seed {seed}: {got} vs {want}");
    }
}

#[test]
fn face_oracle_sanity() {
    // segment from (1, 1) to (1, −1): nearest point (1, 0)
    let p = oracle::min_norm_point_by_faces(&[vec![1.0, 1.0], vec![1.0, -1.0]]);
    assert!((p[0] - 1.0).abs() < 1e-12 && p[1].abs() < 1e-12);
    let sq = vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![-1.0, 0.0], vec![0.0, -1.0]];
    assert!((oracle::exhaustive_theta(&sq) - 0.5f64.sqrt()).abs() < 1e-12);
}
