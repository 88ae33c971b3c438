//! Acceptance suite: runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any fails.

#[path = "../../core/tests/common/oracle.rs"]
mod oracle;

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use fhp_core::approx::{combine_gaussian, reweight_directions, ApproxParams};
use fhp_core::exact::{
    enumerate_feasible_labelings, sauer_bound, solve_eps_net, solve_exact_bfs, solve_random_hyperplane,
    ExactOptions, NetOptions, RandomOptions, SampleBudget, SolveStatus,
};
use fhp_core::instances::embed::EMBED_SCALE;
use fhp_core::instances::random_model::{random_margin_study, CALIBRATION_SEED};
use fhp_core::instances::{
    assignment_to_hyperplane, build_expander, completeness_margin, gen_circle, gen_gaussian, reduce, sdp_gap_demo,
    CnfFormula,
};
use fhp_core::linalg::{dot, norm};
use fhp_core::mmc::{solve_mmc, InnerSolver};
use fhp_core::rng::SeedStream;
use fhp_core::{margin_of, PointSet};

type Outcome = Result<String, String>;

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("exact solvers match the exhaustive oracle", criterion_01),
        ("labeling count bound", criterion_02),
        ("reweighting round and energy bounds", criterion_03),
        ("single-trial coverage frequency", criterion_04),
        ("reduction structure and completeness", criterion_05),
        ("expander certificates", criterion_06),
        ("integrality gap growth", criterion_07),
        ("random-model band frequency", criterion_08),
        ("clustering matches the offset sweep", criterion_09),
        ("reports replay byte-identically", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = run();
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.1}s)", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} ({secs:.1}s)", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// The shared suite of 100 seeded instances with n ≤ 6, d ≤ 3.
fn suite() -> Vec<(u64, PointSet)> {
    (0..100u64)
        .map(|seed| {
            let n = 2 + (seed % 5) as usize;
            let d = 1 + (seed / 5 % 3) as usize;
            (seed, gen_gaussian(n, d, 1000 + seed).unwrap())
        })
        .collect()
}

fn criterion_01() -> Outcome {
    let started = Instant::now();
    let mut worst: f64 = 0.0;
    for (seed, ps) in suite() {
        let theta = oracle::exhaustive_theta(ps.points());
        let bfs = solve_exact_bfs(&ps, &ExactOptions { seed, ..ExactOptions::default() }).map_err(|e| e.to_string())?;
        let net = solve_eps_net(&ps, &NetOptions::default()).map_err(|e| e.to_string())?;
        ensure(net.status == SolveStatus::Certified, || format!("seed {seed}: net not certified"))?;
        let budget = SampleBudget::from_theta(ps.len(), theta, 4.0, seed).map_err(|e| e.to_string())?;
        let random = solve_random_hyperplane(&ps, &budget, &RandomOptions::default()).map_err(|e| e.to_string())?;
        for (name, m) in [("bfs", bfs.margin), ("net", net.margin), ("random", random.margin)] {
            let err = (m - theta).abs();
            worst = worst.max(err);
            ensure(err <= 1e-6, || format!("seed {seed}: {name} {m} vs oracle {theta}"))?;
        }
    }
    let elapsed = started.elapsed();
    ensure(elapsed <= Duration::from_secs(300), || format!("took {elapsed:?}"))?;
    Ok(format!("100 instances, max error {worst:.1e}"))
}

fn criterion_02() -> Outcome {
    let mut max_ratio: f64 = 0.0;
    for (seed, ps) in suite() {
        let count = enumerate_feasible_labelings(&ps, &ExactOptions::default()).map_err(|e| e.to_string())?.len();
        let bound = sauer_bound(ps.len(), ps.dim());
        max_ratio = max_ratio.max(count as f64 / bound as f64);
        ensure(count <= bound, || format!("seed {seed}: {count} labelings > {bound}"))?;
    }
    for seed in 0..50u64 {
        let ps = gen_gaussian(2 + (seed % 7) as usize, 2, 2000 + seed).unwrap();
        let count = enumerate_feasible_labelings(&ps, &ExactOptions::default()).map_err(|e| e.to_string())?.len();
        let arcs = oracle::angle_sweep_labelings(ps.points());
        ensure(count == 2 * ps.len() && arcs == count, || {
            format!("seed {seed}: {count} labelings, sweep {arcs}, expected {}", 2 * ps.len())
        })?;
    }
    Ok(format!("max count/bound {max_ratio:.3}; 50 planar instances with exactly 2n"))
}

fn criterion_03() -> Outcome {
    let mut runs = 0;
    let mut max_fraction: f64 = 0.0;
    for (seed, ps) in suite() {
        let theta = oracle::exhaustive_theta(ps.points());
        let n = ps.len() as f64;
        let limit = (4.0 * n.log2() / (theta * theta)).ceil();
        for rep in 0..2u64 {
            let params = ApproxParams { seed: 10 * seed + rep, ..ApproxParams::default() };
            let trace = reweight_directions(&ps, &params).map_err(|e| e.to_string())?;
            let t = trace.rounds() as f64;
            max_fraction = max_fraction.max(t / limit);
            ensure(t <= limit, || format!("seed {seed}: {t} rounds > {limit}"))?;
            let low = trace.sigma_energy().into_iter().fold(f64::INFINITY, f64::min);
            ensure(low >= n.log2(), || format!("seed {seed}: energy {low} < log2 n"))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} runs, zero violations, max rounds/limit {max_fraction:.3}"))
}

fn criterion_04() -> Outcome {
    let alpha = 0.1;
    let mut instances = Vec::new();
    let mut seed = 3000;
    while instances.len() < 40 {
        let ps = gen_gaussian(10, 2 + (seed % 2) as usize, seed).unwrap();
        let theta = solve_exact_bfs(&ps, &ExactOptions::default()).map_err(|e| e.to_string())?.margin;
        instances.push((ps, theta));
        seed += 1;
    }
    let need = ((1.0 - 5.0 * alpha) * 10.0_f64).ceil() as usize;
    let mut hits = 0;
    let runs = 400;
    for run in 0..runs {
        let (ps, theta) = &instances[run % instances.len()];
        let params = ApproxParams { alpha, seed: run as u64, ..ApproxParams::default() };
        let trace = reweight_directions(ps, &params).map_err(|e| e.to_string())?;
        let mut rng = SeedStream::new(run as u64).substream(1);
        let c = combine_gaussian(&trace, &mut rng).map_err(|e| e.to_string())?;
        let covered = ps.points().iter().filter(|x| dot(&c.normal, x).abs() > alpha * theta).count();
        hits += (covered >= need) as usize;
    }
    let freq = hits as f64 / runs as f64;
    ensure(freq >= 0.05, || format!("frequency {freq}"))?;
    Ok(format!("frequency {freq:.3} over {runs} runs"))
}

/// 18 planted satisfiable formulas and two unsatisfiable ones.
fn corpus() -> Vec<CnfFormula> {
    let mut out: Vec<CnfFormula> = (0..18u64)
        .map(|k| CnfFormula::planted_3sat13(10 + k as usize, 15 + 2 * k as usize, 4000 + k).unwrap().0)
        .collect();
    for extra in [7usize, 12] {
        let mut clauses: Vec<Vec<i32>> = (0..8)
            .map(|m| (1..=3).map(|v| if m & (1 << (v - 1)) != 0 { v } else { -v }).collect())
            .collect();
        clauses.extend((0..extra as i32).map(|i| vec![4 + i, 4 + (i + 1) % extra as i32, -(4 + (i + 2) % extra as i32)]));
        out.push(CnfFormula::new(3 + extra, clauses).unwrap());
    }
    out
}

fn criterion_05() -> Outcome {
    let mut satisfiable = 0;
    for (k, phi) in corpus().iter().enumerate() {
        phi.check_3sat13().map_err(|e| format!("formula {k}: {e}"))?;
        let r = reduce(phi, k as u64).map_err(|e| format!("formula {k}: {e}"))?;
        let m = phi.num_clauses();
        let d = r.psi.num_vars();
        let big_m = r.psi.num_clauses();
        ensure(big_m == 16 * m, || format!("formula {k}: {big_m} clauses for m = {m}"))?;
        ensure(r.psi.occurrences().iter().all(|&c| c <= 30), || format!("formula {k}: occurrence above 30"))?;
        let lo = 1.0 / 12f64.sqrt() - 1e-12;
        ensure(r.points.points().iter().all(|p| (lo..=1.0 + 1e-12).contains(&norm(p))), || {
            format!("formula {k}: norm out of range")
        })?;
        ensure(r.points.len() == big_m + d, || format!("formula {k}: {} points", r.points.len()))?;
        let units = (0..d).all(|j| {
            let p = r.points.point(big_m + j);
            p.iter().enumerate().all(|(i, &v)| if i == j { v == 1.0 / EMBED_SCALE } else { v == 0.0 })
        });
        ensure(units, || format!("formula {k}: appended unit vectors wrong"))?;
        if let Some(a) = phi.find_satisfying_assignment() {
            satisfiable += 1;
            let w = assignment_to_hyperplane(&r.psi.extend_assignment(&a));
            let got = margin_of(&w, &r.points).map_err(|e| e.to_string())?;
            let bound = completeness_margin(d) - 1e-12;
            ensure(got >= bound, || format!("formula {k}: completeness margin {got} < {bound}"))?;
        }
    }
    ensure(satisfiable == 18, || format!("{satisfiable} satisfiable formulas, expected 18"))?;
    Ok(format!("20 formulas, {satisfiable} satisfiable with completeness margin reached"))
}

fn criterion_06() -> Outcome {
    let mut worst: f64 = f64::INFINITY;
    let mut max_attempts = 0;
    for m in [60, 100, 200] {
        for k in 0..20u64 {
            let g = build_expander(m, 5000 + k).map_err(|e| format!("m = {m}, graph {k}: {e}"))?;
            g.certify().map_err(|e| format!("m = {m}, graph {k}: {e}"))?;
            ensure(g.attempts <= 100 && g.expansion_lb > 2.8, || format!("m = {m}, graph {k}: {g:?}"))?;
            worst = worst.min(g.expansion_lb);
            max_attempts = max_attempts.max(g.attempts);
        }
    }
    Ok(format!("60 graphs, min (14 - lambda)/2 = {worst:.3}, max attempts {max_attempts}"))
}

fn criterion_07() -> Outcome {
    let mut ratios = Vec::new();
    for n in [8, 16, 32] {
        let g = sdp_gap_demo(n).map_err(|e| e.to_string())?;
        let sweep = oracle::angle_sweep_theta(gen_circle(n).unwrap().points());
        ensure((g.integral_theta - sweep).abs() <= 1e-9, || format!("n = {n}: {} vs {sweep}", g.integral_theta))?;
        ensure(g.sdp_feasible_value == 0.5 && g.feasibility.holds, || format!("n = {n}: infeasible"))?;
        ratios.push(g.ratio);
    }
    ensure(ratios[0] < ratios[1] && ratios[1] < ratios[2], || format!("ratios {ratios:?}"))?;
    let growth = ratios[2] / ratios[0];
    ensure(growth >= 8.0, || format!("ratio(32)/ratio(8) = {growth}"))?;
    Ok(format!("ratios {:.3} {:.3} {:.3}, growth {growth:.2}", ratios[0], ratios[1], ratios[2]))
}

fn criterion_08() -> Outcome {
    let seed = 2024;
    ensure(seed != CALIBRATION_SEED, || "evaluation seed equals the calibration seed".into())?;
    let r = random_margin_study(20, 10, 60, seed).map_err(|e| e.to_string())?;
    ensure(r.frequency >= 2.0 / 3.0, || format!("frequency {}", r.frequency))?;
    Ok(format!(
        "frequency {:.3} with c_low = {}, c_high = {}",
        r.frequency, r.c_low, r.c_high
    ))
}

fn criterion_09() -> Outcome {
    let inner = InnerSolver::Bfs(ExactOptions::default());
    let mut worst: f64 = 0.0;
    for k in 0..50u64 {
        let ps = gen_gaussian(2 + (k % 5) as usize, 2, 6000 + k).unwrap();
        let got = solve_mmc(&ps, &inner).map_err(|e| format!("instance {k}: {e}"))?.margin;
        let want = oracle::mmc_sweep(&ps.original_points());
        worst = worst.max((got - want).abs());
        ensure((got - want).abs() <= 1e-4, || format!("instance {k}: {got} vs sweep {want}"))?;
    }
    Ok(format!("50 instances, max error {worst:.1e}"))
}

fn fhp(dir: &Path, args: &[&str]) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_fhp"))
        .current_dir(dir)
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!("`fhp {}` failed: {}", args.join(" "), String::from_utf8_lossy(&out.stderr))
    })
}

fn criterion_10() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let dir = tmp.path();
    std::fs::write(dir.join("tiny.dimacs"), corpus()[0].to_dimacs()).map_err(|e| e.to_string())?;
    // (command, files it produces); the first produced file is the report
    let runs: Vec<(Vec<&str>, Vec<&str>)> = vec![
        (vec!["gen", "gaussian", "--n", "6", "--d", "2", "--seed", "7", "--out", "g.fhp", "--report", "g.rep"], vec!["g.rep", "g.fhp"]),
        (vec!["gen", "circle", "--n", "8", "--out", "c8.fhp", "--report", "c8.rep"], vec!["c8.rep", "c8.fhp"]),
        (vec!["solve", "bfs", "--in", "c8.fhp", "--out", "bfs.rep"], vec!["bfs.rep"]),
        (vec!["solve", "net", "--in", "g.fhp", "--out", "net.rep"], vec!["net.rep"]),
        (vec!["solve", "random", "--in", "g.fhp", "--seed", "3", "--budget", "512", "--out", "random.rep"], vec!["random.rep"]),
        (vec!["solve", "approx", "--in", "g.fhp", "--seed", "4", "--out", "approx.rep"], vec!["approx.rep"]),
        (vec!["solve", "mmc", "--in", "g.fhp", "--out", "mmc.rep"], vec!["mmc.rep"]),
        (vec!["reduce", "--cnf", "tiny.dimacs", "--seed", "1", "--out", "hard.fhp", "--report", "hard.rep"], vec!["hard.rep", "hard.fhp", "hard.fhp.sym.cnf", "hard.fhp.sym.pairs"]),
        (vec!["study", "random-margin", "--n", "20", "--d", "10", "--trials", "20", "--seed", "5", "--out", "study.rep"], vec!["study.rep"]),
        (vec!["gap-demo", "--n", "16", "--out", "gap.rep"], vec!["gap.rep"]),
    ];
    for (args, files) in &runs {
        fhp(dir, args)?;
        let first: Vec<Vec<u8>> = files.iter().map(|f| std::fs::read(dir.join(f)).unwrap_or_default()).collect();
        // regenerate from the embedded configuration
        let verify = Command::new(env!("CARGO_BIN_EXE_fhp"))
            .current_dir(dir)
            .args(["verify", "--in", files[0]])
            .output()
            .map_err(|e| e.to_string())?;
        let text = String::from_utf8_lossy(&verify.stdout);
        ensure(verify.status.success() && text.contains("check.replay=pass"), || {
            format!("verify {} failed:\n{text}", files[0])
        })?;
        fhp(dir, args)?;
        for (f, before) in files.iter().zip(&first) {
            let after = std::fs::read(dir.join(f)).map_err(|e| e.to_string())?;
            ensure(&after == before, || format!("{f} changed on re-run"))?;
        }
    }
    Ok(format!("{} reports replayed with identical bytes", runs.len()))
}
