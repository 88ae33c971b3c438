//! Dispatch of a validated [`RunConfig`]. Execution is pure: artifacts are
//! returned rather than written, so `verify` can replay a run in memory.

use std::path::{Path, PathBuf};

use fhp_core::approx::approx_solve;
use fhp_core::exact::{
    solve_eps_net, solve_exact_bfs, solve_random_hyperplane, ExactOptions, NetOptions, RandomOptions,
    SampleBudget, SolveResult,
};
use fhp_core::geometry::{fmt_f64, read_point_set, write_point_set, PointSet};
use fhp_core::instances::random_model::random_margin_study;
use fhp_core::instances::{gen_circle, gen_gaussian, reduce, sdp_gap_demo, CnfFormula};
use fhp_core::mmc::{solve_mmc, InnerSolver};
use fhp_core::report::{fnv1a, labels_signature, Report};

use crate::checks;
use crate::config::{Command, Inner, RunConfig, Solver};
use crate::error::{read, CliError};

pub struct Outcome {
    pub report: Report,
    /// Files to write: path and contents.
    pub artifacts: Vec<(PathBuf, String)>,
}

pub fn sym_paths(out: &Path) -> (PathBuf, PathBuf) {
    let base = out.to_string_lossy();
    (PathBuf::from(format!("{base}.sym.cnf")), PathBuf::from(format!("{base}.sym.pairs")))
}

pub fn execute(cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.validate()?;
    let kind = match cfg.command {
        Command::GenGaussian | Command::GenCircle => "gen",
        Command::Reduce => "reduce",
        Command::Solve(_) => "solve",
        Command::StudyRandomMargin => "study",
        Command::GapDemo => "gap-demo",
    };
    let mut report = Report::new(kind);
    cfg.embed(&mut report);
    let mut artifacts = Vec::new();
    match cfg.command {
        Command::GenGaussian | Command::GenCircle => {
            let n = cfg.n.unwrap_or_default();
            let ps = if cfg.command == Command::GenGaussian {
                gen_gaussian(n, cfg.d.unwrap_or_default(), cfg.seed)?
            } else {
                gen_circle(n)?
            };
            let text = write_point_set(&ps);
            report.set("result.n", ps.len());
            report.set("result.d", ps.dim());
            report.set_f64("result.scale", ps.scale());
            report.set("artifact.out.fnv1a", fnv1a(text.as_bytes()));
            checks::record(&mut report, &checks::point_set(&ps, &cfg.tol));
            artifacts.push((cfg.out.clone().unwrap_or_default(), text));
        }
        Command::Reduce => {
            let text = load(cfg.input.as_deref(), &mut report)?;
            let phi = CnfFormula::parse_dimacs(&text)?;
            let r = reduce(&phi, cfg.seed)?;
            let points = write_point_set(&r.points);
            let (cnf_path, pairs_path) = sym_paths(cfg.out.as_deref().unwrap_or(Path::new("")));
            let sym_cnf = r.psi.to_dimacs();
            let sym_pairs = r.psi.to_sidecar();
            report.set("result.input_vars", phi.num_vars());
            report.set("result.input_clauses", phi.num_clauses());
            report.set("result.sym_vars", r.psi.num_vars());
            report.set("result.sym_clauses", r.psi.num_clauses());
            report.set("result.points", r.points.len());
            report.set_f64("result.scale", r.points.scale());
            report.set_f64("result.lambda2", r.graph.lambda2);
            report.set_f64("result.expansion_lb", r.graph.expansion_lb);
            report.set("result.expander_attempts", r.graph.attempts);
            report.set("result.gamma", "symbolic");
            let assignment = phi.find_satisfying_assignment();
            report.set("result.satisfiable", assignment.is_some());
            let mut checks = checks::reduction(&r.psi, &r.points);
            if let Some(a) = assignment {
                let full = r.psi.extend_assignment(&a);
                let labels: Vec<i8> = full.iter().map(|&t| if t { 1 } else { -1 }).collect();
                let w = fhp_core::instances::assignment_to_hyperplane(&full);
                report.set("result.assignment", labels_signature(&labels));
                report.set_f64("result.completeness_margin", fhp_core::margin_of(&w, &r.points)?);
                report.set_f64(
                    "result.completeness_bound",
                    fhp_core::instances::completeness_margin(r.psi.num_vars()),
                );
                checks.extend(checks::completeness(&r.psi, &r.points, &full));
            }
            report.set("artifact.out.fnv1a", fnv1a(points.as_bytes()));
            report.set("artifact.sym_cnf.path", cnf_path.to_string_lossy());
            report.set("artifact.sym_cnf.fnv1a", fnv1a(sym_cnf.as_bytes()));
            report.set("artifact.sym_pairs.path", pairs_path.to_string_lossy());
            report.set("artifact.sym_pairs.fnv1a", fnv1a(sym_pairs.as_bytes()));
            checks::record(&mut report, &checks);
            artifacts.push((cfg.out.clone().unwrap_or_default(), points));
            artifacts.push((cnf_path, sym_cnf));
            artifacts.push((pairs_path, sym_pairs));
        }
        Command::Solve(solver) => {
            let text = load(cfg.input.as_deref(), &mut report)?;
            let ps = read_point_set(&text)?;
            solve(cfg, solver, &ps, &mut report)?;
        }
        Command::StudyRandomMargin => {
            let trials = cfg.trials.unwrap_or_default();
            let r = random_margin_study(cfg.n.unwrap_or_default(), cfg.d.unwrap_or_default(), trials, cfg.seed)?;
            report.set_f64("result.c_low", r.c_low);
            report.set_f64("result.c_high", r.c_high);
            report.set_f64("result.band_low", r.band_low);
            report.set_f64("result.band_high", r.band_high);
            report.set_f64("result.frequency", r.frequency);
            for (k, t) in r.per_trial.iter().enumerate() {
                report.set(
                    &format!("trial.{k}"),
                    format!(
                        "{} {} {} {}",
                        fmt_f64(t.lower),
                        fmt_f64(t.upper),
                        if t.exact_upper { "exact" } else { "spectral" },
                        if t.inside { "inside" } else { "outside" }
                    ),
                );
            }
            let checks = checks::study(&report)?;
            checks::record(&mut report, &checks);
        }
        Command::GapDemo => {
            let g = sdp_gap_demo(cfg.n.unwrap_or_default())?;
            report.set("result.d", g.d);
            report.set_f64("result.sdp_feasible_value", g.sdp_feasible_value);
            report.set_f64("result.integral_theta", g.integral_theta);
            report.set_f64("result.ratio", g.ratio);
            report.set_vec("result.witness", &g.witness);
            report.set("result.labelings_explored", g.labelings_explored);
            report.set_f64("result.sdp_norm_sum", g.feasibility.norm_sum);
            report.set_f64("result.sdp_min_constraint", g.feasibility.min_constraint);
            let checks = checks::gap(&report)?;
            checks::record(&mut report, &checks);
        }
    }
    Ok(Outcome { report, artifacts })
}

fn load(path: Option<&Path>, report: &mut Report) -> Result<String, CliError> {
    let path = path.ok_or_else(|| CliError::Usage("missing input path".into()))?;
    let text = read(path)?;
    report.set("input.fnv1a", fnv1a(text.as_bytes()));
    Ok(text)
}

fn budget(cfg: &RunConfig, n: usize) -> Result<SampleBudget, CliError> {
    Ok(match (cfg.theta_lower, cfg.budget) {
        (Some(t), Some(b)) => SampleBudget { samples: b, theta_lower: Some(t), seed: cfg.seed },
        (Some(t), None) => SampleBudget::from_theta(n, t, cfg.c_rh, cfg.seed)?,
        (None, b) => SampleBudget::fixed(b.unwrap_or(1024), cfg.seed),
    })
}

fn solve(cfg: &RunConfig, solver: Solver, ps: &PointSet, report: &mut Report) -> Result<(), CliError> {
    let exact = ExactOptions { seed: cfg.seed, tol: cfg.tol };
    let net = NetOptions { max_net_points: cfg.max_net_points, tol: cfg.tol, ..NetOptions::default() };
    let random = RandomOptions { tol: cfg.tol, ..RandomOptions::default() };
    let result: SolveResult = match solver {
        Solver::Bfs => solve_exact_bfs(ps, &exact)?,
        Solver::Net => solve_eps_net(ps, &net)?,
        Solver::Random => solve_random_hyperplane(ps, &budget(cfg, ps.len())?, &random)?,
        Solver::Approx => {
            let r = approx_solve(ps, &cfg.approx_params())?;
            let energy = r.trace.sigma_energy().into_iter().fold(f64::INFINITY, f64::min);
            report.set("result.solver", "approx");
            report.set_f64("result.margin", r.hyperplane.achieved_margin);
            report.set_f64("result.margin_original", r.hyperplane.achieved_margin * ps.scale());
            report.set_vec("result.witness", &r.hyperplane.normal);
            report.set("result.rounds", r.trace.rounds());
            report.set_f64("result.min_energy", energy);
            report.set("result.coverage_count", r.coverage_count);
            report.set_f64("result.coverage_level", r.coverage_level);
            report.set("result.best_trial", r.best_trial);
            report.set_vec("result.curve", &r.curve);
            for c in &r.candidates {
                report.set(
                    &format!("candidate.{}", c.trial),
                    format!("{} {}", fmt_f64(c.raw_norm), fmt_f64(c.level)),
                );
            }
            let checks = checks::approx(report, ps, &cfg.tol)?;
            checks::record(report, &checks);
            return Ok(());
        }
        Solver::Mmc => {
            let inner = match cfg.inner {
                Inner::Bfs => InnerSolver::Bfs(exact),
                Inner::Net => InnerSolver::Net(net),
                Inner::Random => InnerSolver::Random(budget(cfg, ps.len())?, random),
            };
            let s = solve_mmc(ps, &inner)?;
            report.set("result.solver", "mmc");
            report.set("result.inner", inner.name());
            report.set_f64("result.margin", s.margin);
            report.set_vec("result.normal", &s.normal);
            report.set_f64("result.offset", s.offset);
            report.set_vec("result.center", &s.center);
            report.set("result.pair", format!("{} {}", s.pair.0, s.pair.1));
            report.set("result.positive", s.positive);
            report.set("result.negative", s.negative);
            let checks = checks::mmc(report, ps, &cfg.tol)?;
            checks::record(report, &checks);
            return Ok(());
        }
    };
    report.set("result.solver", result.solver);
    report.set("result.status", result.status.as_str());
    report.set_f64("result.margin", result.margin);
    report.set_f64("result.margin_original", result.margin * ps.scale());
    report.set_vec("result.witness", result.witness_normal());
    report.set("result.labels", labels_signature(&result.best.labels));
    report.set("result.labelings_explored", result.labelings_explored);
    report.set("result.samples_drawn", result.samples_drawn);
    let checks = checks::solve(report, ps, &cfg.tol)?;
    checks::record(report, &checks);
    Ok(())
}
