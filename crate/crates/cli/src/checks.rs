//! Invariant checks shared by report production and `verify`. Each check
//! recomputes its quantity from the inputs rather than trusting the report.

use fhp_core::approx::coverage_curve;
use fhp_core::geometry::PointSet;
use fhp_core::instances::embed::{completeness_margin, EMBED_SCALE};
use fhp_core::instances::expander::{ExpanderGraph, EXPANDER_DEGREE};
use fhp_core::instances::gap::sdp_feasible_solution;
use fhp_core::instances::{gen_circle, points_from_sym, SymFormula};
use fhp_core::linalg::{dot, norm};
use fhp_core::report::{parse_signature, Report};
use fhp_core::{Result, Tolerances};

pub type Checks = Vec<(&'static str, bool)>;

/// Agreement required between a reported margin and its recomputation.
const MARGIN_SLACK: f64 = 1e-12;

pub fn point_set(ps: &PointSet, tol: &Tolerances) -> Checks {
    vec![
        ("finite", ps.points().iter().flatten().all(|x| x.is_finite())),
        ("norms", ps.points().iter().all(|p| norm(p) <= 1.0 + tol.norm)),
        ("scale", ps.scale() > 0.0 && ps.scale().is_finite()),
    ]
}

/// Through-origin witness: unit normal, and `min_i y_i⟨w, x_i⟩` equal to
/// the reported margin.
pub fn solve(report: &Report, ps: &PointSet, tol: &Tolerances) -> Result<Checks> {
    let w = report.get_vec("result.witness")?;
    let labels = parse_signature(report.require("result.labels")?)?;
    let margin = report.get_f64("result.margin")?;
    if w.len() != ps.dim() || labels.len() != ps.len() {
        return Ok(vec![("witness_shape", false)]);
    }
    let recomputed = ps
        .points()
        .iter()
        .zip(&labels)
        .map(|(x, &y)| y as f64 * dot(&w, x))
        .fold(f64::INFINITY, f64::min);
    Ok(vec![
        ("witness_unit", (norm(&w) - 1.0).abs() <= tol.unit),
        ("witness_margin", recomputed > 0.0 && (recomputed - margin).abs() <= MARGIN_SLACK),
    ])
}

pub fn approx(report: &Report, ps: &PointSet, tol: &Tolerances) -> Result<Checks> {
    let w = report.get_vec("result.witness")?;
    if w.len() != ps.dim() {
        return Ok(vec![("witness_shape", false)]);
    }
    let m = report.get_usize("result.coverage_count")?;
    let curve = coverage_curve(&w, ps);
    let level = report.get_f64("result.coverage_level")?;
    let margin = report.get_f64("result.margin")?;
    let energy = report.get_f64("result.min_energy")?;
    Ok(vec![
        ("witness_unit", (norm(&w) - 1.0).abs() <= tol.unit),
        ("witness_margin", (curve[curve.len() - 1] - margin).abs() <= MARGIN_SLACK),
        ("coverage_level", m >= 1 && m <= curve.len() && (curve[m - 1] - level).abs() <= MARGIN_SLACK),
        ("energy", energy >= (ps.len() as f64).log2()),
    ])
}

pub fn mmc(report: &Report, ps: &PointSet, tol: &Tolerances) -> Result<Checks> {
    let w = report.get_vec("result.normal")?;
    let b = report.get_f64("result.offset")?;
    let margin = report.get_f64("result.margin")?;
    if w.len() != ps.dim() {
        return Ok(vec![("witness_shape", false)]);
    }
    let values: Vec<f64> = ps.original_points().iter().map(|x| dot(&w, x) + b).collect();
    let recomputed = values.iter().map(|v| v.abs()).fold(f64::INFINITY, f64::min);
    let slack = MARGIN_SLACK * ps.scale().max(1.0);
    Ok(vec![
        ("witness_unit", (norm(&w) - 1.0).abs() <= tol.unit),
        ("witness_margin", (recomputed - margin).abs() <= slack),
        ("both_sides", values.iter().any(|&v| v > 0.0) && values.iter().any(|&v| v < 0.0)),
    ])
}

pub fn gap(report: &Report) -> Result<Checks> {
    let n = report.get_usize("config.n")?;
    let ps = gen_circle(n)?;
    let value = report.get_f64("result.sdp_feasible_value")?;
    let theta = report.get_f64("result.integral_theta")?;
    let ratio = report.get_f64("result.ratio")?;
    let w = report.get_vec("result.witness")?;
    let achieved = fhp_core::margin_of(&w, &ps).unwrap_or(f64::NAN);
    Ok(vec![
        ("sdp_feasible", sdp_feasible_solution(&ps).holds),
        ("sdp_value", value == 1.0 / ps.dim() as f64),
        ("witness_margin", (achieved - theta).abs() <= MARGIN_SLACK),
        ("ratio", ratio == value / (theta * theta)),
    ])
}

pub fn study(report: &Report) -> Result<Checks> {
    let trials = report.get_usize("config.trials")?;
    let lo = report.get_f64("result.band_low")?;
    let hi = report.get_f64("result.band_high")?;
    let freq = report.get_f64("result.frequency")?;
    let mut inside = 0usize;
    let mut ordered = true;
    let mut flags = true;
    for k in 0..trials {
        let row = report.require(&format!("trial.{k}"))?;
        let f: Vec<&str> = row.split_whitespace().collect();
        let (Some(l), Some(u), Some(flag)) = (
            f.first().and_then(|v| v.parse::<f64>().ok()),
            f.get(1).and_then(|v| v.parse::<f64>().ok()),
            f.get(3),
        ) else {
            return Ok(vec![("trial_rows", false)]);
        };
        ordered &= l <= u + MARGIN_SLACK;
        let is_inside = l >= lo && u <= hi;
        flags &= (*flag == "inside") == is_inside;
        inside += is_inside as usize;
    }
    Ok(vec![
        ("frequency_range", (0.0..=1.0).contains(&freq)),
        ("frequency", freq == inside as f64 / trials as f64),
        ("bounds_ordered", ordered),
        ("inside_flags", flags),
    ])
}

/// Structural checks of a reduction instance: clause count, occurrence
/// bound, norm range, appended unit vectors, the embedding itself and the
/// expander certificate.
pub fn reduction(psi: &SymFormula, ps: &PointSet) -> Checks {
    let d = psi.num_vars();
    let m = psi.pair_vars();
    let lo = 1.0 / EMBED_SCALE - 1e-12;
    let norms_ok = ps.points().iter().all(|p| {
        let r = norm(p);
        r >= lo && r <= 1.0 + 1e-12
    });
    let units_ok = ps.len() == psi.num_clauses() + d
        && (0..d).all(|j| {
            let p = ps.point(psi.num_clauses() + j);
            p.iter().enumerate().all(|(k, &v)| if k == j { v == 1.0 / EMBED_SCALE } else { v == 0.0 })
        });
    let embedding_ok = points_from_sym(psi).is_ok_and(|q| q == *ps);
    let graph = ExpanderGraph::from_edges(m, EXPANDER_DEGREE, psi.edges().to_vec());
    vec![
        ("clause_count", psi.num_clauses() == 16 * m),
        ("occurrences", psi.occurrences().iter().all(|&c| c <= 30)),
        ("sym_pairs", psi.validate().is_ok()),
        ("norm_range", norms_ok),
        ("unit_vectors", units_ok),
        ("embedding", embedding_ok),
        ("expander", graph.certify().is_ok()),
    ]
}

/// The completeness hyperplane reaches `1/√(12D)`.
pub fn completeness(psi: &SymFormula, ps: &PointSet, assignment: &[bool]) -> Checks {
    let w = fhp_core::instances::assignment_to_hyperplane(assignment);
    let ok = assignment.len() == psi.num_vars()
        && fhp_core::margin_of(&w, ps).is_ok_and(|m| m >= completeness_margin(psi.num_vars()) - 1e-12)
        && psi.satisfied_count(assignment) == psi.num_clauses();
    vec![("completeness", ok)]
}

pub fn record(report: &mut Report, checks: &Checks) {
    for &(name, pass) in checks {
        report.set_check(name, pass);
    }
}
