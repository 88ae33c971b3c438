//! Replays every checkable invariant of a report or instance file.

use std::path::Path;

use fhp_core::geometry::read_point_set;
use fhp_core::instances::SymFormula;
use fhp_core::report::{fnv1a, parse_signature, Report};
use fhp_core::Error;

use crate::checks::{self, Checks};
use crate::config::{Command, RunConfig, Solver};
use crate::error::{read, CliError};
use crate::run::{execute, sym_paths};

pub fn verify(path: &Path) -> Result<Report, CliError> {
    let text = read(path)?;
    let mut out = Report::new("verify");
    out.set("target", path.to_string_lossy());
    let mut found: Checks = Vec::new();
    if text.starts_with("fhp-report") {
        let report = Report::parse(&text)?;
        out.set("target_kind", report.kind().unwrap_or_default());
        found = verify_report(&report)?;
    } else if text.starts_with("fhp v1") {
        out.set("target_kind", "instance");
        let ps = read_point_set(&text)?;
        found.extend(checks::point_set(&ps, &fhp_core::Tolerances::DEFAULT));
        let (cnf, pairs) = sym_paths(path);
        if cnf.exists() && pairs.exists() {
            let psi = SymFormula::from_parts(&read(&cnf)?, &read(&pairs)?)?;
            found.extend(checks::reduction(&psi, &ps));
        }
    } else {
        return Err(Error::Parse { line: 1, message: "not an fhp report or instance".into() }.into());
    }
    checks::record(&mut out, &found);
    Ok(out)
}

fn verify_report(report: &Report) -> Result<Checks, CliError> {
    let cfg = RunConfig::from_report(report)?;
    let mut found: Checks = Vec::new();
    if let (Some(expected), Some(input)) = (report.get("input.fnv1a"), cfg.input.as_deref()) {
        found.push(("input_hash", read(input).is_ok_and(|t| fnv1a(t.as_bytes()) == expected)));
    }
    match cfg.command {
        Command::Solve(solver) => {
            let ps = read_point_set(&read(cfg.input.as_deref().unwrap_or(Path::new("")))?)?;
            found.extend(match solver {
                Solver::Approx => checks::approx(report, &ps, &cfg.tol)?,
                Solver::Mmc => checks::mmc(report, &ps, &cfg.tol)?,
                _ => checks::solve(report, &ps, &cfg.tol)?,
            });
        }
        Command::GapDemo => found.extend(checks::gap(report)?),
        Command::StudyRandomMargin => found.extend(checks::study(report)?),
        Command::GenGaussian | Command::GenCircle => {
            let out = cfg.out.clone().unwrap_or_default();
            let text = read(&out)?;
            found.push(("artifact_hash", report.get("artifact.out.fnv1a") == Some(fnv1a(text.as_bytes()).as_str())));
            found.extend(checks::point_set(&read_point_set(&text)?, &cfg.tol));
        }
        Command::Reduce => {
            let out = cfg.out.clone().unwrap_or_default();
            let (cnf_path, pairs_path) = sym_paths(&out);
            let points = read(&out)?;
            let cnf = read(&cnf_path)?;
            let pairs = read(&pairs_path)?;
            let hashes_ok = report.get("artifact.out.fnv1a") == Some(fnv1a(points.as_bytes()).as_str())
                && report.get("artifact.sym_cnf.fnv1a") == Some(fnv1a(cnf.as_bytes()).as_str())
                && report.get("artifact.sym_pairs.fnv1a") == Some(fnv1a(pairs.as_bytes()).as_str());
            found.push(("artifact_hash", hashes_ok));
            let ps = read_point_set(&points)?;
            let psi = SymFormula::from_parts(&cnf, &pairs)?;
            found.extend(checks::reduction(&psi, &ps));
            if let Some(sig) = report.get("result.assignment") {
                let full: Vec<bool> = parse_signature(sig)?.into_iter().map(|y| y > 0).collect();
                found.extend(checks::completeness(&psi, &ps, &full));
            }
        }
    }
    found.push(("replay", replay_matches(&cfg, report)));
    Ok(found)
}

/// Re-runs the embedded configuration and compares the report text,
/// ignoring wall-clock timing.
fn replay_matches(cfg: &RunConfig, report: &Report) -> bool {
    let Ok(outcome) = execute(cfg) else {
        return false;
    };
    let mut fresh = outcome.report;
    let mut stored = report.clone();
    fresh.remove_section("timing");
    stored.remove_section("timing");
    fresh.to_text() == stored.to_text()
}
