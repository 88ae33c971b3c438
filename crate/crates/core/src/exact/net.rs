use std::collections::HashSet;
use std::time::Instant;

use rayon::prelude::*;

use super::{better, SolveResult, SolveStatus};
use crate::error::{Error, Result};
use crate::geometry::{solve_labeled_with, Labeling, PointSet};
use crate::linalg::dot;
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetOptions {
    /// Largest net (in points) a single round may build.
    pub max_net_points: usize,
    /// Number of margin guesses `1, 1/2, 1/4, …` tried at most.
    pub max_rounds: usize,
    pub tol: Tolerances,
}

impl Default for NetOptions {
    fn default() -> Self {
        Self { max_net_points: 20_000_000, max_rounds: 40, tol: Tolerances::default() }
    }
}

/// Visits the points of an `eps`-net of the unit sphere in `R^d`.
///
/// The net is the set of points of the axis grid of mesh `eps/√d` whose norm
/// lies within `eps/2` of one; the nearest grid point to any unit vector is
/// among them and lies within `eps/2` of it, so its normalization lies within
/// `eps`. Points are passed unnormalized. Returns the number visited, or
/// `None` as soon as `limit` would be exceeded.
pub fn net_points(d: usize, eps: f64, limit: usize, mut visit: impl FnMut(&[f64])) -> Option<usize> {
    assert!(d >= 1 && eps > 0.0);
    let h = eps / (d as f64).sqrt();
    let k_max = (1.0 / h).ceil() as i64;
    let lo = (1.0 - eps / 2.0).max(0.0).powi(2);
    let hi = (1.0 + eps / 2.0).powi(2);
    let mut coords = vec![0.0; d];
    let mut count = 0usize;
    let complete = walk(0, 0.0, d, h, k_max, lo, hi, &mut coords, &mut count, limit, &mut visit);
    complete.then_some(count)
}

#[allow(clippy::too_many_arguments)]
fn walk(
    axis: usize,
    partial: f64,
    d: usize,
    h: f64,
    k_max: i64,
    lo: f64,
    hi: f64,
    coords: &mut [f64],
    count: &mut usize,
    limit: usize,
    visit: &mut impl FnMut(&[f64]),
) -> bool {
    let room = hi - partial;
    if room < 0.0 {
        return true;
    }
    let reach = ((room.sqrt() / h).floor() as i64).min(k_max);
    if axis + 1 == d {
        for k in -reach..=reach {
            let x = k as f64 * h;
            let total = partial + x * x;
            if total >= lo && total <= hi {
                coords[axis] = x;
                *count += 1;
                if *count > limit {
                    return false;
                }
                visit(coords);
            }
        }
        return true;
    }
    for k in -reach..=reach {
        let x = k as f64 * h;
        coords[axis] = x;
        if !walk(axis + 1, partial + x * x, d, h, k_max, lo, hi, coords, count, limit, visit) {
            return false;
        }
    }
    true
}

/// ε-net search with a halving margin guess.
///
/// For guess `g` the net has mesh `g/2`. Any normal within distance `θ` of
/// the optimum induces the optimal labeling, so once the best margin found
/// reaches `g` the optimum is certified.
pub fn solve_eps_net(ps: &PointSet, opts: &NetOptions) -> Result<SolveResult> {
    let started = Instant::now();
    let tol = &opts.tol;
    if ps.zero_point(tol.feas).is_some() {
        return Err(Error::NoFeasibleLabeling);
    }
    let mut seen: HashSet<Vec<i8>> = HashSet::new();
    let mut best: Option<Labeling> = None;
    let mut evaluated = 0u64;
    let mut guess = 1.0f64;

    for _ in 0..opts.max_rounds {
        let mut fresh: Vec<Vec<i8>> = Vec::new();
        let visited = net_points(ps.dim(), guess / 2.0, opts.max_net_points, |g| {
            let signs: Vec<i8> = ps
                .points()
                .iter()
                .map(|x| if dot(g, x) >= 0.0 { 1 } else { -1 })
                .collect();
            if !seen.contains(&signs) {
                seen.insert(signs.clone());
                fresh.push(signs);
            }
        });
        let Some(visited) = visited else {
            break;
        };
        evaluated += visited as u64;

        let solved: Vec<Result<Labeling>> =
            fresh.par_iter().map(|s| solve_labeled_with(s, ps, tol)).collect();
        for l in solved {
            let l = l?;
            if better(&l, &best) {
                best = Some(l);
            }
        }
        if let Some(b) = &best {
            if b.solved_margin >= guess - tol.feas {
                return Ok(result(b.clone(), seen.len(), evaluated, SolveStatus::Certified, started));
            }
        }
        guess /= 2.0;
    }
    let best = best.ok_or(Error::NoFeasibleLabeling)?;
    Ok(result(best, seen.len(), evaluated, SolveStatus::BudgetExhausted, started))
}

fn result(best: Labeling, explored: usize, evaluated: u64, status: SolveStatus, started: Instant) -> SolveResult {
    SolveResult {
        solver: "net",
        margin: best.solved_margin,
        best,
        labelings_explored: explored,
        samples_drawn: evaluated,
        status,
        seed: 0,
        elapsed: started.elapsed(),
    }
}
