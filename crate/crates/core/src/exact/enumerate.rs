use std::collections::{HashMap, VecDeque};
use std::time::Instant;

use rayon::prelude::*;

use super::{better, ExactOptions, SolveResult, SolveStatus};
use crate::error::{Error, Result};
use crate::geometry::{signs_of, solve_labeled_with, Labeling, PointSet};
use crate::linalg::{dot, norm};
use crate::rng::{sample_unit_vector, SeedStream};
use crate::tolerance::Tolerances;

/// `sin²` of the angle below which two points count as parallel.
const PARALLEL_SIN2: f64 = 1e-20;

/// `n^(d+1)`, saturating.
pub fn sauer_bound(n: usize, d: usize) -> usize {
    let mut b: usize = 1;
    for _ in 0..=d {
        b = b.saturating_mul(n);
    }
    b
}

/// Points grouped by the line through the origin they span.
///
/// Points on a common line share every hyperplane crossing, so the labeling
/// graph is explored over one representative per line; a member's label is
/// its representative's label times `relation`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionClasses {
    /// Point index representing each class (the longest member).
    pub representatives: Vec<usize>,
    pub class_of: Vec<usize>,
    /// `+1` if the point points the same way as its representative.
    pub relation: Vec<i8>,
}

impl DirectionClasses {
    /// Returns `None` when a zero point is present.
    pub fn new(ps: &PointSet, tol: &Tolerances) -> Option<Self> {
        if ps.zero_point(tol.feas).is_some() {
            return None;
        }
        let n = ps.len();
        let mut representatives: Vec<usize> = Vec::new();
        let mut class_of = vec![0; n];
        let mut relation = vec![1i8; n];
        for i in 0..n {
            let xi = ps.point(i);
            let ni2 = dot(xi, xi);
            let found = representatives.iter().position(|&r| {
                let xr = ps.point(r);
                let c = dot(xi, xr);
                let nr2 = dot(xr, xr);
                ni2 * nr2 - c * c <= PARALLEL_SIN2 * ni2 * nr2
            });
            match found {
                Some(c) => {
                    class_of[i] = c;
                    let r = representatives[c];
                    relation[i] = if dot(xi, ps.point(r)) >= 0.0 { 1 } else { -1 };
                    if norm(xi) > norm(ps.point(r)) {
                        // promote i to representative; re-express members
                        representatives[c] = i;
                        for k in 0..i {
                            if class_of[k] == c {
                                relation[k] *= relation[i];
                            }
                        }
                        relation[i] = 1;
                    }
                }
                None => {
                    class_of[i] = representatives.len();
                    representatives.push(i);
                }
            }
        }
        Some(Self { representatives, class_of, relation })
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// Expands a labeling of the representatives to every point.
    pub fn expand(&self, class_labels: &[i8]) -> Vec<i8> {
        self.class_of
            .iter()
            .zip(&self.relation)
            .map(|(&c, &r)| class_labels[c] * r)
            .collect()
    }

    pub fn representative_set(&self, ps: &PointSet) -> PointSet {
        let pts = self.representatives.iter().map(|&r| ps.point(r).to_vec()).collect();
        PointSet::new(pts).expect("subset of a valid point set")
    }
}

struct Enumeration {
    feasible: Vec<Labeling>,
    explored: usize,
}

fn enumerate(ps: &PointSet, opts: &ExactOptions) -> Result<Enumeration> {
    let tol = &opts.tol;
    let Some(classes) = DirectionClasses::new(ps, tol) else {
        return Ok(Enumeration { feasible: Vec::new(), explored: 0 });
    };
    let reps = classes.representative_set(ps);
    let bound = sauer_bound(ps.len(), ps.dim()).saturating_mul(2);

    let mut rng = SeedStream::new(opts.seed).substream(0);
    let mut start = None;
    for _ in 0..64 {
        let w = sample_unit_vector(&mut rng, ps.dim());
        let l = solve_labeled_with(&signs_of(&w, &reps), &reps, tol)?;
        if l.feasible {
            start = Some(l.labels);
            break;
        }
    }
    let Some(start) = start else {
        return Err(Error::DegenerateInstance(
            "no random direction induced a feasible labeling".into(),
        ));
    };

    // checked[labels] = feasible?
    let mut checked: HashMap<Vec<i8>, bool> = HashMap::new();
    checked.insert(start.clone(), true);
    let mut order: Vec<Vec<i8>> = vec![start.clone()];
    let mut frontier: VecDeque<Vec<i8>> = VecDeque::from([start]);

    while !frontier.is_empty() {
        let mut candidates: Vec<Vec<i8>> = Vec::new();
        for node in frontier.drain(..) {
            for k in 0..node.len() {
                let mut next = node.clone();
                next[k] = -next[k];
                if !checked.contains_key(&next) && !candidates.contains(&next) {
                    candidates.push(next);
                }
            }
        }
        let solved: Vec<Result<bool>> = candidates
            .par_iter()
            .map(|c| solve_labeled_with(c, &reps, tol).map(|l| l.feasible))
            .collect();
        for (c, feasible) in candidates.into_iter().zip(solved) {
            let feasible = feasible?;
            checked.insert(c.clone(), feasible);
            if feasible {
                order.push(c.clone());
                frontier.push_back(c);
            }
        }
        if order.len() > bound {
            return Err(Error::Degeneracy { explored: order.len(), bound });
        }
    }

    let explored = checked.len();
    let full: Vec<Result<Labeling>> = order
        .par_iter()
        .map(|c| solve_labeled_with(&classes.expand(c), ps, tol))
        .collect();
    let mut feasible = Vec::with_capacity(full.len());
    for l in full {
        let l = l?;
        // a short member can push the margin under the feasibility tolerance
        if l.feasible {
            feasible.push(l);
        }
    }
    Ok(Enumeration { feasible, explored })
}

/// All feasible labelings of `ps`, found by breadth-first search over
/// labelings that differ in one label. Results are in discovery order.
pub fn enumerate_feasible_labelings(ps: &PointSet, opts: &ExactOptions) -> Result<Vec<Labeling>> {
    enumerate(ps, opts).map(|e| e.feasible)
}

/// The optimal margin, as the best feasible labeling of the enumeration.
pub fn solve_exact_bfs(ps: &PointSet, opts: &ExactOptions) -> Result<SolveResult> {
    let started = Instant::now();
    let e = enumerate(ps, opts)?;
    let mut best: Option<Labeling> = None;
    for l in e.feasible {
        if better(&l, &best) {
            best = Some(l);
        }
    }
    let best = best.ok_or(Error::NoFeasibleLabeling)?;
    Ok(SolveResult {
        solver: "bfs",
        margin: best.solved_margin,
        best,
        labelings_explored: e.explored,
        samples_drawn: 0,
        status: SolveStatus::Certified,
        seed: opts.seed,
        elapsed: started.elapsed(),
    })
}
