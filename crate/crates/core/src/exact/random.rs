use std::collections::HashSet;
use std::time::Instant;

use rayon::prelude::*;

use super::{better, SolveResult, SolveStatus};
use crate::error::{Error, Result};
use crate::geometry::{signs_of, solve_labeled_with, Labeling, PointSet};
use crate::rng::{sample_unit_vector, SeedStream};
use crate::tolerance::Tolerances;

/// Draws per seed sub-stream.
const CHUNK: u64 = 256;
/// Chunks processed between target checks.
const CHUNKS_PER_BLOCK: u64 = 16;

/// Number of random normals to draw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleBudget {
    pub samples: u64,
    pub theta_lower: Option<f64>,
    pub seed: u64,
}

impl SampleBudget {
    /// Default for the constant hidden in the `n^{O(1/θ²)}` sample count.
    pub const DEFAULT_C_RH: f64 = 4.0;

    pub fn fixed(samples: u64, seed: u64) -> Self {
        Self { samples, theta_lower: None, seed }
    }

    /// Budget of `⌈n^(c_rh/θ²)⌉` samples for a known margin lower bound.
    pub fn from_theta(n: usize, theta_lower: f64, c_rh: f64, seed: u64) -> Result<Self> {
        if !(theta_lower > 0.0 && theta_lower <= 1.0) {
            return Err(Error::InvalidInput(format!("theta_lower must lie in (0, 1], got {theta_lower}")));
        }
        Ok(Self {
            samples: Self::required_samples(n, theta_lower, c_rh),
            theta_lower: Some(theta_lower),
            seed,
        })
    }

    /// `⌈n^(c_rh/θ²)⌉`, saturating at `u64::MAX`.
    pub fn required_samples(n: usize, theta: f64, c_rh: f64) -> u64 {
        let exponent = c_rh / (theta * theta);
        let log2 = exponent * (n as f64).log2();
        if log2 >= 64.0 {
            return u64::MAX;
        }
        ((n as f64).powf(exponent).ceil() as u64).max(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomOptions {
    /// Hard cap on draws regardless of the budget.
    pub max_draws: u64,
    /// With a `theta_lower`, stop as soon as a labeling reaches it.
    pub stop_at_target: bool,
    /// Without a `theta_lower`, rounds of doubling size run until the best
    /// labeling is unchanged this many times in a row.
    pub stable_rounds: usize,
    pub tol: Tolerances,
}

impl Default for RandomOptions {
    fn default() -> Self {
        Self {
            max_draws: 100_000_000,
            stop_at_target: true,
            stable_rounds: 3,
            tol: Tolerances::default(),
        }
    }
}

struct Sampler<'a> {
    ps: &'a PointSet,
    stream: SeedStream,
    tol: Tolerances,
    seen: HashSet<Vec<i8>>,
    best: Option<Labeling>,
    drawn: u64,
}

impl Sampler<'_> {
    /// Signatures of draws `[from, to)` of chunk `chunk`, deduplicated.
    fn chunk_signatures(&self, chunk: u64, from: u64, to: u64) -> Vec<Vec<i8>> {
        let mut rng = self.stream.substream(chunk);
        let mut out: Vec<Vec<i8>> = Vec::new();
        for j in 0..to {
            let w = sample_unit_vector(&mut rng, self.ps.dim());
            if j < from {
                continue;
            }
            let s = signs_of(&w, self.ps);
            if !out.contains(&s) {
                out.push(s);
            }
        }
        out
    }

    /// Draws global indices `[self.drawn, end)`, checking `target` after each
    /// block. Returns true if the target was reached.
    fn draw_until(&mut self, end: u64, target: Option<f64>) -> Result<bool> {
        while self.drawn < end {
            let block_end = end.min((self.drawn / CHUNK + CHUNKS_PER_BLOCK) * CHUNK);
            let first_chunk = self.drawn / CHUNK;
            let last_chunk = (block_end - 1) / CHUNK;
            let drawn = self.drawn;
            let per_chunk: Vec<Vec<Vec<i8>>> = (first_chunk..=last_chunk)
                .into_par_iter()
                .map(|c| {
                    let lo = drawn.max(c * CHUNK) - c * CHUNK;
                    let hi = block_end.min((c + 1) * CHUNK) - c * CHUNK;
                    self.chunk_signatures(c, lo, hi)
                })
                .collect();
            let mut fresh: Vec<Vec<i8>> = Vec::new();
            for s in per_chunk.into_iter().flatten() {
                if self.seen.insert(s.clone()) {
                    fresh.push(s);
                }
            }
            let solved: Vec<Result<Labeling>> = fresh
                .par_iter()
                .map(|s| solve_labeled_with(s, self.ps, &self.tol))
                .collect();
            for l in solved {
                let l = l?;
                if better(&l, &self.best) {
                    self.best = Some(l);
                }
            }
            self.drawn = block_end;
            if let (Some(t), Some(b)) = (target, &self.best) {
                if b.solved_margin >= t - self.tol.feas {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

/// Random hyperplane algorithm: draw uniform unit normals, solve each
/// distinct induced labeling once, keep the best.
///
/// With `budget.theta_lower` the draw count is `budget.samples` (and the
/// search may stop once the target margin is reached). Without it, rounds
/// of `samples`, `2·samples`, … run until the best labeling has been stable
/// for `opts.stable_rounds` rounds; that result is flagged heuristic.
pub fn solve_random_hyperplane(ps: &PointSet, budget: &SampleBudget, opts: &RandomOptions) -> Result<SolveResult> {
    if budget.samples == 0 {
        return Err(Error::InvalidInput("sample budget must be at least 1".into()));
    }
    let started = Instant::now();
    if ps.zero_point(opts.tol.feas).is_some() {
        return Err(Error::NoFeasibleLabeling);
    }
    let mut s = Sampler {
        ps,
        stream: SeedStream::new(budget.seed),
        tol: opts.tol,
        seen: HashSet::new(),
        best: None,
        drawn: 0,
    };

    let status = match budget.theta_lower {
        Some(t) => {
            let end = budget.samples.min(opts.max_draws);
            let target = opts.stop_at_target.then_some(t);
            let hit = s.draw_until(end, target)?;
            let reached = s.best.as_ref().is_some_and(|b| b.solved_margin >= t - opts.tol.feas);
            if hit || reached {
                SolveStatus::TargetReached
            } else {
                SolveStatus::BudgetExhausted
            }
        }
        None => {
            let mut round = budget.samples;
            let mut stable = 0usize;
            let mut last: Option<Vec<i8>> = None;
            loop {
                let end = s.drawn.saturating_add(round).min(opts.max_draws);
                s.draw_until(end, None)?;
                let current = s.best.as_ref().map(|b| b.labels.clone());
                if current.is_some() && current == last {
                    stable += 1;
                } else {
                    stable = 0;
                }
                last = current;
                if stable >= opts.stable_rounds {
                    break SolveStatus::Heuristic;
                }
                if s.drawn >= opts.max_draws {
                    break SolveStatus::BudgetExhausted;
                }
                round = round.saturating_mul(2);
            }
        }
    };

    let best = s.best.ok_or(Error::NoFeasibleLabeling)?;
    Ok(SolveResult {
        solver: "random",
        margin: best.solved_margin,
        best,
        labelings_explored: s.seen.len(),
        samples_drawn: s.drawn,
        status,
        seed: budget.seed,
        elapsed: started.elapsed(),
    })
}
