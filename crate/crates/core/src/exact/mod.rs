//! Exact solvers: feasible-labeling enumeration, ε-net search and random
//! hyperplane sampling.

mod enumerate;
mod net;
mod random;

use std::time::Duration;

use crate::geometry::Labeling;
use crate::tolerance::Tolerances;

pub use enumerate::{enumerate_feasible_labelings, solve_exact_bfs, sauer_bound, DirectionClasses};
pub use net::{net_points, solve_eps_net, NetOptions};
pub use random::{solve_random_hyperplane, RandomOptions, SampleBudget};

/// How much a [`SolveResult`] can be trusted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolveStatus {
    /// Proven optimal by the solver's own argument.
    Certified,
    /// Reached the caller's `theta_lower` target.
    TargetReached,
    /// Ran out of budget; the best labeling found so far.
    BudgetExhausted,
    /// Stopped by a stability rule with no optimality argument.
    Heuristic,
}

impl SolveStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolveStatus::Certified => "certified",
            SolveStatus::TargetReached => "target-reached",
            SolveStatus::BudgetExhausted => "budget-exhausted",
            SolveStatus::Heuristic => "heuristic",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "certified" => SolveStatus::Certified,
            "target-reached" => SolveStatus::TargetReached,
            "budget-exhausted" => SolveStatus::BudgetExhausted,
            "heuristic" => SolveStatus::Heuristic,
            _ => return None,
        })
    }
}

/// Best labeling found by an exact solver.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub solver: &'static str,
    /// Feasible, with witness.
    pub best: Labeling,
    /// Equal to `best.solved_margin`.
    pub margin: f64,
    /// Distinct labelings passed to the labeled sub-solver.
    pub labelings_explored: usize,
    /// Unit normals drawn or net points evaluated.
    pub samples_drawn: u64,
    pub status: SolveStatus,
    pub seed: u64,
    pub elapsed: Duration,
}

impl SolveResult {
    /// Equality of everything except wall time.
    pub fn same_outcome(&self, other: &SolveResult) -> bool {
        self.solver == other.solver
            && self.best == other.best
            && self.margin.to_bits() == other.margin.to_bits()
            && self.labelings_explored == other.labelings_explored
            && self.samples_drawn == other.samples_drawn
            && self.status == other.status
            && self.seed == other.seed
    }

    pub fn witness_normal(&self) -> &[f64] {
        &self.best.witness.as_ref().expect("feasible result carries a witness").normal
    }
}

/// Options shared by the enumeration solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactOptions {
    pub seed: u64,
    pub tol: Tolerances,
}

impl Default for ExactOptions {
    fn default() -> Self {
        Self { seed: 0, tol: Tolerances::default() }
    }
}

/// Keeps the first labeling with the strictly largest margin.
pub(crate) fn better(candidate: &Labeling, best: &Option<Labeling>) -> bool {
    candidate.feasible
        && best
            .as_ref()
            .is_none_or(|b| candidate.solved_margin > b.solved_margin)
}
