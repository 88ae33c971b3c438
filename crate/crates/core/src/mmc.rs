//! Maximum margin clustering through pair-midpoint recentering.
//!
//! An optimal affine separator has two opposite points at equal distance, so
//! it passes through their midpoint. Solving the through-origin problem
//! around every pair midpoint and keeping the best candidate solves the
//! affine problem with at most `n(n−1)/2` inner solves.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{
    solve_eps_net, solve_exact_bfs, solve_random_hyperplane, ExactOptions, NetOptions, RandomOptions,
    SampleBudget, SolveResult,
};
use crate::geometry::PointSet;
use crate::linalg::{dot, norm};
use crate::tolerance::Tolerances;

/// Exact through-origin solver used for every recentered instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InnerSolver {
    Bfs(ExactOptions),
    Net(NetOptions),
    Random(SampleBudget, RandomOptions),
}

impl InnerSolver {
    pub fn solve(&self, ps: &PointSet) -> Result<SolveResult> {
        match self {
            InnerSolver::Bfs(o) => solve_exact_bfs(ps, o),
            InnerSolver::Net(o) => solve_eps_net(ps, o),
            InnerSolver::Random(b, o) => solve_random_hyperplane(ps, b, o),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            InnerSolver::Bfs(_) => "bfs",
            InnerSolver::Net(_) => "net",
            InnerSolver::Random(..) => "random",
        }
    }

    fn tol(&self) -> Tolerances {
        match self {
            InnerSolver::Bfs(o) => o.tol,
            InnerSolver::Net(o) => o.tol,
            InnerSolver::Random(_, o) => o.tol,
        }
    }
}

/// Affine separator `⟨normal, x⟩ + offset = 0` in the caller's units.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSeparation {
    pub normal: Vec<f64>,
    pub offset: f64,
    /// `min_k |⟨normal, x_k⟩ + offset|` over the original points.
    pub margin: f64,
    pub center: Vec<f64>,
    pub pair: (usize, usize),
    /// Points on the positive side.
    pub positive: usize,
    pub negative: usize,
}

impl AffineSeparation {
    /// Side of every point (`+1` for the positive half-space).
    pub fn sides(&self, points: &[Vec<f64>]) -> Vec<i8> {
        points
            .iter()
            .map(|x| if dot(&self.normal, x) + self.offset >= 0.0 { 1 } else { -1 })
            .collect()
    }
}

fn candidate(points: &[Vec<f64>], i: usize, j: usize, inner: &InnerSolver) -> Result<Option<AffineSeparation>> {
    let center: Vec<f64> = points[i].iter().zip(&points[j]).map(|(a, b)| (a + b) / 2.0).collect();
    let shifted: Vec<Vec<f64>> = points
        .iter()
        .map(|x| x.iter().zip(&center).map(|(a, c)| a - c).collect())
        .collect();
    let scale = shifted.iter().map(|p| norm(p)).fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(None);
    }
    let tol = inner.tol();
    let scaled = shifted.into_iter().map(|p| p.into_iter().map(|v| v / scale).collect()).collect();
    let ps = PointSet::with_scale(scaled, scale, &tol)?;
    let solved = match inner.solve(&ps) {
        Ok(r) => r,
        Err(Error::NoFeasibleLabeling) => return Ok(None),
        Err(e) => return Err(e),
    };
    let normal = solved.witness_normal().to_vec();
    let offset = -dot(&normal, &center);
    let values: Vec<f64> = points.iter().map(|x| dot(&normal, x) + offset).collect();
    let margin = values.iter().map(|v| v.abs()).fold(f64::INFINITY, f64::min);
    let positive = values.iter().filter(|&&v| v > 0.0).count();
    let negative = values.iter().filter(|&&v| v < 0.0).count();
    if positive == 0 || negative == 0 || margin <= tol.feas * scale {
        return Ok(None);
    }
    Ok(Some(AffineSeparation { normal, offset, margin, center, pair: (i, j), positive, negative }))
}

/// Maximum margin clustering of `ps` (in its original units).
pub fn solve_mmc(ps: &PointSet, inner: &InnerSolver) -> Result<AffineSeparation> {
    let n = ps.len();
    if n < 2 {
        return Err(Error::InvalidInput("clustering needs at least two points".into()));
    }
    let points = ps.original_points();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let candidates: Vec<Result<Option<AffineSeparation>>> = pairs
        .par_iter()
        .map(|&(i, j)| candidate(&points, i, j, inner))
        .collect();

    let mut best: Option<AffineSeparation> = None;
    for c in candidates {
        if let Some(c) = c? {
            if best.as_ref().is_none_or(|b| c.margin > b.margin) {
                best = Some(c);
            }
        }
    }
    best.ok_or(Error::NoSeparation)
}
