//! Instance generators and certificate checkers.

pub mod cnf;
pub mod embed;
pub mod expander;
pub mod gap;
pub mod random_model;
pub mod sym;

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{normalize_instance, PointSet};
use crate::rng::SeedStream;

pub use cnf::CnfFormula;
pub use embed::{
    assignment_to_hyperplane, completeness_margin, hyperplane_to_assignment, points_from_sym, soundness_check,
    SoundnessCheck, EMBED_SCALE,
};
pub use expander::{build_expander, ExpanderGraph};
pub use gap::{sdp_gap_demo, GapReport};
pub use random_model::{random_margin_study, RandomModelReport};
pub use sym::{sym_from_3sat, SymFormula};

/// `n` points with independent `N(0, 1/d)` coordinates, normalized.
pub fn gen_gaussian(n: usize, d: usize, seed: u64) -> Result<PointSet> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidInput("n and d must be positive".into()));
    }
    let mut rng = SeedStream::new(seed).substream(0);
    let sd = 1.0 / (d as f64).sqrt();
    let raw = (0..n)
        .map(|_| crate::rng::gaussian_vector(&mut rng, d).into_iter().map(|z| z * sd).collect())
        .collect();
    normalize_instance(raw)
}

/// `n` equally spaced points on the unit circle.
pub fn gen_circle(n: usize) -> Result<PointSet> {
    if n < 2 {
        return Err(Error::InvalidInput("a circle instance needs n ≥ 2".into()));
    }
    let points = (0..n)
        .map(|k| {
            let a = 2.0 * PI * k as f64 / n as f64;
            vec![a.cos(), a.sin()]
        })
        .collect();
    PointSet::new(points)
}

/// Output of the full reduction pipeline.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub graph: ExpanderGraph,
    pub psi: SymFormula,
    pub points: PointSet,
}

/// φ → expander on its clauses → ψ → point set.
pub fn reduce(phi: &CnfFormula, seed: u64) -> Result<Reduction> {
    phi.check_3sat13()?;
    let graph = build_expander(phi.num_clauses(), seed)?;
    let psi = sym_from_3sat(phi, &graph)?;
    let points = points_from_sym(&psi)?;
    Ok(Reduction { graph, psi, points })
}
