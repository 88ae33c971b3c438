//! Integrality gap of the semidefinite relaxation on the regular polygon.

use crate::error::{Error, Result};
use crate::exact::{solve_exact_bfs, ExactOptions};
use crate::geometry::PointSet;
use crate::linalg::norm;

use super::gen_circle;

/// The orthogonal-columns feasible solution `W^j = e_j/√d` checked against
/// both constraints of the relaxation.
#[derive(Debug, Clone, PartialEq)]
pub struct SdpFeasibility {
    /// `Σ_j ‖W^j‖²`, which must equal 1.
    pub norm_sum: f64,
    /// `min_i ‖Σ_j x_ij W^j‖²`, which must be at least the objective.
    pub min_constraint: f64,
    pub objective: f64,
    pub holds: bool,
}

pub fn sdp_feasible_solution(ps: &PointSet) -> SdpFeasibility {
    let d = ps.dim();
    let c = 1.0 / (d as f64).sqrt();
    // column j of W is c·e_j, so Σ_j x_ij W^j = c·x_i
    let norm_sum = (0..d).map(|_| c * c).sum::<f64>();
    let min_constraint = ps
        .points()
        .iter()
        .map(|x| {
            let v: Vec<f64> = x.iter().map(|xj| c * xj).collect();
            norm(&v).powi(2)
        })
        .fold(f64::INFINITY, f64::min);
    let objective = 1.0 / d as f64;
    let holds = (norm_sum - 1.0).abs() <= 1e-12 && min_constraint >= objective - 1e-12;
    SdpFeasibility { norm_sum, min_constraint, objective, holds }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapReport {
    pub n: usize,
    pub d: usize,
    /// Exactly `1/d`.
    pub sdp_feasible_value: f64,
    pub integral_theta: f64,
    /// `sdp_feasible_value / integral_theta²`.
    pub ratio: f64,
    pub witness: Vec<f64>,
    pub labelings_explored: usize,
    pub feasibility: SdpFeasibility,
}

pub fn sdp_gap_demo(n: usize) -> Result<GapReport> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::InvalidInput(format!("gap demo needs an even n ≥ 4, got {n}")));
    }
    let ps = gen_circle(n)?;
    let feasibility = sdp_feasible_solution(&ps);
    let solved = solve_exact_bfs(&ps, &ExactOptions::default())?;
    let sdp_feasible_value = 1.0 / ps.dim() as f64;
    Ok(GapReport {
        n,
        d: ps.dim(),
        sdp_feasible_value,
        integral_theta: solved.margin,
        ratio: sdp_feasible_value / (solved.margin * solved.margin),
        witness: solved.witness_normal().to_vec(),
        labelings_explored: solved.labelings_explored,
        feasibility,
    })
}
