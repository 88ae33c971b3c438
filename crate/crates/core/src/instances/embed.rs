//! Embedding of SYM formulas as point sets, and the assignment/hyperplane
//! correspondence.

use crate::error::{Error, Result};
use crate::geometry::{margin_of_with, Hyperplane, PointSet};
use crate::tolerance::Tolerances;

use super::sym::{SymFormula, MAX_SYM_OCCURRENCES};

/// Largest pre-scaling norm of a clause point, `√(9 + 3)`.
pub const EMBED_SCALE: f64 = 3.464_101_615_137_754_6;

/// One point per clause followed by the unit vectors `e_1..e_D`, all
/// divided by `√12` (recorded as the scale).
pub fn points_from_sym(psi: &SymFormula) -> Result<PointSet> {
    let d = psi.num_vars();
    let mut points = Vec::with_capacity(psi.num_clauses() + d);
    for (c, clause) in psi.clauses().iter().enumerate() {
        let mut lits = clause.clone();
        lits.sort_by_key(|l| l.unsigned_abs());
        let sign = |l: i32| if l > 0 { 1.0 } else { -1.0 };
        let idx = |l: i32| l.unsigned_abs() as usize - 1;
        let mut x = vec![0.0; d];
        match lits.len() {
            2 => {
                x[idx(lits[0])] = sign(lits[0]);
                x[idx(lits[1])] = -sign(lits[1]);
            }
            4 => {
                x[idx(lits[0])] = 3.0 * sign(lits[0]);
                for &l in &lits[1..] {
                    x[idx(l)] = -sign(l);
                }
            }
            k => {
                return Err(Error::ClauseArity { clause: c, arity: k, reason: "only 2- and 4-literal clauses embed".into() });
            }
        }
        points.push(x);
    }
    for j in 0..d {
        let mut e = vec![0.0; d];
        e[j] = 1.0;
        points.push(e);
    }
    for p in &mut points {
        for v in p.iter_mut() {
            *v /= EMBED_SCALE;
        }
    }
    PointSet::with_scale(points, EMBED_SCALE, &Tolerances::DEFAULT)
}

/// `w_i = +1/√D` for true, `−1/√D` for false.
pub fn assignment_to_hyperplane(assignment: &[bool]) -> Vec<f64> {
    let c = 1.0 / (assignment.len() as f64).sqrt();
    assignment.iter().map(|&t| if t { c } else { -c }).collect()
}

/// `w_i ≥ 0` decodes to true.
pub fn hyperplane_to_assignment(w: &[f64]) -> Vec<bool> {
    w.iter().map(|&v| v >= 0.0).collect()
}

/// Margin a satisfying assignment is guaranteed on a reduction instance.
pub fn completeness_margin(d: usize) -> f64 {
    1.0 / (12.0 * d as f64).sqrt()
}

/// Instance-level replay of the soundness counting argument for one
/// hyperplane.
#[derive(Debug, Clone, PartialEq)]
pub struct SoundnessCheck {
    pub margin: f64,
    /// `ε` with `margin = (1 − ε)/√(12D)`, clamped at 0.
    pub eps: f64,
    pub decoded: Vec<bool>,
    pub satisfied: usize,
    pub clauses: usize,
    /// Required satisfied fraction `1 − 10·ε·30`.
    pub required_fraction: f64,
    pub holds: bool,
}

pub fn soundness_check(psi: &SymFormula, ps: &PointSet, w: &[f64], tol: &Tolerances) -> Result<SoundnessCheck> {
    let margin = margin_of_with(w, ps, tol)?;
    let eps = (1.0 - margin / completeness_margin(psi.num_vars())).max(0.0);
    let decoded = hyperplane_to_assignment(w);
    let satisfied = psi.satisfied_count(&decoded);
    let clauses = psi.num_clauses();
    let required_fraction = 1.0 - 10.0 * eps * MAX_SYM_OCCURRENCES as f64;
    let holds = satisfied as f64 >= required_fraction * clauses as f64 - 1e-9;
    Ok(SoundnessCheck { margin, eps, decoded, satisfied, clauses, required_fraction, holds })
}

/// The completeness hyperplane for an assignment of all `D` variables.
pub fn completeness_hyperplane(assignment: &[bool], ps: &PointSet) -> Result<Hyperplane> {
    Hyperplane::evaluate(assignment_to_hyperplane(assignment), ps)
}
