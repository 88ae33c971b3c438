/// Numerical tolerances shared by the solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Slack allowed on the `‖x‖ ≤ 1` point-set invariant.
    pub norm: f64,
    /// Slack allowed on `‖w‖ = 1` for hyperplane normals.
    pub unit: f64,
    /// Margins at or below this are treated as infeasible.
    pub feas: f64,
    /// Duality-gap target of the minimum-norm-point solver.
    pub mnp: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        norm: 1e-9,
        unit: 1e-12,
        feas: 1e-9,
        mnp: 1e-10,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
