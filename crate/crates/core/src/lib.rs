//! Solvers for the furthest hyperplane problem (maximum-margin hyperplane
//! through the origin over all labelings) and maximum margin clustering,
//! together with hardness-reduction instance generators and certificate
//! checkers.

pub mod approx;
pub mod error;
pub mod exact;
pub mod geometry;
pub mod instances;
pub mod linalg;
pub mod mmc;
pub mod mnp;
pub mod report;
pub mod rng;
pub mod tolerance;

pub use error::{Error, Result};
pub use geometry::{
    labeling_of, margin_of, normalize_instance, read_point_set, solve_labeled, write_point_set,
    Hyperplane, Labeling, PointSet,
};
pub use tolerance::Tolerances;
