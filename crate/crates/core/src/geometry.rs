//! Point sets, hyperplanes through the origin, labelings, and the labeled
//! hard-margin sub-solver every other module builds on.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::linalg::{dot, norm};
use crate::mnp::min_norm_point;
use crate::tolerance::Tolerances;

/// A finite point set in `R^d` with every norm at most one.
///
/// `scale` maps stored coordinates back to the caller's units:
/// `original = stored · scale`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    points: Vec<Vec<f64>>,
    dim: usize,
    scale: f64,
}

impl PointSet {
    /// Validates `points` against the norm invariant with the default
    /// tolerance. The scale is 1.
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        Self::with_scale(points, 1.0, &Tolerances::default())
    }

    pub fn with_scale(points: Vec<Vec<f64>>, scale: f64, tol: &Tolerances) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::InvalidInput("point set must contain at least one point".into()));
        };
        let dim = first.len();
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be at least 1".into()));
        }
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::InvalidInput(format!("scale must be positive, got {scale}")));
        }
        for (index, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: p.len() });
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidInput(format!("point {index} has a non-finite coordinate")));
            }
            let n = norm(p);
            if n > 1.0 + tol.norm {
                return Err(Error::NormTooLarge { index, norm: n });
            }
        }
        Ok(Self { points, dim, scale })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    /// Points in the caller's original units.
    pub fn original_points(&self) -> Vec<Vec<f64>> {
        self.points
            .iter()
            .map(|p| p.iter().map(|x| x * self.scale).collect())
            .collect()
    }

    /// Index of a point with norm at or below `floor`, if any.
    pub fn zero_point(&self, floor: f64) -> Option<usize> {
        self.points.iter().position(|p| norm(p) <= floor)
    }
}

/// Divides every point by the largest norm and records that factor as the
/// scale.
pub fn normalize_instance(raw: Vec<Vec<f64>>) -> Result<PointSet> {
    let max = raw.iter().map(|p| norm(p)).fold(0.0f64, f64::max);
    if raw.is_empty() || max == 0.0 {
        return Err(Error::DegenerateInstance("every point is zero".into()));
    }
    if !max.is_finite() {
        return Err(Error::InvalidInput("non-finite coordinate".into()));
    }
    let points = raw
        .into_iter()
        .map(|p| p.into_iter().map(|x| x / max).collect())
        .collect();
    PointSet::with_scale(points, max, &Tolerances::default())
}

/// A hyperplane through the origin given by its unit normal, together with
/// the margin it achieves on the point set it was evaluated against.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperplane {
    pub normal: Vec<f64>,
    pub achieved_margin: f64,
}

impl Hyperplane {
    /// Evaluates `normal` against `ps`.
    pub fn evaluate(normal: Vec<f64>, ps: &PointSet) -> Result<Self> {
        let achieved_margin = margin_of(&normal, ps)?;
        Ok(Self { normal, achieved_margin })
    }
}

/// A ±1 assignment to the points and the result of solving it.
#[derive(Debug, Clone, PartialEq)]
pub struct Labeling {
    pub labels: Vec<i8>,
    pub feasible: bool,
    pub solved_margin: f64,
    pub witness: Option<Hyperplane>,
}

fn check_unit(w: &[f64], ps: &PointSet, tol: &Tolerances) -> Result<()> {
    if w.len() != ps.dim() {
        return Err(Error::DimensionMismatch { expected: ps.dim(), got: w.len() });
    }
    let n = norm(w);
    if (n - 1.0).abs() > tol.unit {
        return Err(Error::NotUnit { norm: n });
    }
    Ok(())
}

/// `min_i |⟨w, x_i⟩|` for a unit normal `w`.
pub fn margin_of(w: &[f64], ps: &PointSet) -> Result<f64> {
    margin_of_with(w, ps, &Tolerances::default())
}

pub fn margin_of_with(w: &[f64], ps: &PointSet, tol: &Tolerances) -> Result<f64> {
    check_unit(w, ps, tol)?;
    Ok(ps
        .points()
        .iter()
        .map(|x| dot(w, x).abs())
        .fold(f64::INFINITY, f64::min))
}

/// Sign pattern of `w` on the points, with `⟨w, x⟩ = 0` labelled `+1`.
/// Does not validate `w`.
pub fn signs_of(w: &[f64], ps: &PointSet) -> Vec<i8> {
    ps.points()
        .iter()
        .map(|x| if dot(w, x) >= 0.0 { 1 } else { -1 })
        .collect()
}

/// The labeling induced by `w`, solved with [`solve_labeled`].
pub fn labeling_of(w: &[f64], ps: &PointSet) -> Result<Labeling> {
    labeling_of_with(w, ps, &Tolerances::default())
}

pub fn labeling_of_with(w: &[f64], ps: &PointSet, tol: &Tolerances) -> Result<Labeling> {
    check_unit(w, ps, tol)?;
    solve_labeled_with(&signs_of(w, ps), ps, tol)
}

/// Maximum margin through the origin for a fixed labeling:
/// `max_{‖w‖=1} min_i y_i ⟨w, x_i⟩`, computed as the distance from the origin
/// to `conv{y_i x_i}`.
pub fn solve_labeled(labels: &[i8], ps: &PointSet) -> Result<Labeling> {
    solve_labeled_with(labels, ps, &Tolerances::default())
}

pub fn solve_labeled_with(labels: &[i8], ps: &PointSet, tol: &Tolerances) -> Result<Labeling> {
    if labels.len() != ps.len() {
        return Err(Error::DimensionMismatch { expected: ps.len(), got: labels.len() });
    }
    if let Some(bad) = labels.iter().find(|&&y| y != 1 && y != -1) {
        return Err(Error::InvalidInput(format!("label {bad} is not ±1")));
    }
    let signed: Vec<Vec<f64>> = ps
        .points()
        .iter()
        .zip(labels)
        .map(|(x, &y)| x.iter().map(|v| f64::from(y) * v).collect())
        .collect();
    let cap = (100 * ps.len() * ps.dim()).max(100);
    let mnp = min_norm_point(&signed, tol, cap)?;

    let infeasible = Labeling {
        labels: labels.to_vec(),
        feasible: false,
        solved_margin: 0.0,
        witness: None,
    };
    if mnp.contains_origin {
        return Ok(infeasible);
    }
    let normal: Vec<f64> = mnp.point.iter().map(|v| v / mnp.upper).collect();
    // margin certified by the witness itself
    let solved_margin = signed
        .iter()
        .map(|v| dot(&normal, v))
        .fold(f64::INFINITY, f64::min);
    if solved_margin <= tol.feas {
        return Ok(infeasible);
    }
    let achieved_margin = ps
        .points()
        .iter()
        .map(|x| dot(&normal, x).abs())
        .fold(f64::INFINITY, f64::min);
    Ok(Labeling {
        labels: labels.to_vec(),
        feasible: true,
        solved_margin,
        witness: Some(Hyperplane { normal, achieved_margin }),
    })
}

/// Formats a float with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Serializes a point set in the `fhp v1` text format.
pub fn write_point_set(ps: &PointSet) -> String {
    let mut out = format!("fhp v1 n={} d={} scale={}\n", ps.len(), ps.dim(), fmt_f64(ps.scale()));
    for p in ps.points() {
        let line: Vec<String> = p.iter().map(|&x| fmt_f64(x)).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

/// Parses the `fhp v1` text format.
pub fn read_point_set(text: &str) -> Result<PointSet> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
    let mut fields = header.split_whitespace();
    if fields.next() != Some("fhp") || fields.next() != Some("v1") {
        return Err(Error::parse(1, "header must start with `fhp v1`"));
    }
    let (mut n, mut d, mut scale) = (None, None, None);
    for f in fields {
        let (key, value) = f
            .split_once('=')
            .ok_or_else(|| Error::parse(1, format!("malformed header field `{f}`")))?;
        match key {
            "n" => n = value.parse::<usize>().ok(),
            "d" => d = value.parse::<usize>().ok(),
            "scale" => scale = value.parse::<f64>().ok(),
            other => return Err(Error::parse(1, format!("unknown header key `{other}`"))),
        }
    }
    let (Some(n), Some(d), Some(scale)) = (n, d, scale) else {
        return Err(Error::parse(1, "header needs n=, d= and scale="));
    };
    let mut points = Vec::with_capacity(n);
    for (idx, line) in lines {
        let row: std::result::Result<Vec<f64>, _> =
            line.split_whitespace().map(str::parse::<f64>).collect();
        let row = row.map_err(|e| Error::parse(idx + 1, e.to_string()))?;
        if row.len() != d {
            return Err(Error::parse(idx + 1, format!("expected {d} coordinates, got {}", row.len())));
        }
        points.push(row);
    }
    if points.len() != n {
        return Err(Error::parse(1, format!("header says n={n} but {} points follow", points.len())));
    }
    PointSet::with_scale(points, scale, &Tolerances::default())
}
