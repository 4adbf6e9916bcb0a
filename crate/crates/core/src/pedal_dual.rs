//! Polar duals of circles with respect to an inversion circle, and negative
//! pedal curves of circles.
//!
//! With `J` the matrix of the polarity of the inversion circle, a point conic
//! `Γ` maps to the point conic `J · adj(Γ) · J`: the polars `J·P` of its points
//! envelope the conic whose dual matrix is `J⁻¹ Γ J⁻¹`.

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conics::{
    adjugate, conic_features, ellipse_from_center_focus_semimajor, hyperbola_from_center_focus_semitransverse,
    ConicError, GeneralConic,
};
use crate::geom::{Circle, GeomError, InversionCircle, Line, Point, DEFAULT_REL_TOL};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DualError {
    #[error("inversion center is not a focus of the conic (off by {0})")]
    NotAtFocus(f64),
    #[error("envelope system is singular at this point")]
    SingularEnvelope,
    #[error("dual is not a circle")]
    NotACircle,
    #[error(transparent)]
    Conic(#[from] ConicError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Negative pedal curve of a circle: a conic, or a single point when the pedal
/// point lies on the circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NpcResult {
    Conic(GeneralConic),
    Point(Point),
}

impl NpcResult {
    pub fn conic(&self) -> Option<&GeneralConic> {
        match self {
            NpcResult::Conic(q) => Some(q),
            NpcResult::Point(_) => None,
        }
    }
}

/// Matrix of the polarity of `inv`: polar(P) = J·P.
pub fn polarity_matrix(inv: &InversionCircle) -> Matrix3<f64> {
    let (m, k) = (inv.center, inv.k);
    Matrix3::new(1.0, 0.0, -m.x, 0.0, 1.0, -m.y, -m.x, -m.y, m.norm_sq() - k * k)
}

fn circle_matrix(g: &Circle) -> Matrix3<f64> {
    let c = g.center;
    Matrix3::new(
        1.0,
        0.0,
        -c.x,
        0.0,
        1.0,
        -c.y,
        -c.x,
        -c.y,
        c.norm_sq() - g.radius * g.radius,
    )
}

/// Polar dual of a conic given by its matrix.
pub fn dual_of_matrix(q: &Matrix3<f64>, inv: &InversionCircle) -> Result<GeneralConic, ConicError> {
    let j = polarity_matrix(inv);
    GeneralConic::from_matrix(&(j * adjugate(q) * j))
}

/// Polar dual of a circle: a conic with a focus at the inversion center.
/// A circle concentric with the inversion circle maps to a circle.
pub fn dual_of_circle(g: &Circle, inv: &InversionCircle) -> Result<GeneralConic, ConicError> {
    dual_of_matrix(&circle_matrix(g), inv)
}

/// The circle whose polar dual is `q`. The inversion center must be a focus
/// of `q` within `1e-8` of the conic's size.
pub fn dual_circle_of_focal_conic(q: &GeneralConic, inv: &InversionCircle) -> Result<Circle, DualError> {
    let feat = conic_features(q)?;
    let size = feat.semi_major.unwrap_or(feat.focal_distance).max(inv.k);
    let off = feat
        .foci
        .iter()
        .map(|f| f.distance(inv.center))
        .fold(f64::INFINITY, f64::min);
    if off > 1e-8 * size {
        return Err(DualError::NotAtFocus(off));
    }
    let d = dual_of_matrix(&q.matrix(), inv)?;
    let [a, b, c, dx, dy, f] = d.coeffs();
    let mean = 0.5 * (a + c);
    if (a - c).abs() > 1e-8 * mean.abs() || b.abs() > 1e-8 * mean.abs() {
        return Err(DualError::NotACircle);
    }
    let center = Point::new(-dx / (2.0 * mean), -dy / (2.0 * mean));
    let r2 = center.norm_sq() - f / mean;
    if !(r2 > 0.0) {
        return Err(DualError::NotACircle);
    }
    Ok(Circle::new(center, r2.sqrt())?)
}

/// Negative pedal curve of the circle `g` with respect to `m`: focus `m`,
/// center `g.center`, semi-major (or semi-transverse) axis `g.radius`.
pub fn npc_of_circle(g: &Circle, m: Point) -> NpcResult {
    let (o, rho) = (g.center, g.radius);
    let d = m.distance(o);
    if (d - rho).abs() <= DEFAULT_REL_TOL * rho {
        return NpcResult::Point(g.antipode(m));
    }
    let q = if d < rho {
        ellipse_from_center_focus_semimajor(o, m, rho)
    } else {
        hyperbola_from_center_focus_semitransverse(o, m, rho)
    };
    NpcResult::Conic(q.expect("radius and focus distance checked"))
}

/// Contact point of the line through `p` perpendicular to `p − m` with the
/// envelope of such lines as `p` runs along `g`.
pub fn npc_contact_point(g: &Circle, p: Point, m: Point) -> Result<Point, DualError> {
    if !g.contains(p, DEFAULT_REL_TOL * g.radius) {
        return Err(GeomError::PointNotOnCurve.into());
    }
    let n = p - m;
    let t = (p - g.center).perp();
    // (X − P)·(P − M) = 0 and (X − 2P + M)·t = 0
    let (r1, r2) = (p.dot(n), (p * 2.0 - m).dot(t));
    let det = n.x * t.y - n.y * t.x;
    if det.abs() <= 1e-14 * n.norm() * t.norm() || n.norm() <= DEFAULT_REL_TOL * g.radius {
        return Err(DualError::SingularEnvelope);
    }
    Ok(Point::new((r1 * t.y - r2 * n.y) / det, (n.x * r2 - t.x * r1) / det))
}

/// The line through `p` perpendicular to `p − m`.
pub fn pedal_line(p: Point, m: Point) -> Result<Line, GeomError> {
    Line::through_point_with_normal(p, p - m)
}

/// Finite-difference envelope: intersections of the pedal lines at `n`
/// equally spaced points of `g` with their neighbours. Parallel neighbours
/// are skipped. `n` below 8 is raised to 8.
pub fn sample_npc_envelope(g: &Circle, m: Point, n: usize) -> Vec<Point> {
    let n = n.max(8);
    let lines: Vec<Option<Line>> = (0..n)
        .map(|i| {
            let p = g.point_at(2.0 * std::f64::consts::PI * i as f64 / n as f64);
            pedal_line(p, m).ok()
        })
        .collect();
    (0..n)
        .filter_map(|i| match (&lines[i], &lines[(i + 1) % n]) {
            (Some(a), Some(b)) => a.intersect_line(b),
            _ => None,
        })
        .collect()
}
