//! Tangent chains between the incircle and circumcircle of a regular hexagon.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{
    angle_between_at, circle_tangent_at_through, collinearity_residual, intersect, wrap_angle, Circle, CircleOrLine,
    GeomError, Line, Point,
};
use crate::report::VerificationReport;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PonceletError {
    #[error("circumradius must be positive and finite, got {0}")]
    InvalidRadius(f64),
    #[error("start point is {0:e} away from the circumcircle")]
    PointNotOnCircumcircle(f64),
    #[error("start point is not strictly inside the arc A0A1")]
    PointNotOnArc,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Regular hexagon `A₀..A₅` with `A₀` at angle `phase` from `center`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HexagonConfig {
    pub center: Point,
    pub circumradius: f64,
    pub phase: f64,
}

impl HexagonConfig {
    pub fn regular(center: Point, circumradius: f64, phase: f64) -> Result<Self, PonceletError> {
        if !(circumradius > 0.0) || !circumradius.is_finite() {
            return Err(PonceletError::InvalidRadius(circumradius));
        }
        Ok(Self {
            center,
            circumradius,
            phase,
        })
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.circumcircle().point_at(self.phase + (i % 6) as f64 * PI / 3.0)
    }

    pub fn vertices(&self) -> [Point; 6] {
        std::array::from_fn(|i| self.vertex(i))
    }

    pub fn incircle(&self) -> Circle {
        Circle {
            center: self.center,
            radius: self.circumradius * 0.75_f64.sqrt(),
        }
    }

    pub fn circumcircle(&self) -> Circle {
        Circle {
            center: self.center,
            radius: self.circumradius,
        }
    }

    /// Point of the arc `A₀A₁` at fraction `t` of its angle.
    pub fn arc_point(&self, t: f64) -> Point {
        self.circumcircle().point_at(self.phase + t * PI / 3.0)
    }

    fn side(&self, i: usize, j: usize) -> Line {
        Line::through(self.vertex(i), self.vertex(j)).expect("distinct vertices")
    }
}

/// `P₀..P₆` on the circumcircle, joined by tangents to the incircle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangentChain {
    pub points: Vec<Point>,
    pub lines: Vec<Line>,
    pub contacts: Vec<Point>,
}

impl TangentChain {
    pub fn closure(&self) -> f64 {
        self.points[0].distance(self.points[6])
    }

    pub fn side_lengths(&self) -> Vec<f64> {
        self.points.windows(2).map(|w| w[0].distance(w[1])).collect()
    }

    /// `max − min` of the six side lengths.
    pub fn side_dispersion(&self) -> f64 {
        let s = self.side_lengths();
        let hi = s.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = s.iter().copied().fold(f64::INFINITY, f64::min);
        hi - lo
    }
}

/// Contact points of the two tangents from `p` to `c`; the first is the one
/// reached by turning counterclockwise around `c`.
fn tangent_contacts(c: &Circle, p: Point) -> [Point; 2] {
    let d = p - c.center;
    let alpha = (c.radius / d.norm()).clamp(-1.0, 1.0).acos();
    let phi = d.angle();
    [c.point_at(phi + alpha), c.point_at(phi - alpha)]
}

/// Six tangent steps from `p0`. Each step leaves along the tangent whose
/// contact differs from the previous one; the first step turns
/// counterclockwise.
pub fn tangent_chain(hex: &HexagonConfig, p0: Point) -> Result<TangentChain, PonceletError> {
    let big = hex.circumcircle();
    let small = hex.incircle();
    let off = big.signed_distance(p0).abs();
    if off > 1e-9 * hex.circumradius {
        return Err(PonceletError::PointNotOnCircumcircle(off));
    }
    let mut points = vec![p0];
    let mut lines = Vec::with_capacity(6);
    let mut contacts: Vec<Point> = Vec::with_capacity(6);
    let tol = 1e-6 * hex.circumradius;
    for _ in 0..6 {
        let p = *points.last().expect("non-empty");
        let [first, second] = tangent_contacts(&small, p);
        let contact = match contacts.last() {
            Some(prev) if prev.distance(first) < tol => second,
            _ => first,
        };
        let line = Line::through(p, contact)?;
        let next = intersect(&CircleOrLine::Line(line), &CircleOrLine::Circle(big))?
            .into_iter()
            .max_by(|a, b| a.distance(p).total_cmp(&b.distance(p)))
            .ok_or(GeomError::DegenerateTangency)?;
        points.push(next);
        lines.push(line);
        contacts.push(contact);
    }
    Ok(TangentChain {
        points,
        lines,
        contacts,
    })
}

fn check_on_arc(hex: &HexagonConfig, p0: Point) -> Result<(), PonceletError> {
    let off = hex.circumcircle().signed_distance(p0).abs();
    if off > 1e-9 * hex.circumradius {
        return Err(PonceletError::PointNotOnCircumcircle(off));
    }
    let a = wrap_angle((p0 - hex.center).angle() - hex.phase);
    if !(a > 1e-9 && a < PI / 3.0 - 1e-9) {
        return Err(PonceletError::PointNotOnArc);
    }
    Ok(())
}

/// The two circles of the key lemma: tangent to side `A₀A₅` at `A₀` and to
/// side `A₁A₂` at `A₁`, both through `p`.
pub fn lemma_circles(hex: &HexagonConfig, p: Point) -> Result<(Circle, Circle), PonceletError> {
    let c0 = circle_tangent_at_through(&hex.side(0, 5), hex.vertex(0), p)?;
    let cc0 = circle_tangent_at_through(&hex.side(1, 2), hex.vertex(1), p)?;
    Ok((c0, cc0))
}

/// Relative radial offset of the perturbation probe.
pub const PROBE_OFFSET: f64 = 1e-3;

/// Smallest angle change, in degrees, the probe must produce.
pub const PROBE_MIN_DEG: f64 = 1e-2;

/// Residuals of the hexagon lemmas at `p0` (lengths relative to the
/// circumradius, angles in degrees).
///
/// `c0` and `C0` meet at 120° at a point of the circumcircle, the chain line
/// `P₀P₁` touches `c0` and `P₀P₅` touches `C0`, and `T₀, P₀, P₁` are
/// collinear. The converse is probed by moving `p0` radially outward by
/// [`PROBE_OFFSET`] times the circumradius: the angle must then differ from
/// 120° by more than [`PROBE_MIN_DEG`] and by more than ten times the
/// on-circle residual.
pub fn verify_hexagon_lemmas(hex: &HexagonConfig, p0: Point, tol: f64) -> Result<VerificationReport, PonceletError> {
    check_on_arc(hex, p0)?;
    let rr = hex.circumradius;
    let chain = tangent_chain(hex, p0)?;
    let (c0, cc0) = lemma_circles(hex, p0)?;
    let (p1, p5) = (chain.points[1], chain.points[5]);
    let mut rep = VerificationReport::new(rr, tol);

    let inc = hex.incircle();
    let incircle_tangency = chain
        .lines
        .iter()
        .map(|l| (l.distance(inc.center) - inc.radius).abs())
        .fold(0.0, f64::max);
    let on_circumcircle = chain
        .points
        .iter()
        .map(|p| hex.circumcircle().signed_distance(*p).abs())
        .fold(0.0, f64::max);
    rep.length("closure", chain.closure())
        .length("chain_side_dispersion", chain.side_dispersion())
        .length("chain_side_vs_hexagon", (chain.side_lengths()[0] - rr).abs())
        .length("chain_incircle_tangency", incircle_tangency)
        .length("chain_on_circumcircle", on_circumcircle);

    let tangency = |c: &Circle, l: &Line| (l.distance(c.center) - c.radius).abs();
    rep.length("c0_tangent_p0p1", tangency(&c0, &chain.lines[0]))
        .length("C0_tangent_p0p5", tangency(&cc0, &chain.lines[5]));

    let angle = angle_between_at(&c0.into(), &cc0.into(), p0)?;
    let on_curve = (angle - 120.0).abs();
    rep.raw("angle_120", on_curve);

    let a0 = hex.vertex(0);
    let bisector = Line::through_point_with_normal(a0.midpoint(p0), p0 - a0)?;
    let t0 = bisector
        .intersect_line(&hex.side(0, 5))
        .ok_or(GeomError::CoincidentObjects)?;
    rep.length("t0_p0_p1_collinear", collinearity_residual(t0, p1, p0));

    let probe = hex.center + (p0 - hex.center) * (1.0 + PROBE_OFFSET);
    let (c0p, cc0p) = lemma_circles(hex, probe)?;
    let probe_dev = (angle_between_at(&c0p.into(), &cc0p.into(), probe)? - 120.0).abs();
    rep.lower_bound("probe_deviation", probe_dev, PROBE_MIN_DEG.max(10.0 * on_curve));

    rep.value("angle_deg", angle)
        .point("p0", p0)
        .point("p1", p1)
        .point("p5", p5)
        .point("t0", t0)
        .point("c0_center", c0.center)
        .point("C0_center", cc0.center);
    Ok(rep)
}
