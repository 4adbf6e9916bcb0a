//! Reuleaux triangles, the negative pedal endpoints of a pedal point on the
//! side `V₁V₂`, and the checks built on them.
//!
//! Labeling: `E_A` is the negative pedal of the arc `V₂V₃` (circle centered at
//! `O₁`) with contacts `A₁` (image of `V₂`) and `A₂` (image of `V₃`); `E_B` is
//! that of the arc `V₁V₃` (circle centered at `O₂`) with contacts `B₁` (image
//! of `V₁`) and `B₂` (image of `V₃`). The arc `V₁V₂` carrying the pedal point
//! contributes the single point `P₀`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conics::{
    classify_conic, conic_features, conic_from_five_points, intersect_conics, tangency_offset, ConicClass, ConicError,
    GeneralConic,
};
use crate::geom::{
    angle_between_at, angle_between_rays, centroid, circle_tangent_at_through, circumcenter, collinearity_residual,
    exinscribed_circle, wrap_angle, Circle, CircleOrLine, GeomError, InversionCircle, Line, Point, RigidMotion,
};
use crate::pedal_dual::{npc_contact_point, npc_of_circle, DualError, NpcResult};
use crate::report::VerificationReport;

/// Default relative tolerance of the theorem checks.
pub const THEOREM_TOL: f64 = 1e-8;

/// Parabola window used at the classification boundary.
pub const PARABOLA_TOL: f64 = 1e-7;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReuleauxError {
    #[error("invalid arcs: {0}")]
    InvalidArcs(String),
    #[error("radius must be positive and finite, got {0}")]
    InvalidRadius(f64),
    #[error("pedal parameter {0} is outside [0, 1]")]
    ParameterOutOfRange(f64),
    #[error("pedal point is at a vertex")]
    PedalAtVertex,
    #[error("pedal point is not on the side V1V2")]
    PedalOffArc,
    #[error("the check requires a symmetric Reuleaux triangle")]
    NotSymmetric,
    #[error("position function does not change sign")]
    NoCrossing,
    #[error("a sweep needs at least 3 samples, got {0}")]
    InvalidSweep(usize),
    #[error(transparent)]
    Conic(#[from] ConicError),
    #[error(transparent)]
    Dual(#[from] DualError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Three circular arcs: arc `i` joins the two vertices other than `Vᵢ` and
/// lies on `arc_circles[i]`. Vertices are counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReuleauxTriangle {
    vertices: [Point; 3],
    arc_circles: [Circle; 3],
    symmetric: bool,
}

const OTHERS: [(usize, usize); 3] = [(1, 2), (2, 0), (0, 1)];

impl ReuleauxTriangle {
    /// Equilateral triangle of side `r` with arcs centered at the vertices,
    /// placed by `pose` from `V₁ = (0, 0)`, `V₂ = (r, 0)`.
    pub fn symmetric(r: f64, pose: &RigidMotion) -> Result<Self, ReuleauxError> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(ReuleauxError::InvalidRadius(r));
        }
        let base = [
            Point::new(0.0, 0.0),
            Point::new(r, 0.0),
            Point::new(0.5 * r, 0.75_f64.sqrt() * r),
        ];
        let vertices = base.map(|p| pose.apply(p));
        let arc_circles = vertices.map(|v| Circle { center: v, radius: r });
        Ok(Self {
            vertices,
            arc_circles,
            symmetric: true,
        })
    }

    /// The symmetric triangle with `r = 1` in standard position.
    pub fn canonical() -> Self {
        Self::symmetric(1.0, &RigidMotion::IDENTITY).expect("unit radius")
    }

    /// Arcs of radii `radii[i]` through the two vertices other than `Vᵢ`,
    /// each centered on `Vᵢ`'s side of the opposite chord.
    pub fn from_vertices_and_radii(vertices: [Point; 3], radii: [f64; 3]) -> Result<Self, ReuleauxError> {
        let mut circles = [Circle {
            center: Point::ORIGIN,
            radius: 1.0,
        }; 3];
        for (i, &(j, k)) in OTHERS.iter().enumerate() {
            let r = radii[i];
            if !(r > 0.0) || !r.is_finite() {
                return Err(ReuleauxError::InvalidRadius(r));
            }
            let half = 0.5 * vertices[j].distance(vertices[k]);
            if r <= half {
                return Err(ReuleauxError::InvalidArcs(format!(
                    "radius {r} of arc {} is not longer than half its chord",
                    i + 1
                )));
            }
            let mid = vertices[j].midpoint(vertices[k]);
            let mut n = (vertices[k] - vertices[j])
                .perp()
                .unit()
                .ok_or(GeomError::DegenerateTriangle)?;
            if n.dot(vertices[i] - mid) < 0.0 {
                n = -n;
            }
            circles[i] = Circle {
                center: mid + n * (r * r - half * half).sqrt(),
                radius: r,
            };
        }
        Self::from_arcs(vertices, circles)
    }

    /// Validate vertices and arc circles.
    pub fn from_arcs(vertices: [Point; 3], arc_circles: [Circle; 3]) -> Result<Self, ReuleauxError> {
        let bad = |msg: String| Err(ReuleauxError::InvalidArcs(msg));
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(GeomError::NonFinite.into());
        }
        let scale = arc_circles.iter().map(|c| c.radius).fold(0.0, f64::max);
        let area = crate::geom::triangle_area(vertices[0], vertices[1], vertices[2]);
        if area <= 1e-12 * scale * scale {
            return bad("vertices must be counterclockwise and not collinear".into());
        }
        for (i, &(j, k)) in OTHERS.iter().enumerate() {
            let c = &arc_circles[i];
            for v in [j, k] {
                let off = c.signed_distance(vertices[v]).abs();
                if off > 1e-10 * scale {
                    return bad(format!("arc {} misses vertex {} by {off:e}", i + 1, v + 1));
                }
            }
            let chord = Line::through(vertices[j], vertices[k])?;
            if chord.signed_distance(c.center) * chord.signed_distance(vertices[i]) <= 0.0 {
                return bad(format!("arc {} bulges towards its own vertex", i + 1));
            }
        }
        // Convex iff every vertex turns left and the total turning is 2π.
        let tangent = |c: &Circle, p: Point| (p - c.center).perp();
        let mut turning = 0.0;
        for (i, &(j, k)) in OTHERS.iter().enumerate() {
            let c = &arc_circles[i];
            turning += wrap_angle(c.angle_of(vertices[k]) - c.angle_of(vertices[j]));
            // at vertex k the arc i ends and arc j starts
            let t_in = tangent(c, vertices[k]);
            let t_out = tangent(&arc_circles[j], vertices[k]);
            let turn = t_in.cross(t_out).atan2(t_in.dot(t_out));
            if turn < -1e-12 {
                return bad(format!("boundary is not convex at vertex {}", k + 1));
            }
            turning += turn;
        }
        if (turning - 2.0 * PI).abs() > 1e-9 {
            return bad("arcs do not close into a convex curve".into());
        }
        let symmetric = (0..3).all(|i| {
            (arc_circles[i].radius - scale).abs() <= 1e-12 * scale
                && arc_circles[i].center.distance(vertices[i]) <= 1e-10 * scale
        });
        Ok(Self {
            vertices,
            arc_circles,
            symmetric,
        })
    }

    pub fn vertices(&self) -> [Point; 3] {
        self.vertices
    }

    pub fn arc_circles(&self) -> [Circle; 3] {
        self.arc_circles
    }

    pub fn radii(&self) -> [f64; 3] {
        self.arc_circles.map(|c| c.radius)
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// Largest arc radius; `r` for a symmetric triangle.
    pub fn scale(&self) -> f64 {
        self.radii().into_iter().fold(0.0, f64::max)
    }

    /// Circumcenter of `V₁V₂V₃`.
    pub fn circumcenter(&self) -> Point {
        let [a, b, c] = self.vertices;
        circumcenter(a, b, c).expect("validated triangle")
    }

    pub fn transformed(&self, motion: &RigidMotion) -> Self {
        Self {
            vertices: self.vertices.map(|v| motion.apply(v)),
            arc_circles: self.arc_circles.map(|c| motion.apply_circle(&c)),
            symmetric: self.symmetric,
        }
    }

    /// Mirror image across the perpendicular bisector of `V₁V₂`, relabeled
    /// so that the vertices stay counterclockwise (`V₁ ↔ V₂`).
    pub fn mirrored(&self) -> Self {
        let axis = Line::through_point_with_normal(
            self.vertices[0].midpoint(self.vertices[1]),
            self.vertices[1] - self.vertices[0],
        )
        .expect("distinct vertices");
        let v = self.vertices.map(|p| axis.reflect(p));
        let c = self.arc_circles.map(|c| Circle {
            center: axis.reflect(c.center),
            radius: c.radius,
        });
        Self {
            vertices: [v[1], v[0], v[2]],
            arc_circles: [c[1], c[0], c[2]],
            symmetric: self.symmetric,
        }
    }

    /// The circle carrying the pedal side `V₁V₂`.
    pub fn pedal_circle(&self) -> Circle {
        self.arc_circles[2]
    }

    /// Point of the side `V₁V₂` at normalized arc angle `t` (0 at `V₁`, 1 at
    /// `V₂`).
    pub fn pedal_point_at(&self, t: f64) -> Result<Point, ReuleauxError> {
        if !(0.0..=1.0).contains(&t) {
            return Err(ReuleauxError::ParameterOutOfRange(t));
        }
        let c = self.pedal_circle();
        let a1 = c.angle_of(self.vertices[0]);
        let sweep = wrap_angle(c.angle_of(self.vertices[1]) - a1);
        Ok(match t {
            0.0 => self.vertices[0],
            1.0 => self.vertices[1],
            _ => c.point_at(a1 + t * sweep),
        })
    }

    /// Reject pedal points off the side `V₁V₂` or at its ends.
    fn check_pedal(&self, m: Point) -> Result<(), ReuleauxError> {
        let tol = 1e-9 * self.scale();
        if m.distance(self.vertices[0]) <= tol || m.distance(self.vertices[1]) <= tol {
            return Err(ReuleauxError::PedalAtVertex);
        }
        if !self.pedal_circle().contains(m, tol) {
            return Err(ReuleauxError::PedalOffArc);
        }
        Ok(())
    }
}

/// The five endpoints of the negative pedal curve and the two elliptic arcs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EndpointSet {
    pub m: Point,
    pub p0: Point,
    pub a1: Point,
    pub a2: Point,
    pub b1: Point,
    pub b2: Point,
    pub f_a: Point,
    pub f_b: Point,
    pub e_a: GeneralConic,
    pub e_b: GeneralConic,
}

impl EndpointSet {
    /// `[A₁, A₂, B₁, B₂, P₀]`.
    pub fn five(&self) -> [Point; 5] {
        [self.a1, self.a2, self.b1, self.b2, self.p0]
    }
}

pub fn npc_endpoints(r: &ReuleauxTriangle, m: Point) -> Result<EndpointSet, ReuleauxError> {
    r.check_pedal(m)?;
    let [v1, v2, v3] = r.vertices;
    let [c1, c2, c3] = r.arc_circles;
    let conic = |c: &Circle| match npc_of_circle(c, m) {
        NpcResult::Conic(q) => Ok(q),
        NpcResult::Point(_) => Err(ReuleauxError::PedalAtVertex),
    };
    Ok(EndpointSet {
        m,
        p0: c3.antipode(m),
        a1: npc_contact_point(&c1, v2, m)?,
        a2: npc_contact_point(&c1, v3, m)?,
        b1: npc_contact_point(&c2, v1, m)?,
        b2: npc_contact_point(&c2, v3, m)?,
        f_a: c1.antipode(m),
        f_b: c2.antipode(m),
        e_a: conic(&c1)?,
        e_b: conic(&c2)?,
    })
}

/// The conic through `A₁, A₂, B₁, B₂, P₀`.
pub fn endpoint_conic(r: &ReuleauxTriangle, m: Point) -> Result<GeneralConic, ReuleauxError> {
    let e = npc_endpoints(r, m)?;
    Ok(conic_from_five_points(&e.five())?)
}

/// Focus of the endpoint conic nearest to `m`, and its distance.
fn nearest_focus(q: &GeneralConic, m: Point) -> Result<(Point, f64), ReuleauxError> {
    let f = conic_features(q)?.nearest_focus(m);
    Ok((f, f.distance(m)))
}

/// The endpoint conic has a focus at `M` and its axis passes through the
/// circumcenter `G`.
pub fn verify_focus_theorem(r: &ReuleauxTriangle, m: Point, tol: f64) -> Result<VerificationReport, ReuleauxError> {
    if !r.symmetric {
        return Err(ReuleauxError::NotSymmetric);
    }
    let q = endpoint_conic(r, m)?;
    let feat = conic_features(&q)?;
    let g = r.circumcenter();
    let (focus, dev) = nearest_focus(&q, m)?;
    let mut rep = VerificationReport::new(r.scale(), tol);
    rep.length("focus_at_pedal", dev)
        .length("major_axis_through_circumcenter", feat.major_axis.distance(g));
    let focal_axis = match feat.center {
        Some(o) if o.distance(m) > 1e-9 * r.scale() => collinearity_residual(m, o, g),
        _ => feat.major_axis.distance(g),
    };
    rep.length("focal_axis_through_circumcenter", focal_axis)
        .value("discriminant", q.discriminant())
        .value("eccentricity", feat.eccentricity)
        .point("focus", focus)
        .point("pedal", m)
        .point("circumcenter", g);
    if let Some(o) = feat.center {
        rep.point("center", o);
    }
    Ok(rep)
}

/// The figure after inversion about `M` with radius `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InvertedConfig {
    pub inversion: InversionCircle,
    pub v1p: Point,
    pub v2p: Point,
    pub v3p: Point,
    /// Apex of the triangle cut out by the tangents at `V₁′` and `V₂′`.
    pub o_prime: Point,
    /// Images of the three arc circles; the pedal side maps to a line.
    pub images: [CircleOrLine; 3],
    /// Polars of `A₁, A₂, B₁, B₂, P₀`.
    pub polars: [Line; 5],
    /// The same five lines read off the image: tangents at `V₂′`, `V₃′`
    /// (image of arc 1), at `V₁′`, `V₃′` (image of arc 2), and `V₁′V₂′`.
    pub tangents: [Line; 5],
    /// Excircle of `V₁′O′V₂′` opposite `O′`.
    pub excircle_c: Circle,
    /// Concentric with the excircle, through `V₁′` and `V₂′`.
    pub circle_cc: Circle,
    /// Tangent to `O′V₁′` at `V₁′` through `V₃′`.
    pub c0: Circle,
    /// Tangent to `O′V₂′` at `V₂′` through `V₃′`.
    pub cc0: Circle,
}

fn image_circle(img: &CircleOrLine) -> Result<Circle, ReuleauxError> {
    img.as_circle()
        .copied()
        .ok_or_else(|| ReuleauxError::InvalidArcs("arc image through the inversion center".into()))
}

pub fn inverted_configuration(r: &ReuleauxTriangle, m: Point, k: f64) -> Result<InvertedConfig, ReuleauxError> {
    let e = npc_endpoints(r, m)?;
    let inv = InversionCircle::new(m, k)?;
    let [v1, v2, v3] = r.vertices;
    let (v1p, v2p, v3p) = (inv.invert_point(v1)?, inv.invert_point(v2)?, inv.invert_point(v3)?);
    let images = r.arc_circles.map(|c| inv.invert_circle(&c));
    let (img1, img2) = (image_circle(&images[0])?, image_circle(&images[1])?);
    let polars = [
        inv.polar_of_point(e.a1)?,
        inv.polar_of_point(e.a2)?,
        inv.polar_of_point(e.b1)?,
        inv.polar_of_point(e.b2)?,
        inv.polar_of_point(e.p0)?,
    ];
    let tangents = [
        img1.tangent_at(v2p)?,
        img1.tangent_at(v3p)?,
        img2.tangent_at(v1p)?,
        img2.tangent_at(v3p)?,
        Line::through(v1p, v2p)?,
    ];
    let o_prime = tangents[2]
        .intersect_line(&tangents[0])
        .ok_or(GeomError::CoincidentObjects)?;
    let excircle_c = exinscribed_circle(v1p, o_prime, v2p)?;
    let circle_cc = Circle::new(excircle_c.center, excircle_c.center.distance(v1p))?;
    let c0 = circle_tangent_at_through(&tangents[2], v1p, v3p)?;
    let cc0 = circle_tangent_at_through(&tangents[0], v2p, v3p)?;
    Ok(InvertedConfig {
        inversion: inv,
        v1p,
        v2p,
        v3p,
        o_prime,
        images,
        polars,
        tangents,
        excircle_c,
        circle_cc,
        c0,
        cc0,
    })
}

const POLAR_NAMES: [&str; 5] = ["a1", "a2", "b1", "b2", "p0"];

/// Residuals of the inverted figure, relative to `k`: the two routes to the
/// five polars agree, `V₁′O′V₂′` is equilateral, the arc images meet at 120°,
/// all five polars touch the excircle, `V₃′` is on the concentric circle
/// through `V₁′`, and `V₃′` mirrors `M` across `V₁′V₂′`.
pub fn check_inverted_configuration(
    r: &ReuleauxTriangle,
    m: Point,
    k: f64,
    tol: f64,
) -> Result<VerificationReport, ReuleauxError> {
    let cfg = inverted_configuration(r, m, k)?;
    let mut rep = VerificationReport::new(k, tol);
    for (i, name) in POLAR_NAMES.iter().enumerate() {
        rep.raw(
            &format!("polar_{name}_two_routes"),
            cfg.polars[i].discrepancy(&cfg.tangents[i], k),
        );
        let c = &cfg.excircle_c;
        rep.length(
            &format!("polar_{name}_tangent_to_c"),
            (cfg.polars[i].distance(c.center) - c.radius).abs(),
        );
    }
    let sides = [
        cfg.v1p.distance(cfg.o_prime),
        cfg.v2p.distance(cfg.o_prime),
        cfg.v1p.distance(cfg.v2p),
    ];
    let longest = sides.iter().copied().fold(0.0, f64::max);
    let shortest = sides.iter().copied().fold(f64::INFINITY, f64::min);
    rep.raw("equilateral_dispersion", (longest - shortest) / longest);

    // Tangent rays of the arc images at each image vertex, oriented by the
    // differential of the inversion applied to the original arc directions.
    let [v1, v2, v3] = r.vertices;
    let arcs = r.arc_circles;
    let push = |p: Point, toward: Point, c: &Circle| {
        // direction of arc c leaving p towards `toward`
        let t = (p - c.center).perp();
        let sense = if t.dot(toward - p) >= 0.0 { 1.0 } else { -1.0 };
        let d = t * sense;
        let u = (p - m).unit().expect("vertex differs from pedal point");
        d - u * (2.0 * d.dot(u))
    };
    let image_ray = |img: &CircleOrLine, at: Point, reference: Point| -> Point {
        let t = match img {
            CircleOrLine::Circle(c) => (at - c.center).perp(),
            CircleOrLine::Line(l) => l.direction(),
        };
        if t.dot(reference) >= 0.0 {
            t
        } else {
            -t
        }
    };
    let angle_at = |p: Point, pp: Point, a: (usize, Point), b: (usize, Point)| {
        let ra = image_ray(&cfg.images[a.0], pp, push(p, a.1, &arcs[a.0]));
        let rb = image_ray(&cfg.images[b.0], pp, push(p, b.1, &arcs[b.0]));
        (angle_between_rays(ra, rb) - 120.0).abs()
    };
    rep.raw("angle_120_at_v1p", angle_at(v1, cfg.v1p, (2, v2), (1, v3)))
        .raw("angle_120_at_v2p", angle_at(v2, cfg.v2p, (2, v1), (0, v3)))
        .raw("angle_120_at_v3p", angle_at(v3, cfg.v3p, (0, v2), (1, v1)));

    rep.length("v3p_on_circle_cc", cfg.circle_cc.signed_distance(cfg.v3p).abs());
    let c0_angle = angle_between_at(&cfg.c0.into(), &cfg.cc0.into(), cfg.v3p)?;
    rep.raw("c0_cc0_angle_120", (c0_angle - 120.0).abs());
    let base = &cfg.tangents[4];
    rep.length("v3p_reflects_pedal", base.reflect(m).distance(cfg.v3p));
    rep.value("position", classify_position_value(&cfg, m) * r.scale() / (k * k))
        .point("v1p", cfg.v1p)
        .point("v2p", cfg.v2p)
        .point("v3p", cfg.v3p)
        .point("o_prime", cfg.o_prime)
        .point("excircle_center", cfg.excircle_c.center);
    Ok(rep)
}

/// `|M − center(c)| − radius(c)`: negative inside the excircle.
fn classify_position_value(cfg: &InvertedConfig, m: Point) -> f64 {
    cfg.excircle_c.signed_distance(m)
}

/// Signed position of `M` relative to the excircle. The inverted figure
/// scales with `k² / r`, so the value is divided by that and does not depend
/// on `k`.
pub fn position_function(r: &ReuleauxTriangle, m: Point, k: f64) -> Result<f64, ReuleauxError> {
    let cfg = inverted_configuration(r, m, k)?;
    Ok(classify_position_value(&cfg, m) * r.scale() / (k * k))
}

/// Ellipse inside the excircle, hyperbola outside, parabola within
/// [`PARABOLA_TOL`] of it.
pub fn classify_by_position(r: &ReuleauxTriangle, m: Point, k: f64) -> Result<ConicClass, ReuleauxError> {
    let pos = position_function(r, m, k)?;
    Ok(if pos.abs() < PARABOLA_TOL {
        ConicClass::Parabola
    } else if pos < 0.0 {
        ConicClass::Ellipse
    } else {
        ConicClass::Hyperbola
    })
}

/// Pedal parameters where the endpoint conic is a parabola, found by
/// bisection on the position function, one on each side of `t = 0.5`.
pub fn locate_parabola_pedals(r: &ReuleauxTriangle, k: f64) -> Result<(f64, f64), ReuleauxError> {
    if !r.symmetric {
        return Err(ReuleauxError::NotSymmetric);
    }
    let f = |t: f64| -> Result<f64, ReuleauxError> { position_function(r, r.pedal_point_at(t)?, k) };
    let crossing = |from: f64, to: f64| -> Result<f64, ReuleauxError> {
        // scan from the vertex towards the middle for the first sign change
        const STEPS: usize = 500;
        let mut prev_t = from;
        let mut prev = f(prev_t)?;
        for i in 1..=STEPS {
            let t = from + (to - from) * i as f64 / STEPS as f64;
            let v = f(t)?;
            if prev.signum() != v.signum() {
                let (mut lo, mut hi, f_lo) = (prev_t, t, prev);
                while (hi - lo).abs() > 1e-13 {
                    let mid = 0.5 * (lo + hi);
                    let fm = f(mid)?;
                    if fm == 0.0 {
                        return Ok(mid);
                    }
                    if fm.signum() == f_lo.signum() {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                return Ok(0.5 * (lo + hi));
            }
            prev_t = t;
            prev = v;
        }
        Err(ReuleauxError::NoCrossing)
    };
    Ok((crossing(1e-3, 0.5)?, crossing(1.0 - 1e-3, 0.5)?))
}

/// The two intersections of `E_A` and `E_B` nearest the triangle's centroid,
/// and the number of real intersections found.
pub fn ellipse_intersections(r: &ReuleauxTriangle, e: &EndpointSet) -> (Vec<Point>, usize) {
    let [v1, v2, v3] = r.vertices;
    let g = centroid(v1, v2, v3);
    let mut pts = intersect_conics(&e.e_a, &e.e_b);
    let count = pts.len();
    pts.sort_by(|a, b| a.distance(g).total_cmp(&b.distance(g)));
    pts.truncate(2);
    (pts, count)
}

/// Residuals of the elementary properties of the endpoint set.
///
/// Every triangle gets the common focus and semi-axes of `E_A`, `E_B`, the
/// collinearity of `A₂, V₃, B₂` and the tangency of `A₂B₂` to both arcs, the
/// collinearities `V₂A₁P₀` and `V₁B₁P₀`, the direction of `U₁U₂` against
/// `f_A f_B`, and the focal sums. A symmetric triangle adds the minor axes
/// through `P₀`, `U₁, U₂` on the bisector of `f_A f_B` and collinear with
/// `P₀`, the sides of `f_A P₀ f_B`, the homothety and the barycenters.
pub fn check_elementary_properties(
    r: &ReuleauxTriangle,
    m: Point,
    tol: f64,
) -> Result<VerificationReport, ReuleauxError> {
    let e = npc_endpoints(r, m)?;
    let [v1, v2, v3] = r.vertices;
    let [r1, r2, _] = r.radii();
    let mut rep = VerificationReport::new(r.scale(), tol);
    let fa_feat = conic_features(&e.e_a)?;
    let fb_feat = conic_features(&e.e_b)?;

    rep.length("common_focus_a", fa_feat.nearest_focus(m).distance(m))
        .length("common_focus_b", fb_feat.nearest_focus(m).distance(m))
        .length("semi_major_a", (fa_feat.semi_major.unwrap_or(f64::NAN) - r1).abs())
        .length("semi_major_b", (fb_feat.semi_major.unwrap_or(f64::NAN) - r2).abs());

    rep.length("a2_v3_b2_collinear", collinearity_residual(e.a2, e.b2, v3));
    let a2b2 = Line::through(e.a2, e.b2)?;
    rep.length("a2b2_tangent_a", tangency_offset(&e.e_a, &a2b2))
        .length("a2b2_tangent_b", tangency_offset(&e.e_b, &a2b2));

    rep.length("a1_on_p0v2", collinearity_residual(e.p0, v2, e.a1))
        .length("b1_on_p0v1", collinearity_residual(e.p0, v1, e.b1));

    let (u, count) = ellipse_intersections(r, &e);
    rep.value("intersection_count", count as f64);
    let (u1, u2) = if u.len() == 2 {
        (u[0], u[1])
    } else {
        (Point::new(f64::NAN, f64::NAN), Point::new(f64::NAN, f64::NAN))
    };
    let fafb = (e.f_b - e.f_a).unit().ok_or(GeomError::CoincidentObjects)?;
    rep.length("u1u2_perpendicular_to_fafb", (u2 - u1).dot(fafb).abs());

    let focal_sum = |x: Point, f: Point, radius: f64| (x.distance(m) + x.distance(f) - 2.0 * radius).abs();
    rep.length("focal_sum_a1", focal_sum(e.a1, e.f_a, r1))
        .length("focal_sum_a2", focal_sum(e.a2, e.f_a, r1))
        .length("focal_sum_b1", focal_sum(e.b1, e.f_b, r2))
        .length("focal_sum_b2", focal_sum(e.b2, e.f_b, r2));
    for (name, x) in [("u1", u1), ("u2", u2)] {
        rep.length(&format!("focal_sum_{name}_a"), focal_sum(x, e.f_a, r1))
            .length(&format!("focal_sum_{name}_b"), focal_sum(x, e.f_b, r2));
    }
    rep.value("fafb_distance", e.f_a.distance(e.f_b));

    if r.symmetric {
        let rr = r.scale();
        let minor_a = fa_feat.minor_axis.ok_or(ConicError::DegenerateConic)?;
        let minor_b = fb_feat.minor_axis.ok_or(ConicError::DegenerateConic)?;
        rep.length("minor_axis_a_through_p0", minor_a.distance(e.p0))
            .length("minor_axis_b_through_p0", minor_b.distance(e.p0));
        let bisector = Line::through_point_with_normal(e.f_a.midpoint(e.f_b), e.f_b - e.f_a)?;
        rep.length("u1_on_bisector", bisector.distance(u1))
            .length("u2_on_bisector", bisector.distance(u2))
            .length("u1u2_p0_collinear", collinearity_residual(u1, u2, e.p0));
        rep.length("side_fa_p0_contains_a2", collinearity_residual(e.f_a, e.p0, e.a2))
            .length("side_fb_p0_contains_b2", collinearity_residual(e.f_b, e.p0, e.b2))
            .length("side_fa_fb_contains_a1", collinearity_residual(e.f_a, e.f_b, e.a1))
            .length("side_fa_fb_contains_b1", collinearity_residual(e.f_a, e.f_b, e.b1));
        let image = |v: Point| v * 2.0 - m;
        rep.length("homothety_fa", e.f_a.distance(image(v1)))
            .length("homothety_fb", e.f_b.distance(image(v2)))
            .length("homothety_p0", e.p0.distance(image(v3)));
        let x2 = centroid(v1, v2, v3);
        let x2p = centroid(e.f_a, e.f_b, e.p0);
        rep.length("barycenters_collinear_with_pedal", collinearity_residual(x2, x2p, m))
            .length("fafb_equals_2r", (e.f_a.distance(e.f_b) - 2.0 * rr).abs());
    }
    for (name, p) in [
        ("m", m),
        ("p0", e.p0),
        ("a1", e.a1),
        ("a2", e.a2),
        ("b1", e.b1),
        ("b2", e.b2),
        ("f_a", e.f_a),
        ("f_b", e.f_b),
        ("u1", u1),
        ("u2", u2),
    ] {
        rep.point(name, p);
    }
    Ok(rep)
}

/// One pedal parameter of a sweep. Lengths are absolute.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSample {
    pub t: f64,
    pub pedal: Point,
    pub fafb: f64,
    /// Distance from `M` to the nearest focus of the endpoint conic.
    pub focus_deviation: f64,
    pub class: Option<ConicClass>,
    pub discriminant: f64,
    /// Largest distance of `A₁` from `P₀V₂` and `B₁` from `P₀V₁`.
    pub collinearity: f64,
    /// Component of `U₁U₂` along `f_A f_B`.
    pub perpendicularity: f64,
    /// Largest tangency offset of `A₂B₂` to `E_A`, `E_B`.
    pub tangency: f64,
    pub intersections: usize,
    /// Largest tangency residual of the polars to the excircle (symmetric
    /// triangles only).
    pub polar_tangency: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub fafb_min: f64,
    pub fafb_max: f64,
    pub max_focus_deviation: f64,
    pub min_focus_deviation: f64,
    pub max_collinearity: f64,
    pub max_perpendicularity: f64,
    pub max_tangency: f64,
    pub max_polar_tangency: Option<f64>,
    pub failed_samples: usize,
}

impl SweepSummary {
    pub fn fafb_spread(&self) -> f64 {
        self.fafb_max - self.fafb_min
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub scale: f64,
    pub k: f64,
    pub samples: Vec<SweepSample>,
    pub summary: SweepSummary,
}

fn sweep_sample(r: &ReuleauxTriangle, t: f64, k: f64) -> SweepSample {
    let mut s = SweepSample {
        t,
        pedal: Point::new(f64::NAN, f64::NAN),
        fafb: f64::NAN,
        focus_deviation: f64::NAN,
        class: None,
        discriminant: f64::NAN,
        collinearity: f64::NAN,
        perpendicularity: f64::NAN,
        tangency: f64::NAN,
        intersections: 0,
        polar_tangency: None,
        error: None,
    };
    let mut run = || -> Result<(), ReuleauxError> {
        let m = r.pedal_point_at(t)?;
        s.pedal = m;
        let e = npc_endpoints(r, m)?;
        let [v1, v2, _] = r.vertices;
        s.fafb = e.f_a.distance(e.f_b);
        s.collinearity = collinearity_residual(e.p0, v2, e.a1).max(collinearity_residual(e.p0, v1, e.b1));
        let a2b2 = Line::through(e.a2, e.b2)?;
        s.tangency = tangency_offset(&e.e_a, &a2b2).max(tangency_offset(&e.e_b, &a2b2));
        let (u, count) = ellipse_intersections(r, &e);
        s.intersections = count;
        if let (Some(u1), Some(u2)) = (u.first(), u.get(1)) {
            let dir = (e.f_b - e.f_a).unit().ok_or(GeomError::CoincidentObjects)?;
            s.perpendicularity = (*u2 - *u1).dot(dir).abs();
        }
        if r.symmetric {
            let cfg = inverted_configuration(r, m, k)?;
            let c = cfg.excircle_c;
            s.polar_tangency = Some(
                cfg.polars
                    .iter()
                    .map(|l| (l.distance(c.center) - c.radius).abs())
                    .fold(0.0, f64::max),
            );
        }
        let q = conic_from_five_points(&e.five())?;
        s.discriminant = q.discriminant();
        s.class = Some(classify_conic(&q, PARABOLA_TOL));
        s.focus_deviation = nearest_focus(&q, m)?.1;
        Ok(())
    };
    if let Err(err) = run() {
        s.error = Some(err.to_string());
    }
    s
}

fn nan_max(values: impl Iterator<Item = f64>) -> f64 {
    values.fold(f64::NEG_INFINITY, |m, v| {
        if v.is_nan() || m.is_nan() {
            f64::NAN
        } else {
            m.max(v)
        }
    })
}

fn nan_min(values: impl Iterator<Item = f64>) -> f64 {
    values.fold(f64::INFINITY, |m, v| {
        if v.is_nan() || m.is_nan() {
            f64::NAN
        } else {
            m.min(v)
        }
    })
}

/// Pedal parameters `t = i / (n + 1)`, `i = 1..=n`.
pub fn sweep_parameters(n: usize) -> Vec<f64> {
    (1..=n).map(|i| i as f64 / (n + 1) as f64).collect()
}

/// Evaluate `n` pedal parameters in parallel; samples come back ordered by
/// `t`. Failed samples carry their error and are counted, not fatal.
pub fn sweep_study(r: &ReuleauxTriangle, n: usize, k: f64) -> Result<SweepReport, ReuleauxError> {
    if n < 3 {
        return Err(ReuleauxError::InvalidSweep(n));
    }
    if !(k > 0.0) || !k.is_finite() {
        return Err(ReuleauxError::InvalidRadius(k));
    }
    let samples: Vec<SweepSample> = sweep_parameters(n)
        .into_par_iter()
        .map(|t| sweep_sample(r, t, k))
        .collect();
    let ok = || samples.iter().filter(|s| s.error.is_none());
    let summary = SweepSummary {
        fafb_min: nan_min(ok().map(|s| s.fafb)),
        fafb_max: nan_max(ok().map(|s| s.fafb)),
        max_focus_deviation: nan_max(ok().map(|s| s.focus_deviation)),
        min_focus_deviation: nan_min(ok().map(|s| s.focus_deviation)),
        max_collinearity: nan_max(ok().map(|s| s.collinearity)),
        max_perpendicularity: nan_max(ok().map(|s| s.perpendicularity)),
        max_tangency: nan_max(ok().map(|s| s.tangency)),
        max_polar_tangency: r
            .symmetric
            .then(|| nan_max(ok().map(|s| s.polar_tangency.unwrap_or(f64::NAN)))),
        failed_samples: samples.iter().filter(|s| s.error.is_some()).count(),
    };
    Ok(SweepReport {
        scale: r.scale(),
        k,
        samples,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conics::PARABOLA_WINDOW;
    use approx::assert_abs_diff_eq;

    const S3: f64 = 0.866_025_403_784_438_6;

    fn close(p: Point, x: f64, y: f64, tol: f64) -> bool {
        (p.x - x).abs() < tol && (p.y - y).abs() < tol
    }

    fn canonical_m() -> Point {
        ReuleauxTriangle::canonical().pedal_point_at(0.5).unwrap()
    }

    #[test]
    fn canonical_vertices_and_pedal_points() {
        let r = ReuleauxTriangle::canonical();
        let [v1, v2, v3] = r.vertices();
        assert!(close(v1, 0.0, 0.0, 1e-15) && close(v2, 1.0, 0.0, 1e-15) && close(v3, 0.5, S3, 1e-15));
        assert!(r.is_symmetric());
        assert!(close(r.pedal_point_at(0.5).unwrap(), 0.5, S3 - 1.0, 1e-15));
        assert_eq!(r.pedal_point_at(0.0).unwrap(), v1);
        assert_eq!(r.pedal_point_at(1.0).unwrap(), v2);
        assert_eq!(r.pedal_point_at(1.5), Err(ReuleauxError::ParameterOutOfRange(1.5)));
    }

    #[test]
    fn asymmetric_construction() {
        let v = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.4, 0.9)];
        let r = ReuleauxTriangle::from_vertices_and_radii(v, [1.1, 1.3, 1.2]).unwrap();
        assert!(!r.is_symmetric());
        for (i, &(j, k)) in OTHERS.iter().enumerate() {
            let c = r.arc_circles()[i];
            assert!(c.signed_distance(v[j]).abs() < 1e-12 && c.signed_distance(v[k]).abs() < 1e-12);
        }
        // equal radii and an equilateral triangle come out symmetric
        let eq = ReuleauxTriangle::canonical().vertices();
        assert!(ReuleauxTriangle::from_vertices_and_radii(eq, [1.0; 3])
            .unwrap()
            .is_symmetric());
    }

    #[test]
    fn invalid_arcs_are_rejected() {
        let v = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.4, 0.9)];
        assert!(matches!(
            ReuleauxTriangle::from_vertices_and_radii(v, [0.3, 1.3, 1.2]),
            Err(ReuleauxError::InvalidArcs(_))
        ));
        let cw = [v[1], v[0], v[2]];
        assert!(matches!(
            ReuleauxTriangle::from_vertices_and_radii(cw, [1.1, 1.3, 1.2]),
            Err(ReuleauxError::InvalidArcs(_))
        ));
        // circles that miss the vertices
        let eq = ReuleauxTriangle::canonical().vertices();
        let circles = eq.map(|c| Circle { center: c, radius: 1.1 });
        assert!(matches!(
            ReuleauxTriangle::from_arcs(eq, circles),
            Err(ReuleauxError::InvalidArcs(_))
        ));
        // huge radii flatten the arcs until the vertex turns go negative
        let thin = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.5, 0.05)];
        assert!(ReuleauxTriangle::from_vertices_and_radii(thin, [0.6, 0.6, 50.0]).is_err());
    }

    #[test]
    fn canonical_endpoints() {
        let r = ReuleauxTriangle::canonical();
        let e = npc_endpoints(&r, canonical_m()).unwrap();
        assert!(close(e.p0, 0.5, 1.8660254, 1e-7));
        assert!(close(e.a1, 0.9641016, 0.1339746, 1e-7));
        assert!(close(e.a2, -0.0773503, 0.8660254, 1e-7));
        assert!(close(e.b1, 1.0 - e.a1.x, e.a1.y, 1e-14));
        assert!(close(e.b2, 1.0 - e.a2.x, e.a2.y, 1e-14));
        assert!(close(e.f_a, -0.5, 0.1339746, 1e-7));
        assert!(close(e.f_b, 1.5, 0.1339746, 1e-7));
        assert_abs_diff_eq!(e.f_a.distance(e.f_b), 2.0, epsilon = 1e-14);
        for x in [e.a1, e.a2] {
            assert!(e.e_a.distance_estimate(x) < 1e-9);
        }
        for x in [e.b1, e.b2] {
            assert!(e.e_b.distance_estimate(x) < 1e-9);
        }
        assert_eq!(
            npc_endpoints(&r, Point::new(0.0, 0.0)),
            Err(ReuleauxError::PedalAtVertex)
        );
        assert_eq!(npc_endpoints(&r, Point::new(0.5, 0.0)), Err(ReuleauxError::PedalOffArc));
    }

    #[test]
    fn endpoint_conic_is_symmetric_at_midpoint() {
        let q = endpoint_conic(&ReuleauxTriangle::canonical(), canonical_m()).unwrap();
        // q(1 − x, y) has coefficients (A, −B, C, −2A − D, −B + E, A + D + F)
        let [a, b, c, d, e, f] = q.coeffs();
        let mirrored = GeneralConic::new([a, -b, c, -2.0 * a - d, -b + e, a + d + f]).unwrap();
        assert!(q.coefficient_distance(&mirrored) < 1e-9);
        let (_, dev) = nearest_focus(&q, canonical_m()).unwrap();
        assert!(dev < 1e-9);
    }

    #[test]
    fn endpoint_conic_varies_continuously() {
        let r = ReuleauxTriangle::canonical();
        let q = |t: f64| endpoint_conic(&r, r.pedal_point_at(t).unwrap()).unwrap();
        let h = 1e-6;
        let slope = q(0.5 + h).coefficient_distance(&q(0.5 - h)) / (2.0 * h);
        assert!(slope.is_finite() && slope < 10.0, "{slope}");
    }

    #[test]
    fn focus_theorem_holds() {
        let r = ReuleauxTriangle::canonical();
        for t in [0.5, 0.25, 0.1, 0.9] {
            let rep = verify_focus_theorem(&r, r.pedal_point_at(t).unwrap(), 1e-9).unwrap();
            assert!(rep.pass, "t={t}: {:?}", rep.residuals);
        }
        let asym = ReuleauxTriangle::from_vertices_and_radii(
            [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.4, 0.9)],
            [1.1, 1.3, 1.2],
        )
        .unwrap();
        let m = asym.pedal_point_at(0.5).unwrap();
        assert_eq!(verify_focus_theorem(&asym, m, 1e-9), Err(ReuleauxError::NotSymmetric));
    }

    #[test]
    fn inverted_configuration_canonical() {
        let r = ReuleauxTriangle::canonical();
        let m = canonical_m();
        let rep = check_inverted_configuration(&r, m, 1.0, 1e-9).unwrap();
        assert!(rep.pass, "{:?}", rep.failures());
        assert!(rep.residuals["equilateral_dispersion"] < 1e-10);
        assert!(rep.residuals["angle_120_at_v1p"] < 1e-8);
        let cfg = inverted_configuration(&r, m, 1.0).unwrap();
        // c0 and C0 are the images of the arcs through V₃
        let img = |i: usize| *cfg.images[i].as_circle().unwrap();
        assert!(cfg.c0.center.distance(img(1).center) < 1e-9);
        assert!(cfg.cc0.center.distance(img(0).center) < 1e-9);
    }

    #[test]
    fn inverted_checks_are_k_invariant() {
        let r = ReuleauxTriangle::canonical();
        for t in [0.2, 0.5, 0.7] {
            let m = r.pedal_point_at(t).unwrap();
            let reps: Vec<_> = [0.5, 1.0, 2.0]
                .iter()
                .map(|&k| check_inverted_configuration(&r, m, k, 1e-8).unwrap())
                .collect();
            for rep in &reps {
                assert!(rep.pass, "{:?}", rep.failures());
                for (name, v) in &rep.residuals {
                    assert!((v - reps[0].residuals[name]).abs() < 1e-8, "{name}");
                }
                assert_abs_diff_eq!(rep.values["position"], reps[0].values["position"], epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn classification_routes_agree() {
        let r = ReuleauxTriangle::canonical();
        for t in [0.02, 0.1, 0.25, 0.5, 0.75, 0.98] {
            let m = r.pedal_point_at(t).unwrap();
            let by_position = classify_by_position(&r, m, 1.0).unwrap();
            let by_fit = classify_conic(&endpoint_conic(&r, m).unwrap(), PARABOLA_TOL);
            assert_eq!(by_position, by_fit, "t={t}");
        }
        let mid = classify_by_position(&r, canonical_m(), 1.0).unwrap();
        assert_eq!(mid, ConicClass::Ellipse);
        let edge = classify_by_position(&r, r.pedal_point_at(0.02).unwrap(), 1.0).unwrap();
        assert_eq!(edge, ConicClass::Hyperbola);
    }

    #[test]
    fn parabola_pedals() {
        let r = ReuleauxTriangle::canonical();
        let (t1, t2) = locate_parabola_pedals(&r, 1.0).unwrap();
        assert!(t1 < 0.5 && t2 > 0.5);
        assert!((t1 - (1.0 - t2)).abs() < 1e-9, "{t1} {t2}");
        let q = endpoint_conic(&r, r.pedal_point_at(t1).unwrap()).unwrap();
        assert!(q.discriminant().abs() < 1e-7, "{}", q.discriminant());
        assert_eq!(classify_conic(&q, PARABOLA_TOL), ConicClass::Parabola);
        assert!(position_function(&r, canonical_m(), 1.0).unwrap() < -0.1);
        // the crossing does not depend on k
        let (s1, _) = locate_parabola_pedals(&r, 2.0).unwrap();
        assert!((s1 - t1).abs() < 1e-9);
        // focus theorem still holds at the parabola
        let f = conic_features(&q).unwrap();
        assert!(classify_conic(&q, PARABOLA_WINDOW) != ConicClass::Degenerate);
        assert!(
            f.nearest_focus(r.pedal_point_at(t1).unwrap())
                .distance(r.pedal_point_at(t1).unwrap())
                < 1e-8
        );
    }

    #[test]
    fn elementary_properties_canonical() {
        let r = ReuleauxTriangle::canonical();
        let rep = check_elementary_properties(&r, canonical_m(), 1e-9).unwrap();
        assert!(rep.pass, "{:?}", rep.failures());
        assert_eq!(rep.values["intersection_count"], 2.0);
        for u in ["u1", "u2"] {
            assert!((rep.points[u].x - 0.5).abs() < 1e-10);
        }
        assert!(close(rep.points["f_a"], -0.5, 0.1339746, 1e-7));
    }

    #[test]
    fn elementary_properties_asymmetric_subset() {
        let r = ReuleauxTriangle::from_vertices_and_radii(
            [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.4, 0.9)],
            [1.1, 1.3, 1.2],
        )
        .unwrap();
        let rep = check_elementary_properties(&r, r.pedal_point_at(0.4).unwrap(), 1e-8).unwrap();
        for name in [
            "a1_on_p0v2",
            "b1_on_p0v1",
            "a2b2_tangent_a",
            "a2b2_tangent_b",
            "common_focus_a",
        ] {
            assert!(rep.residuals[name] < 1e-8, "{name}: {}", rep.residuals[name]);
        }
        assert!(!rep.residuals.contains_key("homothety_fa"));
    }

    #[test]
    fn mirror_symmetry_of_endpoints() {
        let r = ReuleauxTriangle::canonical();
        let mirror = |p: Point| Point::new(1.0 - p.x, p.y);
        for t in [0.1, 0.3, 0.45] {
            let e = npc_endpoints(&r, r.pedal_point_at(t).unwrap()).unwrap();
            let f = npc_endpoints(&r, r.pedal_point_at(1.0 - t).unwrap()).unwrap();
            for (a, b) in [(e.a1, f.b1), (e.a2, f.b2), (e.f_a, f.f_b), (e.p0, f.p0)] {
                assert!(mirror(a).distance(b) < 1e-9);
            }
        }
    }

    #[test]
    fn residuals_are_pose_invariant() {
        let base = ReuleauxTriangle::canonical();
        let pose = RigidMotion::new(0.7, Point::new(3.0, -2.0));
        let moved = ReuleauxTriangle::symmetric(1.0, &pose).unwrap();
        assert!(moved.transformed(&RigidMotion::IDENTITY).is_symmetric());
        let t = 0.3;
        let a = check_elementary_properties(&base, base.pedal_point_at(t).unwrap(), 1e-9).unwrap();
        let b = check_elementary_properties(&moved, moved.pedal_point_at(t).unwrap(), 1e-9).unwrap();
        assert_eq!(a.pass, b.pass);
        for (name, v) in &a.residuals {
            assert!((v - b.residuals[name]).abs() < 1e-9, "{name}");
        }
        let fa = verify_focus_theorem(&base, base.pedal_point_at(t).unwrap(), 1e-9).unwrap();
        let fb = verify_focus_theorem(&moved, moved.pedal_point_at(t).unwrap(), 1e-9).unwrap();
        for (name, v) in &fa.residuals {
            assert!((v - fb.residuals[name]).abs() < 1e-9, "{name}");
        }
    }

    #[test]
    fn mirrored_triangle_swaps_roles() {
        let r = ReuleauxTriangle::from_vertices_and_radii(
            [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.4, 0.9)],
            [1.1, 1.3, 1.2],
        )
        .unwrap();
        let m = r.mirrored();
        assert_eq!(m.radii(), [1.3, 1.1, 1.2]);
        let e = npc_endpoints(&r, r.pedal_point_at(0.3).unwrap()).unwrap();
        let f = npc_endpoints(&m, m.pedal_point_at(0.7).unwrap()).unwrap();
        assert_abs_diff_eq!(e.f_a.distance(e.f_b), f.f_a.distance(f.f_b), epsilon = 1e-12);
    }

    #[test]
    fn sweep_symmetric() {
        let rep = sweep_study(&ReuleauxTriangle::canonical(), 20, 1.0).unwrap();
        assert_eq!(rep.samples.len(), 20);
        assert!(rep.samples.windows(2).all(|w| w[0].t < w[1].t));
        assert_eq!(rep.summary.failed_samples, 0);
        assert!(rep.summary.max_focus_deviation < 1e-8);
        assert!(rep.summary.fafb_spread() < 1e-12);
        assert!(rep.summary.max_polar_tangency.unwrap() < 1e-8);
        assert_eq!(
            sweep_study(&ReuleauxTriangle::canonical(), 1, 1.0),
            Err(ReuleauxError::InvalidSweep(1))
        );
    }

    #[test]
    fn sweep_asymmetric_records_focus_deviation() {
        let r = ReuleauxTriangle::from_vertices_and_radii(
            [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.4, 0.9)],
            [1.1, 1.3, 1.2],
        )
        .unwrap();
        let rep = sweep_study(&r, 10, 1.0).unwrap();
        assert_eq!(rep.summary.failed_samples, 0);
        assert!(rep.summary.fafb_spread() < 1e-9);
        assert!(rep.summary.max_focus_deviation > 1e-4);
        assert!(rep.summary.max_polar_tangency.is_none());
    }
}
