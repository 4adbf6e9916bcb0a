//! Plane primitives: points, lines, circles, inversion and pole/polar duality.
//!
//! Every predicate works with an absolute tolerance obtained from a relative
//! tolerance times a characteristic length of the scene. Functions that need
//! a scale pick the natural one (the inversion radius `k`, a circle radius)
//! and use [`DEFAULT_REL_TOL`].

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative tolerance for incidence predicates.
pub const DEFAULT_REL_TOL: f64 = 1e-9;

/// Below this magnitude the x component of a line normal counts as zero when
/// canonicalizing the sign.
const CANONICAL_EPS: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("point coincides with the inversion center")]
    CenterInversion,
    #[error("line passes through the inversion center")]
    LineThroughCenter,
    #[error("the through-point lies on the tangent line")]
    DegenerateTangency,
    #[error("triangle is degenerate")]
    DegenerateTriangle,
    #[error("objects coincide")]
    CoincidentObjects,
    #[error("point does not lie on the curve")]
    PointNotOnCurve,
    #[error("radius must be positive and finite, got {0}")]
    InvalidRadius(f64),
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("zero-length direction")]
    ZeroDirection,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn from_polar(radius: f64, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(radius * c, radius * s)
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z component of the 3D cross product.
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, o: Point) -> f64 {
        (self - o).norm()
    }

    pub fn unit(self) -> Option<Point> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self / n)
    }

    /// Rotation by +90°.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn rotate(self, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn midpoint(self, o: Point) -> Point {
        (self + o) * 0.5
    }

    pub fn lerp(self, o: Point, t: f64) -> Point {
        self + (o - self) * t
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Div<f64> for Point {
    type Output = Point;
    fn div(self, s: f64) -> Point {
        Point::new(self.x / s, self.y / s)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// A line `normal · p = offset` with a unit normal.
///
/// The sign of `(normal, offset)` is canonical: the first component of the
/// normal that is not (numerically) zero is positive. Two constructions of
/// the same line therefore compare equal up to rounding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line {
    normal: Point,
    offset: f64,
}

impl Line {
    pub fn new(normal: Point, offset: f64) -> Result<Self, GeomError> {
        if !normal.is_finite() || !offset.is_finite() {
            return Err(GeomError::NonFinite);
        }
        let n = normal.norm();
        if n == 0.0 {
            return Err(GeomError::ZeroDirection);
        }
        let (mut normal, mut offset) = (normal / n, offset / n);
        if normal.x < -CANONICAL_EPS || (normal.x.abs() <= CANONICAL_EPS && normal.y < 0.0) {
            normal = -normal;
            offset = -offset;
        }
        Ok(Self { normal, offset })
    }

    pub fn through(p: Point, q: Point) -> Result<Self, GeomError> {
        Self::through_point_with_direction(p, q - p)
    }

    pub fn through_point_with_direction(p: Point, dir: Point) -> Result<Self, GeomError> {
        Self::through_point_with_normal(p, dir.perp())
    }

    pub fn through_point_with_normal(p: Point, normal: Point) -> Result<Self, GeomError> {
        let n = normal.unit().ok_or(GeomError::ZeroDirection)?;
        Self::new(n, n.dot(p))
    }

    pub fn normal(&self) -> Point {
        self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn direction(&self) -> Point {
        -self.normal.perp()
    }

    /// The point of the line closest to the origin.
    pub fn anchor(&self) -> Point {
        self.normal * self.offset
    }

    pub fn signed_distance(&self, p: Point) -> f64 {
        self.normal.dot(p) - self.offset
    }

    pub fn distance(&self, p: Point) -> f64 {
        self.signed_distance(p).abs()
    }

    pub fn foot(&self, p: Point) -> Point {
        p - self.normal * self.signed_distance(p)
    }

    pub fn reflect(&self, p: Point) -> Point {
        p - self.normal * (2.0 * self.signed_distance(p))
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        self.distance(p) <= tol
    }

    pub fn intersect_line(&self, other: &Line) -> Option<Point> {
        let det = self.normal.cross(other.normal);
        if det.abs() < 1e-15 {
            return None;
        }
        let x = (self.offset * other.normal.y - other.offset * self.normal.y) / det;
        let y = (self.normal.x * other.offset - other.normal.x * self.offset) / det;
        Some(Point::new(x, y))
    }

    /// How far apart two lines are, in length units: offset difference plus
    /// normal difference times `scale`. Orientation is ignored.
    pub fn discrepancy(&self, other: &Line, scale: f64) -> f64 {
        let same = (self.offset - other.offset).abs() + scale * (self.normal - other.normal).norm();
        let flipped = (self.offset + other.offset).abs() + scale * (self.normal + other.normal).norm();
        same.min(flipped)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Result<Self, GeomError> {
        if !center.is_finite() {
            return Err(GeomError::NonFinite);
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(GeomError::InvalidRadius(radius));
        }
        Ok(Self { center, radius })
    }

    /// Circle through three points.
    pub fn through(a: Point, b: Point, c: Point) -> Result<Self, GeomError> {
        let center = circumcenter(a, b, c)?;
        Self::new(center, center.distance(a))
    }

    pub fn point_at(&self, angle: f64) -> Point {
        self.center + Point::from_polar(self.radius, angle)
    }

    pub fn angle_of(&self, p: Point) -> f64 {
        (p - self.center).angle()
    }

    /// Signed distance of `p` from the circle (negative inside).
    pub fn signed_distance(&self, p: Point) -> f64 {
        p.distance(self.center) - self.radius
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        self.signed_distance(p).abs() <= tol
    }

    pub fn antipode(&self, p: Point) -> Point {
        self.center * 2.0 - p
    }

    /// Tangent line at the point of the circle nearest to `p`.
    pub fn tangent_at(&self, p: Point) -> Result<Line, GeomError> {
        Line::through_point_with_normal(p, p - self.center)
    }
}

/// A generalized circle: the image of a circle under inversion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CircleOrLine {
    Circle(Circle),
    Line(Line),
}

impl CircleOrLine {
    pub fn as_circle(&self) -> Option<&Circle> {
        match self {
            CircleOrLine::Circle(c) => Some(c),
            CircleOrLine::Line(_) => None,
        }
    }

    pub fn as_line(&self) -> Option<&Line> {
        match self {
            CircleOrLine::Line(l) => Some(l),
            CircleOrLine::Circle(_) => None,
        }
    }

    /// Unsigned distance from `p` to the curve.
    pub fn distance(&self, p: Point) -> f64 {
        match self {
            CircleOrLine::Circle(c) => c.signed_distance(p).abs(),
            CircleOrLine::Line(l) => l.distance(p),
        }
    }

    /// Normal at `p`; for a circle it points towards the center.
    fn normal_at(&self, p: Point) -> Option<Point> {
        match self {
            CircleOrLine::Circle(c) => (c.center - p).unit(),
            CircleOrLine::Line(l) => Some(l.normal()),
        }
    }

    fn scale(&self) -> Option<f64> {
        self.as_circle().map(|c| c.radius)
    }
}

impl From<Circle> for CircleOrLine {
    fn from(c: Circle) -> Self {
        CircleOrLine::Circle(c)
    }
}

impl From<Line> for CircleOrLine {
    fn from(l: Line) -> Self {
        CircleOrLine::Line(l)
    }
}

/// The circle of inversion: center `M` (the pedal point) and radius `k`.
///
/// Inversion, poles and polars are all taken with respect to this circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InversionCircle {
    pub center: Point,
    pub k: f64,
}

impl InversionCircle {
    pub fn new(center: Point, k: f64) -> Result<Self, GeomError> {
        if !center.is_finite() {
            return Err(GeomError::NonFinite);
        }
        if !(k > 0.0 && k.is_finite()) {
            return Err(GeomError::InvalidRadius(k));
        }
        Ok(Self { center, k })
    }

    fn degenerate_tol(&self) -> f64 {
        1e-12 * self.k
    }

    /// `P' = M + k² (P − M) / |P − M|²`.
    pub fn invert_point(&self, p: Point) -> Result<Point, GeomError> {
        let w = p - self.center;
        let d2 = w.norm_sq();
        if d2.sqrt() <= self.degenerate_tol() {
            return Err(GeomError::CenterInversion);
        }
        Ok(self.center + w * (self.k * self.k / d2))
    }

    /// Image of a circle: a circle, or a line when the circle passes through
    /// the inversion center (decided within `1e-9 · max(k, r)`).
    pub fn invert_circle(&self, c: &Circle) -> CircleOrLine {
        let scale = self.k.max(c.radius);
        let w = c.center - self.center;
        let dist = w.norm();
        let u = w.unit().unwrap_or(Point::new(1.0, 0.0));
        if (dist - c.radius).abs() < DEFAULT_REL_TOL * scale {
            // Through the center: the image of the antipode of M fixes the line.
            let far = c.center + u * c.radius;
            let img = self.center + u * (self.k * self.k / far.distance(self.center));
            let line = Line::through_point_with_normal(img, u).expect("unit normal");
            return CircleOrLine::Line(line);
        }
        // The diameter along line(M, center) maps to a diameter of the image.
        let kk = self.k * self.k;
        let a = self.center + u * (kk / (dist - c.radius));
        let b = self.center + u * (kk / (dist + c.radius));
        CircleOrLine::Circle(Circle {
            center: a.midpoint(b),
            radius: 0.5 * a.distance(b),
        })
    }

    /// Image of a line: itself when it passes through the center, otherwise
    /// the circle through the center with diameter `[M, pole]`.
    pub fn invert_line(&self, l: &Line) -> CircleOrLine {
        if l.distance(self.center) < DEFAULT_REL_TOL * self.k {
            return CircleOrLine::Line(*l);
        }
        let foot_img = self.invert_point(l.foot(self.center)).expect("foot off center");
        CircleOrLine::Circle(Circle {
            center: self.center.midpoint(foot_img),
            radius: 0.5 * self.center.distance(foot_img),
        })
    }

    /// Polar of `p`: the line through the inverse of `p`, perpendicular to
    /// `M p`. Points of the polar satisfy `(X − M)·(P − M) = k²`.
    pub fn polar_of_point(&self, p: Point) -> Result<Line, GeomError> {
        let w = p - self.center;
        if w.norm() <= self.degenerate_tol() {
            return Err(GeomError::CenterInversion);
        }
        Line::new(w, self.k * self.k + w.dot(self.center))
    }

    /// Pole of a line: the inverse of the foot of the perpendicular from `M`.
    pub fn pole_of_line(&self, l: &Line) -> Result<Point, GeomError> {
        if l.distance(self.center) < DEFAULT_REL_TOL * self.k {
            return Err(GeomError::LineThroughCenter);
        }
        self.invert_point(l.foot(self.center))
    }
}

/// Circle tangent to `line` at `touch` and passing through `through`.
pub fn circle_tangent_at_through(line: &Line, touch: Point, through: Point) -> Result<Circle, GeomError> {
    let scale = touch.distance(through).max(f64::MIN_POSITIVE);
    if line.distance(touch) > 1e-10 * scale.max(1.0) {
        return Err(GeomError::PointNotOnCurve);
    }
    let n = line.normal();
    let h = n.dot(through - touch);
    if h.abs() <= DEFAULT_REL_TOL * scale {
        return Err(GeomError::DegenerateTangency);
    }
    let s = (through - touch).norm_sq() / (2.0 * h);
    Circle::new(touch + n * s, s.abs())
}

/// Signed area of the triangle `abc` (positive when counterclockwise).
pub fn triangle_area(a: Point, b: Point, c: Point) -> f64 {
    0.5 * (b - a).cross(c - a)
}

pub fn centroid(a: Point, b: Point, c: Point) -> Point {
    (a + b + c) / 3.0
}

pub fn circumcenter(a: Point, b: Point, c: Point) -> Result<Point, GeomError> {
    let (ab, ac) = (b - a, c - a);
    let d = 2.0 * ab.cross(ac);
    let scale = ab.norm_sq().max(ac.norm_sq());
    if d.abs() <= 1e-14 * scale {
        return Err(GeomError::DegenerateTriangle);
    }
    let (b2, c2) = (ab.norm_sq(), ac.norm_sq());
    Ok(a + Point::new(ac.y * b2 - ab.y * c2, ab.x * c2 - ac.x * b2) / d)
}

/// Distance of `p` from the line through `a` and `b`; a collinearity residual
/// in length units.
pub fn collinearity_residual(a: Point, b: Point, p: Point) -> f64 {
    match Line::through(a, b) {
        Ok(l) => l.distance(p),
        Err(_) => p.distance(a),
    }
}

/// The excircle of triangle `(v1, apex, v2)` opposite `apex`: tangent to the
/// side `v1 v2` and to the extensions of the sides through `apex`.
pub fn exinscribed_circle(v1: Point, apex: Point, v2: Point) -> Result<Circle, GeomError> {
    let a = v1.distance(v2);
    let b = apex.distance(v2);
    let c = apex.distance(v1);
    let area = triangle_area(v1, apex, v2).abs();
    let scale = a.max(b).max(c);
    if area <= 1e-12 * scale * scale {
        return Err(GeomError::DegenerateTriangle);
    }
    let s = 0.5 * (a + b + c);
    let center = (apex * -a + v1 * b + v2 * c) / (b + c - a);
    Circle::new(center, area / (s - a))
}

/// Points common to two generalized circles.
///
/// Tangency (within `1e-9 · scale`) yields exactly one point.
pub fn intersect(a: &CircleOrLine, b: &CircleOrLine) -> Result<Vec<Point>, GeomError> {
    let scale = match (a.scale(), b.scale()) {
        (Some(x), Some(y)) => x.max(y),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => 1.0,
    };
    let tol = DEFAULT_REL_TOL * scale;
    match (a, b) {
        (CircleOrLine::Line(l1), CircleOrLine::Line(l2)) => match l1.intersect_line(l2) {
            Some(p) => Ok(vec![p]),
            None if l1.discrepancy(l2, 1.0) < tol => Err(GeomError::CoincidentObjects),
            None => Ok(vec![]),
        },
        (CircleOrLine::Line(l), CircleOrLine::Circle(c)) | (CircleOrLine::Circle(c), CircleOrLine::Line(l)) => {
            Ok(line_circle(l, c, tol))
        }
        (CircleOrLine::Circle(c1), CircleOrLine::Circle(c2)) => circle_circle(c1, c2, tol),
    }
}

fn line_circle(l: &Line, c: &Circle, tol: f64) -> Vec<Point> {
    let d = l.signed_distance(c.center);
    let foot = l.foot(c.center);
    if (d.abs() - c.radius).abs() < tol {
        return vec![foot];
    }
    if d.abs() > c.radius {
        return vec![];
    }
    let h = (c.radius * c.radius - d * d).sqrt();
    let dir = l.direction();
    vec![foot - dir * h, foot + dir * h]
}

fn circle_circle(c1: &Circle, c2: &Circle, tol: f64) -> Result<Vec<Point>, GeomError> {
    let w = c2.center - c1.center;
    let d = w.norm();
    if d < tol && (c1.radius - c2.radius).abs() < tol {
        return Err(GeomError::CoincidentObjects);
    }
    if d < tol {
        return Ok(vec![]);
    }
    let u = w / d;
    let (r1, r2) = (c1.radius, c2.radius);
    if (d - (r1 + r2)).abs() < tol {
        return Ok(vec![c1.center + u * r1]);
    }
    if (d - (r1 - r2).abs()).abs() < tol {
        let sign = if r1 >= r2 { 1.0 } else { -1.0 };
        return Ok(vec![c1.center + u * (sign * r1)]);
    }
    if d > r1 + r2 || d < (r1 - r2).abs() {
        return Ok(vec![]);
    }
    let x = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    let h = (r1 * r1 - x * x).max(0.0).sqrt();
    let base = c1.center + u * x;
    Ok(vec![base - u.perp() * h, base + u.perp() * h])
}

/// Angle in degrees between the unit vectors along `u` and `v`, in `[0, 180]`.
pub fn angle_between_rays(u: Point, v: Point) -> f64 {
    u.cross(v).atan2(u.dot(v)).abs().to_degrees()
}

/// Angle between two generalized circles at a common point `p`, in degrees,
/// in `[0, 180)`.
///
/// Circles are oriented by their inward normals (towards the center); a line
/// by its canonical normal. The result is the opening angle of the region
/// bounded by both curves, `180° − ∠(n_a, n_b)`: two arcs of a Reuleaux
/// triangle meet at 120°, orthogonal circles at 90°, a circle and one of its
/// tangent lines at 0°.
pub fn angle_between_at(a: &CircleOrLine, b: &CircleOrLine, p: Point) -> Result<f64, GeomError> {
    let scale = a.scale().into_iter().chain(b.scale()).fold(1.0_f64, f64::max);
    let tol = 1e-7 * scale;
    if a.distance(p) > tol || b.distance(p) > tol {
        return Err(GeomError::PointNotOnCurve);
    }
    let na = a.normal_at(p).ok_or(GeomError::PointNotOnCurve)?;
    let nb = b.normal_at(p).ok_or(GeomError::PointNotOnCurve)?;
    let angle = 180.0 - angle_between_rays(na, nb);
    Ok(if angle >= 180.0 { angle - 180.0 } else { angle })
}

/// A rotation about the origin followed by a translation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RigidMotion {
    pub rotation: f64,
    pub translation: Point,
}

impl RigidMotion {
    pub const IDENTITY: RigidMotion = RigidMotion {
        rotation: 0.0,
        translation: Point::ORIGIN,
    };

    pub fn new(rotation: f64, translation: Point) -> Self {
        Self { rotation, translation }
    }

    pub fn apply(&self, p: Point) -> Point {
        p.rotate(self.rotation) + self.translation
    }

    pub fn apply_vector(&self, v: Point) -> Point {
        v.rotate(self.rotation)
    }

    pub fn apply_line(&self, l: &Line) -> Line {
        Line::through_point_with_normal(self.apply(l.anchor()), self.apply_vector(l.normal()))
            .expect("rigid motion keeps the normal nonzero")
    }

    pub fn apply_circle(&self, c: &Circle) -> Circle {
        Circle {
            center: self.apply(c.center),
            radius: c.radius,
        }
    }

    pub fn inverse(&self) -> RigidMotion {
        RigidMotion {
            rotation: -self.rotation,
            translation: -self.translation.rotate(-self.rotation),
        }
    }
}

/// Normalize an angle to `(-π, π]`.
pub fn wrap_angle(a: f64) -> f64 {
    let mut a = a % (2.0 * PI);
    if a > PI {
        a -= 2.0 * PI;
    } else if a <= -PI {
        a += 2.0 * PI;
    }
    a
}
