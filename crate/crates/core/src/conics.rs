//! General conics `A x² + B xy + C y² + D x + E y + F = 0`.
//!
//! Coefficient vectors are kept at unit Euclidean norm with the first
//! non-negligible coefficient positive, so two constructions of the same conic
//! can be compared coefficient-wise.
//!
//! Foci are computed from the dual conic: a point `w = x + iy` is a focus iff
//! the lines joining it to the circular points are tangent to the conic, which
//! is a single complex quadratic in `w`. Its stable root formula stays
//! accurate when the conic is close to a parabola and the center runs off to
//! infinity.

use std::fmt;

use nalgebra::{Matrix3, SMatrix, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{GeomError, Line, Point, RigidMotion};

/// Default parabola window on [`GeneralConic::relative_discriminant`].
pub const PARABOLA_WINDOW: f64 = 1e-9;

/// Normalized coefficients below this magnitude are skipped when fixing the
/// overall sign.
const SIGN_EPS: f64 = 1e-12;

/// [`GeneralConic::degeneracy`] below which a conic counts as a line pair.
pub const DEGENERATE_DET: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConicError {
    #[error("quadratic part vanishes")]
    NotQuadratic,
    #[error("points are degenerate: incidence matrix has rank < 5")]
    DegenerateConfiguration,
    #[error("conic is degenerate")]
    DegenerateConic,
    #[error("focus is at or beyond the semi-major distance from the center")]
    FocusTooFar,
    #[error("focus is not beyond the semi-transverse distance from the center")]
    FocusTooClose,
    #[error("focus lies on the directrix")]
    FocusOnDirectrix,
    #[error("eccentricity must be positive, got {0}")]
    InvalidEccentricity(f64),
    #[error("non-finite coefficients")]
    NonFinite,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConicClass {
    Ellipse,
    Parabola,
    Hyperbola,
    Degenerate,
}

impl fmt::Display for ConicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConicClass::Ellipse => "ellipse",
            ConicClass::Parabola => "parabola",
            ConicClass::Hyperbola => "hyperbola",
            ConicClass::Degenerate => "degenerate",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneralConic {
    coeffs: [f64; 6],
}

impl GeneralConic {
    pub fn new(coeffs: [f64; 6]) -> Result<Self, ConicError> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(ConicError::NonFinite);
        }
        let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(ConicError::NotQuadratic);
        }
        let mut c = coeffs.map(|x| x / norm);
        if c[..3].iter().all(|x| x.abs() < SIGN_EPS) {
            return Err(ConicError::NotQuadratic);
        }
        if let Some(first) = c.iter().find(|x| x.abs() >= SIGN_EPS) {
            if *first < 0.0 {
                c = c.map(|x| -x);
            }
        }
        Ok(Self { coeffs: c })
    }

    /// From the symmetric matrix form `Xᵀ Q X = 0`, `X = (x, y, 1)`.
    pub fn from_matrix(m: &Matrix3<f64>) -> Result<Self, ConicError> {
        Self::new([
            m[(0, 0)],
            m[(0, 1)] + m[(1, 0)],
            m[(1, 1)],
            m[(0, 2)] + m[(2, 0)],
            m[(1, 2)] + m[(2, 1)],
            m[(2, 2)],
        ])
    }

    pub fn coeffs(&self) -> [f64; 6] {
        self.coeffs
    }

    pub fn matrix(&self) -> Matrix3<f64> {
        let [a, b, c, d, e, f] = self.coeffs;
        Matrix3::new(a, b / 2.0, d / 2.0, b / 2.0, c, e / 2.0, d / 2.0, e / 2.0, f)
    }

    pub fn eval(&self, p: Point) -> f64 {
        let [a, b, c, d, e, f] = self.coeffs;
        a * p.x * p.x + b * p.x * p.y + c * p.y * p.y + d * p.x + e * p.y + f
    }

    pub fn gradient(&self, p: Point) -> Point {
        let [a, b, c, d, e, _] = self.coeffs;
        Point::new(2.0 * a * p.x + b * p.y + d, b * p.x + 2.0 * c * p.y + e)
    }

    /// First-order geometric distance `|q(p)| / |∇q(p)|`.
    pub fn distance_estimate(&self, p: Point) -> f64 {
        let g = self.gradient(p).norm();
        if g == 0.0 {
            return f64::INFINITY;
        }
        self.eval(p).abs() / g
    }

    /// `B² − 4AC` of the normalized coefficients.
    pub fn discriminant(&self) -> f64 {
        let [a, b, c, ..] = self.coeffs;
        b * b - 4.0 * a * c
    }

    /// `(B² − 4AC) / (A² + B² + C²)`: the discriminant of the quadratic part
    /// alone, unchanged by scaling the plane. Ranges over `[−2, 1]`.
    pub fn relative_discriminant(&self) -> f64 {
        let [a, b, c, ..] = self.coeffs;
        (b * b - 4.0 * a * c) / (a * a + b * b + c * c)
    }

    pub fn determinant(&self) -> f64 {
        self.matrix().determinant()
    }

    /// `|det Q| / ‖Q‖³` after rescaling the plane so that the quadratic part
    /// and the constant (or linear) part have comparable size. Zero for line
    /// pairs; unchanged by scaling the plane.
    pub fn degeneracy(&self) -> f64 {
        let [a, b, c, d, e, f] = self.coeffs;
        let quad = (a * a + 0.5 * b * b + c * c).sqrt();
        let lin = 0.5 * d.hypot(e);
        let len = if f.abs() > 1e-300 {
            (f.abs() / quad).sqrt()
        } else if lin > 1e-300 {
            lin / quad
        } else {
            return 0.0;
        };
        let t = Matrix3::from_diagonal(&Vector3::new(len, len, 1.0));
        let q = t * self.matrix() * t;
        q.determinant().abs() / q.norm().powi(3)
    }

    pub fn is_degenerate(&self) -> bool {
        self.degeneracy() < DEGENERATE_DET
    }

    /// Euclidean distance between normalized coefficient vectors.
    pub fn coefficient_distance(&self, other: &GeneralConic) -> f64 {
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    /// Adjugate of the matrix form: the dual (line) conic.
    pub fn dual_matrix(&self) -> Matrix3<f64> {
        adjugate(&self.matrix())
    }

    /// Polar line of `p` with respect to this conic.
    pub fn polar_line(&self, p: Point) -> Result<Line, GeomError> {
        let l = self.matrix() * Vector3::new(p.x, p.y, 1.0);
        Line::new(Point::new(l[0], l[1]), -l[2])
    }

    pub fn transformed(&self, motion: &RigidMotion) -> GeneralConic {
        // q'(X) = q(T⁻¹ X)  ⇒  Q' = T⁻ᵀ Q T⁻¹
        let inv = motion.inverse();
        let (s, c) = inv.rotation.sin_cos();
        let t = Matrix3::new(c, -s, inv.translation.x, s, c, inv.translation.y, 0.0, 0.0, 1.0);
        let q = t.transpose() * self.matrix() * t;
        GeneralConic::from_matrix(&q).expect("rigid motion preserves the quadratic part")
    }
}

/// Adjugate (transposed cofactor matrix) of a 3×3 matrix.
pub fn adjugate(m: &Matrix3<f64>) -> Matrix3<f64> {
    let c = |r0: usize, r1: usize, c0: usize, c1: usize| m[(r0, c0)] * m[(r1, c1)] - m[(r0, c1)] * m[(r1, c0)];
    Matrix3::new(
        c(1, 2, 1, 2),
        -c(0, 2, 1, 2),
        c(0, 1, 1, 2),
        -c(1, 2, 0, 2),
        c(0, 2, 0, 2),
        -c(0, 1, 0, 2),
        c(1, 2, 0, 1),
        -c(0, 2, 0, 1),
        c(0, 1, 0, 1),
    )
}

/// Classify by the sign of the relative discriminant with a parabola window
/// of `tol`.
pub fn classify_conic(q: &GeneralConic, tol: f64) -> ConicClass {
    if q.is_degenerate() {
        return ConicClass::Degenerate;
    }
    let disc = q.relative_discriminant();
    if disc.abs() < tol {
        ConicClass::Parabola
    } else if disc < 0.0 {
        ConicClass::Ellipse
    } else {
        ConicClass::Hyperbola
    }
}

/// Geometric description of a non-degenerate conic.
///
/// For a parabola `center`, `minor_axis` and the semi-axes are absent and
/// `focal_distance` is the distance from a vertex to its focus. For a circle the two foci
/// coincide with the center and there are no directrices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConicFeatures {
    pub class: ConicClass,
    pub center: Option<Point>,
    pub major_axis: Line,
    pub minor_axis: Option<Line>,
    pub foci: Vec<Point>,
    pub vertices: Vec<Point>,
    pub directrices: Vec<Line>,
    pub eccentricity: f64,
    pub semi_major: Option<f64>,
    pub semi_minor: Option<f64>,
    pub focal_distance: f64,
}

impl ConicFeatures {
    /// Focus nearest to `p`.
    pub fn nearest_focus(&self, p: Point) -> Point {
        *self
            .foci
            .iter()
            .min_by(|a, b| a.distance(p).total_cmp(&b.distance(p)))
            .expect("at least one focus")
    }

    /// Focus farthest from `p`.
    pub fn farthest_focus(&self, p: Point) -> Point {
        *self
            .foci
            .iter()
            .max_by(|a, b| a.distance(p).total_cmp(&b.distance(p)))
            .expect("at least one focus")
    }
}

/// Eigen-decomposition of the 2×2 quadratic part, closed form.
/// Returns `(λ_small, v_small, λ_big, v_big)` ordered by `|λ|`.
fn quadratic_part_eigen(a: f64, b: f64, c: f64) -> (f64, Point, f64, Point) {
    let mean = 0.5 * (a + c);
    let rad = (0.5 * (a - c)).hypot(0.5 * b);
    let det = a * c - 0.25 * b * b;
    let big = if mean >= 0.0 { mean + rad } else { mean - rad };
    let small = if big != 0.0 { det / big } else { 0.0 };
    let eigvec = |lambda: f64| {
        let v1 = Point::new(0.5 * b, lambda - a);
        let v2 = Point::new(lambda - c, 0.5 * b);
        let v = if v1.norm_sq() >= v2.norm_sq() { v1 } else { v2 };
        v.unit()
    };
    match eigvec(big) {
        Some(v_big) if rad > 1e-15 * big.abs().max(1e-300) => (small, v_big.perp(), big, v_big),
        _ => (small, Point::new(1.0, 0.0), big, Point::new(0.0, 1.0)),
    }
}

/// The real foci, as roots of `c* w² − 2(g* + i f*) w + (a* − b* + 2i h*) = 0`
/// built from the dual conic.
pub fn foci_from_dual(q: &GeneralConic) -> Vec<Point> {
    let d = q.dual_matrix();
    let (a, b, c) = (d[(0, 0)], d[(1, 1)], d[(2, 2)]);
    let (h, g, f) = (d[(0, 1)], d[(0, 2)], d[(1, 2)]);
    let alpha = Complex64::new(c, 0.0);
    let beta = Complex64::new(-2.0 * g, -2.0 * f);
    let gamma = Complex64::new(a - b, 2.0 * h);
    let s = (beta * beta - alpha * gamma * 4.0).sqrt();
    let s = if (beta.conj() * s).re >= 0.0 { s } else { -s };
    let qq = -(beta + s) * 0.5;
    let mut roots = Vec::with_capacity(2);
    if qq.norm() > 0.0 {
        roots.push(gamma / qq);
    }
    if alpha.norm() > 0.0 {
        roots.push(qq / alpha);
    }
    roots
        .into_iter()
        .map(|w| Point::new(w.re, w.im))
        .filter(|p| p.is_finite())
        .collect()
}

pub fn conic_features(q: &GeneralConic) -> Result<ConicFeatures, ConicError> {
    if q.is_degenerate() {
        return Err(ConicError::DegenerateConic);
    }
    let [a, b, c, d, e, f] = q.coeffs();
    let (l_small, v_small, l_big, v_big) = quadratic_part_eigen(a, b, c);
    let class = classify_conic(q, PARABOLA_WINDOW);
    let foci_all = foci_from_dual(q);

    if class == ConicClass::Parabola {
        let (u, n, lam) = (v_small, v_big, l_big);
        let lin = Point::new(d, e);
        let (du, dn) = (lin.dot(u), lin.dot(n));
        if du.abs() < 1e-14 {
            return Err(ConicError::DegenerateConic);
        }
        let w0 = -dn / (2.0 * lam);
        let s0 = (dn * dn / (4.0 * lam) - f) / du;
        let vertex = u * s0 + n * w0;
        let open = if -du / lam > 0.0 { u } else { -u };
        let p = 0.25 * (du / lam).abs();
        let focus = foci_all
            .iter()
            .copied()
            .min_by(|x, y| x.distance(vertex).total_cmp(&y.distance(vertex)))
            .unwrap_or(vertex + open * p);
        let directrix = Line::through_point_with_normal(vertex - open * p, open)?;
        return Ok(ConicFeatures {
            class,
            center: None,
            major_axis: Line::through_point_with_direction(vertex, open)?,
            minor_axis: None,
            foci: vec![focus],
            vertices: vec![vertex],
            directrices: vec![directrix],
            eccentricity: 1.0,
            semi_major: None,
            semi_minor: None,
            focal_distance: p,
        });
    }

    let det2 = a * c - 0.25 * b * b;
    let center = Point::new((0.25 * b * e - 0.5 * c * d) / det2, (0.25 * b * d - 0.5 * a * e) / det2);
    let f_c = f + 0.5 * (d * center.x + e * center.y);
    let (l_major, u, l_minor) = match class {
        ConicClass::Ellipse => {
            if -f_c / l_small <= 0.0 {
                return Err(ConicError::DegenerateConic);
            }
            (l_small, v_small, l_big)
        }
        _ => {
            if -f_c / l_small > 0.0 {
                (l_small, v_small, l_big)
            } else {
                (l_big, v_big, l_small)
            }
        }
    };
    let semi_major = (-f_c / l_major).sqrt();
    let semi_minor = (-f_c / l_minor).abs().sqrt();
    let eccentricity = (1.0 - l_major / l_minor).max(0.0).sqrt();
    let focal_distance = semi_major * eccentricity;
    let mut foci = foci_all;
    if foci.len() != 2 {
        foci = vec![center + u * focal_distance, center - u * focal_distance];
    }
    foci.sort_by(|x, y| (*y - center).dot(u).total_cmp(&(*x - center).dot(u)));
    let directrices = if eccentricity > 1e-12 {
        foci.iter().map(|&fp| q.polar_line(fp)).collect::<Result<Vec<_>, _>>()?
    } else {
        vec![]
    };
    Ok(ConicFeatures {
        class,
        center: Some(center),
        major_axis: Line::through_point_with_direction(center, u)?,
        minor_axis: Some(Line::through_point_with_normal(center, u)?),
        foci,
        vertices: vec![center + u * semi_major, center - u * semi_major],
        directrices,
        eccentricity,
        semi_major: Some(semi_major),
        semi_minor: Some(semi_minor),
        focal_distance,
    })
}

/// Central conic `(u·d)²/α + (v·d)²/β = 1`, `d = X − center`, `v = u⊥`.
fn central_conic(center: Point, u: Point, alpha: f64, beta: f64) -> Result<GeneralConic, ConicError> {
    let (ux, uy) = (u.x, u.y);
    let a = ux * ux / alpha + uy * uy / beta;
    let b = 2.0 * ux * uy * (1.0 / alpha - 1.0 / beta);
    let c = uy * uy / alpha + ux * ux / beta;
    let (cx, cy) = (center.x, center.y);
    GeneralConic::new([
        a,
        b,
        c,
        -2.0 * a * cx - b * cy,
        -b * cx - 2.0 * c * cy,
        a * cx * cx + b * cx * cy + c * cy * cy - 1.0,
    ])
}

/// Ellipse with the given center, one focus at `focus` and semi-major `a`.
pub fn ellipse_from_center_focus_semimajor(center: Point, focus: Point, a: f64) -> Result<GeneralConic, ConicError> {
    let c = center.distance(focus);
    if !(a > 0.0) || c >= a {
        return Err(ConicError::FocusTooFar);
    }
    let u = (focus - center).unit().unwrap_or(Point::new(1.0, 0.0));
    central_conic(center, u, a * a, a * a - c * c)
}

/// Hyperbola with the given center, one focus at `focus` and semi-transverse
/// axis `a`.
pub fn hyperbola_from_center_focus_semitransverse(
    center: Point,
    focus: Point,
    a: f64,
) -> Result<GeneralConic, ConicError> {
    let c = center.distance(focus);
    if !(a > 0.0) || c <= a {
        return Err(ConicError::FocusTooClose);
    }
    let u = (focus - center).unit().expect("c > a > 0");
    central_conic(center, u, a * a, -(c * c - a * a))
}

/// Locus `|XF| = e · dist(X, directrix)`.
pub fn conic_from_focus_directrix_ecc(focus: Point, directrix: &Line, e: f64) -> Result<GeneralConic, ConicError> {
    if !(e > 0.0) || !e.is_finite() {
        return Err(ConicError::InvalidEccentricity(e));
    }
    let p = directrix.offset();
    if directrix.distance(focus) < 1e-12 * p.abs().max(focus.norm()).max(1.0) {
        return Err(ConicError::FocusOnDirectrix);
    }
    let n = directrix.normal();
    let e2 = e * e;
    GeneralConic::new([
        1.0 - e2 * n.x * n.x,
        -2.0 * e2 * n.x * n.y,
        1.0 - e2 * n.y * n.y,
        -2.0 * focus.x + 2.0 * e2 * p * n.x,
        -2.0 * focus.y + 2.0 * e2 * p * n.y,
        focus.norm_sq() - e2 * p * p,
    ])
}

/// Fit the conic through five points as the null vector of the 5×6
/// incidence matrix.
///
/// Points are centered and scaled to their bounding box before building the
/// monomial matrix; the null vector comes from an SVD, and the ratio of the
/// fifth singular value to the first decides whether the points determine a
/// unique conic. Line pairs are rejected.
pub fn conic_from_five_points(pts: &[Point; 5]) -> Result<GeneralConic, ConicError> {
    let q = conic_from_five_points_allow_degenerate(pts)?;
    if q.is_degenerate() {
        return Err(ConicError::DegenerateConic);
    }
    Ok(q)
}

/// As [`conic_from_five_points`], but a line pair is an acceptable answer.
pub fn conic_from_five_points_allow_degenerate(pts: &[Point; 5]) -> Result<GeneralConic, ConicError> {
    if pts.iter().any(|p| !p.is_finite()) {
        return Err(ConicError::NonFinite);
    }
    let (mut lo, mut hi) = (pts[0], pts[0]);
    for p in pts {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let mid = lo.midpoint(hi);
    let scale = 0.5 * (hi.x - lo.x).max(hi.y - lo.y);
    if scale <= 0.0 {
        return Err(ConicError::DegenerateConfiguration);
    }
    for i in 0..5 {
        for j in i + 1..5 {
            if pts[i].distance(pts[j]) <= 1e-12 * scale {
                return Err(ConicError::DegenerateConfiguration);
            }
        }
    }
    let mut m = SMatrix::<f64, 6, 6>::zeros();
    for (row, p) in pts.iter().enumerate() {
        let (u, v) = ((p.x - mid.x) / scale, (p.y - mid.y) / scale);
        let monomials = [u * u, u * v, v * v, u, v, 1.0];
        for (col, val) in monomials.iter().enumerate() {
            m[(row, col)] = *val;
        }
    }
    let svd = m.svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let mut order: Vec<usize> = (0..6).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let sigma_max = svd.singular_values[order[0]];
    if svd.singular_values[order[4]] <= 1e-10 * sigma_max {
        return Err(ConicError::DegenerateConfiguration);
    }
    let null = v_t.row(order[5]);
    let q_unit = GeneralConic::new([null[0], null[1], null[2], null[3], null[4], null[5]])?;
    // u = (x − mid)/scale  ⇒  Q_x = Tᵀ Q_u T
    let t = Matrix3::new(
        1.0 / scale,
        0.0,
        -mid.x / scale,
        0.0,
        1.0 / scale,
        -mid.y / scale,
        0.0,
        0.0,
        1.0,
    );
    GeneralConic::from_matrix(&(t.transpose() * q_unit.matrix() * t))
}

/// Offsets `p` of the tangent lines `n·X = p` with unit normal `n`, from
/// `ℓᵀ Q* ℓ = 0` with `ℓ = (n, −p)`.
fn tangent_offsets(q: &GeneralConic, n: Point) -> Vec<f64> {
    let d = q.dual_matrix();
    let alpha = d[(2, 2)];
    let half_beta = -(n.x * d[(0, 2)] + n.y * d[(1, 2)]);
    let gamma = n.x * n.x * d[(0, 0)] + 2.0 * n.x * n.y * d[(0, 1)] + n.y * n.y * d[(1, 1)];
    let disc = half_beta * half_beta - alpha * gamma;
    if disc < 0.0 {
        return vec![];
    }
    let qq = -(half_beta + half_beta.signum() * disc.sqrt());
    let mut out = Vec::with_capacity(2);
    if qq != 0.0 {
        out.push(gamma / qq);
    }
    if alpha != 0.0 {
        out.push(qq / alpha);
    }
    out.retain(|p| p.is_finite());
    out
}

/// Distance the line must be shifted along its normal to become tangent to
/// the conic; infinite when no tangent has that direction.
pub fn tangency_offset(q: &GeneralConic, line: &Line) -> f64 {
    tangent_offsets(q, line.normal())
        .into_iter()
        .map(|p| (p - line.offset()).abs())
        .fold(f64::INFINITY, f64::min)
}

#[derive(Debug, Clone, PartialEq)]
pub enum LineConicRelation {
    /// Crossing points: two, or one when the line is parallel to an
    /// asymptote or to the axis of a parabola.
    Secant(Vec<Point>),
    Tangent(Point),
    Disjoint,
}

/// Relation of a line to a conic; tangency is decided by
/// [`tangency_offset`] `< tol`.
pub fn line_conic_tangency(q: &GeneralConic, line: &Line, tol: f64) -> LineConicRelation {
    let (p0, dir) = (line.anchor(), line.direction());
    let [a, b, c, d, e, _] = q.coeffs();
    let a2 = a * dir.x * dir.x + b * dir.x * dir.y + c * dir.y * dir.y;
    let a1 =
        2.0 * a * p0.x * dir.x + b * (p0.x * dir.y + p0.y * dir.x) + 2.0 * c * p0.y * dir.y + d * dir.x + e * dir.y;
    let a0 = q.eval(p0);
    let scale = a1.abs().max(a0.abs()).max(1e-300);
    if tangency_offset(q, line) < tol && a2.abs() > 1e-14 * scale {
        return LineConicRelation::Tangent(p0 + dir * (-a1 / (2.0 * a2)));
    }
    if a2.abs() <= 1e-14 * scale {
        if a1.abs() <= 1e-14 * scale {
            return LineConicRelation::Disjoint;
        }
        return LineConicRelation::Secant(vec![p0 + dir * (-a0 / a1)]);
    }
    let disc = a1 * a1 - 4.0 * a2 * a0;
    if disc < 0.0 {
        return LineConicRelation::Disjoint;
    }
    let qq = -0.5 * (a1 + a1.signum() * disc.sqrt());
    let (s1, s2) = if qq != 0.0 { (qq / a2, a0 / qq) } else { (0.0, 0.0) };
    let (s1, s2) = if s1 <= s2 { (s1, s2) } else { (s2, s1) };
    LineConicRelation::Secant(vec![p0 + dir * s1, p0 + dir * s2])
}

/// Real roots of `c3 λ³ + c2 λ² + c1 λ + c0`.
fn real_cubic_roots(c3: f64, c2: f64, c1: f64, c0: f64) -> Vec<f64> {
    let scale = c3.abs().max(c2.abs()).max(c1.abs()).max(c0.abs());
    let mut roots = if c3.abs() <= 1e-14 * scale {
        // quadratic or lower
        if c2.abs() <= 1e-14 * scale {
            if c1 != 0.0 {
                vec![-c0 / c1]
            } else {
                vec![]
            }
        } else {
            let disc = c1 * c1 - 4.0 * c2 * c0;
            if disc < 0.0 {
                vec![]
            } else {
                let qq = -0.5 * (c1 + c1.signum() * disc.sqrt());
                let mut r = vec![qq / c2];
                if qq != 0.0 {
                    r.push(c0 / qq);
                }
                r
            }
        }
    } else {
        let (a, b, c) = (c2 / c3, c1 / c3, c0 / c3);
        let p = b - a * a / 3.0;
        let qv = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
        let disc = (qv / 2.0).powi(2) + (p / 3.0).powi(3);
        let shift = -a / 3.0;
        if disc > 0.0 {
            let sq = disc.sqrt();
            vec![(-qv / 2.0 + sq).cbrt() + (-qv / 2.0 - sq).cbrt() + shift]
        } else {
            let r = (-p / 3.0).max(0.0).sqrt();
            let phi = if r == 0.0 {
                0.0
            } else {
                ((-qv / 2.0) / (r * r * r)).clamp(-1.0, 1.0).acos()
            };
            (0..3)
                .map(|k| 2.0 * r * ((phi + 2.0 * std::f64::consts::PI * k as f64) / 3.0).cos() + shift)
                .collect()
        }
    };
    // Newton polish
    for r in roots.iter_mut() {
        for _ in 0..4 {
            let f = ((c3 * *r + c2) * *r + c1) * *r + c0;
            let df = (3.0 * c3 * *r + 2.0 * c2) * *r + c1;
            if df == 0.0 {
                break;
            }
            let step = f / df;
            if !step.is_finite() {
                break;
            }
            *r -= step;
        }
    }
    roots
}

/// Split a rank-≤2 symmetric matrix into two real lines (homogeneous
/// coefficient vectors); `None` for a complex-conjugate pair.
fn split_degenerate(d: &Matrix3<f64>) -> Option<(Vector3<f64>, Vector3<f64>)> {
    let scale = d.abs().max();
    if scale == 0.0 {
        return None;
    }
    let b = adjugate(d);
    let (i, bii) = (0..3)
        .map(|i| (i, b[(i, i)]))
        .max_by(|x, y| x.1.abs().total_cmp(&y.1.abs()))?;
    if bii.abs() <= 1e-20 * scale * scale {
        // double line: D = ± g gᵀ
        let (j, _) = (0..3)
            .map(|j| (j, d[(j, j)]))
            .max_by(|x, y| x.1.abs().total_cmp(&y.1.abs()))?;
        let g = d.row(j).transpose();
        return Some((g, g));
    }
    if bii > 1e-12 * scale * scale {
        return None;
    }
    let beta = (-bii).sqrt();
    let p = b.column(i) / beta;
    let cross = Matrix3::new(0.0, p[2], -p[1], -p[2], 0.0, p[0], p[1], -p[0], 0.0);
    let mut best: Option<(f64, Vector3<f64>, Vector3<f64>)> = None;
    for cand in [d + cross, d - cross] {
        let (mut jk, mut big) = ((0, 0), 0.0);
        for j in 0..3 {
            for k in 0..3 {
                if cand[(j, k)].abs() > big {
                    big = cand[(j, k)].abs();
                    jk = (j, k);
                }
            }
        }
        if big == 0.0 {
            continue;
        }
        let g = cand.row(jk.0).transpose();
        let h = cand.column(jk.1).into_owned();
        let resid = (cand - g * h.transpose() / cand[jk]).abs().max();
        if best.as_ref().is_none_or(|b| resid < b.0) {
            best = Some((resid, g, h));
        }
    }
    best.map(|(_, g, h)| (g, h))
}

fn newton_polish(q1: &GeneralConic, q2: &GeneralConic, mut p: Point) -> Point {
    for _ in 0..8 {
        let (f1, f2) = (q1.eval(p), q2.eval(p));
        let (g1, g2) = (q1.gradient(p), q2.gradient(p));
        let det = g1.cross(g2);
        if det.abs() < 1e-300 {
            break;
        }
        let step = Point::new(f1 * g2.y - f2 * g1.y, g1.x * f2 - g2.x * f1) / det;
        if !step.is_finite() {
            break;
        }
        p = p - step;
        if step.norm() < 1e-17 * (1.0 + p.norm()) {
            break;
        }
    }
    p
}

/// Real intersection points of two conics, via a degenerate member of the
/// pencil `Q₁ + λ Q₂` split into two lines.
pub fn intersect_conics(q1: &GeneralConic, q2: &GeneralConic) -> Vec<Point> {
    let (m1, m2) = (q1.matrix(), q2.matrix());
    let c0 = m1.determinant();
    let c3 = m2.determinant();
    let c1 = (adjugate(&m1) * m2).trace();
    let c2 = (m1 * adjugate(&m2)).trace();
    let mut members: Vec<Matrix3<f64>> = real_cubic_roots(c3, c2, c1, c0)
        .into_iter()
        .map(|l| m1 + m2 * l)
        .collect();
    if c3.abs() < 1e-12 {
        members.push(m2);
    }
    for member in members {
        let Some((g, h)) = split_degenerate(&member) else {
            continue;
        };
        let mut pts: Vec<Point> = Vec::new();
        for l in [g, h] {
            let Ok(line) = Line::new(Point::new(l[0], l[1]), -l[2]) else {
                continue;
            };
            match line_conic_tangency(q1, &line, 0.0) {
                LineConicRelation::Secant(found) => pts.extend(found),
                LineConicRelation::Tangent(p) => pts.push(p),
                LineConicRelation::Disjoint => {}
            }
        }
        let pts: Vec<Point> = pts.into_iter().map(|p| newton_polish(q1, q2, p)).collect();
        let mut uniq: Vec<Point> = Vec::new();
        for p in pts {
            let scale = 1.0 + p.norm();
            if q1.distance_estimate(p) > 1e-8 * scale || q2.distance_estimate(p) > 1e-8 * scale {
                continue;
            }
            if uniq.iter().all(|u| u.distance(p) > 1e-9 * scale) {
                uniq.push(p);
            }
        }
        if !uniq.is_empty() {
            return uniq;
        }
    }
    Vec::new()
}

/// Points along the conic for plotting or sampling, as polylines (one per
/// branch). Unbounded branches are cut where they leave the disc of radius
/// `reach` around the first vertex.
pub fn sample_conic(q: &GeneralConic, n: usize, reach: f64) -> Result<Vec<Vec<Point>>, ConicError> {
    let feat = conic_features(q)?;
    let u = feat.major_axis.direction();
    let v = u.perp();
    let n = n.max(2);
    match feat.class {
        ConicClass::Ellipse => {
            let (c, a, b) = (feat.center.unwrap(), feat.semi_major.unwrap(), feat.semi_minor.unwrap());
            let pts = (0..=n)
                .map(|i| {
                    let t = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                    c + u * (a * t.cos()) + v * (b * t.sin())
                })
                .collect();
            Ok(vec![pts])
        }
        ConicClass::Hyperbola => {
            let (c, a, b) = (feat.center.unwrap(), feat.semi_major.unwrap(), feat.semi_minor.unwrap());
            let t_max = ((reach + c.distance(feat.vertices[0])) / a).max(1.0 + 1e-9).acosh();
            let branch = |sign: f64| {
                (0..=n)
                    .map(|i| {
                        let t = -t_max + 2.0 * t_max * i as f64 / n as f64;
                        c + u * (sign * a * t.cosh()) + v * (b * t.sinh())
                    })
                    .collect::<Vec<_>>()
            };
            Ok(vec![branch(1.0), branch(-1.0)])
        }
        ConicClass::Parabola => {
            let vertex = feat.vertices[0];
            let p = feat.focal_distance;
            let open = (feat.foci[0] - vertex).unit().unwrap_or(u);
            let side = open.perp();
            let w_max = (4.0 * p * reach).sqrt().max(reach.min(10.0 * p));
            let pts = (0..=n)
                .map(|i| {
                    let w = -w_max + 2.0 * w_max * i as f64 / n as f64;
                    vertex + open * (w * w / (4.0 * p)) + side * w
                })
                .collect();
            Ok(vec![pts])
        }
        ConicClass::Degenerate => Err(ConicError::DegenerateConic),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn conic(c: [f64; 6]) -> GeneralConic {
        GeneralConic::new(c).unwrap()
    }

    fn close(p: Point, x: f64, y: f64, tol: f64) -> bool {
        (p.x - x).abs() < tol && (p.y - y).abs() < tol
    }

    fn has_point(list: &[Point], x: f64, y: f64, tol: f64) -> bool {
        list.iter().any(|p| close(*p, x, y, tol))
    }

    #[test]
    fn normalization_is_sign_and_scale_invariant() {
        let a = conic([1.0, 0.0, 1.0, 0.0, 0.0, -1.0]);
        let b = conic([-3.0, 0.0, -3.0, 0.0, 0.0, 3.0]);
        assert!(a.coefficient_distance(&b) < 1e-15);
        assert_eq!(
            GeneralConic::new([0.0, 0.0, 0.0, 1.0, 2.0, 3.0]),
            Err(ConicError::NotQuadratic)
        );
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_conic(&conic([1.0, 0.0, 1.0, 0.0, 0.0, -1.0]), PARABOLA_WINDOW),
            ConicClass::Ellipse
        );
        assert_eq!(
            classify_conic(&conic([0.0, 0.0, 1.0, -1.0, 0.0, 0.0]), PARABOLA_WINDOW),
            ConicClass::Parabola
        );
        assert_eq!(
            classify_conic(&conic([0.0, 1.0, 0.0, 0.0, 0.0, -1.0]), PARABOLA_WINDOW),
            ConicClass::Hyperbola
        );
        // x² − y² = 0 is a line pair
        assert_eq!(
            classify_conic(&conic([1.0, 0.0, -1.0, 0.0, 0.0, 0.0]), PARABOLA_WINDOW),
            ConicClass::Degenerate
        );
        // scaling the plane does not move a conic into the parabola window
        let big = conic([1.0, 0.0, 1.0, 0.0, 0.0, -1e6]);
        assert_eq!(classify_conic(&big, PARABOLA_WINDOW), ConicClass::Ellipse);
        let far = conic([1.0, 0.0, 1.0, -2e4, 0.0, 1e8 - 1e6]);
        assert_eq!(classify_conic(&far, PARABOLA_WINDOW), ConicClass::Ellipse);
    }

    #[test]
    fn five_points_on_unit_circle() {
        let pts: [Point; 5] = std::array::from_fn(|i| Point::from_polar(1.0, i as f64 * 2.0 * PI / 5.0));
        let q = conic_from_five_points(&pts).unwrap();
        let expect = conic([1.0, 0.0, 1.0, 0.0, 0.0, -1.0]);
        assert!(q.coefficient_distance(&expect) < 1e-12);
    }

    #[test]
    fn five_points_on_ellipse() {
        let y = |x: f64| (3.0 * (1.0 - x * x / 4.0)).sqrt();
        let pts = [
            Point::new(2.0, 0.0),
            Point::new(-2.0, 0.0),
            Point::new(0.0, 3.0_f64.sqrt()),
            Point::new(0.0, -(3.0_f64.sqrt())),
            Point::new(1.0, y(1.0)),
        ];
        let q = conic_from_five_points(&pts).unwrap();
        let expect = conic([0.25, 0.0, 1.0 / 3.0, 0.0, 0.0, -1.0]);
        assert!(q.coefficient_distance(&expect) < 1e-12);
        for p in pts {
            assert!(q.eval(p).abs() < 1e-12);
        }
    }

    #[test]
    fn five_point_degeneracies() {
        let collinear4 = [
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(3.0, 0.0),
            Point::new(0.0, 1.0),
        ];
        assert_eq!(
            conic_from_five_points(&collinear4),
            Err(ConicError::DegenerateConfiguration)
        );
        let repeated = [
            Point::new(0.0, 0.0),
            Point::new(0.0, 0.0),
            Point::new(2.0, 1.0),
            Point::new(3.0, 5.0),
            Point::new(0.0, 1.0),
        ];
        assert_eq!(
            conic_from_five_points(&repeated),
            Err(ConicError::DegenerateConfiguration)
        );
        let line_pair = [
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(0.0, 1.0),
            Point::new(1.0, 2.0),
        ];
        assert_eq!(conic_from_five_points(&line_pair), Err(ConicError::DegenerateConic));
        assert!(conic_from_five_points_allow_degenerate(&line_pair).is_ok());
    }

    #[test]
    fn features_of_axis_aligned_ellipse() {
        let q = conic([0.25, 0.0, 1.0 / 3.0, 0.0, 0.0, -1.0]);
        let f = conic_features(&q).unwrap();
        assert_eq!(f.class, ConicClass::Ellipse);
        assert!(has_point(&f.foci, 1.0, 0.0, 1e-12) && has_point(&f.foci, -1.0, 0.0, 1e-12));
        assert_abs_diff_eq!(f.eccentricity, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(f.semi_major.unwrap(), 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(f.semi_minor.unwrap(), 3.0_f64.sqrt(), epsilon = 1e-12);
        let mut offs: Vec<f64> = f.directrices.iter().map(|d| d.offset() * d.normal().x).collect();
        offs.sort_by(f64::total_cmp);
        assert_abs_diff_eq!(offs[0], -4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(offs[1], 4.0, epsilon = 1e-12);
    }

    #[test]
    fn features_of_parabola() {
        // y² = 4x
        let q = conic([0.0, 0.0, 1.0, -4.0, 0.0, 0.0]);
        let f = conic_features(&q).unwrap();
        assert_eq!(f.class, ConicClass::Parabola);
        assert!(close(f.foci[0], 1.0, 0.0, 1e-12));
        assert!(close(f.vertices[0], 0.0, 0.0, 1e-12));
        assert_abs_diff_eq!(f.eccentricity, 1.0);
        let d = f.directrices[0];
        assert!(d.distance(Point::new(-1.0, 5.0)) < 1e-12 && d.distance(Point::new(-1.0, -2.0)) < 1e-12);
    }

    #[test]
    fn features_of_rotated_ellipse() {
        let q = conic([0.25, 0.0, 1.0 / 3.0, 0.0, 0.0, -1.0]).transformed(&RigidMotion::new(PI / 6.0, Point::ORIGIN));
        let f = conic_features(&q).unwrap();
        let (c30, s30) = ((PI / 6.0).cos(), (PI / 6.0).sin());
        assert!(has_point(&f.foci, c30, s30, 1e-12) && has_point(&f.foci, -c30, -s30, 1e-12));
    }

    #[test]
    fn features_of_hyperbola() {
        // x²/4 − y²/5 = 1: c = 3
        let q = conic([0.25, 0.0, -0.2, 0.0, 0.0, -1.0]);
        let f = conic_features(&q).unwrap();
        assert_eq!(f.class, ConicClass::Hyperbola);
        assert!(has_point(&f.foci, 3.0, 0.0, 1e-12) && has_point(&f.foci, -3.0, 0.0, 1e-12));
        assert_abs_diff_eq!(f.eccentricity, 1.5, epsilon = 1e-12);
        assert_abs_diff_eq!(f.semi_major.unwrap(), 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(f.semi_minor.unwrap(), 5.0_f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn focus_directrix_identity_on_samples() {
        let conics = [
            conic([0.25, 0.0, 1.0 / 3.0, 0.0, 0.0, -1.0]),
            conic([0.25, 0.0, -0.2, 0.0, 0.0, -1.0]),
            conic([0.0, 0.0, 1.0, -4.0, 0.0, 0.0]),
            conic([0.3, 0.2, 0.9, -0.4, 0.1, -1.0]),
            conic([0.3, 0.9, -0.2, -0.4, 0.1, -1.0]),
        ];
        for q in conics {
            let f = conic_features(&q).unwrap();
            let (focus, dir) = (f.foci[0], f.directrices[0]);
            let pts: Vec<Point> = sample_conic(&q, 64, 5.0).unwrap().concat();
            assert!(pts.len() >= 64);
            for x in pts {
                let r = x.distance(focus) - f.eccentricity * dir.distance(x);
                assert!(r.abs() < 1e-8 * (1.0 + x.norm()), "{q:?} residual {r} at {x}");
            }
        }
    }

    #[test]
    fn ellipse_from_center_focus_examples() {
        let q = ellipse_from_center_focus_semimajor(Point::ORIGIN, Point::new(0.5, 0.0), 1.0).unwrap();
        assert!(q.coefficient_distance(&conic([1.0, 0.0, 1.0 / 0.75, 0.0, 0.0, -1.0])) < 1e-14);
        let c = ellipse_from_center_focus_semimajor(Point::new(1.0, 2.0), Point::new(1.0, 2.0), 2.0).unwrap();
        assert!(c.coefficient_distance(&conic([1.0, 0.0, 1.0, -2.0, -4.0, 1.0])) < 1e-14);
        assert_eq!(
            ellipse_from_center_focus_semimajor(Point::ORIGIN, Point::new(2.0, 0.0), 1.0),
            Err(ConicError::FocusTooFar)
        );
        // sum of focal distances
        let q = ellipse_from_center_focus_semimajor(Point::new(0.3, -0.2), Point::new(0.7, 0.1), 1.4).unwrap();
        let other = Point::new(0.3, -0.2) * 2.0 - Point::new(0.7, 0.1);
        for x in sample_conic(&q, 32, 1.0).unwrap().concat() {
            assert_abs_diff_eq!(
                x.distance(Point::new(0.7, 0.1)) + x.distance(other),
                2.8,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn focus_directrix_examples() {
        let x_eq = |c: f64| Line::new(Point::new(1.0, 0.0), c).unwrap();
        // Directrix at distance 4 from the focus: center (−4/3, 0), a = 8/3.
        let q = conic_from_focus_directrix_ecc(Point::ORIGIN, &x_eq(4.0), 0.5).unwrap();
        let f = conic_features(&q).unwrap();
        assert_eq!(f.class, ConicClass::Ellipse);
        assert!(has_point(&f.foci, 0.0, 0.0, 1e-12) && has_point(&f.foci, -8.0 / 3.0, 0.0, 1e-12));
        // x²/4 + y²/3 = 1 from its right focus and directrix
        let q = conic_from_focus_directrix_ecc(Point::new(1.0, 0.0), &x_eq(4.0), 0.5).unwrap();
        assert!(q.coefficient_distance(&conic([0.25, 0.0, 1.0 / 3.0, 0.0, 0.0, -1.0])) < 1e-14);
        let q = conic_from_focus_directrix_ecc(Point::new(1.0, 0.0), &x_eq(-1.0), 1.0).unwrap();
        assert!(q.coefficient_distance(&conic([0.0, 0.0, 1.0, -4.0, 0.0, 0.0])) < 1e-14);
        assert_eq!(classify_conic(&q, PARABOLA_WINDOW), ConicClass::Parabola);
        let q = conic_from_focus_directrix_ecc(Point::ORIGIN, &x_eq(0.5), 2.0).unwrap();
        assert_eq!(classify_conic(&q, PARABOLA_WINDOW), ConicClass::Hyperbola);
        assert!(q.eval(Point::new(1.0, 0.0)).abs() < 1e-14);
        assert!(q.eval(Point::new(1.0 / 3.0, 0.0)).abs() < 1e-14);
        assert_eq!(
            conic_from_focus_directrix_ecc(Point::new(4.0, 1.0), &x_eq(4.0), 0.5),
            Err(ConicError::FocusOnDirectrix)
        );
    }

    #[test]
    fn line_tangency_examples() {
        let unit = conic([1.0, 0.0, 1.0, 0.0, 0.0, -1.0]);
        let y_eq = |c: f64| Line::new(Point::new(0.0, 1.0), c).unwrap();
        match line_conic_tangency(&unit, &y_eq(1.0), 1e-9) {
            LineConicRelation::Tangent(p) => assert!(close(p, 0.0, 1.0, 1e-12)),
            other => panic!("{other:?}"),
        }
        match line_conic_tangency(&unit, &y_eq(0.0), 1e-9) {
            LineConicRelation::Secant(p) => {
                assert_eq!(p.len(), 2);
                assert!(has_point(&p, 1.0, 0.0, 1e-12) && has_point(&p, -1.0, 0.0, 1e-12));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            line_conic_tangency(&unit, &y_eq(2.0), 1e-9),
            LineConicRelation::Disjoint
        );
        assert_abs_diff_eq!(tangency_offset(&unit, &y_eq(0.25)), 0.75, epsilon = 1e-14);
    }

    #[test]
    fn conic_intersections() {
        let a = conic([0.25, 0.0, 1.0, 0.0, 0.0, -1.0]);
        let b = conic([1.0, 0.0, 0.25, 0.0, 0.0, -1.0]);
        let pts = intersect_conics(&a, &b);
        let s = (0.8_f64).sqrt();
        assert_eq!(pts.len(), 4);
        for (x, y) in [(s, s), (-s, s), (s, -s), (-s, -s)] {
            assert!(has_point(&pts, x, y, 1e-12));
        }
        // circle and a shifted circle: two real points
        let c1 = conic([1.0, 0.0, 1.0, 0.0, 0.0, -1.0]);
        let c2 = conic([1.0, 0.0, 1.0, -2.0, 0.0, 0.0]);
        let pts = intersect_conics(&c1, &c2);
        assert_eq!(pts.len(), 2);
        assert!(has_point(&pts, 0.5, 0.75_f64.sqrt(), 1e-12));
        // disjoint
        let far = conic([1.0, 0.0, 1.0, -10.0, 0.0, 24.0]);
        assert!(intersect_conics(&c1, &far).is_empty());
    }

    #[test]
    fn cubic_roots() {
        let mut r = real_cubic_roots(1.0, -6.0, 11.0, -6.0);
        r.sort_by(f64::total_cmp);
        for (got, want) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
        assert_eq!(real_cubic_roots(1.0, 0.0, 1.0, 0.0).len(), 1);
    }
}
