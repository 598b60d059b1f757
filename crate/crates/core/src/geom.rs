//! Planar primitives: points, normalized lines, circles, circumcenters,
//! reflections, and the canonical triangle frame.
//!
//! All pencil computations run in the canonical frame where `B = (0, 0)`,
//! `C = (1, 0)` and the apex `A` lies strictly above the x-axis.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

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

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn midpoint(self, other: Point) -> Point {
        Point::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }

    /// Counter-clockwise quarter turn.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn approx_eq(self, other: Point, eps: f64) -> bool {
        (self.x - other.x).abs() <= eps && (self.y - other.y).abs() <= eps
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// The line `a·x + b·y + c = 0` with `a² + b² = 1`.
///
/// The sign is fixed so that the first of `(a, b)` that is not negligible is
/// positive; two forms describe the same line iff their coefficients agree.
/// With a unit normal, [`LineForm::eval`] is the signed distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineForm {
    a: f64,
    b: f64,
    c: f64,
}

impl LineForm {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::NonFinite);
        }
        let n = a.hypot(b);
        if n == 0.0 {
            return Err(Error::CoincidentPoints);
        }
        let (mut a, mut b, mut c) = (a / n, b / n, c / n);
        let pivot = if a.abs() > tol::SIGN_PIVOT { a } else { b };
        if pivot < 0.0 {
            a = -a;
            b = -b;
            c = -c;
        }
        Ok(Self { a, b, c })
    }

    pub fn through(p: Point, q: Point) -> Result<Self> {
        let d = q - p;
        if d.norm() == 0.0 {
            return Err(Error::CoincidentPoints);
        }
        let n = d.perp();
        Self::new(n.x, n.y, -n.dot(p))
    }

    /// Line through `p` with the given direction.
    pub fn through_with_direction(p: Point, dir: Point) -> Result<Self> {
        Self::through(p, p + dir)
    }

    /// The x-axis, i.e. line BC in the canonical frame.
    pub fn x_axis() -> Self {
        Self { a: 0.0, b: 1.0, c: 0.0 }
    }

    pub fn vertical(x: f64) -> Self {
        Self { a: 1.0, b: 0.0, c: -x }
    }

    pub fn coefficients(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Signed distance of `p` from the line.
    pub fn eval(&self, p: Point) -> f64 {
        self.a * p.x + self.b * p.y + self.c
    }

    pub fn normal(&self) -> Point {
        Point::new(self.a, self.b)
    }

    pub fn direction(&self) -> Point {
        Point::new(-self.b, self.a)
    }

    /// Foot of the perpendicular from `p`.
    pub fn project(&self, p: Point) -> Point {
        p - self.normal() * self.eval(p)
    }

    pub fn reflect(&self, p: Point) -> Point {
        p - self.normal() * (2.0 * self.eval(p))
    }

    /// Intersection point, or `None` for (nearly) parallel lines.
    pub fn intersect(&self, other: &LineForm) -> Option<Point> {
        let det = self.a * other.b - self.b * other.a;
        if det.abs() <= tol::PARALLEL {
            return None;
        }
        let x = (self.b * other.c - self.c * other.b) / det;
        let y = (self.c * other.a - self.a * other.c) / det;
        Some(Point::new(x, y))
    }

    pub fn max_coeff_diff(&self, other: &LineForm) -> f64 {
        (self.a - other.a).abs().max((self.b - other.b).abs()).max((self.c - other.c).abs())
    }
}

impl fmt::Display for LineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x + {}y + {} = 0", self.a, self.b, self.c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Self {
        debug_assert!(radius >= 0.0);
        Self { center, radius }
    }

    pub fn contains(&self, p: Point) -> bool {
        self.center.dist(p) < self.radius
    }
}

/// Similarity `p ↦ M·p + t` of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Similarity {
    m: [[f64; 2]; 2],
    t: Point,
}

impl Similarity {
    pub fn identity() -> Self {
        Self { m: [[1.0, 0.0], [0.0, 1.0]], t: Point::ORIGIN }
    }

    pub fn apply(&self, p: Point) -> Point {
        let [[m00, m01], [m10, m11]] = self.m;
        Point::new(m00 * p.x + m01 * p.y + self.t.x, m10 * p.x + m11 * p.y + self.t.y)
    }

    pub fn inverse(&self) -> Self {
        let [[m00, m01], [m10, m11]] = self.m;
        let det = m00 * m11 - m01 * m10;
        let inv = [[m11 / det, -m01 / det], [-m10 / det, m00 / det]];
        let t =
            Point::new(-(inv[0][0] * self.t.x + inv[0][1] * self.t.y), -(inv[1][0] * self.t.x + inv[1][1] * self.t.y));
        Self { m: inv, t }
    }

    /// Linear scale factor.
    pub fn scale(&self) -> f64 {
        let [[m00, m01], [m10, m11]] = self.m;
        (m00 * m11 - m01 * m10).abs().sqrt()
    }
}

/// A triangle normalized to `B = (0,0)`, `C = (1,0)`, `A` above the x-axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleFrame {
    a: Point,
    b_len: f64,
    c_len: f64,
    to_canonical: Similarity,
    from_canonical: Similarity,
}

impl TriangleFrame {
    /// Frame for an apex already given in canonical coordinates.
    pub fn from_apex(x_a: f64, y_a: f64) -> Result<Self> {
        canonical_frame(Point::new(x_a, y_a), Point::ORIGIN, Point::new(1.0, 0.0))
    }

    /// Canonical apex `A`.
    pub fn a(&self) -> Point {
        self.a
    }

    pub fn b(&self) -> Point {
        Point::ORIGIN
    }

    pub fn c(&self) -> Point {
        Point::new(1.0, 0.0)
    }

    /// |AC| in canonical units.
    pub fn b_len(&self) -> f64 {
        self.b_len
    }

    /// |AB| in canonical units.
    pub fn c_len(&self) -> f64 {
        self.c_len
    }

    /// `ln(c / b)`, the base of every exponent in the foot maps.
    pub fn log_ratio(&self) -> f64 {
        (self.c_len / self.b_len).ln()
    }

    pub fn is_isosceles(&self) -> bool {
        (self.b_len - self.c_len).abs() <= tol::ISOSCELES
    }

    pub fn to_canonical(&self) -> &Similarity {
        &self.to_canonical
    }

    pub fn from_canonical(&self) -> &Similarity {
        &self.from_canonical
    }
}

fn max_pairwise_sq(p: Point, q: Point, r: Point) -> f64 {
    (p - q).norm_sq().max((q - r).norm_sq()).max((r - p).norm_sq())
}

fn check_nondegenerate(p: Point, q: Point, r: Point) -> Result<()> {
    if !(p.is_finite() && q.is_finite() && r.is_finite()) {
        return Err(Error::NonFinite);
    }
    let scale = max_pairwise_sq(p, q, r);
    let area = 0.5 * (q - p).cross(r - p);
    if scale == 0.0 || area.abs() < tol::COLLINEAR_REL * scale {
        return Err(Error::DegenerateTriangle);
    }
    Ok(())
}

/// Builds the similarity taking `B → (0,0)`, `C → (1,0)` and `A` above the axis.
pub fn canonical_frame(a_raw: Point, b_raw: Point, c_raw: Point) -> Result<TriangleFrame> {
    check_nondegenerate(a_raw, b_raw, c_raw)?;
    let d = c_raw - b_raw;
    let s2 = d.norm_sq();
    // Rotation by -angle(d) combined with scale 1/|d|.
    let mut m = [[d.x / s2, d.y / s2], [-d.y / s2, d.x / s2]];
    let rel = a_raw - b_raw;
    if m[1][0] * rel.x + m[1][1] * rel.y < 0.0 {
        m[1][0] = -m[1][0];
        m[1][1] = -m[1][1];
    }
    let t = Point::new(-(m[0][0] * b_raw.x + m[0][1] * b_raw.y), -(m[1][0] * b_raw.x + m[1][1] * b_raw.y));
    let to_canonical = Similarity { m, t };
    let from_canonical = to_canonical.inverse();
    // Apex from the relative vector keeps the translation out of the rounding.
    let a = Point::new(m[0][0] * rel.x + m[0][1] * rel.y, m[1][0] * rel.x + m[1][1] * rel.y);
    let b_len = (a - Point::new(1.0, 0.0)).norm();
    let c_len = a.norm();
    Ok(TriangleFrame { a, b_len, c_len, to_canonical, from_canonical })
}

/// Center of the circle through three points.
pub fn circumcenter(p1: Point, p2: Point, p3: Point) -> Result<Point> {
    check_nondegenerate(p1, p2, p3)?;
    let u = p2 - p1;
    let v = p3 - p1;
    let d = 2.0 * u.cross(v);
    let (uu, vv) = (u.norm_sq(), v.norm_sq());
    let ox = (v.y * uu - u.y * vv) / d;
    let oy = (u.x * vv - v.x * uu) / d;
    Ok(p1 + Point::new(ox, oy))
}

pub fn perpendicular_bisector(p1: Point, p2: Point) -> Result<LineForm> {
    let n = p2 - p1;
    if n.norm() == 0.0 {
        return Err(Error::CoincidentPoints);
    }
    LineForm::new(n.x, n.y, -n.dot(p1.midpoint(p2)))
}

/// Intersections sorted by `(x, y)`; a tangent line yields one point.
pub fn circle_line_intersections(k: &Circle, l: &LineForm) -> Vec<Point> {
    let d = l.eval(k.center);
    let foot = l.project(k.center);
    let band = tol::BOUNDARY * k.radius.max(1.0);
    let gap = d.abs() - k.radius;
    if gap > band {
        return Vec::new();
    }
    if gap.abs() <= band {
        return vec![foot];
    }
    let h = ((k.radius - d.abs()) * (k.radius + d.abs())).sqrt();
    let dir = l.direction();
    let mut pts = vec![foot - dir * h, foot + dir * h];
    pts.sort_by(|p, q| p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y)));
    pts
}

pub fn reflect_point_over_point(p: Point, center: Point) -> Point {
    center * 2.0 - p
}

/// Mirror image of `l` in `mirror`; parallel mirrors are handled as well.
pub fn reflect_line_over_line(l: &LineForm, mirror: &LineForm) -> LineForm {
    let p = l.project(Point::ORIGIN);
    let q = p + l.direction();
    LineForm::through(mirror.reflect(p), mirror.reflect(q)).expect("reflection is an isometry, images stay distinct")
}

#[cfg(test)]
mod tests {
    use super::*;

    const EPS: f64 = 1e-12;

    #[test]
    fn canonical_identity_frame() {
        let f = canonical_frame(Point::new(0.3, 0.8), Point::ORIGIN, Point::new(1.0, 0.0)).unwrap();
        assert!(f.a().approx_eq(Point::new(0.3, 0.8), EPS));
        assert!((f.b_len() - 1.13f64.sqrt()).abs() < EPS);
        assert!((f.c_len() - 0.73f64.sqrt()).abs() < EPS);
        let p = Point::new(-3.0, 7.5);
        assert!(f.to_canonical().apply(p).approx_eq(p, EPS));
    }

    #[test]
    fn canonical_reflects_apex_below_axis() {
        let f = canonical_frame(Point::new(0.3, -0.8), Point::ORIGIN, Point::new(1.0, 0.0)).unwrap();
        assert!(f.a().approx_eq(Point::new(0.3, 0.8), EPS));
    }

    #[test]
    fn canonical_general_position() {
        let (a, b, c) = (Point::new(4.0, 5.0), Point::new(2.0, -1.0), Point::new(-3.0, 1.0));
        let f = canonical_frame(a, b, c).unwrap();
        let t = f.to_canonical();
        assert!(t.apply(b).approx_eq(Point::ORIGIN, EPS));
        assert!(t.apply(c).approx_eq(Point::new(1.0, 0.0), EPS));
        assert!(t.apply(a).approx_eq(f.a(), EPS));
        assert!(f.a().y > 0.0);
        let bc = b.dist(c);
        assert!((f.c_len() - a.dist(b) / bc).abs() < EPS);
        assert!((f.b_len() - a.dist(c) / bc).abs() < EPS);
    }

    #[test]
    fn canonical_rejects_degenerate() {
        let o = Point::ORIGIN;
        assert_eq!(canonical_frame(o, o, Point::new(1.0, 0.0)), Err(Error::DegenerateTriangle));
        assert_eq!(canonical_frame(Point::new(2.0, 0.0), o, Point::new(1.0, 0.0)), Err(Error::DegenerateTriangle));
        assert_eq!(canonical_frame(Point::new(f64::NAN, 0.0), o, Point::new(1.0, 0.0)), Err(Error::NonFinite));
    }

    #[test]
    fn circumcenter_examples() {
        let o = circumcenter(Point::new(0.0, 1.0), Point::ORIGIN, Point::new(1.0, 0.0)).unwrap();
        assert!(o.approx_eq(Point::new(0.5, 0.5), EPS));
        let o = circumcenter(Point::new(0.3, 0.8), Point::ORIGIN, Point::new(1.0, 0.0)).unwrap();
        assert!(o.approx_eq(Point::new(0.5, 0.26875), EPS));
        assert_eq!(
            circumcenter(Point::ORIGIN, Point::new(1.0, 0.0), Point::new(2.0, 0.0)),
            Err(Error::DegenerateTriangle)
        );
    }

    #[test]
    fn bisector_examples() {
        let l = perpendicular_bisector(Point::ORIGIN, Point::new(1.0, 0.0)).unwrap();
        assert_eq!(l.coefficients(), [1.0, 0.0, -0.5]);

        let l = perpendicular_bisector(Point::ORIGIN, Point::new(0.3, 0.8)).unwrap();
        assert!(l.eval(Point::new(0.15, 0.4)).abs() < EPS);
        let dir = l.direction();
        assert!((dir.y / dir.x + 0.375).abs() < EPS);

        let p = Point::new(1.0, 1.0);
        assert_eq!(perpendicular_bisector(p, p), Err(Error::CoincidentPoints));
    }

    #[test]
    fn line_normalization_makes_equal_lines_equal() {
        let l1 = LineForm::new(2.0, -4.0, 6.0).unwrap();
        let l2 = LineForm::new(-1.0, 2.0, -3.0).unwrap();
        assert!(l1.max_coeff_diff(&l2) < EPS);
        assert!(l1.a() > 0.0);
        let h = LineForm::new(0.0, -3.0, 3.0).unwrap();
        assert_eq!(h.coefficients(), [0.0, 1.0, -1.0]);
    }

    #[test]
    fn circle_line_examples() {
        let unit = Circle::new(Point::ORIGIN, 1.0);
        let hits = circle_line_intersections(&unit, &LineForm::x_axis());
        assert_eq!(hits.len(), 2);
        assert!(hits[0].approx_eq(Point::new(-1.0, 0.0), EPS));
        assert!(hits[1].approx_eq(Point::new(1.0, 0.0), EPS));

        let y1 = LineForm::new(0.0, 1.0, -1.0).unwrap();
        let hits = circle_line_intersections(&unit, &y1);
        assert_eq!(hits.len(), 1);
        assert!(hits[0].approx_eq(Point::new(0.0, 1.0), EPS));

        let y2 = LineForm::new(0.0, 1.0, -2.0).unwrap();
        assert!(circle_line_intersections(&unit, &y2).is_empty());
    }

    #[test]
    fn reflection_examples() {
        let r = reflect_point_over_point(Point::new(0.2, 0.0), Point::new(0.5, 0.0));
        assert!(r.approx_eq(Point::new(0.8, 0.0), EPS));

        let diag = LineForm::new(1.0, -1.0, 0.0).unwrap();
        let r = reflect_line_over_line(&LineForm::x_axis(), &diag);
        assert!(r.max_coeff_diff(&LineForm::vertical(0.0)) < EPS);

        let r = reflect_point_over_point(Point::new(0.44560, 0.0), Point::new(0.5, 0.0));
        assert!(r.approx_eq(Point::new(0.55440, 0.0), EPS));
    }

    #[test]
    fn parallel_mirror_reflection() {
        let l = LineForm::new(0.0, 1.0, -1.0).unwrap();
        let mirror = LineForm::new(0.0, 1.0, -3.0).unwrap();
        let r = reflect_line_over_line(&l, &mirror);
        assert!(r.max_coeff_diff(&LineForm::new(0.0, 1.0, -5.0).unwrap()) < EPS);
    }
}
