//! The double-contact pencil traced by apex circumcenters.
//!
//! For a non-isosceles triangle, the circumcenters of `A, M(k), M(k+t)` for a
//! fixed span `t` sweep a conic tangent to the perpendicular bisector of AB
//! at `Z` (on the vertical through B) and to the perpendicular bisector of
//! AC at `V` (on the vertical through C). All those conics, and every other
//! conic with that double contact, form one pencil
//!
//! ```text
//! λ·L² + P·Q = 0
//! ```
//!
//! where `P`, `Q` are the two bisectors and `L` is the chord `ZV`. The
//! parameter `λ` of a point identifies its member and serves as an oracle
//! independent of the span-based constructions.

mod decision;
mod region;
mod span;

pub use decision::{Decision, DecisionCase, SameConicReport};
pub use region::{CutHit, CutReport, RegionLabel};
pub use span::{SpanFamily, SpanResult};

use serde::{Deserialize, Serialize};

use crate::cevian::{m_point, m_prime_point};
use crate::conic::{line_product, Conic};
use crate::error::{Error, Result};
use crate::geom::{circumcenter, perpendicular_bisector, LineForm, Point, TriangleFrame};
use crate::tol;

/// Which pair of feet a circumcenter is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CircumcenterFamily {
    /// `A, M(k), M(k+t)`.
    Internal,
    /// `A, M'(k), M'(k+t)`.
    External,
    /// `A, M'(k), M(k+t)`.
    Mixed,
}

/// Circumcenter of the apex and two feet `k` and `k + t` of the given family.
///
/// For `t = 0` in the internal or external family the two feet coincide and
/// the result is the center of the circle through `A` tangent to BC there.
pub fn family_circumcenter(frame: &TriangleFrame, family: CircumcenterFamily, k: f64, t: f64) -> Result<Point> {
    let (p, q) = match family {
        CircumcenterFamily::Internal => (m_point(frame, k)?, m_point(frame, k + t)?),
        CircumcenterFamily::External => (m_prime_point(frame, k)?, m_prime_point(frame, k + t)?),
        CircumcenterFamily::Mixed => (m_prime_point(frame, k)?, m_point(frame, k + t)?),
    };
    Ok(apex_circle_center(frame, p.location.x, q.location.x))
}

/// Center of the circle through the apex and `(m, 0)`, `(n, 0)`.
///
/// The center sits above the midpoint of the two feet, and equating its
/// distances to `A` and to `(m, 0)` gives
/// `y = ((m − x_A)(n − x_A) + y_A²) / (2 y_A)`, which stays accurate when the
/// feet are close or far away.
pub fn apex_circle_center(frame: &TriangleFrame, m: f64, n: f64) -> Point {
    let a = frame.a();
    Point::new(0.5 * (m + n), ((m - a.x) * (n - a.x) + a.y * a.y) / (2.0 * a.y))
}

/// Center of the circle through the apex touching BC at `(x, 0)`; it lies on
/// the parabola with focus `A` and directrix BC.
pub fn tangent_circle_center(frame: &TriangleFrame, x: f64) -> Point {
    apex_circle_center(frame, x, x)
}

/// `tanh(t·ln(b/c)/2) = (b^t − c^t)/(b^t + c^t)`, squared.
fn span_weight(frame: &TriangleFrame, t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::ExponentOutOfRange(t));
    }
    let delta = (-0.5 * t * frame.log_ratio()).tanh();
    Ok(delta * delta)
}

fn require_scalene(frame: &TriangleFrame) -> Result<()> {
    if frame.is_isosceles() {
        Err(Error::IsoscelesExcluded)
    } else {
        Ok(())
    }
}

/// Coefficients of the circumcenter conic with `p = b^t`, `l = c^t`, divided
/// through by `(p + l)²`. `w` is the weight carried by the `(p − l)²` terms
/// and `u` the weight of the `(p + l)²` terms.
fn closed_form(frame: &TriangleFrame, w: f64, u: f64) -> [f64; 6] {
    let Point { x: xa, y: ya } = frame.a();
    let c2 = xa * xa + ya * ya;
    let g = 2.0 * xa - 1.0;
    [
        w * g * g - u,
        w * ya * (8.0 * xa - 4.0),
        4.0 * ya * ya * w,
        -2.0 * c2 * w * g + 2.0 * xa * u,
        -2.0 * ya * (2.0 * c2 * w - u),
        c2 * (c2 * w - u),
    ]
}

/// Conic through the circumcenters of `A, M(k), M(k+t)` (and of
/// `A, M'(k), M'(k+t)`) for every `k`. At `t = 0` this is the parabola with
/// focus `A` and directrix BC.
pub fn conic_same_side(frame: &TriangleFrame, t: f64) -> Result<Conic> {
    require_scalene(frame)?;
    let s = span_weight(frame, t)?;
    Conic::new(closed_form(frame, s, 1.0))
}

/// Conic through the circumcenters of `A, M'(k), M(k+t)`; the same-side form
/// with `c^t` negated.
pub fn conic_mixed(frame: &TriangleFrame, t: f64) -> Result<Conic> {
    if t == 0.0 {
        return Err(Error::ZeroSpanMixed);
    }
    require_scalene(frame)?;
    let s = span_weight(frame, t)?;
    Conic::new(closed_form(frame, 1.0, s))
}

/// The pencil of a scalene triangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pencil {
    frame: TriangleFrame,
    z: Point,
    v: Point,
    side_p: LineForm,
    side_q: LineForm,
    vertex: Point,
    parabola: Conic,
    critical_line: LineForm,
}

impl Pencil {
    pub fn new(frame: &TriangleFrame) -> Result<Self> {
        require_scalene(frame)?;
        let a = frame.a();
        let z = Point::new(0.0, a.norm_sq() / (2.0 * a.y));
        let v = Point::new(1.0, (a - frame.c()).norm_sq() / (2.0 * a.y));
        let side_p = perpendicular_bisector(frame.b(), a)?;
        let side_q = perpendicular_bisector(a, frame.c())?;
        let vertex = circumcenter(a, frame.b(), frame.c())?;
        let parabola = Conic::new([1.0, 0.0, 0.0, -2.0 * a.x, -2.0 * a.y, a.norm_sq()])?;
        let critical_line = LineForm::through(z, v)?;
        Ok(Self { frame: *frame, z, v, side_p, side_q, vertex, parabola, critical_line })
    }

    pub fn frame(&self) -> &TriangleFrame {
        &self.frame
    }

    /// Contact point on the perpendicular bisector of AB.
    pub fn z(&self) -> Point {
        self.z
    }

    /// Contact point on the perpendicular bisector of AC.
    pub fn v(&self) -> Point {
        self.v
    }

    pub fn side_p(&self) -> &LineForm {
        &self.side_p
    }

    pub fn side_q(&self) -> &LineForm {
        &self.side_q
    }

    /// Intersection of the sides, the circumcenter of ABC.
    pub fn vertex(&self) -> Point {
        self.vertex
    }

    /// The unique parabola of the pencil: focus `A`, directrix BC.
    pub fn parabola(&self) -> &Conic {
        &self.parabola
    }

    /// The chord `ZV`.
    pub fn critical_line(&self) -> &LineForm {
        &self.critical_line
    }

    /// `λ = −P(E)·Q(E) / L(E)²` with unit-normal line forms.
    pub fn pencil_parameter(&self, e: Point) -> Result<f64> {
        let l = self.critical_line.eval(e);
        if l.abs() <= tol::BOUNDARY {
            return Err(Error::OnCriticalLine);
        }
        Ok(-(self.side_p.eval(e) * self.side_q.eval(e)) / (l * l))
    }

    /// The member `λ·L² + P·Q = 0`.
    pub fn member(&self, lambda: f64) -> Result<Conic> {
        let ll = line_product(&self.critical_line, &self.critical_line);
        let pq = line_product(&self.side_p, &self.side_q);
        let mut coeffs = [0.0; 6];
        for i in 0..6 {
            coeffs[i] = lambda * ll[i] + pq[i];
        }
        Conic::new(coeffs)
    }

    /// The member through `e`.
    pub fn conic_through(&self, e: Point) -> Result<Conic> {
        self.member(self.pencil_parameter(e)?)
    }

    /// Whether two parameters name the same member.
    pub fn same_parameter(a: f64, b: f64) -> bool {
        (a - b).abs() <= tol::LAMBDA_REL * (1.0 + a.abs().max(b.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conic::ConicClass;

    fn frame() -> TriangleFrame {
        TriangleFrame::from_apex(0.3, 0.8).unwrap()
    }

    #[test]
    fn build_pencil_example() {
        let p = Pencil::new(&frame()).unwrap();
        assert!(p.z().approx_eq(Point::new(0.0, 0.45625), 1e-15));
        assert!(p.v().approx_eq(Point::new(1.0, 0.70625), 1e-15));
        assert!(p.vertex().approx_eq(Point::new(0.5, 0.26875), 1e-15));
        let expected = Conic::new([1.0, 0.0, 0.0, -0.6, -1.6, 0.73]).unwrap();
        assert!(p.parabola().max_coeff_diff(&expected) < 1e-15);
        assert!(p.side_p().eval(p.z()).abs() < 1e-15);
        assert!(p.side_q().eval(p.v()).abs() < 1e-15);
    }

    #[test]
    fn apex_on_vertical_through_b() {
        let p = Pencil::new(&TriangleFrame::from_apex(0.0, 0.9).unwrap()).unwrap();
        assert!(p.z().approx_eq(Point::new(0.0, 0.45), 1e-15));
    }

    #[test]
    fn isosceles_is_rejected() {
        let f = TriangleFrame::from_apex(0.5, 0.9).unwrap();
        assert_eq!(Pencil::new(&f), Err(Error::IsoscelesExcluded));
        assert_eq!(conic_same_side(&f, 1.0), Err(Error::IsoscelesExcluded));
    }

    #[test]
    fn zero_span_same_side_is_the_parabola() {
        let f = frame();
        let u = conic_same_side(&f, 0.0).unwrap();
        assert!(u.max_coeff_diff(Pencil::new(&f).unwrap().parabola()) < 1e-15);
        assert_eq!(u.classify(), ConicClass::Parabola);
    }

    #[test]
    fn span_sign_does_not_matter() {
        let f = frame();
        assert_eq!(conic_same_side(&f, 2.0).unwrap(), conic_same_side(&f, -2.0).unwrap());
        assert_eq!(conic_mixed(&f, 1.0).unwrap(), conic_mixed(&f, -1.0).unwrap());
    }

    #[test]
    fn mixed_zero_span_is_rejected() {
        assert_eq!(conic_mixed(&frame(), 0.0), Err(Error::ZeroSpanMixed));
    }

    #[test]
    fn lambda_is_constant_on_the_parabola() {
        let p = Pencil::new(&frame()).unwrap();
        let l1 = p.pencil_parameter(Point::new(0.3, 0.4)).unwrap();
        let l2 = p.pencil_parameter(Point::new(0.9, 0.625)).unwrap();
        assert!((l1 - l2).abs() < 1e-12 * l1.abs().max(1.0));
    }

    #[test]
    fn lambda_vanishes_on_a_side() {
        let p = Pencil::new(&frame()).unwrap();
        let on_p = p.side_p().project(Point::new(-1.0, 2.0));
        assert!(p.pencil_parameter(on_p).unwrap().abs() < 1e-15);
        assert_eq!(p.pencil_parameter(p.z()), Err(Error::OnCriticalLine));
    }

    #[test]
    fn conic_through_examples() {
        let f = frame();
        let p = Pencil::new(&f).unwrap();
        let u = p.conic_through(Point::new(0.3, 0.4)).unwrap();
        assert!(u.max_coeff_diff(p.parabola()) < 1e-12);

        let on_q = p.side_q().project(Point::new(2.0, 3.0));
        let u = p.conic_through(on_q).unwrap();
        let pq = Conic::from_line_pair(p.side_p(), p.side_q()).unwrap();
        assert!(u.max_coeff_diff(&pq) < 1e-12);
        assert_eq!(u.classify(), ConicClass::DegenerateLines);

        let e = family_circumcenter(&f, CircumcenterFamily::Internal, 0.0, 2.0).unwrap();
        let u = p.conic_through(e).unwrap();
        assert!(u.max_coeff_diff(&conic_same_side(&f, 2.0).unwrap()) < 1e-12);
    }

    #[test]
    fn members_touch_sides_at_contact_points() {
        let f = frame();
        let p = Pencil::new(&f).unwrap();
        for lambda in [-3.0, -0.2, 0.7, 5.0] {
            let u = p.member(lambda).unwrap();
            let tz = u.tangent_line_at(p.z()).unwrap();
            let tv = u.tangent_line_at(p.v()).unwrap();
            assert!(tz.max_coeff_diff(p.side_p()) < 1e-12);
            assert!(tv.max_coeff_diff(p.side_q()) < 1e-12);
        }
    }
}
