//! Deciding whether two points lie on the same member of the pencil.
//!
//! The member type is read off the regions first. Hyperbola members are then
//! compared by span: the circles through `A` centered at the two points cut
//! line BC in feet whose exponent gaps must agree. Ellipse members have no
//! span; their points are first sent to the dual member (polar reciprocation
//! in the parabola), which is a hyperbola.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::region::RegionLabel;
use super::span::SpanResult;
use super::Pencil;
use crate::cevian::FootFamily;
use crate::error::{Error, Result};
use crate::geom::{LineForm, Point};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Decision {
    Same,
    Different,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Same => "Same",
            Decision::Different => "Different",
        })
    }
}

/// Which branch of the procedure produced the decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DecisionCase {
    IdenticalPoints,
    /// The regions force members of different types.
    TypeMismatch,
    Parabola,
    SideHyperbola,
    StraightHyperbola,
    /// Both points mapped to the dual hyperbola.
    EllipseDual,
    /// Both points have a vertical tangent on their ellipse.
    EllipseBothParallel,
    /// One point had a vertical tangent and was replaced by another point
    /// of its ellipse before dualizing.
    EllipseOneParallel,
}

impl DecisionCase {
    pub fn name(self) -> &'static str {
        match self {
            DecisionCase::IdenticalPoints => "identical",
            DecisionCase::TypeMismatch => "type-mismatch",
            DecisionCase::Parabola => "parabola",
            DecisionCase::SideHyperbola => "side",
            DecisionCase::StraightHyperbola => "straight",
            DecisionCase::EllipseDual => "ellipse-dual",
            DecisionCase::EllipseBothParallel => "ellipse-both-parallel",
            DecisionCase::EllipseOneParallel => "ellipse-one-parallel",
        }
    }
}

impl fmt::Display for DecisionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SameConicReport {
    pub decision: Decision,
    pub case: DecisionCase,
    pub regions: (RegionLabel, RegionLabel),
    /// Points actually compared by span (the duals in the ellipse cases).
    pub compared: Option<(Point, Point)>,
    pub spans: Option<(SpanResult, SpanResult)>,
    /// `(x1/x2)·(y1/y2)` and `(x1/x2)·(y2/y1)` for side hyperbolas, where
    /// each ratio is `|B·hit| / |hit·C|` and index 1 is the hit on the segment.
    pub ratio_products: Option<(f64, f64)>,
    pub lambdas: (f64, f64),
    /// Verdict of the pencil-parameter comparison.
    pub oracle: Decision,
}

impl SameConicReport {
    pub fn agrees_with_oracle(&self) -> bool {
        self.decision == self.oracle
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MemberKind {
    Parabola,
    Side,
    Straight,
    Ellipse,
}

fn member_kind(label: RegionLabel) -> Result<MemberKind> {
    match label {
        RegionLabel::OnSide => Err(Error::OnSide),
        RegionLabel::OnCriticalLine => Err(Error::OnCriticalLine),
        RegionLabel::OnParabola => Ok(MemberKind::Parabola),
        RegionLabel::SideRegion => Ok(MemberKind::Side),
        RegionLabel::U1InsideParabola => Ok(MemberKind::Ellipse),
        RegionLabel::U2LeftOverhang
        | RegionLabel::U3RightOverhang
        | RegionLabel::U4Remainder
        | RegionLabel::R3Opposite => Ok(MemberKind::Straight),
    }
}

fn decide(same: bool) -> Decision {
    if same {
        Decision::Same
    } else {
        Decision::Different
    }
}

/// `|B·x| / |x·C|` for a point `(x, 0)`.
fn cut_ratio(x: f64) -> f64 {
    x.abs() / (x - 1.0).abs()
}

struct HyperbolaComparison {
    decision: Decision,
    case: DecisionCase,
    spans: (SpanResult, SpanResult),
    ratio_products: Option<(f64, f64)>,
}

impl Pencil {
    /// Pole of the tangent at `p` to the ellipse member through `p`: the
    /// intersection of line (vertex, `p`) with the polar of `p` in the parabola.
    pub fn dual_point(&self, p: Point) -> Result<Point> {
        match self.classify_region(p) {
            RegionLabel::U1InsideParabola => {}
            RegionLabel::OnCriticalLine => return Err(Error::OnCriticalLine),
            _ => return Err(Error::NotInsideParabola),
        }
        let through_vertex = LineForm::through(self.vertex, p)?;
        let polar = self.parabola.polar_line(p)?;
        through_vertex.intersect(&polar).ok_or(Error::ParallelPolar)
    }

    /// A point of the ellipse through `p` on its vertical diameter, whose
    /// tangent is never vertical.
    fn regular_ellipse_point(&self, p: Point) -> Result<Point> {
        let u = self.conic_through(p)?;
        let center = u.center()?;
        let pts = u.line_intersections(&LineForm::vertical(center.x))?;
        pts.into_iter()
            .max_by(|a, b| {
                let da = self.critical_line.eval(*a).abs();
                let db = self.critical_line.eval(*b).abs();
                da.total_cmp(&db)
            })
            .ok_or(Error::NotOnConic)
    }

    fn compare_by_span(&self, x: Point, y: Point) -> Result<HyperbolaComparison> {
        let kx = member_kind(self.classify_region(x))?;
        let ky = member_kind(self.classify_region(y))?;
        let sx = self.span_of(x)?;
        let sy = self.span_of(y)?;
        let case = if kx == MemberKind::Side { DecisionCase::SideHyperbola } else { DecisionCase::StraightHyperbola };
        let ratio_products = (kx == MemberKind::Side && ky == MemberKind::Side).then(|| {
            let cut_x = self.circle_cut(x).expect("span succeeded");
            let cut_y = self.circle_cut(y).expect("span succeeded");
            let split = |cut: &super::CutReport| {
                let ratio_of = |family| {
                    let hit = cut.hits.iter().find(|h| h.family == family).expect("one hit each");
                    cut_ratio(hit.point.x)
                };
                (ratio_of(FootFamily::Internal), ratio_of(FootFamily::External))
            };
            let (x1, x2) = split(&cut_x);
            let (y1, y2) = split(&cut_y);
            ((x1 / x2) * (y1 / y2), (x1 / x2) * (y2 / y1))
        });
        let same = kx == ky && sx.matches(&sy);
        Ok(HyperbolaComparison { decision: decide(same), case, spans: (sx, sy), ratio_products })
    }

    /// Whether `x` and `y` lie on one member of the pencil.
    pub fn same_conic(&self, x: Point, y: Point) -> Result<SameConicReport> {
        let rx = self.classify_region(x);
        let ry = self.classify_region(y);
        let kx = member_kind(rx)?;
        let ky = member_kind(ry)?;
        let lambdas = (self.pencil_parameter(x)?, self.pencil_parameter(y)?);
        let oracle = decide(Pencil::same_parameter(lambdas.0, lambdas.1));
        let mut report = SameConicReport {
            decision: Decision::Different,
            case: DecisionCase::TypeMismatch,
            regions: (rx, ry),
            compared: None,
            spans: None,
            ratio_products: None,
            lambdas,
            oracle,
        };

        if x.approx_eq(y, tol::AT_VERTEX) {
            report.decision = Decision::Same;
            report.case = DecisionCase::IdenticalPoints;
            return Ok(report);
        }
        if kx != ky {
            return Ok(report);
        }
        let (cx, cy, case) = match kx {
            MemberKind::Parabola => {
                report.decision = Decision::Same;
                report.case = DecisionCase::Parabola;
                return Ok(report);
            }
            MemberKind::Side | MemberKind::Straight => (x, y, None),
            MemberKind::Ellipse => {
                let dx = self.dual_or_parallel(x)?;
                let dy = self.dual_or_parallel(y)?;
                match (dx, dy) {
                    (None, None) => {
                        // Vertical-tangent points of one ellipse are symmetric
                        // about its center, and every center lies on x = 1/2.
                        let mid = x.midpoint(y);
                        report.decision = decide((mid.x - 0.5).abs() <= tol::BOUNDARY);
                        report.case = DecisionCase::EllipseBothParallel;
                        return Ok(report);
                    }
                    (Some(gx), Some(gy)) => (gx, gy, Some(DecisionCase::EllipseDual)),
                    (None, Some(gy)) => {
                        let gx = self.dual_point(self.regular_ellipse_point(x)?)?;
                        (gx, gy, Some(DecisionCase::EllipseOneParallel))
                    }
                    (Some(gx), None) => {
                        let gy = self.dual_point(self.regular_ellipse_point(y)?)?;
                        (gx, gy, Some(DecisionCase::EllipseOneParallel))
                    }
                }
            }
        };
        let cmp = self.compare_by_span(cx, cy)?;
        report.decision = cmp.decision;
        report.case = case.unwrap_or(cmp.case);
        report.compared = Some((cx, cy));
        report.spans = Some(cmp.spans);
        report.ratio_products = cmp.ratio_products;
        Ok(report)
    }

    fn dual_or_parallel(&self, p: Point) -> Result<Option<Point>> {
        match self.dual_point(p) {
            Ok(g) => Ok(Some(g)),
            Err(Error::ParallelPolar) => Ok(None),
            Err(e) => Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::TriangleFrame;
    use crate::pencil::{family_circumcenter, CircumcenterFamily};

    fn setup() -> (TriangleFrame, Pencil) {
        let f = TriangleFrame::from_apex(0.3, 0.8).unwrap();
        (f, Pencil::new(&f).unwrap())
    }

    fn internal(f: &TriangleFrame, k: f64, t: f64) -> Point {
        family_circumcenter(f, CircumcenterFamily::Internal, k, t).unwrap()
    }

    #[test]
    fn equal_spans_are_same() {
        let (f, p) = setup();
        let r = p.same_conic(internal(&f, 0.0, 1.0), internal(&f, 1.0, 1.0)).unwrap();
        assert_eq!(r.decision, Decision::Same);
        assert_eq!(r.case, DecisionCase::StraightHyperbola);
        assert!(r.agrees_with_oracle());
    }

    #[test]
    fn different_spans_are_different() {
        let (f, p) = setup();
        let r = p.same_conic(internal(&f, 0.0, 1.0), internal(&f, 0.0, 2.0)).unwrap();
        assert_eq!(r.decision, Decision::Different);
        assert!(r.agrees_with_oracle());
    }

    #[test]
    fn parabola_points_are_same() {
        let (_, p) = setup();
        let r = p.same_conic(Point::new(0.3, 0.4), Point::new(0.9, 0.625)).unwrap();
        assert_eq!(r.decision, Decision::Same);
        assert_eq!(r.case, DecisionCase::Parabola);
    }

    #[test]
    fn side_hyperbola_ratio_products() {
        let (f, p) = setup();
        let x = family_circumcenter(&f, CircumcenterFamily::Mixed, 1.0, 1.0).unwrap();
        let y = family_circumcenter(&f, CircumcenterFamily::Mixed, -0.7, 1.0).unwrap();
        let r = p.same_conic(x, y).unwrap();
        assert_eq!(r.case, DecisionCase::SideHyperbola);
        assert_eq!(r.decision, Decision::Same);
        let (p1, p2) = r.ratio_products.unwrap();
        assert!((p1 - 1.0).abs() < 1e-9 || (p2 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn preconditions() {
        let (_, p) = setup();
        let mid = p.z().midpoint(p.v());
        assert_eq!(p.same_conic(mid, Point::new(0.3, 0.4)), Err(Error::OnCriticalLine));
        let on_side = p.side_p().project(Point::new(-1.0, 2.0));
        assert_eq!(p.same_conic(on_side, Point::new(0.3, 0.4)), Err(Error::OnSide));
    }

    #[test]
    fn dual_point_of_focus_stays_on_one_member() {
        let (f, p) = setup();
        let u = p.conic_through(f.a()).unwrap();
        let g = p.dual_point(f.a()).unwrap();
        assert!(p.parabola_gap(g) > 0.0);
        let lambda = p.pencil_parameter(g).unwrap();
        // Other points of the focus ellipse, on lines through the focus.
        for angle in [0.3f64, 1.1, 2.0, 2.9] {
            let dir = Point::new(angle.cos(), angle.sin());
            let line = LineForm::through_with_direction(f.a(), dir).unwrap();
            for q in u.line_intersections(&line).unwrap() {
                let gq = p.dual_point(q).unwrap();
                let lq = p.pencil_parameter(gq).unwrap();
                assert!(Pencil::same_parameter(lambda, lq), "{lambda} vs {lq}");
            }
        }
    }

    #[test]
    fn dual_point_rejects_points_outside() {
        let (_, p) = setup();
        assert_eq!(p.dual_point(Point::new(0.9, 0.625)), Err(Error::NotInsideParabola));
    }

    #[test]
    fn vertical_line_through_vertex() {
        // P on the vertical through the pencil vertex: the dual exists unless
        // the polar of P is vertical too, which only the axis point allows.
        let (_, p) = setup();
        let q = Point::new(0.5, 0.6);
        assert_eq!(p.classify_region(q), RegionLabel::U1InsideParabola);
        let polar = p.parabola().polar_line(q).unwrap();
        let parallel = polar.b().abs() <= tol::PARALLEL;
        match p.dual_point(q) {
            Ok(g) => {
                assert!(!parallel);
                assert!((g.x - 0.5).abs() < 1e-12);
            }
            Err(e) => {
                assert_eq!(e, Error::ParallelPolar);
                assert!(parallel);
            }
        }
    }
}
