use std::fmt;

use serde::{Deserialize, Serialize};

use super::Pencil;
use crate::cevian::FootFamily;
use crate::conic::ConicClass;
use crate::error::{Error, Result};
use crate::geom::{Circle, Point};
use crate::tol;

/// Where a point sits relative to the sides, the chord `ZV` and the parabola.
///
/// The sides split the plane into four wedges. `R1` holds the parabola and is
/// further split into the parabola interior `U1`, the parts left of the
/// vertical through B (`U2`), right of the vertical through C (`U3`) and the
/// rest (`U4`). `R3` is the opposite wedge; the remaining two wedges are
/// reported together as `SideRegion`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionLabel {
    U1InsideParabola,
    OnParabola,
    U2LeftOverhang,
    U3RightOverhang,
    U4Remainder,
    R3Opposite,
    SideRegion,
    OnSide,
    OnCriticalLine,
}

impl RegionLabel {
    pub const ALL: [RegionLabel; 9] = [
        RegionLabel::U1InsideParabola,
        RegionLabel::OnParabola,
        RegionLabel::U2LeftOverhang,
        RegionLabel::U3RightOverhang,
        RegionLabel::U4Remainder,
        RegionLabel::R3Opposite,
        RegionLabel::SideRegion,
        RegionLabel::OnSide,
        RegionLabel::OnCriticalLine,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RegionLabel::U1InsideParabola => "U1_InsideParabola",
            RegionLabel::OnParabola => "OnParabola",
            RegionLabel::U2LeftOverhang => "U2_LeftOverhang",
            RegionLabel::U3RightOverhang => "U3_RightOverhang",
            RegionLabel::U4Remainder => "U4_Remainder",
            RegionLabel::R3Opposite => "R3_Opposite",
            RegionLabel::SideRegion => "SideRegion",
            RegionLabel::OnSide => "OnSide",
            RegionLabel::OnCriticalLine => "OnCriticalLine",
        }
    }

    /// Member type forced by the region, when the region decides it.
    pub fn member_class(self) -> Option<ConicClass> {
        match self {
            RegionLabel::U1InsideParabola => Some(ConicClass::Ellipse),
            RegionLabel::OnParabola => Some(ConicClass::Parabola),
            RegionLabel::OnSide => Some(ConicClass::DegenerateLines),
            RegionLabel::OnCriticalLine => None,
            _ => Some(ConicClass::Hyperbola),
        }
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutHit {
    pub point: Point,
    /// `Internal` for the closed segment BC, `External` for the rest of the line.
    pub family: FootFamily,
    /// The hit is B or C itself.
    pub at_vertex: bool,
}

/// Intersections of the circle centered at `E` through `A` with line BC.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutReport {
    pub circle: Circle,
    pub hits: Vec<CutHit>,
    pub count_m: usize,
    pub count_m_prime: usize,
}

impl Pencil {
    /// `|EA| − |y_E|`: negative strictly inside the parabola, zero on it.
    ///
    /// Evaluated as `(|EA|² − y_E²) / (|EA| + |y_E|)` to avoid cancellation
    /// for far-away points.
    pub fn parabola_gap(&self, e: Point) -> f64 {
        let a = self.frame.a();
        let dx = e.x - a.x;
        let power = dx * dx - 2.0 * e.y * a.y + a.y * a.y;
        let sum = e.dist(a) + e.y.abs();
        if sum == 0.0 {
            return 0.0;
        }
        power / sum
    }

    fn on_parabola_band(&self, e: Point) -> f64 {
        tol::BOUNDARY * e.dist(self.frame.a()).max(1.0)
    }

    pub fn classify_region(&self, e: Point) -> RegionLabel {
        let p = self.side_p.eval(e);
        let q = self.side_q.eval(e);
        if p.abs() <= tol::BOUNDARY || q.abs() <= tol::BOUNDARY {
            return RegionLabel::OnSide;
        }
        if self.critical_line.eval(e).abs() <= tol::BOUNDARY {
            return RegionLabel::OnCriticalLine;
        }
        let gap = self.parabola_gap(e);
        if gap.abs() <= self.on_parabola_band(e) {
            return RegionLabel::OnParabola;
        }
        if gap < 0.0 {
            return RegionLabel::U1InsideParabola;
        }
        let a = self.frame.a();
        let same_p = (p > 0.0) == (self.side_p.eval(a) > 0.0);
        let same_q = (q > 0.0) == (self.side_q.eval(a) > 0.0);
        match (same_p, same_q) {
            (true, true) if e.x < 0.0 => RegionLabel::U2LeftOverhang,
            (true, true) if e.x > 1.0 => RegionLabel::U3RightOverhang,
            (true, true) => RegionLabel::U4Remainder,
            (false, false) => RegionLabel::R3Opposite,
            _ => RegionLabel::SideRegion,
        }
    }

    pub fn circle_cut(&self, e: Point) -> Result<CutReport> {
        let a = self.frame.a();
        let radius = e.dist(a);
        if radius <= tol::BOUNDARY {
            return Err(Error::CenterIsFocus);
        }
        let gap = self.parabola_gap(e);
        let xs: Vec<f64> = if gap.abs() <= self.on_parabola_band(e) {
            vec![e.x]
        } else if gap < 0.0 {
            Vec::new()
        } else {
            // |EA|² − y² = gap·(|EA| + |y|)
            let h = (gap * (radius + e.y.abs())).sqrt();
            vec![e.x - h, e.x + h]
        };
        let hits: Vec<CutHit> = xs
            .into_iter()
            .map(|x| {
                let at_vertex = x.abs() <= tol::AT_VERTEX || (x - 1.0).abs() <= tol::AT_VERTEX;
                let family =
                    if at_vertex || (0.0..=1.0).contains(&x) { FootFamily::Internal } else { FootFamily::External };
                CutHit { point: Point::new(x, 0.0), family, at_vertex }
            })
            .collect();
        let count_m = hits.iter().filter(|h| h.family == FootFamily::Internal).count();
        let count_m_prime = hits.len() - count_m;
        Ok(CutReport { circle: Circle::new(e, radius), hits, count_m, count_m_prime })
    }

    /// Type of the member through `w`, read off its region.
    pub fn classify_member(&self, w: Point) -> Result<ConicClass> {
        self.classify_region(w).member_class().ok_or(Error::OnCriticalLine)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::TriangleFrame;
    use crate::pencil::{family_circumcenter, CircumcenterFamily};

    fn pencil() -> Pencil {
        Pencil::new(&TriangleFrame::from_apex(0.3, 0.8).unwrap()).unwrap()
    }

    #[test]
    fn region_examples() {
        let p = pencil();
        assert_eq!(p.classify_region(Point::new(0.3, 0.8)), RegionLabel::U1InsideParabola);
        assert_eq!(p.classify_region(Point::new(0.3, 0.4)), RegionLabel::OnParabola);
        assert_eq!(p.classify_region(Point::new(0.9, 0.625)), RegionLabel::OnParabola);
        assert_eq!(p.classify_region(p.z()), RegionLabel::OnSide);
        assert_eq!(p.classify_region(p.vertex()), RegionLabel::OnSide);
        let mid = p.z().midpoint(p.v());
        assert_eq!(p.classify_region(mid), RegionLabel::OnCriticalLine);
    }

    #[test]
    fn region_of_far_left_point() {
        // Between the bisector of AB and the parabola, left of B.
        let p = pencil();
        let e = Point::new(-0.5, 0.72);
        assert!(p.side_p().eval(e) * p.side_p().eval(Point::new(0.3, 0.8)) > 0.0);
        assert_eq!(p.classify_region(e), RegionLabel::U2LeftOverhang);
        let cut = p.circle_cut(e).unwrap();
        assert_eq!((cut.count_m, cut.count_m_prime), (0, 2));
    }

    #[test]
    fn cut_inside_parabola_is_empty() {
        let cut = pencil().circle_cut(Point::new(0.3, 0.81)).unwrap();
        assert!(cut.hits.is_empty());
    }

    #[test]
    fn cut_at_vertex_hits_b_and_c() {
        let p = pencil();
        let cut = p.circle_cut(p.vertex()).unwrap();
        assert_eq!(cut.hits.len(), 2);
        assert!(cut.hits.iter().all(|h| h.at_vertex));
        assert!(cut.hits[0].point.approx_eq(Point::ORIGIN, 1e-12));
        assert!(cut.hits[1].point.approx_eq(Point::new(1.0, 0.0), 1e-12));
        assert_eq!(cut.count_m, 2);
    }

    #[test]
    fn cut_on_parabola_is_tangent() {
        let cut = pencil().circle_cut(Point::new(0.9, 0.625)).unwrap();
        assert_eq!(cut.hits.len(), 1);
        assert!(cut.hits[0].point.approx_eq(Point::new(0.9, 0.0), 1e-12));
    }

    #[test]
    fn cut_at_focus_is_rejected() {
        assert_eq!(pencil().circle_cut(Point::new(0.3, 0.8)), Err(Error::CenterIsFocus));
    }

    #[test]
    fn cut_hits_satisfy_circle() {
        let p = pencil();
        for e in [Point::new(-2.0, 3.0), Point::new(0.5, -1.0), Point::new(4.0, 0.1)] {
            let cut = p.circle_cut(e).unwrap();
            for h in &cut.hits {
                assert!((h.point.dist(e) - cut.circle.radius).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn circumcenters_of_internal_pairs_cut_the_segment_twice() {
        let f = TriangleFrame::from_apex(0.3, 0.8).unwrap();
        let p = Pencil::new(&f).unwrap();
        let e = family_circumcenter(&f, CircumcenterFamily::Internal, 0.5, 2.0).unwrap();
        let cut = p.circle_cut(e).unwrap();
        assert_eq!((cut.count_m, cut.count_m_prime), (2, 0));
    }

    #[test]
    fn member_examples() {
        let p = pencil();
        assert_eq!(p.classify_member(Point::new(0.3, 0.41)).unwrap(), ConicClass::Ellipse);
        let on_p = p.side_p().project(Point::new(-1.0, 2.0));
        assert_eq!(p.classify_member(on_p).unwrap(), ConicClass::DegenerateLines);
        assert_eq!(p.classify_member(Point::new(0.5, -1.0)).unwrap(), ConicClass::Hyperbola);
        let mid = p.z().midpoint(p.v());
        assert_eq!(p.classify_member(mid), Err(Error::OnCriticalLine));
    }

    #[test]
    fn member_class_matches_conic_classification() {
        let p = pencil();
        for w in [Point::new(0.3, 0.41), Point::new(0.5, -1.0), Point::new(-0.5, 0.72), Point::new(3.0, 5.0)] {
            let expected = p.conic_through(w).unwrap().classify();
            assert_eq!(p.classify_member(w).unwrap(), expected, "at {w}");
        }
    }
}
