//! General second-degree curves `A·x² + B·x·y + C·y² + D·x + E·y + F = 0`.

use std::fmt;

use nalgebra::{Matrix3, Matrix6, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{LineForm, Point};
use crate::tol;

/// Affine type of a conic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConicClass {
    Ellipse,
    Parabola,
    Hyperbola,
    /// Two crossing, parallel or coincident real lines.
    DegenerateLines,
    /// Two conjugate imaginary lines meeting in one real point.
    DegeneratePoint,
    /// No real points.
    Empty,
}

impl ConicClass {
    pub fn is_degenerate(self) -> bool {
        matches!(self, ConicClass::DegenerateLines | ConicClass::DegeneratePoint | ConicClass::Empty)
    }

    pub fn name(self) -> &'static str {
        match self {
            ConicClass::Ellipse => "Ellipse",
            ConicClass::Parabola => "Parabola",
            ConicClass::Hyperbola => "Hyperbola",
            ConicClass::DegenerateLines => "DegenerateLines",
            ConicClass::DegeneratePoint => "DegeneratePoint",
            ConicClass::Empty => "Empty",
        }
    }
}

impl fmt::Display for ConicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Coefficients `[A, B, C, D, E, F]`, scaled so the largest magnitude is 1
/// and the first coefficient of (nearly) largest magnitude is positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Conic {
    coeffs: [f64; 6],
}

impl Conic {
    pub fn new(coeffs: [f64; 6]) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        let max = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if max == 0.0 {
            return Err(Error::ZeroConic);
        }
        let pivot = coeffs.iter().copied().find(|c| c.abs() >= max * (1.0 - 1e-9)).expect("max is attained");
        let scale = max.copysign(pivot);
        Ok(Self { coeffs: coeffs.map(|c| c / scale) })
    }

    /// The degenerate conic `l1(x,y)·l2(x,y) = 0`.
    pub fn from_line_pair(l1: &LineForm, l2: &LineForm) -> Result<Self> {
        Self::new(line_product(l1, l2))
    }

    pub fn coefficients(&self) -> [f64; 6] {
        self.coeffs
    }

    /// Normalized form value at `p`.
    pub fn eval(&self, p: Point) -> f64 {
        let [a, b, c, d, e, f] = self.coeffs;
        a * p.x * p.x + b * p.x * p.y + c * p.y * p.y + d * p.x + e * p.y + f
    }

    /// Form value at the unit homogeneous vector of `p`: `|eval(p)| / (1 + |p|²)`.
    pub fn residual(&self, p: Point) -> f64 {
        self.eval(p).abs() / (1.0 + p.norm_sq())
    }

    pub fn gradient(&self, p: Point) -> Point {
        let [a, b, c, d, e, _] = self.coeffs;
        Point::new(2.0 * a * p.x + b * p.y + d, b * p.x + 2.0 * c * p.y + e)
    }

    /// Symmetric matrix of the homogeneous form.
    pub fn matrix(&self) -> Matrix3<f64> {
        let [a, b, c, d, e, f] = self.coeffs;
        Matrix3::new(a, b / 2.0, d / 2.0, b / 2.0, c, e / 2.0, d / 2.0, e / 2.0, f)
    }

    pub fn discriminant(&self) -> f64 {
        let [a, b, c, ..] = self.coeffs;
        b * b - 4.0 * a * c
    }

    pub fn determinant(&self) -> f64 {
        self.matrix().determinant()
    }

    /// Smallest over largest singular value of [`Conic::matrix`]; zero for
    /// degenerate conics.
    pub fn rank_ratio(&self) -> f64 {
        let sv = self.matrix().singular_values();
        sv.min() / sv.max()
    }

    pub fn classify(&self) -> ConicClass {
        let [a, _, c, d, e, f] = self.coeffs;
        let disc = self.discriminant();
        if self.rank_ratio() <= tol::RANK {
            if disc > tol::DISCRIMINANT {
                return ConicClass::DegenerateLines;
            }
            if disc < -tol::DISCRIMINANT {
                return ConicClass::DegeneratePoint;
            }
            // Rank-one quadratic part: parallel pair, real iff the cofactor sum is ≤ 0.
            let cofactors = (a * f - d * d / 4.0) + (c * f - e * e / 4.0);
            return if cofactors > tol::RANK { ConicClass::Empty } else { ConicClass::DegenerateLines };
        }
        if disc < -tol::DISCRIMINANT {
            if (a + c) * self.determinant() < 0.0 {
                ConicClass::Ellipse
            } else {
                ConicClass::Empty
            }
        } else if disc > tol::DISCRIMINANT {
            ConicClass::Hyperbola
        } else {
            ConicClass::Parabola
        }
    }

    fn polar_coefficients(&self, p: Point) -> [f64; 3] {
        let v = self.matrix() * Vector3::new(p.x, p.y, 1.0);
        [v[0], v[1], v[2]]
    }

    /// Polar of `p`; for a point on the conic this is its tangent.
    pub fn polar_line(&self, p: Point) -> Result<LineForm> {
        let [a, b, c] = self.polar_coefficients(p);
        if a.hypot(b) <= tol::SIGN_PIVOT * (1.0 + p.norm()) {
            return Err(Error::ZeroPolar);
        }
        LineForm::new(a, b, c)
    }

    pub fn tangent_line_at(&self, p: Point) -> Result<LineForm> {
        if self.residual(p) > tol::ON_CONIC {
            return Err(Error::NotOnConic);
        }
        if self.gradient(p).norm() <= tol::SIGN_PIVOT * (1.0 + p.norm()) {
            return Err(Error::SingularPoint);
        }
        self.polar_line(p)
    }

    /// Center of a central conic (vanishing gradient).
    pub fn center(&self) -> Result<Point> {
        let [a, b, c, d, e, _] = self.coeffs;
        let det = 4.0 * a * c - b * b;
        if det.abs() <= tol::DISCRIMINANT {
            return Err(Error::NotCentral);
        }
        Ok(Point::new((b * e - 2.0 * c * d) / det, (b * d - 2.0 * a * e) / det))
    }

    /// Intersections with a line, sorted by `(x, y)`.
    pub fn line_intersections(&self, l: &LineForm) -> Result<Vec<Point>> {
        let [a, b, c, d, e, _] = self.coeffs;
        let p0 = l.project(Point::ORIGIN);
        let dir = l.direction();
        let alpha = a * dir.x * dir.x + b * dir.x * dir.y + c * dir.y * dir.y;
        let beta =
            2.0 * a * p0.x * dir.x + b * (p0.x * dir.y + p0.y * dir.x) + 2.0 * c * p0.y * dir.y + d * dir.x + e * dir.y;
        let gamma = self.eval(p0);
        let eps = tol::SIGN_PIVOT;
        if alpha.abs() <= eps && beta.abs() <= eps && gamma.abs() <= eps {
            return Err(Error::LineOnConic);
        }
        let params: Vec<f64> = if alpha.abs() <= eps {
            if beta.abs() <= eps {
                Vec::new()
            } else {
                vec![-gamma / beta]
            }
        } else {
            let disc = beta * beta - 4.0 * alpha * gamma;
            let scale = beta * beta + (4.0 * alpha * gamma).abs();
            if disc.abs() <= 1e-12 * scale {
                vec![-beta / (2.0 * alpha)]
            } else if disc < 0.0 {
                Vec::new()
            } else {
                let q = -0.5 * (beta + disc.sqrt().copysign(beta));
                if q == 0.0 {
                    vec![0.0]
                } else {
                    vec![q / alpha, gamma / q]
                }
            }
        };
        let mut pts: Vec<Point> = params.into_iter().map(|s| p0 + dir * s).collect();
        pts.sort_by(|p, q| p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y)));
        Ok(pts)
    }

    /// The unique conic through five points, from the null space of the
    /// 5×6 incidence matrix (points are first centered and scaled).
    pub fn from_five_points(pts: &[Point; 5]) -> Result<Self> {
        if pts.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite);
        }
        let centroid = pts.iter().fold(Point::ORIGIN, |acc, p| acc + *p) * 0.2;
        let spread = pts.iter().map(|p| p.dist(centroid)).sum::<f64>() / 5.0;
        if spread == 0.0 {
            return Err(Error::RankDeficient);
        }
        let s = std::f64::consts::SQRT_2 / spread;
        let mut m = Matrix6::<f64>::zeros();
        for (i, p) in pts.iter().enumerate() {
            let q = (*p - centroid) * s;
            let row = [q.x * q.x, q.x * q.y, q.y * q.y, q.x, q.y, 1.0];
            for (j, v) in row.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        let svd = m.svd(false, true);
        let v_t = svd.v_t.ok_or(Error::RankDeficient)?;
        let mut order: Vec<usize> = (0..6).collect();
        order.sort_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]));
        let largest = svd.singular_values[order[5]];
        if svd.singular_values[order[1]] <= tol::FIT_SINGULAR * largest {
            return Err(Error::RankDeficient);
        }
        let n = v_t.row(order[0]);
        let local = Conic { coeffs: [n[0], n[1], n[2], n[3], n[4], n[5]] }.matrix();
        // x_local = s·(x - centroid): pull the form back through that map.
        let t = Matrix3::new(s, 0.0, -s * centroid.x, 0.0, s, -s * centroid.y, 0.0, 0.0, 1.0);
        let q = t.transpose() * local * t;
        Self::new([q[(0, 0)], 2.0 * q[(0, 1)], q[(1, 1)], 2.0 * q[(0, 2)], 2.0 * q[(1, 2)], q[(2, 2)]])
    }

    pub fn max_coeff_diff(&self, other: &Conic) -> f64 {
        self.coeffs.iter().zip(other.coeffs.iter()).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// |cos| of the angle between the coefficient vectors.
    pub fn cosine_similarity(&self, other: &Conic) -> f64 {
        let dot: f64 = self.coeffs.iter().zip(other.coeffs.iter()).map(|(a, b)| a * b).sum();
        let na: f64 = self.coeffs.iter().map(|a| a * a).sum::<f64>().sqrt();
        let nb: f64 = other.coeffs.iter().map(|b| b * b).sum::<f64>().sqrt();
        (dot / (na * nb)).abs()
    }
}

/// Coefficients of `l1(x,y)·l2(x,y)`.
pub(crate) fn line_product(l1: &LineForm, l2: &LineForm) -> [f64; 6] {
    let [a1, b1, c1] = l1.coefficients();
    let [a2, b2, c2] = l2.coefficients();
    [a1 * a2, a1 * b2 + b1 * a2, b1 * b2, a1 * c2 + c1 * a2, b1 * c2 + c1 * b2, c1 * c2]
}

impl fmt::Display for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e, g] = self.coeffs;
        write!(f, "{a}x² + {b}xy + {c}y² + {d}x + {e}y + {g} = 0")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_circle() -> Conic {
        Conic::new([1.0, 0.0, 1.0, 0.0, 0.0, -1.0]).unwrap()
    }

    fn frame_parabola() -> Conic {
        Conic::new([1.0, 0.0, 0.0, -0.6, -1.6, 0.73]).unwrap()
    }

    const Z: Point = Point::new(0.0, 0.45625);
    const V: Point = Point::new(1.0, 0.70625);

    #[test]
    fn normalization() {
        let u = Conic::new([-2.0, 0.0, -2.0, 0.0, 0.0, 2.0]).unwrap();
        assert_eq!(u.coefficients(), [1.0, 0.0, 1.0, 0.0, 0.0, -1.0]);
        let u = Conic::new([0.5, 0.0, 0.0, -4.0, 1.0, 0.0]).unwrap();
        assert_eq!(u.coefficients(), [-0.125, 0.0, 0.0, 1.0, -0.25, 0.0]);
        assert_eq!(Conic::new([0.0; 6]), Err(Error::ZeroConic));
    }

    #[test]
    fn eval_examples() {
        assert!(frame_parabola().eval(Z).abs() < 1e-15);
        assert_eq!(unit_circle().eval(Point::new(1.0, 0.0)), 0.0);
        assert_eq!(unit_circle().eval(Point::new(2.0, 0.0)), 3.0);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(unit_circle().classify(), ConicClass::Ellipse);
        assert_eq!(frame_parabola().classify(), ConicClass::Parabola);
        let xy = Conic::new([0.0, 1.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(xy.classify(), ConicClass::DegenerateLines);
        let hyp = Conic::new([1.0, 0.0, -1.0, 0.0, 0.0, -1.0]).unwrap();
        assert_eq!(hyp.classify(), ConicClass::Hyperbola);
        let point = Conic::new([1.0, 0.0, 1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(point.classify(), ConicClass::DegeneratePoint);
        let empty = Conic::new([1.0, 0.0, 1.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(empty.classify(), ConicClass::Empty);
        let parallel = Conic::new([1.0, 0.0, 0.0, 0.0, 0.0, -1.0]).unwrap();
        assert_eq!(parallel.classify(), ConicClass::DegenerateLines);
        let imaginary_parallel = Conic::new([1.0, 0.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(imaginary_parallel.classify(), ConicClass::Empty);
    }

    #[test]
    fn tangent_examples() {
        let t = unit_circle().tangent_line_at(Point::new(1.0, 0.0)).unwrap();
        assert!(t.max_coeff_diff(&LineForm::vertical(1.0)) < 1e-15);

        // Tangent at Z is the perpendicular bisector of AB for A = (0.3, 0.8).
        let t = frame_parabola().tangent_line_at(Z).unwrap();
        let bisector = crate::geom::perpendicular_bisector(Point::ORIGIN, Point::new(0.3, 0.8)).unwrap();
        assert!(t.max_coeff_diff(&bisector) < 1e-12);

        assert_eq!(unit_circle().tangent_line_at(Point::new(2.0, 0.0)), Err(Error::NotOnConic));
        let xy = Conic::new([0.0, 1.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(xy.tangent_line_at(Point::ORIGIN), Err(Error::SingularPoint));
    }

    #[test]
    fn polar_examples() {
        let o = Point::new(0.5, 0.26875);
        let polar = frame_parabola().polar_line(o).unwrap();
        assert!(polar.eval(Z).abs() < 1e-12);
        assert!(polar.eval(V).abs() < 1e-12);

        let polar = unit_circle().polar_line(Point::new(2.0, 0.0)).unwrap();
        assert!(polar.max_coeff_diff(&LineForm::vertical(0.5)) < 1e-15);

        assert_eq!(unit_circle().polar_line(Point::ORIGIN), Err(Error::ZeroPolar));
    }

    #[test]
    fn center_examples() {
        assert!(unit_circle().center().unwrap().approx_eq(Point::ORIGIN, 1e-15));
        assert_eq!(frame_parabola().center(), Err(Error::NotCentral));
        let shifted = Conic::new([1.0, 0.0, 4.0, -2.0, 8.0, 1.0]).unwrap();
        assert!(shifted.center().unwrap().approx_eq(Point::new(1.0, -1.0), 1e-12));
    }

    #[test]
    fn five_point_fit_recovers_circle() {
        let pts = [0.1, 1.2, 2.5, 3.7, 5.0].map(|t: f64| Point::new(t.cos(), t.sin()));
        let fit = Conic::from_five_points(&pts).unwrap();
        assert!(fit.max_coeff_diff(&unit_circle()) < 1e-12);
        for p in pts {
            assert!(fit.residual(p) < 1e-12);
        }
    }

    #[test]
    fn five_point_fit_rank_deficient() {
        let pts = [
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(3.0, 0.0),
            Point::new(1.0, 1.0),
        ];
        assert_eq!(Conic::from_five_points(&pts), Err(Error::RankDeficient));
    }

    #[test]
    fn line_intersection_examples() {
        let hits = unit_circle().line_intersections(&LineForm::x_axis()).unwrap();
        assert_eq!(hits.len(), 2);
        assert!(hits[0].approx_eq(Point::new(-1.0, 0.0), 1e-15));
        assert!(hits[1].approx_eq(Point::new(1.0, 0.0), 1e-15));

        let zv = LineForm::through(Z, V).unwrap();
        let hits = frame_parabola().line_intersections(&zv).unwrap();
        assert_eq!(hits.len(), 2);
        assert!(hits[0].approx_eq(Z, 1e-12));
        assert!(hits[1].approx_eq(V, 1e-12));

        let xy = Conic::new([0.0, 1.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(xy.line_intersections(&LineForm::vertical(0.0)), Err(Error::LineOnConic));

        let tangent = unit_circle().line_intersections(&LineForm::new(0.0, 1.0, -1.0).unwrap()).unwrap();
        assert_eq!(tangent.len(), 1);
    }
}
