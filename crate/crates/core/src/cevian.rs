//! Generalized cevian feet on side BC.
//!
//! For a real exponent `x` the internal foot divides segment BC in the ratio
//! `(AB/AC)^x`; the external foot divides it externally in the same ratio.
//! `x = 0, 1, 2` give the feet of the median, the angle bisector and the
//! symmedian.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{reflect_line_over_line, reflect_point_over_point, LineForm, Point, TriangleFrame};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FootFamily {
    /// On the closed segment BC.
    Internal,
    /// On line BC outside the segment.
    External,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FootPoint {
    pub family: FootFamily,
    pub exponent: f64,
    pub location: Point,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReflectionStep {
    /// Reflect over the midpoint of BC: exponent `k → -k`.
    NegateIndex,
    /// Negate, then reflect the cevian over the bisector of angle A:
    /// exponent `k → k + 2`.
    IsogonalAdvance,
}

fn scaled_exponent(frame: &TriangleFrame, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::ExponentOutOfRange(x));
    }
    let z = x * frame.log_ratio();
    if z.abs() > tol::MAX_LOG_RATIO {
        return Err(Error::ExponentOutOfRange(x));
    }
    Ok(z)
}

/// Internal foot with `BM : MC = (c/b)^x`, at `c^x / (c^x + b^x)`.
pub fn m_point(frame: &TriangleFrame, x: f64) -> Result<FootPoint> {
    let z = scaled_exponent(frame, x)?;
    let loc = 1.0 / (1.0 + (-z).exp());
    Ok(FootPoint { family: FootFamily::Internal, exponent: x, location: Point::new(loc, 0.0) })
}

/// External foot at `c^x / (c^x - b^x)`.
pub fn m_prime_point(frame: &TriangleFrame, x: f64) -> Result<FootPoint> {
    if x == 0.0 {
        return Err(Error::ZeroExponent);
    }
    if frame.is_isosceles() {
        return Err(Error::IsoscelesExcluded);
    }
    let z = scaled_exponent(frame, x)?;
    let loc = -1.0 / (-z).exp_m1();
    if !loc.is_finite() {
        return Err(Error::ExponentOutOfRange(x));
    }
    Ok(FootPoint { family: FootFamily::External, exponent: x, location: Point::new(loc, 0.0) })
}

/// Inverse of the foot maps: which family and exponent a point of line BC has.
pub fn exponent_of_location(frame: &TriangleFrame, x_coord: f64) -> Result<(FootFamily, f64)> {
    if !x_coord.is_finite() {
        return Err(Error::NonFinite);
    }
    if x_coord.abs() <= tol::AT_VERTEX || (x_coord - 1.0).abs() <= tol::AT_VERTEX {
        return Err(Error::AtVertex);
    }
    if frame.is_isosceles() {
        return Err(Error::IsoscelesExcluded);
    }
    let lr = frame.log_ratio();
    if x_coord > 0.0 && x_coord < 1.0 {
        let log_ratio = x_coord.ln() - (1.0 - x_coord).ln();
        return Ok((FootFamily::Internal, log_ratio / lr));
    }
    let log_ratio = if x_coord > 1.0 { (1.0 / (x_coord - 1.0)).ln_1p() } else { (-1.0 / (1.0 - x_coord)).ln_1p() };
    // Beyond ~1/EPSILON the two distances are indistinguishable: ratio 1.
    if log_ratio.abs() <= f64::EPSILON {
        return Err(Error::ZeroExponentExternal);
    }
    Ok((FootFamily::External, log_ratio / lr))
}

/// Foot of the given family and exponent.
pub fn foot(frame: &TriangleFrame, family: FootFamily, x: f64) -> Result<FootPoint> {
    match family {
        FootFamily::Internal => m_point(frame, x),
        FootFamily::External => m_prime_point(frame, x),
    }
}

/// Builds a new foot from a known one with ruler-style reflections only.
pub fn construct_by_reflection(frame: &TriangleFrame, known: &FootPoint, step: ReflectionStep) -> Result<FootPoint> {
    let median_foot = m_point(frame, 0.0)?.location;
    let negated = FootPoint {
        family: known.family,
        exponent: -known.exponent,
        location: reflect_point_over_point(known.location, median_foot),
    };
    match step {
        ReflectionStep::NegateIndex => Ok(negated),
        ReflectionStep::IsogonalAdvance => {
            let a = frame.a();
            if negated.location.dist(a) == 0.0 {
                return Err(Error::DegenerateTriangle);
            }
            let to_b = (frame.b() - a) * (1.0 / frame.c_len());
            let to_c = (frame.c() - a) * (1.0 / frame.b_len());
            let bisector = LineForm::through_with_direction(a, to_b + to_c)?;
            let cevian = LineForm::through(a, negated.location)?;
            let image = reflect_line_over_line(&cevian, &bisector);
            let hit = image.intersect(&LineForm::x_axis()).ok_or(Error::ParallelAfterReflection)?;
            Ok(FootPoint { family: known.family, exponent: known.exponent + 2.0, location: Point::new(hit.x, 0.0) })
        }
    }
}
