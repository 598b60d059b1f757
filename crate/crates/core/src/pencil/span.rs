use std::fmt;

use serde::{Deserialize, Serialize};

use super::Pencil;
use crate::cevian::{exponent_of_location, FootFamily};
use crate::error::{Error, Result};
use crate::geom::Point;
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpanFamily {
    /// Both feet internal or both external.
    SameSide,
    /// One internal and one external foot.
    Mixed,
}

impl fmt::Display for SpanFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpanFamily::SameSide => "SameSide",
            SpanFamily::Mixed => "Mixed",
        })
    }
}

/// The exponent gap between the two feet cut out by a point's circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpanResult {
    pub value: f64,
    pub family: SpanFamily,
    pub exponents: (f64, f64),
    pub feet: (FootFamily, FootFamily),
}

impl SpanResult {
    /// Equal spans of the same family, compared relatively.
    pub fn matches(&self, other: &SpanResult) -> bool {
        self.family == other.family && spans_equal(self.value, other.value)
    }
}

pub(crate) fn spans_equal(a: f64, b: f64) -> bool {
    (a - b).abs() <= tol::SPAN_REL * a.max(b)
}

impl Pencil {
    /// Span of the member through `e`, recovered from where the circle
    /// centered at `e` through `A` meets line BC.
    pub fn span_of(&self, e: Point) -> Result<SpanResult> {
        let cut = self.circle_cut(e)?;
        match cut.hits.len() {
            0 => return Err(Error::InsideParabola),
            1 => return Err(Error::OnParabolaTangent),
            _ => {}
        }
        if cut.hits.iter().any(|h| h.at_vertex) {
            return Err(Error::HitAtVertex);
        }
        let (f1, k1) = exponent_of_location(&self.frame, cut.hits[0].point.x)?;
        let (f2, k2) = exponent_of_location(&self.frame, cut.hits[1].point.x)?;
        let family = if f1 == f2 { SpanFamily::SameSide } else { SpanFamily::Mixed };
        Ok(SpanResult { value: (k1 - k2).abs(), family, exponents: (k1, k2), feet: (f1, f2) })
    }
}
