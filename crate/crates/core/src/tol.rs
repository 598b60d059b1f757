//! Numeric thresholds shared by the geometric predicates.
//!
//! The underlying constructions are exact dichotomies (on/off a line, inside
//! or outside a parabola); these bands decide them in floating point.

/// Collinearity: |signed area| below this times (max pairwise distance)².
pub const COLLINEAR_REL: f64 = 1e-12;

/// Minimum |b - c| for pencil constructions.
pub const ISOSCELES: f64 = 1e-9;

/// Largest |x * ln(c/b)| accepted by the foot maps.
pub const MAX_LOG_RATIO: f64 = 700.0;

/// Distance band for "on a line" / "on the parabola" / tangency decisions.
pub const BOUNDARY: f64 = 1e-9;

/// Distance from B or C under which a foot is reported as the vertex itself.
pub const AT_VERTEX: f64 = 1e-12;

/// Sign pivot for line and conic normalization.
pub const SIGN_PIVOT: f64 = 1e-12;

/// |B² - 4AC| band (normalized coefficients) classifying a parabola.
pub const DISCRIMINANT: f64 = 1e-10;

/// Smallest over largest singular value of the form's 3×3 matrix under
/// which a conic counts as degenerate.
pub const RANK: f64 = 1e-10;

/// Normalized residual for "point lies on conic" preconditions.
pub const ON_CONIC: f64 = 1e-9;

/// Relative smallest-singular-value threshold in the five-point fit.
pub const FIT_SINGULAR: f64 = 1e-8;

/// Sine of the angle under which two directions count as parallel.
pub const PARALLEL: f64 = 1e-9;

/// Relative tolerance for span equality.
pub const SPAN_REL: f64 = 1e-7;

/// Relative tolerance for pencil-parameter equality.
pub const LAMBDA_REL: f64 = 1e-7;
