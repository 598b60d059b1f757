//! Exact replay of the closed forms over the rationals.
//!
//! With rational apex coordinates the squared side lengths `b²`, `c²` are
//! rational, and so is every quantity below as long as the exponents are even.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geom::TriangleFrame;

/// Identities that can be decided exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactIdentity {
    /// Circumcenter of `A, M(k), M(k+t)` on the same-side conic of span `t`.
    InternalMembership { k: i64, t: i64 },
    /// Circumcenter of `A, M'(k), M'(k+t)` on the same-side conic of span `t`.
    ExternalMembership { k: i64, t: i64 },
    /// Circumcenter of `A, M'(k), M(k+t)` on the mixed conic of span `t`.
    MixedMembership { k: i64, t: i64 },
    /// `Z` on the same-side conic of span `t`.
    ContactZ { t: i64 },
    /// `V` on the same-side conic of span `t`.
    ContactV { t: i64 },
    /// The same-side conic of span `t` touches the bisector of AB at `Z`.
    TangentAtZ { t: i64 },
    /// The same-side conic of span `t` touches the bisector of AC at `V`.
    TangentAtV { t: i64 },
}

/// Canonical frame with a rational apex.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFrame {
    pub x_a: BigRational,
    pub y_a: BigRational,
}

impl RationalFrame {
    pub fn new(x_a: BigRational, y_a: BigRational) -> Result<Self> {
        if y_a <= BigRational::zero() {
            return Err(Error::DegenerateTriangle);
        }
        Ok(RationalFrame { x_a, y_a })
    }

    /// From strings such as `"3/10"` or `"-2"`.
    pub fn parse(x_a: &str, y_a: &str) -> Result<Self> {
        let parse = |s: &str| {
            BigRational::from_str(s.trim()).map_err(|_| Error::InvalidConfig(format!("not a rational number: {s}")))
        };
        Self::new(parse(x_a)?, parse(y_a)?)
    }

    pub fn from_ratios(x: (i64, i64), y: (i64, i64)) -> Result<Self> {
        Self::new(ratio(x.0, x.1), ratio(y.0, y.1))
    }

    pub fn to_frame(&self) -> Result<TriangleFrame> {
        let x = self.x_a.to_f64().ok_or(Error::NonFinite)?;
        let y = self.y_a.to_f64().ok_or(Error::NonFinite)?;
        TriangleFrame::from_apex(x, y)
    }

    /// `|AB|²`.
    fn c2(&self) -> BigRational {
        &self.x_a * &self.x_a + &self.y_a * &self.y_a
    }

    /// `|AC|²`.
    fn b2(&self) -> BigRational {
        let dx = BigRational::one() - &self.x_a;
        &dx * &dx + &self.y_a * &self.y_a
    }
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `len^k` from `len²`, for even `k`.
fn even_power(square: &BigRational, k: i64) -> Result<BigRational> {
    if k % 2 != 0 {
        return Err(Error::NotRationalizable(format!("odd exponent {k}")));
    }
    let half = i32::try_from(k / 2).map_err(|_| Error::ExponentOutOfRange(k as f64))?;
    Ok(square.pow(half))
}

struct Exact<'a> {
    frame: &'a RationalFrame,
    b2: BigRational,
    c2: BigRational,
}

impl<'a> Exact<'a> {
    fn new(frame: &'a RationalFrame) -> Self {
        Exact { frame, b2: frame.b2(), c2: frame.c2() }
    }

    /// x of the internal foot, `c^k / (c^k + b^k)`.
    fn m(&self, k: i64) -> Result<BigRational> {
        let (ck, bk) = (even_power(&self.c2, k)?, even_power(&self.b2, k)?);
        Ok(&ck / (&ck + &bk))
    }

    /// x of the external foot, `c^k / (c^k - b^k)`.
    fn m_prime(&self, k: i64) -> Result<BigRational> {
        if k == 0 {
            return Err(Error::ZeroExponent);
        }
        let (ck, bk) = (even_power(&self.c2, k)?, even_power(&self.b2, k)?);
        let den = &ck - &bk;
        if den.is_zero() {
            return Err(Error::IsoscelesExcluded);
        }
        Ok(&ck / den)
    }

    /// Center of the circle through `A`, `(m, 0)` and `(n, 0)`; for `m = n`
    /// the circle touches BC there.
    fn circumcenter(&self, m: &BigRational, n: &BigRational) -> (BigRational, BigRational) {
        let (xa, ya) = (&self.frame.x_a, &self.frame.y_a);
        let x = (m + n) / int(2);
        // |O - A|² = |O - (m, 0)|²
        let y = (int(2) * &x * (m - xa) + &self.c2 - m * m) / (int(2) * ya);
        (x, y)
    }

    /// The span-`t` conic, written out term by term with `p = b^t` and
    /// `l = ±c^t` (minus for the mixed family).
    fn conic(&self, t: i64, mixed: bool) -> Result<ExactConic> {
        let p = even_power(&self.b2, t)?;
        let mut l = even_power(&self.c2, t)?;
        if mixed {
            l = -l;
        }
        let (xa, ya) = (self.frame.x_a.clone(), self.frame.y_a.clone());
        let c2 = self.c2.clone();
        let d = (&p - &l) * (&p - &l);
        let s = (&p + &l) * (&p + &l);
        let g = int(2) * &xa - int(1);
        Ok(ExactConic {
            xx: &d * &g * &g - &s,
            xy: &ya * &d * (int(8) * &xa - int(4)),
            yy: int(4) * &ya * &ya * &d,
            x: -(int(2) * &c2 * &d * &g) + int(2) * &xa * &s,
            y: -(int(2) * &ya * (int(2) * &c2 * &d - &s)),
            one: &c2 * (&c2 * &d - &s),
        })
    }

    fn z(&self) -> (BigRational, BigRational) {
        (int(0), &self.c2 / (int(2) * &self.frame.y_a))
    }

    fn v(&self) -> (BigRational, BigRational) {
        (int(1), &self.b2 / (int(2) * &self.frame.y_a))
    }
}

struct ExactConic {
    xx: BigRational,
    xy: BigRational,
    yy: BigRational,
    x: BigRational,
    y: BigRational,
    one: BigRational,
}

impl ExactConic {
    fn eval(&self, (x, y): &(BigRational, BigRational)) -> BigRational {
        &self.xx * x * x + &self.xy * x * y + &self.yy * y * y + &self.x * x + &self.y * y + &self.one
    }

    fn gradient(&self, (x, y): &(BigRational, BigRational)) -> (BigRational, BigRational) {
        (int(2) * &self.xx * x + &self.xy * y + &self.x, &self.xy * x + int(2) * &self.yy * y + &self.y)
    }

    fn is_zero(&self) -> bool {
        [&self.xx, &self.xy, &self.yy, &self.x, &self.y, &self.one].iter().all(|c| c.is_zero())
    }
}

/// Decides `identity` exactly on `frame`.
pub fn exact_mode_evaluate(identity: ExactIdentity, frame: &RationalFrame) -> Result<bool> {
    let ex = Exact::new(frame);
    if ex.b2 == ex.c2 {
        return Err(Error::IsoscelesExcluded);
    }
    let on = |conic: ExactConic, point: (BigRational, BigRational)| -> Result<bool> {
        if conic.is_zero() {
            return Err(Error::ZeroConic);
        }
        Ok(conic.eval(&point).is_zero())
    };
    match identity {
        ExactIdentity::InternalMembership { k, t } => {
            on(ex.conic(t, false)?, ex.circumcenter(&ex.m(k)?, &ex.m(k + t)?))
        }
        ExactIdentity::ExternalMembership { k, t } => {
            on(ex.conic(t, false)?, ex.circumcenter(&ex.m_prime(k)?, &ex.m_prime(k + t)?))
        }
        ExactIdentity::MixedMembership { k, t } => {
            if t == 0 {
                return Err(Error::ZeroSpanMixed);
            }
            on(ex.conic(t, true)?, ex.circumcenter(&ex.m_prime(k)?, &ex.m(k + t)?))
        }
        ExactIdentity::ContactZ { t } => on(ex.conic(t, false)?, ex.z()),
        ExactIdentity::ContactV { t } => on(ex.conic(t, false)?, ex.v()),
        ExactIdentity::TangentAtZ { t } | ExactIdentity::TangentAtV { t } => {
            let conic = ex.conic(t, false)?;
            let (point, normal) = match identity {
                ExactIdentity::TangentAtZ { .. } => (ex.z(), (frame.x_a.clone(), frame.y_a.clone())),
                _ => (ex.v(), (&frame.x_a - int(1), frame.y_a.clone())),
            };
            if !conic.eval(&point).is_zero() {
                return Ok(false);
            }
            let (gx, gy) = conic.gradient(&point);
            if gx.is_zero() && gy.is_zero() {
                return Err(Error::SingularPoint);
            }
            // The gradient is normal to the tangent; the side's normal is A - B or A - C.
            Ok((gx * normal.1 - gy * normal.0).is_zero())
        }
    }
}
