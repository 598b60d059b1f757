//! Triangle, point and range arguments.

use std::path::Path;

use conic_pencil::geom::canonical_frame;
use conic_pencil::{Point, TriangleFrame};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

/// Raw vertices in user coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangleInput {
    pub a: [f64; 2],
    #[serde(default = "default_b")]
    pub b: [f64; 2],
    #[serde(default = "default_c")]
    pub c: [f64; 2],
}

fn default_b() -> [f64; 2] {
    [0.0, 0.0]
}

fn default_c() -> [f64; 2] {
    [1.0, 0.0]
}

impl TriangleInput {
    pub fn from_toml(text: &str) -> CliResult<Self> {
        let t: TriangleInput =
            toml::from_str(text).map_err(|e| CliError::usage("BadTriangleFile", e.message().to_string()))?;
        t.check_finite()?;
        Ok(t)
    }

    pub fn from_file(path: &Path) -> CliResult<Self> {
        let text = read_file(path)?;
        Self::from_toml(&text)
    }

    fn check_finite(&self) -> CliResult<()> {
        if [self.a, self.b, self.c].iter().flatten().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(CliError::usage("NonFinite", "triangle coordinates must be finite"))
        }
    }

    pub fn points(&self) -> (Point, Point, Point) {
        let p = |v: [f64; 2]| Point::new(v[0], v[1]);
        (p(self.a), p(self.b), p(self.c))
    }

    pub fn frame(&self) -> CliResult<TriangleFrame> {
        self.check_finite()?;
        let (a, b, c) = self.points();
        Ok(canonical_frame(a, b, c)?)
    }
}

pub fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::usage("UnreadableFile", format!("cannot read {}: {e}", path.display())))
}

/// `X,Y`
pub fn parse_point(s: &str) -> Result<Point, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected X,Y, got {s:?}"))?;
    let x: f64 = x.trim().parse().map_err(|_| format!("bad coordinate {x:?}"))?;
    let y: f64 = y.trim().parse().map_err(|_| format!("bad coordinate {y:?}"))?;
    if !(x.is_finite() && y.is_finite()) {
        return Err("coordinates must be finite".into());
    }
    Ok(Point::new(x, y))
}

/// Inclusive exponent range `lo:hi:step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpRange {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl ExpRange {
    pub const MAX_VALUES: usize = 100_000;

    pub fn values(&self) -> Vec<f64> {
        let n = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize + 1;
        (0..n).map(|i| self.lo + i as f64 * self.step).collect()
    }
}

impl std::str::FromStr for ExpRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, step] = parts[..] else {
            return Err(format!("expected lo:hi:step, got {s:?}"));
        };
        let num = |v: &str| v.trim().parse::<f64>().map_err(|_| format!("bad number {v:?}"));
        let r = ExpRange { lo: num(lo)?, hi: num(hi)?, step: num(step)? };
        if !(r.lo.is_finite() && r.hi.is_finite() && r.step.is_finite()) {
            return Err("range bounds must be finite".into());
        }
        if r.step <= 0.0 || r.hi < r.lo {
            return Err("need lo <= hi and step > 0".into());
        }
        if (r.hi - r.lo) / r.step >= Self::MAX_VALUES as f64 {
            return Err(format!("range has more than {} values", Self::MAX_VALUES));
        }
        Ok(r)
    }
}
