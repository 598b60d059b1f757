//! SVG plots of the pencil in the canonical frame.

use std::collections::BTreeSet;
use std::fmt::Write;

use clap::ValueEnum;
use conic_pencil::cevian::{m_point, m_prime_point};
use conic_pencil::pencil::{conic_mixed, conic_same_side, family_circumcenter, CircumcenterFamily};
use conic_pencil::{Conic, LineForm, Pencil, Point, SpanFamily, TriangleFrame};

use crate::error::{CliError, CliResult};
use crate::format::g12;
use crate::input::ExpRange;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum Layer {
    Triangle,
    M,
    Mprime,
    Centers,
    Contacts,
    Sides,
    Critical,
    Parabola,
}

impl Layer {
    pub const DEFAULT: [Layer; 4] = [Layer::Triangle, Layer::Contacts, Layer::Sides, Layer::Critical];
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    pub spans: Vec<f64>,
    pub family: SpanFamily,
    /// Exponents of the feet and circumcenters drawn as points.
    pub exponents: ExpRange,
    pub layers: BTreeSet<Layer>,
    pub width: u32,
    pub height: u32,
}

impl RenderSpec {
    pub const MAX_CANVAS: u32 = 20_000;

    pub fn validate(&self) -> CliResult<()> {
        if self.width == 0 || self.height == 0 {
            return Err(CliError::usage("InvalidCanvas", "canvas size must be positive"));
        }
        if self.width > Self::MAX_CANVAS || self.height > Self::MAX_CANVAS {
            return Err(CliError::usage("InvalidCanvas", format!("canvas side above {}", Self::MAX_CANVAS)));
        }
        if self.spans.is_empty() && self.layers.is_empty() {
            return Err(CliError::usage("EmptySelection", "nothing to draw"));
        }
        if self.spans.iter().any(|t| !t.is_finite()) {
            return Err(CliError::usage("NonFinite", "spans must be finite"));
        }
        Ok(())
    }
}

/// World rectangle shown on the canvas.
#[derive(Debug, Clone, Copy)]
struct Window {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    width: f64,
    height: f64,
}

impl Window {
    fn new(width: u32, height: u32) -> Self {
        let (x0, x1) = (-1.5, 2.5);
        let y0 = -1.0;
        let y1 = y0 + (x1 - x0) * height as f64 / width as f64;
        Window { x0, x1, y0, y1, width: width as f64, height: height as f64 }
    }

    fn px(&self, p: Point) -> (f64, f64) {
        let u = (p.x - self.x0) / (self.x1 - self.x0) * self.width;
        let v = self.height - (p.y - self.y0) / (self.y1 - self.y0) * self.height;
        (u, v)
    }

    /// The window grown by half its size on every side; curves are cut there.
    fn contains_loose(&self, p: Point) -> bool {
        let (mx, my) = ((self.x1 - self.x0) * 0.5, (self.y1 - self.y0) * 0.5);
        p.is_finite() && p.x >= self.x0 - mx && p.x <= self.x1 + mx && p.y >= self.y0 - my && p.y <= self.y1 + my
    }

    fn contains(&self, p: Point) -> bool {
        p.x >= self.x0 && p.x <= self.x1 && p.y >= self.y0 && p.y <= self.y1
    }

    fn clip_line(&self, l: &LineForm) -> Option<(Point, Point)> {
        let edges = [
            LineForm::vertical(self.x0),
            LineForm::vertical(self.x1),
            LineForm::new(0.0, 1.0, -self.y0).ok()?,
            LineForm::new(0.0, 1.0, -self.y1).ok()?,
        ];
        let eps = 1e-9 * (self.x1 - self.x0);
        let mut pts: Vec<Point> = edges
            .iter()
            .filter_map(|e| l.intersect(e))
            .filter(|p| p.x >= self.x0 - eps && p.x <= self.x1 + eps && p.y >= self.y0 - eps && p.y <= self.y1 + eps)
            .collect();
        let dir = l.direction();
        pts.sort_by(|a, b| a.dot(dir).total_cmp(&b.dot(dir)));
        Some((*pts.first()?, *pts.last()?))
    }
}

const GRID: usize = 400;
const RUN_SAMPLES: usize = 240;

/// Polylines tracing `conic` inside the (loose) window.
///
/// The quadratic is solved for `y` along a grid of `x`; the ends of each
/// interval with real roots are located by bisection, where the two branches
/// join at a vertical tangent. Samples cluster toward those ends.
fn conic_polylines(conic: &Conic, w: &Window) -> Vec<Vec<Point>> {
    let [a, b, c, d, e, f] = conic.coefficients();
    let (lo, hi) = (w.x0 - 0.5 * (w.x1 - w.x0), w.x1 + 0.5 * (w.x1 - w.x0));
    let xs = |n: usize| (0..=n).map(move |i| lo + (hi - lo) * i as f64 / n as f64);
    let mut lines = Vec::new();

    if c.abs() <= 1e-12 {
        // Linear in y: one branch, broken where the denominator vanishes.
        let pts = xs(GRID * 4).map(|x| Point::new(x, -(a * x * x + d * x + f) / (b * x + e))).collect();
        lines.push(pts);
        return split_outside(lines, w);
    }

    let disc = |x: f64| {
        let qb = b * x + e;
        qb * qb - 4.0 * c * (a * x * x + d * x + f)
    };
    let root = |x: f64, sign: f64| {
        let qb = b * x + e;
        Point::new(x, (-qb + sign * disc(x).max(0.0).sqrt()) / (2.0 * c))
    };
    let edge = |mut inside: f64, mut outside: f64| {
        for _ in 0..80 {
            let mid = 0.5 * (inside + outside);
            if disc(mid) >= 0.0 {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        inside
    };

    // Intervals of real roots, each end flagged when it is a vertical tangent.
    let grid: Vec<f64> = xs(GRID).collect();
    let mut runs: Vec<(f64, bool, f64, bool)> = Vec::new();
    let mut start: Option<(f64, bool)> = None;
    for (i, &x) in grid.iter().enumerate() {
        let real = disc(x) >= 0.0;
        match (start, real) {
            (None, true) if i == 0 => start = Some((x, false)),
            (None, true) => start = Some((edge(x, grid[i - 1]), true)),
            (Some((s, st)), false) => {
                runs.push((s, st, edge(grid[i - 1], x), true));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((s, st)) = start {
        runs.push((s, st, hi, false));
    }

    for (r0, t0, r1, t1) in runs {
        let at = |j: usize| r0 + (r1 - r0) * (1.0 - (std::f64::consts::PI * j as f64 / RUN_SAMPLES as f64).cos()) / 2.0;
        let lower: Vec<Point> = (0..=RUN_SAMPLES).map(|j| root(at(j), -1.0)).collect();
        let upper: Vec<Point> = (0..=RUN_SAMPLES).map(|j| root(at(j), 1.0)).collect();
        match (t0, t1) {
            (false, false) => {
                lines.push(lower);
                lines.push(upper);
            }
            (true, _) => {
                let mut l: Vec<Point> = upper.into_iter().rev().collect();
                l.extend(lower);
                if t1 {
                    l.push(l[0]);
                }
                lines.push(l);
            }
            (false, true) => {
                let mut l = lower;
                l.extend(upper.into_iter().rev());
                lines.push(l);
            }
        }
    }
    split_outside(lines, w)
}

fn split_outside(lines: Vec<Vec<Point>>, w: &Window) -> Vec<Vec<Point>> {
    let mut out = Vec::new();
    for line in lines {
        let mut cur = Vec::new();
        for p in line {
            if w.contains_loose(p) {
                cur.push(p);
            } else if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        }
        if cur.len() > 1 {
            out.push(cur);
        }
    }
    out.retain(|l| l.len() > 1);
    out
}

fn path_data(lines: &[Vec<Point>], w: &Window) -> String {
    let mut d = String::new();
    for line in lines {
        for (i, p) in line.iter().enumerate() {
            let (u, v) = w.px(*p);
            let cmd = if i == 0 { 'M' } else { 'L' };
            if !d.is_empty() {
                d.push(' ');
            }
            write!(d, "{cmd}{u:.2},{v:.2}").unwrap();
        }
    }
    d
}

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

pub fn render(frame: &TriangleFrame, spec: &RenderSpec) -> CliResult<String> {
    spec.validate()?;
    let pencil = Pencil::new(frame)?;
    let w = Window::new(spec.width, spec.height);
    let members: Vec<(f64, Conic)> = spec
        .spans
        .iter()
        .map(|&t| {
            let c = match spec.family {
                SpanFamily::SameSide => conic_same_side(frame, t)?,
                SpanFamily::Mixed => conic_mixed(frame, t)?,
            };
            Ok((t, c))
        })
        .collect::<CliResult<_>>()?;

    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{1}" viewBox="0 0 {0} {1}">"#,
        spec.width, spec.height
    )
    .unwrap();
    let a = frame.a();
    writeln!(s, "<desc>canonical frame: B=(0,0) C=(1,0) A=({},{})</desc>", g12(a.x), g12(a.y)).unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();

    let line = |s: &mut String, l: &LineForm, class: &str, style: &str| {
        if let Some((p, q)) = w.clip_line(l) {
            let ((x1, y1), (x2, y2)) = (w.px(p), w.px(q));
            writeln!(s, r#"<line class="{class}" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" {style}/>"#)
                .unwrap();
        }
    };
    let dot = |s: &mut String, p: Point, class: &str, r: f64, fill: &str| {
        if w.contains(p) {
            let (u, v) = w.px(p);
            writeln!(s, r#"<circle class="{class}" cx="{u:.2}" cy="{v:.2}" r="{r}" fill="{fill}"/>"#).unwrap();
        }
    };
    let layer = |l: Layer| spec.layers.contains(&l);

    if layer(Layer::Triangle) {
        line(&mut s, &LineForm::x_axis(), "baseline", r##"stroke="#888" stroke-width="1""##);
        let pts: Vec<String> = [a, frame.b(), frame.c()]
            .iter()
            .map(|p| {
                let (u, v) = w.px(*p);
                format!("{u:.2},{v:.2}")
            })
            .collect();
        writeln!(
            s,
            r#"<polygon class="triangle" points="{}" fill="none" stroke="black" stroke-width="1.5"/>"#,
            pts.join(" ")
        )
        .unwrap();
    }
    if layer(Layer::Sides) {
        let style = r##"stroke="#555" stroke-width="1" stroke-dasharray="4 3""##;
        line(&mut s, pencil.side_p(), "side", style);
        line(&mut s, pencil.side_q(), "side", style);
    }
    if layer(Layer::Critical) {
        line(
            &mut s,
            pencil.critical_line(),
            "critical",
            r##"stroke="#b5651d" stroke-width="1" stroke-dasharray="2 2""##,
        );
    }
    if layer(Layer::Parabola) {
        let d = path_data(&conic_polylines(pencil.parabola(), &w), &w);
        writeln!(s, r##"<path class="parabola" d="{d}" fill="none" stroke="#444" stroke-width="1"/>"##).unwrap();
    }
    for (i, (t, c)) in members.iter().enumerate() {
        let d = path_data(&conic_polylines(c, &w), &w);
        let color = PALETTE[i % PALETTE.len()];
        writeln!(
            s,
            r#"<path class="member" data-span="{}" d="{d}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            g12(*t)
        )
        .unwrap();
    }

    let exps = spec.exponents.values();
    if layer(Layer::M) {
        for &k in &exps {
            if let Ok(f) = m_point(frame, k) {
                dot(&mut s, f.location, "foot-m", 2.5, "black");
            }
        }
    }
    if layer(Layer::Mprime) {
        for &k in &exps {
            if let Ok(f) = m_prime_point(frame, k) {
                dot(&mut s, f.location, "foot-mprime", 2.5, "gray");
            }
        }
    }
    if layer(Layer::Centers) {
        let family = match spec.family {
            SpanFamily::SameSide => CircumcenterFamily::Internal,
            SpanFamily::Mixed => CircumcenterFamily::Mixed,
        };
        for (i, (t, _)) in members.iter().enumerate() {
            for &k in &exps {
                if let Ok(p) = family_circumcenter(frame, family, k, *t) {
                    dot(&mut s, p, "center", 2.0, PALETTE[i % PALETTE.len()]);
                }
            }
        }
    }
    if layer(Layer::Contacts) {
        for (p, name) in [(pencil.z(), "Z"), (pencil.v(), "V")] {
            dot(&mut s, p, "contact", 4.0, "red");
            if w.contains(p) {
                let (u, v) = w.px(p);
                writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="14">{name}</text>"#, u + 6.0, v - 6.0).unwrap();
            }
        }
    }
    writeln!(s, "</svg>").unwrap();
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(spans: Vec<f64>) -> RenderSpec {
        RenderSpec {
            spans,
            family: SpanFamily::SameSide,
            exponents: "-2:2:1".parse().unwrap(),
            layers: Layer::DEFAULT.into_iter().collect(),
            width: 400,
            height: 400,
        }
    }

    #[test]
    fn ellipse_member_is_one_closed_loop() {
        let f = TriangleFrame::from_apex(0.3, 0.8).unwrap();
        let p = Pencil::new(&f).unwrap();
        let ellipse = p.conic_through(Point::new(0.3, 0.6)).unwrap();
        let lines = conic_polylines(&ellipse, &Window::new(400, 400));
        assert_eq!(lines.len(), 1);
        let l = &lines[0];
        assert!(l[0].approx_eq(*l.last().unwrap(), 1e-12));
        for q in l {
            assert!(ellipse.residual(*q) < 1e-6, "{q}");
        }
    }

    #[test]
    fn parabola_traced_on_conic() {
        let f = TriangleFrame::from_apex(0.3, 0.8).unwrap();
        let p = Pencil::new(&f).unwrap();
        let lines = conic_polylines(p.parabola(), &Window::new(400, 400));
        assert_eq!(lines.len(), 1);
        assert!(lines[0].iter().all(|q| p.parabola().residual(*q) < 1e-9));
    }

    #[test]
    fn one_path_per_span() {
        let f = TriangleFrame::from_apex(0.3, 0.8).unwrap();
        let svg = render(&f, &spec(vec![1.0, 2.0, 3.0])).unwrap();
        assert_eq!(svg.matches("<path").count(), 3);
        assert_eq!(svg.matches(r#"class="contact""#).count(), 2);
        assert_eq!(svg, render(&f, &spec(vec![1.0, 2.0, 3.0])).unwrap());
    }

    #[test]
    fn invalid_specs() {
        let f = TriangleFrame::from_apex(0.3, 0.8).unwrap();
        let mut s = spec(vec![1.0]);
        s.width = 0;
        assert_eq!(render(&f, &s).unwrap_err().code(), "InvalidCanvas");
        let mut s = spec(vec![]);
        s.layers.clear();
        assert_eq!(render(&f, &s).unwrap_err().code(), "EmptySelection");
    }
}
