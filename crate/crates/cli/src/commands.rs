//! The subcommands, each producing key=value text.

use std::fmt::Write;
use std::path::Path;

use conic_pencil::cevian::{exponent_of_location, foot};
use conic_pencil::pencil::{conic_mixed, conic_same_side};
use conic_pencil::verify::{run_all, SampleConfig};
use conic_pencil::{Error, FootFamily, Pencil, Point, SpanFamily, TriangleFrame};

use crate::error::{CliError, CliResult};
use crate::format::{g12, list, point};
use crate::input::read_file;

/// Lines describing the normalization applied to the input triangle.
pub fn frame_header(frame: &TriangleFrame) -> String {
    let mut s = String::new();
    writeln!(s, "canonical.a={}", point(frame.a())).unwrap();
    writeln!(s, "canonical.b_len={}", g12(frame.b_len())).unwrap();
    writeln!(s, "canonical.c_len={}", g12(frame.c_len())).unwrap();
    writeln!(s, "canonical.scale={}", g12(frame.to_canonical().scale())).unwrap();
    s
}

fn to_canonical(frame: &TriangleFrame, user: Point) -> Point {
    frame.to_canonical().apply(user)
}

fn foot_name(f: FootFamily) -> &'static str {
    match f {
        FootFamily::Internal => "M",
        FootFamily::External => "Mprime",
    }
}

pub fn sequence(frame: &TriangleFrame, family: FootFamily, exponents: &[f64]) -> CliResult<String> {
    let mut s = frame_header(frame);
    writeln!(s, "family={}", foot_name(family)).unwrap();
    writeln!(s, "rows={}", exponents.len()).unwrap();
    for &k in exponents {
        let f = foot(frame, family, k)?;
        let user = frame.from_canonical().apply(f.location);
        writeln!(s, "exponent={} x={} user={}", g12(k), g12(f.location.x), point(user)).unwrap();
    }
    Ok(s)
}

pub fn conic(frame: &TriangleFrame, t: f64, family: SpanFamily) -> CliResult<String> {
    let c = match family {
        SpanFamily::SameSide => conic_same_side(frame, t)?,
        SpanFamily::Mixed => conic_mixed(frame, t)?,
    };
    let mut s = frame_header(frame);
    writeln!(s, "family={family}").unwrap();
    writeln!(s, "t={}", g12(t)).unwrap();
    writeln!(s, "coefficients={}", list(&c.coefficients())).unwrap();
    writeln!(s, "class={}", c.classify()).unwrap();
    Ok(s)
}

pub fn classify(frame: &TriangleFrame, user: Point) -> CliResult<String> {
    let pencil = Pencil::new(frame)?;
    let p = to_canonical(frame, user);
    let region = pencil.classify_region(p);
    let mut s = frame_header(frame);
    writeln!(s, "point={}", point(p)).unwrap();
    writeln!(s, "region={region}").unwrap();
    match pencil.classify_member(p) {
        Ok(class) => writeln!(s, "member={class}").unwrap(),
        Err(Error::OnCriticalLine) => writeln!(s, "member=unspecified").unwrap(),
        Err(e) => return Err(e.into()),
    }
    if let Ok(lambda) = pencil.pencil_parameter(p) {
        writeln!(s, "lambda={}", g12(lambda)).unwrap();
    }
    Ok(s)
}

pub fn span(frame: &TriangleFrame, user: Point) -> CliResult<String> {
    let pencil = Pencil::new(frame)?;
    let p = to_canonical(frame, user);
    let mut s = frame_header(frame);
    writeln!(s, "point={}", point(p)).unwrap();
    match pencil.span_of(p) {
        Ok(r) => {
            writeln!(s, "span={}", g12(r.value)).unwrap();
            writeln!(s, "family={}", r.family).unwrap();
            writeln!(s, "feet={},{}", foot_name(r.feet.0), foot_name(r.feet.1)).unwrap();
            writeln!(s, "exponents={}", list(&[r.exponents.0, r.exponents.1])).unwrap();
        }
        Err(Error::OnParabolaTangent) => {
            // The circle touches BC once: both feet coincide.
            let (family, k) = exponent_of_location(frame, p.x)?;
            writeln!(s, "span=0").unwrap();
            writeln!(s, "family={}", SpanFamily::SameSide).unwrap();
            writeln!(s, "feet={0},{0}", foot_name(family)).unwrap();
            writeln!(s, "exponents={}", list(&[k, k])).unwrap();
        }
        Err(e) => return Err(e.into()),
    }
    Ok(s)
}

pub fn same_conic(frame: &TriangleFrame, x: Point, y: Point) -> CliResult<String> {
    let pencil = Pencil::new(frame)?;
    let (px, py) = (to_canonical(frame, x), to_canonical(frame, y));
    let r = pencil.same_conic(px, py)?;
    let mut s = frame_header(frame);
    writeln!(s, "points={};{}", point(px), point(py)).unwrap();
    writeln!(s, "decision={}", r.decision).unwrap();
    writeln!(s, "case={}", r.case).unwrap();
    writeln!(s, "regions={},{}", r.regions.0, r.regions.1).unwrap();
    if let Some((a, b)) = r.compared {
        writeln!(s, "compared={};{}", point(a), point(b)).unwrap();
    }
    if let Some((a, b)) = r.spans {
        writeln!(s, "spans={}", list(&[a.value, b.value])).unwrap();
        writeln!(s, "span_families={},{}", a.family, b.family).unwrap();
    }
    if let Some((a, b)) = r.ratio_products {
        writeln!(s, "ratio_products={}", list(&[a, b])).unwrap();
    }
    writeln!(s, "lambdas={}", list(&[r.lambdas.0, r.lambdas.1])).unwrap();
    writeln!(s, "oracle={}", r.oracle).unwrap();
    writeln!(s, "agrees={}", r.agrees_with_oracle()).unwrap();
    Ok(s)
}

pub fn load_config(path: Option<&Path>, seed: Option<u64>) -> CliResult<SampleConfig> {
    let mut cfg = match path {
        Some(p) => toml::from_str::<SampleConfig>(&read_file(p)?)
            .map_err(|e| CliError::usage("InvalidConfig", e.message().to_string()))?,
        None => SampleConfig::default(),
    };
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Runs every check. The report goes to `out` when given, otherwise to the
/// returned text; a failing run is reported through the error.
pub fn verify(cfg: &SampleConfig, out: Option<&Path>) -> (String, Option<CliError>) {
    let report = match run_all(cfg) {
        Ok(r) => r,
        Err(e) => return (String::new(), Some(e.into())),
    };
    let text = report.to_text();
    let mut s = String::new();
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                return (s, Some(CliError::Io(format!("cannot write {}: {e}", path.display()))));
            }
            writeln!(s, "report={}", path.display()).unwrap();
            for c in &report.checks {
                let status = if c.passed() { "pass" } else { "fail" };
                writeln!(s, "check={} status={status} trials={} failures={}", c.name, c.trials, c.failures).unwrap();
            }
            writeln!(s, "status={}", if report.all_passed() { "pass" } else { "fail" }).unwrap();
        }
        None => s = text,
    }
    if report.all_passed() {
        (s, None)
    } else {
        let failing: Vec<&str> = report.checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect();
        (s, Some(CliError::Verification(format!("failing checks: {}", failing.join(",")))))
    }
}
