//! Number formatting for the key=value output.

use conic_pencil::Point;

/// `%.12g`-style: 12 significant digits, trailing zeros dropped.
pub fn g12(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{v:.11e}");
    let (mantissa, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim(format!("{v:.decimals$}"))
    } else {
        format!("{}e{}", trim(mantissa.to_string()), exp)
    }
}

fn trim(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".into()
    } else {
        t.to_string()
    }
}

pub fn point(p: Point) -> String {
    format!("{},{}", g12(p.x), g12(p.y))
}

pub fn list(vs: &[f64]) -> String {
    vs.iter().map(|v| g12(*v)).collect::<Vec<_>>().join(",")
}
