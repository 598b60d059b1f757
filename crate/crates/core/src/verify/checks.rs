use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::exact::{exact_mode_evaluate, ExactIdentity, RationalFrame};
use super::report::CheckReport;
use super::sample::*;
use crate::cevian::{exponent_of_location, m_point, m_prime_point, FootFamily};
use crate::conic::{Conic, ConicClass};
use crate::error::{Error, Result};
use crate::geom::{circumcenter, LineForm, Point, TriangleFrame};
use crate::pencil::{
    conic_mixed, conic_same_side, family_circumcenter, tangent_circle_center, CircumcenterFamily, Decision,
    DecisionCase, Pencil, RegionLabel, SpanFamily,
};

/// Exponents this close to an excluded value are skipped.
const EXCLUDED_BAND: f64 = 1e-3;

/// Sampling window for points, in canonical units.
const BOX_X: (f64, f64) = (-3.0, 4.0);
const BOX_Y: (f64, f64) = (-3.0, 4.0);

const MAX_ATTEMPTS: usize = 20_000;

/// Redraws of a whole input before a trial is skipped.
const DRAW_RETRIES: usize = 16;

fn frame_tag(f: &TriangleFrame) -> String {
    format!("apex=({},{})", f.a().x, f.a().y)
}

fn pencil_of(cfg: &SampleConfig, i: usize) -> (TriangleFrame, Pencil) {
    let f = cfg.frame(i);
    let p = Pencil::new(&f).expect("sampled frames are scalene");
    (f, p)
}

fn random_point(rng: &mut ChaCha8Rng) -> Point {
    Point::new(rng.random_range(BOX_X.0..=BOX_X.1), rng.random_range(BOX_Y.0..=BOX_Y.1))
}

fn sample_where(rng: &mut ChaCha8Rng, mut accept: impl FnMut(Point) -> bool) -> Option<Point> {
    (0..MAX_ATTEMPTS).map(|_| random_point(rng)).find(|p| accept(*p))
}

fn near_excluded(x: f64) -> bool {
    x.abs() < EXCLUDED_BAND
}

/// Exponents at which a family has no circumcenter (an external foot of
/// exponent 0, a mixed pair of span 0).
fn excluded(family: CircumcenterFamily, k: f64, t: f64) -> bool {
    match family {
        CircumcenterFamily::Internal => false,
        CircumcenterFamily::External => near_excluded(k) || near_excluded(k + t),
        CircumcenterFamily::Mixed => near_excluded(k) || near_excluded(t),
    }
}

/// The pair `exponent_pair(i, j)`, redrawn from the same stream while the
/// family excludes it.
fn admissible_pair(cfg: &SampleConfig, i: usize, j: usize, family: CircumcenterFamily) -> Option<(f64, f64)> {
    let mut rng = cfg.rng(STREAM_EXPONENTS, (i * cfg.n_samples + j) as u64);
    (0..DRAW_RETRIES).map(|_| (cfg.exponent(&mut rng), cfg.exponent(&mut rng))).find(|&(k, t)| !excluded(family, k, t))
}

/// Normalized residual of a point against a line.
fn line_residual(l: &LineForm, p: Point) -> f64 {
    l.eval(p).abs() / (1.0 + p.norm_sq()).sqrt()
}

/// Circumcenters of the three families lie on the closed-form conic of their
/// span, and those conics are non-degenerate.
pub fn check_membership(cfg: &SampleConfig) -> CheckReport {
    let mut rep = CheckReport::new("membership", cfg.tolerances.membership);
    let mut degenerate = 0;
    for i in 0..cfg.n_frames {
        let (f, _) = pencil_of(cfg, i);
        for j in 0..cfg.n_samples {
            for family in [CircumcenterFamily::Internal, CircumcenterFamily::External, CircumcenterFamily::Mixed] {
                let Some((k, t)) = admissible_pair(cfg, i, j, family) else {
                    rep.skip();
                    continue;
                };
                let conic =
                    if family == CircumcenterFamily::Mixed { conic_mixed(&f, t) } else { conic_same_side(&f, t) };
                let outcome = conic.and_then(|c| Ok((c, family_circumcenter(&f, family, k, t)?)));
                let witness = || format!("{} family={family:?} k={k} t={t}", frame_tag(&f));
                match outcome {
                    Ok((c, o)) => {
                        if c.rank_ratio() <= cfg.tolerances.degeneracy {
                            degenerate += 1;
                            rep.fail(|| format!("{} degenerate rank_ratio={:e}", witness(), c.rank_ratio()));
                        } else {
                            rep.record(c.residual(o), || format!("{} point={o}", witness()));
                        }
                    }
                    Err(e) => rep.fail(|| format!("{} error={}", witness(), e.code())),
                }
            }
        }
    }
    rep.note(format!("degenerate_members={degenerate}"));
    rep
}

/// Every member passes through `Z` and `V` and touches the bisectors there.
pub fn check_tangency(cfg: &SampleConfig) -> CheckReport {
    let mut rep = CheckReport::new("tangency", cfg.tolerances.tangency);
    let mut failed = [0usize; 2];
    let mut largest_failing = 0.0f64;
    for i in 0..cfg.n_frames {
        let (f, p) = pencil_of(cfg, i);
        for j in 0..cfg.n_samples {
            let (_, t) = cfg.exponent_pair(i, j);
            for mixed in [false, true] {
                if mixed && t == 0.0 {
                    continue;
                }
                let witness = || format!("{} t={t} mixed={mixed}", frame_tag(&f));
                let before = rep.failures;
                let conic = if mixed { conic_mixed(&f, t) } else { conic_same_side(&f, t) };
                match conic.and_then(|c| tangency_residual(&p, &c)) {
                    Ok(r) => rep.record(r, witness),
                    Err(e) => rep.fail(|| format!("{} error={}", witness(), e.code())),
                }
                if rep.failures > before {
                    failed[usize::from(mixed)] += 1;
                    largest_failing = largest_failing.max((t * f.log_ratio()).abs());
                }
            }
        }
    }
    rep.note(format!("failures_same_side={} failures_mixed={}", failed[0], failed[1]));
    if rep.failures > 0 {
        rep.note(format!("largest_failing_abs_t_log_ratio={largest_failing:e}"));
    }
    rep
}

/// Largest of the contact residuals and tangent/side coefficient gaps.
pub fn tangency_residual(p: &Pencil, c: &Conic) -> Result<f64> {
    let rz = c.residual(p.z());
    let rv = c.residual(p.v());
    let tz = c.tangent_line_at(p.z())?.max_coeff_diff(p.side_p());
    let tv = c.tangent_line_at(p.v())?.max_coeff_diff(p.side_q());
    Ok(rz.max(rv).max(tz).max(tv))
}

/// Altitude foot, the zero-span parabola and the zero-span critical line.
pub fn check_corners(cfg: &SampleConfig) -> CheckReport {
    let mut rep = CheckReport::new("corners", cfg.tolerances.membership);
    let mut altitude = 0;
    for i in 0..cfg.n_frames {
        let (f, p) = pencil_of(cfg, i);
        let a = f.a();
        let (_, t) = cfg.exponent_pair(i, 0);
        match exponent_of_location(&f, a.x) {
            Ok((family, k)) => {
                altitude += 1;
                let witness = || format!("{} altitude family={family:?} k={k} t={t}", frame_tag(&f));
                let fam = match family {
                    FootFamily::Internal => CircumcenterFamily::Internal,
                    FootFamily::External => CircumcenterFamily::External,
                };
                let skip = family == FootFamily::External && near_excluded(k + t);
                if skip {
                    rep.skip();
                } else {
                    match conic_same_side(&f, t).and_then(|c| Ok((c, family_circumcenter(&f, fam, k, t)?))) {
                        Ok((c, o)) => {
                            // The circle through A and the altitude foot is centered at height y_A / 2.
                            let height = (o.y - a.y / 2.0).abs() / (1.0 + o.norm());
                            rep.record(c.residual(o).max(height), || format!("{} point={o}", witness()));
                        }
                        Err(e) => rep.fail(|| format!("{} error={}", witness(), e.code())),
                    }
                }
            }
            Err(_) => rep.skip(),
        }
        let parabola = conic_same_side(&f, 0.0).expect("scalene");
        let mut rng = cfg.rng(STREAM_CORNER, i as u64);
        for _ in 0..cfg.n_samples {
            let k = cfg.exponent(&mut rng);
            let witness = |what: &str| format!("{} {what} k={k}", frame_tag(&f));
            match family_circumcenter(&f, CircumcenterFamily::Internal, k, 0.0) {
                Ok(o) => rep.record(parabola.residual(o), || witness("parabola-internal")),
                Err(e) => rep.fail(|| format!("{} error={}", witness("parabola-internal"), e.code())),
            }
            if near_excluded(k) {
                rep.skip();
                continue;
            }
            match family_circumcenter(&f, CircumcenterFamily::External, k, 0.0) {
                Ok(o) => rep.record(parabola.residual(o), || witness("parabola-external")),
                Err(e) => rep.fail(|| format!("{} error={}", witness("parabola-external"), e.code())),
            }
            let on_line = m_prime_point(&f, k).and_then(|mp| circumcenter(a, mp.location, m_point(&f, k)?.location));
            match on_line {
                Ok(o) => rep.record(line_residual(p.critical_line(), o), || witness("critical-line")),
                Err(e) => rep.fail(|| format!("{} error={}", witness("critical-line"), e.code())),
            }
        }
    }
    rep.note(format!("altitude_frames={altitude}"));
    rep
}

/// Members of span `t` and `-t` coincide.
pub fn check_sign_symmetry(cfg: &SampleConfig) -> CheckReport {
    let mut rep = CheckReport::new("sign_symmetry", cfg.tolerances.symmetry);
    for i in 0..cfg.n_frames {
        let (f, p) = pencil_of(cfg, i);
        for j in 0..cfg.n_samples {
            let (_, t) = cfg.exponent_pair(i, j);
            for mixed in [false, true] {
                let build = |s: f64| if mixed { conic_mixed(&f, s) } else { conic_same_side(&f, s) };
                let witness = || format!("{} t={t} mixed={mixed}", frame_tag(&f));
                match build(t).and_then(|c| Ok(c.max_coeff_diff(&build(-t)?))) {
                    Ok(d) => rep.record(d, witness),
                    Err(e) => rep.fail(|| format!("{} error={}", witness(), e.code())),
                }
            }
        }
        let zero = conic_same_side(&f, 0.0).expect("scalene");
        rep.record(zero.max_coeff_diff(p.parabola()), || format!("{} parabola", frame_tag(&f)));
    }
    rep
}

/// External circumcenters lie on the internal family's conic of equal span,
/// and both recover the same span.
pub fn check_identification(cfg: &SampleConfig) -> CheckReport {
    let mut rep = CheckReport::new("identification", cfg.tolerances.membership);
    for i in 0..cfg.n_frames {
        let (f, _) = pencil_of(cfg, i);
        for j in 0..cfg.n_samples {
            let (k, t) = cfg.exponent_pair(i, j);
            if near_excluded(k) || near_excluded(k + t) {
                rep.skip();
                continue;
            }
            let witness = || format!("{} k={k} t={t}", frame_tag(&f));
            let outcome = (|| {
                let internal = family_circumcenter(&f, CircumcenterFamily::Internal, k, t)?;
                let external = family_circumcenter(&f, CircumcenterFamily::External, k, t)?;
                // Both circumcenters pin down one conic of the pencil.
                let pencil = Pencil::new(&f)?;
                let member = pencil.conic_through(internal)?;
                let reference = conic_same_side(&f, t)?;
                Ok::<_, Error>(member.residual(external).max(reference.residual(external)))
            })();
            match outcome {
                Ok(r) => rep.record(r, witness),
                Err(Error::OnCriticalLine) => rep.skip(),
                Err(e) => rep.fail(|| format!("{} error={}", witness(), e.code())),
            }
        }
    }
    rep
}

/// Points outside or on the parabola get a span whose closed form passes
/// through them; points inside get none.
pub fn check_representability(cfg: &SampleConfig) -> CheckReport {
    let mut rep = CheckReport::new("representability", cfg.tolerances.span);
    let (mut outside, mut inside, mut on) = (0, 0, 0);
    for i in 0..cfg.n_frames {
        let (f, p) = pencil_of(cfg, i);
        let mut rng = cfg.rng(STREAM_REPRESENTABILITY, i as u64);
        for _ in 0..cfg.n_samples {
            let e = random_point(&mut rng);
            let label = p.classify_region(e);
            let witness = || format!("{} point={e} region={label}", frame_tag(&f));
            match label {
                RegionLabel::OnSide | RegionLabel::OnCriticalLine | RegionLabel::OnParabola => rep.skip(),
                RegionLabel::U1InsideParabola => {
                    inside += 1;
                    let hits = p.circle_cut(e).map(|c| c.hits.len());
                    let ok = hits == Ok(0) && p.span_of(e) == Err(Error::InsideParabola);
                    rep.check(ok, witness);
                }
                _ => {
                    outside += 1;
                    match representability(&f, &p, e) {
                        Ok(r) => rep.record(r, witness),
                        Err(err) => rep.fail(|| format!("{} error={}", witness(), err.code())),
                    }
                }
            }
            let x = rng.random_range(BOX_X.0..=BOX_X.1);
            let q = tangent_circle_center(&f, x);
            on += 1;
            let cut = p.circle_cut(q);
            let ok = matches!(&cut, Ok(c) if c.hits.len() == 1) && p.span_of(q) == Err(Error::OnParabolaTangent);
            rep.check(ok, || format!("{} parabola point={q}", frame_tag(&f)));
        }
    }
    rep.note(format!("outside={outside} inside={inside} on_parabola={on}"));
    rep
}

/// Residual of `e` on the closed form of its own span; errors if the member
/// through `e` is not a hyperbola or parabola.
fn representability(f: &TriangleFrame, p: &Pencil, e: Point) -> Result<f64> {
    let class = p.conic_through(e)?.classify();
    if !matches!(class, ConicClass::Hyperbola | ConicClass::Parabola) {
        return Err(Error::NotOnConic);
    }
    let span = p.span_of(e)?;
    let c = match span.family {
        SpanFamily::SameSide => conic_same_side(f, span.value)?,
        SpanFamily::Mixed => conic_mixed(f, span.value)?,
    };
    Ok(c.residual(e))
}

/// Spans recovered from circumcenters equal the exponent gap.
pub fn check_span_roundtrip(cfg: &SampleConfig) -> CheckReport {
    let mut rep = CheckReport::new("span_roundtrip", cfg.tolerances.span);
    let mut boundary = 0;
    let families = [CircumcenterFamily::Internal, CircumcenterFamily::External, CircumcenterFamily::Mixed];
    for n in 0..cfg.span_samples {
        let (f, p) = pencil_of(cfg, n % cfg.n_frames);
        let family = families[n % 3];
        let mut rng = cfg.rng(STREAM_SPAN, n as u64);
        let mut drawn = None;
        for _ in 0..DRAW_RETRIES {
            let (k, t) = (cfg.exponent(&mut rng), cfg.exponent(&mut rng));
            if near_excluded(t) || excluded(family, k, t) {
                continue;
            }
            match family_circumcenter(&f, family, k, t).and_then(|e| p.span_of(e)) {
                // The circumcenter sits within the boundary band of the parabola
                // or the circle passes through B or C: no span by definition.
                Err(Error::OnParabolaTangent | Error::HitAtVertex) => boundary += 1,
                outcome => {
                    drawn = Some((k, t, outcome));
                    break;
                }
            }
        }
        let Some((k, t, outcome)) = drawn else {
            rep.skip();
            continue;
        };
        let expected = if family == CircumcenterFamily::Mixed { SpanFamily::Mixed } else { SpanFamily::SameSide };
        let witness = || format!("{} family={family:?} k={k} t={t}", frame_tag(&f));
        match outcome {
            Ok(s) if s.family == expected => {
                rep.record(s.value - t.abs(), || format!("{} span={}", witness(), s.value))
            }
            Ok(s) => rep.fail(|| format!("{} family_got={}", witness(), s.family)),
            Err(e) => rep.fail(|| format!("{} error={}", witness(), e.code())),
        }
    }
    rep.note(format!("boundary_redraws={boundary}"));
    rep
}

const TABLE_LABELS: [RegionLabel; 7] = [
    RegionLabel::R3Opposite,
    RegionLabel::SideRegion,
    RegionLabel::U1InsideParabola,
    RegionLabel::OnParabola,
    RegionLabel::U2LeftOverhang,
    RegionLabel::U3RightOverhang,
    RegionLabel::U4Remainder,
];

/// The intersection counts of the circle centered at `E` through `A` with
/// the segment and the rest of line BC, per region.
pub fn check_region_table(cfg: &SampleConfig) -> CheckReport {
    let mut rep = CheckReport::new("region_table", 0.0);
    for (li, &label) in TABLE_LABELS.iter().enumerate() {
        let mut drawn = 0;
        for q in 0..cfg.region_quota {
            let mut rng = cfg.rng(STREAM_REGION, ((li as u64) << 32) | q as u64);
            // Thin regions of one frame may be missed; move on to the next frame.
            let drawn_point = (0..DRAW_RETRIES).find_map(|r| {
                let (f, p) = pencil_of(cfg, (q + r) % cfg.n_frames);
                let e = if label == RegionLabel::OnParabola {
                    Some(tangent_circle_center(&f, rng.random_range(BOX_X.0..=BOX_X.1)))
                } else {
                    sample_where(&mut rng, |e| p.classify_region(e) == label)
                };
                e.map(|e| (f, p, e))
            });
            let Some((f, p, e)) = drawn_point else {
                rep.skip();
                continue;
            };
            drawn += 1;
            let witness = || format!("{} point={e} region={label}", frame_tag(&f));
            let cut = match p.circle_cut(e) {
                Ok(c) => c,
                Err(err) => {
                    rep.fail(|| format!("{} error={}", witness(), err.code()));
                    continue;
                }
            };
            let counts = (cut.count_m, cut.count_m_prime);
            let r = cut.circle.radius;
            let contains_segment = e.dist(f.b()) < r && e.dist(f.c()) < r;
            let row = match label {
                RegionLabel::R3Opposite => counts == (0, 2) && contains_segment,
                RegionLabel::SideRegion => counts == (1, 1),
                RegionLabel::U1InsideParabola => counts == (0, 0),
                RegionLabel::OnParabola => cut.hits.len() == 1 && (cut.hits[0].point.x - e.x).abs() <= 1e-9,
                RegionLabel::U2LeftOverhang | RegionLabel::U3RightOverhang => counts == (0, 2),
                _ => counts == (2, 0),
            };
            let converse = contains_segment == (label == RegionLabel::R3Opposite)
                && (counts == (1, 1)) == (label == RegionLabel::SideRegion);
            rep.check(row && converse, || {
                format!("{} counts={counts:?} contains_segment={contains_segment}", witness())
            });
        }
        rep.note(format!("{}={drawn}", label.name()));
    }
    rep
}

/// How the chord `ZV` sits relative to `AM(0)` and line BC on one frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChordOutcome {
    /// `|cos|` of the angle between ZV and the median from A.
    pub orthogonality: f64,
    /// x of ZV ∩ BC.
    pub zv_x: f64,
    pub m_prime_1: f64,
    pub m_prime_2: f64,
    /// Which external foot ZV ∩ BC coincides with: 1, 2, or 0 for neither.
    pub matches: u8,
    /// Relative gap to the matching foot (or to the nearer one).
    pub gap: f64,
}

pub fn contact_chord_for_frame(f: &TriangleFrame, tolerance: f64) -> Result<ChordOutcome> {
    let p = Pencil::new(f)?;
    let median = f.a() - m_point(f, 0.0)?.location;
    let orthogonality = p.critical_line().direction().dot(median).abs() / median.norm();
    let zv = p.critical_line().intersect(&LineForm::x_axis()).ok_or(Error::ParallelPolar)?;
    let m1 = m_prime_point(f, 1.0)?.location.x;
    let m2 = m_prime_point(f, 2.0)?.location.x;
    let rel = |m: f64| (zv.x - m).abs() / m.abs().max(1.0);
    let (g1, g2) = (rel(m1), rel(m2));
    let matches = if g2 <= tolerance {
        2
    } else if g1 <= tolerance {
        1
    } else {
        0
    };
    let gap = match matches {
        1 => g1,
        2 => g2,
        _ => g1.min(g2),
    };
    Ok(ChordOutcome { orthogonality, zv_x: zv.x, m_prime_1: m1, m_prime_2: m2, matches, gap })
}

/// ZV is perpendicular to the median, and ZV meets BC at an Apollonian center.
pub fn check_contact_chord(cfg: &SampleConfig) -> CheckReport {
    let mut rep = CheckReport::new("contact_chord", cfg.tolerances.chord);
    let mut tally = [0usize; 3];
    let mut first: Option<u8> = None;
    for i in 0..cfg.n_frames {
        let f = cfg.frame(i);
        match contact_chord_for_frame(&f, cfg.tolerances.chord) {
            Ok(o) => {
                tally[o.matches as usize] += 1;
                let consistent = o.matches != 0 && *first.get_or_insert(o.matches) == o.matches;
                let witness = || {
                    format!(
                        "{} zv_x={} m_prime_1={} m_prime_2={} matches={}",
                        frame_tag(&f),
                        o.zv_x,
                        o.m_prime_1,
                        o.m_prime_2,
                        o.matches
                    )
                };
                rep.record(o.orthogonality.max(o.gap), witness);
                if !consistent {
                    rep.fail(witness);
                }
            }
            Err(e) => rep.fail(|| format!("{} error={}", frame_tag(&f), e.code())),
        }
    }
    rep.note(format!("zv_meets_bc_at_m_prime_2={}/{}", tally[2], cfg.n_frames));
    rep.note(format!("zv_meets_bc_at_m_prime_1={}/{}", tally[1], cfg.n_frames));
    rep.note(format!("zv_meets_bc_at_neither={}/{}", tally[0], cfg.n_frames));
    rep
}

/// Conics fitted through five circumcenters agree with the closed forms.
pub fn check_fit_oracle(cfg: &SampleConfig) -> CheckReport {
    let tol = &cfg.tolerances;
    let mut rep = CheckReport::new("fit_oracle", tol.fit_cosine.max(tol.fit_residual));
    let mut rank_deficient = 0;
    for i in 0..cfg.n_frames {
        let f = cfg.frame(i);
        let mut rng = cfg.rng(STREAM_FIT, i as u64);
        let t = cfg.exponent(&mut rng);
        // Exponents scaled so the feet spread over the whole segment even for
        // nearly isosceles frames.
        let scale = 1.0 / f.log_ratio().abs();
        let ks: Vec<f64> = (0..6).map(|j| scale * (-3.0 + (j as f64 + rng.random_range(0.1..0.9)))).collect();
        for span in [t, 0.0] {
            let witness = || format!("{} t={span} ks={ks:?}", frame_tag(&f));
            let outcome = (|| {
                let pts = ks
                    .iter()
                    .map(|&k| family_circumcenter(&f, CircumcenterFamily::Internal, k, span))
                    .collect::<Result<Vec<_>>>()?;
                let fitted = Conic::from_five_points(&[pts[0], pts[1], pts[2], pts[3], pts[4]])?;
                let closed = conic_same_side(&f, span)?;
                let cos_gap = 1.0 - fitted.cosine_similarity(&closed);
                Ok::<_, Error>((cos_gap, fitted.residual(pts[5])))
            })();
            match outcome {
                Ok((cos_gap, sixth)) => {
                    let ok = cos_gap <= tol.fit_cosine && sixth <= tol.fit_residual;
                    rep.worst_residual = rep.worst_residual.max(cos_gap).max(sixth);
                    rep.check(ok, || format!("{} cos_gap={cos_gap} sixth={sixth}", witness()));
                }
                Err(Error::RankDeficient) => {
                    rank_deficient += 1;
                    rep.skip();
                }
                Err(e) => rep.fail(|| format!("{} error={}", witness(), e.code())),
            }
        }
    }
    rep.note(format!("rank_deficient={rank_deficient}"));
    rep
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Stratum {
    Parabola,
    SideSame,
    SideDifferent,
    StraightSame,
    StraightDifferent,
    EllipseSame,
    EllipseDifferent,
    BothParallelSame,
    BothParallelDifferent,
    OneParallelSame,
    OneParallelDifferent,
    Mismatch,
}

const STRATA: [Stratum; 12] = [
    Stratum::Parabola,
    Stratum::SideSame,
    Stratum::SideDifferent,
    Stratum::StraightSame,
    Stratum::StraightDifferent,
    Stratum::EllipseSame,
    Stratum::EllipseDifferent,
    Stratum::BothParallelSame,
    Stratum::BothParallelDifferent,
    Stratum::OneParallelSame,
    Stratum::OneParallelDifferent,
    Stratum::Mismatch,
];

/// Distance kept between sampled decision inputs and the sides, the chord ZV
/// and the parabola; the pencil parameter is ill-conditioned next to them.
const DECISION_MARGIN: f64 = 1e-3;

fn well_placed(p: &Pencil, e: Point) -> bool {
    p.side_p().eval(e).abs() >= DECISION_MARGIN
        && p.side_q().eval(e).abs() >= DECISION_MARGIN
        && p.critical_line().eval(e).abs() >= DECISION_MARGIN
        && p.parabola_gap(e).abs() >= DECISION_MARGIN
}

fn is_side(l: RegionLabel) -> bool {
    l == RegionLabel::SideRegion
}

fn is_straight(l: RegionLabel) -> bool {
    matches!(
        l,
        RegionLabel::U2LeftOverhang | RegionLabel::U3RightOverhang | RegionLabel::U4Remainder | RegionLabel::R3Opposite
    )
}

fn is_ellipse(l: RegionLabel) -> bool {
    l == RegionLabel::U1InsideParabola
}

/// Another point of the member through `x`, on a random line through `x`.
fn partner(p: &Pencil, x: Point, rng: &mut ChaCha8Rng, kind: fn(RegionLabel) -> bool) -> Option<Point> {
    let member = p.conic_through(x).ok()?;
    for _ in 0..64 {
        let angle = rng.random_range(0.0..std::f64::consts::PI);
        let line = LineForm::through_with_direction(x, Point::new(angle.cos(), angle.sin())).ok()?;
        let Ok(pts) = member.line_intersections(&line) else { continue };
        let far = pts.into_iter().max_by(|a, b| a.dist(x).total_cmp(&b.dist(x)));
        if let Some(y) = far {
            if y.dist(x) > 1e-3 && well_placed(p, y) && kind(p.classify_region(y)) {
                return Some(y);
            }
        }
    }
    None
}

/// The two points of an ellipse member where its tangent is vertical.
pub fn vertical_tangent_points(member: &Conic) -> Result<Vec<Point>> {
    let [_, b, c, _, e, _] = member.coefficients();
    // ∂F/∂y = b·x + 2c·y + e = 0
    let line = LineForm::new(b, 2.0 * c, e)?;
    member.line_intersections(&line)
}

fn ellipse_points(p: &Pencil, rng: &mut ChaCha8Rng) -> Option<(Point, Vec<Point>)> {
    let w = sample_where(rng, |e| well_placed(p, e) && is_ellipse(p.classify_region(e)))?;
    let pts = vertical_tangent_points(&p.conic_through(w).ok()?).ok()?;
    let usable = pts.len() == 2 && pts.iter().all(|q| well_placed(p, *q) && is_ellipse(p.classify_region(*q)));
    usable.then_some((w, pts))
}

fn draw_pair(
    f: &TriangleFrame,
    p: &Pencil,
    stratum: Stratum,
    rng: &mut ChaCha8Rng,
) -> Option<(Point, Point, Decision)> {
    use Decision::{Different, Same};
    let kind_sample = |rng: &mut ChaCha8Rng, kind: fn(RegionLabel) -> bool| {
        sample_where(rng, |e| well_placed(p, e) && kind(p.classify_region(e)))
    };
    match stratum {
        Stratum::Parabola => {
            let x1 = rng.random_range(BOX_X.0..=BOX_X.1);
            let x2 = rng.random_range(BOX_X.0..=BOX_X.1);
            Some((tangent_circle_center(f, x1), tangent_circle_center(f, x2), Same))
        }
        Stratum::SideSame | Stratum::StraightSame | Stratum::EllipseSame => {
            let kind = match stratum {
                Stratum::SideSame => is_side,
                Stratum::StraightSame => is_straight,
                _ => is_ellipse,
            };
            let x = kind_sample(rng, kind)?;
            Some((x, partner(p, x, rng, kind)?, Same))
        }
        Stratum::SideDifferent | Stratum::StraightDifferent | Stratum::EllipseDifferent => {
            let kind = match stratum {
                Stratum::SideDifferent => is_side,
                Stratum::StraightDifferent => is_straight,
                _ => is_ellipse,
            };
            Some((kind_sample(rng, kind)?, kind_sample(rng, kind)?, Different))
        }
        Stratum::BothParallelSame => {
            let (_, pts) = ellipse_points(p, rng)?;
            Some((pts[0], pts[1], Same))
        }
        Stratum::BothParallelDifferent => {
            let (_, a) = ellipse_points(p, rng)?;
            let (_, b) = ellipse_points(p, rng)?;
            Some((a[0], b[1], Different))
        }
        Stratum::OneParallelSame => {
            let (w, pts) = ellipse_points(p, rng)?;
            Some((pts[rng.random_range(0..2)], w, Same))
        }
        Stratum::OneParallelDifferent => {
            let (_, pts) = ellipse_points(p, rng)?;
            Some((kind_sample(rng, is_ellipse)?, pts[0], Different))
        }
        Stratum::Mismatch => {
            let kinds: [fn(RegionLabel) -> bool; 3] = [is_side, is_straight, is_ellipse];
            let i = rng.random_range(0..4usize);
            let mut j = rng.random_range(0..3usize);
            if j >= i {
                j += 1;
            }
            let mut pick = |n: usize| -> Option<Point> {
                if n == 3 {
                    Some(tangent_circle_center(f, rng.random_range(BOX_X.0..=BOX_X.1)))
                } else {
                    kind_sample(rng, kinds[n])
                }
            };
            Some((pick(i)?, pick(j)?, Different))
        }
    }
}

/// The same-conic decision agrees with the pencil-parameter oracle.
pub fn check_decision_oracle(cfg: &SampleConfig) -> CheckReport {
    let mut rep = CheckReport::new("decision_oracle", 0.0);
    let mut cases = std::collections::BTreeMap::<&'static str, usize>::new();
    let mut unexpected = 0;
    for n in 0..cfg.decision_pairs {
        let stratum = STRATA[n % STRATA.len()];
        let (f, p) = pencil_of(cfg, (n / STRATA.len()) % cfg.n_frames);
        let mut rng = cfg.rng(STREAM_DECISION, n as u64);
        let Some((x, y, expected)) = (0..DRAW_RETRIES).find_map(|_| draw_pair(&f, &p, stratum, &mut rng)) else {
            rep.skip();
            continue;
        };
        let witness = || format!("{} stratum={stratum:?} x={x} y={y}", frame_tag(&f));
        match p.same_conic(x, y) {
            Ok(r) => {
                *cases.entry(r.case.name()).or_default() += 1;
                if r.decision != expected {
                    unexpected += 1;
                }
                rep.check(r.agrees_with_oracle() && r.decision == expected, || {
                    format!(
                        "{} case={} decision={:?} oracle={:?} expected={expected:?} lambdas={:?}",
                        witness(),
                        r.case.name(),
                        r.decision,
                        r.oracle,
                        r.lambdas
                    )
                });
            }
            Err(Error::OnSide | Error::OnCriticalLine | Error::HitAtVertex) => rep.skip(),
            Err(e) => rep.fail(|| format!("{} error={}", witness(), e.code())),
        }
    }
    for (case, count) in &cases {
        rep.note(format!("case.{case}={count}"));
    }
    rep.note(format!("unexpected_decisions={unexpected}"));
    rep
}

/// Count of pairs that went through `case` in a decision report.
pub fn case_count(report: &CheckReport, case: DecisionCase) -> usize {
    let key = format!("case.{}=", case.name());
    report.notes.iter().find_map(|n| n.strip_prefix(&key).and_then(|v| v.parse().ok())).unwrap_or(0)
}

/// Member types read from regions agree with the classification of the member.
pub fn check_classification(cfg: &SampleConfig) -> CheckReport {
    let mut rep = CheckReport::new("classification", 0.0);
    for n in 0..cfg.classification_samples {
        let (f, p) = pencil_of(cfg, n % cfg.n_frames);
        let mut rng = cfg.rng(STREAM_CLASSIFY, n as u64);
        let w = random_point(&mut rng);
        let by_region = match p.classify_member(w) {
            Ok(c) => c,
            Err(_) => {
                rep.skip();
                continue;
            }
        };
        match p.conic_through(w) {
            Ok(member) => {
                let by_conic = member.classify();
                rep.check(by_region == by_conic, || {
                    format!("{} point={w} region={} member={by_conic}", frame_tag(&f), p.classify_region(w))
                });
            }
            Err(e) => rep.fail(|| format!("{} point={w} error={}", frame_tag(&f), e.code())),
        }
    }
    rep
}

fn float_residual(f: &TriangleFrame, id: ExactIdentity) -> Result<f64> {
    let (k, t) = match id {
        ExactIdentity::InternalMembership { k, t }
        | ExactIdentity::ExternalMembership { k, t }
        | ExactIdentity::MixedMembership { k, t } => (k as f64, t as f64),
        ExactIdentity::ContactZ { t }
        | ExactIdentity::ContactV { t }
        | ExactIdentity::TangentAtZ { t }
        | ExactIdentity::TangentAtV { t } => (0.0, t as f64),
    };
    let p = Pencil::new(f)?;
    let c = conic_same_side(f, t)?;
    Ok(match id {
        ExactIdentity::InternalMembership { .. } => {
            c.residual(family_circumcenter(f, CircumcenterFamily::Internal, k, t)?)
        }
        ExactIdentity::ExternalMembership { .. } => {
            c.residual(family_circumcenter(f, CircumcenterFamily::External, k, t)?)
        }
        ExactIdentity::MixedMembership { .. } => {
            conic_mixed(f, t)?.residual(family_circumcenter(f, CircumcenterFamily::Mixed, k, t)?)
        }
        ExactIdentity::ContactZ { .. } => c.residual(p.z()),
        ExactIdentity::ContactV { .. } => c.residual(p.v()),
        ExactIdentity::TangentAtZ { .. } => c.tangent_line_at(p.z())?.max_coeff_diff(p.side_p()),
        ExactIdentity::TangentAtV { .. } => c.tangent_line_at(p.v())?.max_coeff_diff(p.side_q()),
    })
}

/// Rational frames used by the exact replay.
pub const EXACT_FRAMES: [((i64, i64), (i64, i64)); 4] =
    [((3, 10), (4, 5)), ((1, 5), (1, 2)), ((-1, 4), (3, 4)), ((6, 5), (1, 3))];

/// Exact replay of the closed forms, cross-checked against floating point.
pub fn check_exact_mode(cfg: &SampleConfig) -> CheckReport {
    let mut rep = CheckReport::new("exact_mode", cfg.tolerances.membership);
    let mut identities = Vec::new();
    for k in [-2i64, 0, 2] {
        for t in [-4i64, -2, 0, 2, 4] {
            identities.push(ExactIdentity::InternalMembership { k, t });
            if k != 0 && k + t != 0 {
                identities.push(ExactIdentity::ExternalMembership { k, t });
            }
            if k != 0 && t != 0 {
                identities.push(ExactIdentity::MixedMembership { k, t });
            }
        }
    }
    for t in [-2i64, 0, 2, 4] {
        identities.extend([
            ExactIdentity::ContactZ { t },
            ExactIdentity::ContactV { t },
            ExactIdentity::TangentAtZ { t },
            ExactIdentity::TangentAtV { t },
        ]);
    }
    let mut refused = 0;
    for (x, y) in EXACT_FRAMES {
        let rf = RationalFrame::from_ratios(x, y).expect("apex above BC");
        let f = rf.to_frame().expect("valid frame");
        for &id in &identities {
            let witness = || format!("apex=({}/{},{}/{}) identity={id:?}", x.0, x.1, y.0, y.1);
            match (exact_mode_evaluate(id, &rf), float_residual(&f, id)) {
                (Ok(truth), Ok(r)) => {
                    rep.worst_residual = rep.worst_residual.max(r);
                    let agree = truth && r <= rep.tolerance;
                    rep.check(agree, || format!("{} exact={truth} residual={r}", witness()));
                }
                (exact, float) => rep.fail(|| format!("{} exact={exact:?} float={float:?}", witness())),
            }
        }
        // Odd spans leave the rationals.
        let odd = ExactIdentity::InternalMembership { k: 0, t: 1 };
        let is_refused = matches!(exact_mode_evaluate(odd, &rf), Err(Error::NotRationalizable(_)));
        refused += usize::from(is_refused);
        rep.check(is_refused, || format!("apex=({}/{},{}/{}) odd span accepted", x.0, x.1, y.0, y.1));
    }
    rep.note(format!("identities={} frames={} odd_refused={refused}", identities.len(), EXACT_FRAMES.len()));
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SampleConfig {
        SampleConfig {
            n_frames: 6,
            n_samples: 4,
            span_samples: 60,
            region_quota: 12,
            decision_pairs: 240,
            classification_samples: 60,
            ..SampleConfig::default()
        }
    }

    #[test]
    fn contact_chord_on_reference_frame() {
        let f = TriangleFrame::from_apex(0.3, 0.8).unwrap();
        let o = contact_chord_for_frame(&f, 1e-9).unwrap();
        assert_eq!(o.matches, 2);
        assert!((o.zv_x + 1.825).abs() < 1e-12);
        assert!(o.orthogonality < 1e-15);
    }

    #[test]
    fn vertical_tangents_of_an_ellipse_member() {
        let p = Pencil::new(&TriangleFrame::from_apex(0.3, 0.8).unwrap()).unwrap();
        let u = p.conic_through(Point::new(0.3, 0.6)).unwrap();
        assert_eq!(u.classify(), ConicClass::Ellipse);
        let pts = vertical_tangent_points(&u).unwrap();
        assert_eq!(pts.len(), 2);
        for q in pts {
            assert!(u.residual(q) < 1e-12);
            assert!(u.gradient(q).y.abs() < 1e-12);
            assert_eq!(p.dual_point(q), Err(Error::ParallelPolar));
        }
    }

    #[test]
    fn small_runs_pass() {
        let cfg = small();
        for rep in [
            check_membership(&cfg),
            check_corners(&cfg),
            check_sign_symmetry(&cfg),
            check_identification(&cfg),
            check_representability(&cfg),
            check_span_roundtrip(&cfg),
            check_region_table(&cfg),
            check_contact_chord(&cfg),
            check_fit_oracle(&cfg),
            check_decision_oracle(&cfg),
            check_classification(&cfg),
            check_exact_mode(&cfg),
        ] {
            assert!(rep.passed(), "{}", rep.to_record());
        }
    }

    #[test]
    fn decision_strata_cover_every_case() {
        let rep = check_decision_oracle(&small());
        for case in [
            DecisionCase::Parabola,
            DecisionCase::SideHyperbola,
            DecisionCase::StraightHyperbola,
            DecisionCase::EllipseDual,
            DecisionCase::EllipseBothParallel,
            DecisionCase::EllipseOneParallel,
            DecisionCase::TypeMismatch,
        ] {
            assert!(case_count(&rep, case) > 0, "{case:?}");
        }
    }

    #[test]
    fn impossible_tolerance_fails_with_witnesses() {
        let mut cfg = small();
        cfg.tolerances.membership = 1e-30;
        let rep = check_membership(&cfg);
        assert!(rep.failures > 0);
        assert!(!rep.witnesses.is_empty());
    }
}
