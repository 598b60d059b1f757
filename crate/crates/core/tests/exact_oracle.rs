//! Reference values of the sample triangle A = (3/10, 4/5), recomputed here
//! with exact rationals and compared against the floating-point library.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use conic_pencil::cevian::{m_point, m_prime_point};
use conic_pencil::geom::{circumcenter, perpendicular_bisector};
use conic_pencil::pencil::{conic_mixed, conic_same_side, family_circumcenter, CircumcenterFamily};
use conic_pencil::verify::{exact_mode_evaluate, ExactIdentity, RationalFrame};
use conic_pencil::{LineForm, Pencil, Point, TriangleFrame};

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn f(x: &Q) -> f64 {
    x.to_f64().unwrap()
}

struct Apex {
    x: Q,
    y: Q,
}

impl Apex {
    fn sample() -> Self {
        Apex { x: q(3, 10), y: q(4, 5) }
    }
    fn c2(&self) -> Q {
        &self.x * &self.x + &self.y * &self.y
    }
    fn b2(&self) -> Q {
        let dx = q(1, 1) - &self.x;
        &dx * &dx + &self.y * &self.y
    }
    fn frame(&self) -> TriangleFrame {
        TriangleFrame::from_apex(f(&self.x), f(&self.y)).unwrap()
    }
    /// Parabola with focus A and directrix BC:
    /// x² − 2x_A·x − 2y_A·y + c² = 0, as [xx, xy, yy, x, y, 1].
    fn parabola(&self) -> [Q; 6] {
        [q(1, 1), q(0, 1), q(0, 1), q(-2, 1) * &self.x, q(-2, 1) * &self.y, self.c2()]
    }
}

fn eval(c: &[Q; 6], x: &Q, y: &Q) -> Q {
    &c[0] * x * x + &c[1] * x * y + &c[2] * y * y + &c[3] * x + &c[4] * y + &c[5]
}

/// Polar of (x, y) as [a, b, c] of a·X + b·Y + c = 0.
fn polar(c: &[Q; 6], x: &Q, y: &Q) -> [Q; 3] {
    let h = q(1, 2);
    [
        &c[0] * x + &h * &c[1] * y + &h * &c[3],
        &h * &c[1] * x + &c[2] * y + &h * &c[4],
        &h * &c[3] * x + &h * &c[4] * y + &c[5],
    ]
}

fn close(a: f64, b: f64, eps: f64) -> bool {
    (a - b).abs() <= eps
}

#[test]
fn side_lengths() {
    let apex = Apex::sample();
    assert_eq!(apex.c2(), q(73, 100));
    assert_eq!(apex.b2(), q(113, 100));
    let fr = apex.frame();
    assert!(close(fr.c_len(), 0.73f64.sqrt(), 1e-15));
    assert!(close(fr.b_len(), 1.13f64.sqrt(), 1e-15));
}

#[test]
fn circumcenter_of_triangle() {
    let apex = Apex::sample();
    // Equidistant from B and C: x = 1/2. Equidistant from A and B:
    // (1/2 − x_A)² + (y − y_A)² = 1/4 + y².
    let half = q(1, 2);
    let y = ((&half - &apex.x) * (&half - &apex.x) + &apex.y * &apex.y - &half * &half) / (q(2, 1) * &apex.y);
    assert_eq!(y, q(43, 160));
    let o = circumcenter(Point::new(0.3, 0.8), Point::ORIGIN, Point::new(1.0, 0.0)).unwrap();
    assert!(close(o.x, 0.5, 1e-15) && close(o.y, f(&y), 1e-15));
    assert!(close(o.y, 0.26875, 1e-15));
}

#[test]
fn feet_of_even_exponents() {
    let apex = Apex::sample();
    let fr = apex.frame();
    let (b2, c2) = (apex.b2(), apex.c2());
    let m2 = &c2 / (&c2 + &b2);
    assert_eq!(m2, q(73, 186));
    assert!(close(m_point(&fr, 2.0).unwrap().location.x, f(&m2), 1e-15));
    let mp2 = &c2 / (&c2 - &b2);
    assert_eq!(mp2, q(-73, 40));
    assert!(close(m_prime_point(&fr, 2.0).unwrap().location.x, f(&mp2), 1e-14));
    // c⁻² / (c⁻² − b⁻²) = b² / (b² − c²)
    let mpm2 = &b2 / (&b2 - &c2);
    assert_eq!(mpm2, q(113, 40));
    assert!(close(m_prime_point(&fr, -2.0).unwrap().location.x, f(&mpm2), 1e-14));
}

#[test]
fn contact_points_and_parabola() {
    let apex = Apex::sample();
    let p = Pencil::new(&apex.frame()).unwrap();
    let zy = apex.c2() / (q(2, 1) * &apex.y);
    let vy = apex.b2() / (q(2, 1) * &apex.y);
    assert_eq!(zy, q(73, 160));
    assert_eq!(vy, q(113, 160));
    assert!(p.z().approx_eq(Point::new(0.0, f(&zy)), 1e-15));
    assert!(p.v().approx_eq(Point::new(1.0, f(&vy)), 1e-15));

    let par = apex.parabola();
    assert!(eval(&par, &q(0, 1), &zy).is_zero());
    assert!(eval(&par, &q(1, 1), &vy).is_zero());
    // B² − 4AC vanishes exactly.
    assert!((&par[1] * &par[1] - q(4, 1) * &par[0] * &par[2]).is_zero());
    // Stored coefficients are normalized; compare after rescaling xx to 1.
    let got = p.parabola().coefficients();
    let want: Vec<f64> = par.iter().map(f).collect();
    for i in 0..6 {
        let g = got[i] / got[0];
        assert!(close(g, want[i], 1e-14), "coefficient {i}: {g} vs {}", want[i]);
    }
}

#[test]
fn tangent_of_parabola_at_z_is_the_bisector_of_ab() {
    let apex = Apex::sample();
    let par = apex.parabola();
    let zy = apex.c2() / (q(2, 1) * &apex.y);
    let [a, b, _] = polar(&par, &q(0, 1), &zy);
    // Normal parallel to A − B; slope −x_A / y_A = −0.375.
    assert!((&a * &apex.y - &b * &apex.x).is_zero());
    assert_eq!(-(&a / &b), q(-3, 8));

    let p = Pencil::new(&apex.frame()).unwrap();
    let tangent = p.parabola().tangent_line_at(p.z()).unwrap();
    let bisector = perpendicular_bisector(Point::ORIGIN, Point::new(0.3, 0.8)).unwrap();
    assert!(tangent.max_coeff_diff(&bisector) < 1e-12);
}

#[test]
fn polar_of_circumcenter_is_zv() {
    let apex = Apex::sample();
    let par = apex.parabola();
    let l = polar(&par, &q(1, 2), &q(43, 160));
    let on = |x: Q, y: Q| (&l[0] * x + &l[1] * y + &l[2]).is_zero();
    assert!(on(q(0, 1), q(73, 160)));
    assert!(on(q(1, 1), q(113, 160)));

    let p = Pencil::new(&apex.frame()).unwrap();
    let polar_line = p.parabola().polar_line(p.vertex()).unwrap();
    assert!(polar_line.max_coeff_diff(&LineForm::through(p.z(), p.v()).unwrap()) < 1e-12);
}

#[test]
fn chord_zv_meets_bc_at_the_second_external_foot() {
    // Line through (0, z) and (1, v) meets y = 0 at x = −z / (v − z).
    let (z, v) = (q(73, 160), q(113, 160));
    let x = -(&z / (&v - &z));
    assert_eq!(x, q(-73, 40));
    let fr = Apex::sample().frame();
    let p = Pencil::new(&fr).unwrap();
    let hit = p.critical_line().intersect(&LineForm::x_axis()).unwrap();
    assert!(close(hit.x, m_prime_point(&fr, 2.0).unwrap().location.x, 1e-13));
    assert!(!close(hit.x, m_prime_point(&fr, 1.0).unwrap().location.x, 1e-3));
}

#[test]
fn span_two_membership_exact_and_float() {
    let rf = RationalFrame::parse("3/10", "4/5").unwrap();
    assert_eq!(exact_mode_evaluate(ExactIdentity::InternalMembership { k: 0, t: 2 }, &rf), Ok(true));
    assert_eq!(exact_mode_evaluate(ExactIdentity::ContactZ { t: 2 }, &rf), Ok(true));

    let fr = Apex::sample().frame();
    let o = family_circumcenter(&fr, CircumcenterFamily::Internal, 0.0, 2.0).unwrap();
    // circumcenter of (0.3, 0.8), (0.5, 0), (73/186, 0)
    let generic = circumcenter(Point::new(0.3, 0.8), Point::new(0.5, 0.0), Point::new(73.0 / 186.0, 0.0)).unwrap();
    assert!(o.approx_eq(generic, 1e-13));
    assert!(conic_same_side(&fr, 2.0).unwrap().residual(o) < 1e-9);
    assert!(conic_same_side(&fr, 2.0).unwrap().max_coeff_diff(&conic_same_side(&fr, -2.0).unwrap()) <= 1e-12);
}

#[test]
fn mixed_membership_exact_and_float() {
    let rf = RationalFrame::parse("3/10", "4/5").unwrap();
    assert_eq!(exact_mode_evaluate(ExactIdentity::MixedMembership { k: 2, t: 2 }, &rf), Ok(true));
    let fr = Apex::sample().frame();
    let o = family_circumcenter(&fr, CircumcenterFamily::Mixed, 1.0, 1.0).unwrap();
    assert!(conic_mixed(&fr, 1.0).unwrap().residual(o) < 1e-9);
    assert!(conic_mixed(&fr, 1.0).unwrap().max_coeff_diff(&conic_mixed(&fr, -1.0).unwrap()) <= 1e-12);
}

#[test]
fn parabola_points_share_a_parameter() {
    let p = Pencil::new(&Apex::sample().frame()).unwrap();
    // y = (x − 0.3)² / 1.6 + 0.4
    let l1 = p.pencil_parameter(Point::new(0.3, 0.4)).unwrap();
    let l2 = p.pencil_parameter(Point::new(0.9, 0.625)).unwrap();
    assert!((l1 - l2).abs() <= 1e-9 * (1.0 + l1.abs()));
    let member = p.conic_through(Point::new(0.3, 0.4)).unwrap();
    assert!(member.max_coeff_diff(p.parabola()) < 1e-12);
}

#[test]
fn member_through_circumcenter_is_the_closed_form() {
    let fr = Apex::sample().frame();
    let p = Pencil::new(&fr).unwrap();
    let o = family_circumcenter(&fr, CircumcenterFamily::Internal, 0.0, 2.0).unwrap();
    let member = p.conic_through(o).unwrap();
    assert!(member.max_coeff_diff(&conic_same_side(&fr, 2.0).unwrap()) < 1e-9);
}
