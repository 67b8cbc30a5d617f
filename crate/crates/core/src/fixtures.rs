//! Named example forms used by the tests, the acceptance suite and the
//! command-line tool.

use crate::foliate::{log_example, pencil_form, tangent_pullback_example, weights};
use crate::forms::{df, radial, PForm, VField};
use crate::homog::{
    case_a_log_data, case_b_normal_data, double_contraction, exceptional_form, LinearVF,
};
use crate::ratpoly::{rat, ratio, Poly, Rational};

fn x(n: usize, i: usize) -> Poly {
    Poly::var(n, i)
}

fn dx(n: usize, i: usize) -> PForm {
    PForm::dx(n, i)
}

/// Decomposable, non-integrable quadratic 2-form on `C^4` with an isolated
/// singularity at the origin.
pub fn kn_theta() -> PForm {
    let n = 4;
    let sq = |i: usize| x(n, i).pow(2);
    let x12 = &x(n, 0) * &x(n, 1);
    let x34 = &x(n, 2) * &x(n, 3);
    let mut t = dx(n, 1).wedge(&dx(n, 2)).mul_poly(&sq(2));
    t = t.sub(&dx(n, 2).wedge(&dx(n, 0)).mul_poly(&sq(0)));
    t = t.add(&dx(n, 0).wedge(&dx(n, 1)).mul_poly(&(&x12 + &x34)));
    let side = dx(n, 0)
        .mul_poly(&sq(3))
        .add(&dx(n, 1).mul_poly(&sq(1)))
        .add(&dx(n, 2).mul_poly(&(&x12 - &x34)));
    t.add(&side.wedge(&dx(n, 3)))
}

pub fn log_example_lambda() -> Vec<Rational> {
    weights(&[1, 2, 3, 4])
}

pub fn log_example_mu() -> Vec<Rational> {
    weights(&[1, 1, 1, 1])
}

/// The logarithmic example with weights `(1, 2, 3, 4)` and `(1, 1, 1, 1)`.
pub fn log_example_fixture() -> PForm {
    log_example(&log_example_lambda(), &log_example_mu()).expect("generic weights")
}

pub fn case_a_lambda() -> Vec<Rational> {
    weights(&[1, -1, 2, -2])
}

pub fn case_a_mu() -> Vec<Rational> {
    weights(&[1, 2, 3, -5])
}

/// `i_Y i_X nu` for commuting diagonal `X`, `Y`.
pub fn case_a_fixture() -> PForm {
    case_a_log_data(&case_a_lambda(), &case_a_mu())
        .expect("generic weights")
        .eta
}

/// The nilpotent model for `(rho, lambda)` with `4 rho - 5 lambda = 1`.
pub fn case_b_fixture(rho: &Rational, lambda: &Rational) -> Option<PForm> {
    case_b_normal_data(rho, lambda).ok().map(|d| d.eta)
}

/// Pencil members `F = x1 x3 + x2^2`, `G = x2 x4` and weights `(p, q) = (1, 1)`.
pub fn pencil_data() -> (Poly, Poly, Rational, Rational) {
    let n = 4;
    let f = &(&x(n, 0) * &x(n, 2)) + &x(n, 1).pow(2);
    let g = &x(n, 1) * &x(n, 3);
    (f, g, rat(1), rat(1))
}

/// `q F dG - p G dF` for [`pencil_data`].
pub fn pencil_omega() -> PForm {
    let (f, g, p, q) = pencil_data();
    pencil_form(&f, &g, &p, &q)
}

/// `d(q F dG - p G dF) = (p + q) dF ^ dG`.
pub fn pencil_fixture() -> PForm {
    pencil_omega().d()
}

/// `i_Z (dz1 ^ dz2 ^ dz3)` on `C^4` for a quadratic `Z` with linear divergence.
pub fn template_21() -> PForm {
    let m = 3;
    let z = VField::new(vec![
        x(m, 0).pow(2),
        &x(m, 1) * &x(m, 2),
        &x(m, 0) * &x(m, 1),
    ]);
    tangent_pullback_example(&z, 4).expect("three-variable field")
}

/// `d(z1 z2) ^ (z3 dz3) + z1 z2 dz3 ^ dz4`.
pub fn template_221() -> PForm {
    let n = 4;
    let z12 = &x(n, 0) * &x(n, 1);
    df(&z12)
        .wedge(&dx(n, 2).mul_poly(&x(n, 2)))
        .add(&dx(n, 2).wedge(&dx(n, 3)).mul_poly(&z12))
}

/// `(z2 dz2 - z1 dz3) ^ (A dz1 + B dz4) + C dz1 ^ dz4` with `A = z1`,
/// `B = z4`, `a = 1`, `q = z1 z4`.
pub fn template_222() -> PForm {
    let n = 4;
    let z = |i| x(n, i);
    let (a, b) = (z(0), z(3));
    let u = &z(1).pow(2) - &(&z(0) * &z(2)).scale(&rat(2));
    let c = &(&u - &(&z(2) * &b)) + &(&z(0) * &z(3));
    let first = dx(n, 1).mul_poly(&z(1)).sub(&dx(n, 2).mul_poly(&z(0)));
    first
        .wedge(&dx(n, 0).mul_poly(&a).add(&dx(n, 3).mul_poly(&b)))
        .add(&dx(n, 0).wedge(&dx(n, 3)).mul_poly(&c))
}

/// `(z2 dz3 - z1 dz4) ^ (A dz1 + B dz2) + C dz1 ^ dz2` with `A = z2`,
/// `B = z1`, `a = 1`, `q = z1^2`.
pub fn template_223() -> PForm {
    let n = 4;
    let z = |i| x(n, i);
    let (a, b) = (z(1), z(0));
    let u = &(&z(1) * &z(2)) - &(&z(0) * &z(3));
    let c = &(&(&u - &(&z(2) * &a)) - &(&z(3) * &b)) + &z(0).pow(2);
    let first = dx(n, 2).mul_poly(&z(1)).sub(&dx(n, 3).mul_poly(&z(0)));
    first
        .wedge(&dx(n, 0).mul_poly(&a).add(&dx(n, 1).mul_poly(&b)))
        .add(&dx(n, 0).wedge(&dx(n, 1)).mul_poly(&c))
}

/// `i_R i_X nu` for diagonal `X`.
pub fn dicritical_fixture() -> PForm {
    let xf = LinearVF::diagonal(&case_a_lambda())
        .expect("square")
        .to_field();
    double_contraction(&xf, &radial(4).expect("valid arity"))
}

/// Closed quadratic forms: `dP ^ dQ` for quadrics, `dL ^ dC`, and the
/// exceptional form.
pub fn closed_fixtures() -> Vec<(&'static str, PForm)> {
    let n = 4;
    let p = &(&x(n, 0) * &x(n, 1)) + &x(n, 2).pow(2);
    let q = &(&x(n, 2) * &x(n, 3)) - &x(n, 0).pow(2);
    let c = &(&(&x(n, 1) * &x(n, 2)) * &x(n, 3)) + &x(n, 1).pow(3);
    vec![
        ("closed R(2,2)", df(&p).wedge(&df(&q))),
        ("closed R(1,3)", df(&x(n, 0)).wedge(&df(&c))),
        (
            "closed E(n-1)",
            exceptional_form(4).expect("four variables"),
        ),
    ]
}

/// Degree 0 and 1 examples on `C^4`.
pub fn low_degree_fixtures() -> Vec<(&'static str, PForm)> {
    let n = 4;
    let l = x(n, 0);
    let q = &(&x(n, 1) * &x(n, 2)) + &x(n, 3).pow(2);
    let p = &(&x(n, 0) * &x(n, 1)) * &x(n, 2);
    let log = PForm::one_form(&[
        p.div_exact(&x(n, 0)).expect("factor"),
        p.div_exact(&x(n, 1)).expect("factor").scale(&rat(2)),
        p.div_exact(&x(n, 2)).expect("factor").scale(&rat(-3)),
        Poly::zero(n),
    ]);
    vec![
        (
            "darboux",
            dx(n, 0).wedge(&dx(n, 1)).add(&dx(n, 0).wedge(&dx(n, 2))),
        ),
        ("linear L.Q", df(&l).wedge(&df(&q))),
        ("linear logarithmic", log.d()),
        (
            "linear vector field",
            dx(n, 1).wedge(&dx(n, 2)).mul_poly(&x(n, 0)),
        ),
    ]
}

/// Homogeneous integrable 2-forms on `C^4` of degree one or two, singular at
/// the origin, one or more per classification branch.
pub fn integrable_corpus() -> Vec<(&'static str, PForm)> {
    let mut out: Vec<(&'static str, PForm)> = low_degree_fixtures()
        .into_iter()
        .filter(|(_, eta)| eta.max_coeff_degree().is_some_and(|d| d >= 1))
        .collect();
    out.extend(closed_fixtures());
    out.extend([
        ("case (a)", case_a_fixture()),
        (
            "case (b)",
            case_b_fixture(&ratio(3, 2), &rat(1)).expect("valid parameters"),
        ),
        ("case 2.1", template_21()),
        ("case 2.2.1", template_221()),
        ("case 2.2.2", template_222()),
        ("case 2.2.3", template_223()),
        ("dicritical", dicritical_fixture()),
        ("log example", log_example_fixture()),
        ("pencil", pencil_fixture()),
    ]);
    out
}

/// Names accepted by [`by_name`].
pub const NAMES: [&str; 12] = [
    "kn-theta",
    "log-example",
    "case-a",
    "case-b",
    "pencil",
    "case-2.1",
    "case-2.2.1",
    "case-2.2.2",
    "case-2.2.3",
    "dicritical",
    "exceptional",
    "closed-r22",
];

/// 2-form fixture by name; `case-b` uses `(rho, lambda) = (3/2, 1)`.
pub fn by_name(name: &str) -> Option<PForm> {
    Some(match name {
        "kn-theta" => kn_theta(),
        "log-example" => log_example_fixture(),
        "case-a" => case_a_fixture(),
        "case-b" => case_b_fixture(&ratio(3, 2), &rat(1))?,
        "pencil" => pencil_fixture(),
        "case-2.1" => template_21(),
        "case-2.2.1" => template_221(),
        "case-2.2.2" => template_222(),
        "case-2.2.3" => template_223(),
        "dicritical" => dicritical_fixture(),
        "exceptional" => exceptional_form(4)?,
        "closed-r22" => closed_fixtures().remove(0).1,
        _ => return None,
    })
}
