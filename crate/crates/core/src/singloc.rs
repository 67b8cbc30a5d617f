//! Singular sets of 2-forms: coefficient ideals, codimension-one content,
//! certified lines through the origin and projective rational point scans.
//!
//! Every positive answer carries a witness that re-verifies by substitution.
//! A search that finds nothing reports its bounds and makes no claim.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::forms::PForm;
use crate::homog::{is_integrable, linear_factors};
use crate::ratpoly::{content_gcd, gcd, Homogeneity, Monomial, Poly, Rational};

/// Upper bound on the number of grid points a single scan may visit.
pub const MAX_SCAN_POINTS: u128 = 50_000_000;

/// Default height of the rational direction grid.
pub const DEFAULT_HEIGHT: u64 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingError {
    #[error("input is not homogeneous")]
    NotHomogeneous,
    #[error("form vanishes identically")]
    ZeroForm,
    #[error("direction vector is zero")]
    ZeroDirection,
    #[error("expected {expected} variables, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("expected a 2-form, got a {0}-form")]
    FormDegree(usize),
    #[error("scan of {0} points exceeds the limit of {MAX_SCAN_POINTS}")]
    TooManyPoints(u128),
    #[error("eta is integrable but eta / h is not")]
    ContentBreaksIntegrability,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CertificateKind {
    Line,
    Point,
    Codim1Factor,
    NoneFound,
}

impl CertificateKind {
    pub fn name(self) -> &'static str {
        match self {
            CertificateKind::Line => "line",
            CertificateKind::Point => "point",
            CertificateKind::Codim1Factor => "codim1-factor",
            CertificateKind::NoneFound => "none-found",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CertificateWitness {
    Direction(Vec<Rational>),
    Point(Vec<Rational>),
    Factor(Poly),
    None,
}

/// Bounds of a search: the grid height and which stages ran.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanParameters {
    pub height: u64,
    pub stages: Vec<&'static str>,
    pub grid_points: u128,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingCertificate {
    pub kind: CertificateKind,
    pub witness: CertificateWitness,
    pub scan_parameters: ScanParameters,
    pub notes: Vec<String>,
}

impl SingCertificate {
    /// Re-checks the witness against `eta`. A none-found certificate asserts
    /// nothing and always passes.
    pub fn verify(&self, eta: &PForm) -> bool {
        match (&self.kind, &self.witness) {
            (CertificateKind::Line, CertificateWitness::Direction(v)) => {
                line_in_sing_check(eta, v).unwrap_or(false)
            }
            (CertificateKind::Point, CertificateWitness::Point(p)) => {
                p.len() == eta.nvars()
                    && p.iter().any(|c| !c.is_zero())
                    && common_zero(&singular_ideal(eta), p)
            }
            (CertificateKind::Codim1Factor, CertificateWitness::Factor(h)) => {
                !h.is_constant() && singular_ideal(eta).iter().all(|c| c.div_exact(h).is_some())
            }
            (CertificateKind::NoneFound, CertificateWitness::None) => true,
            _ => false,
        }
    }
}

fn common_zero(polys: &[Poly], p: &[Rational]) -> bool {
    polys.iter().all(|f| f.eval(p).is_zero())
}

/// The coefficients of `eta`, generating the ideal of its singular set.
pub fn singular_ideal(eta: &PForm) -> Vec<Poly> {
    eta.coefficients()
}

/// `eta = h eta'` with `h` the monic gcd of the coefficients.
pub fn codim1_content(eta: &PForm) -> Result<(Poly, PForm), SingError> {
    let h = content_gcd(&eta.coefficients()).map_err(|_| SingError::ZeroForm)?;
    let reduced = eta.div_poly(&h).expect("gcd divides every coefficient");
    if !h.is_constant()
        && eta.degree() == 2
        && is_integrable(eta).unwrap_or(false)
        && !is_integrable(&reduced).unwrap_or(false)
    {
        return Err(SingError::ContentBreaksIntegrability);
    }
    Ok((h, reduced))
}

/// Codimension-one factor certificate when the content is nonconstant.
pub fn codim1_certificate(eta: &PForm) -> Result<Option<SingCertificate>, SingError> {
    let (h, _) = codim1_content(eta)?;
    Ok((!h.is_constant()).then(|| SingCertificate {
        kind: CertificateKind::Codim1Factor,
        witness: CertificateWitness::Factor(h),
        scan_parameters: ScanParameters {
            height: 0,
            stages: vec!["content"],
            grid_points: 0,
        },
        notes: Vec::new(),
    }))
}

/// Whether every coefficient of `eta` vanishes identically along `t v`.
pub fn line_in_sing_check(eta: &PForm, v: &[Rational]) -> Result<bool, SingError> {
    if v.len() != eta.nvars() {
        return Err(SingError::Arity {
            expected: eta.nvars(),
            got: v.len(),
        });
    }
    if v.iter().all(|c| c.is_zero()) {
        return Err(SingError::ZeroDirection);
    }
    let t = Poly::var(1, 0);
    let images: Vec<Poly> = v.iter().map(|c| t.scale(c)).collect();
    Ok(eta
        .coefficients()
        .iter()
        .all(|c| c.substitute(&images).expect("arity checked").is_zero()))
}

/// Options for [`sing_line_search`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub height: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            height: DEFAULT_HEIGHT,
        }
    }
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::from_integer(1.into());
    v
}

fn expect_homogeneous_form(eta: &PForm) -> Result<(), SingError> {
    match eta.coeff_homogeneity() {
        Homogeneity::AnyDegree => Err(SingError::ZeroForm),
        Homogeneity::Degree(_) => Ok(()),
        _ => Err(SingError::NotHomogeneous),
    }
}

/// Directions of lines through the origin inside `Sing(eta)` lying in the
/// coordinate plane `(i, j)`, found from the gcd of the binary restrictions.
/// The flag reports a common root that is not rational.
pub fn plane_lines(eta: &PForm, i: usize, j: usize) -> (Vec<Vec<Rational>>, bool) {
    let n = eta.nvars();
    let images: Vec<Poly> = (0..n)
        .map(|k| {
            if k == i {
                Poly::var(2, 0)
            } else if k == j {
                Poly::var(2, 1)
            } else {
                Poly::zero(2)
            }
        })
        .collect();
    let g = eta
        .coefficients()
        .iter()
        .map(|c| c.substitute(&images).expect("arity matches"))
        .fold(Poly::zero(2), |acc, b| gcd(&acc, &b));
    if g.is_zero() {
        return (vec![unit(n, i), unit(n, j)], false);
    }
    let factors = linear_factors(&g);
    let found: u32 = factors.iter().filter_map(|l| l.total_degree()).sum();
    let irrational = g.total_degree().unwrap_or(0) > found;
    let mut dirs: Vec<Vec<Rational>> = Vec::new();
    for l in factors {
        let a = l.coeff(&Monomial::var(0));
        let b = l.coeff(&Monomial::var(1));
        let mut v = vec![Rational::zero(); n];
        v[i] = -b;
        v[j] = a;
        let v = normalize_direction(&v);
        if !dirs.contains(&v) {
            dirs.push(v);
        }
    }
    (dirs, irrational)
}

/// Scales a direction to primitive integer entries with first nonzero entry
/// positive.
pub fn normalize_direction(v: &[Rational]) -> Vec<Rational> {
    let den = v.iter().fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = match ints.iter().find(|c| !c.is_zero()) {
        Some(c) if c < &BigInt::zero() => BigInt::from(-1),
        _ => BigInt::from(1),
    };
    ints.into_iter()
        .map(|c| Rational::from_integer(c * &sign / &g))
        .collect()
}

/// Searches the coordinate axes, then the coordinate planes, then the
/// rational direction grid up to `budget.height`, returning the first line
/// certificate. Failure yields a none-found certificate with the bounds.
pub fn sing_line_search(eta: &PForm, budget: &SearchBudget) -> Result<SingCertificate, SingError> {
    expect_homogeneous_form(eta)?;
    let n = eta.nvars();
    let mut params = ScanParameters {
        height: budget.height,
        stages: vec!["axes"],
        grid_points: 0,
    };
    let mut notes = Vec::new();
    let line = |v: Vec<Rational>, params: ScanParameters, notes: Vec<String>| SingCertificate {
        kind: CertificateKind::Line,
        witness: CertificateWitness::Direction(v),
        scan_parameters: params,
        notes,
    };
    for i in 0..n {
        let v = unit(n, i);
        if line_in_sing_check(eta, &v)? {
            return Ok(line(v, params, notes));
        }
    }
    params.stages.push("planes");
    for i in 0..n {
        for j in i + 1..n {
            let (dirs, irrational) = plane_lines(eta, i, j);
            if irrational {
                notes.push(format!(
                    "irrational direction exists in plane ({}, {})",
                    i + 1,
                    j + 1
                ));
            }
            if let Some(v) = dirs
                .into_iter()
                .find(|v| line_in_sing_check(eta, v).unwrap_or(false))
            {
                return Ok(line(v, params, notes));
            }
        }
    }
    params.stages.push("grid");
    params.grid_points = grid_size(n, budget.height);
    let points = projective_point_scan(&singular_ideal(eta), n, budget.height)?;
    if let Some(v) = points
        .into_iter()
        .find(|v| line_in_sing_check(eta, v).unwrap_or(false))
    {
        return Ok(line(v, params, notes));
    }
    Ok(SingCertificate {
        kind: CertificateKind::NoneFound,
        witness: CertificateWitness::None,
        scan_parameters: params,
        notes,
    })
}

/// Every distinct line direction found by the axis, plane and grid stages.
pub fn sing_lines(eta: &PForm, budget: &SearchBudget) -> Result<Vec<Vec<Rational>>, SingError> {
    expect_homogeneous_form(eta)?;
    let n = eta.nvars();
    let mut out: Vec<Vec<Rational>> = Vec::new();
    let mut push = |v: Vec<Rational>| {
        if !out.contains(&v) {
            out.push(v);
        }
    };
    for i in 0..n {
        let v = unit(n, i);
        if line_in_sing_check(eta, &v)? {
            push(v);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for v in plane_lines(eta, i, j).0 {
                if line_in_sing_check(eta, &v)? {
                    push(v);
                }
            }
        }
    }
    for v in projective_point_scan(&singular_ideal(eta), n, budget.height)? {
        push(v);
    }
    out.sort();
    Ok(out)
}

fn grid_size(n: usize, height: u64) -> u128 {
    (2 * height as u128 + 1)
        .checked_pow(n as u32)
        .unwrap_or(u128::MAX)
}

/// A polynomial with integer coefficients that fit in machine words.
struct IntPoly {
    terms: Vec<(Vec<u32>, i128)>,
}

impl IntPoly {
    fn from_poly(p: &Poly, n: usize) -> Option<IntPoly> {
        let den = p.denominator_lcm();
        let mut terms = Vec::with_capacity(p.num_terms());
        for (m, c) in p.terms() {
            let v = (c.numer() * (&den / c.denom())).to_i64()?;
            terms.push(((0..n).map(|i| m.exponent(i) as u32).collect(), v as i128));
        }
        Some(IntPoly { terms })
    }

    fn vanishes(&self, x: &[i64]) -> Option<bool> {
        let mut acc: i128 = 0;
        for (exps, c) in &self.terms {
            let mut t = *c;
            for (xi, &e) in x.iter().zip(exps) {
                if e > 0 {
                    t = t.checked_mul((*xi as i128).checked_pow(e)?)?;
                }
            }
            acc = acc.checked_add(t)?;
        }
        Some(acc == 0)
    }
}

/// Common zeros of homogeneous polynomials among the projective points with
/// integer coordinates of absolute value at most `height`, primitive and with
/// first nonzero coordinate positive, in lexicographic order.
pub fn projective_point_scan(
    polys: &[Poly],
    n: usize,
    height: u64,
) -> Result<Vec<Vec<Rational>>, SingError> {
    for p in polys {
        if p.nvars() != n {
            return Err(SingError::Arity {
                expected: n,
                got: p.nvars(),
            });
        }
        if matches!(p.homogeneity(), Homogeneity::NotHomogeneous) {
            return Err(SingError::NotHomogeneous);
        }
    }
    let total = grid_size(n, height);
    if total > MAX_SCAN_POINTS {
        return Err(SingError::TooManyPoints(total));
    }
    let nonzero: Vec<&Poly> = polys.iter().filter(|p| !p.is_zero()).collect();
    let fast: Vec<Option<IntPoly>> = nonzero.iter().map(|p| IntPoly::from_poly(p, n)).collect();
    let base = 2 * height + 1;
    let h = height as i64;
    let points: Vec<Vec<i64>> = (0..total as u64)
        .into_par_iter()
        .filter_map(|mut idx| {
            let mut x = vec![0i64; n];
            for k in (0..n).rev() {
                x[k] = (idx % base) as i64 - h;
                idx /= base;
            }
            match x.iter().find(|&&c| c != 0) {
                Some(&c) if c > 0 => {}
                _ => return None,
            }
            if x.iter().fold(0i64, |acc, &c| acc.gcd(&c)) != 1 {
                return None;
            }
            let all = nonzero.iter().zip(&fast).all(|(p, f)| {
                match f.as_ref().and_then(|f| f.vanishes(&x)) {
                    Some(z) => z,
                    None => {
                        let q: Vec<Rational> = x
                            .iter()
                            .map(|&c| Rational::from_integer(c.into()))
                            .collect();
                        p.eval(&q).is_zero()
                    }
                }
            });
            all.then_some(x)
        })
        .collect();
    Ok(points
        .into_iter()
        .map(|x| {
            x.into_iter()
                .map(|c| Rational::from_integer(c.into()))
                .collect()
        })
        .collect())
}

/// The six coefficients `A, B, C, E, F, G` of
/// `A dx2^dx3 + B dx3^dx1 + C dx1^dx2 + (E dx1 + F dx2 + G dx3)^dx4`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadricMap {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
    pub e: Poly,
    pub f: Poly,
    pub g: Poly,
    /// `AE + BF + CG`, zero exactly when `eta ^ eta = 0`.
    pub residual: Poly,
}

impl QuadricMap {
    pub fn components(&self) -> [&Poly; 6] {
        [&self.a, &self.b, &self.c, &self.e, &self.f, &self.g]
    }
}

pub fn quadric_map(eta: &PForm) -> Result<QuadricMap, SingError> {
    if eta.nvars() != 4 {
        return Err(SingError::Arity {
            expected: 4,
            got: eta.nvars(),
        });
    }
    if eta.degree() != 2 {
        return Err(SingError::FormDegree(eta.degree()));
    }
    let a = eta.coeff2(1, 2);
    let b = eta.coeff2(2, 0);
    let c = eta.coeff2(0, 1);
    let e = eta.coeff2(0, 3);
    let f = eta.coeff2(1, 3);
    let g = eta.coeff2(2, 3);
    let residual = &(&(&a * &e) + &(&b * &f)) + &(&c * &g);
    Ok(QuadricMap {
        a,
        b,
        c,
        e,
        f,
        g,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{kn_theta, log_example_fixture};
    use crate::forms::df;
    use crate::ratpoly::rat;

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    fn dx(n: usize, i: usize) -> PForm {
        PForm::dx(n, i)
    }

    fn v(c: &[i64]) -> Vec<Rational> {
        c.iter().map(|&k| rat(k)).collect()
    }

    #[test]
    fn singular_ideal_examples() {
        assert_eq!(
            singular_ideal(&dx(4, 0).wedge(&dx(4, 1))),
            vec![Poly::one(4)]
        );
        let eta = dx(3, 0)
            .wedge(&dx(3, 1))
            .mul_poly(&x(3, 0))
            .add(&dx(3, 0).wedge(&dx(3, 2)).mul_poly(&x(3, 1)));
        assert_eq!(singular_ideal(&eta), vec![x(3, 0), x(3, 1)]);
        let q = quadric_map(&kn_theta()).unwrap();
        let mut got: Vec<Poly> = singular_ideal(&kn_theta())
            .iter()
            .map(Poly::monic)
            .collect();
        let mut want: Vec<Poly> = q.components().into_iter().map(Poly::monic).collect();
        got.sort_by(|a, b| a.terms().cmp(b.terms()));
        want.sort_by(|a, b| a.terms().cmp(b.terms()));
        assert_eq!(got, want);
    }

    #[test]
    fn content_examples() {
        let n = 4;
        let eta = dx(n, 0).wedge(&dx(n, 1)).mul_poly(&x(n, 0));
        assert_eq!(
            codim1_content(&eta).unwrap(),
            (x(n, 0), dx(n, 0).wedge(&dx(n, 1)))
        );
        let ex3 = log_example_fixture();
        assert_eq!(codim1_content(&ex3).unwrap(), (Poly::one(n), ex3.clone()));
        let x12 = &x(n, 0) * &x(n, 1);
        let (h, rest) = codim1_content(&ex3.mul_poly(&x12)).unwrap();
        assert_eq!((h, rest), (x12, ex3));
        assert_eq!(
            codim1_content(&PForm::zero(n, 2)).unwrap_err(),
            SingError::ZeroForm
        );
        let cert = codim1_certificate(&eta).unwrap().unwrap();
        assert!(cert.verify(&eta));
    }

    #[test]
    fn line_checks() {
        let eta = dx(4, 0).wedge(&dx(4, 1)).mul_poly(&x(4, 0));
        assert!(line_in_sing_check(&eta, &v(&[0, 1, 0, 0])).unwrap());
        assert!(line_in_sing_check(&log_example_fixture(), &v(&[1, 0, 0, 0])).unwrap());
        assert!(!line_in_sing_check(&kn_theta(), &v(&[1, 0, 0, 0])).unwrap());
        assert_eq!(
            line_in_sing_check(&eta, &v(&[0, 0, 0, 0])).unwrap_err(),
            SingError::ZeroDirection
        );
    }

    #[test]
    fn line_search_examples() {
        let ex3 = log_example_fixture();
        let cert = sing_line_search(&ex3, &SearchBudget::default()).unwrap();
        assert_eq!(cert.kind, CertificateKind::Line);
        assert_eq!(
            cert.witness,
            CertificateWitness::Direction(v(&[1, 0, 0, 0]))
        );
        assert!(cert.verify(&ex3));

        let n = 4;
        let c = &(&x(n, 1) * &x(n, 2)) * &x(n, 3);
        let eta = df(&x(n, 0)).wedge(&df(&c));
        let cert = sing_line_search(&eta, &SearchBudget::default()).unwrap();
        assert_eq!(cert.kind, CertificateKind::Line);
        assert!(cert.verify(&eta));
        assert!(line_in_sing_check(&eta, &v(&[0, 1, 0, 0])).unwrap());

        let cert = sing_line_search(&kn_theta(), &SearchBudget { height: 3 }).unwrap();
        assert_eq!(cert.kind, CertificateKind::NoneFound);
        assert_eq!(cert.scan_parameters.height, 3);
        assert_eq!(cert.scan_parameters.stages, vec!["axes", "planes", "grid"]);
    }

    #[test]
    fn plane_stage_finds_diagonal() {
        let n = 4;
        let l = &x(n, 0) - &x(n, 1);
        let eta = dx(n, 0)
            .wedge(&dx(n, 1))
            .mul_poly(&(&l * &x(n, 0)))
            .add(&dx(n, 0).wedge(&dx(n, 2)).mul_poly(&(&l * &x(n, 1))))
            .add(
                &dx(n, 2)
                    .wedge(&dx(n, 3))
                    .mul_poly(&(&x(n, 2).pow(2) + &x(n, 3).pow(2))),
            );
        let cert = sing_line_search(&eta, &SearchBudget { height: 0 }).unwrap();
        assert_eq!(
            cert.witness,
            CertificateWitness::Direction(v(&[1, 1, 0, 0]))
        );
        assert_eq!(cert.scan_parameters.stages, vec!["axes", "planes"]);
    }

    #[test]
    fn irrational_plane_direction_is_noted() {
        let n = 3;
        let q = &(&x(n, 0) * &x(n, 0)) - &(&x(n, 1) * &x(n, 1)).scale(&rat(2));
        let r = &q + &x(n, 2).pow(2);
        let eta = dx(n, 0).wedge(&dx(n, 1)).mul_poly(&r).add(
            &dx(n, 1)
                .wedge(&dx(n, 2))
                .mul_poly(&(&q + &x(n, 2).pow(2).scale(&rat(2)))),
        );
        let cert = sing_line_search(&eta, &SearchBudget { height: 2 }).unwrap();
        assert_eq!(cert.kind, CertificateKind::NoneFound);
        assert!(cert
            .notes
            .iter()
            .any(|s| s == "irrational direction exists in plane (1, 2)"));
    }

    #[test]
    fn point_scans() {
        let polys = vec![x(4, 0), x(4, 1), x(4, 2)];
        assert_eq!(
            projective_point_scan(&polys, 4, 1).unwrap(),
            vec![v(&[0, 0, 0, 1])]
        );
        assert!(projective_point_scan(&singular_ideal(&kn_theta()), 4, 10)
            .unwrap()
            .is_empty());
        let pts = projective_point_scan(&singular_ideal(&log_example_fixture()), 4, 2).unwrap();
        assert_eq!(
            pts,
            vec![
                v(&[0, 0, 0, 1]),
                v(&[0, 0, 1, 0]),
                v(&[0, 1, 0, 0]),
                v(&[1, 0, 0, 0])
            ]
        );
        let mixed = vec![&x(4, 0) + &Poly::one(4)];
        assert_eq!(
            projective_point_scan(&mixed, 4, 1).unwrap_err(),
            SingError::NotHomogeneous
        );
        assert!(matches!(
            projective_point_scan(&[x(8, 0)], 8, 10),
            Err(SingError::TooManyPoints(_))
        ));
    }

    #[test]
    fn all_lines_of_log_example_are_axes() {
        let lines = sing_lines(&log_example_fixture(), &SearchBudget { height: 3 }).unwrap();
        assert_eq!(
            lines,
            vec![
                v(&[0, 0, 0, 1]),
                v(&[0, 0, 1, 0]),
                v(&[0, 1, 0, 0]),
                v(&[1, 0, 0, 0])
            ]
        );
    }

    #[test]
    fn quadric_examples() {
        let n = 4;
        let q = quadric_map(&kn_theta()).unwrap();
        assert_eq!(q.a, x(n, 2).pow(2));
        assert_eq!(q.b, x(n, 0).pow(2).scale(&rat(-1)));
        assert_eq!(q.c, &(&x(n, 0) * &x(n, 1)) + &(&x(n, 2) * &x(n, 3)));
        assert_eq!(q.e, x(n, 3).pow(2));
        assert_eq!(q.f, x(n, 1).pow(2));
        assert_eq!(q.g, &(&x(n, 0) * &x(n, 1)) - &(&x(n, 2) * &x(n, 3)));
        assert!(q.residual.is_zero());
        let sym = dx(n, 0).wedge(&dx(n, 1)).add(&dx(n, 2).wedge(&dx(n, 3)));
        assert_eq!(quadric_map(&sym).unwrap().residual, Poly::one(n));
        assert!(quadric_map(&dx(3, 0).wedge(&dx(3, 1))).is_err());
    }

    #[test]
    fn certificates_reject_wrong_witnesses() {
        let theta = kn_theta();
        let bad = SingCertificate {
            kind: CertificateKind::Line,
            witness: CertificateWitness::Direction(v(&[1, 0, 0, 0])),
            scan_parameters: ScanParameters {
                height: 0,
                stages: vec![],
                grid_points: 0,
            },
            notes: vec![],
        };
        assert!(!bad.verify(&theta));
        let point = SingCertificate {
            kind: CertificateKind::Point,
            witness: CertificateWitness::Point(v(&[0, 0, 0, 1])),
            ..bad.clone()
        };
        assert!(point.verify(&log_example_fixture()));
        assert!(!point.verify(&theta));
    }
}
