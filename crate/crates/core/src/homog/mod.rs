//! Homogeneous foliations: primitives of closed square-zero forms, radial
//! contractions, the commuting-field analysis of degree-two forms on `C^4`,
//! the model families built from it, and the classification driver.

mod classify;
mod components;
mod factor;

use num_traits::{One, Zero};
use thiserror::Error;

pub use classify::{classify, ClassificationReport, Witness};
pub use components::{
    exceptional_cubic_quadric, exceptional_form, recognize, verify_component, Component,
    ComponentData,
};
pub use factor::{combination, complete_basis, linear_factors, tangent_functions};

use crate::divide::{derham_vector_solve_homogeneous, DivideError};
use crate::foliate::{
    frobenius_integrable1, homogeneous_degree, is_decomposable2, is_integrable2_c4,
    is_integrable2_cleared, pencil_form, rotational4, FoliateError,
};
use crate::forms::{df, radial, PForm, VField};
use crate::linalg::{self, Mat};
use crate::ratpoly::{rat, Monomial, Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomogError {
    #[error("form is not homogeneous")]
    NotHomogeneous,
    #[error("form is not closed")]
    NotClosed,
    #[error("form is not square-zero")]
    NotSquareZero,
    #[error("form is not integrable")]
    NotIntegrable,
    #[error("dicritical input: i_R eta vanishes")]
    Dicritical,
    #[error("degree {0} is above 2")]
    DegreeTooHigh(u32),
    #[error("expected a {expected}-form, got a {got}-form")]
    FormDegree { expected: usize, got: usize },
    #[error("expected coefficients of degree {expected}, got {got}")]
    CoefficientDegree { expected: u32, got: u32 },
    #[error("variable count mismatch")]
    Arity,
    #[error("zero form")]
    ZeroForm,
    #[error("rank(X) < 3 (rank {0})")]
    RankTooSmall(usize),
    #[error("i_X eta is nonzero")]
    InteriorNonzero,
    #[error("bracket relation [Y, X] = (1 - tr Y) X fails")]
    BracketFails,
    #[error("internal inconsistency: {0}")]
    Inconsistent(&'static str),
    #[error("precondition fails: {0}")]
    Precondition(&'static str),
    #[error("resonance: {0}")]
    Resonance(&'static str),
    #[error("component {tag} needs {polys} polynomials and {weights} weights")]
    MissingData {
        tag: &'static str,
        polys: usize,
        weights: usize,
    },
    #[error("unknown component tag {0:?}")]
    UnknownComponent(String),
    #[error("matrix is not square or too large")]
    BadMatrix,
    #[error(transparent)]
    Divide(#[from] DivideError),
    #[error(transparent)]
    Foliate(#[from] FoliateError),
}

/// Vector field with linear components, stored as its matrix `A`
/// (component `j` is `sum_k A[j][k] x_k`).
#[derive(Debug, Clone, PartialEq)]
pub struct LinearVF {
    matrix: Mat,
}

impl LinearVF {
    pub fn new(matrix: Mat) -> Result<Self, HomogError> {
        let n = matrix.len();
        if n == 0 || n > crate::ratpoly::MAX_VARS || matrix.iter().any(|r| r.len() != n) {
            return Err(HomogError::BadMatrix);
        }
        Ok(LinearVF { matrix })
    }

    pub fn diagonal(d: &[Rational]) -> Result<Self, HomogError> {
        let mut m = linalg::zeros(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            m[i][i] = v.clone();
        }
        LinearVF::new(m)
    }

    pub fn from_field(v: &VField) -> Option<Self> {
        v.linear_matrix().map(|matrix| LinearVF { matrix })
    }

    pub fn to_field(&self) -> VField {
        VField::linear(&self.matrix)
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn nvars(&self) -> usize {
        self.matrix.len()
    }

    pub fn trace(&self) -> Rational {
        linalg::trace(&self.matrix)
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.matrix)
    }

    pub fn is_nilpotent(&self) -> bool {
        let mut p = self.matrix.clone();
        for _ in 1..self.nvars() {
            p = linalg::matmul(&p, &self.matrix);
        }
        linalg::is_zero(&p)
    }

    /// `[self, other]` as vector fields.
    pub fn bracket(&self, other: &LinearVF) -> LinearVF {
        LinearVF {
            matrix: linalg::sub(
                &linalg::matmul(&other.matrix, &self.matrix),
                &linalg::matmul(&self.matrix, &other.matrix),
            ),
        }
    }

    /// Matrix of the field in the coordinates `z = T x`.
    pub fn conjugate(&self, t: &Mat) -> Option<LinearVF> {
        let tinv = linalg::inverse(t)?;
        Some(LinearVF {
            matrix: linalg::matmul(&linalg::matmul(t, &self.matrix), &tinv),
        })
    }

    /// The field applied to the linear function with coefficient row `w`.
    pub fn apply_row(&self, w: &[Rational]) -> Vec<Rational> {
        linalg::vecmat(w, &self.matrix)
    }
}

fn expect_two_form(eta: &PForm) -> Result<(), HomogError> {
    if eta.degree() == 2 {
        Ok(())
    } else {
        Err(HomogError::FormDegree {
            expected: 2,
            got: eta.degree(),
        })
    }
}

fn expect_coefficient_degree(eta: &PForm, m: u32) -> Result<(), HomogError> {
    match homogeneous_degree(eta) {
        None => Err(HomogError::NotHomogeneous),
        Some(d) if d != m && !eta.is_zero() => Err(HomogError::CoefficientDegree {
            expected: m,
            got: d,
        }),
        Some(_) => Ok(()),
    }
}

/// Integrability through the rotational criterion on `C^4` and through the
/// cleared meromorphic factors elsewhere.
pub fn is_integrable(eta: &PForm) -> Result<bool, HomogError> {
    expect_two_form(eta)?;
    Ok(if eta.nvars() == 4 {
        is_integrable2_c4(eta)?
    } else {
        is_integrable2_cleared(eta)?
    })
}

/// `omega = i_R eta / (m + 2)` for closed square-zero `eta` of degree `m`;
/// then `d omega = eta` and `omega` is integrable.
pub fn dicritical_primitive(eta: &PForm, m: u32) -> Result<PForm, HomogError> {
    expect_two_form(eta)?;
    expect_coefficient_degree(eta, m)?;
    if !eta.d().is_zero() {
        return Err(HomogError::NotClosed);
    }
    if !is_decomposable2(eta) {
        return Err(HomogError::NotSquareZero);
    }
    let r = radial(eta.nvars()).map_err(|_| HomogError::Arity)?;
    let omega = eta
        .interior(&r)
        .scale(&Rational::new(1.into(), (m + 2).into()));
    if omega.d() != *eta || !frobenius_integrable1(&omega) || !omega.wedge(eta).is_zero() {
        return Err(HomogError::Inconsistent("primitive does not reproduce eta"));
    }
    Ok(omega)
}

/// `omega = i_R eta` for homogeneous integrable non-dicritical `eta`; the
/// foliation of `eta` lies inside the one of `omega`.
pub fn radial_contraction(eta: &PForm) -> Result<PForm, HomogError> {
    expect_two_form(eta)?;
    if homogeneous_degree(eta).is_none() {
        return Err(HomogError::NotHomogeneous);
    }
    if !is_integrable(eta)? {
        return Err(HomogError::NotIntegrable);
    }
    let r = radial(eta.nvars()).map_err(|_| HomogError::Arity)?;
    let omega = eta.interior(&r);
    if omega.is_zero() {
        return Err(HomogError::Dicritical);
    }
    if !frobenius_integrable1(&omega) || !omega.wedge(eta).is_zero() {
        return Err(HomogError::Inconsistent(
            "radial contraction is not integrable",
        ));
    }
    Ok(omega)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lemma22Branch {
    /// `X` not nilpotent: `[X, Y] = 0` and `tr Y = 1`.
    Commuting,
    /// `X` nilpotent and `[Y, X] = lambda X` with `lambda != 0`.
    Nilpotent,
    /// `X` nilpotent with `lambda = 0`.
    NilpotentCommuting,
}

#[derive(Debug, Clone)]
pub struct Lemma22Report {
    pub x: LinearVF,
    pub y: LinearVF,
    pub lambda: Rational,
    pub branch: Lemma22Branch,
    /// Top eigenvalue of `Y` in the nilpotent branch.
    pub rho: Option<Rational>,
    /// Rows are the linear coordinates `(x, y, z, w)` of the nilpotent normal
    /// form, where `X = z1 d/dz2 + z2 d/dz3 + z3 d/dz4` and `Y` is diagonal.
    pub coordinates: Option<Mat>,
}

/// Second linear field `Y` with `eta = i_Y i_X nu`, `X = rot(eta)`, and the
/// structure of the pair.
pub fn lemma22_analyze(eta: &PForm) -> Result<Lemma22Report, HomogError> {
    expect_two_form(eta)?;
    if eta.nvars() != 4 {
        return Err(HomogError::Arity);
    }
    expect_coefficient_degree(eta, 2)?;
    let xf = rotational4(eta)?;
    let x =
        LinearVF::from_field(&xf).ok_or(HomogError::Inconsistent("rotational is not linear"))?;
    let rank = x.rank();
    if rank < 3 {
        return Err(HomogError::RankTooSmall(rank));
    }
    if !eta.interior(&xf).is_zero() {
        return Err(HomogError::InteriorNonzero);
    }
    let yf = derham_vector_solve_homogeneous(eta, &xf, 1)?;
    let y = LinearVF::from_field(&yf).ok_or(HomogError::Inconsistent("solution is not linear"))?;
    let lambda = Rational::one() - y.trace();
    if y.bracket(&x).matrix != linalg::scale(x.matrix(), &lambda) {
        return Err(HomogError::BracketFails);
    }
    if !x.is_nilpotent() {
        if !lambda.is_zero() {
            return Err(HomogError::Inconsistent("non-nilpotent X with lambda != 0"));
        }
        return Ok(Lemma22Report {
            x,
            y,
            lambda,
            branch: Lemma22Branch::Commuting,
            rho: None,
            coordinates: None,
        });
    }
    if lambda.is_zero() {
        return Ok(Lemma22Report {
            x,
            y,
            lambda,
            branch: Lemma22Branch::NilpotentCommuting,
            rho: None,
            coordinates: None,
        });
    }
    let rho = (y.trace() + rat(6) * &lambda) / rat(4);
    if rat(4) * &rho - rat(5) * &lambda != Rational::one() {
        return Err(HomogError::Inconsistent("4 rho - 5 lambda != 1"));
    }
    let spectrum: Vec<Rational> = (0..4).map(|k| &rho - rat(k) * &lambda).collect();
    if linalg::charpoly(y.matrix()) != poly_from_roots(&spectrum) {
        return Err(HomogError::Inconsistent("spectrum of Y"));
    }
    let shifted = linalg::sub(
        y.matrix(),
        &linalg::scale(&linalg::identity(4), &spectrum[3]),
    );
    let w = linalg::left_kernel(&shifted)
        .into_iter()
        .next()
        .ok_or(HomogError::Inconsistent("no eigenvector"))?;
    let z = x.apply_row(&w);
    let yy = x.apply_row(&z);
    let xx = x.apply_row(&yy);
    let t: Mat = vec![xx, yy, z, w];
    let xn = x
        .conjugate(&t)
        .ok_or(HomogError::Inconsistent("normal coordinates are singular"))?;
    let yn = y.conjugate(&t).expect("invertible");
    let mut expected_x = linalg::zeros(4, 4);
    for k in 0..3 {
        expected_x[k + 1][k] = Rational::one();
    }
    if xn.matrix != expected_x || yn != LinearVF::diagonal(&spectrum)? {
        return Err(HomogError::Inconsistent("normal form of (X, Y)"));
    }
    Ok(Lemma22Report {
        x,
        y,
        lambda,
        branch: Lemma22Branch::Nilpotent,
        rho: Some(rho),
        coordinates: Some(t),
    })
}

/// Coefficients (low to high) of `prod (t - r)`.
fn poly_from_roots(roots: &[Rational]) -> Vec<Rational> {
    let mut c = vec![Rational::one()];
    for r in roots {
        let mut next = vec![Rational::zero(); c.len() + 1];
        for (i, v) in c.iter().enumerate() {
            next[i + 1] += v;
            next[i] -= v * r;
        }
        c = next;
    }
    c
}

/// `i_Y i_X nu` on `C^n`.
pub fn double_contraction(x: &VField, y: &VField) -> PForm {
    PForm::volume(x.nvars()).interior(x).interior(y)
}

/// Model of the commuting diagonal branch.
#[derive(Debug, Clone)]
pub struct CaseAData {
    pub x: LinearVF,
    pub y: LinearVF,
    pub eta: PForm,
    /// `z1 z2 z3 z4`.
    pub f: Poly,
    /// Antisymmetric matrix with `eta = f sum_{i<j} rho_ij dz_i ^ dz_j / (z_i z_j)`.
    pub rho: Mat,
}

#[allow(clippy::needless_range_loop)]
pub fn case_a_log_data(lambda: &[Rational], mu: &[Rational]) -> Result<CaseAData, HomogError> {
    if lambda.len() != 4 || mu.len() != 4 {
        return Err(HomogError::Precondition("weights must have length 4"));
    }
    if !lambda.iter().fold(Rational::zero(), |a, b| a + b).is_zero() {
        return Err(HomogError::Precondition("sum of lambda must be 0"));
    }
    if mu.iter().fold(Rational::zero(), |a, b| a + b) != Rational::one() {
        return Err(HomogError::Precondition("sum of mu must be 1"));
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if (&lambda[i] * &mu[j] - &lambda[j] * &mu[i]).is_zero() {
                return Err(HomogError::Precondition(
                    "lambda_i mu_j - lambda_j mu_i vanishes",
                ));
            }
        }
    }
    let x = LinearVF::diagonal(lambda)?;
    let y = LinearVF::diagonal(mu)?;
    let eta = double_contraction(&x.to_field(), &y.to_field());
    let n = 4;
    let f = (0..n).fold(Poly::one(n), |a, i| &a * &Poly::var(n, i));
    let mut rho = linalg::zeros(4, 4);
    for i in 0..4 {
        for j in i + 1..4 {
            let rest: Vec<usize> = (0..4).filter(|&v| v != i && v != j).collect();
            let (k, l) = (rest[0], rest[1]);
            let cof = &Poly::var(n, k) * &Poly::var(n, l);
            let c = eta
                .coeff2(i, j)
                .div_exact(&cof)
                .and_then(|q| {
                    q.constant_value()
                        .or_else(|| q.is_zero().then(Rational::zero))
                })
                .ok_or(HomogError::Inconsistent(
                    "coefficient is not a complementary monomial",
                ))?;
            let minor = &lambda[k] * &mu[l] - &lambda[l] * &mu[k];
            if c != minor && c != -minor.clone() {
                return Err(HomogError::Inconsistent(
                    "rho_ij differs from the complementary minor",
                ));
            }
            rho[j][i] = -c.clone();
            rho[i][j] = c;
        }
    }
    if eta.d().mul_poly(&f) != df(&f).wedge(&eta) {
        return Err(HomogError::Inconsistent(
            "z1 z2 z3 z4 is not an integrating factor",
        ));
    }
    Ok(CaseAData { x, y, eta, f, rho })
}

/// Model of the nilpotent branch.
#[derive(Debug, Clone)]
pub struct CaseBData {
    pub rho: Rational,
    pub lambda: Rational,
    pub x: LinearVF,
    /// `S = sum (j - 1) z_j d/dz_j`.
    pub s: LinearVF,
    /// `Y = rho R - lambda S`.
    pub y: LinearVF,
    pub alpha: PForm,
    pub beta: PForm,
    pub eta: PForm,
    pub g: Poly,
    pub h: Poly,
    /// Constants `(A, B, C)` of the logarithmic representation.
    pub log_constants: [Rational; 3],
}

/// `(g, h) = (z2^3 - 3 z1 z2 z3 + 3 z1^2 z4, z2^2 - 2 z1 z3)`.
pub fn case_b_invariants() -> (Poly, Poly) {
    let n = 4;
    let z = |i: usize| Poly::var(n, i);
    let g = &(&z(1).pow(3) - &(&(&z(0) * &z(1)) * &z(2)).scale(&rat(3)))
        + &(&z(0).pow(2) * &z(3)).scale(&rat(3));
    let h = &z(1).pow(2) - &(&z(0) * &z(2)).scale(&rat(2));
    (g, h)
}

pub fn case_b_normal_data(rho: &Rational, lambda: &Rational) -> Result<CaseBData, HomogError> {
    if rat(4) * rho - rat(5) * lambda != Rational::one() {
        return Err(HomogError::Precondition("4 rho - 5 lambda must equal 1"));
    }
    if lambda.is_zero() {
        return Err(HomogError::Precondition("lambda must be nonzero"));
    }
    let n = 4;
    let mut xm = linalg::zeros(4, 4);
    for k in 0..3 {
        xm[k + 1][k] = Rational::one();
    }
    let x = LinearVF::new(xm)?;
    let s = LinearVF::diagonal(&[rat(0), rat(1), rat(2), rat(3)])?;
    let y = LinearVF::new(linalg::sub(
        &linalg::scale(&linalg::identity(4), rho),
        &linalg::scale(s.matrix(), lambda),
    ))?;
    let r = radial(n).expect("valid arity");
    let xf = x.to_field();
    let alpha = double_contraction(&xf, &s.to_field());
    let beta = double_contraction(&xf, &r);
    let eta = beta.scale(rho).sub(&alpha.scale(lambda));
    if eta != double_contraction(&xf, &y.to_field()) {
        return Err(HomogError::Inconsistent("eta differs from i_Y i_X nu"));
    }
    let (g, h) = case_b_invariants();
    let z1 = Poly::var(n, 0);
    let gh = &g * &h;
    let cleared_df = df(&gh).mul_poly(&z1).sub(&df(&z1).mul_poly(&gh));
    let scale_d = &z1 * &gh;
    for form in [&alpha, &beta] {
        if cleared_df.wedge(form) != form.d().mul_poly(&scale_d) {
            return Err(HomogError::Inconsistent(
                "gh/z1 is not an integrating factor",
            ));
        }
    }
    let a = rho / rat(6);
    let b = (rho - lambda) / rat(3);
    let c = (rho - lambda) / rat(2);
    let dz1 = df(&z1);
    let (dg, dh) = (df(&g), df(&h));
    let rhs = dh
        .wedge(&dg)
        .mul_poly(&z1)
        .scale(&a)
        .add(&dg.wedge(&dz1).mul_poly(&h).scale(&b))
        .add(&dz1.wedge(&dh).mul_poly(&g).scale(&c));
    if eta.mul_poly(&(&z1 * &z1)) != rhs {
        return Err(HomogError::Inconsistent("logarithmic representation"));
    }
    Ok(CaseBData {
        rho: rho.clone(),
        lambda: lambda.clone(),
        x,
        s,
        y,
        alpha,
        beta,
        eta,
        g,
        h,
        log_constants: [a, b, c],
    })
}

/// Checks that `eta + s d(i_R eta)` is integrable with the same rotational
/// for every sample `s`.
pub fn perturbation_integrability(eta: &PForm, samples: &[Rational]) -> Result<bool, HomogError> {
    expect_two_form(eta)?;
    if eta.nvars() != 4 {
        return Err(HomogError::Arity);
    }
    expect_coefficient_degree(eta, 2)?;
    if !is_integrable2_c4(eta)? {
        return Err(HomogError::NotIntegrable);
    }
    let omega = eta.interior(&radial(4).expect("valid arity"));
    if omega.is_zero() {
        return Err(HomogError::Dicritical);
    }
    let d_omega = omega.d();
    let rot = rotational4(eta)?;
    for s in samples {
        let eta_s = eta.add(&d_omega.scale(s));
        if !is_integrable2_c4(&eta_s)? || rotational4(&eta_s)? != rot {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Quadratic `h(x, y)` with `Z(h) = a h - q` for
/// `Z = l1 x d/dx + l2 y d/dy + (a u + q) d/du`, so that `u -> u + h`
/// removes `q`.
pub fn linearize_nonresonant(
    l1: &Rational,
    l2: &Rational,
    a: &Rational,
    q: &Poly,
) -> Result<Poly, HomogError> {
    if q.nvars() != 2 {
        return Err(HomogError::Arity);
    }
    if !q.is_zero() && homogeneous_degree(&PForm::function(q.clone())) != Some(2) {
        return Err(HomogError::Precondition("q must be a quadratic form"));
    }
    let checks = [
        (rat(2) * l1 - a, "2 lambda1 = a"),
        (l1 + l2 - a, "lambda1 + lambda2 = a"),
        (rat(2) * l2 - a, "2 lambda2 = a"),
    ];
    if let Some((_, why)) = checks.iter().find(|(v, _)| v.is_zero()) {
        return Err(HomogError::Resonance(why));
    }
    let mut h = Poly::zero(2);
    for (m, c) in q.terms() {
        let weight = rat(m.exponent(0) as i64) * l1 + rat(m.exponent(1) as i64) * l2;
        h.add_term(*m, c / (a - weight));
    }
    let (x, y) = (Poly::var(2, 0), Poly::var(2, 1));
    let zh = &(&x * &h.partial_unchecked(0)).scale(l1) + &(&y * &h.partial_unchecked(1)).scale(l2);
    if zh != &h.scale(a) - q {
        return Err(HomogError::Inconsistent("linearizing polynomial"));
    }
    Ok(h)
}

/// `eta` involves only `x1..xk`: its contractions with `d/dx_j`, `j > k`,
/// vanish and its coefficients do not depend on those variables.
pub fn depends_only_on_first(eta: &PForm, k: usize) -> bool {
    let n = eta.nvars();
    (k..n).all(|j| {
        eta.interior(&VField::basis(n, j)).is_zero() && eta.terms().all(|(_, c)| !c.uses_var(j))
    })
}

/// Outcome of the pencil experiment along a line `t v` inside `F = G = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PencilCheck {
    /// `d omega = (p + q) dF ^ dG` holds exactly.
    pub differential_identity: bool,
    /// `F` and `G` vanish identically along the line.
    pub line_in_base_locus: bool,
    /// Every coefficient of `omega` vanishes along the line.
    pub omega_vanishes: bool,
    /// Every coefficient of `d omega` vanishes along the line.
    pub d_omega_vanishes: bool,
}

pub fn pencil_line_check(
    f: &Poly,
    g: &Poly,
    p: &Rational,
    q: &Rational,
    v: &[Rational],
) -> Result<PencilCheck, HomogError> {
    let n = f.nvars();
    if g.nvars() != n || v.len() != n {
        return Err(HomogError::Arity);
    }
    let omega = pencil_form(f, g, p, q);
    let d_omega = omega.d();
    let identity = d_omega == df(f).wedge(&df(g)).scale(&(p + q));
    let line: Vec<Poly> = v
        .iter()
        .map(|c| Poly::monomial(1, Monomial::var(0), c.clone()))
        .collect();
    let vanish = |c: &Poly| c.substitute_unchecked(&line, 1).is_zero();
    let omega_vanishes = omega.terms().all(|(_, c)| vanish(c));
    let d_omega_vanishes = d_omega.terms().all(|(_, c)| vanish(c));
    Ok(PencilCheck {
        differential_identity: identity,
        line_in_base_locus: vanish(f) && vanish(g),
        omega_vanishes,
        d_omega_vanishes,
    })
}
