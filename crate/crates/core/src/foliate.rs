//! Foliation predicates and constructors: decomposability, integrability, the
//! rotational on `C^4`, dicriticality, Kupka points, complete intersections and
//! the logarithmic example family.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::forms::{df, radial, Blade, FormError, PForm, VField};
use crate::ratpoly::{content_gcd, rat, Homogeneity, Poly, PolyError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoliateError {
    #[error("expected a {expected}-form, got a {got}-form")]
    Degree { expected: usize, got: usize },
    #[error("expected {expected} variables, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("form is not decomposable (its square is nonzero)")]
    NotDecomposable,
    #[error("zero form")]
    ZeroForm,
    #[error("no pivot found among constant contractions")]
    NoPivot,
    #[error("factors do not multiply to eta")]
    FactorsMismatch,
    #[error("factor {0} is not integrable")]
    FactorNotIntegrable(usize),
    #[error("generically dependent: the wedge product vanishes identically")]
    GenericallyDependent,
    #[error("colinear weights")]
    ColinearWeights,
    #[error("weights must all be nonzero")]
    ZeroWeight,
    #[error("weight vectors have lengths {0} and {1}")]
    WeightLength(usize, usize),
    #[error("polynomial is not linear")]
    NotLinear,
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn expect_degree(a: &PForm, p: usize) -> Result<(), FoliateError> {
    if a.degree() == p {
        Ok(())
    } else {
        Err(FoliateError::Degree {
            expected: p,
            got: a.degree(),
        })
    }
}

fn expect_arity(n: usize, want: usize) -> Result<(), FoliateError> {
    if n == want {
        Ok(())
    } else {
        Err(FoliateError::Arity {
            expected: want,
            got: n,
        })
    }
}

/// Form with a polynomial denominator, `numerator / denominator`.
#[derive(Debug, Clone)]
pub struct MeroForm {
    pub numerator: PForm,
    pub denominator: Poly,
}

impl MeroForm {
    pub fn new(numerator: PForm, denominator: Poly) -> Self {
        assert!(!denominator.is_zero(), "zero denominator");
        MeroForm {
            numerator,
            denominator,
        }
    }

    pub fn holomorphic(numerator: PForm) -> Self {
        let n = numerator.nvars();
        MeroForm::new(numerator, Poly::one(n))
    }

    /// Exterior derivative, as `(q da - dq ^ a) / q^2`.
    pub fn d(&self) -> MeroForm {
        let q = &self.denominator;
        let num = self
            .numerator
            .d()
            .mul_poly(q)
            .sub(&df(q).wedge(&self.numerator));
        MeroForm::new(num, q * q)
    }

    pub fn wedge(&self, other: &MeroForm) -> MeroForm {
        MeroForm::new(
            self.numerator.wedge(&other.numerator),
            &self.denominator * &other.denominator,
        )
    }
}

impl PartialEq for MeroForm {
    fn eq(&self, other: &Self) -> bool {
        self.numerator.mul_poly(&other.denominator) == other.numerator.mul_poly(&self.denominator)
    }
}

/// Witness of a meromorphic decomposition `eta = omega1 ^ omega2`.
#[derive(Debug, Clone)]
pub struct DecompositionWitness {
    pub omega1: MeroForm,
    pub omega2: PForm,
    pub z1: VField,
    pub z2: VField,
    /// `eta(Z1, Z2) = i_{Z2} i_{Z1} eta`.
    pub pivot: Poly,
}

impl DecompositionWitness {
    /// Checks `pivot * eta = i_{Z1} eta ^ i_{Z2} eta` and that the stored
    /// factors agree with the contractions.
    pub fn verify(&self, eta: &PForm) -> bool {
        let a = eta.interior(&self.z1);
        let b = eta.interior(&self.z2);
        !self.pivot.is_zero()
            && a.interior(&self.z2).as_function() == Some(self.pivot.clone())
            && eta.mul_poly(&self.pivot) == a.wedge(&b)
            && self.omega1 == MeroForm::new(a, self.pivot.clone())
            && self.omega2 == b
    }
}

pub fn is_decomposable2(eta: &PForm) -> bool {
    eta.wedge(eta).is_zero()
}

/// Constant vector pairs `(Z1, Z2)` in scan order: for basis pairs `i < j`,
/// `Z1 = e_j` and `Z2 = e_i`; then the same with sums `e_i + e_j`.
fn pivot_candidates(n: usize) -> Vec<(Vec<Rational>, Vec<Rational>)> {
    let unit = |i: usize| {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::one();
        v
    };
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push((unit(j), unit(i)));
        }
    }
    let mut sums = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = unit(i);
            v[j] = Rational::one();
            sums.push(v);
        }
    }
    for (k, a) in sums.iter().enumerate() {
        for b in sums.iter().skip(k + 1) {
            out.push((b.clone(), a.clone()));
        }
    }
    out
}

/// Meromorphic factorization of a square-zero 2-form with constant pivots.
pub fn mero_decompose(eta: &PForm) -> Result<DecompositionWitness, FoliateError> {
    expect_degree(eta, 2)?;
    if eta.is_zero() {
        return Err(FoliateError::ZeroForm);
    }
    if !is_decomposable2(eta) {
        return Err(FoliateError::NotDecomposable);
    }
    let n = eta.nvars();
    for (v1, v2) in pivot_candidates(n) {
        let z1 = VField::constant(&v1);
        let z2 = VField::constant(&v2);
        let a = eta.interior(&z1);
        let pivot = a
            .interior(&z2)
            .as_function()
            .unwrap_or_else(|| Poly::zero(n));
        if pivot.is_zero() {
            continue;
        }
        let b = eta.interior(&z2);
        let w = DecompositionWitness {
            omega1: MeroForm::new(a, pivot.clone()),
            omega2: b,
            z1,
            z2,
            pivot,
        };
        if !w.verify(eta) {
            return Err(FoliateError::NotDecomposable);
        }
        return Ok(w);
    }
    Err(FoliateError::NoPivot)
}

/// The field `X` with `d eta = i_X (dx1 ^ dx2 ^ dx3 ^ dx4)`.
pub fn rotational4(eta: &PForm) -> Result<VField, FoliateError> {
    expect_arity(eta.nvars(), 4)?;
    expect_degree(eta, 2)?;
    let d = eta.d();
    let full = Blade::full(4);
    let comps = (0..4)
        .map(|k| {
            let c = d.coeff(full.without(k));
            if k % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect();
    Ok(VField::new(comps))
}

/// Integrability of a 2-form on `C^4` via the rotational criterion.
pub fn is_integrable2_c4(eta: &PForm) -> Result<bool, FoliateError> {
    let x = rotational4(eta)?;
    if eta.is_zero() {
        return Ok(true);
    }
    if !is_decomposable2(eta) {
        return Ok(false);
    }
    if x.is_zero() {
        return Ok(true);
    }
    Ok(eta.interior(&x).is_zero())
}

/// Integrability of a 2-form in any dimension: square zero, and both factors
/// of the meromorphic decomposition satisfy Frobenius after clearing
/// denominators.
pub fn is_integrable2_cleared(eta: &PForm) -> Result<bool, FoliateError> {
    expect_degree(eta, 2)?;
    if eta.is_zero() {
        return Ok(true);
    }
    if !is_decomposable2(eta) {
        return Ok(false);
    }
    let w = mero_decompose(eta)?;
    let d1 = w.omega1.d().numerator;
    let d2 = w.omega2.d();
    Ok(d1.wedge(eta).is_zero() && d2.wedge(eta).is_zero())
}

pub fn frobenius_integrable1(omega: &PForm) -> bool {
    omega.degree() == 1 && omega.wedge(&omega.d()).is_zero()
}

/// `d(omega_j) ^ eta = 0` for each factor, after checking that the factors
/// multiply to a nonzero rational multiple of `eta`.
pub fn frobenius_integrable_q(eta: &PForm, factors: &[PForm]) -> Result<bool, FoliateError> {
    if factors.len() != eta.degree()
        || factors
            .iter()
            .any(|f| f.degree() != 1 || f.nvars() != eta.nvars())
    {
        return Err(FoliateError::FactorsMismatch);
    }
    let mut prod = PForm::function(Poly::one(eta.nvars()));
    for f in factors {
        prod = prod.wedge(f);
    }
    if proportionality(&prod, eta).is_none() {
        return Err(FoliateError::FactorsMismatch);
    }
    Ok(factors.iter().all(|w| w.d().wedge(eta).is_zero()))
}

/// Nonzero `c` with `a = c * b`, if any (both forms nonzero).
pub fn proportionality(a: &PForm, b: &PForm) -> Option<Rational> {
    let (blade, bc) = b.terms().next()?;
    let ac = a.coeff(*blade);
    let (m, lb) = bc.leading_term()?;
    let c = ac.coeff(m) / lb;
    if c.is_zero() {
        return None;
    }
    (b.scale(&c) == *a).then_some(c)
}

pub fn is_dicritical(omega: &PForm) -> bool {
    let r = radial(omega.nvars()).expect("form arity is valid");
    omega.interior(&r).is_zero()
}

/// Result of [`complete_intersection`].
#[derive(Debug, Clone)]
pub struct Intersection {
    /// Wedge product divided by its content.
    pub eta: PForm,
    /// Monic content of the wedge product.
    pub factor: Poly,
    pub complete: bool,
}

pub fn complete_intersection(omegas: &[PForm]) -> Result<Intersection, FoliateError> {
    let n = omegas.first().ok_or(FoliateError::ZeroForm)?.nvars();
    let mut prod = PForm::function(Poly::one(n));
    for (k, w) in omegas.iter().enumerate() {
        expect_degree(w, 1)?;
        expect_arity(w.nvars(), n)?;
        if !frobenius_integrable1(w) {
            return Err(FoliateError::FactorNotIntegrable(k));
        }
        prod = prod.wedge(w);
    }
    if prod.is_zero() {
        return Err(FoliateError::GenericallyDependent);
    }
    let factor = content_gcd(&prod.coefficients())?;
    let eta = prod
        .div_poly(&factor)
        .expect("content divides every coefficient");
    let complete = factor.is_constant();
    Ok(Intersection {
        eta,
        factor,
        complete,
    })
}

fn check_weights(lambda: &[Rational], mu: &[Rational]) -> Result<(), FoliateError> {
    if lambda.len() != mu.len() {
        return Err(FoliateError::WeightLength(lambda.len(), mu.len()));
    }
    let n = lambda.len();
    if !(2..=crate::ratpoly::MAX_VARS).contains(&n) {
        return Err(FormError::BadVariableCount(n).into());
    }
    if lambda.iter().chain(mu).any(|v| v.is_zero()) {
        return Err(FoliateError::ZeroWeight);
    }
    let colinear =
        (0..n).all(|i| (i + 1..n).all(|j| (&lambda[i] * &mu[j] - &lambda[j] * &mu[i]).is_zero()));
    if colinear {
        return Err(FoliateError::ColinearWeights);
    }
    Ok(())
}

/// True when every minor `lambda_i mu_j - lambda_j mu_i` is nonzero.
pub fn generic_weights(lambda: &[Rational], mu: &[Rational]) -> bool {
    let n = lambda.len();
    (0..n).all(|i| (i + 1..n).all(|j| !(&lambda[i] * &mu[j] - &lambda[j] * &mu[i]).is_zero()))
}

fn product_except(n: usize, skip: &[usize]) -> Poly {
    (0..n)
        .filter(|k| !skip.contains(k))
        .fold(Poly::one(n), |acc, k| &acc * &Poly::var(n, k))
}

/// `sum_{i<j} (l_i m_j - l_j m_i) x_1..^x_i..^x_j..x_n dx_i ^ dx_j`.
pub fn log_example(lambda: &[Rational], mu: &[Rational]) -> Result<PForm, FoliateError> {
    check_weights(lambda, mu)?;
    let n = lambda.len();
    let mut eta = PForm::zero(n, 2);
    for i in 0..n {
        for j in i + 1..n {
            let c = &lambda[i] * &mu[j] - &lambda[j] * &mu[i];
            eta.add_term(
                Blade::single(i).with(j),
                product_except(n, &[i, j]).scale(&c),
            );
        }
    }
    Ok(eta)
}

/// The polynomial 1-forms `x_1..x_n * sum w_j dx_j / x_j` for both weights.
pub fn log_factors(lambda: &[Rational], mu: &[Rational]) -> Result<(PForm, PForm), FoliateError> {
    check_weights(lambda, mu)?;
    let n = lambda.len();
    let build = |w: &[Rational]| {
        PForm::one_form(
            &(0..n)
                .map(|j| product_except(n, &[j]).scale(&w[j]))
                .collect::<Vec<_>>(),
        )
    };
    Ok((build(lambda), build(mu)))
}

/// True iff `h` divides every coefficient of `dh ^ eta`.
pub fn invariant_hyperplane(eta: &PForm, h: &Poly) -> Result<bool, FoliateError> {
    if h.total_degree() != Some(1) {
        return Err(FoliateError::NotLinear);
    }
    expect_arity(h.nvars(), eta.nvars())?;
    Ok(df(h).wedge(eta).div_poly(h).is_some())
}

/// `omega(p) = 0` and `d omega (p) != 0`.
pub fn kupka_point(omega: &PForm, p: &[Rational]) -> bool {
    omega.eval(p).is_empty() && !omega.d().eval(p).is_empty()
}

/// `eta = u df ^ dg` exactly.
pub fn verify_first_integrals(eta: &PForm, f: &Poly, g: &Poly, u: &Poly) -> bool {
    !u.is_zero() && *eta == df(f).wedge(&df(g)).mul_poly(u)
}

/// `i_Z (dx1 ^ dx2 ^ dx3)` pulled back to `C^n` along the projection to the
/// first three coordinates.
pub fn tangent_pullback_example(z: &VField, n: usize) -> Result<PForm, FoliateError> {
    expect_arity(z.nvars(), 3)?;
    if !(3..=crate::ratpoly::MAX_VARS).contains(&n) {
        return Err(FormError::BadVariableCount(n).into());
    }
    let eta3 = PForm::volume(3).interior(z);
    let proj = crate::forms::PolyMap::new(n, (0..3).map(|i| Poly::var(n, i)).collect());
    Ok(eta3.pullback(&proj))
}

/// Homogeneity of a form's coefficients as an optional degree.
pub fn homogeneous_degree(eta: &PForm) -> Option<u32> {
    match eta.coeff_homogeneity() {
        Homogeneity::Degree(d) => Some(d),
        Homogeneity::AnyDegree => Some(0),
        Homogeneity::NotHomogeneous => None,
    }
}

/// The pencil form `q F dG - p G dF`.
pub fn pencil_form(f: &Poly, g: &Poly, p: &Rational, q: &Rational) -> PForm {
    df(g)
        .mul_poly(&f.scale(q))
        .sub(&df(f).mul_poly(&g.scale(p)))
}

pub fn weights(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}
