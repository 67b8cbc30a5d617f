//! Degree-bounded division problems, each solved as an exact linear system on
//! monomial coefficients. Every returned solution is re-verified before it is
//! handed back; "no solution" always means "none with coefficients of degree
//! at most the given bound".

mod linsys;

use thiserror::Error;

pub use linsys::{GradedLinearSystem, Slot, Unknown};

use crate::foliate::frobenius_integrable1;
use crate::forms::{df, PForm, VField};
use crate::linalg;
use crate::ratpoly::{monomials_of_degree, Monomial, Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivideError {
    #[error("expected a {expected}-form, got a {got}-form")]
    Degree { expected: usize, got: usize },
    #[error("variable count mismatch")]
    Arity,
    #[error("alpha0 ^ beta0 vanishes identically")]
    DegenerateBase,
    #[error("necessary condition fails: alpha0 ^ beta0 ^ mu is nonzero")]
    NecessaryConditionFails,
    #[error("no solution within degree bound {0}")]
    NoSolution(u32),
    #[error("i_X eta is nonzero")]
    InteriorNonzero,
    #[error("vector field is zero")]
    ZeroField,
    #[error("form is zero")]
    ZeroForm,
    #[error("form is not integrable")]
    NotIntegrable,
    #[error("no factor of degree {0}")]
    NoFactor(u32),
}

fn expect_degree(a: &PForm, p: usize) -> Result<(), DivideError> {
    if a.degree() == p {
        Ok(())
    } else {
        Err(DivideError::Degree {
            expected: p,
            got: a.degree(),
        })
    }
}

/// Finds `(alpha', beta')` with `mu = alpha0 ^ beta' + alpha' ^ beta0` and
/// coefficient degrees at most `dmax`.
pub fn saito_solve(
    alpha0: &PForm,
    beta0: &PForm,
    mu: &PForm,
    dmax: u32,
) -> Result<(PForm, PForm), DivideError> {
    expect_degree(alpha0, 1)?;
    expect_degree(beta0, 1)?;
    expect_degree(mu, 2)?;
    let n = alpha0.nvars();
    if beta0.nvars() != n || mu.nvars() != n {
        return Err(DivideError::Arity);
    }
    let base = alpha0.wedge(beta0);
    if base.is_zero() {
        return Err(DivideError::DegenerateBase);
    }
    if !base.wedge(mu).is_zero() {
        return Err(DivideError::NecessaryConditionFails);
    }
    if mu.is_zero() {
        return Ok((PForm::zero(n, 1), PForm::zero(n, 1)));
    }
    let sys = GradedLinearSystem::new(
        n,
        vec![Slot::up_to(n, 1, dmax), Slot::up_to(n, 1, dmax)],
        |x| alpha0.wedge(&x[1]).add(&x[0].wedge(beta0)),
    );
    let sol = sys.solve(mu).ok_or(DivideError::NoSolution(dmax))?;
    let (a, b) = (sol[0].clone(), sol[1].clone());
    if alpha0.wedge(&b).add(&a.wedge(beta0)) != *mu {
        return Err(DivideError::NoSolution(dmax));
    }
    Ok((a, b))
}

fn field_from_one_form(w: &PForm) -> VField {
    VField::new(w.one_form_coeffs())
}

/// Finds `Y` with `eta = i_Y i_X nu`, `nu = dx1 ^ ... ^ dxn`.
pub fn derham_vector_solve(eta: &PForm, x: &VField, dmax: u32) -> Result<VField, DivideError> {
    expect_degree(eta, 2)?;
    let n = eta.nvars();
    if x.nvars() != n {
        return Err(DivideError::Arity);
    }
    if x.is_zero() {
        return Err(DivideError::ZeroField);
    }
    if !eta.interior(x).is_zero() {
        return Err(DivideError::InteriorNonzero);
    }
    let ix_nu = PForm::volume(n).interior(x);
    let slot = Slot::up_to(n, 1, dmax);
    derham_with_slot(eta, &ix_nu, slot).ok_or(DivideError::NoSolution(dmax))
}

/// Same as [`derham_vector_solve`] with `Y` restricted to homogeneous
/// components of degree `d`.
pub fn derham_vector_solve_homogeneous(
    eta: &PForm,
    x: &VField,
    d: u32,
) -> Result<VField, DivideError> {
    expect_degree(eta, 2)?;
    let n = eta.nvars();
    if x.nvars() != n {
        return Err(DivideError::Arity);
    }
    if x.is_zero() {
        return Err(DivideError::ZeroField);
    }
    if !eta.interior(x).is_zero() {
        return Err(DivideError::InteriorNonzero);
    }
    let ix_nu = PForm::volume(n).interior(x);
    derham_with_slot(eta, &ix_nu, Slot::homogeneous(n, 1, d)).ok_or(DivideError::NoSolution(d))
}

fn derham_with_slot(eta: &PForm, ix_nu: &PForm, slot: Slot) -> Option<VField> {
    let n = eta.nvars();
    let sys = GradedLinearSystem::new(n, vec![slot], |s| {
        ix_nu.interior(&field_from_one_form(&s[0]))
    });
    let sol = sys.solve(eta)?;
    let y = field_from_one_form(&sol[0]);
    (ix_nu.interior(&y) == *eta).then_some(y)
}

/// Result of [`containing_foliation_search`].
#[derive(Debug, Clone)]
pub struct Cofoliations {
    pub dmax: u32,
    /// Basis of `{omega : omega ^ eta = 0}` within the degree bound.
    pub basis: Vec<PForm>,
    /// Basis members and pairwise sums of basis members that are integrable.
    pub integrable: Vec<PForm>,
}

impl Cofoliations {
    /// Whether `w` lies in the span of the basis.
    pub fn contains(&self, w: &PForm) -> bool {
        in_span(&self.basis, w)
    }
}

/// Whether `w` is a rational linear combination of `basis`.
pub fn in_span(basis: &[PForm], w: &PForm) -> bool {
    if w.is_zero() {
        return true;
    }
    let mut keys = Vec::new();
    for f in basis.iter().chain(std::iter::once(w)) {
        for (b, c) in f.terms() {
            for (m, _) in c.terms() {
                if !keys.contains(&(*b, *m)) {
                    keys.push((*b, *m));
                }
            }
        }
    }
    let a: linalg::Mat = keys
        .iter()
        .map(|(b, m)| basis.iter().map(|f| f.coeff(*b).coeff(m)).collect())
        .collect();
    let rhs: Vec<Rational> = keys.iter().map(|(b, m)| w.coeff(*b).coeff(m)).collect();
    if basis.is_empty() {
        return false;
    }
    linalg::solve(&a, &rhs).is_some()
}

/// Polynomial 1-forms tangent to `eta` with coefficient degree at most `dmax`.
pub fn containing_foliation_search(eta: &PForm, dmax: u32) -> Result<Cofoliations, DivideError> {
    if eta.is_zero() {
        return Err(DivideError::ZeroForm);
    }
    let n = eta.nvars();
    let sys = GradedLinearSystem::new(n, vec![Slot::up_to(n, 1, dmax)], |x| x[0].wedge(eta));
    let basis: Vec<PForm> = sys
        .nullspace()
        .into_iter()
        .map(|mut v| v.remove(0))
        .collect();
    let mut integrable: Vec<PForm> = basis
        .iter()
        .filter(|w| frobenius_integrable1(w))
        .cloned()
        .collect();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = basis[i].add(&basis[j]);
            if frobenius_integrable1(&s) {
                integrable.push(s);
            }
        }
    }
    Ok(Cofoliations {
        dmax,
        basis,
        integrable,
    })
}

/// Homogeneous `P` of degree `d` with `P d omega = dP ^ omega`, normalized to
/// leading coefficient 1. Among all solutions the one with the smallest
/// leading monomial is returned.
pub fn integrating_factor_search(omega: &PForm, d: u32) -> Result<Poly, DivideError> {
    expect_degree(omega, 1)?;
    if !frobenius_integrable1(omega) {
        return Err(DivideError::NotIntegrable);
    }
    let space = integrating_factors(omega, d);
    lowest_leading(&space).ok_or(DivideError::NoFactor(d))
}

/// Basis of all homogeneous integrating factors of degree `d`.
pub fn integrating_factors(omega: &PForm, d: u32) -> Vec<Poly> {
    let n = omega.nvars();
    let dw = omega.d();
    let sys = GradedLinearSystem::new(n, vec![Slot::homogeneous(n, 0, d)], |x| {
        let p = x[0].as_function().expect("0-form");
        dw.mul_poly(&p).sub(&df(&p).wedge(omega))
    });
    sys.nullspace()
        .into_iter()
        .map(|v| v[0].as_function().expect("0-form"))
        .collect()
}

/// Element of the span with the graded-lex smallest leading monomial, monic.
pub fn lowest_leading(space: &[Poly]) -> Option<Poly> {
    let first = space.first()?;
    let n = first.nvars();
    let mut monos: Vec<Monomial> = Vec::new();
    for p in space {
        for (m, _) in p.terms() {
            if !monos.contains(m) {
                monos.push(*m);
            }
        }
    }
    monos.sort_by(|a, b| b.cmp(a));
    let mat: linalg::Mat = space
        .iter()
        .map(|p| monos.iter().map(|m| p.coeff(m)).collect())
        .collect();
    let (r, pivots) = linalg::rref(&mat);
    let last = pivots.len().checked_sub(1)?;
    let p = Poly::from_terms(n, monos.iter().zip(&r[last]).map(|(m, c)| (*m, c.clone())));
    Some(p.monic())
}

/// All monomials of degree `d`, exposed for pattern solves.
pub fn degree_basis(n: usize, d: u32) -> Vec<Monomial> {
    monomials_of_degree(n, d)
}
