//! The six families of closed square-zero homogeneous 2-forms of degree 2 and
//! their normal-form checks.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use super::factor::{combination, linear_factors, tangent_functions};
use super::HomogError;
use crate::divide::{integrating_factors, lowest_leading};
use crate::foliate::proportionality;
use crate::forms::{df, radial, PForm};
use crate::ratpoly::{ratio, Poly, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Component {
    R22,
    R13,
    L1111,
    L112,
    E,
    S2n,
}

impl Component {
    pub const ALL: [Component; 6] = [
        Component::R22,
        Component::R13,
        Component::L1111,
        Component::L112,
        Component::E,
        Component::S2n,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Component::R22 => "R(2,2)",
            Component::R13 => "R(1,3)",
            Component::L1111 => "L(1,1,1,1)",
            Component::L112 => "L(1,1,2)",
            Component::E => "E(n-1)",
            Component::S2n => "S(2,n)",
        }
    }

    fn required(self) -> (usize, usize) {
        match self {
            Component::R22 => (2, 0),
            Component::R13 => (2, 0),
            Component::L1111 => (4, 4),
            Component::L112 => (3, 3),
            Component::E => (0, 0),
            Component::S2n => (3, 0),
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Component {
    type Err = HomogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        Component::ALL
            .into_iter()
            .find(|c| c.name() == key || (key == "E" && *c == Component::E))
            .ok_or_else(|| HomogError::UnknownComponent(s.to_string()))
    }
}

/// Polynomials and weights a component check needs:
///
/// * `R(2,2)`: `[P, Q]` with `eta = dP ^ dQ`,
/// * `R(1,3)`: `[L, C]` with `eta = dL ^ dC`,
/// * `L(1,1,1,1)`: four linear forms and four weights summing to zero,
/// * `L(1,1,2)`: `[L1, L2, Q]` and weights `[l1, l2, l]` with `l1 + l2 + 2 l = 0`,
/// * `E(n-1)`: nothing,
/// * `S(2,n)`: `[P, Q, R]` in `x1, x2, x3`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ComponentData {
    pub polys: Vec<Poly>,
    pub weights: Vec<Rational>,
}

/// The cubic and quadric of the exceptional family, in `n >= 4` variables.
pub fn exceptional_cubic_quadric(n: usize) -> (Poly, Poly) {
    let x = |i: usize| Poly::var(n, i);
    let c = &(&(&x(2) * &x(3)) * &x(3)) - &(&(&x(0) * &x(1)) * &x(3));
    let c = &c + &x(0).pow(3).scale(&ratio(1, 3));
    let q = &(&x(1) * &x(3)) - &x(0).pow(2).scale(&ratio(1, 2));
    (c, q)
}

/// The exceptional normal form `d(CQ/x4) ^ (2 dC/C - 3 dQ/Q)` as a polynomial
/// 2-form.
pub fn exceptional_form(n: usize) -> Option<PForm> {
    if n < 4 {
        return None;
    }
    let (c, q) = exceptional_cubic_quadric(n);
    let x4 = Poly::var(n, 3);
    let cq = &c * &q;
    let lhs = df(&cq).mul_poly(&x4).sub(&df(&x4).mul_poly(&cq));
    let rhs = df(&c)
        .mul_poly(&q.scale(&Rational::from_integer(2.into())))
        .sub(&df(&q).mul_poly(&c.scale(&Rational::from_integer(3.into()))));
    lhs.wedge(&rhs).div_poly(&(&(&x4 * &x4) * &cq))
}

/// `sum_j w_j (F / G_j) dG_j` for `F = prod G_j`.
fn log_numerator(factors: &[Poly], weights: &[Rational]) -> (Poly, PForm) {
    let n = factors[0].nvars();
    let f = factors.iter().fold(Poly::one(n), |a, b| &a * b);
    let mut w = PForm::zero(n, 1);
    for (g, l) in factors.iter().zip(weights) {
        let cof = f.div_exact(g).expect("factor of the product");
        w = w.add(&df(g).mul_poly(&cof).scale(l));
    }
    (f, w)
}

fn log_identity(eta: &PForm, factors: &[Poly], weights: &[Rational]) -> bool {
    let (f, w) = log_numerator(factors, weights);
    eta.mul_poly(&f) == df(&f).wedge(&w)
}

fn is_linear(p: &Poly) -> bool {
    p.total_degree() == Some(1) && p.terms().all(|(m, _)| m.degree() == 1)
}

pub fn verify_component(
    eta: &PForm,
    tag: Component,
    data: &ComponentData,
) -> Result<bool, HomogError> {
    let (np, nw) = tag.required();
    if data.polys.len() < np || data.weights.len() < nw {
        return Err(HomogError::MissingData {
            tag: tag.name(),
            polys: np,
            weights: nw,
        });
    }
    let n = eta.nvars();
    if data.polys.iter().any(|p| p.nvars() != n) {
        return Err(HomogError::Arity);
    }
    let p = &data.polys;
    let w = &data.weights;
    Ok(match tag {
        Component::R22 => *eta == df(&p[0]).wedge(&df(&p[1])),
        Component::R13 => is_linear(&p[0]) && *eta == df(&p[0]).wedge(&df(&p[1])),
        Component::L1111 => {
            p[..4].iter().all(is_linear)
                && w[..4].iter().fold(Rational::zero(), |a, b| a + b).is_zero()
                && log_identity(eta, &p[..4], &w[..4])
        }
        Component::L112 => {
            is_linear(&p[0])
                && is_linear(&p[1])
                && p[2].total_degree() == Some(2)
                && (&w[0] + &w[1] + &w[2] * Rational::from_integer(2.into())).is_zero()
                && log_identity(eta, &p[..3], &w[..3])
        }
        Component::E => exceptional_form(n).is_some_and(|e| e == *eta),
        Component::S2n => {
            n >= 3 && {
                let x = |i: usize| Poly::var(n, i);
                let euler = &(&(&x(0) * &p[0]) + &(&x(1) * &p[1])) + &(&x(2) * &p[2]);
                let local = p[..3].iter().all(|q| (3..n).all(|v| !q.uses_var(v)));
                let form = (0..3).fold(PForm::zero(n, 2), |acc, i| {
                    acc.add(&df(&p[i]).wedge(&PForm::dx(n, i)))
                });
                euler.is_zero() && local && form == *eta
            }
        }
    })
}

/// Tries to produce data under which `verify_component` accepts `eta`, up to
/// a nonzero scalar multiple of `eta` (returned alongside).
pub fn recognize(eta: &PForm, tag: Component) -> Option<(ComponentData, Rational)> {
    let n = eta.nvars();
    match tag {
        Component::R22 => {
            let quads = tangent_functions(eta, 2);
            pairs(&quads, &quads, eta)
        }
        Component::R13 => {
            let lins = tangent_functions(eta, 1);
            let cubics = tangent_functions(eta, 3);
            pairs(&lins, &cubics, eta)
        }
        Component::L1111 | Component::L112 => {
            let omega = primitive(eta);
            let space = integrating_factors(&omega, 4);
            let mut cands: Vec<Poly> = lowest_leading(&space).into_iter().collect();
            cands.extend(space);
            cands
                .iter()
                .find_map(|f| log_candidate(eta, &omega, f, tag))
        }
        Component::E => {
            let e = exceptional_form(n)?;
            let c = proportionality(eta, &e)?;
            Some((ComponentData::default(), c))
        }
        Component::S2n => {
            if n < 3 {
                return None;
            }
            let omega = primitive(eta);
            let coeffs = omega.one_form_coeffs();
            if coeffs[3..].iter().any(|c| !c.is_zero()) {
                return None;
            }
            let data = ComponentData {
                polys: coeffs[..3].to_vec(),
                weights: Vec::new(),
            };
            verify_component(eta, tag, &data)
                .ok()?
                .then(|| (data, Rational::from_integer(1.into())))
        }
    }
}

/// `i_R eta / 4` for closed `eta` of degree 2.
fn primitive(eta: &PForm) -> PForm {
    let r = radial(eta.nvars()).expect("valid arity");
    eta.interior(&r).scale(&ratio(1, 4))
}

fn pairs(first: &[Poly], second: &[Poly], eta: &PForm) -> Option<(ComponentData, Rational)> {
    for a in first {
        for b in second {
            let w = df(a).wedge(&df(b));
            if w.is_zero() {
                continue;
            }
            if let Some(c) = proportionality(eta, &w) {
                let data = ComponentData {
                    polys: vec![a.scale(&c), b.clone()],
                    weights: Vec::new(),
                };
                return Some((data, Rational::from_integer(1.into())));
            }
        }
    }
    None
}

fn log_candidate(
    eta: &PForm,
    omega: &PForm,
    f: &Poly,
    tag: Component,
) -> Option<(ComponentData, Rational)> {
    let lins = linear_factors(f);
    let mut distinct = lins.clone();
    distinct.dedup();
    if distinct.len() != lins.len() {
        return None;
    }
    let factors: Vec<Poly> = match (tag, lins.len()) {
        (Component::L1111, 4) => lins,
        (Component::L112, 2) => {
            let q = f.div_exact(&(&lins[0] * &lins[1]))?;
            if q.total_degree() != Some(2) {
                return None;
            }
            vec![lins[0].clone(), lins[1].clone(), q]
        }
        _ => return None,
    };
    let n = eta.nvars();
    let prod = factors.iter().fold(Poly::one(n), |a, b| &a * b);
    let gens: Vec<PForm> = factors
        .iter()
        .map(|g| df(g).mul_poly(&prod.div_exact(g).expect("factor")))
        .collect();
    let weights = combination(omega, &gens)?;
    let data = ComponentData {
        polys: factors,
        weights,
    };
    verify_component(eta, tag, &data)
        .ok()?
        .then(|| (data, Rational::from_integer(1.into())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::rat;

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn rational_components_verify() {
        let n = 4;
        let p = &x(n, 0) * &x(n, 1);
        let q = &x(n, 2) * &x(n, 3);
        let eta = df(&p).wedge(&df(&q));
        let data = ComponentData {
            polys: vec![p.clone(), q.clone()],
            weights: vec![],
        };
        assert!(verify_component(&eta, Component::R22, &data).unwrap());
        let (found, _) = recognize(&eta, Component::R22).unwrap();
        assert!(verify_component(&eta, Component::R22, &found).unwrap());
        assert!(verify_component(&eta, Component::R13, &ComponentData::default()).is_err());
    }

    #[test]
    fn exceptional_form_is_polynomial_and_recognized() {
        let e = exceptional_form(4).unwrap();
        assert!(!e.is_zero());
        assert!(e.wedge(&e).is_zero());
        assert!(e.d().is_zero());
        assert!(verify_component(&e, Component::E, &ComponentData::default()).unwrap());
        assert_eq!(
            recognize(&e.scale(&rat(3)), Component::E).unwrap().1,
            rat(3)
        );
    }

    #[test]
    fn s2n_rejects_non_euler_triple() {
        let n = 4;
        let data = ComponentData {
            polys: vec![x(n, 1), x(n, 0), Poly::zero(n)],
            weights: vec![],
        };
        let form = df(&x(n, 1))
            .wedge(&PForm::dx(n, 0))
            .add(&df(&x(n, 0)).wedge(&PForm::dx(n, 1)));
        assert!(!verify_component(&form, Component::S2n, &data).unwrap());
    }

    #[test]
    fn logarithmic_components_are_recognized() {
        let n = 4;
        let lins: Vec<Poly> = (0..4).map(|i| x(n, i)).collect();
        let weights = vec![rat(1), rat(2), rat(-4), rat(1)];
        let (f, w) = log_numerator(&lins, &weights);
        let eta = w.d();
        assert!(eta.mul_poly(&f) == df(&f).wedge(&w));
        let (data, _) = recognize(&eta, Component::L1111).unwrap();
        assert!(verify_component(&eta, Component::L1111, &data).unwrap());

        let q = &(&x(n, 2) * &x(n, 3)) + &x(n, 0).pow(2);
        let factors = vec![x(n, 0), x(n, 1), q];
        let (_, w2) = log_numerator(&factors, &[rat(2), rat(4), rat(-3)]);
        let eta2 = w2.d();
        let (data2, _) = recognize(&eta2, Component::L112).unwrap();
        assert!(verify_component(&eta2, Component::L112, &data2).unwrap());
    }
}
