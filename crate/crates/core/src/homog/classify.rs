//! Classification driver for homogeneous integrable 2-forms of degree at most 2.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::components::{recognize, verify_component, Component};
use super::factor::{combination, complete_basis, linear_coeffs, linear_factors};
use super::{
    case_b_invariants, case_b_normal_data, depends_only_on_first, double_contraction,
    expect_two_form, is_integrable, lemma22_analyze, HomogError, Lemma22Branch, LinearVF,
};
use crate::divide::{integrating_factor_search, integrating_factors, lowest_leading};
use crate::foliate::{homogeneous_degree, proportionality, rotational4, verify_first_integrals};
use crate::forms::{df, radial, PForm, PolyMap, VField};
use crate::linalg::{self, Mat};
use crate::ratpoly::{rat, ratio, Monomial, Poly, Rational};

/// Named data attached to a classification.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    Poly(Poly),
    Polys(Vec<Poly>),
    Form(PForm),
    Map(PolyMap),
    Scalar(Rational),
    Scalars(Vec<Rational>),
    Matrix(Mat),
    Field(VField),
    Tag(String),
}

#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub degree: u32,
    pub nvars: usize,
    pub branch: String,
    pub witnesses: BTreeMap<String, Witness>,
    /// Every witnessed identity re-checked exactly. Branches that end without
    /// a normal form ("unresolved", "unrecognized", "unsupported") report
    /// `false`.
    pub verified: bool,
}

struct Builder {
    degree: u32,
    nvars: usize,
    witnesses: BTreeMap<String, Witness>,
}

impl Builder {
    fn put(&mut self, key: &str, w: Witness) -> &mut Self {
        self.witnesses.insert(key.to_string(), w);
        self
    }

    fn finish(self, branch: &str, verified: bool) -> ClassificationReport {
        ClassificationReport {
            degree: self.degree,
            nvars: self.nvars,
            branch: branch.to_string(),
            witnesses: self.witnesses,
            verified,
        }
    }
}

pub fn classify(eta: &PForm) -> Result<ClassificationReport, HomogError> {
    expect_two_form(eta)?;
    if eta.is_zero() {
        return Err(HomogError::ZeroForm);
    }
    let m = homogeneous_degree(eta).ok_or(HomogError::NotHomogeneous)?;
    if m > 2 {
        return Err(HomogError::DegreeTooHigh(m));
    }
    if !is_integrable(eta)? {
        return Err(HomogError::NotIntegrable);
    }
    let mut b = Builder {
        degree: m,
        nvars: eta.nvars(),
        witnesses: BTreeMap::new(),
    };
    let closed = eta.d().is_zero();
    Ok(match (m, closed) {
        (0, _) => degree0(eta, b),
        (1, false) => degree1_open(eta, b),
        (1, true) => degree1_closed(eta, b),
        (_, true) => degree2_closed(eta, b),
        (_, false) => {
            let n = eta.nvars();
            if n == 4 {
                degree2_open(eta, b)?
            } else if n > 4 && depends_only_on_first(eta, 4) {
                let inner = degree2_open(&eta.with_nvars(4), Builder { nvars: 4, ..b })?;
                let mut r = inner;
                r.nvars = n;
                r.witnesses.insert(
                    "reduction".into(),
                    Witness::Tag("depends only on x1..x4".into()),
                );
                r
            } else {
                b.put(
                    "rotational",
                    Witness::Tag("defined only for four variables".into()),
                );
                b.finish("unsupported dimension", false)
            }
        }
    })
}

fn constant_row(w: &PForm) -> Vec<Rational> {
    w.one_form_coeffs()
        .iter()
        .map(|c| c.constant_value().unwrap_or_else(Rational::zero))
        .collect()
}

fn first_rows(t: &Mat, k: usize) -> PolyMap {
    PolyMap::linear(&t[..k])
}

fn volume_first(n: usize, k: usize) -> PForm {
    (0..k).fold(PForm::function(Poly::one(n)), |acc, i| {
        acc.wedge(&PForm::dx(n, i))
    })
}

/// Field `Z` on the first three coordinates with `eta = i_Z (dy1 ^ dy2 ^ dy3)`.
fn three_field(eta: &PForm) -> VField {
    let c = |i, j| eta.coeff2(i, j).with_nvars(3);
    VField::new(vec![c(1, 2), -c(0, 2), c(0, 1)])
}

fn degree0(eta: &PForm, mut b: Builder) -> ClassificationReport {
    let n = eta.nvars();
    let (blade, _) = eta.terms().next().expect("nonzero form");
    let idx = blade.indices();
    let u = eta.interior(&VField::basis(n, idx[0]));
    let v = eta.interior(&VField::basis(n, idx[1]));
    let k = proportionality(eta, &u.wedge(&v)).expect("square-zero constant form");
    let rows = vec![
        constant_row(&u).iter().map(|c| c * &k).collect::<Vec<_>>(),
        constant_row(&v),
    ];
    let t = complete_basis(&rows, n).expect("independent rows");
    let ok = volume_first(n, 2).pullback(&PolyMap::linear(&t)) == *eta;
    b.put("L1", Witness::Poly(Poly::linear(&rows[0])))
        .put("L2", Witness::Poly(Poly::linear(&rows[1])))
        .put("coordinates", Witness::Matrix(t));
    b.finish("darboux", ok)
}

fn degree1_open(eta: &PForm, mut b: Builder) -> ClassificationReport {
    let n = eta.nvars();
    let theta = eta.d();
    let mut rows: Mat = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let w = theta
                .interior(&VField::basis(n, i))
                .interior(&VField::basis(n, j));
            if !w.is_zero() {
                rows.push(constant_row(&w));
            }
        }
    }
    let (r, pivots) = linalg::rref(&rows);
    if pivots.len() != 3 {
        b.put("d_eta", Witness::Form(theta));
        return b.finish("reduction incomplete", false);
    }
    let mut basis: Mat = r[..3].to_vec();
    let product = basis
        .iter()
        .fold(PForm::function(Poly::one(n)), |acc, row| {
            acc.wedge(&df(&Poly::linear(row)))
        });
    let k = proportionality(&theta, &product).expect("decomposable constant 3-form");
    basis[0] = basis[0].iter().map(|c| c * &k).collect();
    let t = complete_basis(&basis, n).expect("independent rows");
    let tinv = linalg::inverse(&t).expect("invertible");
    let reduced = eta.pullback(&PolyMap::linear(&tinv));
    b.put("coordinates", Witness::Matrix(t.clone()));
    if !depends_only_on_first(&reduced, 3) {
        b.put("reduced", Witness::Form(reduced));
        return b.finish("reduction incomplete", false);
    }
    let l = three_field(&reduced);
    let linear = l.linear_matrix().is_some();
    let model = PForm::volume(3).interior(&l);
    let ok =
        linear && model.pullback(&first_rows(&t, 3)) == *eta && reduced.d() == volume_first(n, 3);
    b.put("L", Witness::Field(l));
    b.finish("linear vector field", ok)
}

fn degree1_closed(eta: &PForm, mut b: Builder) -> ClassificationReport {
    let n = eta.nvars();
    let omega = eta
        .interior(&radial(n).expect("valid arity"))
        .scale(&ratio(1, 3));
    b.put("omega", Witness::Form(omega.clone()));
    let Ok(p) = integrating_factor_search(&omega, 3) else {
        return b.finish("unresolved: no cubic integrating factor", false);
    };
    b.put("P", Witness::Poly(p.clone()));
    let factor_ok = omega.d().mul_poly(&p) == df(&p).wedge(&omega);
    let mut lins = linear_factors(&p);
    lins.dedup();
    for l in &lins {
        let q = p.div_exact(l).expect("factor");
        let w = df(l).wedge(&df(&q));
        if let Some(c) = proportionality(eta, &w) {
            let q = q.scale(&c);
            let ok = factor_ok && verify_first_integrals(eta, l, &q, &Poly::one(n));
            b.put("L", Witness::Poly(l.clone()))
                .put("Q", Witness::Poly(q));
            return b.finish("L·Q", ok);
        }
    }
    let rows: Mat = lins.iter().map(linear_coeffs).collect();
    if lins.len() == 3 && linalg::rank(&rows) == 3 {
        let prod = lins.iter().fold(Poly::one(n), |a, l| &a * l);
        let gens: Vec<PForm> = lins
            .iter()
            .map(|l| df(l).mul_poly(&prod.div_exact(l).expect("factor")))
            .collect();
        if let Some(weights) = combination(&omega, &gens) {
            let sum: Rational = weights.iter().fold(Rational::zero(), |a, w| a + w);
            let ok = factor_ok && sum.is_zero() && eta.mul_poly(&prod) == df(&prod).wedge(&omega);
            b.put("linear_factors", Witness::Polys(lins))
                .put("weights", Witness::Scalars(weights));
            return b.finish("x1x2x3 logarithmic", ok);
        }
    }
    b.finish("unresolved: P found, factorization unrecognized", false)
}

fn degree2_closed(eta: &PForm, mut b: Builder) -> ClassificationReport {
    let mut found = Vec::new();
    let mut ok = true;
    for tag in Component::ALL {
        if let Some((data, scale)) = recognize(eta, tag) {
            let target = eta.scale(&(Rational::one() / &scale));
            ok &= verify_component(&target, tag, &data).unwrap_or(false);
            if !data.polys.is_empty() {
                b.put(&format!("{tag}.polys"), Witness::Polys(data.polys.clone()));
            }
            if !data.weights.is_empty() {
                b.put(
                    &format!("{tag}.weights"),
                    Witness::Scalars(data.weights.clone()),
                );
            }
            if !scale.is_one() {
                b.put(&format!("{tag}.scale"), Witness::Scalar(scale));
            }
            found.push(tag.name());
        }
    }
    if found.is_empty() {
        let omega = eta
            .interior(&radial(eta.nvars()).expect("valid arity"))
            .scale(&ratio(1, 4));
        if let Some(f) = lowest_leading(&integrating_factors(&omega, 4)) {
            b.put("integrating_factor", Witness::Poly(f));
        }
        b.put("omega", Witness::Form(omega));
        return b.finish("unrecognized", false);
    }
    b.put("components", Witness::Tag(found.join(", ")));
    b.finish(&found.join(", "), ok)
}

fn degree2_open(eta: &PForm, mut b: Builder) -> Result<ClassificationReport, HomogError> {
    let n = 4;
    let xf = rotational4(eta)?;
    let x =
        LinearVF::from_field(&xf).ok_or(HomogError::Inconsistent("rotational is not linear"))?;
    b.put("X", Witness::Matrix(x.matrix().clone()));
    let r = radial(n).expect("valid arity");
    if eta.interior(&r).is_zero() {
        let ok = *eta == double_contraction(&xf, &r).scale(&ratio(1, 4));
        return Ok(b.finish("dicritical", ok));
    }
    match x.rank() {
        0 => Err(HomogError::Inconsistent(
            "non-closed form with zero rotational",
        )),
        1 => Ok(case_21(eta, &x, b)),
        2 => Ok(case_22(eta, &x, b)),
        _ => lemma22_branch(eta, b),
    }
}

fn lemma22_branch(eta: &PForm, mut b: Builder) -> Result<ClassificationReport, HomogError> {
    let rep = lemma22_analyze(eta)?;
    let (xf, yf) = (rep.x.to_field(), rep.y.to_field());
    let contraction_ok = double_contraction(&xf, &yf) == *eta;
    let bracket = rep.y.bracket(&rep.x);
    b.put("Y", Witness::Matrix(rep.y.matrix().clone()))
        .put("lambda", Witness::Scalar(rep.lambda.clone()));
    Ok(match rep.branch {
        Lemma22Branch::Commuting => {
            let ok = contraction_ok && linalg::is_zero(bracket.matrix()) && rep.y.trace().is_one();
            b.finish("linear pair (a)", ok)
        }
        Lemma22Branch::NilpotentCommuting => {
            let ok = contraction_ok && linalg::is_zero(bracket.matrix());
            b.finish("linear pair (nilpotent, lambda = 0)", ok)
        }
        Lemma22Branch::Nilpotent => {
            let rho = rep.rho.clone().expect("nilpotent branch has rho");
            let t = rep
                .coordinates
                .clone()
                .expect("nilpotent branch has coordinates");
            let tinv = linalg::inverse(&t).expect("invertible");
            let in_z = eta.pullback(&PolyMap::linear(&tinv));
            let model = case_b_normal_data(&rho, &rep.lambda)?;
            let scale = proportionality(&in_z, &model.eta);
            let to_x = PolyMap::linear(&t);
            let (g, h) = case_b_invariants();
            let back =
                |p: &Poly| PolyMap::new(4, vec![p.clone()]).compose(&to_x).components()[0].clone();
            b.put("rho", Witness::Scalar(rho))
                .put("coordinates", Witness::Matrix(t))
                .put("g", Witness::Poly(back(&g)))
                .put("h", Witness::Poly(back(&h)))
                .put(
                    "log_constants",
                    Witness::Scalars(model.log_constants.to_vec()),
                );
            if let Some(s) = &scale {
                b.put("scale", Witness::Scalar(s.clone()));
            }
            b.finish("linear pair (b)", contraction_ok && scale.is_some())
        }
    })
}

fn case_21(eta: &PForm, x: &LinearVF, mut b: Builder) -> ClassificationReport {
    let n = 4;
    let a = x.matrix();
    let col = (0..n)
        .find(|&k| a.iter().any(|r| !r[k].is_zero()))
        .expect("rank one");
    let v: Vec<Rational> = a.iter().map(|r| r[col].clone()).collect();
    let mut cols = complete_basis(std::slice::from_ref(&v), n).expect("nonzero vector");
    cols.rotate_left(1);
    let m = linalg::transpose(&cols);
    let t = linalg::inverse(&m).expect("invertible");
    let reduced = eta.pullback(&PolyMap::linear(&m));
    b.put("coordinates", Witness::Matrix(t.clone()));
    if !depends_only_on_first(&reduced, 3) {
        b.put("reduced", Witness::Form(reduced));
        return b.finish("2.1 (reduction incomplete)", false);
    }
    let z = three_field(&reduced);
    let model = PForm::volume(3).interior(&z);
    let ok = model.pullback(&first_rows(&t, 3)) == *eta;
    b.put("Z", Witness::Field(z.clone()))
        .put("H", Witness::Poly(z.divergence()))
        .put("projection", Witness::Map(first_rows(&t, 3)));
    b.finish("2.1", ok)
}

/// Data of a rank-two normal form read off in adapted coordinates.
struct Reduction {
    map: PolyMap,
    reduced: PForm,
    a: Rational,
    q: Poly,
}

fn case_22(eta: &PForm, x: &LinearVF, mut b: Builder) -> ClassificationReport {
    let a = x.matrix();
    let a2 = linalg::matmul(a, a);
    let (branch, coords) = if linalg::is_zero(&a2) {
        ("2.2.3", coords_223(x))
    } else if x.is_nilpotent() {
        ("2.2.2", coords_222(x))
    } else {
        let cp = linalg::charpoly(a);
        let roots: Vec<Rational> = linalg::rational_roots(&cp)
            .into_iter()
            .filter(|r| *r > Rational::zero())
            .collect();
        match roots.first() {
            Some(c) if roots.len() == 1 => ("2.2.1", coords_221(x, c)),
            _ => {
                b.put("charpoly", Witness::Scalars(cp));
                return b.finish("unsupported spectrum", false);
            }
        }
    };
    let Some(t) = coords else {
        return b.finish(&format!("{branch} (no adapted coordinates)"), false);
    };
    let tinv = linalg::inverse(&t).expect("invertible");
    let in_z = eta.pullback(&PolyMap::linear(&tinv));
    let red = match branch {
        "2.2.1" => reduce_221(&in_z),
        "2.2.2" => reduce_222(&in_z),
        _ => reduce_223(&in_z),
    };
    b.put("coordinates", Witness::Matrix(t.clone()));
    match red {
        Ok(r) => {
            let full = r.map.compose(&PolyMap::linear(&t));
            let ok = r.reduced.pullback(&full) == *eta;
            b.put("Phi", Witness::Map(full))
                .put("reduced", Witness::Form(r.reduced))
                .put("a", Witness::Scalar(r.a))
                .put("q", Witness::Poly(r.q));
            b.finish(branch, ok)
        }
        Err(why) => {
            b.put("failure", Witness::Tag(why.to_string()));
            b.finish(branch, false)
        }
    }
}

fn invertible(t: Mat) -> Option<Mat> {
    linalg::inverse(&t).map(|_| t)
}

fn coords_221(x: &LinearVF, c: &Rational) -> Option<Mat> {
    let a = x.matrix();
    let id = linalg::identity(4);
    let plus = linalg::left_kernel(&linalg::sub(a, &linalg::scale(&id, c)))
        .into_iter()
        .next()?;
    let minus = linalg::left_kernel(&linalg::sub(a, &linalg::scale(&id, &-c.clone())))
        .into_iter()
        .next()?;
    let mut t = vec![plus, minus];
    t.extend(linalg::left_kernel(a));
    invertible(t)
}

fn unit(n: usize, k: usize) -> Vec<Rational> {
    (0..n)
        .map(|i| {
            if i == k {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect()
}

fn coords_222(x: &LinearVF) -> Option<Mat> {
    let w = (0..4).map(|k| unit(4, k)).find(|w| {
        let z = x.apply_row(&x.apply_row(w));
        z.iter().any(|v| !v.is_zero())
    })?;
    let z2 = x.apply_row(&w);
    let z1 = x.apply_row(&z2);
    linalg::left_kernel(x.matrix())
        .into_iter()
        .find_map(|k| invertible(vec![z1.clone(), z2.clone(), w.clone(), k]))
}

fn coords_223(x: &LinearVF) -> Option<Mat> {
    for i in 0..4 {
        for j in i + 1..4 {
            let (z3, z4) = (unit(4, i), unit(4, j));
            let t = vec![x.apply_row(&z3), x.apply_row(&z4), z3, z4];
            if let Some(t) = invertible(t) {
                return Some(t);
            }
        }
    }
    None
}

fn z(i: usize) -> Poly {
    Poly::var(4, i)
}

fn only_vars(p: &Poly, vars: &[usize]) -> bool {
    (0..4).all(|v| vars.contains(&v) || !p.uses_var(v))
}

fn divide(p: &Poly, d: &Poly) -> Result<Poly, &'static str> {
    p.div_exact(d)
        .ok_or("coefficient is not divisible as the normal form requires")
}

/// Re-express a polynomial in `z` through `images` as one on three variables.
fn to3(p: &Poly, images: &[Poly]) -> Poly {
    p.substitute(images).expect("matching arity")
}

fn y3(i: usize) -> Poly {
    Poly::var(3, i)
}

fn reduce_221(e: &PForm) -> Result<Reduction, &'static str> {
    let a_ = divide(&e.coeff2(1, 2), &z(0))?;
    let b_ = divide(&e.coeff2(1, 3), &z(0))?;
    let c = e.coeff2(2, 3);
    if !e.coeff2(0, 1).is_zero() || e.coeff2(0, 2) != &z(1) * &a_ || e.coeff2(0, 3) != &z(1) * &b_ {
        return Err("form does not match d(z1 z2) ^ (A dz3 + B dz4) + C dz3 ^ dz4");
    }
    let z12 = &z(0) * &z(1);
    let a = c.coeff(&Monomial::from_exponents(&[1, 1]));
    let q = &c - &z12.scale(&a);
    if !only_vars(&a_, &[2, 3]) || !only_vars(&b_, &[2, 3]) || !only_vars(&q, &[2, 3]) {
        return Err("A, B or q depend on z1, z2");
    }
    let images = [Poly::zero(3), Poly::zero(3), y3(1), y3(2)];
    let (a3, b3, q3) = (to3(&a_, &images), to3(&b_, &images), to3(&q, &images));
    let du = PForm::dx(3, 0);
    let reduced = du
        .wedge(
            &PForm::dx(3, 1)
                .mul_poly(&a3)
                .add(&PForm::dx(3, 2).mul_poly(&b3)),
        )
        .add(
            &PForm::dx(3, 1)
                .wedge(&PForm::dx(3, 2))
                .mul_poly(&(&y3(0).scale(&a) + &q3)),
        );
    Ok(Reduction {
        map: PolyMap::new(4, vec![z12, z(2), z(3)]),
        reduced,
        a,
        q: q3,
    })
}

fn reduce_222(e: &PForm) -> Result<Reduction, &'static str> {
    let a_ = divide(&e.coeff2(0, 2), &z(0))?;
    let b_ = divide(&e.coeff2(1, 3), &z(1))?;
    let c = e.coeff2(0, 3);
    if !e.coeff2(1, 2).is_zero()
        || e.coeff2(0, 1) != -(&z(1) * &a_)
        || e.coeff2(2, 3) != -(&z(0) * &b_)
    {
        return Err("form does not match (z2 dz2 - z1 dz3) ^ (A dz1 + B dz4) + C dz1 ^ dz4");
    }
    let u = &z(1).pow(2) - &(&z(0) * &z(2)).scale(&rat(2));
    let k = &c + &(&z(2) * &b_);
    let a = k.coeff(&Monomial::from_exponents(&[0, 2]));
    let q = &k - &u.scale(&a);
    if !only_vars(&a_, &[0, 3]) || !only_vars(&b_, &[0, 3]) || !only_vars(&q, &[0, 3]) {
        return Err("A, B or q depend on z2, z3");
    }
    let images = [y3(0), Poly::zero(3), Poly::zero(3), y3(1)];
    let (a3, b3, q3) = (to3(&a_, &images), to3(&b_, &images), to3(&q, &images));
    let du = PForm::dx(3, 2);
    let reduced = du
        .wedge(
            &PForm::dx(3, 0)
                .mul_poly(&a3)
                .add(&PForm::dx(3, 1).mul_poly(&b3)),
        )
        .scale(&ratio(1, 2))
        .add(
            &PForm::dx(3, 0)
                .wedge(&PForm::dx(3, 1))
                .mul_poly(&(&y3(2).scale(&a) + &q3)),
        );
    Ok(Reduction {
        map: PolyMap::new(4, vec![z(0), z(3), u]),
        reduced,
        a,
        q: q3,
    })
}

fn reduce_223(e: &PForm) -> Result<Reduction, &'static str> {
    let a_ = divide(&e.coeff2(0, 3), &z(0))?;
    let b_ = divide(&e.coeff2(1, 3), &z(0))?;
    let c = e.coeff2(0, 1);
    if !e.coeff2(2, 3).is_zero()
        || e.coeff2(0, 2) != -(&z(1) * &a_)
        || e.coeff2(1, 2) != -(&z(1) * &b_)
    {
        return Err("form does not match (z2 dz3 - z1 dz4) ^ (A dz1 + B dz2) + C dz1 ^ dz2");
    }
    let u = &(&z(1) * &z(2)) - &(&z(0) * &z(3));
    let k = &(&c + &(&z(2) * &a_)) + &(&z(3) * &b_);
    let a = k.coeff(&Monomial::from_exponents(&[0, 1, 1]));
    let q = &k - &u.scale(&a);
    if !only_vars(&a_, &[0, 1]) || !only_vars(&b_, &[0, 1]) || !only_vars(&q, &[0, 1]) {
        return Err("A, B or q depend on z3, z4");
    }
    let images = [y3(0), y3(1), Poly::zero(3), Poly::zero(3)];
    let (a3, b3, q3) = (to3(&a_, &images), to3(&b_, &images), to3(&q, &images));
    let du = PForm::dx(3, 2);
    let reduced = du
        .wedge(
            &PForm::dx(3, 0)
                .mul_poly(&a3)
                .add(&PForm::dx(3, 1).mul_poly(&b3)),
        )
        .add(
            &PForm::dx(3, 0)
                .wedge(&PForm::dx(3, 1))
                .mul_poly(&(&y3(2).scale(&a) + &q3)),
        );
    Ok(Reduction {
        map: PolyMap::new(4, vec![z(0), z(1), u]),
        reduced,
        a,
        q: q3,
    })
}
