//! Exterior algebra of polynomial differential forms and vector fields.
//!
//! A p-form on `Q^n` is stored as a map from [`Blade`] (a set of differential
//! indices, kept as a bitmask) to its polynomial coefficient. The interior
//! product contracts the first slot:
//! `i_v(dx_{i_0} ^ ... ^ dx_{i_{p-1}}) = sum_k (-1)^k v_{i_k} dx_{I \ i_k}`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::ratpoly::{fmt_rational, Homogeneity, Poly, PolyError, Rational, MAX_VARS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("variable count mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("variable count {0} outside 1..=8")]
    BadVariableCount(usize),
    #[error("index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("restriction to an empty set of variables")]
    EmptySubset,
    #[error("map has {got} components, form lives on {expected} variables")]
    MapArity { expected: usize, got: usize },
    #[error("expected a form of degree {expected}, got degree {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Strictly increasing index tuple, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Blade(u8);

impl Blade {
    pub const EMPTY: Blade = Blade(0);

    pub fn from_bits(bits: u8) -> Self {
        Blade(bits)
    }

    pub fn single(i: usize) -> Self {
        Blade(1 << i)
    }

    /// Blade for a set of distinct indices given in any order, with the sign
    /// of the permutation that sorts them. `None` if an index repeats.
    pub fn from_indices(idx: &[usize]) -> Option<(i32, Blade)> {
        let mut sign = 1;
        let mut acc = Blade::EMPTY;
        for &i in idx {
            let (s, b) = acc.wedge(Blade::single(i))?;
            sign *= s;
            acc = b;
        }
        Some((sign, acc))
    }

    /// The full blade `dx_1 ^ ... ^ dx_n`.
    pub fn full(n: usize) -> Self {
        Blade(((1u16 << n) - 1) as u8)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn indices(self) -> Vec<usize> {
        (0..MAX_VARS).filter(|&i| self.contains(i)).collect()
    }

    pub fn without(self, i: usize) -> Blade {
        Blade(self.0 & !(1 << i))
    }

    pub fn with(self, i: usize) -> Blade {
        Blade(self.0 | 1 << i)
    }

    /// Number of indices strictly below `i`.
    pub fn count_below(self, i: usize) -> usize {
        (self.0 as u32 & ((1u32 << i) - 1)).count_ones() as usize
    }

    /// `dx_A ^ dx_B = sign * dx_{A u B}`, or `None` when they overlap.
    pub fn wedge(self, other: Blade) -> Option<(i32, Blade)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut swaps = 0;
        for j in other.indices() {
            swaps += self.len() - self.count_below(j + 1);
        }
        Some((if swaps % 2 == 0 { 1 } else { -1 }, Blade(self.0 | other.0)))
    }

    /// All blades of size `p` in `n` variables, in lexicographic order.
    pub fn all(n: usize, p: usize) -> Vec<Blade> {
        let mut v: Vec<Blade> = (0u16..(1u16 << n))
            .map(|b| Blade(b as u8))
            .filter(|b| b.len() == p)
            .collect();
        v.sort();
        v
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.indices().cmp(&other.indices())
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_blade(*self))
    }
}

fn fmt_blade(b: Blade) -> String {
    b.indices()
        .iter()
        .map(|i| format!("dx{}", i + 1))
        .collect::<Vec<_>>()
        .join("^")
}

fn check_nvars(n: usize) -> Result<(), FormError> {
    if (1..=MAX_VARS).contains(&n) {
        Ok(())
    } else {
        Err(FormError::BadVariableCount(n))
    }
}

fn same_arity(a: usize, b: usize) -> Result<(), FormError> {
    if a == b {
        Ok(())
    } else {
        Err(FormError::ArityMismatch { left: a, right: b })
    }
}

/// Polynomial p-form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PForm {
    nvars: usize,
    degree: usize,
    terms: BTreeMap<Blade, Poly>,
}

impl PForm {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        assert!(
            nvars <= MAX_VARS && degree <= nvars.max(degree),
            "bad form shape"
        );
        PForm {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// A function viewed as a 0-form.
    pub fn function(f: Poly) -> Self {
        let mut out = PForm::zero(f.nvars(), 0);
        out.add_term(Blade::EMPTY, f);
        out
    }

    /// The coordinate differential `dx_{i+1}`.
    pub fn dx(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "differential index out of range");
        PForm::term(nvars, Blade::single(i), Poly::one(nvars))
    }

    pub fn term(nvars: usize, blade: Blade, coeff: Poly) -> Self {
        assert_eq!(coeff.nvars(), nvars, "variable count mismatch");
        let mut out = PForm::zero(nvars, blade.len());
        out.add_term(blade, coeff);
        out
    }

    /// `dx_1 ^ ... ^ dx_n`.
    pub fn volume(nvars: usize) -> Self {
        PForm::term(nvars, Blade::full(nvars), Poly::one(nvars))
    }

    /// 1-form `sum c_i dx_i`.
    pub fn one_form(coeffs: &[Poly]) -> Self {
        let n = coeffs.len();
        let mut out = PForm::zero(n, 1);
        for (i, c) in coeffs.iter().enumerate() {
            out.add_term(Blade::single(i), c.clone());
        }
        out
    }

    /// Coefficient list of a 1-form, one entry per variable.
    pub fn one_form_coeffs(&self) -> Vec<Poly> {
        assert_eq!(self.degree, 1, "not a 1-form");
        (0..self.nvars)
            .map(|i| self.coeff(Blade::single(i)))
            .collect()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &Poly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, b: Blade) -> Poly {
        self.terms
            .get(&b)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.nvars))
    }

    /// Coefficient of `dx_{i+1} ^ dx_{j+1}` with the orientation as given.
    pub fn coeff2(&self, i: usize, j: usize) -> Poly {
        match Blade::from_indices(&[i, j]) {
            None => Poly::zero(self.nvars),
            Some((s, b)) => {
                let c = self.coeff(b);
                if s < 0 {
                    -c
                } else {
                    c
                }
            }
        }
    }

    pub fn coefficients(&self) -> Vec<Poly> {
        self.terms.values().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_function(&self) -> Option<Poly> {
        (self.degree == 0).then(|| self.coeff(Blade::EMPTY))
    }

    pub fn add_term(&mut self, b: Blade, c: Poly) {
        assert_eq!(b.len(), self.degree, "blade degree mismatch");
        assert!(
            (b.bits() as u16) < (1u16 << self.nvars),
            "blade uses differentials beyond dx{}",
            self.nvars
        );
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(b) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &PForm) -> PForm {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        assert_eq!(self.degree, other.degree, "form degree mismatch");
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &PForm) -> PForm {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PForm {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, c: &Rational) -> PForm {
        self.map_coeffs(|p| p.scale(c))
    }

    pub fn mul_poly(&self, f: &Poly) -> PForm {
        assert_eq!(self.nvars, f.nvars(), "variable count mismatch");
        self.map_coeffs(|p| p * f)
    }

    /// Exact division of every coefficient, if possible.
    pub fn div_poly(&self, f: &Poly) -> Option<PForm> {
        let mut out = PForm::zero(self.nvars, self.degree);
        for (b, c) in &self.terms {
            out.add_term(*b, c.div_exact(f)?);
        }
        Some(out)
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> PForm {
        let mut out = PForm::zero(self.nvars, self.degree);
        for (b, c) in &self.terms {
            out.add_term(*b, f(c));
        }
        out
    }

    /// Same form viewed in a ring with `nvars` variables.
    pub fn with_nvars(&self, nvars: usize) -> PForm {
        let mut out = PForm::zero(nvars, self.degree);
        for (b, c) in &self.terms {
            out.add_term(*b, c.with_nvars(nvars));
        }
        out
    }

    /// Homogeneity of the coefficients taken together.
    pub fn coeff_homogeneity(&self) -> Homogeneity {
        let mut deg = None;
        for c in self.terms.values() {
            match c.homogeneity() {
                Homogeneity::NotHomogeneous => return Homogeneity::NotHomogeneous,
                Homogeneity::AnyDegree => {}
                Homogeneity::Degree(d) => match deg {
                    None => deg = Some(d),
                    Some(e) if e != d => return Homogeneity::NotHomogeneous,
                    _ => {}
                },
            }
        }
        deg.map_or(Homogeneity::AnyDegree, Homogeneity::Degree)
    }

    pub fn max_coeff_degree(&self) -> Option<u32> {
        self.terms.values().filter_map(|c| c.total_degree()).max()
    }

    /// Evaluates every coefficient at a rational point.
    pub fn eval(&self, point: &[Rational]) -> BTreeMap<Blade, Rational> {
        self.terms
            .iter()
            .map(|(b, c)| (*b, c.eval(point)))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }

    pub fn wedge(&self, other: &PForm) -> PForm {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = PForm::zero(self.nvars, self.degree + other.degree);
        if self.degree + other.degree > self.nvars {
            return out;
        }
        for (ba, ca) in &self.terms {
            for (bb, cb) in &other.terms {
                if let Some((s, b)) = ba.wedge(*bb) {
                    let p = ca * cb;
                    out.add_term(b, if s < 0 { -p } else { p });
                }
            }
        }
        out
    }

    pub fn d(&self) -> PForm {
        let mut out = PForm::zero(self.nvars, self.degree + 1);
        for (b, c) in &self.terms {
            for k in 0..self.nvars {
                if b.contains(k) {
                    continue;
                }
                let dk = c.partial_unchecked(k);
                if dk.is_zero() {
                    continue;
                }
                let sign = b.count_below(k) % 2 == 1;
                out.add_term(b.with(k), if sign { -dk } else { dk });
            }
        }
        out
    }

    pub fn interior(&self, v: &VField) -> PForm {
        assert_eq!(self.nvars, v.nvars(), "variable count mismatch");
        if self.degree == 0 {
            return PForm::zero(self.nvars, 0);
        }
        let mut out = PForm::zero(self.nvars, self.degree - 1);
        for (b, c) in &self.terms {
            for (p, i) in b.indices().into_iter().enumerate() {
                let vi = &v.components[i];
                if vi.is_zero() {
                    continue;
                }
                let t = c * vi;
                out.add_term(b.without(i), if p % 2 == 1 { -t } else { t });
            }
        }
        out
    }

    /// Lie derivative by Cartan's formula.
    pub fn lie(&self, v: &VField) -> PForm {
        let a = self.d().interior(v);
        if self.degree == 0 {
            return a;
        }
        a.add(&self.interior(v).d())
    }

    pub fn pullback(&self, m: &PolyMap) -> PForm {
        assert_eq!(self.nvars, m.target(), "map target does not match form");
        let s = m.source();
        let dphi: Vec<PForm> = m
            .components
            .iter()
            .map(|c| PForm::function(c.clone()).d())
            .collect();
        let mut out = PForm::zero(s, self.degree);
        for (b, c) in &self.terms {
            let mut acc = PForm::function(c.substitute_unchecked(&m.components, s));
            for i in b.indices() {
                acc = acc.wedge(&dphi[i]);
                if acc.is_zero() {
                    break;
                }
            }
            out = out.add(&acc);
        }
        out
    }

    /// Pullback under the inclusion of the coordinate subspace spanned by `kept`
    /// (0-based). The ambient variable count is unchanged.
    pub fn restrict(&self, kept: &[usize]) -> PForm {
        let images: Vec<Poly> = (0..self.nvars)
            .map(|i| {
                if kept.contains(&i) {
                    Poly::var(self.nvars, i)
                } else {
                    Poly::zero(self.nvars)
                }
            })
            .collect();
        let mut out = PForm::zero(self.nvars, self.degree);
        for (b, c) in &self.terms {
            if b.indices().iter().all(|i| kept.contains(i)) {
                out.add_term(*b, c.substitute_unchecked(&images, self.nvars));
            }
        }
        out
    }
}

impl fmt::Display for PForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (b, c)) in self.terms.iter().enumerate() {
            let single = c.num_terms() == 1;
            let (neg, body) = if single {
                let (m, a) = c.terms().next().unwrap();
                let mono = Poly::monomial(c.nvars(), *m, a.abs());
                (a.is_negative(), mono.to_string())
            } else {
                (false, format!("({c})"))
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if b.is_empty() {
                write!(f, "{body}")?;
            } else if body == "1" {
                write!(f, "{}", fmt_blade(*b))?;
            } else {
                write!(f, "{body}*{}", fmt_blade(*b))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PForm[n={}, p={}]({})", self.nvars, self.degree, self)
    }
}

/// Polynomial vector field `sum v_i d/dx_i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VField {
    components: Vec<Poly>,
}

impl VField {
    pub fn new(components: Vec<Poly>) -> Self {
        assert!(
            !components.is_empty(),
            "vector field needs at least one component"
        );
        let n = components.len();
        assert!(
            components.iter().all(|c| c.nvars() == n),
            "component arity mismatch"
        );
        VField { components }
    }

    pub fn zero(n: usize) -> Self {
        VField::new(vec![Poly::zero(n); n])
    }

    /// Constant field with the given rational components.
    pub fn constant(v: &[Rational]) -> Self {
        let n = v.len();
        VField::new(v.iter().map(|c| Poly::constant(n, c.clone())).collect())
    }

    /// Coordinate field `d/dx_{i+1}`.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::one();
        VField::constant(&v)
    }

    /// Linear field `x -> A x`: component `j` is `sum_k a[j][k] x_k`.
    pub fn linear(a: &[Vec<Rational>]) -> Self {
        VField::new(a.iter().map(|row| Poly::linear(row)).collect())
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> VField {
        VField::new(self.components.iter().map(|p| p.scale(c)).collect())
    }

    pub fn mul_poly(&self, f: &Poly) -> VField {
        VField::new(self.components.iter().map(|p| p * f).collect())
    }

    pub fn add(&self, other: &VField) -> VField {
        VField::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &VField) -> VField {
        VField::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    /// Derivative of `f` along the field.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars());
        for (i, v) in self.components.iter().enumerate() {
            if !v.is_zero() {
                out = &out + &(v * &f.partial_unchecked(i));
            }
        }
        out
    }

    /// Lie bracket `[self, other]`.
    pub fn bracket(&self, other: &VField) -> VField {
        VField::new(
            (0..self.nvars())
                .map(|j| &self.apply(&other.components[j]) - &other.apply(&self.components[j]))
                .collect(),
        )
    }

    pub fn divergence(&self) -> Poly {
        let mut out = Poly::zero(self.nvars());
        for (i, v) in self.components.iter().enumerate() {
            out = &out + &v.partial_unchecked(i);
        }
        out
    }

    /// Matrix of a field with linear (or zero) components; `None` otherwise.
    pub fn linear_matrix(&self) -> Option<Vec<Vec<Rational>>> {
        let n = self.nvars();
        let mut a = vec![vec![Rational::zero(); n]; n];
        for (j, c) in self.components.iter().enumerate() {
            for (m, coef) in c.terms() {
                if m.degree() != 1 {
                    return None;
                }
                let k = (0..n).find(|&k| m.exponent(k) == 1)?;
                a[j][k] = coef.clone();
            }
        }
        Some(a)
    }
}

impl fmt::Debug for VField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "VField[{}]", parts.join(", "))
    }
}

/// Polynomial map from `Q^source` to `Q^target`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMap {
    source: usize,
    components: Vec<Poly>,
}

impl PolyMap {
    pub fn new(source: usize, components: Vec<Poly>) -> Self {
        assert!(
            components.iter().all(|c| c.nvars() == source),
            "component arity mismatch"
        );
        PolyMap { source, components }
    }

    pub fn identity(n: usize) -> Self {
        PolyMap::new(n, (0..n).map(|i| Poly::var(n, i)).collect())
    }

    /// Linear map `x -> M x`.
    pub fn linear(m: &[Vec<Rational>]) -> Self {
        let source = m.first().map_or(0, |r| r.len());
        PolyMap::new(source, m.iter().map(|r| Poly::linear(r)).collect())
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    /// `self o inner`.
    pub fn compose(&self, inner: &PolyMap) -> PolyMap {
        assert_eq!(
            self.source,
            inner.target(),
            "map composition arity mismatch"
        );
        PolyMap::new(
            inner.source,
            self.components
                .iter()
                .map(|c| c.substitute_unchecked(&inner.components, inner.source))
                .collect(),
        )
    }
}

pub fn wedge(a: &PForm, b: &PForm) -> Result<PForm, FormError> {
    same_arity(a.nvars, b.nvars)?;
    Ok(a.wedge(b))
}

pub fn ext_d(a: &PForm) -> PForm {
    a.d()
}

pub fn interior(v: &VField, a: &PForm) -> Result<PForm, FormError> {
    same_arity(v.nvars(), a.nvars)?;
    Ok(a.interior(v))
}

pub fn lie(v: &VField, a: &PForm) -> Result<PForm, FormError> {
    same_arity(v.nvars(), a.nvars)?;
    Ok(a.lie(v))
}

pub fn pullback(m: &PolyMap, a: &PForm) -> Result<PForm, FormError> {
    if m.target() != a.nvars {
        return Err(FormError::MapArity {
            expected: a.nvars,
            got: m.target(),
        });
    }
    Ok(a.pullback(m))
}

pub fn restrict(a: &PForm, kept: &[usize]) -> Result<PForm, FormError> {
    if kept.is_empty() {
        return Err(FormError::EmptySubset);
    }
    if let Some(&i) = kept.iter().find(|&&i| i >= a.nvars) {
        return Err(FormError::IndexOutOfRange {
            index: i,
            nvars: a.nvars,
        });
    }
    Ok(a.restrict(kept))
}

/// The radial field `sum x_i d/dx_i`.
pub fn radial(n: usize) -> Result<VField, FormError> {
    check_nvars(n)?;
    Ok(VField::new((0..n).map(|i| Poly::var(n, i)).collect()))
}

/// Coefficient printing helper for reports.
pub fn fmt_coeff(c: &Rational) -> String {
    fmt_rational(c)
}

/// The exact 1-form `df`.
pub fn df(f: &Poly) -> PForm {
    PForm::function(f.clone()).d()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{rat, ratio};

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    fn dx(n: usize, i: usize) -> PForm {
        PForm::dx(n, i)
    }

    #[test]
    fn wedge_examples() {
        let n = 3;
        assert_eq!(
            dx(n, 0).wedge(&dx(n, 1)),
            PForm::term(n, Blade::from_bits(0b11), Poly::one(n))
        );
        assert!(dx(n, 0).wedge(&dx(n, 0)).is_zero());
        let a = dx(n, 1).mul_poly(&x(n, 0));
        let b = dx(n, 0).mul_poly(&x(n, 1));
        let want = PForm::term(n, Blade::from_bits(0b11), -&(&x(n, 0) * &x(n, 1)));
        assert_eq!(a.wedge(&b), want);
        assert!(matches!(
            wedge(&dx(2, 0), &dx(3, 0)),
            Err(FormError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn exterior_derivative_examples() {
        let n = 3;
        assert_eq!(dx(n, 1).mul_poly(&x(n, 0)).d(), dx(n, 0).wedge(&dx(n, 1)));
        assert!(dx(n, 0).wedge(&dx(n, 1)).d().is_zero());
        let eta = dx(n, 0).wedge(&dx(n, 1)).mul_poly(&x(n, 2));
        assert_eq!(eta.d(), dx(n, 2).wedge(&dx(n, 0)).wedge(&dx(n, 1)));
    }

    #[test]
    fn interior_examples() {
        let n = 2;
        let r = radial(n).unwrap();
        let w = dx(n, 0).wedge(&dx(n, 1));
        let want = dx(n, 1)
            .mul_poly(&x(n, 0))
            .sub(&dx(n, 0).mul_poly(&x(n, 1)));
        assert_eq!(w.interior(&r), want);
        assert_eq!(w.interior(&VField::basis(n, 0)), dx(n, 1));
        assert!(w.interior(&r).interior(&r).is_zero());
    }

    #[test]
    fn lie_examples() {
        let r = radial(2).unwrap();
        let w = dx(2, 0).wedge(&dx(2, 1));
        assert_eq!(w.lie(&r), w.scale(&rat(2)));

        let eta = dx(4, 1).wedge(&dx(4, 2)).mul_poly(&x(4, 0));
        assert!(eta.lie(&VField::basis(4, 3)).is_zero());

        let n = 4;
        let xv = VField::new(vec![x(n, 0), -&x(n, 1), Poly::zero(n), Poly::zero(n)]);
        let u = &x(n, 0) * &x(n, 1);
        let form = df(&u).wedge(&dx(n, 2));
        assert!(form.lie(&xv).is_zero());
    }

    #[test]
    fn pullback_examples() {
        let n = 4;
        let phi = PolyMap::new(n, vec![&x(n, 0) * &x(n, 1), x(n, 2), x(n, 3)]);
        let want = dx(n, 0)
            .mul_poly(&x(n, 1))
            .add(&dx(n, 1).mul_poly(&x(n, 0)));
        assert_eq!(dx(3, 0).pullback(&phi), want);
        let form = dx(3, 0).wedge(&dx(3, 1));
        assert_eq!(
            form.pullback(&phi),
            df(&(&x(n, 0) * &x(n, 1))).wedge(&dx(n, 2))
        );
        let eta = dx(3, 0)
            .wedge(&dx(3, 2))
            .mul_poly(&x(3, 1))
            .add(&dx(3, 1).scale(&ratio(1, 2)).wedge(&dx(3, 2)));
        assert_eq!(eta.pullback(&PolyMap::identity(3)), eta);
        assert!(pullback(&PolyMap::identity(2), &eta).is_err());
    }

    #[test]
    fn restrict_examples() {
        let n = 4;
        let eta = dx(n, 0)
            .wedge(&dx(n, 1))
            .mul_poly(&x(n, 3))
            .add(&dx(n, 2).wedge(&dx(n, 3)).mul_poly(&x(n, 0)));
        assert!(restrict(&eta, &[0, 1, 2]).unwrap().is_zero());
        assert_eq!(restrict(&eta, &[0, 1, 2, 3]).unwrap(), eta);
        assert_eq!(restrict(&eta, &[]), Err(FormError::EmptySubset));
    }

    #[test]
    fn radial_examples() {
        assert_eq!(radial(2).unwrap().components(), &[x(2, 0), x(2, 1)]);
        assert_eq!(PForm::volume(4).interior(&radial(4).unwrap()).degree(), 3);
        assert!(radial(0).is_err());
        assert!(radial(9).is_err());
    }

    #[test]
    fn blade_order_and_signs() {
        let (s, b) = Blade::from_indices(&[2, 0]).unwrap();
        assert_eq!((s, b), (-1, Blade::from_bits(0b101)));
        assert!(Blade::from_indices(&[1, 1]).is_none());
        let all = Blade::all(4, 2);
        let idx: Vec<Vec<usize>> = all.iter().map(|b| b.indices()).collect();
        assert_eq!(idx[0], vec![0, 1]);
        assert_eq!(idx[5], vec![2, 3]);
    }

    #[test]
    fn display_round_shape() {
        let n = 4;
        let theta = dx(n, 1)
            .wedge(&dx(n, 2))
            .mul_poly(&x(n, 2).pow(2))
            .sub(&dx(n, 2).wedge(&dx(n, 0)).mul_poly(&x(n, 0).pow(2)));
        assert_eq!(theta.to_string(), "x1**2*dx1^dx3 + x3**2*dx2^dx3");
        let w = dx(n, 0).mul_poly(&(&x(n, 0) + &Poly::one(n)));
        assert_eq!(w.to_string(), "(x1 + 1)*dx1");
    }
}
