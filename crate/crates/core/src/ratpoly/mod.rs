//! Exact rational scalars and sparse multivariate polynomials over Q.
//!
//! Polynomials live in a fixed ring `Q[x1, ..., xn]` with `n <= 8`. Terms are
//! kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is graded
//! lexicographic, so the last entry of the map is always the leading term.

mod gcd;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use gcd::{content_gcd, gcd};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Largest supported number of variables.
pub const MAX_VARS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable count mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("variable count {0} outside 1..=8")]
    BadVariableCount(usize),
    #[error("expected {expected} substitution images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("all inputs are zero")]
    AllZero,
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exponent vector; unused trailing slots are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u16; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_VARS])
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        let mut e = [0; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        Monomial(e)
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += *b;
        }
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut e = other.0;
        for (a, b) in e.iter_mut().zip(self.0.iter()) {
            *a -= *b;
        }
        Monomial(e)
    }

    pub fn with_exponent(&self, i: usize, e: u16) -> Monomial {
        let mut m = *self;
        m.0[i] = e;
        m
    }

    /// Highest variable index with a nonzero exponent, plus one.
    pub fn support_len(&self) -> usize {
        self.0.iter().rposition(|&e| e > 0).map_or(0, |p| p + 1)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.0[..self.support_len()])
    }
}

/// All monomials in `n` variables of total degree exactly `d`, ascending.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut [u16; MAX_VARS], out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur[i] = left as u16;
            out.push(Monomial(*cur));
            cur[i] = 0;
            return;
        }
        for e in 0..=left {
            cur[i] = e as u16;
            rec(n, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(n, 0, d, &mut [0; MAX_VARS], &mut out);
    out.sort();
    out
}

/// All monomials in `n` variables of total degree at most `d`, ascending.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    (0..=d).flat_map(|k| monomials_of_degree(n, k)).collect()
}

/// Result of [`Poly::homogeneity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial, homogeneous of every degree.
    AnyDegree,
    Degree(u32),
    NotHomogeneous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Sparse polynomial in `Q[x1..xn]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, Monomial::one(), c)
    }

    pub fn int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, rat(c))
    }

    /// The coordinate function `x_{i+1}` (0-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable {i} out of range for {nvars} variables");
        Self::monomial(nvars, Monomial::var(i), Rational::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        debug_assert!(m.support_len() <= nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(
        nvars: usize,
        terms: I,
    ) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Linear form `sum c_i x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        Self::from_terms(
            n,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(i), c.clone())),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(
        &self,
    ) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// Constant value if the polynomial is constant (zero included).
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.coeff(&Monomial::one()))
        } else {
            None
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Maximum total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms
            .keys()
            .map(|m| m.exponent(var))
            .max()
            .unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to `x_{var+1}`.
    pub fn partial(&self, var: usize) -> Result<Poly, PolyError> {
        if var >= self.nvars {
            return Err(PolyError::IndexOutOfRange {
                index: var,
                nvars: self.nvars,
            });
        }
        Ok(self.partial_unchecked(var))
    }

    pub(crate) fn partial_unchecked(&self, var: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e > 0 {
                out.terms
                    .insert(m.with_exponent(var, e - 1), c * rat(e as i64));
            }
        }
        out
    }

    /// Ring homomorphism `x_i -> images[i]`.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::ImageCount {
                expected: self.nvars,
                got: images.len(),
            });
        }
        let target = images.first().map_or(0, |p| p.nvars);
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(PolyError::ArityMismatch {
                left: target,
                right: bad.nvars,
            });
        }
        Ok(self.substitute_unchecked(images, target))
    }

    pub(crate) fn substitute_unchecked(&self, images: &[Poly], target: usize) -> Poly {
        // powers[i][e] = images[i]^e, filled lazily
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|p| vec![Poly::one(p.nvars), p.clone()])
            .collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, pw) in powers.iter_mut().enumerate().take(self.nvars) {
                let e = m.exponent(i) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() <= e {
                    let next = &pw[pw.len() - 1] * &images[i];
                    pw.push(next);
                }
                t = &t * &pw[e];
                if t.is_zero() {
                    break;
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate().take(self.nvars) {
                let e = m.exponent(i);
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => Homogeneity::AnyDegree,
            Some(d) if degs.all(|e| e == d) => Homogeneity::Degree(d),
            Some(_) => Homogeneity::NotHomogeneous,
        }
    }

    /// Leading coefficient 1 under graded-lex order; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Exact quotient `self / d` if `d` divides `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert_eq!(self.nvars, d.nvars, "variable count mismatch");
        let (lm, lc) = d.leading_term()?;
        let (lm, lc_inv) = (*lm, lc.recip());
        let mut r = self.clone();
        let mut q = Poly::zero(self.nvars);
        while let Some((m, c)) = r.leading_term() {
            if !lm.divides(m) {
                return None;
            }
            let tm = lm.quotient_of(m);
            let tc = c * &lc_inv;
            r = &r - &d.mul_monomial(&tm, &tc);
            q.add_term(tm, tc);
        }
        Some(q)
    }

    /// Re-embed into a ring with `nvars` variables (must cover all used ones).
    pub fn with_nvars(&self, nvars: usize) -> Poly {
        assert!(
            self.terms.keys().all(|m| m.support_len() <= nvars),
            "polynomial uses variables beyond x{nvars}"
        );
        Poly {
            nvars,
            terms: self.terms.clone(),
        }
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(var) > 0)
    }

    /// Coefficients as a polynomial in `x_{var+1}`: entry `k` multiplies `x^k`.
    pub(crate) fn coeffs_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Poly::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            out[e].terms.insert(m.with_exponent(var, 0), c.clone());
        }
        out
    }

    /// Least common multiple of coefficient denominators.
    pub(crate) fn denominator_lcm(&self) -> BigInt {
        self.terms.values().fold(BigInt::one(), |acc, c| {
            num_integer::Integer::lcm(&acc, c.denom())
        })
    }
}

/// Exact `a op b` with an arity check.
pub fn arith(a: &Poly, b: &Poly, op: ArithOp) -> Result<Poly, PolyError> {
    if a.nvars != b.nvars {
        return Err(PolyError::ArityMismatch {
            left: a.nvars,
            right: b.nvars,
        });
    }
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
    })
}

/// See [`Poly::homogeneity`].
pub fn homogeneity(p: &Poly) -> Homogeneity {
    p.homogeneity()
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(*m, c.clone());
        }
        big
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

pub(crate) fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for i in 0..m.support_len() {
        match m.exponent(i) {
            0 => {}
            1 => parts.push(format!("x{}", i + 1)),
            e => parts.push(format!("x{}**{}", i + 1, e)),
        }
    }
    parts.join("*")
}

/// Prints in the expression grammar, highest graded-lex term first:
/// `3/4*x1**2*x2 - x3 + 1`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{}", fmt_monomial(m))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&a), fmt_monomial(m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.nvars, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn difference_of_squares() {
        let (a, b) = (x(2, 0), x(2, 1));
        let p = arith(&(&a + &b), &(&a - &b), ArithOp::Mul).unwrap();
        assert_eq!(p, &(&a * &a) - &(&b * &b));
    }

    #[test]
    fn adding_zero_is_identity() {
        let p = &x(3, 0) * &x(3, 2);
        assert_eq!(arith(&p, &Poly::zero(3), ArithOp::Add).unwrap(), p);
    }

    #[test]
    fn product_of_conjugate_binomials() {
        let (x1, x2, x3) = (x(3, 0), x(3, 1), x(3, 2));
        let m = &x1 * &x2;
        let got = &(&m + &x3) * &(&m - &x3);
        let want = &(&m * &m) - &(&x3 * &x3);
        assert_eq!(got, want);
        assert_eq!(got.num_terms(), 2);
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        assert_eq!(
            arith(&x(2, 0), &x(3, 0), ArithOp::Add),
            Err(PolyError::ArityMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn partial_derivatives() {
        let p = &(&x(3, 0) * &x(3, 0)) * &x(3, 1);
        assert_eq!(p.partial(0).unwrap(), (&x(3, 0) * &x(3, 1)).scale(&rat(2)));
        assert!(x(3, 0).pow(3).partial(1).unwrap().is_zero());
        let q = &(&x(3, 0) * &x(3, 1)) + &(&x(3, 2) * &x(3, 2)).scale(&ratio(1, 2));
        assert_eq!(q.partial(2).unwrap(), x(3, 2));
        assert!(matches!(
            q.partial(3),
            Err(PolyError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn substitution_examples() {
        let p = &x(2, 0) * &x(2, 1);
        assert!(p.substitute(&[Poly::zero(2), x(2, 1)]).unwrap().is_zero());

        let sq = x(2, 0).pow(2);
        let s = &x(2, 0) + &x(2, 1);
        assert_eq!(sq.substitute(&[s.clone(), x(2, 1)]).unwrap(), s.pow(2));

        // z2^2 - 2 z1 z3 along (1, t, t^2)
        let h = &x(3, 1).pow(2) - &(&x(3, 0) * &x(3, 2)).scale(&rat(2));
        let t = Poly::var(1, 0);
        let r = h.substitute(&[Poly::one(1), t.clone(), t.pow(2)]).unwrap();
        assert_eq!(r, -&t.pow(2));
    }

    #[test]
    fn substitution_arity_errors() {
        let p = x(2, 0);
        assert!(matches!(
            p.substitute(&[x(2, 0)]),
            Err(PolyError::ImageCount { .. })
        ));
        assert!(matches!(
            p.substitute(&[x(2, 0), x(3, 0)]),
            Err(PolyError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn homogeneity_examples() {
        let p = &(&x(3, 0) * &x(3, 1)) + &x(3, 2).pow(2);
        assert_eq!(p.homogeneity(), Homogeneity::Degree(2));
        let q = &x(2, 0) + &x(2, 1).pow(2);
        assert_eq!(q.homogeneity(), Homogeneity::NotHomogeneous);
        assert_eq!(Poly::zero(2).homogeneity(), Homogeneity::AnyDegree);
    }

    #[test]
    fn grlex_leading_term() {
        let p = &(&x(3, 2).pow(2) + &x(3, 0)) + &(&x(3, 0) * &x(3, 1));
        assert_eq!(
            *p.leading_term().unwrap().0,
            Monomial::from_exponents(&[1, 1, 0])
        );
        // x1 > x2 > x3 among equal degree
        assert!(Monomial::var(0) > Monomial::var(1));
    }

    #[test]
    fn exact_division() {
        let a = &x(2, 0) + &x(2, 1);
        let b = &x(2, 0) - &x(2, 1).scale(&rat(3));
        let p = &a * &b;
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert!(p.div_exact(&x(2, 0)).is_none());
    }

    #[test]
    fn display_uses_expression_grammar() {
        let p = &(&x(3, 0).pow(2) * &x(3, 1)).scale(&ratio(3, 4)) - &x(3, 2);
        let p = &p + &Poly::one(3);
        assert_eq!(p.to_string(), "3/4*x1**2*x2 - x3 + 1");
        assert_eq!((-&x(2, 1)).to_string(), "-x2");
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_up_to(4, 2).len(), 15);
        let v = monomials_up_to(2, 2);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }
}
