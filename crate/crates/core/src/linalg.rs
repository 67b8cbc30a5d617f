//! Exact linear algebra over Q.
//!
//! [`Echelon`] is an incremental, fraction-free sparse row echelon form used for
//! the large graded systems of the division solvers. The `Mat` helpers cover
//! the small dense matrices (at most 8x8) of the normal-form analysis.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ratpoly::{rat, Poly, Rational};

type Row = Vec<(usize, BigInt)>;

/// Sparse echelon form over the integers with an optional right-hand side.
///
/// Columns `0..ncols` are unknowns; column `ncols` holds the right-hand side.
/// Every stored row is primitive with a positive leading entry, and the pivot
/// of a row is its smallest column, so solutions built by back-substitution
/// with free columns set to zero favour low column indices.
#[derive(Debug, Clone)]
pub struct Echelon {
    ncols: usize,
    rows: BTreeMap<usize, Row>,
    inconsistent: bool,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: BTreeMap::new(),
            inconsistent: false,
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Adds the equation `sum coeffs = rhs`; returns true if the rank grew.
    pub fn add_equation(&mut self, coeffs: &[(usize, Rational)], rhs: &Rational) -> bool {
        let mut entries: Vec<(usize, Rational)> = coeffs
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .cloned()
            .collect();
        if !rhs.is_zero() {
            entries.push((self.ncols, rhs.clone()));
        }
        entries.sort_by_key(|(c, _)| *c);
        let mut merged: Vec<(usize, Rational)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            match merged.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        let den = merged
            .iter()
            .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
        let row: Row = merged
            .into_iter()
            .map(|(c, v)| (c, v.numer() * (&den / v.denom())))
            .collect();
        self.insert(row)
    }

    fn insert(&mut self, mut row: Row) -> bool {
        loop {
            let Some(&(lead, _)) = row.first() else {
                return false;
            };
            if lead == self.ncols {
                self.inconsistent = true;
                self.rows.insert(lead, normalize(row));
                return true;
            }
            match self.rows.get(&lead) {
                None => {
                    self.rows.insert(lead, normalize(row));
                    return true;
                }
                Some(piv) => {
                    row = eliminate(&row, piv);
                }
            }
        }
    }

    /// Back-substitution with every free column set to `free[c]` (default 0).
    fn back_substitute(&self, rhs: bool, free: &BTreeMap<usize, Rational>) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.ncols];
        for (c, v) in free {
            x[*c] = v.clone();
        }
        for (&lead, row) in self.rows.iter().rev() {
            if lead == self.ncols {
                continue;
            }
            let mut acc = Rational::zero();
            let mut a = Rational::zero();
            for (c, v) in row {
                if *c == lead {
                    a = Rational::from_integer(v.clone());
                } else if *c == self.ncols {
                    if rhs {
                        acc += Rational::from_integer(v.clone());
                    }
                } else if !x[*c].is_zero() {
                    acc -= &x[*c] * Rational::from_integer(v.clone());
                }
            }
            x[lead] = acc / a;
        }
        x
    }

    /// A particular solution with all free columns zero, if consistent.
    pub fn solve(&self) -> Option<Vec<Rational>> {
        if self.inconsistent {
            return None;
        }
        Some(self.back_substitute(true, &BTreeMap::new()))
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols)
            .filter(|c| !self.rows.contains_key(c))
            .collect()
    }

    /// Basis of the homogeneous solution space, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut free = BTreeMap::new();
                free.insert(f, Rational::one());
                self.back_substitute(false, &free)
            })
            .collect()
    }
}

fn normalize(mut row: Row) -> Row {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    let neg = row[0].1.is_negative();
    for (_, v) in row.iter_mut() {
        *v = &*v / &g;
        if neg {
            *v = -&*v;
        }
    }
    row
}

/// `p * row - r * piv` where `p`, `r` are the leading entries.
fn eliminate(row: &Row, piv: &Row) -> Row {
    let r = &row[0].1;
    let p = &piv[0].1;
    let g = r.gcd(p);
    let (mr, mp) = (p / &g, r / &g);
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < piv.len() {
        let ci = row.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = piv.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        let (c, v) = if ci < cj {
            i += 1;
            (ci, &row[i - 1].1 * &mr)
        } else if cj < ci {
            j += 1;
            (cj, -(&piv[j - 1].1 * &mp))
        } else {
            i += 1;
            j += 1;
            (ci, &row[i - 1].1 * &mr - &piv[j - 1].1 * &mp)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    if out.is_empty() {
        return out;
    }
    let g = out.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_one() {
        for (_, v) in out.iter_mut() {
            *v = &*v / &g;
        }
    }
    out
}

/// Dense rational matrix, row-major.
pub type Mat = Vec<Vec<Rational>>;

pub fn zeros(r: usize, c: usize) -> Mat {
    vec![vec![Rational::zero(); c]; r]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

pub fn from_ints(rows: &[&[i64]]) -> Mat {
    rows.iter()
        .map(|r| r.iter().map(|&v| rat(v)).collect())
        .collect()
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, |r| r.len()));
    let mut out = zeros(n, m);
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    out
}

pub fn transpose(a: &Mat) -> Mat {
    let (r, c) = (a.len(), a.first().map_or(0, |r| r.len()));
    (0..c)
        .map(|j| (0..r).map(|i| a[i][j].clone()).collect())
        .collect()
}

pub fn sub(a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect())
        .collect()
}

pub fn scale(a: &Mat, c: &Rational) -> Mat {
    a.iter()
        .map(|r| r.iter().map(|v| v * c).collect())
        .collect()
}

pub fn is_zero(a: &Mat) -> bool {
    a.iter().all(|r| r.iter().all(|v| v.is_zero()))
}

pub fn trace(a: &Mat) -> Rational {
    (0..a.len())
        .map(|i| a[i][i].clone())
        .fold(Rational::zero(), |s, v| s + v)
}

/// Row vector times matrix.
pub fn vecmat(v: &[Rational], a: &Mat) -> Vec<Rational> {
    let m = a.first().map_or(0, |r| r.len());
    (0..m)
        .map(|j| {
            v.iter()
                .zip(a)
                .fold(Rational::zero(), |s, (x, row)| s + x * &row[j])
        })
        .collect()
}

/// Reduced row echelon form and pivot columns.
pub fn rref(a: &Mat) -> (Mat, Vec<usize>) {
    let mut m = a.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(a: &Mat) -> usize {
    rref(a).1.len()
}

/// Basis of `{x : A x = 0}`.
pub fn kernel(a: &Mat) -> Vec<Vec<Rational>> {
    let cols = a.first().map_or(0, |r| r.len());
    let (m, pivots) = rref(a);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut x = vec![Rational::zero(); cols];
            x[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -m[r][f].clone();
            }
            x
        })
        .collect()
}

/// Basis of `{w : w A = 0}`.
pub fn left_kernel(a: &Mat) -> Vec<Vec<Rational>> {
    kernel(&transpose(a))
}

pub fn inverse(a: &Mat) -> Option<Mat> {
    let n = a.len();
    let aug: Mat = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            row
        })
        .collect();
    let (m, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `A x = b` when consistent (free variables zero).
pub fn solve(a: &Mat, b: &[Rational]) -> Option<Vec<Rational>> {
    let cols = a.first().map_or(0, |r| r.len());
    let aug: Mat = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut row = r.clone();
            row.push(v.clone());
            row
        })
        .collect();
    let (m, pivots) = rref(&aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = m[r][cols].clone();
    }
    Some(x)
}

pub fn det(a: &Mat) -> Rational {
    let n = a.len();
    let mut m = a.clone();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        let pivot_row = m[c].clone();
        for row in m.iter_mut().skip(c + 1) {
            if !row[c].is_zero() {
                let f = &row[c] / &pivot_row[c];
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &f * p;
                }
            }
        }
    }
    d
}

/// Characteristic polynomial `det(t I - A)`, coefficients low to high.
pub fn charpoly(a: &Mat) -> Vec<Rational> {
    // Faddeev-LeVerrier
    let n = a.len();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m = zeros(n, n);
    for k in 1..=n {
        let mut am = matmul(a, &m);
        for (i, row) in am.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        m = am;
        let amk = matmul(a, &m);
        coeffs[n - k] = -trace(&amk) / rat(k as i64);
    }
    coeffs
}

/// Distinct rational roots of a univariate polynomial given low-to-high.
pub fn rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
    let mut c: Vec<Rational> = coeffs.to_vec();
    while c.last().is_some_and(|v| v.is_zero()) {
        c.pop();
    }
    let mut roots = Vec::new();
    if c.len() <= 1 {
        return roots;
    }
    if c[0].is_zero() {
        roots.push(Rational::zero());
        while c.first().is_some_and(|v| v.is_zero()) {
            c.remove(0);
        }
    }
    let den = c.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = c.iter().map(|v| v.numer() * (&den / v.denom())).collect();
    let (Some(a0), Some(an)) = (ints.first(), ints.last()) else {
        return roots;
    };
    let ps = divisors(a0);
    let qs = divisors(an);
    let mut cand: Vec<Rational> = Vec::new();
    for p in &ps {
        for q in &qs {
            for s in [1, -1] {
                let r = Rational::new(p * BigInt::from(s), q.clone());
                if !cand.contains(&r) {
                    cand.push(r);
                }
            }
        }
    }
    for r in cand {
        let v = c.iter().rev().fold(Rational::zero(), |acc, a| acc * &r + a);
        if v.is_zero() && !roots.contains(&r) {
            roots.push(r);
        }
    }
    roots.sort();
    roots
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let e = &n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out
}

/// Multiplicity of `r` as a root of the polynomial (low-to-high coefficients).
pub fn root_multiplicity(coeffs: &[Rational], r: &Rational) -> usize {
    let mut c = coeffs.to_vec();
    let mut k = 0;
    loop {
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        if c.is_empty() {
            return k;
        }
        let v = c.iter().rev().fold(Rational::zero(), |acc, a| acc * r + a);
        if !v.is_zero() {
            return k;
        }
        // synthetic division by (t - r)
        let deg = c.len() - 1;
        let mut q = vec![Rational::zero(); deg];
        let mut carry = Rational::zero();
        for i in (0..deg).rev() {
            carry = &c[i + 1] + &carry * r;
            q[i] = carry.clone();
        }
        c = q;
        k += 1;
    }
}

/// Univariate polynomial from low-to-high coefficients, in variable `x_{var+1}` of `n`.
pub fn univariate(coeffs: &[Rational], n: usize, var: usize) -> Poly {
    let x = Poly::var(n, var);
    let mut out = Poly::zero(n);
    for (k, c) in coeffs.iter().enumerate() {
        out = &out + &x.pow(k as u32).scale(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::ratio;

    #[test]
    fn echelon_solves_and_detects_inconsistency() {
        let mut e = Echelon::new(3);
        e.add_equation(&[(0, rat(1)), (1, rat(1))], &rat(3));
        e.add_equation(&[(1, rat(2)), (2, ratio(1, 2))], &rat(1));
        let x = e.solve().unwrap();
        assert_eq!(&x[0] + &x[1], rat(3));
        assert_eq!(&x[1] * rat(2) + &x[2] * ratio(1, 2), rat(1));
        assert_eq!(x[2], rat(0));
        assert_eq!(e.nullspace().len(), 1);
        assert!(!e.add_equation(&[(0, rat(2)), (1, rat(2))], &rat(6)));
        e.add_equation(&[(0, rat(1)), (1, rat(1))], &rat(4));
        assert!(e.solve().is_none());
    }

    #[test]
    fn nullspace_vectors_are_solutions() {
        let eqs = [[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 1, 1]];
        let mut e = Echelon::new(4);
        for r in &eqs {
            let row: Vec<(usize, Rational)> =
                r.iter().enumerate().map(|(i, &v)| (i, rat(v))).collect();
            e.add_equation(&row, &rat(0));
        }
        let ns = e.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            for r in &eqs {
                let s = r.iter().zip(&v).fold(rat(0), |s, (a, x)| s + rat(*a) * x);
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn dense_helpers() {
        let a = from_ints(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(matmul(&a, &inv), identity(2));
        assert_eq!(det(&a), rat(1));
        assert_eq!(rank(&from_ints(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(
            kernel(&from_ints(&[&[1, 2], &[2, 4]])),
            vec![vec![rat(-2), rat(1)]]
        );
        assert!(inverse(&from_ints(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn characteristic_polynomial_and_roots() {
        let a = from_ints(&[&[1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, 2, 0], &[0, 0, 0, -2]]);
        let cp = charpoly(&a);
        assert_eq!(rational_roots(&cp), vec![rat(-2), rat(-1), rat(1), rat(2)]);
        let n = from_ints(&[&[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
        let cp = charpoly(&n);
        assert_eq!(cp, vec![rat(0), rat(0), rat(0), rat(0), rat(1)]);
        assert_eq!(root_multiplicity(&cp, &rat(0)), 4);
        // t^2 - 2 has no rational roots
        assert!(rational_roots(&[rat(-2), rat(0), rat(1)]).is_empty());
        assert_eq!(
            rational_roots(&[ratio(-1, 4), rat(0), rat(1)]),
            vec![ratio(-1, 2), ratio(1, 2)]
        );
    }
}
