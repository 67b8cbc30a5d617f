//! Linear factors of homogeneous polynomials and pattern solves used by the
//! classifier.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::divide::{GradedLinearSystem, Slot};
use crate::forms::{df, Blade, PForm};
use crate::linalg::{self, Mat};
use crate::ratpoly::{rat, Monomial, Poly, Rational};

/// Linear factors of a homogeneous polynomial, with multiplicity, each made
/// monic. Factors with irrational coefficients are not found.
pub fn linear_factors(p: &Poly) -> Vec<Poly> {
    let mut rest = p.clone();
    let mut out = Vec::new();
    while rest.total_degree().is_some_and(|d| d >= 1) {
        match find_linear_factor(&rest) {
            Some(l) => {
                rest = rest.div_exact(&l).expect("verified factor");
                out.push(l);
            }
            None => break,
        }
    }
    out.sort_by(|a, b| b.terms().rev().cmp(a.terms().rev()));
    out
}

fn find_linear_factor(p: &Poly) -> Option<Poly> {
    let n = p.nvars();
    let d = p.total_degree()?;
    if d == 1 {
        return Some(p.monic());
    }
    for t in 0..6 {
        let g = shear(n, t);
        let images: Vec<Poly> = g.iter().map(|r| Poly::linear(r)).collect();
        let pg = p.substitute_unchecked(&images, n);
        if let Some(lg) = sheared_factor(&pg, d) {
            let ginv = linalg::inverse(&g).expect("unimodular");
            let back: Vec<Poly> = ginv.iter().map(|r| Poly::linear(r)).collect();
            let l = lg.substitute_unchecked(&back, n).monic();
            if p.div_exact(&l).is_some() {
                return Some(l);
            }
        }
    }
    None
}

/// Unit lower-triangular integer matrix; `t = 0` is the identity.
fn shear(n: usize, t: usize) -> Mat {
    let mut g = linalg::identity(n);
    if t == 0 {
        return g;
    }
    for (i, row) in g.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate().take(i) {
            *v = rat((((i + 1) * (j + 2) * (t + 2) + 3 * t) % 7) as i64 - 3);
        }
    }
    g
}

/// Factor `y1 + sum c_k y_k` of `p`, found from the binary restrictions to the
/// planes `(y1, yk)` and pruned by divisibility of partial restrictions.
fn sheared_factor(p: &Poly, d: u32) -> Option<Poly> {
    let n = p.nvars();
    let mut candidates: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for k in 1..n {
        let mut coeffs = vec![Rational::zero(); d as usize + 1];
        let mut any = false;
        for (m, c) in p.terms() {
            if (0..n).all(|v| v == 0 || v == k || m.exponent(v) == 0) {
                coeffs[m.exponent(0) as usize] = c.clone();
                any = true;
            }
        }
        if !any {
            return None;
        }
        candidates.push(
            linalg::rational_roots(&coeffs)
                .into_iter()
                .map(|s| -s)
                .collect(),
        );
    }
    let mut chosen = Vec::with_capacity(n);
    search(p, &candidates, &mut chosen)
}

fn search(p: &Poly, candidates: &[Vec<Rational>], chosen: &mut Vec<Rational>) -> Option<Poly> {
    let n = p.nvars();
    let k = chosen.len() + 1;
    let partial = |cs: &[Rational]| {
        let mut v = vec![Rational::zero(); n];
        v[0] = Rational::one();
        v[1..=cs.len()].clone_from_slice(cs);
        Poly::linear(&v)
    };
    if k == n {
        let l = partial(chosen);
        return p.div_exact(&l).map(|_| l);
    }
    let kept: Vec<Poly> = (0..n)
        .map(|v| {
            if v <= k {
                Poly::var(n, v)
            } else {
                Poly::zero(n)
            }
        })
        .collect();
    let pk = p.substitute_unchecked(&kept, n);
    for c in &candidates[k - 1] {
        chosen.push(c.clone());
        if pk.div_exact(&partial(chosen)).is_some() {
            if let Some(l) = search(p, candidates, chosen) {
                return Some(l);
            }
        }
        chosen.pop();
    }
    None
}

/// Basis of the homogeneous polynomials `F` of degree `d` with `dF ^ eta = 0`.
pub fn tangent_functions(eta: &PForm, d: u32) -> Vec<Poly> {
    let n = eta.nvars();
    let sys = GradedLinearSystem::new(n, vec![Slot::homogeneous(n, 0, d)], |x| {
        df(&x[0].as_function().expect("0-form")).wedge(eta)
    });
    sys.nullspace()
        .into_iter()
        .map(|v| v[0].as_function().expect("0-form"))
        .collect()
}

/// Coefficients `c` with `target = sum c_k gens_k`, if any.
pub fn combination(target: &PForm, gens: &[PForm]) -> Option<Vec<Rational>> {
    let mut index: BTreeMap<(Blade, Monomial), usize> = BTreeMap::new();
    let mut key = |b: Blade, m: Monomial| {
        let len = index.len();
        *index.entry((b, m)).or_insert(len)
    };
    let mut entries: Vec<(usize, usize, Rational)> = Vec::new();
    for (col, g) in gens.iter().enumerate() {
        for (b, c) in g.terms() {
            for (m, v) in c.terms() {
                entries.push((key(*b, *m), col, v.clone()));
            }
        }
    }
    let mut rhs_entries = Vec::new();
    for (b, c) in target.terms() {
        for (m, v) in c.terms() {
            rhs_entries.push((key(*b, *m), v.clone()));
        }
    }
    let rows = index.len();
    let mut a: Mat = linalg::zeros(rows, gens.len());
    for (r, c, v) in entries {
        a[r][c] = v;
    }
    let mut b = vec![Rational::zero(); rows];
    for (r, v) in rhs_entries {
        b[r] = v;
    }
    if rows == 0 {
        return Some(vec![Rational::zero(); gens.len()]);
    }
    let x = linalg::solve(&a, &b)?;
    let mut back = PForm::zero(target.nvars(), target.degree());
    for (g, c) in gens.iter().zip(&x) {
        back = back.add(&g.scale(c));
    }
    (back == *target).then_some(x)
}

/// Coefficient vector of a linear form in `n` variables.
pub fn linear_coeffs(l: &Poly) -> Vec<Rational> {
    let n = l.nvars();
    (0..n).map(|i| l.coeff(&Monomial::var(i))).collect()
}

/// Rows of `rows` completed by standard basis vectors to an invertible matrix.
pub fn complete_basis(rows: &[Vec<Rational>], n: usize) -> Option<Mat> {
    let mut out: Mat = rows.to_vec();
    if linalg::rank(&out) < out.len() {
        return None;
    }
    for k in 0..n {
        if out.len() == n {
            break;
        }
        let mut e = vec![Rational::zero(); n];
        e[k] = Rational::one();
        out.push(e);
        if linalg::rank(&out) < out.len() {
            out.pop();
        }
    }
    (out.len() == n).then_some(out)
}
