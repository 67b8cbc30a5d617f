//! Multivariate gcd by recursive primitive polynomial remainder sequences.
//!
//! At every level the main variable is the one of lowest maximum degree among
//! the variables occurring in either input. Contents with respect to that
//! variable are polynomials in the remaining variables, so the recursion
//! terminates once the inputs are constants.

use super::{Monomial, Poly, PolyError};

/// Greatest common divisor of a nonempty list, monic in graded-lex order.
pub fn content_gcd(ps: &[Poly]) -> Result<Poly, PolyError> {
    let mut nonzero = ps.iter().filter(|p| !p.is_zero());
    let first = nonzero.next().ok_or(PolyError::AllZero)?;
    if let Some(bad) = ps.iter().find(|p| p.nvars() != first.nvars()) {
        return Err(PolyError::ArityMismatch {
            left: first.nvars(),
            right: bad.nvars(),
        });
    }
    let mut g = first.monic();
    for p in nonzero {
        if g.is_constant() {
            break;
        }
        g = gcd(&g, p);
    }
    Ok(g)
}

/// Monic gcd of two polynomials; `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    assert_eq!(a.nvars(), b.nvars(), "variable count mismatch");
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.nvars());
    }
    if a == b {
        return a.monic();
    }
    let v = match main_variable(a, b) {
        Some(v) => v,
        None => return Poly::one(a.nvars()),
    };
    match (a.uses_var(v), b.uses_var(v)) {
        (true, false) => return gcd(&content_in(a, v), b),
        (false, true) => return gcd(a, &content_in(b, v)),
        _ => {}
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    let g = primitive_prs(pa, pb, v);
    (&c * &g).monic()
}

fn main_variable(a: &Poly, b: &Poly) -> Option<usize> {
    (0..a.nvars())
        .filter(|&v| a.uses_var(v) || b.uses_var(v))
        .min_by_key(|&v| a.degree_in(v).max(b.degree_in(v)))
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `x_{v+1}`.
fn content_in(p: &Poly, v: usize) -> Poly {
    let mut g = Poly::zero(p.nvars());
    for c in p.coeffs_in(v).into_iter().filter(|c| !c.is_zero()) {
        g = gcd(&g, &c);
        if g.is_constant() {
            break;
        }
    }
    g
}

fn primitive_part(p: &Poly, v: usize) -> Poly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides").monic()
}

fn lead_in(p: &Poly, v: usize) -> (u16, Poly) {
    let d = p.degree_in(v);
    let c = p.coeffs_in(v).swap_remove(d as usize);
    (d, c)
}

/// Pseudo-remainder of `a` by `b` in `x_{v+1}`.
fn prem(a: &Poly, b: &Poly, v: usize) -> Poly {
    let (db, lb) = lead_in(b, v);
    let mut r = a.clone();
    while !r.is_zero() && r.uses_var(v) && r.degree_in(v) >= db {
        let (dr, lr) = lead_in(&r, v);
        let shift = Monomial::var(v);
        let mut t = &lr * b;
        for _ in 0..(dr - db) {
            t = t.mul_monomial(&shift, &super::rat(1));
        }
        r = &(&lb * &r) - &t;
    }
    r
}

fn primitive_prs(a: Poly, b: Poly, v: usize) -> Poly {
    let (mut r0, mut r1) = if a.degree_in(v) >= b.degree_in(v) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        let r = prem(&r0, &r1, v);
        if r.is_zero() {
            return primitive_part(&r1, v);
        }
        if !r.uses_var(v) {
            return Poly::one(r.nvars());
        }
        r0 = r1;
        r1 = primitive_part(&r, v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::rat;

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn shared_variable() {
        let a = &x(3, 0) * &x(3, 1);
        let b = &x(3, 0) * &x(3, 2);
        assert_eq!(content_gcd(&[a, b]).unwrap(), x(3, 0));
    }

    #[test]
    fn difference_of_squares_factor() {
        let a = &x(2, 0).pow(2) - &x(2, 1).pow(2);
        let b = &x(2, 0) - &x(2, 1);
        assert_eq!(content_gcd(&[a, b.clone()]).unwrap(), b);
    }

    #[test]
    fn single_coefficient() {
        let m = &(&x(3, 0) * &x(3, 1)) * &x(3, 2);
        assert_eq!(content_gcd(&[m.scale(&rat(-4))]).unwrap(), m);
    }

    #[test]
    fn all_zero_is_an_error() {
        assert_eq!(content_gcd(&[Poly::zero(2)]), Err(PolyError::AllZero));
    }

    #[test]
    fn hidden_common_factor() {
        let n = 4;
        let f = &(&x(n, 0) * &x(n, 1)) + &(&x(n, 2).pow(2) - &x(n, 3));
        let g1 = &(&x(n, 0) + &x(n, 3)).pow(2) + &Poly::int(n, 3);
        let g2 = &(&x(n, 1) * &x(n, 2)) - &x(n, 0).scale(&rat(5));
        let a = &f * &g1;
        let b = &f * &g2;
        assert_eq!(gcd(&a, &b), f.monic());
        let c = &(&f * &f) * &x(n, 2);
        assert_eq!(gcd(&c, &(&a * &x(n, 2))), (&f * &x(n, 2)).monic());
    }

    #[test]
    fn coprime_inputs() {
        let a = &x(3, 0).pow(2) + &x(3, 1);
        let b = &x(3, 1).pow(3) - &x(3, 2);
        assert!(gcd(&a, &b).is_constant());
    }
}
