//! Order-by-order decomposition of one-parameter families of square-zero
//! 2-forms `eta_s = sum_j s^j eta_j` into `alpha_s ^ beta_s`, and the
//! combinatorial involution behind the vanishing of the mixed terms.

use thiserror::Error;

use crate::divide::{saito_solve, DivideError};
use crate::forms::PForm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeformError {
    #[error("family entries must be 2-forms on a common number of variables")]
    BadFamily,
    #[error("family is not square-zero through order {0}")]
    NotSquareZero(usize),
    #[error("eta_0 differs from alpha0 ^ beta0")]
    BaseMismatch,
    #[error("claim violated at order {0}: alpha0 ^ beta0 ^ mu is nonzero")]
    ClaimViolated(usize),
    #[error("Saito step infeasible at order {order} within degree bound {dmax}")]
    SaitoInfeasible { order: usize, dmax: u32 },
    #[error("alpha0 ^ beta0 vanishes identically")]
    DegenerateBase,
    #[error("({i}, {j}, {r}, {s}) is not in S2 for order {l}")]
    NotInS2 {
        l: i64,
        i: i64,
        j: i64,
        r: i64,
        s: i64,
    },
}

/// Truncated family `eta_0, ..., eta_K`.
#[derive(Debug, Clone, PartialEq)]
pub struct FormFamily {
    coeffs: Vec<PForm>,
}

impl FormFamily {
    pub fn new(coeffs: Vec<PForm>) -> Result<Self, DeformError> {
        let first = coeffs.first().ok_or(DeformError::BadFamily)?;
        let n = first.nvars();
        if coeffs.iter().any(|c| c.degree() != 2 || c.nvars() != n) {
            return Err(DeformError::BadFamily);
        }
        Ok(FormFamily { coeffs })
    }

    /// `j^K(alpha_s ^ beta_s)` for 1-form families of equal length `K + 1`.
    pub fn truncated_product(alphas: &[PForm], betas: &[PForm]) -> Result<Self, DeformError> {
        let k = alphas.len().min(betas.len());
        let mut coeffs = Vec::with_capacity(k);
        for r in 0..k {
            let mut acc = PForm::zero(alphas[0].nvars(), 2);
            for i in 0..=r {
                acc = acc.add(&alphas[i].wedge(&betas[r - i]));
            }
            coeffs.push(acc);
        }
        FormFamily::new(coeffs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn nvars(&self) -> usize {
        self.coeffs[0].nvars()
    }

    pub fn coeffs(&self) -> &[PForm] {
        &self.coeffs
    }
}

/// `sum_{m+n=r} eta_m ^ eta_n` for `r = 0..=K`.
pub fn square_terms(fam: &FormFamily) -> Vec<PForm> {
    let k = fam.order();
    (0..=k)
        .map(|r| {
            let mut acc = PForm::zero(fam.nvars(), 4);
            for m in 0..=r {
                acc = acc.add(&fam.coeffs[m].wedge(&fam.coeffs[r - m]));
            }
            acc
        })
        .collect()
}

pub fn family_square_zero_check(fam: &FormFamily) -> bool {
    square_terms(fam).iter().all(|t| t.is_zero())
}

/// Families `alpha_0..alpha_K`, `beta_0..beta_K` with `j^K(eta_s - alpha_s ^ beta_s) = 0`.
#[derive(Debug, Clone)]
pub struct FamilyDecomposition {
    pub alphas: Vec<PForm>,
    pub betas: Vec<PForm>,
}

impl FamilyDecomposition {
    /// Order-by-order residual `eta_r - sum_{i+j=r} alpha_i ^ beta_j`.
    pub fn residual(&self, fam: &FormFamily) -> Vec<PForm> {
        let prod = FormFamily::truncated_product(&self.alphas, &self.betas).expect("valid family");
        fam.coeffs
            .iter()
            .zip(prod.coeffs())
            .map(|(a, b)| a.sub(b))
            .collect()
    }
}

pub fn family_decompose(
    fam: &FormFamily,
    alpha0: &PForm,
    beta0: &PForm,
    dmax: u32,
) -> Result<FamilyDecomposition, DeformError> {
    let base = alpha0.wedge(beta0);
    if base.is_zero() {
        return Err(DeformError::DegenerateBase);
    }
    if fam.coeffs[0] != base {
        return Err(DeformError::BaseMismatch);
    }
    if let Some(r) = square_terms(fam).iter().position(|t| !t.is_zero()) {
        return Err(DeformError::NotSquareZero(r));
    }
    let mut alphas = vec![alpha0.clone()];
    let mut betas = vec![beta0.clone()];
    for l in 1..=fam.order() {
        let mut mu = fam.coeffs[l].clone();
        for i in 1..l {
            mu = mu.sub(&alphas[i].wedge(&betas[l - i]));
        }
        if !base.wedge(&mu).is_zero() {
            return Err(DeformError::ClaimViolated(l));
        }
        let (a, b) = saito_solve(alpha0, beta0, &mu, dmax).map_err(|e| match e {
            DivideError::NecessaryConditionFails => DeformError::ClaimViolated(l),
            _ => DeformError::SaitoInfeasible { order: l, dmax },
        })?;
        alphas.push(a);
        betas.push(b);
    }
    let dec = FamilyDecomposition { alphas, betas };
    if dec.residual(fam).iter().any(|r| !r.is_zero()) {
        return Err(DeformError::SaitoInfeasible {
            order: fam.order(),
            dmax,
        });
    }
    Ok(dec)
}

/// Membership in S2: `i+j+r+s = l`, `i+j >= 1`, `r+s >= 1`, `i != r`,
/// `j != s`, all nonnegative, at most one index zero.
pub fn in_s2(l: i64, i: i64, j: i64, r: i64, s: i64) -> bool {
    let idx = [i, j, r, s];
    idx.iter().all(|&v| v >= 0)
        && i + j + r + s == l
        && i + j >= 1
        && r + s >= 1
        && i != r
        && j != s
        && idx.iter().filter(|&&v| v == 0).count() <= 1
}

/// The fixed-point-free involution on S2.
pub fn shuffle_equivalence_check(
    l: i64,
    i: i64,
    j: i64,
    r: i64,
    s: i64,
) -> Result<(i64, i64, i64, i64), DeformError> {
    if !in_s2(l, i, j, r, s) {
        return Err(DeformError::NotInS2 { l, i, j, r, s });
    }
    Ok(if i == 0 || r == 0 {
        (i, s, r, j)
    } else {
        (r, j, i, s)
    })
}

/// All elements of S2 for order `l`, in lexicographic order.
pub fn enumerate_s2(l: i64) -> Vec<(i64, i64, i64, i64)> {
    let mut out = Vec::new();
    for i in 0..=l {
        for j in 0..=l - i {
            for r in 0..=l - i - j {
                let s = l - i - j - r;
                if in_s2(l, i, j, r, s) {
                    out.push((i, j, r, s));
                }
            }
        }
    }
    out
}

/// `sum over S2 of alpha_i ^ beta_j ^ alpha_r ^ beta_s`.
pub fn s2_sum(alphas: &[PForm], betas: &[PForm], l: i64) -> PForm {
    let n = alphas[0].nvars();
    let mut acc = PForm::zero(n, 4);
    for (i, j, r, s) in enumerate_s2(l) {
        let t = alphas[i as usize]
            .wedge(&betas[j as usize])
            .wedge(&alphas[r as usize])
            .wedge(&betas[s as usize]);
        acc = acc.add(&t);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::Poly;

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    fn dx(n: usize, i: usize) -> PForm {
        PForm::dx(n, i)
    }

    #[test]
    fn square_zero_examples() {
        let n = 4;
        let alphas = vec![dx(n, 0), dx(n, 2).mul_poly(&x(n, 2)), PForm::zero(n, 1)];
        let betas = vec![dx(n, 1), PForm::zero(n, 1), PForm::zero(n, 1)];
        assert!(family_square_zero_check(
            &FormFamily::truncated_product(&alphas, &betas).unwrap()
        ));
        let bad =
            FormFamily::new(vec![dx(n, 0).wedge(&dx(n, 1)), dx(n, 2).wedge(&dx(n, 3))]).unwrap();
        assert!(!family_square_zero_check(&bad));
        let constant = FormFamily::new(vec![dx(n, 0).wedge(&dx(n, 1)), PForm::zero(n, 2)]).unwrap();
        assert!(family_square_zero_check(&constant));
    }

    #[test]
    fn decompose_product_family() {
        let n = 4;
        let alphas = vec![
            dx(n, 0),
            dx(n, 2).mul_poly(&x(n, 2)),
            PForm::zero(n, 1),
            PForm::zero(n, 1),
        ];
        let betas = vec![
            dx(n, 1),
            PForm::zero(n, 1),
            PForm::zero(n, 1),
            PForm::zero(n, 1),
        ];
        let fam = FormFamily::truncated_product(&alphas, &betas).unwrap();
        let dec = family_decompose(&fam, &dx(n, 0), &dx(n, 1), 2).unwrap();
        assert!(dec.residual(&fam).iter().all(|r| r.is_zero()));
    }

    #[test]
    fn decompose_first_order() {
        let n = 4;
        let gamma = dx(n, 2).mul_poly(&(&x(n, 3) + &x(n, 0)));
        let delta = dx(n, 3).mul_poly(&x(n, 1));
        let eta1 = dx(n, 0).wedge(&gamma).add(&delta.wedge(&dx(n, 1)));
        let fam = FormFamily::new(vec![dx(n, 0).wedge(&dx(n, 1)), eta1]).unwrap();
        assert!(family_square_zero_check(&fam));
        let dec = family_decompose(&fam, &dx(n, 0), &dx(n, 1), 1).unwrap();
        assert!(dec.residual(&fam).iter().all(|r| r.is_zero()));
    }

    #[test]
    fn non_square_zero_family_is_rejected() {
        let n = 4;
        let fam =
            FormFamily::new(vec![dx(n, 0).wedge(&dx(n, 1)), dx(n, 2).wedge(&dx(n, 3))]).unwrap();
        assert_eq!(
            family_decompose(&fam, &dx(n, 0), &dx(n, 1), 1).unwrap_err(),
            DeformError::NotSquareZero(1)
        );
    }

    #[test]
    fn involution_cases() {
        assert_eq!(
            shuffle_equivalence_check(4, 2, 1, 1, 0).unwrap(),
            (1, 1, 2, 0)
        );
        assert_eq!(
            shuffle_equivalence_check(4, 1, 1, 2, 0).unwrap(),
            (2, 1, 1, 0)
        );
        assert_eq!(
            shuffle_equivalence_check(4, 0, 2, 1, 1).unwrap(),
            (0, 1, 1, 2)
        );
        assert!(shuffle_equivalence_check(4, 1, 1, 1, 1).is_err());
    }
}
