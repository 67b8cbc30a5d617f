use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::forms::{Blade, PForm};
use crate::linalg::Echelon;
use crate::ratpoly::{monomials_of_degree, monomials_up_to, Monomial, Poly, Rational};

/// One unknown coefficient: the monomial `monomial` in component `blade` of
/// the form in slot `slot`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Unknown {
    pub slot: usize,
    pub blade: Blade,
    pub monomial: Monomial,
}

/// Shape of one unknown form: its degree and the monomials allowed in each
/// coefficient.
#[derive(Debug, Clone)]
pub struct Slot {
    pub degree: usize,
    pub monomials: Vec<Monomial>,
}

impl Slot {
    /// Coefficients of total degree at most `dmax`.
    pub fn up_to(n: usize, degree: usize, dmax: u32) -> Slot {
        Slot {
            degree,
            monomials: monomials_up_to(n, dmax),
        }
    }

    /// Coefficients homogeneous of degree `d`.
    pub fn homogeneous(n: usize, degree: usize, d: u32) -> Slot {
        Slot {
            degree,
            monomials: monomials_of_degree(n, d),
        }
    }
}

/// A linear map from a tuple of unknown forms to forms, discretized on the
/// monomial basis.
///
/// Columns are ordered by ascending monomial (graded lex), then slot, then
/// blade, so particular solutions with free columns set to zero keep the
/// coefficient degrees low.
pub struct GradedLinearSystem {
    nvars: usize,
    slots: Vec<Slot>,
    basis: Vec<Unknown>,
    rows: HashMap<(Blade, Monomial), usize>,
    echelon: Echelon,
    row_entries: Vec<Vec<(usize, Rational)>>,
}

impl GradedLinearSystem {
    /// `image` receives one form per slot and must be linear in them.
    pub fn new<F>(nvars: usize, slots: Vec<Slot>, image: F) -> Self
    where
        F: Fn(&[PForm]) -> PForm + Sync,
    {
        let mut basis = Vec::new();
        for (s, slot) in slots.iter().enumerate() {
            for b in Blade::all(nvars, slot.degree) {
                for m in &slot.monomials {
                    basis.push(Unknown {
                        slot: s,
                        blade: b,
                        monomial: *m,
                    });
                }
            }
        }
        basis.sort_by(|a, b| {
            a.monomial
                .cmp(&b.monomial)
                .then(a.slot.cmp(&b.slot))
                .then(a.blade.cmp(&b.blade))
        });
        let images: Vec<PForm> = basis
            .par_iter()
            .map(|u| {
                let forms = unit_forms(nvars, &slots, u);
                image(&forms)
            })
            .collect();
        let mut rows: HashMap<(Blade, Monomial), usize> = HashMap::new();
        let mut row_entries: Vec<Vec<(usize, Rational)>> = Vec::new();
        for (col, img) in images.iter().enumerate() {
            for (b, c) in img.terms() {
                for (m, v) in c.terms() {
                    let r = *rows.entry((*b, *m)).or_insert_with(|| {
                        row_entries.push(Vec::new());
                        row_entries.len() - 1
                    });
                    row_entries[r].push((col, v.clone()));
                }
            }
        }
        GradedLinearSystem {
            nvars,
            slots,
            echelon: Echelon::new(basis.len()),
            basis,
            rows,
            row_entries,
        }
    }

    pub fn num_unknowns(&self) -> usize {
        self.basis.len()
    }

    pub fn num_equations(&self) -> usize {
        self.row_entries.len()
    }

    pub fn basis(&self) -> &[Unknown] {
        &self.basis
    }

    fn reduced_homogeneous(&self) -> Echelon {
        let mut e = self.echelon.clone();
        for row in &self.row_entries {
            e.add_equation(row, &Rational::zero());
        }
        e
    }

    /// A solution of `image(x) = rhs` with free unknowns set to zero.
    pub fn solve(&self, rhs: &PForm) -> Option<Vec<PForm>> {
        let mut e = self.echelon.clone();
        let mut rhs_rows: HashMap<usize, Rational> = HashMap::new();
        for (b, c) in rhs.terms() {
            for (m, v) in c.terms() {
                {
                    let r = self.rows.get(&(*b, *m))?;
                    rhs_rows.insert(*r, v.clone());
                }
            }
        }
        for (r, row) in self.row_entries.iter().enumerate() {
            let v = rhs_rows.remove(&r).unwrap_or_else(Rational::zero);
            e.add_equation(row, &v);
            if !e.is_consistent() {
                return None;
            }
        }
        e.solve().map(|x| self.assemble(&x))
    }

    /// Basis of the kernel of the map, one tuple of slot forms per vector.
    pub fn nullspace(&self) -> Vec<Vec<PForm>> {
        self.reduced_homogeneous()
            .nullspace()
            .iter()
            .map(|x| self.assemble(x))
            .collect()
    }

    /// Raw kernel vectors indexed like [`Self::basis`].
    pub fn nullspace_vectors(&self) -> Vec<Vec<Rational>> {
        self.reduced_homogeneous().nullspace()
    }

    pub fn assemble(&self, x: &[Rational]) -> Vec<PForm> {
        let mut out: Vec<PForm> = self
            .slots
            .iter()
            .map(|s| PForm::zero(self.nvars, s.degree))
            .collect();
        for (u, v) in self.basis.iter().zip(x) {
            if !v.is_zero() {
                out[u.slot].add_term(u.blade, Poly::monomial(self.nvars, u.monomial, v.clone()));
            }
        }
        out
    }
}

fn unit_forms(nvars: usize, slots: &[Slot], u: &Unknown) -> Vec<PForm> {
    slots
        .iter()
        .enumerate()
        .map(|(s, slot)| {
            if s == u.slot {
                PForm::term(
                    nvars,
                    u.blade,
                    Poly::monomial(nvars, u.monomial, Rational::from_integer(1.into())),
                )
            } else {
                PForm::zero(nvars, slot.degree)
            }
        })
        .collect()
}
