//! Exact symbolic engine for polynomial differential forms on affine space.
//!
//! The crate is layered bottom-up:
//!
//! * [`ratpoly`]: rationals and sparse multivariate polynomials,
//! * [`forms`]: exterior algebra of polynomial forms and vector fields,
//! * [`foliate`]: decomposability, integrability and related predicates,
//! * [`divide`]: degree-bounded division problems solved as exact linear systems,
//! * [`deform`]: order-by-order decomposition of families of square-zero 2-forms,
//! * [`homog`]: analysis and classification of homogeneous foliations,
//! * [`singloc`]: singular-locus certificates and rational point scans,
//! * [`expr`]: the text grammar for forms, used by the command-line tool.

pub mod deform;
pub mod divide;
pub mod expr;
pub mod fixtures;
pub mod foliate;
pub mod forms;
pub mod homog;
pub mod linalg;
pub mod ratpoly;
pub mod singloc;

pub use forms::{Blade, PForm, PolyMap, VField};
pub use ratpoly::{Monomial, Poly, Rational};
