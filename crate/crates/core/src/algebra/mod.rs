//! Scalars, monomials, polynomials, free-module vectors and the expression parser.

pub mod field;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod vector;

pub use field::{Coeff, FieldSpec};
pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use parse::{parse_homogeneous, parse_polynomial};
pub use poly::{PolyRing, Polynomial, Term};
pub use vector::{FreeModuleSpec, FreeVector, ModuleOrder, SchreyerFrame, VTerm};
