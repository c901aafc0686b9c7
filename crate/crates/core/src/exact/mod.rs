//! Exact rational and integer linear algebra. No floating point is used
//! anywhere in the crate.

mod forms;
mod lattice;
mod linalg;
pub mod lp;
mod rational;

pub use forms::{
    admits_positive_form, least_norm_element, least_norm_solution, max_min_positive_element,
    satisfies_all, solve_form_space, AffineFormSpace,
};
pub(crate) use forms::positive_branching_form;
pub use lattice::{hermite_normal_form, integer_kernel_basis, lll_reduce, primitive_reduce};
pub use linalg::{dot, dot_rat, inverse, norm_sq, rank, rref, solve_square, to_rat_row, EchelonBasis, IntVector, RatForm};
pub use rational::{ParseRationalError, Rational};
