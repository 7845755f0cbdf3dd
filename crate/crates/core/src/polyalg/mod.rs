//! Exact arithmetic kernel: rationals, polynomials in named variables,
//! matrices over them, and Smith normal form over ℚ and ℚ[t].

mod matrix;
mod parse;
mod poly;
mod qmatrix;
pub mod rational;
mod snf;
mod upoly;

pub use matrix::{kernel_basis, PolyMatrix};
pub(crate) use poly::check_vars;
pub use poly::{var_list, Monomial, Poly};
pub use qmatrix::{QMatrix, Rref};
pub use rational::{format_rational, parse_rational, q, q_frac, Rational};
pub use snf::{invariant_factors, smith_normal_form, SnfResult};
pub use upoly::UPoly;
