//! Finitely presented modules over ℚ[t₁..tₙ], endomorphism pairs, and the
//! operations of the affine line: extension of scalars, the Day-convolution
//! tensor `+_!(M ⊠ N)`, restriction along `+`, evaluation at a type witness
//! and the internal hom.

mod endo;
mod fpmodule;
pub mod json;
mod ops;

pub use endo::{ev_one_via_colimit, hom_basis, hom_fp, tensor_coeq, EndoPair};
pub use fpmodule::{iso_test, CanonicalForm, FpModule};
pub use ops::{
    base_change, eliminate_variable, ev_alpha, ev_alpha_via_witness, extend_coefficients, external_product,
    fresh_var, plus_shriek, restrict_plus, structure_i, tensor_a1, tensor_same_ring, two_vars, unit_a1, RingMap,
    TypeWitness,
};
