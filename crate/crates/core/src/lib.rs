//! Exact computations for the affine line over the derivator of ℚ-vector
//! spaces: modules over ℚ[t] with a distinguished endomorphism, their
//! Day-convolution tensor, evaluation at a coherent endomorphism, derived
//! evaluation, a finite-category engine, and checks of the universal property.

pub mod derived;
pub mod error;
pub mod fincat;
pub mod modcat;
pub mod polyalg;
pub mod univ;

pub use error::{Error, Result};
