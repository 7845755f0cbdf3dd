//! Finite categories, functors and natural transformations; comma
//! categories, contractibility certificates, the exact-square check, Kan
//! extensions of vector-space diagrams, and bounded replicas of the
//! categories built from ℕ.

mod category;
mod comma;
mod contract;
mod exact;
mod functor;
pub mod json;
mod kan;
mod sieve;
mod trunc;

pub use category::{FinCat, Limits, Morphism};
pub use comma::{comma_category, comma_category_with_limits, triple_comma, triple_comma_with_limits, Comma, Side, SquareData, Triple};
pub use contract::{
    contractibility_certificate, contractibility_certificate_with_budget, AdjointSide, Certificate, EndKind, Verdict, Zigzag,
    ZigzagStep, DEFAULT_BUDGET,
};
pub use exact::{exact_square_check, Budget, Cell, CellStatus, ExactReport, SquareVerdict};
pub use functor::{check_adjunction, full_subcategory, full_subcategory_with_limits, FunctorData, NatTransData};
pub use kan::{
    cokernel_diagram, colimit, coproduct_functor, der1_check, der4_comparison, kan_extend_finvect, left_kan_with_unit, limit, right_kan, yoneda_map,
    Colimit, ComparisonCheck, KanDirection, Limit, VectDiagram,
};
pub use sieve::{sieve_cosieve, SieveKind};
pub use trunc::{nn_truncations, Adjunction, NnTruncations, TRUNCATION_LIMITS};
