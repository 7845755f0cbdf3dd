//! Fixed inputs shared by the benchmarks.

use std::sync::Arc;

use affine_line::fincat::{FinCat, FunctorData};
use affine_line::modcat::EndoPair;
use affine_line::polyalg::q;

/// `J_n(0) ⊕ J_{n-1}(1) ⊕ … ⊕ J_1(n-1)`, of dimension `n(n+1)/2`.
pub fn staircase(n: usize) -> EndoPair {
    (0..n).fold(EndoPair::zero_space(), |m, k| m.direct_sum(&EndoPair::jordan(&q(k as i64), n - k)))
}

/// `n` blocks `J_2(0)`.
pub fn nilpotent(n: usize) -> EndoPair {
    (0..n).fold(EndoPair::zero_space(), |m, _| m.direct_sum(&EndoPair::jordan(&q(0), 2)))
}

/// `[n] → [2n]`, `i ↦ 2i`.
pub fn doubling(n: usize) -> FunctorData {
    let (a, b) = (Arc::new(FinCat::ordinal(n)), Arc::new(FinCat::ordinal(2 * n)));
    let bb = b.clone();
    let aa = a.clone();
    FunctorData::from_fns(a, b, |x| Ok(2 * x), move |f| Ok(bb.hom(2 * aa.src(f), 2 * aa.dst(f))[0])).unwrap()
}
