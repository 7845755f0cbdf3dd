use serde::{Deserialize, Serialize};

use super::functor::FunctorData;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SieveKind {
    Sieve,
    Cosieve,
    Both,
    Neither(String),
}

/// Classifies a fully faithful, injective-on-objects functor by closure of
/// its image under incoming (sieve) and outgoing (cosieve) morphisms.
pub fn sieve_cosieve(u: &FunctorData) -> SieveKind {
    if !u.is_injective_on_objects() {
        return SieveKind::Neither("not injective on objects".into());
    }
    if !u.is_faithful() {
        return SieveKind::Neither("not faithful".into());
    }
    if !u.is_full() {
        return SieveKind::Neither("not full".into());
    }
    let b = u.target();
    let mut in_image = vec![false; b.num_objects()];
    for &y in u.object_map() {
        in_image[y] = true;
    }
    let closed = |incoming: bool| {
        b.morphisms().iter().all(|f| {
            let (inside, other) = if incoming { (f.dst, f.src) } else { (f.src, f.dst) };
            !in_image[inside] || in_image[other]
        })
    };
    match (closed(true), closed(false)) {
        (true, true) => SieveKind::Both,
        (true, false) => SieveKind::Sieve,
        (false, true) => SieveKind::Cosieve,
        (false, false) => SieveKind::Neither("image is closed in neither direction".into()),
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fincat::category::FinCat;
    use crate::fincat::functor::full_subcategory;

    #[test]
    fn arrow_into_span_is_a_sieve() {
        let span = Arc::new(FinCat::span());
        let arrow = Arc::new(FinCat::arrow());
        // 0 ↦ (0,0), 1 ↦ (1,0)
        let u = FunctorData::from_fns(arrow.clone(), span.clone(), |x| Ok(x), |f| Ok(span.hom(arrow.src(f), arrow.dst(f))[0])).unwrap();
        assert_eq!(sieve_cosieve(&u), SieveKind::Sieve);
    }

    #[test]
    fn component_is_both() {
        let a = FinCat::arrow();
        let c = Arc::new(FinCat::coproduct(&a, &a).unwrap());
        let j = full_subcategory(&c, &[0, 1]).unwrap();
        assert_eq!(sieve_cosieve(&j), SieveKind::Both);
    }

    #[test]
    fn point_of_truncated_monoid_is_not_full() {
        let m = Arc::new(FinCat::monoid_truncation(3));
        let p = FunctorData::point(&m, 0);
        assert_eq!(sieve_cosieve(&p), SieveKind::Neither("not full".into()));
    }

    #[test]
    fn terminal_object_of_arrow_is_a_cosieve() {
        let a = Arc::new(FinCat::arrow());
        assert_eq!(sieve_cosieve(&full_subcategory(&a, &[1]).unwrap()), SieveKind::Cosieve);
        assert_eq!(sieve_cosieve(&full_subcategory(&a, &[0]).unwrap()), SieveKind::Sieve);
    }
}
