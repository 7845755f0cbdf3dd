use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

/// Size caps checked when a category is built.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_objects: usize,
    pub max_morphisms: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_objects: 64, max_morphisms: 4096 }
    }
}

/// A finite category with a dense composition table.
///
/// `compose(g, f)` is `g ∘ f` (apply `f` first) and is defined exactly
/// when `dst(f) = src(g)`.
#[derive(Clone, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    table: Vec<u32>,
    hom: Vec<Vec<usize>>,
}

impl FinCat {
    /// Builds and validates a category under the default size caps.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        compose: impl Fn(usize, usize) -> Option<usize>,
    ) -> Result<Self> {
        Self::with_limits(Limits::default(), objects, morphisms, identities, compose)
    }

    pub fn with_limits(
        limits: Limits,
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        compose: impl Fn(usize, usize) -> Option<usize>,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidCategory(m));
        if objects.len() > limits.max_objects {
            return bad(format!("{} objects exceed the cap of {}", objects.len(), limits.max_objects));
        }
        if morphisms.len() > limits.max_morphisms {
            return bad(format!("{} morphisms exceed the cap of {}", morphisms.len(), limits.max_morphisms));
        }
        let (n, m) = (objects.len(), morphisms.len());
        if identities.len() != n {
            return bad("one identity per object is required".into());
        }
        if objects.iter().collect::<HashSet<_>>().len() != n {
            return bad("duplicate object names".into());
        }
        if morphisms.iter().map(|f| &f.name).collect::<HashSet<_>>().len() != m {
            return bad("duplicate morphism names".into());
        }
        if let Some(f) = morphisms.iter().find(|f| f.src >= n || f.dst >= n) {
            return bad(format!("morphism {} has an endpoint out of range", f.name));
        }
        let mut hom = vec![Vec::new(); n * n];
        for (i, f) in morphisms.iter().enumerate() {
            hom[f.src * n + f.dst].push(i);
        }
        let mut table = vec![NONE; m * m];
        for g in 0..m {
            for f in 0..m {
                let composable = morphisms[f].dst == morphisms[g].src;
                match (composable, compose(g, f)) {
                    (true, Some(h)) => {
                        if h >= m || morphisms[h].src != morphisms[f].src || morphisms[h].dst != morphisms[g].dst {
                            return bad(format!("{} ∘ {} has the wrong endpoints", morphisms[g].name, morphisms[f].name));
                        }
                        table[g * m + f] = h as u32;
                    }
                    (true, None) => {
                        return bad(format!("{} ∘ {} is undefined", morphisms[g].name, morphisms[f].name));
                    }
                    (false, Some(_)) => {
                        return bad(format!("{} ∘ {} is not composable", morphisms[g].name, morphisms[f].name));
                    }
                    (false, None) => {}
                }
            }
        }
        let cat = FinCat { objects, morphisms, identities, table, hom };
        cat.validate_laws()?;
        Ok(cat)
    }

    fn validate_laws(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidCategory(m));
        for (x, &i) in self.identities.iter().enumerate() {
            if i >= self.morphisms.len() || self.src(i) != x || self.dst(i) != x {
                return bad(format!("identity of {} has the wrong endpoints", self.objects[x]));
            }
        }
        for f in 0..self.morphisms.len() {
            let (s, d) = (self.src(f), self.dst(f));
            if self.table[self.identities[d] * self.morphisms.len() + f] != f as u32
                || self.table[f * self.morphisms.len() + self.identities[s]] != f as u32
            {
                return bad(format!("identity law fails at {}", self.morphisms[f].name));
            }
        }
        for f in 0..self.morphisms.len() {
            for &g in self.out_of(self.dst(f)) {
                let gf = self.compose_unchecked(g, f);
                for &h in self.out_of(self.dst(g)) {
                    if self.compose_unchecked(h, gf) != self.compose_unchecked(self.compose_unchecked(h, g), f) {
                        return bad(format!(
                            "associativity fails at ({}, {}, {})",
                            self.morphisms[h].name, self.morphisms[g].name, self.morphisms[f].name
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Morphisms with source `x`, grouped by target.
    fn out_of(&self, x: usize) -> impl Iterator<Item = &usize> {
        let n = self.objects.len();
        (0..n).flat_map(move |y| self.hom[x * n + y].iter())
    }

    pub fn empty() -> Self {
        FinCat::new(Vec::new(), Vec::new(), Vec::new(), |_, _| None).expect("empty category")
    }

    /// The terminal category `e` with object `*`.
    pub fn terminal() -> Self {
        Self::discrete(&["*".to_string()])
    }

    pub fn discrete(names: &[String]) -> Self {
        let morphisms = names.iter().enumerate().map(|(i, x)| Morphism { name: format!("id_{x}"), src: i, dst: i }).collect();
        FinCat::new(names.to_vec(), morphisms, (0..names.len()).collect(), |g, f| (g == f).then_some(f))
            .expect("discrete category")
    }

    /// The preorder generated by `le`, which must be reflexive and transitive.
    pub fn poset(names: &[String], le: impl Fn(usize, usize) -> bool) -> Result<Self> {
        Self::poset_with_limits(Limits::default(), names, le)
    }

    pub fn poset_with_limits(limits: Limits, names: &[String], le: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = names.len();
        let mut index = HashMap::new();
        let mut morphisms = Vec::new();
        let mut identities = vec![0; n];
        for i in 0..n {
            for j in 0..n {
                if le(i, j) {
                    index.insert((i, j), morphisms.len());
                    let name = if i == j { format!("id_{}", names[i]) } else { format!("{}->{}", names[i], names[j]) };
                    if i == j {
                        identities[i] = morphisms.len();
                    }
                    morphisms.push(Morphism { name, src: i, dst: j });
                }
            }
        }
        if (0..n).any(|i| !le(i, i)) {
            return Err(Error::InvalidCategory("order relation is not reflexive".into()));
        }
        let srcs: Vec<(usize, usize)> = morphisms.iter().map(|f| (f.src, f.dst)).collect();
        FinCat::with_limits(limits, names.to_vec(), morphisms, identities, |g, f| {
            let ((a, _), (_, c)) = (srcs[f], srcs[g]);
            (srcs[f].1 == srcs[g].0).then(|| index.get(&(a, c)).copied()).flatten()
        })
    }

    /// The ordinal `[n]`, objects `0 < 1 < … < n`.
    pub fn ordinal(n: usize) -> Self {
        let names: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
        Self::poset(&names, |i, j| i <= j).expect("total order")
    }

    /// `[1]`.
    pub fn arrow() -> Self {
        Self::ordinal(1)
    }

    /// The span `(1,0) ← (0,0) → (0,1)`.
    pub fn span() -> Self {
        let names: Vec<String> = ["(0,0)", "(1,0)", "(0,1)"].iter().map(|s| s.to_string()).collect();
        Self::poset(&names, |i, j| i == j || i == 0).expect("span")
    }

    /// The commutative square `[1] × [1]`.
    pub fn commutative_square() -> Self {
        Self::product(&Self::arrow(), &Self::arrow()).expect("square")
    }

    /// One object whose endomorphisms are `0..=k` with truncated addition.
    pub fn monoid_truncation(k: usize) -> Self {
        let morphisms = (0..=k).map(|a| Morphism { name: a.to_string(), src: 0, dst: 0 }).collect();
        FinCat::new(vec!["*".into()], morphisms, vec![0], |g, f| Some((g + f).min(k))).expect("truncated monoid")
    }

    pub fn product(a: &FinCat, b: &FinCat) -> Result<Self> {
        let (na, nb) = (a.num_objects(), b.num_objects());
        let mb = b.num_morphisms();
        let objects = (0..na).flat_map(|i| (0..nb).map(move |j| (i, j))).map(|(i, j)| format!("({},{})", a.objects[i], b.objects[j])).collect();
        let mut morphisms = Vec::new();
        for f in &a.morphisms {
            for g in &b.morphisms {
                morphisms.push(Morphism { name: format!("({},{})", f.name, g.name), src: f.src * nb + g.src, dst: f.dst * nb + g.dst });
            }
        }
        let identities = (0..na).flat_map(|i| (0..nb).map(move |j| a.identities[i] * mb + b.identities[j])).collect();
        FinCat::new(objects, morphisms, identities, |g, f| {
            let ab = a.compose(g / mb, f / mb)?;
            let bb = b.compose(g % mb, f % mb)?;
            Some(ab * mb + bb)
        })
    }

    pub fn coproduct(a: &FinCat, b: &FinCat) -> Result<Self> {
        let (na, ma) = (a.num_objects(), a.num_morphisms());
        let objects = a.objects.iter().map(|x| format!("L.{x}")).chain(b.objects.iter().map(|x| format!("R.{x}"))).collect();
        let morphisms = a
            .morphisms
            .iter()
            .map(|f| Morphism { name: format!("L.{}", f.name), src: f.src, dst: f.dst })
            .chain(b.morphisms.iter().map(|f| Morphism { name: format!("R.{}", f.name), src: f.src + na, dst: f.dst + na }))
            .collect();
        let identities = a.identities.iter().copied().chain(b.identities.iter().map(|i| i + ma)).collect();
        FinCat::new(objects, morphisms, identities, |g, f| match (g < ma, f < ma) {
            (true, true) => a.compose(g, f),
            (false, false) => b.compose(g - ma, f - ma).map(|h| h + ma),
            _ => None,
        })
    }

    pub fn opposite(&self) -> Self {
        let morphisms = self.morphisms.iter().map(|f| Morphism { name: f.name.clone(), src: f.dst, dst: f.src }).collect();
        FinCat::with_limits(
            Limits { max_objects: usize::MAX, max_morphisms: usize::MAX },
            self.objects.clone(),
            morphisms,
            self.identities.clone(),
            |g, f| self.compose(f, g),
        )
        .expect("opposite of a category")
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn morphism_name(&self, f: usize) -> &str {
        &self.morphisms[f].name
    }

    pub fn object_index(&self, name: &str) -> Result<usize> {
        self.objects.iter().position(|x| x == name).ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn morphism_index(&self, name: &str) -> Result<usize> {
        self.morphisms.iter().position(|f| f.name == name).ok_or_else(|| Error::UnknownMorphism(name.to_string()))
    }

    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].src
    }

    pub fn dst(&self, f: usize) -> usize {
        self.morphisms[f].dst
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.src(f)] == f
    }

    /// `g ∘ f`, if composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        let h = self.table[g * self.morphisms.len() + f];
        (h != NONE).then_some(h as usize)
    }

    fn compose_unchecked(&self, g: usize, f: usize) -> usize {
        self.table[g * self.morphisms.len() + f] as usize
    }

    /// Composite of a path listed in application order.
    pub fn compose_path(&self, path: &[usize]) -> Option<usize> {
        let (&first, rest) = path.split_first()?;
        rest.iter().try_fold(first, |acc, &g| self.compose(g, acc))
    }

    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        &self.hom[x * self.objects.len() + y]
    }

    pub fn is_initial(&self, x: usize) -> bool {
        (0..self.num_objects()).all(|y| self.hom(x, y).len() == 1)
    }

    pub fn is_terminal(&self, x: usize) -> bool {
        (0..self.num_objects()).all(|y| self.hom(y, x).len() == 1)
    }

    pub fn initial_object(&self) -> Option<usize> {
        (0..self.num_objects()).find(|&x| self.is_initial(x))
    }

    pub fn terminal_object(&self) -> Option<usize> {
        (0..self.num_objects()).find(|&x| self.is_terminal(x))
    }

    /// Whether every hom-set has at most one element.
    pub fn is_thin(&self) -> bool {
        self.hom.iter().all(|h| h.len() <= 1)
    }
}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinCat({} objects, {} morphisms)", self.num_objects(), self.num_morphisms())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn poset_and_products() {
        let a = FinCat::arrow();
        assert_eq!((a.num_objects(), a.num_morphisms()), (2, 3));
        assert!(a.is_initial(0) && a.is_terminal(1));
        let sq = FinCat::commutative_square();
        assert_eq!((sq.num_objects(), sq.num_morphisms()), (4, 9));
        assert_eq!(sq.initial_object(), Some(0));
        let c = FinCat::coproduct(&a, &a).unwrap();
        assert_eq!(c.initial_object(), None);
        assert_eq!(c.num_morphisms(), 6);
    }

    #[test]
    fn opposite_swaps() {
        let a = FinCat::arrow();
        let op = a.opposite();
        assert!(op.is_initial(1) && op.is_terminal(0));
        assert_eq!(op.opposite(), a);
    }

    #[test]
    fn truncated_monoid() {
        let m = FinCat::monoid_truncation(3);
        assert_eq!(m.compose(2, 2), Some(3));
        assert_eq!(m.compose_path(&[1, 1, 1]), Some(3));
        assert!(!m.is_thin());
    }

    #[test]
    fn rejects_broken_tables() {
        let objs = names(&["x"]);
        let mors = vec![Morphism { name: "id".into(), src: 0, dst: 0 }, Morphism { name: "e".into(), src: 0, dst: 0 }];
        // e∘e = id and e∘id = e is the group of order 2; e∘e = e is idempotent; both are fine.
        assert!(FinCat::new(objs.clone(), mors.clone(), vec![0], |g, f| Some(if g == f { 0 } else { 1 })).is_ok());
        // identity law broken
        assert!(FinCat::new(objs.clone(), mors.clone(), vec![0], |_, _| Some(1)).is_err());
        assert!(FinCat::poset(&names(&["a", "b"]), |i, j| i < j).is_err());
        let cap = Limits { max_objects: 1, max_morphisms: 10 };
        assert!(FinCat::with_limits(cap, names(&["a", "b"]), vec![], vec![], |_, _| None).is_err());
    }

    #[test]
    fn associativity_is_checked() {
        // one object, morphisms {id, a, b} with a∘a = b, a∘b = a, b∘a = b, b∘b = b
        let objs = names(&["x"]);
        let mors = ["id", "a", "b"].iter().map(|n| Morphism { name: n.to_string(), src: 0, dst: 0 }).collect::<Vec<_>>();
        let bad = FinCat::new(objs, mors, vec![0], |g, f| {
            Some(match (g, f) {
                (0, x) | (x, 0) => x,
                (1, 1) => 2,
                (1, 2) => 1,
                _ => 2,
            })
        });
        assert!(matches!(bad, Err(Error::InvalidCategory(m)) if m.contains("associativity")));
    }
}
