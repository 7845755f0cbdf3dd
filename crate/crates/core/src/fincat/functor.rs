use std::sync::Arc;

use super::category::{FinCat, Limits, Morphism};
use crate::error::{Error, Result};

/// A functor between finite categories, validated against the full table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorData {
    source: Arc<FinCat>,
    target: Arc<FinCat>,
    objects: Vec<usize>,
    morphisms: Vec<usize>,
}

fn same(a: &Arc<FinCat>, b: &Arc<FinCat>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl FunctorData {
    pub fn new(source: Arc<FinCat>, target: Arc<FinCat>, objects: Vec<usize>, morphisms: Vec<usize>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidFunctor(m));
        if objects.len() != source.num_objects() || morphisms.len() != source.num_morphisms() {
            return bad("object or morphism map has the wrong length".into());
        }
        if objects.iter().any(|&y| y >= target.num_objects()) || morphisms.iter().any(|&g| g >= target.num_morphisms()) {
            return bad("image out of range".into());
        }
        for f in 0..source.num_morphisms() {
            let g = morphisms[f];
            if target.src(g) != objects[source.src(f)] || target.dst(g) != objects[source.dst(f)] {
                return bad(format!("image of {} has the wrong endpoints", source.morphism_name(f)));
            }
        }
        for x in 0..source.num_objects() {
            if morphisms[source.identity(x)] != target.identity(objects[x]) {
                return bad(format!("identity of {} is not preserved", source.object_name(x)));
            }
        }
        for f in 0..source.num_morphisms() {
            for y in 0..source.num_objects() {
                for &g in source.hom(source.dst(f), y) {
                    let gf = source.compose(g, f).expect("composable");
                    if target.compose(morphisms[g], morphisms[f]) != Some(morphisms[gf]) {
                        return bad(format!(
                            "composite {} ∘ {} is not preserved",
                            source.morphism_name(g),
                            source.morphism_name(f)
                        ));
                    }
                }
            }
        }
        Ok(FunctorData { source, target, objects, morphisms })
    }

    /// Builds a functor from maps given by name lookups in the target.
    pub fn from_fns(
        source: Arc<FinCat>,
        target: Arc<FinCat>,
        on_objects: impl Fn(usize) -> Result<usize>,
        on_morphisms: impl Fn(usize) -> Result<usize>,
    ) -> Result<Self> {
        let objects = (0..source.num_objects()).map(on_objects).collect::<Result<_>>()?;
        let morphisms = (0..source.num_morphisms()).map(on_morphisms).collect::<Result<_>>()?;
        Self::new(source, target, objects, morphisms)
    }

    pub fn identity(c: &Arc<FinCat>) -> Self {
        FunctorData {
            source: c.clone(),
            target: c.clone(),
            objects: (0..c.num_objects()).collect(),
            morphisms: (0..c.num_morphisms()).collect(),
        }
    }

    /// The constant functor at object `y`.
    pub fn constant(source: &Arc<FinCat>, target: &Arc<FinCat>, y: usize) -> Self {
        FunctorData {
            source: source.clone(),
            target: target.clone(),
            objects: vec![y; source.num_objects()],
            morphisms: vec![target.identity(y); source.num_morphisms()],
        }
    }

    /// The functor `e → C` picking out `y`.
    pub fn point(target: &Arc<FinCat>, y: usize) -> Self {
        Self::constant(&Arc::new(FinCat::terminal()), target, y)
    }

    /// The unique functor to `e`.
    pub fn to_terminal(source: &Arc<FinCat>) -> Self {
        Self::constant(source, &Arc::new(FinCat::terminal()), 0)
    }

    pub fn source(&self) -> &Arc<FinCat> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCat> {
        &self.target
    }

    pub fn object_map(&self) -> &[usize] {
        &self.objects
    }

    pub fn morphism_map(&self) -> &[usize] {
        &self.morphisms
    }

    pub fn on_object(&self, x: usize) -> usize {
        self.objects[x]
    }

    pub fn on_morphism(&self, f: usize) -> usize {
        self.morphisms[f]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &FunctorData) -> Result<FunctorData> {
        if !same(&self.target, &next.source) {
            return Err(Error::FrameMismatch("functors are not composable".into()));
        }
        Ok(FunctorData {
            source: self.source.clone(),
            target: next.target.clone(),
            objects: self.objects.iter().map(|&y| next.objects[y]).collect(),
            morphisms: self.morphisms.iter().map(|&g| next.morphisms[g]).collect(),
        })
    }

    pub fn is_injective_on_objects(&self) -> bool {
        let mut seen = vec![false; self.target.num_objects()];
        self.objects.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_faithful(&self) -> bool {
        let s = &self.source;
        (0..s.num_objects()).all(|x| {
            (0..s.num_objects()).all(|y| {
                let mut images: Vec<usize> = s.hom(x, y).iter().map(|&f| self.morphisms[f]).collect();
                images.sort_unstable();
                images.dedup();
                images.len() == s.hom(x, y).len()
            })
        })
    }

    pub fn is_full(&self) -> bool {
        let s = &self.source;
        (0..s.num_objects()).all(|x| {
            (0..s.num_objects()).all(|y| {
                let target_hom = self.target.hom(self.objects[x], self.objects[y]);
                target_hom.iter().all(|g| s.hom(x, y).iter().any(|&f| self.morphisms[f] == *g))
            })
        })
    }

    pub(crate) fn same_frame(&self, other: &FunctorData) -> bool {
        same(&self.source, &other.source) && same(&self.target, &other.target)
    }
}

/// The full subcategory on `keep` (in that order) and its inclusion.
pub fn full_subcategory(c: &Arc<FinCat>, keep: &[usize]) -> Result<FunctorData> {
    full_subcategory_with_limits(c, keep, Limits::default())
}

pub fn full_subcategory_with_limits(c: &Arc<FinCat>, keep: &[usize], limits: Limits) -> Result<FunctorData> {
    let mut pos = vec![usize::MAX; c.num_objects()];
    for (i, &x) in keep.iter().enumerate() {
        if x >= c.num_objects() || pos[x] != usize::MAX {
            return Err(Error::InvalidCategory("subcategory objects must be distinct and in range".into()));
        }
        pos[x] = i;
    }
    let mut mors = Vec::new();
    let mut local = vec![usize::MAX; c.num_morphisms()];
    for &x in keep {
        for &y in keep {
            for &f in c.hom(x, y) {
                local[f] = mors.len();
                mors.push(f);
            }
        }
    }
    let objects = keep.iter().map(|&x| c.object_name(x).to_string()).collect();
    let morphisms =
        mors.iter().map(|&f| Morphism { name: c.morphism_name(f).to_string(), src: pos[c.src(f)], dst: pos[c.dst(f)] }).collect();
    let identities = keep.iter().map(|&x| local[c.identity(x)]).collect();
    let sub = FinCat::with_limits(limits, objects, morphisms, identities, |g, f| {
        c.compose(mors[g], mors[f]).map(|h| local[h])
    })?;
    Ok(FunctorData { source: Arc::new(sub), target: c.clone(), objects: keep.to_vec(), morphisms: mors })
}

/// A natural transformation `α: F ⇒ G`; `components[a]: F(a) → G(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTransData {
    source: FunctorData,
    target: FunctorData,
    components: Vec<usize>,
}

impl NatTransData {
    pub fn new(source: FunctorData, target: FunctorData, components: Vec<usize>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidTransformation(m));
        if !source.same_frame(&target) {
            return Err(Error::FrameMismatch("transformation between functors with different frames".into()));
        }
        let (a, c) = (source.source.clone(), source.target.clone());
        if components.len() != a.num_objects() {
            return bad("one component per object is required".into());
        }
        for x in 0..a.num_objects() {
            let k = components[x];
            if k >= c.num_morphisms() || c.src(k) != source.objects[x] || c.dst(k) != target.objects[x] {
                return bad(format!("component at {} has the wrong endpoints", a.object_name(x)));
            }
        }
        for f in 0..a.num_morphisms() {
            let (x, y) = (a.src(f), a.dst(f));
            let lhs = c.compose(target.morphisms[f], components[x]);
            let rhs = c.compose(components[y], source.morphisms[f]);
            if lhs != rhs {
                return bad(format!("naturality fails at {}", a.morphism_name(f)));
            }
        }
        Ok(NatTransData { source, target, components })
    }

    pub fn identity(f: &FunctorData) -> Self {
        let comps = f.objects.iter().map(|&y| f.target.identity(y)).collect();
        NatTransData { source: f.clone(), target: f.clone(), components: comps }
    }

    pub fn source(&self) -> &FunctorData {
        &self.source
    }

    pub fn target(&self) -> &FunctorData {
        &self.target
    }

    pub fn components(&self) -> &[usize] {
        &self.components
    }

    pub fn component(&self, x: usize) -> usize {
        self.components[x]
    }
}

/// Checks `F ⊣ G` with unit `Id ⇒ GF` and counit `FG ⇒ Id` through both
/// triangle identities at every object.
pub fn check_adjunction(f: &FunctorData, g: &FunctorData, unit: &NatTransData, counit: &NatTransData) -> Result<bool> {
    let (a, b) = (f.source.clone(), f.target.clone());
    if !same(&g.source, &b) || !same(&g.target, &a) {
        return Err(Error::FrameMismatch("G must go back from the target of F".into()));
    }
    let gf = f.then(g)?;
    let fg = g.then(f)?;
    if unit.source != FunctorData::identity(&a) || unit.target != gf {
        return Err(Error::FrameMismatch("unit must go from Id to GF".into()));
    }
    if counit.source != fg || counit.target != FunctorData::identity(&b) {
        return Err(Error::FrameMismatch("counit must go from FG to Id".into()));
    }
    for x in 0..a.num_objects() {
        // ε_{F x} ∘ F(η_x) = id_{F x}
        let lhs = b.compose(counit.components[f.objects[x]], f.morphisms[unit.components[x]]);
        if lhs != Some(b.identity(f.objects[x])) {
            return Ok(false);
        }
    }
    for y in 0..b.num_objects() {
        // G(ε_y) ∘ η_{G y} = id_{G y}
        let lhs = a.compose(g.morphisms[counit.components[y]], unit.components[g.objects[y]]);
        if lhs != Some(a.identity(g.objects[y])) {
            return Ok(false);
        }
    }
    Ok(true)
}
