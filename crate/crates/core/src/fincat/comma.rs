use std::collections::HashMap;
use std::sync::Arc;

use super::category::{FinCat, Limits, Morphism};
use super::functor::{FunctorData, NatTransData};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `(u/b)`: objects `(a, f: u(a) → b)`.
    Over,
    /// `(b/u)`: objects `(a, f: b → u(a))`.
    Under,
}

/// A comma category together with its projection to the source of `u`, and
/// for each comma object the pair `(a, f)` it stands for.
#[derive(Clone, Debug)]
pub struct Comma {
    pub projection: FunctorData,
    pub pairs: Vec<(usize, usize)>,
}

impl Comma {
    pub fn category(&self) -> &Arc<FinCat> {
        self.projection.source()
    }
}

/// Builds a category whose objects are given and whose morphisms are the
/// `(label, src, dst)` triples accepted by `admits`; composition is
/// composition of labels in `base`.
fn from_labels(
    objects: Vec<String>,
    base: &FinCat,
    admits: impl Fn(usize, usize, usize) -> bool,
    labels_from: impl Fn(usize, usize) -> Vec<usize>,
    identity_label: impl Fn(usize) -> usize,
    limits: Limits,
) -> Result<(FinCat, Vec<usize>)> {
    let n = objects.len();
    let mut morphisms = Vec::new();
    let mut labels = Vec::new();
    let mut index = HashMap::new();
    for i in 0..n {
        for j in 0..n {
            for h in labels_from(i, j) {
                if admits(h, i, j) {
                    if morphisms.len() >= limits.max_morphisms {
                        return Err(Error::BudgetExceeded(limits.max_morphisms));
                    }
                    index.insert((h, i, j), morphisms.len());
                    morphisms.push(Morphism { name: format!("{}:{}->{}", base.morphism_name(h), i, j), src: i, dst: j });
                    labels.push(h);
                }
            }
        }
    }
    let mut identities = Vec::with_capacity(n);
    for i in 0..n {
        let id = index.get(&(identity_label(i), i, i)).copied();
        identities.push(id.ok_or_else(|| Error::InvalidCategory("comma object without identity".into()))?);
    }
    let cat = FinCat::with_limits(limits, objects, morphisms.clone(), identities, |g, f| {
        if morphisms[f].dst != morphisms[g].src {
            return None;
        }
        let h = base.compose(labels[g], labels[f])?;
        index.get(&(h, morphisms[f].src, morphisms[g].dst)).copied()
    })?;
    Ok((cat, labels))
}

/// `(u/b)` or `(b/u)` with its projection to `A`.
pub fn comma_category(u: &FunctorData, b: usize, side: Side) -> Result<Comma> {
    comma_category_with_limits(u, b, side, Limits::default())
}

pub fn comma_category_with_limits(u: &FunctorData, b: usize, side: Side, limits: Limits) -> Result<Comma> {
    let (a_cat, b_cat) = (u.source().clone(), u.target().clone());
    if b >= b_cat.num_objects() {
        return Err(Error::UnknownObject(format!("#{b}")));
    }
    let mut pairs = Vec::new();
    for a in 0..a_cat.num_objects() {
        let ua = u.on_object(a);
        let homs = match side {
            Side::Over => b_cat.hom(ua, b),
            Side::Under => b_cat.hom(b, ua),
        };
        pairs.extend(homs.iter().map(|&f| (a, f)));
    }
    if pairs.len() > limits.max_objects {
        return Err(Error::BudgetExceeded(limits.max_objects));
    }
    let names = pairs.iter().map(|&(a, f)| format!("({},{})", a_cat.object_name(a), b_cat.morphism_name(f))).collect();
    let admits = |h: usize, i: usize, j: usize| {
        let ((_, f), (_, f2)) = (pairs[i], pairs[j]);
        let uh = u.on_morphism(h);
        match side {
            Side::Over => b_cat.compose(f2, uh) == Some(f),
            Side::Under => b_cat.compose(uh, f) == Some(f2),
        }
    };
    let (cat, labels) = from_labels(
        names,
        &a_cat,
        admits,
        |i, j| a_cat.hom(pairs[i].0, pairs[j].0).to_vec(),
        |i| a_cat.identity(pairs[i].0),
        limits,
    )?;
    let cat = Arc::new(cat);
    let objects = pairs.iter().map(|&(a, _)| a).collect();
    let projection = FunctorData::new(cat, a_cat, objects, labels)?;
    Ok(Comma { projection, pairs })
}

/// A square of functors
///
/// ```text
///   D --top--> A
///   |          |
///  left      right
///   v          v
///   B --bottom-> C
/// ```
///
/// filled by `alpha: right∘top ⇒ bottom∘left`.
#[derive(Clone, Debug)]
pub struct SquareData {
    pub top: FunctorData,
    pub left: FunctorData,
    pub right: FunctorData,
    pub bottom: FunctorData,
    pub alpha: NatTransData,
}

impl SquareData {
    pub fn new(top: FunctorData, left: FunctorData, right: FunctorData, bottom: FunctorData, alpha: NatTransData) -> Result<Self> {
        let eq = |x: &Arc<FinCat>, y: &Arc<FinCat>| Arc::ptr_eq(x, y) || x == y;
        let ok = eq(top.source(), left.source())
            && eq(top.target(), right.source())
            && eq(left.target(), bottom.source())
            && eq(right.target(), bottom.target());
        if !ok {
            return Err(Error::FrameMismatch("square boundary does not close up".into()));
        }
        if alpha.source() != &top.then(&right)? || alpha.target() != &left.then(&bottom)? {
            return Err(Error::FrameMismatch("transformation must go from right∘top to bottom∘left".into()));
        }
        Ok(SquareData { top, left, right, bottom, alpha })
    }

    pub fn d(&self) -> &Arc<FinCat> {
        self.top.source()
    }

    pub fn a(&self) -> &Arc<FinCat> {
        self.top.target()
    }

    pub fn b(&self) -> &Arc<FinCat> {
        self.left.target()
    }

    pub fn c(&self) -> &Arc<FinCat> {
        self.right.target()
    }

    /// The square `(u/b) → A`, `(u/b) → e`, `u`, `b: e → B` with the
    /// transformation given by the structure maps `u(a) → b`.
    pub fn comma_over(u: &FunctorData, b: usize) -> Result<Self> {
        let comma = comma_category(u, b, Side::Over)?;
        let d = comma.category().clone();
        let left = FunctorData::to_terminal(&d);
        let bottom = FunctorData::point(u.target(), b);
        let alpha = NatTransData::new(
            comma.projection.then(u)?,
            left.then(&bottom)?,
            comma.pairs.iter().map(|&(_, f)| f).collect(),
        )?;
        SquareData::new(comma.projection.clone(), left, u.clone(), bottom, alpha)
    }

    /// The square `(b/u) → e`, `(b/u) → A`, `b: e → B`, `u`, with the
    /// transformation given by the structure maps `b → u(a)`.
    pub fn comma_under(u: &FunctorData, b: usize) -> Result<Self> {
        let comma = comma_category(u, b, Side::Under)?;
        let d = comma.category().clone();
        let top = FunctorData::to_terminal(&d);
        let right = FunctorData::point(u.target(), b);
        let alpha = NatTransData::new(
            top.then(&right)?,
            comma.projection.then(u)?,
            comma.pairs.iter().map(|&(_, f)| f).collect(),
        )?;
        SquareData::new(top, comma.projection.clone(), right, u.clone(), alpha)
    }
}

/// A triple `(d, f: a → top(d), g: left(d) → b)` of `(a/D/b)_γ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Triple {
    pub d: usize,
    pub f: usize,
    pub g: usize,
}

/// `(a/D/b)_γ` for `γ: right(a) → bottom(b)`: triples with
/// `bottom(g) ∘ α_d ∘ right(f) = γ`, and morphisms `h: d → d'` with
/// `top(h) ∘ f = f'` and `g' ∘ left(h) = g`.
pub fn triple_comma(sq: &SquareData, a: usize, b: usize, gamma: usize) -> Result<(FinCat, Vec<Triple>)> {
    triple_comma_with_limits(sq, a, b, gamma, Limits::default())
}

pub fn triple_comma_with_limits(
    sq: &SquareData,
    a: usize,
    b: usize,
    gamma: usize,
    limits: Limits,
) -> Result<(FinCat, Vec<Triple>)> {
    let (dc, ac, bc, cc) = (sq.d(), sq.a(), sq.b(), sq.c());
    if a >= ac.num_objects() || b >= bc.num_objects() {
        return Err(Error::FrameMismatch("a or b is not an object of the frame".into()));
    }
    if gamma >= cc.num_morphisms()
        || cc.src(gamma) != sq.right.on_object(a)
        || cc.dst(gamma) != sq.bottom.on_object(b)
    {
        return Err(Error::FrameMismatch("γ must go from right(a) to bottom(b)".into()));
    }
    let mut triples = Vec::new();
    for d in 0..dc.num_objects() {
        let alpha_d = sq.alpha.component(d);
        for &f in ac.hom(a, sq.top.on_object(d)) {
            let first = cc.compose(alpha_d, sq.right.on_morphism(f)).expect("composable");
            for &g in bc.hom(sq.left.on_object(d), b) {
                if cc.compose(sq.bottom.on_morphism(g), first) == Some(gamma) {
                    triples.push(Triple { d, f, g });
                }
            }
        }
    }
    if triples.len() > limits.max_objects {
        return Err(Error::BudgetExceeded(limits.max_objects));
    }
    let names = triples
        .iter()
        .map(|t| format!("({},{},{})", dc.object_name(t.d), ac.morphism_name(t.f), bc.morphism_name(t.g)))
        .collect();
    let admits = |h: usize, i: usize, j: usize| {
        let (s, t) = (triples[i], triples[j]);
        ac.compose(sq.top.on_morphism(h), s.f) == Some(t.f) && bc.compose(t.g, sq.left.on_morphism(h)) == Some(s.g)
    };
    let (cat, _) = from_labels(
        names,
        dc,
        admits,
        |i, j| dc.hom(triples[i].d, triples[j].d).to_vec(),
        |i| dc.identity(triples[i].d),
        limits,
    )?;
    Ok((cat, triples))
}
