//! Bounded replicas of the categories built from the monoid ℕ: the category
//! of pairs `(m, n)` with its order embedding, the subcategory `L` with its
//! reflector, and the slice categories `C = (+×1/e)`, `C₀`, `D = (+/e)`
//! with the functors and adjunctions relating them.

use std::collections::HashMap;
use std::sync::Arc;

use super::category::{FinCat, Limits, Morphism};
use super::functor::{check_adjunction, full_subcategory, full_subcategory_with_limits, FunctorData, NatTransData};
use crate::error::{Error, Result};

/// An adjunction `left ⊣ right` with its unit and counit.
#[derive(Clone, Debug)]
pub struct Adjunction {
    pub left: FunctorData,
    pub right: FunctorData,
    pub unit: NatTransData,
    pub counit: NatTransData,
}

impl Adjunction {
    pub fn check(&self) -> Result<bool> {
        check_adjunction(&self.left, &self.right, &self.unit, &self.counit)
    }
}

#[derive(Clone, Debug)]
pub struct NnTruncations {
    pub k: usize,
    /// Pairs `(m, n)` with `m, n ≤ k` and a unique morphism
    /// `(m, n) → (m', n')` iff `m ≤ m'` and `n − n' ≥ m' − m`.
    pub pairs: Arc<FinCat>,
    /// `(m, n) ↦ (m, m + n)` into `([0,k], ≤) × ([0,2k], ≥)`; fully faithful.
    pub pair_embedding: FunctorData,
    /// The triangle `m + n ≤ k` with its reflector; it has initial object `(0, k)`.
    pub pair_reflection: Adjunction,
    /// `([0,k], ≤)²`.
    pub grid: Arc<FinCat>,
    /// `L = {(m, n) : n ≤ m}` in the grid, reflected by `(m, n) ↦ (max(m, n), n)`.
    pub l_adjunction: Adjunction,
    pub c: Arc<FinCat>,
    pub c0: Arc<FinCat>,
    pub d: Arc<FinCat>,
    pub g: FunctorData,
    /// `L ⊣ i₀`.
    pub c0_adjunction: Adjunction,
    /// `F ⊣ G ∘ i₀`.
    pub d_adjunction: Adjunction,
}

impl NnTruncations {
    /// `L_{≤k}` as a category.
    pub fn l_sub(&self) -> &Arc<FinCat> {
        self.l_adjunction.left.target()
    }

    pub fn i0(&self) -> &FunctorData {
        &self.c0_adjunction.right
    }

    /// Every adjunction in the library, labelled.
    pub fn adjunctions(&self) -> Vec<(&'static str, &Adjunction)> {
        vec![
            ("pairs onto triangle", &self.pair_reflection),
            ("L reflector", &self.l_adjunction),
            ("L -| i0", &self.c0_adjunction),
            ("F -| G i0", &self.d_adjunction),
        ]
    }
}

fn pair_name(m: usize, n: usize) -> String {
    format!("({m},{n})")
}

/// Caps for the truncation library; the `k = 8` grids have 81 objects.
pub const TRUNCATION_LIMITS: Limits = Limits { max_objects: 256, max_morphisms: 8192 };

fn ordered(names: Vec<(usize, usize)>, le: impl Fn((usize, usize), (usize, usize)) -> bool) -> Result<FinCat> {
    let labels: Vec<String> = names.iter().map(|&(m, n)| pair_name(m, n)).collect();
    FinCat::poset_with_limits(TRUNCATION_LIMITS, &labels, |i, j| le(names[i], names[j]))
}

fn box_pairs(k: usize) -> Vec<(usize, usize)> {
    (0..=k).flat_map(|m| (0..=k).map(move |n| (m, n))).collect()
}

fn unique(c: &FinCat, x: usize, y: usize) -> Result<usize> {
    c.hom(x, y).first().copied().ok_or_else(|| Error::InvalidFunctor(format!("no morphism {} -> {}", c.object_name(x), c.object_name(y))))
}

/// A monotone map between thin categories, given on objects.
fn thin_functor(source: &Arc<FinCat>, target: &Arc<FinCat>, on_objects: impl Fn(usize) -> usize) -> Result<FunctorData> {
    FunctorData::from_fns(
        source.clone(),
        target.clone(),
        |x| Ok(on_objects(x)),
        |f| unique(target, on_objects(source.src(f)), on_objects(source.dst(f))),
    )
}

fn thin_transformation(f: &FunctorData, g: &FunctorData) -> Result<NatTransData> {
    let t = f.target();
    let comps = (0..f.source().num_objects()).map(|x| unique(t, f.on_object(x), g.on_object(x))).collect::<Result<_>>()?;
    NatTransData::new(f.clone(), g.clone(), comps)
}

/// Reflection of a thin category onto the full subcategory on `keep`
/// along `r`, which must land in `keep`.
fn thin_reflection(c: &Arc<FinCat>, keep: &[usize], r: impl Fn(usize) -> usize) -> Result<Adjunction> {
    let incl = full_subcategory_with_limits(c, keep, TRUNCATION_LIMITS)?;
    let sub = incl.source().clone();
    let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let left = thin_functor(c, &sub, |x| pos[&r(x)])?;
    let unit = thin_transformation(&FunctorData::identity(c), &left.then(&incl)?)?;
    let counit = thin_transformation(&incl.then(&left)?, &FunctorData::identity(&sub))?;
    Ok(Adjunction { left, right: incl, unit, counit })
}

/// `C = (+×1/e)` truncated to `a + b ≤ k`: objects `(a, b)`, morphisms
/// `(j, k, l): (a, b) → (a − j − k, b − l)`, composed by addition.
fn slice_c(k: usize) -> Result<(FinCat, Vec<(usize, usize)>, Vec<[usize; 3]>)> {
    let objects: Vec<(usize, usize)> = (0..=k).flat_map(|a| (0..=k - a).map(move |b| (a, b))).collect();
    let index: HashMap<(usize, usize), usize> = objects.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut morphisms = Vec::new();
    let mut labels = Vec::new();
    let mut lookup = HashMap::new();
    for (s, &(a, b)) in objects.iter().enumerate() {
        for j in 0..=a {
            for kk in 0..=a - j {
                for l in 0..=b {
                    let t = index[&(a - j - kk, b - l)];
                    lookup.insert((s, [j, kk, l]), morphisms.len());
                    morphisms.push(Morphism { name: format!("({j},{kk},{l})@({a},{b})"), src: s, dst: t });
                    labels.push([j, kk, l]);
                }
            }
        }
    }
    let identities = (0..objects.len()).map(|s| lookup[&(s, [0, 0, 0])]).collect();
    let cat = FinCat::new(objects.iter().map(|&(a, b)| pair_name(a, b)).collect(), morphisms.clone(), identities, |g, f| {
        if morphisms[f].dst != morphisms[g].src {
            return None;
        }
        let (x, y) = (labels[f], labels[g]);
        lookup.get(&(morphisms[f].src, [x[0] + y[0], x[1] + y[1], x[2] + y[2]])).copied()
    })?;
    Ok((cat, objects, labels))
}

/// `D = (+/e)` truncated to `m ≤ k`: `Hom(m, n) = {(i, j) : i + j = m − n}`.
fn slice_d(k: usize) -> Result<(FinCat, Vec<[usize; 2]>)> {
    let mut morphisms = Vec::new();
    let mut labels = Vec::new();
    let mut lookup = HashMap::new();
    for m in 0..=k {
        for i in 0..=m {
            for j in 0..=m - i {
                lookup.insert((m, [i, j]), morphisms.len());
                morphisms.push(Morphism { name: format!("({i},{j})@{m}"), src: m, dst: m - i - j });
                labels.push([i, j]);
            }
        }
    }
    let identities = (0..=k).map(|m| lookup[&(m, [0, 0])]).collect();
    let cat = FinCat::new((0..=k).map(|m| m.to_string()).collect(), morphisms.clone(), identities, |g, f| {
        if morphisms[f].dst != morphisms[g].src {
            return None;
        }
        let (x, y) = (labels[f], labels[g]);
        lookup.get(&(morphisms[f].src, [x[0] + y[0], x[1] + y[1]])).copied()
    })?;
    Ok((cat, labels))
}

/// Builds and validates every truncated category, functor and adjunction.
pub fn nn_truncations(k: usize) -> Result<NnTruncations> {
    if k == 0 {
        return Err(Error::InvalidCategory("truncation bound must be at least 1".into()));
    }
    let boxes = box_pairs(k);
    let pairs = Arc::new(ordered(boxes.clone(), |(m, n), (m2, n2)| m <= m2 && n >= n2 && n - n2 >= m2 - m)?);
    // The image of (m, n) ↦ (m, m + n), as a full subcategory of
    // ([0,k], ≤) × ([0,2k], ≥).
    let image: Vec<(usize, usize)> = boxes.iter().map(|&(m, n)| (m, m + n)).collect();
    let image_cat = Arc::new(ordered(image, |(a, b), (a2, b2)| a <= a2 && b >= b2)?);
    let pair_embedding = thin_functor(&pairs, &image_cat, |x| x)?;

    let box_index: HashMap<(usize, usize), usize> = boxes.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let triangle: Vec<usize> = boxes.iter().enumerate().filter(|(_, &(m, n))| m + n <= k).map(|(i, _)| i).collect();
    let pair_reflection = thin_reflection(&pairs, &triangle, |x| {
        let (m, n) = boxes[x];
        box_index[&(m, n.min(k - m))]
    })?;

    let grid = Arc::new(ordered(boxes.clone(), |(m, n), (m2, n2)| m <= m2 && n <= n2)?);
    let l_objects: Vec<usize> = boxes.iter().enumerate().filter(|(_, &(m, n))| n <= m).map(|(i, _)| i).collect();
    let l_adjunction = thin_reflection(&grid, &l_objects, |x| {
        let (m, n) = boxes[x];
        box_index[&(m.max(n), n)]
    })?;

    let (c, c_objects, c_labels) = slice_c(k)?;
    let c = Arc::new(c);
    let c0_keep: Vec<usize> = c_objects.iter().enumerate().filter(|(_, &(_, b))| b == 0).map(|(i, _)| i).collect();
    let i0 = full_subcategory(&c, &c0_keep)?;
    let c0 = i0.source().clone();
    let c_index: HashMap<(usize, usize), usize> = c_objects.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let c0_pos: HashMap<usize, usize> = c0_keep.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let c_morphism = |src: usize, label: [usize; 3]| -> Result<usize> {
        let (a, b) = c_objects[src];
        let dst = c_index[&(a - label[0] - label[1], b - label[2])];
        c.hom(src, dst)
            .iter()
            .copied()
            .find(|&f| c_labels[f] == label)
            .ok_or_else(|| Error::InvalidFunctor("missing morphism of C".into()))
    };
    let c0_morphism = |f: usize| -> Result<usize> {
        c0.morphism_index(c.morphism_name(f))
    };

    let (d, d_labels) = slice_d(k)?;
    let d = Arc::new(d);
    let d_morphism = |src: usize, label: [usize; 2]| -> Result<usize> {
        d.hom(src, src - label[0] - label[1])
            .iter()
            .copied()
            .find(|&f| d_labels[f] == label)
            .ok_or_else(|| Error::InvalidFunctor("missing morphism of D".into()))
    };

    // G(a, b) = a + b, G(j, k, l) = (j, k + l)
    let g = FunctorData::from_fns(
        c.clone(),
        d.clone(),
        |x| Ok(c_objects[x].0 + c_objects[x].1),
        |f| {
            let (a, b) = c_objects[c.src(f)];
            let [j, kk, l] = c_labels[f];
            d_morphism(a + b, [j, kk + l])
        },
    )?;

    // L(a, b) = (a, 0), L(j, k, l) = (j, k, 0); unit (0, 0, b), counit identity
    let l = FunctorData::from_fns(
        c.clone(),
        c0.clone(),
        |x| Ok(c0_pos[&c_index[&(c_objects[x].0, 0)]]),
        |f| {
            let src = c_index[&(c_objects[c.src(f)].0, 0)];
            let [j, kk, _] = c_labels[f];
            c0_morphism(c_morphism(src, [j, kk, 0])?)
        },
    )?;
    let unit = NatTransData::new(
        FunctorData::identity(&c),
        l.then(&i0)?,
        (0..c.num_objects()).map(|x| c_morphism(x, [0, 0, c_objects[x].1])).collect::<Result<_>>()?,
    )?;
    let counit = NatTransData::identity(&i0.then(&l)?);
    let counit = NatTransData::new(counit.source().clone(), FunctorData::identity(&c0), counit.components().to_vec())?;
    let c0_adjunction = Adjunction { left: l, right: i0.clone(), unit, counit };

    // F(m) = (m, 0), F(i, j) = (i, j, 0); F ⊣ G∘i₀ with identity unit and counit
    let gi0 = i0.then(&g)?;
    let f = FunctorData::from_fns(
        d.clone(),
        c0.clone(),
        |m| Ok(c0_pos[&c_index[&(m, 0)]]),
        |h| {
            let [i, j] = d_labels[h];
            c0_morphism(c_morphism(c_index[&(d.src(h), 0)], [i, j, 0])?)
        },
    )?;
    let unit = NatTransData::new(
        FunctorData::identity(&d),
        f.then(&gi0)?,
        (0..d.num_objects()).map(|m| d.identity(m)).collect(),
    )?;
    let counit = NatTransData::new(
        gi0.then(&f)?,
        FunctorData::identity(&c0),
        (0..c0.num_objects()).map(|x| c0.identity(x)).collect(),
    )?;
    let d_adjunction = Adjunction { left: f, right: gi0, unit, counit };

    Ok(NnTruncations { k, pairs, pair_embedding, pair_reflection, grid, l_adjunction, c, c0, d, g, c0_adjunction, d_adjunction })
}
