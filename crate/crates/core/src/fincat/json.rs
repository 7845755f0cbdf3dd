//! JSON forms of categories, functors, squares and vector-space diagrams.
//! Everything is referred to by name.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::category::{FinCat, Morphism};
use super::comma::SquareData;
use super::functor::{FunctorData, NatTransData};
use super::kan::VectDiagram;
use crate::error::{Error, Result};
use crate::polyalg::{parse_rational, QMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub name: String,
    pub src: String,
    pub dst: String,
}

/// `compose[g][f]` names `g ∘ f` or is null. When `compose` is absent every
/// hom-set must have at most one element and composition is forced.
/// Identities missing from `morphisms` are added as `id_x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinCatJson {
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<MorphismJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identities: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compose: Option<Vec<Vec<Option<String>>>>,
}

impl From<&FinCat> for FinCatJson {
    fn from(c: &FinCat) -> Self {
        let m = c.num_morphisms();
        let compose = (0..m)
            .map(|g| (0..m).map(|f| c.compose(g, f).map(|h| c.morphism_name(h).to_string())).collect())
            .collect();
        FinCatJson {
            objects: c.objects().to_vec(),
            morphisms: c
                .morphisms()
                .iter()
                .map(|f| MorphismJson { name: f.name.clone(), src: c.object_name(f.src).into(), dst: c.object_name(f.dst).into() })
                .collect(),
            identities: Some(c.identities().iter().map(|&i| c.morphism_name(i).to_string()).collect()),
            compose: Some(compose),
        }
    }
}

impl TryFrom<&FinCatJson> for FinCat {
    type Error = Error;

    fn try_from(j: &FinCatJson) -> Result<FinCat> {
        let object = |x: &str| {
            j.objects.iter().position(|o| o == x).ok_or_else(|| Error::UnknownObject(x.to_string()))
        };
        let mut morphisms = j
            .morphisms
            .iter()
            .map(|f| Ok(Morphism { name: f.name.clone(), src: object(&f.src)?, dst: object(&f.dst)? }))
            .collect::<Result<Vec<_>>>()?;
        let morphism = |ms: &[Morphism], name: &str| {
            ms.iter().position(|f| f.name == name).ok_or_else(|| Error::UnknownMorphism(name.to_string()))
        };
        let identities = match &j.identities {
            Some(ids) => ids.iter().map(|name| morphism(&morphisms, name)).collect::<Result<Vec<_>>>()?,
            None => {
                let mut ids = Vec::with_capacity(j.objects.len());
                for (x, name) in j.objects.iter().enumerate() {
                    let id = format!("id_{name}");
                    match morphisms.iter().position(|f| f.name == id) {
                        Some(i) => ids.push(i),
                        None => {
                            ids.push(morphisms.len());
                            morphisms.push(Morphism { name: id, src: x, dst: x });
                        }
                    }
                }
                ids
            }
        };
        match &j.compose {
            Some(table) => {
                let m = morphisms.len();
                if table.len() != m || table.iter().any(|row| row.len() != m) {
                    return Err(Error::InvalidCategory("composition table must be square over all morphisms".into()));
                }
                let mut resolved = vec![vec![None; m]; m];
                for (g, row) in table.iter().enumerate() {
                    for (f, entry) in row.iter().enumerate() {
                        if let Some(name) = entry {
                            resolved[g][f] = Some(morphism(&morphisms, name)?);
                        }
                    }
                }
                FinCat::new(j.objects.clone(), morphisms, identities, |g, f| resolved[g][f])
            }
            None => {
                let n = j.objects.len();
                let mut hom = vec![None; n * n];
                for (i, f) in morphisms.iter().enumerate() {
                    if hom[f.src * n + f.dst].replace(i).is_some() {
                        return Err(Error::InvalidCategory(format!(
                            "parallel morphisms into {} need an explicit composition table",
                            j.objects[f.dst]
                        )));
                    }
                }
                let ms = morphisms.clone();
                FinCat::new(j.objects.clone(), morphisms, identities, |g, f| {
                    (ms[f].dst == ms[g].src).then(|| hom[ms[f].src * n + ms[g].dst]).flatten()
                })
            }
        }
    }
}

/// A functor between named categories. Identities may be omitted from
/// `morphisms`, and so may any morphism whose image hom-set is a singleton.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorJson {
    pub objects: BTreeMap<String, String>,
    #[serde(default)]
    pub morphisms: BTreeMap<String, String>,
}

impl FunctorJson {
    pub fn from_functor(u: &FunctorData) -> Self {
        let (s, t) = (u.source(), u.target());
        FunctorJson {
            objects: (0..s.num_objects()).map(|x| (s.object_name(x).into(), t.object_name(u.on_object(x)).into())).collect(),
            morphisms: (0..s.num_morphisms()).map(|f| (s.morphism_name(f).into(), t.morphism_name(u.on_morphism(f)).into())).collect(),
        }
    }

    pub fn resolve(&self, source: &Arc<FinCat>, target: &Arc<FinCat>) -> Result<FunctorData> {
        let objects = (0..source.num_objects())
            .map(|x| {
                let name = source.object_name(x);
                let image = self.objects.get(name).ok_or_else(|| Error::InvalidFunctor(format!("object {name} has no image")))?;
                target.object_index(image)
            })
            .collect::<Result<Vec<_>>>()?;
        for name in self.objects.keys() {
            source.object_index(name)?;
        }
        let morphisms = (0..source.num_morphisms())
            .map(|f| {
                let name = source.morphism_name(f);
                if let Some(image) = self.morphisms.get(name) {
                    return target.morphism_index(image);
                }
                let (s, d) = (objects[source.src(f)], objects[source.dst(f)]);
                if source.is_identity(f) {
                    return Ok(target.identity(s));
                }
                match target.hom(s, d) {
                    [only] => Ok(*only),
                    _ => Err(Error::InvalidFunctor(format!("morphism {name} has no image"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        FunctorData::new(source.clone(), target.clone(), objects, morphisms)
    }
}

/// The square `D → A → C`, `D → B → C` with `alpha: right∘top ⇒ bottom∘left`
/// given by a component (a morphism of `C`) per object of `D`. A missing
/// component is allowed when the hom-set is a singleton.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareJson {
    pub a: FinCatJson,
    pub b: FinCatJson,
    pub c: FinCatJson,
    pub d: FinCatJson,
    pub top: FunctorJson,
    pub left: FunctorJson,
    pub right: FunctorJson,
    pub bottom: FunctorJson,
    #[serde(default)]
    pub alpha: BTreeMap<String, String>,
}

impl SquareJson {
    pub fn from_square(sq: &SquareData) -> Self {
        let d = sq.d();
        let c = sq.c();
        SquareJson {
            a: sq.a().as_ref().into(),
            b: sq.b().as_ref().into(),
            c: c.as_ref().into(),
            d: d.as_ref().into(),
            top: FunctorJson::from_functor(&sq.top),
            left: FunctorJson::from_functor(&sq.left),
            right: FunctorJson::from_functor(&sq.right),
            bottom: FunctorJson::from_functor(&sq.bottom),
            alpha: (0..d.num_objects()).map(|x| (d.object_name(x).into(), c.morphism_name(sq.alpha.component(x)).into())).collect(),
        }
    }

    pub fn resolve(&self) -> Result<SquareData> {
        let cat = |j: &FinCatJson| FinCat::try_from(j).map(Arc::new);
        let (a, b, c, d) = (cat(&self.a)?, cat(&self.b)?, cat(&self.c)?, cat(&self.d)?);
        let top = self.top.resolve(&d, &a)?;
        let left = self.left.resolve(&d, &b)?;
        let right = self.right.resolve(&a, &c)?;
        let bottom = self.bottom.resolve(&b, &c)?;
        let rt = top.then(&right)?;
        let bl = left.then(&bottom)?;
        let comps = (0..d.num_objects())
            .map(|x| {
                let name = d.object_name(x);
                match self.alpha.get(name) {
                    Some(m) => c.morphism_index(m),
                    None => match c.hom(rt.on_object(x), bl.on_object(x)) {
                        [only] => Ok(*only),
                        _ => Err(Error::InvalidTransformation(format!("no component at {name}"))),
                    },
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let alpha = NatTransData::new(rt, bl, comps)?;
        SquareData::new(top, left, right, bottom, alpha)
    }
}

/// A diagram of vector spaces: dimensions by object name and matrices (rows
/// of rational strings) by morphism name. Identities may be omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectDiagramJson {
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub maps: BTreeMap<String, Vec<Vec<String>>>,
}

impl VectDiagramJson {
    pub fn from_diagram(x: &VectDiagram) -> Self {
        let c = x.cat();
        VectDiagramJson {
            dims: (0..c.num_objects()).map(|o| (c.object_name(o).into(), x.dim(o))).collect(),
            maps: (0..c.num_morphisms())
                .filter(|&f| !c.is_identity(f))
                .map(|f| {
                    let m = x.map(f);
                    let rows = (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect()).collect();
                    (c.morphism_name(f).into(), rows)
                })
                .collect(),
        }
    }

    pub fn resolve(&self, cat: &Arc<FinCat>) -> Result<VectDiagram> {
        let dims = (0..cat.num_objects())
            .map(|x| {
                let name = cat.object_name(x);
                self.dims.get(name).copied().ok_or_else(|| Error::InvalidDiagram(format!("object {name} has no dimension")))
            })
            .collect::<Result<Vec<_>>>()?;
        let maps = (0..cat.num_morphisms())
            .map(|f| {
                let name = cat.morphism_name(f);
                let (r, c) = (dims[cat.dst(f)], dims[cat.src(f)]);
                match self.maps.get(name) {
                    Some(rows) => {
                        if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                            return Err(Error::Shape(format!("matrix of {name} must be {r}×{c}")));
                        }
                        let parsed = rows.iter().map(|row| row.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
                        Ok(if r == 0 { QMatrix::zeros(0, c) } else { QMatrix::from_rows(parsed) })
                    }
                    None if cat.is_identity(f) => Ok(QMatrix::identity(r)),
                    None if r == 0 || c == 0 => Ok(QMatrix::zeros(r, c)),
                    None => Err(Error::InvalidDiagram(format!("morphism {name} has no matrix"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        VectDiagram::new(cat.clone(), dims, maps)
    }
}
