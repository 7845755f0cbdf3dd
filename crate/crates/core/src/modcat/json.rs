//! Serialized forms of modules, endomorphism pairs and ring maps.

use serde::{Deserialize, Serialize};

use super::endo::EndoPair;
use super::fpmodule::FpModule;
use super::ops::RingMap;
use crate::error::{Error, Result};
use crate::polyalg::{format_rational, parse_rational, Poly, PolyMatrix, QMatrix};

/// `relations` lists the relation columns, each with one entry per generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpModuleJson {
    pub ring: Vec<String>,
    pub generators: usize,
    pub relations: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndoPairJson {
    pub dim: usize,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingMapJson {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub images: Vec<String>,
}

impl From<&FpModule> for FpModuleJson {
    fn from(m: &FpModule) -> Self {
        let p = m.presentation();
        FpModuleJson {
            ring: m.vars().to_vec(),
            generators: m.generators(),
            relations: (0..p.cols()).map(|j| p.column(j).iter().map(Poly::to_string).collect()).collect(),
        }
    }
}

impl TryFrom<&FpModuleJson> for FpModule {
    type Error = Error;

    fn try_from(j: &FpModuleJson) -> Result<Self> {
        let g = j.generators;
        let mut cols = Vec::with_capacity(j.relations.len());
        for (k, rel) in j.relations.iter().enumerate() {
            if rel.len() != g {
                return Err(Error::Shape(format!("relation {k}: expected {g} entries, got {}", rel.len())));
            }
            cols.push(rel.iter().map(|s| Poly::parse(s, &j.ring)).collect::<Result<Vec<_>>>()?);
        }
        Ok(FpModule::from_presentation(PolyMatrix::from_fn(&j.ring, g, cols.len(), |i, k| cols[k][i].clone())))
    }
}

impl From<&EndoPair> for EndoPairJson {
    fn from(m: &EndoPair) -> Self {
        EndoPairJson {
            dim: m.dim(),
            matrix: m.endo().to_rows().iter().map(|r| r.iter().map(format_rational).collect()).collect(),
        }
    }
}

impl TryFrom<&EndoPairJson> for EndoPair {
    type Error = Error;

    fn try_from(j: &EndoPairJson) -> Result<Self> {
        if j.matrix.len() != j.dim || j.matrix.iter().any(|r| r.len() != j.dim) {
            return Err(Error::Shape(format!("matrix must be {0}x{0}", j.dim)));
        }
        let rows = j.matrix.iter().map(|r| r.iter().map(|s| parse_rational(s)).collect()).collect::<Result<Vec<Vec<_>>>>()?;
        EndoPair::new(QMatrix::from_fn(j.dim, j.dim, |i, k| rows[i][k].clone()))
    }
}

impl From<&RingMap> for RingMapJson {
    fn from(f: &RingMap) -> Self {
        RingMapJson {
            source: f.source().to_vec(),
            target: f.target().to_vec(),
            images: f.images().iter().map(Poly::to_string).collect(),
        }
    }
}

impl TryFrom<&RingMapJson> for RingMap {
    type Error = Error;

    fn try_from(j: &RingMapJson) -> Result<Self> {
        let images: Vec<&str> = j.images.iter().map(String::as_str).collect();
        RingMap::parse(&j.source, &j.target, &images)
    }
}
