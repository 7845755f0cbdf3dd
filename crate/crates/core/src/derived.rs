//! Bounded chain complexes of finite-dimensional ℚ-vector spaces with lower
//! indexing (`d_n: C_n → C_{n-1}`), mapping cones and homology, and the
//! derived evaluation of an endomorphism pair as the cone of `T − α`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modcat::EndoPair;
use crate::polyalg::{format_rational, parse_rational, q, QMatrix, Rational};

/// Spaces `C_lo, …, C_hi` where `lo = min_degree`. `differentials[k]` is
/// `d_{lo+k+1}: C_{lo+k+1} → C_{lo+k}`, so there is one fewer differential
/// than spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    min_degree: i64,
    dims: Vec<usize>,
    differentials: Vec<QMatrix>,
}

impl ChainComplex {
    pub fn new(min_degree: i64, dims: Vec<usize>, differentials: Vec<QMatrix>) -> Result<Self> {
        if differentials.len() + 1 != dims.len().max(1) {
            return Err(Error::InvalidComplex(format!("{} spaces need {} differentials", dims.len(), dims.len().saturating_sub(1))));
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.rows() != dims[k] || d.cols() != dims[k + 1] {
                return Err(Error::InvalidComplex(format!("differential into degree {} has the wrong shape", min_degree + k as i64)));
            }
        }
        for w in differentials.windows(2) {
            if !w[0].mul(&w[1]).is_zero() {
                return Err(Error::InvalidComplex("d∘d is not zero".into()));
            }
        }
        Ok(ChainComplex { min_degree, dims, differentials })
    }

    pub fn zero() -> Self {
        ChainComplex { min_degree: 0, dims: Vec::new(), differentials: Vec::new() }
    }

    /// A single space in degree `n`.
    pub fn concentrated(n: i64, dim: usize) -> Self {
        ChainComplex { min_degree: n, dims: vec![dim], differentials: Vec::new() }
    }

    /// `C_1 → C_0` given by `d`.
    pub fn two_term(d: QMatrix) -> Self {
        ChainComplex { min_degree: 0, dims: vec![d.rows(), d.cols()], differentials: vec![d] }
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.dims.len() as i64 - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn differentials(&self) -> &[QMatrix] {
        &self.differentials
    }

    pub fn dim(&self, n: i64) -> usize {
        self.index(n).map_or(0, |k| self.dims[k])
    }

    fn index(&self, n: i64) -> Option<usize> {
        let k = n - self.min_degree;
        (0..self.dims.len() as i64).contains(&k).then_some(k as usize)
    }

    /// `d_n: C_n → C_{n-1}`, a zero matrix outside the stored range.
    pub fn differential(&self, n: i64) -> QMatrix {
        match self.index(n) {
            Some(k) if k > 0 => self.differentials[k - 1].clone(),
            _ => QMatrix::zeros(self.dim(n - 1), self.dim(n)),
        }
    }

    /// `dim ker d_n − rank d_{n+1}`.
    pub fn homology(&self, n: i64) -> usize {
        let dn = self.differential(n);
        let kernel = self.dim(n) - dn.rank();
        kernel - self.differential(n + 1).rank()
    }

    pub fn is_acyclic(&self) -> bool {
        (self.min_degree..=self.max_degree()).all(|n| self.homology(n) == 0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        (self.min_degree..=self.max_degree()).map(|n| sign(n) * self.dim(n) as i64).sum()
    }

    fn degree_span(a: &ChainComplex, b: &ChainComplex) -> Option<(i64, i64)> {
        match (a.dims.is_empty(), b.dims.is_empty()) {
            (true, true) => None,
            (true, false) => Some((b.min_degree, b.max_degree())),
            (false, true) => Some((a.min_degree, a.max_degree())),
            (false, false) => Some((a.min_degree.min(b.min_degree), a.max_degree().max(b.max_degree()))),
        }
    }

    /// Rebuilds from degree-indexed data on `lo..=hi`.
    fn assemble(lo: i64, hi: i64, dim: impl Fn(i64) -> usize, d: impl Fn(i64) -> QMatrix) -> Result<Self> {
        let dims = (lo..=hi).map(&dim).collect();
        let diffs = (lo + 1..=hi).map(d).collect();
        ChainComplex::new(lo, dims, diffs)
    }

    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        let Some((lo, hi)) = Self::degree_span(self, other) else {
            return ChainComplex::zero();
        };
        Self::assemble(lo, hi, |n| self.dim(n) + other.dim(n), |n| self.differential(n).block_diag(&other.differential(n)))
            .expect("direct sum of complexes is a complex")
    }
}

fn sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// A chain map; `components[n − lo]` is `f_n: C_n → D_n` over the span of
/// both complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexMap {
    source: ChainComplex,
    target: ChainComplex,
    lo: i64,
    components: Vec<QMatrix>,
}

impl ComplexMap {
    /// `component(n)` is called for every degree where either complex is
    /// nonzero; commutation with the differentials is checked.
    pub fn new(source: ChainComplex, target: ChainComplex, mut component: impl FnMut(i64) -> QMatrix) -> Result<Self> {
        let (lo, hi) = ChainComplex::degree_span(&source, &target).unwrap_or((0, -1));
        let components: Vec<QMatrix> = (lo..=hi).map(&mut component).collect();
        let map = ComplexMap { source, target, lo, components };
        for n in lo..=hi {
            let f = map.component(n);
            if f.rows() != map.target.dim(n) || f.cols() != map.source.dim(n) {
                return Err(Error::InvalidComplex(format!("component in degree {n} has the wrong shape")));
            }
        }
        for n in lo..=hi + 1 {
            let lhs = map.target.differential(n).mul(&map.component(n));
            let rhs = map.component(n - 1).mul(&map.source.differential(n));
            if lhs != rhs {
                return Err(Error::InvalidComplex(format!("map does not commute with d_{n}")));
            }
        }
        Ok(map)
    }

    pub fn identity(c: &ChainComplex) -> Self {
        ComplexMap::new(c.clone(), c.clone(), |n| QMatrix::identity(c.dim(n))).expect("identity is a chain map")
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        ComplexMap::new(source.clone(), target.clone(), |n| QMatrix::zeros(target.dim(n), source.dim(n)))
            .expect("zero is a chain map")
    }

    /// A map between complexes concentrated in degree 0.
    pub fn in_degree_zero(f: &QMatrix) -> Self {
        let s = ChainComplex::concentrated(0, f.cols());
        let t = ChainComplex::concentrated(0, f.rows());
        ComplexMap::new(s, t, |_| f.clone()).expect("degree zero map")
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn component(&self, n: i64) -> QMatrix {
        let k = n - self.lo;
        if (0..self.components.len() as i64).contains(&k) {
            self.components[k as usize].clone()
        } else {
            QMatrix::zeros(self.target.dim(n), self.source.dim(n))
        }
    }
}

/// Mapping cone with `Cone_n = C_{n-1} ⊕ D_n` and
/// `d(c, x) = (−d_C c, f c + d_D x)`; the inclusion of `D` carries no sign.
pub fn cone(f: &ComplexMap) -> ChainComplex {
    let (c, d) = (&f.source, &f.target);
    let shifted_lo = if c.dims.is_empty() { None } else { Some(c.min_degree + 1) };
    let shifted_hi = if c.dims.is_empty() { None } else { Some(c.max_degree() + 1) };
    let lo = [shifted_lo, (!d.dims.is_empty()).then_some(d.min_degree)].into_iter().flatten().min();
    let hi = [shifted_hi, (!d.dims.is_empty()).then_some(d.max_degree())].into_iter().flatten().max();
    let (Some(lo), Some(hi)) = (lo, hi) else {
        return ChainComplex::zero();
    };
    ChainComplex::assemble(
        lo,
        hi,
        |n| c.dim(n - 1) + d.dim(n),
        |n| {
            let top = c.differential(n - 1).scale(&q(-1));
            let top = top.hstack(&QMatrix::zeros(c.dim(n - 2), d.dim(n)));
            let bottom = f.component(n - 1).hstack(&d.differential(n));
            top.vstack(&bottom)
        },
    )
    .expect("mapping cone is a complex")
}

/// Derived evaluation at `α`: the cone of `T − α` viewed as a map of
/// complexes concentrated in degree 0, so `H₀ = coker(T − α)` and
/// `H₁ = ker(T − α)`.
pub fn ev_alpha_derived(m: &EndoPair, alpha: &Rational) -> ChainComplex {
    let shifted = m.endo().sub(&QMatrix::scalar(m.dim(), alpha));
    cone(&ComplexMap::in_degree_zero(&shifted))
}

pub fn ev_zero_derived(m: &EndoPair) -> ChainComplex {
    ev_alpha_derived(m, &q(0))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ComplexJson {
    pub min_degree: i64,
    pub dims: Vec<usize>,
    pub differentials: Vec<Vec<Vec<String>>>,
}

impl From<&ChainComplex> for ComplexJson {
    fn from(c: &ChainComplex) -> Self {
        ComplexJson {
            min_degree: c.min_degree,
            dims: c.dims.clone(),
            differentials: c
                .differentials
                .iter()
                .map(|d| d.to_rows().iter().map(|r| r.iter().map(format_rational).collect()).collect())
                .collect(),
        }
    }
}

impl TryFrom<&ComplexJson> for ChainComplex {
    type Error = Error;

    fn try_from(j: &ComplexJson) -> Result<Self> {
        if j.differentials.len() + 1 != j.dims.len().max(1) {
            return Err(Error::InvalidComplex("differential count must be one less than dims".into()));
        }
        let mut diffs = Vec::with_capacity(j.differentials.len());
        for (k, grid) in j.differentials.iter().enumerate() {
            let (r, c) = (j.dims[k], j.dims[k + 1]);
            if grid.len() != r || grid.iter().any(|row| row.len() != c) {
                return Err(Error::Shape(format!("differential {k} must be {r}x{c}")));
            }
            let vals = grid.iter().map(|row| row.iter().map(|s| parse_rational(s)).collect()).collect::<Result<Vec<Vec<_>>>>()?;
            diffs.push(QMatrix::from_fn(r, c, |a, b| vals[a][b].clone()));
        }
        ChainComplex::new(j.min_degree, j.dims.clone(), diffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::UPoly;

    fn all_homology(c: &ChainComplex) -> Vec<usize> {
        (c.min_degree()..=c.max_degree()).map(|n| c.homology(n)).collect()
    }

    fn sample() -> ChainComplex {
        // ℚ² → ℚ² → ℚ with d₂ = [[1,0],[0,0]], d₁ = [0, 1]
        let d2 = QMatrix::from_ints(&[&[1, 0], &[0, 0]]);
        let d1 = QMatrix::from_ints(&[&[0, 1]]);
        ChainComplex::new(0, vec![1, 2, 2], vec![d1, d2]).unwrap()
    }

    #[test]
    fn rejects_non_complex() {
        let d2 = QMatrix::from_ints(&[&[0], &[1]]);
        let d1 = QMatrix::from_ints(&[&[0, 1]]);
        assert!(matches!(ChainComplex::new(0, vec![1, 2, 1], vec![d1, d2]), Err(Error::InvalidComplex(_))));
        assert!(matches!(ChainComplex::new(0, vec![1, 2], vec![]), Err(Error::InvalidComplex(_))));
    }

    #[test]
    fn homology_basics() {
        let c = sample();
        assert_eq!(all_homology(&c), vec![0, 0, 1]);
        let acyclic = ChainComplex::two_term(QMatrix::identity(3));
        assert!(acyclic.is_acyclic());
        let flat = ChainComplex::new(0, vec![2, 3], vec![QMatrix::zeros(2, 3)]).unwrap();
        assert_eq!(all_homology(&flat), vec![2, 3]);
        assert_eq!(c.homology(10), 0);
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = sample();
        let k = cone(&ComplexMap::identity(&c));
        assert!(k.is_acyclic());
        assert_eq!(k.euler_characteristic(), 0);
    }

    #[test]
    fn cone_of_zero_splits() {
        let c = sample();
        let k = cone(&ComplexMap::zero(&c, &c));
        for n in -1..=4 {
            assert_eq!(k.homology(n), c.homology(n) + c.homology(n - 1), "degree {n}");
        }
    }

    #[test]
    fn cone_of_t_squared_on_truncated_polynomials() {
        // t² on ℚ[t]/(t³) has rank 1: kernel and cokernel both have dim 2.
        let t = EndoPair::companion(&UPoly::from_ints(&[0, 0, 0, 1])).unwrap();
        let k = cone(&ComplexMap::in_degree_zero(&t.endo().pow(2)));
        assert_eq!((k.homology(0), k.homology(1)), (2, 2));
    }

    #[test]
    fn ev_zero_examples() {
        assert!(ev_zero_derived(&EndoPair::jordan(&q(3), 2)).is_acyclic());
        let z = ev_zero_derived(&EndoPair::new(QMatrix::zeros(3, 3)).unwrap());
        assert_eq!((z.homology(0), z.homology(1)), (3, 3));
        let j = ev_zero_derived(&EndoPair::jordan(&q(0), 2));
        assert_eq!((j.homology(0), j.homology(1)), (1, 1));
    }

    #[test]
    fn ev_alpha_examples() {
        let m = EndoPair::jordan(&q(1), 2);
        assert!(ev_alpha_derived(&m, &q(2)).is_acyclic());
        let id = ev_alpha_derived(&EndoPair::identity(2), &q(1));
        assert_eq!((id.homology(0), id.homology(1)), (2, 2));
        let c = ev_alpha_derived(&EndoPair::companion(&UPoly::from_ints(&[-1, 0, 1])).unwrap(), &q(1));
        assert_eq!((c.homology(0), c.homology(1)), (1, 1));
        let m = EndoPair::jordan(&q(0), 3);
        assert_eq!(ev_alpha_derived(&m, &q(0)), ev_zero_derived(&m));
    }

    #[test]
    fn zero_complex_is_unit_for_sum() {
        let c = sample();
        assert_eq!(c.direct_sum(&ChainComplex::zero()), c);
        assert_eq!(ChainComplex::zero().direct_sum(&c), c);
        let z = ChainComplex::zero();
        assert!(ComplexMap::new(z.clone(), c.clone(), |n| QMatrix::zeros(c.dim(n), 0)).is_ok());
        assert!(ComplexMap::new(c.clone(), z.clone(), |n| QMatrix::zeros(0, c.dim(n))).is_ok());
    }

    #[test]
    fn chain_map_validation() {
        let c = ChainComplex::two_term(QMatrix::identity(1));
        assert!(ComplexMap::new(c.clone(), c.clone(), |n| if n == 0 { QMatrix::identity(1) } else { QMatrix::zeros(1, 1) }).is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = sample();
        let j = ComplexJson::from(&c);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"minDegree\":0"));
        let back: ComplexJson = serde_json::from_str(&text).unwrap();
        assert_eq!(ChainComplex::try_from(&back).unwrap(), c);
    }
}
