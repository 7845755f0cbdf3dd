use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::category::Limits;
use super::comma::{triple_comma_with_limits, SquareData};
use super::contract::{contractibility_certificate_with_budget, Certificate, Verdict};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SquareVerdict {
    Certified,
    Inconclusive,
    RefutedByEmpty,
    BudgetExceeded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CellStatus {
    Certificate(Verdict),
    BudgetExceeded,
}

/// One `(a, b, γ)` cell of the check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub a: String,
    pub b: String,
    pub gamma: String,
    pub objects: usize,
    pub status: CellStatus,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactReport {
    pub verdict: SquareVerdict,
    pub cells: Vec<Cell>,
}

/// Bounds for [`exact_square_check`]: the number of cells, the size of each
/// `(a/D/b)_γ`, and the search effort per cell.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_cells: usize,
    pub limits: Limits,
    pub search_steps: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_cells: 4096, limits: Limits::default(), search_steps: super::contract::DEFAULT_BUDGET }
    }
}

/// Certifies contractibility of every `(a/D/b)_γ`. Cells are independent
/// and run in parallel; the report lists them in `(a, b, γ)` order.
pub fn exact_square_check(sq: &SquareData, budget: Budget) -> Result<ExactReport> {
    let (ac, bc, cc) = (sq.a(), sq.b(), sq.c());
    let mut cells = Vec::new();
    for a in 0..ac.num_objects() {
        for b in 0..bc.num_objects() {
            for &gamma in cc.hom(sq.right.on_object(a), sq.bottom.on_object(b)) {
                cells.push((a, b, gamma));
            }
        }
    }
    if cells.len() > budget.max_cells {
        return Err(Error::BudgetExceeded(budget.max_cells));
    }
    let results: Vec<Cell> = cells
        .par_iter()
        .map(|&(a, b, gamma)| {
            let (status, objects, witness) = match triple_comma_with_limits(sq, a, b, gamma, budget.limits) {
                Ok((cat, _)) => {
                    let cat = Arc::new(cat);
                    match contractibility_certificate_with_budget(&cat, budget.search_steps) {
                        Ok(cert) => {
                            let cert = if cert.is_contractible() && !cert.validate(&cat)? { Certificate::Unknown } else { cert };
                            (CellStatus::Certificate(cert.verdict()), cat.num_objects(), cert.witness(&cat))
                        }
                        Err(Error::BudgetExceeded(_)) => (CellStatus::BudgetExceeded, cat.num_objects(), String::new()),
                        Err(e) => return Err(e),
                    }
                }
                Err(Error::BudgetExceeded(_)) | Err(Error::InvalidCategory(_)) => (CellStatus::BudgetExceeded, 0, String::new()),
                Err(e) => return Err(e),
            };
            Ok(Cell {
                a: ac.object_name(a).to_string(),
                b: bc.object_name(b).to_string(),
                gamma: cc.morphism_name(gamma).to_string(),
                objects,
                status,
                witness,
            })
        })
        .collect::<Result<_>>()?;
    let has = |p: &dyn Fn(&CellStatus) -> bool| results.iter().any(|c| p(&c.status));
    let verdict = if has(&|s| *s == CellStatus::Certificate(Verdict::Empty)) {
        SquareVerdict::RefutedByEmpty
    } else if has(&|s| *s == CellStatus::BudgetExceeded) {
        SquareVerdict::BudgetExceeded
    } else if has(&|s| *s == CellStatus::Certificate(Verdict::Unknown)) {
        SquareVerdict::Inconclusive
    } else {
        SquareVerdict::Certified
    };
    Ok(ExactReport { verdict, cells: results })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::category::FinCat;
    use crate::fincat::functor::{FunctorData, NatTransData};

    fn arc(c: FinCat) -> Arc<FinCat> {
        Arc::new(c)
    }

    #[test]
    fn der4_squares_are_certified() {
        let a = arc(FinCat::span());
        let b = arc(FinCat::commutative_square());
        // span into the square: (0,0) ↦ (0,0), (1,0) ↦ (1,0), (0,1) ↦ (0,1)
        let objs = vec![0, 2, 1];
        let u = FunctorData::from_fns(a.clone(), b.clone(), |x| Ok(objs[x]), |f| Ok(b.hom(objs[a.src(f)], objs[a.dst(f)])[0])).unwrap();
        for x in 0..b.num_objects() {
            for sq in [SquareData::comma_over(&u, x).unwrap(), SquareData::comma_under(&u, x).unwrap()] {
                let r = exact_square_check(&sq, Budget::default()).unwrap();
                assert_eq!(r.verdict, SquareVerdict::Certified, "{:?}", r.cells);
            }
        }
    }

    #[test]
    fn empty_d_is_refuted() {
        let empty = arc(FinCat::empty());
        let e = arc(FinCat::terminal());
        let to_e = FunctorData::to_terminal(&empty);
        let id = FunctorData::identity(&e);
        let alpha = NatTransData::new(to_e.clone(), to_e.clone(), vec![]).unwrap();
        let sq = SquareData::new(to_e.clone(), to_e, id.clone(), id, alpha).unwrap();
        let r = exact_square_check(&sq, Budget::default()).unwrap();
        assert_eq!(r.verdict, SquareVerdict::RefutedByEmpty);
    }

    #[test]
    fn product_square_is_certified() {
        // D = A × B over e with both projections: cells are (a/A) × (B/b),
        // products of total orders.
        let a = arc(FinCat::ordinal(2));
        let b = arc(FinCat::ordinal(1).opposite());
        let d = arc(FinCat::product(&a, &b).unwrap());
        let nb = b.num_objects();
        let mb = b.num_morphisms();
        let pa = FunctorData::from_fns(d.clone(), a.clone(), |x| Ok(x / nb), |f| Ok(f / mb)).unwrap();
        let pb = FunctorData::from_fns(d.clone(), b.clone(), |x| Ok(x % nb), |f| Ok(f % mb)).unwrap();
        let ra = FunctorData::to_terminal(&a);
        let rb = FunctorData::to_terminal(&b);
        let alpha = NatTransData::identity(&pa.then(&ra).unwrap());
        let sq = SquareData::new(pa, pb, ra, rb, alpha).unwrap();
        let r = exact_square_check(&sq, Budget::default()).unwrap();
        assert_eq!(r.verdict, SquareVerdict::Certified);
        assert_eq!(r.cells.len(), 3 * 2);
    }

    #[test]
    fn cell_budget() {
        let a = arc(FinCat::ordinal(2));
        let u = FunctorData::identity(&a);
        let sq = SquareData::comma_over(&u, 2).unwrap();
        let tight = Budget { max_cells: 1, ..Budget::default() };
        assert_eq!(exact_square_check(&sq, tight), Err(Error::BudgetExceeded(1)));
    }
}
