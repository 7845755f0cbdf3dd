use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::category::{FinCat, Limits};
use super::functor::{check_adjunction, full_subcategory_with_limits, FunctorData, NatTransData};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Verdict {
    ContractibleByInitial,
    ContractibleByTerminal,
    ContractibleByAdjunctionZigzag,
    Empty,
    Unknown,
}

/// Which adjoint the inclusion of a step has.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AdjointSide {
    /// A reflector `L ⊣ j`.
    Left,
    /// A coreflector `j ⊣ R`.
    Right,
}

/// A full subcategory `j: S → C` with an adjoint, stored in `F ⊣ G` form.
#[derive(Clone, Debug)]
pub struct ZigzagStep {
    pub inclusion: FunctorData,
    pub adjoint: FunctorData,
    pub side: AdjointSide,
    pub unit: NatTransData,
    pub counit: NatTransData,
}

impl ZigzagStep {
    /// `(F, G)` of the adjunction `F ⊣ G`.
    pub fn pair(&self) -> (&FunctorData, &FunctorData) {
        match self.side {
            AdjointSide::Left => (&self.adjoint, &self.inclusion),
            AdjointSide::Right => (&self.inclusion, &self.adjoint),
        }
    }

    pub fn check(&self) -> Result<bool> {
        let (f, g) = self.pair();
        check_adjunction(f, g, &self.unit, &self.counit)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EndKind {
    Initial,
    Terminal,
}

/// A chain of adjunctions `C ⇄ S₁ ⇄ … ⇄ Sₙ` ending at a category with an
/// initial or terminal object, which is in turn adjoint to `e`.
#[derive(Clone, Debug)]
pub struct Zigzag {
    pub steps: Vec<ZigzagStep>,
    pub end: usize,
    pub kind: EndKind,
}

#[derive(Clone, Debug)]
pub enum Certificate {
    Initial(usize),
    Terminal(usize),
    Zigzag(Zigzag),
    Empty,
    Unknown,
}

impl Certificate {
    pub fn verdict(&self) -> Verdict {
        match self {
            Certificate::Initial(_) => Verdict::ContractibleByInitial,
            Certificate::Terminal(_) => Verdict::ContractibleByTerminal,
            Certificate::Zigzag(_) => Verdict::ContractibleByAdjunctionZigzag,
            Certificate::Empty => Verdict::Empty,
            Certificate::Unknown => Verdict::Unknown,
        }
    }

    pub fn is_contractible(&self) -> bool {
        matches!(self, Certificate::Initial(_) | Certificate::Terminal(_) | Certificate::Zigzag(_))
    }

    /// Re-checks the witness from scratch against `c`.
    pub fn validate(&self, c: &Arc<FinCat>) -> Result<bool> {
        Ok(match self {
            Certificate::Initial(x) => *x < c.num_objects() && c.is_initial(*x),
            Certificate::Terminal(x) => *x < c.num_objects() && c.is_terminal(*x),
            Certificate::Empty => c.is_empty(),
            Certificate::Unknown => true,
            Certificate::Zigzag(z) => {
                let mut current = c.clone();
                for step in &z.steps {
                    let t = step.inclusion.target();
                    if !(Arc::ptr_eq(t, &current) || **t == *current) || !step.check()? {
                        return Ok(false);
                    }
                    if !step.inclusion.is_full() || !step.inclusion.is_injective_on_objects() {
                        return Ok(false);
                    }
                    current = step.inclusion.source().clone();
                }
                let end_ok = match z.kind {
                    EndKind::Initial => current.is_initial(z.end),
                    EndKind::Terminal => current.is_terminal(z.end),
                };
                end_ok && point_adjunction(&current, z.end, z.kind)?
            }
        })
    }

    /// Short description of the witness.
    pub fn witness(&self, c: &FinCat) -> String {
        match self {
            Certificate::Initial(x) => format!("initial {}", c.object_name(*x)),
            Certificate::Terminal(x) => format!("terminal {}", c.object_name(*x)),
            Certificate::Zigzag(z) => {
                let mut parts: Vec<String> = z
                    .steps
                    .iter()
                    .map(|s| {
                        let side = match s.side {
                            AdjointSide::Left => "reflective",
                            AdjointSide::Right => "coreflective",
                        };
                        format!("{side} on {} objects", s.inclusion.source().num_objects())
                    })
                    .collect();
                let last = z.steps.last().map(|s| s.inclusion.source().clone());
                let name = last.map(|l| l.object_name(z.end).to_string()).unwrap_or_default();
                let kind = match z.kind {
                    EndKind::Initial => "initial",
                    EndKind::Terminal => "terminal",
                };
                parts.push(format!("{kind} {name}"));
                parts.join(" -> ")
            }
            Certificate::Empty => "empty".into(),
            Certificate::Unknown => "no certificate found".into(),
        }
    }
}

/// The adjunction between `e` and a category with an initial (or terminal)
/// object `y`, checked through the triangle identities.
fn point_adjunction(c: &Arc<FinCat>, y: usize, kind: EndKind) -> Result<bool> {
    let pick = FunctorData::point(c, y);
    let p = FunctorData::to_terminal(c);
    let e = p.target().clone();
    let pick = FunctorData::new(e.clone(), c.clone(), pick.object_map().to_vec(), pick.morphism_map().to_vec())?;
    let around_e = NatTransData::identity(&pick.then(&p)?);
    let comps: Vec<usize> = (0..c.num_objects())
        .map(|x| match kind {
            EndKind::Initial => c.hom(y, x)[0],
            EndKind::Terminal => c.hom(x, y)[0],
        })
        .collect();
    match kind {
        EndKind::Initial => {
            let counit = NatTransData::new(p.then(&pick)?, FunctorData::identity(c), comps)?;
            check_adjunction(&pick, &p, &around_e, &counit)
        }
        EndKind::Terminal => {
            let unit = NatTransData::new(FunctorData::identity(c), p.then(&pick)?, comps)?;
            check_adjunction(&p, &pick, &unit, &around_e)
        }
    }
}

struct Search {
    budget: usize,
    used: usize,
    limits: Limits,
}

impl Search {
    fn spend(&mut self, n: usize) -> Result<()> {
        self.used += n;
        if self.used > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        Ok(())
    }

    /// An adjoint of the inclusion `j: S → C` on the side asked for, if the
    /// universal arrows exist.
    fn adjoint(&mut self, j: &FunctorData, side: AdjointSide) -> Result<Option<ZigzagStep>> {
        let (s, c) = (j.source().clone(), j.target().clone());
        let mut pos = vec![None; c.num_objects()];
        for (i, &x) in j.object_map().iter().enumerate() {
            pos[x] = Some(i);
        }
        // universal arrow for each object of C: (object of S, arrow in C)
        let mut arrows = Vec::with_capacity(c.num_objects());
        for x in 0..c.num_objects() {
            if let Some(i) = pos[x] {
                arrows.push((i, c.identity(x)));
                continue;
            }
            let mut found = None;
            'cands: for t in 0..s.num_objects() {
                let jt = j.on_object(t);
                let cands = match side {
                    AdjointSide::Right => c.hom(jt, x),
                    AdjointSide::Left => c.hom(x, jt),
                };
                for &arrow in cands {
                    if self.universal(j, &c, x, t, arrow, side)? {
                        found = Some((t, arrow));
                        break 'cands;
                    }
                }
            }
            match found {
                Some(a) => arrows.push(a),
                None => return Ok(None),
            }
        }
        let objects: Vec<usize> = arrows.iter().map(|&(t, _)| t).collect();
        let mut morphisms = Vec::with_capacity(c.num_morphisms());
        for phi in 0..c.num_morphisms() {
            let (x, y) = (c.src(phi), c.dst(phi));
            let ((tx, ax), (ty, ay)) = (arrows[x], arrows[y]);
            // Right: ay ∘ j(ψ) = φ ∘ ax.  Left: j(ψ) ∘ ax = ay ∘ φ.
            let want = match side {
                AdjointSide::Right => c.compose(phi, ax),
                AdjointSide::Left => c.compose(ay, phi),
            };
            self.spend(s.hom(tx, ty).len())?;
            let psi = s.hom(tx, ty).iter().copied().find(|&psi| {
                let jpsi = j.on_morphism(psi);
                let got = match side {
                    AdjointSide::Right => c.compose(ay, jpsi),
                    AdjointSide::Left => c.compose(jpsi, ax),
                };
                got == want
            });
            morphisms.push(psi.ok_or_else(|| Error::InvalidFunctor("adjoint is not defined on a morphism".into()))?);
        }
        let adjoint = FunctorData::new(c.clone(), s.clone(), objects, morphisms)?;
        let id_s = FunctorData::identity(&s);
        let id_c = FunctorData::identity(&c);
        let step = match side {
            AdjointSide::Right => {
                // j ⊣ R: unit Id_S ⇒ R j is the identity, counit j R ⇒ Id_C is the universal arrow
                let unit = NatTransData::new(id_s.clone(), j.then(&adjoint)?, (0..s.num_objects()).map(|t| s.identity(t)).collect())?;
                let counit = NatTransData::new(adjoint.then(j)?, id_c, arrows.iter().map(|&(_, a)| a).collect())?;
                ZigzagStep { inclusion: j.clone(), adjoint, side, unit, counit }
            }
            AdjointSide::Left => {
                let unit = NatTransData::new(id_c, adjoint.then(j)?, arrows.iter().map(|&(_, a)| a).collect())?;
                let counit = NatTransData::new(j.then(&adjoint)?, id_s, (0..s.num_objects()).map(|t| s.identity(t)).collect())?;
                ZigzagStep { inclusion: j.clone(), adjoint, side, unit, counit }
            }
        };
        Ok(Some(step))
    }

    /// Whether `arrow` between `x` and `j(t)` is universal among arrows
    /// from or to objects of `S`.
    fn universal(&mut self, j: &FunctorData, c: &FinCat, x: usize, t: usize, arrow: usize, side: AdjointSide) -> Result<bool> {
        let s = j.source();
        for t2 in 0..s.num_objects() {
            let jt2 = j.on_object(t2);
            let (targets, maps) = match side {
                AdjointSide::Right => (c.hom(jt2, x), s.hom(t2, t)),
                AdjointSide::Left => (c.hom(x, jt2), s.hom(t, t2)),
            };
            if targets.len() != maps.len() {
                return Ok(false);
            }
            self.spend(maps.len())?;
            let mut hit: Vec<usize> = maps
                .iter()
                .filter_map(|&psi| match side {
                    AdjointSide::Right => c.compose(arrow, j.on_morphism(psi)),
                    AdjointSide::Left => c.compose(j.on_morphism(psi), arrow),
                })
                .collect();
            hit.sort_unstable();
            hit.dedup();
            if hit.len() != targets.len() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn candidates(&mut self, c: &FinCat) -> Result<Vec<Vec<usize>>> {
        let n = c.num_objects();
        let mut seen = BTreeSet::new();
        for y in 0..n {
            self.spend(2 * n)?;
            seen.insert((0..n).filter(|&x| !c.hom(y, x).is_empty()).collect::<Vec<_>>());
            seen.insert((0..n).filter(|&x| !c.hom(x, y).is_empty()).collect::<Vec<_>>());
        }
        for x in 0..n {
            seen.insert((0..n).filter(|&z| z != x).collect::<Vec<_>>());
        }
        Ok(seen.into_iter().filter(|s| !s.is_empty() && s.len() < n).collect())
    }

    fn steps_from(&mut self, c: &Arc<FinCat>, keep: &[usize]) -> Result<Vec<ZigzagStep>> {
        let j = full_subcategory_with_limits(c, keep, self.limits)?;
        let mut out = Vec::new();
        for side in [AdjointSide::Left, AdjointSide::Right] {
            if let Some(step) = self.adjoint(&j, side)? {
                out.push(step);
            }
        }
        Ok(out)
    }

    fn end_of(s: &FinCat) -> Option<(usize, EndKind)> {
        s.initial_object()
            .map(|x| (x, EndKind::Initial))
            .or_else(|| s.terminal_object().map(|x| (x, EndKind::Terminal)))
    }

    fn search(&mut self, c: &Arc<FinCat>, depth: usize) -> Result<Option<Zigzag>> {
        let cands = self.candidates(c)?;
        // Prefer subcategories that already end the chain.
        for keep in &cands {
            let j = full_subcategory_with_limits(c, keep, self.limits)?;
            let Some((end, kind)) = Self::end_of(j.source()) else { continue };
            if let Some(step) = self.steps_from(c, keep)?.into_iter().next() {
                return Ok(Some(Zigzag { steps: vec![step], end, kind }));
            }
        }
        if depth < 2 {
            return Ok(None);
        }
        for keep in &cands {
            for step in self.steps_from(c, keep)? {
                let sub = step.inclusion.source().clone();
                if let Some(mut rest) = self.search(&sub, depth - 1)? {
                    rest.steps.insert(0, step);
                    return Ok(Some(rest));
                }
            }
        }
        Ok(None)
    }
}

pub const DEFAULT_BUDGET: usize = 2_000_000;

/// First applicable certificate among initial object, terminal object and
/// a zigzag of at most two adjunctions through full subcategories.
pub fn contractibility_certificate(c: &Arc<FinCat>) -> Certificate {
    contractibility_certificate_with_budget(c, DEFAULT_BUDGET).unwrap_or(Certificate::Unknown)
}

/// As [`contractibility_certificate`], but reports an exhausted budget as
/// an error rather than as `Unknown`.
pub fn contractibility_certificate_with_budget(c: &Arc<FinCat>, budget: usize) -> Result<Certificate> {
    if c.is_empty() {
        return Ok(Certificate::Empty);
    }
    if let Some(x) = c.initial_object() {
        return Ok(Certificate::Initial(x));
    }
    if let Some(x) = c.terminal_object() {
        return Ok(Certificate::Terminal(x));
    }
    let defaults = Limits::default();
    let limits = Limits {
        max_objects: defaults.max_objects.max(c.num_objects()),
        max_morphisms: defaults.max_morphisms.max(c.num_morphisms()),
    };
    let mut s = Search { budget, used: 0, limits };
    Ok(match s.search(c, 2)? {
        Some(z) => Certificate::Zigzag(z),
        None => Certificate::Unknown,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(c: FinCat) -> Arc<FinCat> {
        Arc::new(c)
    }

    #[test]
    fn basic_verdicts() {
        let e = arc(FinCat::terminal());
        assert_eq!(contractibility_certificate(&e).verdict(), Verdict::ContractibleByInitial);
        let empty = arc(FinCat::empty());
        assert_eq!(contractibility_certificate(&empty).verdict(), Verdict::Empty);
        let two = arc(FinCat::discrete(&["x".into(), "y".into()]));
        assert_eq!(contractibility_certificate(&two).verdict(), Verdict::Unknown);
        let op = arc(FinCat::arrow().opposite());
        let cert = contractibility_certificate(&op);
        assert_eq!(cert.verdict(), Verdict::ContractibleByInitial);
        assert!(cert.validate(&op).unwrap());
    }

    /// The fence `a < b > c < d`.
    fn fence() -> Arc<FinCat> {
        let names: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let le = |i: usize, j: usize| i == j || matches!((i, j), (0, 1) | (2, 1) | (2, 3));
        arc(FinCat::poset(&names, le).unwrap())
    }

    #[test]
    fn zigzag_for_fence() {
        let c = fence();
        assert!(c.initial_object().is_none() && c.terminal_object().is_none());
        let cert = contractibility_certificate(&c);
        assert_eq!(cert.verdict(), Verdict::ContractibleByAdjunctionZigzag);
        assert!(cert.validate(&c).unwrap());
    }

    #[test]
    fn monoid_is_unknown() {
        let m = arc(FinCat::monoid_truncation(2));
        assert_eq!(contractibility_certificate(&m).verdict(), Verdict::Unknown);
    }

    #[test]
    fn tiny_budget_is_reported() {
        let c = fence();
        assert_eq!(contractibility_certificate_with_budget(&c, 3).unwrap_err(), Error::BudgetExceeded(3));
    }

    #[test]
    fn forged_witness_is_rejected() {
        let c = arc(FinCat::arrow());
        assert!(!Certificate::Initial(1).validate(&c).unwrap());
        assert!(!Certificate::Empty.validate(&c).unwrap());
    }
}
