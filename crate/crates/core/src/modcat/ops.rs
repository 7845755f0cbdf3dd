use std::fmt;

use super::fpmodule::FpModule;
use crate::error::{Error, Result};
use crate::polyalg::{check_vars, Poly, PolyMatrix, Rational};

/// A ℚ-algebra map ℚ[source] → ℚ[target], one image per source variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMap {
    source: Vec<String>,
    target: Vec<String>,
    images: Vec<Poly>,
}

impl RingMap {
    pub fn new(source: &[String], target: &[String], images: Vec<Poly>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::WrongVariableCount { expected: source.len(), found: target.to_vec() });
        }
        for p in &images {
            check_vars(p.vars(), target)?;
        }
        Ok(RingMap { source: source.to_vec(), target: target.to_vec(), images })
    }

    /// Parses one image string per source variable.
    pub fn parse(source: &[String], target: &[String], images: &[&str]) -> Result<Self> {
        let images = images.iter().map(|s| Poly::parse(s, target)).collect::<Result<_>>()?;
        Self::new(source, target, images)
    }

    pub fn identity(vars: &[String]) -> Self {
        let images = vars.iter().map(|v| Poly::var(vars, v).expect("declared variable")).collect();
        RingMap { source: vars.to_vec(), target: vars.to_vec(), images }
    }

    /// Coefficient inclusion ℚ → ℚ[target].
    pub fn inclusion(target: &[String]) -> Self {
        RingMap { source: Vec::new(), target: target.to_vec(), images: Vec::new() }
    }

    pub fn source(&self) -> &[String] {
        &self.source
    }

    pub fn target(&self) -> &[String] {
        &self.target
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        check_vars(p.vars(), &self.source)?;
        p.substitute(&self.images, &self.target)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &RingMap) -> Result<RingMap> {
        check_vars(&self.target, &next.source)?;
        let images = self.images.iter().map(|p| next.apply(p)).collect::<Result<_>>()?;
        Ok(RingMap { source: self.source.clone(), target: next.target.clone(), images })
    }
}

impl fmt::Display for RingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.source.iter().zip(&self.images).map(|(v, p)| format!("{v} -> {p}")).collect();
        write!(f, "Q[{}] -> Q[{}]: {}", self.source.join(","), self.target.join(","), parts.join(", "))
    }
}

/// The endomorphism `α` of the unit over ℚ[target]: the free rank-one module
/// on which the extra variable acts by `α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeWitness {
    alpha: Poly,
}

impl TypeWitness {
    pub fn new(alpha: Poly) -> Self {
        TypeWitness { alpha }
    }

    pub fn scalar(a: Rational) -> Self {
        TypeWitness { alpha: Poly::constant(&[], a) }
    }

    pub fn target(&self) -> &[String] {
        self.alpha.vars()
    }

    pub fn alpha(&self) -> &Poly {
        &self.alpha
    }

    /// The ring map `var ↦ α`.
    pub fn ring_map(&self, var: &str) -> RingMap {
        RingMap { source: vec![var.to_string()], target: self.target().to_vec(), images: vec![self.alpha.clone()] }
    }

    /// `(𝟙, α)` as a module over ℚ[target, var] presented by `var − α`.
    pub fn module(&self, var: &str) -> Result<FpModule> {
        let vars = extend_vars(self.target(), var)?;
        let t = Poly::var(&vars, var)?;
        let rel = t.try_sub(&self.alpha.embed(&vars)?)?;
        FpModule::quotient(&vars, &[rel])
    }

    /// Forgetting the action: the underlying module of `(𝟙, α)`.
    pub fn underlying(&self) -> FpModule {
        FpModule::free(self.target(), 1)
    }
}

fn extend_vars(base: &[String], var: &str) -> Result<Vec<String>> {
    if base.iter().any(|v| v == var) {
        return Err(Error::VariableMismatch { left: base.to_vec(), right: vec![var.to_string()] });
    }
    let mut out = base.to_vec();
    out.push(var.to_string());
    Ok(out)
}

/// A variable name starting with `stem` that is not in `avoid`.
pub fn fresh_var(stem: &str, avoid: &[String]) -> String {
    if !avoid.iter().any(|v| v == stem) {
        return stem.to_string();
    }
    (0..).map(|i| format!("{stem}{i}")).find(|c| !avoid.contains(c)).expect("unbounded search")
}

fn single_var(m: &FpModule) -> Result<&str> {
    match m.vars() {
        [v] => Ok(v),
        other => Err(Error::WrongVariableCount { expected: 1, found: other.to_vec() }),
    }
}

/// Extension of scalars: substitute every variable of the presentation.
pub fn base_change(m: &FpModule, phi: &RingMap) -> Result<FpModule> {
    if m.vars() != phi.source() {
        return Err(Error::VariableMismatch { left: m.vars().to_vec(), right: phi.source().to_vec() });
    }
    Ok(FpModule::from_presentation(m.presentation().substitute(phi.images(), phi.target())?))
}

/// Coefficient extension of a module over ℚ[vars] to a superset of variables.
pub fn extend_coefficients(m: &FpModule, vars: &[String]) -> Result<FpModule> {
    Ok(FpModule::from_presentation(m.presentation().embed(vars)?))
}

/// The structure morphism `i_!`: ℚ-modules to ℚ[var]-modules.
pub fn structure_i(v: &FpModule, var: &str) -> Result<FpModule> {
    if !v.vars().is_empty() {
        return Err(Error::WrongVariableCount { expected: 0, found: v.vars().to_vec() });
    }
    extend_coefficients(v, &[var.to_string()])
}

/// `[A⊗I | I⊗B]`, the presentation of the tensor product over the common ring.
fn box_presentation(a: &PolyMatrix, b: &PolyMatrix) -> Result<PolyMatrix> {
    let vars = a.vars();
    let left = a.kron(&PolyMatrix::identity(vars, b.rows()))?;
    let right = PolyMatrix::identity(vars, a.rows()).kron(b)?;
    left.hstack(&right)
}

/// Tensor product over the shared ring ℚ[vars].
pub fn tensor_same_ring(m: &FpModule, n: &FpModule) -> Result<FpModule> {
    Ok(FpModule::from_presentation(box_presentation(m.presentation(), n.presentation())?))
}

pub fn two_vars() -> Vec<String> {
    vec!["t1".to_string(), "t2".to_string()]
}

/// `M ⊠ N` over ℚ[t1, t2]: `t1` acts through `M`, `t2` through `N`.
pub fn external_product(m: &FpModule, n: &FpModule) -> Result<FpModule> {
    single_var(m)?;
    single_var(n)?;
    let vars = two_vars();
    let a = m.presentation().relabel(&vars[..1])?.embed(&vars)?;
    let b = n.presentation().relabel(&vars[1..])?.embed(&vars)?;
    Ok(FpModule::from_presentation(box_presentation(&a, &b)?))
}

/// `+_!`: extension of scalars along `t1, t2 ↦ var`.
pub fn plus_shriek(p: &FpModule, var: &str) -> Result<FpModule> {
    if p.vars().len() != 2 {
        return Err(Error::WrongVariableCount { expected: 2, found: p.vars().to_vec() });
    }
    let target = vec![var.to_string()];
    let t = Poly::var(&target, var)?;
    let phi = RingMap::new(p.vars(), &target, vec![t.clone(), t])?;
    base_change(p, &phi)
}

/// `+^*`: restriction along ℚ[t1, t2] → ℚ[t], presented by
/// `[A(t1) | (t1 − t2)·I]`.
pub fn restrict_plus(m: &FpModule) -> Result<FpModule> {
    single_var(m)?;
    let vars = two_vars();
    let a = m.presentation().relabel(&vars[..1])?.embed(&vars)?;
    let diff = Poly::var(&vars, "t1")?.try_sub(&Poly::var(&vars, "t2")?)?;
    let d = PolyMatrix::scalar(&vars, m.generators(), &diff);
    Ok(FpModule::from_presentation(a.hstack(&d)?))
}

/// The tensor product of the affine line, `+_!(M ⊠ N)`.
pub fn tensor_a1(m: &FpModule, n: &FpModule) -> Result<FpModule> {
    let var = single_var(m)?;
    if m.vars() != n.vars() {
        return Err(Error::VariableMismatch { left: m.vars().to_vec(), right: n.vars().to_vec() });
    }
    plus_shriek(&external_product(m, n)?, var)
}

/// The monoidal unit `i_!𝟙` over ℚ[var].
pub fn unit_a1(var: &str) -> FpModule {
    FpModule::free(&[var.to_string()], 1)
}

/// Evaluation at `α`: base change along `t ↦ α`.
pub fn ev_alpha(m: &FpModule, w: &TypeWitness) -> Result<FpModule> {
    let var = single_var(m)?;
    base_change(m, &w.ring_map(var))
}

/// Evaluation at `α` computed as `i^* +_!(M ⊠ (𝟙, α))`: the external product
/// with the witness over ℚ[target], the diagonal, and then the forgetful
/// step, which eliminates the action variable using the relations
/// `(t − α)·e_j` present on every generator.
pub fn ev_alpha_via_witness(m: &FpModule, w: &TypeWitness) -> Result<FpModule> {
    single_var(m)?;
    let base = w.target().to_vec();
    let t1 = fresh_var("t1", &base);
    let t2 = fresh_var("t2", &[base.clone(), vec![t1.clone()]].concat());
    let ring = [base.clone(), vec![t1.clone(), t2.clone()]].concat();
    let a = m.presentation().relabel(std::slice::from_ref(&t1))?.embed(&ring)?;
    let wm = w.module(&t2)?;
    let b = wm.presentation().embed(&ring)?;
    let product = FpModule::from_presentation(box_presentation(&a, &b)?);

    let t = fresh_var("t", &base);
    let diag_ring = extend_vars(&base, &t)?;
    let tv = Poly::var(&diag_ring, &t)?;
    let mut images: Vec<Poly> = base.iter().map(|v| Poly::var(&diag_ring, v)).collect::<Result<_>>()?;
    images.push(tv.clone());
    images.push(tv);
    let diagonal = base_change(&product, &RingMap::new(&ring, &diag_ring, images)?)?;
    eliminate_variable(&diagonal, w)
}

/// Underlying ℚ[base]-module of a ℚ[base, t]-module whose presentation
/// contains the relation `(t − α)·e_j` for every generator `e_j`: the
/// remaining relations with `t` replaced by `α`.
pub fn eliminate_variable(m: &FpModule, w: &TypeWitness) -> Result<FpModule> {
    let base = w.target();
    let vars = m.vars();
    if vars.len() != base.len() + 1 || &vars[..base.len()] != base {
        return Err(Error::VariableMismatch { left: vars.to_vec(), right: base.to_vec() });
    }
    let t = Poly::var(vars, &vars[base.len()])?;
    let shift = t.try_sub(&w.alpha().embed(vars)?)?;
    let g = m.generators();
    let pres = m.presentation();
    let mut found = vec![false; g];
    let mut keep = Vec::new();
    for j in 0..pres.cols() {
        let col = pres.column(j);
        let nonzero: Vec<usize> = (0..g).filter(|&i| !col[i].is_zero()).collect();
        if let [i] = nonzero[..] {
            if col[i] == shift && !found[i] {
                found[i] = true;
                continue;
            }
        }
        keep.push(j);
    }
    if found.iter().any(|f| !f) {
        return Err(Error::Unsupported("action variable is not determined on every generator".into()));
    }
    let mut images: Vec<Poly> = base.iter().map(|v| Poly::var(base, v)).collect::<Result<_>>()?;
    images.push(w.alpha().clone());
    Ok(FpModule::from_presentation(pres.select_columns(&keep).substitute(&images, base)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcat::fpmodule::iso_test;
    use crate::polyalg::{q, var_list};

    fn t() -> Vec<String> {
        var_list(&["t"])
    }

    fn cyc(s: &str) -> FpModule {
        FpModule::cyclic(Poly::parse(s, &t()).unwrap())
    }

    fn strings(m: &FpModule) -> Vec<Vec<String>> {
        m.presentation().to_strings()
    }

    #[test]
    fn base_change_examples() {
        let s = var_list(&["s"]);
        let phi = RingMap::parse(&t(), &s, &["s^2"]).unwrap();
        let out = base_change(&cyc("t-4"), &phi).unwrap();
        assert_eq!(strings(&out), vec![vec!["s^2-4"]]);
        let m = cyc("t^2+1");
        assert_eq!(base_change(&m, &RingMap::identity(&t())).unwrap(), m);
        let zero_map = RingMap::parse(&t(), &[], &["0"]).unwrap();
        let f = base_change(&FpModule::free(&t(), 1), &zero_map).unwrap();
        assert_eq!(f.rational_dim().unwrap(), Some(1));
        assert!(base_change(&m, &RingMap::identity(&s)).is_err());
    }

    #[test]
    fn structure_i_examples() {
        let unit = structure_i(&FpModule::free(&[], 1), "t").unwrap();
        assert!(iso_test(&unit, &unit_a1("t")).unwrap());
        let three = structure_i(&FpModule::free(&[], 3), "t").unwrap();
        assert_eq!(three.canonical_form().unwrap().free_rank, 3);
        assert!(structure_i(&FpModule::zero(&[]), "t").unwrap().canonical_form().unwrap().is_zero());
    }

    #[test]
    fn external_product_examples() {
        let p = external_product(&cyc("t-2"), &cyc("t-3")).unwrap();
        assert_eq!(strings(&p), vec![vec!["t1-2", "t2-3"]]);
        let f = external_product(&unit_a1("t"), &unit_a1("t")).unwrap();
        assert_eq!((f.generators(), f.relations()), (1, 0));
        let z = external_product(&cyc("t"), &FpModule::zero(&t())).unwrap();
        assert_eq!(z.generators(), 0);
    }

    #[test]
    fn plus_shriek_examples() {
        let v = two_vars();
        let m = FpModule::quotient(&v, &[Poly::parse("t1-2", &v).unwrap(), Poly::parse("t2-2", &v).unwrap()]).unwrap();
        assert!(iso_test(&plus_shriek(&m, "t").unwrap(), &cyc("t-2")).unwrap());
        let m = FpModule::quotient(&v, &[Poly::parse("t1-2", &v).unwrap(), Poly::parse("t2+1", &v).unwrap()]).unwrap();
        assert!(plus_shriek(&m, "t").unwrap().canonical_form().unwrap().is_zero());
        assert_eq!(plus_shriek(&FpModule::free(&v, 1), "t").unwrap().canonical_form().unwrap().free_rank, 1);
        assert!(plus_shriek(&cyc("t"), "t").is_err());
    }

    #[test]
    fn tensor_a1_examples() {
        let m = cyc("t^2");
        assert!(iso_test(&tensor_a1(&unit_a1("t"), &m).unwrap(), &m).unwrap());
        assert!(iso_test(&tensor_a1(&m, &m).unwrap(), &m).unwrap());
        assert!(tensor_a1(&cyc("t-1"), &cyc("t+1")).unwrap().canonical_form().unwrap().is_zero());
    }

    #[test]
    fn ev_alpha_examples() {
        let zero = TypeWitness::scalar(q(0));
        let one = TypeWitness::scalar(q(1));
        let unit = ev_alpha(&unit_a1("t"), &zero).unwrap();
        assert!(iso_test(&unit, &FpModule::free(&[], 1)).unwrap());
        assert_eq!(ev_alpha(&cyc("t^2"), &zero).unwrap().rational_dim().unwrap(), Some(1));
        assert_eq!(ev_alpha(&cyc("t^2"), &one).unwrap().rational_dim().unwrap(), Some(0));
    }

    #[test]
    fn witness_route_matches_substitution() {
        let s = var_list(&["s"]);
        let witnesses = [
            TypeWitness::scalar(q(0)),
            TypeWitness::scalar(q(2)),
            TypeWitness::new(Poly::parse("s^2", &s).unwrap()),
        ];
        let modules = [cyc("t^2"), cyc("t-4"), unit_a1("t"), cyc("t").direct_sum(&cyc("t^2-4")).unwrap()];
        for w in &witnesses {
            for m in &modules {
                let a = ev_alpha(m, w).unwrap();
                let b = ev_alpha_via_witness(m, w).unwrap();
                assert!(iso_test(&a, &b).unwrap(), "{m} at {}", w.alpha());
            }
        }
    }

    #[test]
    fn restrict_plus_examples() {
        let r = restrict_plus(&unit_a1("t")).unwrap();
        assert_eq!(strings(&r), vec![vec!["t1-t2"]]);
        let r = restrict_plus(&cyc("t-3")).unwrap();
        assert_eq!(strings(&r), vec![vec!["t1-3", "t1-t2"]]);
        let m = cyc("t^3-t");
        assert!(iso_test(&plus_shriek(&r, "t").unwrap(), &cyc("t-3")).unwrap());
        assert!(iso_test(&plus_shriek(&restrict_plus(&m).unwrap(), "t").unwrap(), &m).unwrap());
    }

    #[test]
    fn ring_map_composition() {
        let s = var_list(&["s"]);
        let r = var_list(&["r"]);
        let f = RingMap::parse(&t(), &s, &["s^2+1"]).unwrap();
        let g = RingMap::parse(&s, &r, &["r-1"]).unwrap();
        assert_eq!(f.then(&g).unwrap().images()[0].to_string(), "r^2-2*r+2");
        assert!(g.then(&f).is_err());
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        assert_eq!(fresh_var("t", &var_list(&["s"])), "t");
        assert_eq!(fresh_var("t", &var_list(&["t", "t0"])), "t1");
    }
}
