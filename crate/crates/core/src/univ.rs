//! Cocontinuous monoidal morphisms out of the affine line in the module
//! model: extension of scalars along a ring map out of ℚ[t]. Extracts the
//! type and base of such a morphism and checks that they determine it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modcat::{
    base_change, eliminate_variable, extend_coefficients, fresh_var, iso_test, restrict_plus, tensor_coeq, tensor_same_ring, unit_a1, EndoPair,
    FpModule, RingMap, TypeWitness,
};
use crate::polyalg::{Poly, PolyMatrix, QMatrix, UPoly};

/// The morphism `M ↦ base_change(M, φ)` for `φ: ℚ[t] → ℚ[s]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonFunctorSpec {
    phi: RingMap,
}

impl MonFunctorSpec {
    /// Source of one variable, target of at most one.
    pub fn new(phi: RingMap) -> Result<Self> {
        if phi.source().len() != 1 {
            return Err(Error::WrongVariableCount { expected: 1, found: phi.source().to_vec() });
        }
        if phi.target().len() > 1 {
            return Err(Error::TooManyVariables(phi.target().to_vec()));
        }
        Ok(MonFunctorSpec { phi })
    }

    /// `t ↦ p` for `p` over `target`.
    pub fn parse(source: &str, target: &[String], image: &str) -> Result<Self> {
        Self::new(RingMap::parse(&[source.to_string()], target, &[image])?)
    }

    /// The morphism whose type is `w`, out of ℚ[var].
    pub fn from_type(w: &TypeWitness, var: &str) -> Result<Self> {
        Self::new(w.ring_map(var))
    }

    pub fn phi(&self) -> &RingMap {
        &self.phi
    }

    pub fn source_var(&self) -> &str {
        &self.phi.source()[0]
    }

    pub fn target(&self) -> &[String] {
        self.phi.target()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &MonFunctorSpec) -> Result<MonFunctorSpec> {
        Self::new(self.phi.then(&next.phi)?)
    }

    pub fn apply(&self, m: &FpModule) -> Result<FpModule> {
        base_change(m, &self.phi)
    }
}

/// `n` images `p₁..pₙ` over a common target, for morphisms out of `Aⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnSpec {
    target: Vec<String>,
    images: Vec<Poly>,
}

impl AnSpec {
    pub fn new(target: &[String], images: Vec<Poly>) -> Result<Self> {
        if target.len() > 1 {
            return Err(Error::TooManyVariables(target.to_vec()));
        }
        if images.iter().any(|p| p.vars() != target) {
            return Err(Error::VariableMismatch { left: target.to_vec(), right: images.iter().flat_map(|p| p.vars().to_vec()).collect() });
        }
        Ok(AnSpec { target: target.to_vec(), images })
    }

    pub fn parse(target: &[String], images: &[&str]) -> Result<Self> {
        Self::new(target, images.iter().map(|s| Poly::parse(s, target)).collect::<Result<_>>()?)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn target(&self) -> &[String] {
        &self.target
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }
}

/// Substitution `ring → target` fixing the target variables and sending
/// each remaining variable of `ring` to the given image.
fn substitution(ring: &[String], target: &[String], extra: &[(String, Poly)]) -> Result<RingMap> {
    let images = ring
        .iter()
        .map(|v| match extra.iter().find(|(x, _)| x == v) {
            Some((_, p)) => p.embed(target),
            None => Poly::var(target, v),
        })
        .collect::<Result<Vec<_>>>()?;
    RingMap::new(ring, target, images)
}

/// `ev_α` relative to the base: a module over `base ++ [var]` goes to one
/// over `base` with `var ↦ α`.
fn ev_relative(m: &FpModule, var: &str, w: &TypeWitness) -> Result<FpModule> {
    base_change(m, &substitution(m.vars(), w.target(), &[(var.to_string(), w.alpha().clone())])?)
}

/// `F₀^ℕ(M)`: coefficient extension of `M` (over one variable, renamed to
/// `var`) to `base ++ [var]`.
fn base_extension(m: &FpModule, base: &[String], var: &str) -> Result<FpModule> {
    let ring = [base.to_vec(), vec![var.to_string()]].concat();
    let relabelled = FpModule::from_presentation(m.presentation().relabel(&[var.to_string()])?);
    extend_coefficients(&relabelled, &ring)
}

/// The type of `F`: apply `F` in the first variable to `+^* i_!𝟙`, read the
/// action of the second variable off the presentation, and check that
/// forgetting that action leaves `𝟙`.
pub fn extract_type(spec: &MonFunctorSpec) -> Result<TypeWitness> {
    let target = spec.target().to_vec();
    let x = restrict_plus(&unit_a1(spec.source_var()))?;
    let n = fresh_var("n", &target);
    let ring = [target.clone(), vec![n.clone()]].concat();
    let p = spec.phi.images()[0].embed(&ring)?;
    let fx = base_change(&x, &RingMap::new(x.vars(), &ring, vec![p, Poly::var(&ring, &n)?])?)?;
    let pres = fx.presentation();
    if fx.generators() != 1 || pres.cols() != 1 {
        return Err(Error::Unsupported("unexpected presentation of the type".into()));
    }
    let e = pres.get(0, 0);
    let at = |c: i64| -> Result<Poly> {
        let phi = substitution(&ring, &target, &[(n.clone(), Poly::constant(&target, crate::polyalg::q(c)))])?;
        phi.apply(e)
    };
    let (e0, e1) = (at(0)?, at(1)?);
    let c = e1.try_sub(&e0)?.as_constant().filter(|c| *c != crate::polyalg::q(0));
    let c = match (c, e.degree_in(ring.len() - 1)) {
        (Some(c), Some(1)) => c,
        _ => return Err(Error::Unsupported("the action is not given by a single linear relation".into())),
    };
    let inv = crate::polyalg::q(1) / c;
    let w = TypeWitness::new(e0.scale(&-inv.clone()));
    // i^*: forget the action, which is determined by the normalized relation
    let normalized = FpModule::from_presentation(PolyMatrix::from_rows(&ring, vec![vec![e.scale(&inv)]])?);
    if !iso_test(&eliminate_variable(&normalized, &w)?, &w.underlying())? {
        return Err(Error::Unsupported("underlying object of the type is not the unit".into()));
    }
    Ok(w)
}

/// The base `F ∘ i_!` as a ring map ℚ → ℚ[s]: the coefficient inclusion.
pub fn extract_base(spec: &MonFunctorSpec) -> RingMap {
    RingMap::inclusion(spec.target())
}

/// `F(i_! ℚ^r)` agrees with the base applied to `ℚ^r`: free of rank `r`.
pub fn base_check(spec: &MonFunctorSpec, rank: usize) -> Result<bool> {
    let v = FpModule::free(&[], rank);
    let lifted = spec.apply(&crate::modcat::structure_i(&v, spec.source_var())?)?;
    let based = base_change(&v, &extract_base(spec))?;
    iso_test(&lifted, &based)
}

/// `F₀(V ⊗ W) ≅ F₀(V) ⊗ F₀(W)` for ℚ-modules `V`, `W`.
pub fn base_monoidal_check(spec: &MonFunctorSpec, v: &FpModule, w: &FpModule) -> Result<bool> {
    let base = extract_base(spec);
    let left = base_change(&tensor_same_ring(v, w)?, &base)?;
    let right = tensor_same_ring(&base_change(v, &base)?, &base_change(w, &base)?)?;
    iso_test(&left, &right)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecomposeReport {
    /// `F(M)`.
    pub direct: FpModule,
    /// `ev_α(F₀^ℕ(M))`.
    pub via_type: FpModule,
    pub iso: bool,
}

pub fn decompose_check(spec: &MonFunctorSpec, m: &FpModule) -> Result<DecomposeReport> {
    if m.vars() != [spec.source_var().to_string()] {
        return Err(Error::VariableMismatch { left: m.vars().to_vec(), right: vec![spec.source_var().to_string()] });
    }
    let direct = spec.apply(m)?;
    let w = extract_type(spec)?;
    let n = fresh_var("n", spec.target());
    let via_type = ev_relative(&base_extension(m, spec.target(), &n)?, &n, &w)?;
    let iso = iso_test(&direct, &via_type)?;
    Ok(DecomposeReport { direct, via_type, iso })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    /// `(β, agreement)` per probe `t1, t2 ↦ β`.
    pub diagonal: Vec<(String, bool)>,
    /// `(β, agreement)` per probe `t1 ↦ β`, compared over ℚ[t2].
    pub partial: Vec<(String, bool)>,
    pub agree: bool,
}

/// `+^*X` against the tensor, over the copy of the affine line in the
/// second variable, of `(1 × i)_! X` with `+^* i_!𝟙`; both are probed at
/// scalar points since there is no canonical form over two variables.
/// Agreement is evidence, not proof.
pub fn plus_star_factorization_check(m: &FpModule, probes: &[crate::polyalg::Rational]) -> Result<ProbeReport> {
    let left = restrict_plus(m)?;
    let vars = left.vars().to_vec();
    // (1 × i)_! X: free in the second variable
    let x = FpModule::from_presentation(m.presentation().relabel(&vars[..1])?.embed(&vars)?);
    let y = restrict_plus(&unit_a1(&m.vars()[0]))?;
    let right = relative_tensor(&x, &y)?;
    let mut diagonal = Vec::new();
    let mut partial = Vec::new();
    for b in probes {
        let c = Poly::constant(&[], b.clone());
        let point = substitution(&vars, &[], &[(vars[0].clone(), c.clone()), (vars[1].clone(), c.clone())])?;
        diagonal.push((b.to_string(), iso_test(&base_change(&left, &point)?, &base_change(&right, &point)?)?));
        let line = substitution(&vars, &vars[1..], &[(vars[0].clone(), c)])?;
        partial.push((b.to_string(), iso_test(&base_change(&left, &line)?, &base_change(&right, &line)?)?));
    }
    let agree = diagonal.iter().chain(&partial).all(|(_, ok)| *ok);
    Ok(ProbeReport { diagonal, partial, agree })
}

/// Day convolution in the last variable over ℚ[t1, t2], relative to `t1`:
/// the external product over ℚ[t1, a, b] followed by `a, b ↦ t2`.
fn relative_tensor(x: &FpModule, y: &FpModule) -> Result<FpModule> {
    let vars = x.vars().to_vec();
    let (a, b) = (fresh_var("a", &vars), fresh_var("b", &vars));
    let ring = vec![vars[0].clone(), a.clone(), b.clone()];
    let px = x.presentation().relabel(&[vars[0].clone(), a.clone()])?.embed(&ring)?;
    let py = y.presentation().relabel(&[vars[0].clone(), b.clone()])?.embed(&ring)?;
    let boxed = tensor_same_ring(&FpModule::from_presentation(px), &FpModule::from_presentation(py))?;
    let t2 = Poly::var(&vars, &vars[1])?;
    base_change(&boxed, &RingMap::new(&ring, &vars, vec![Poly::var(&vars, &vars[0])?, t2.clone(), t2])?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnReport {
    pub stepwise: FpModule,
    pub single_shot: FpModule,
    pub iso: bool,
}

/// Applies the types one variable at a time, first variable first, and
/// compares with substituting all of them at once.
pub fn an_decompose_check(spec: &AnSpec, m: &FpModule) -> Result<AnReport> {
    if m.vars().len() != spec.n() {
        return Err(Error::WrongVariableCount { expected: spec.n(), found: m.vars().to_vec() });
    }
    let target = spec.target.clone();
    let single_shot = base_change(m, &RingMap::new(m.vars(), &target, spec.images.clone())?)?;
    let mut fresh: Vec<String> = Vec::new();
    for k in 0..spec.n() {
        let avoid = [target.clone(), fresh.clone()].concat();
        fresh.push(fresh_var(&format!("u{}", k + 1), &avoid));
    }
    let ring = [target.clone(), fresh.clone()].concat();
    let mut current = FpModule::from_presentation(m.presentation().relabel(&fresh)?.embed(&ring)?);
    for k in 0..spec.n() {
        let next = [target.clone(), fresh[k + 1..].to_vec()].concat();
        let phi = substitution(current.vars(), &next, &[(fresh[k].clone(), spec.images[k].clone())])?;
        current = base_change(&current, &phi)?;
    }
    let iso = iso_test(&current, &single_shot)?;
    Ok(AnReport { stepwise: current, single_shot, iso })
}

fn upoly_at(p: &UPoly, m: &QMatrix) -> QMatrix {
    let mut acc = QMatrix::zeros(m.rows(), m.cols());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(m).add(&QMatrix::scalar(m.rows(), c));
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionReport {
    /// `φ^*(n ⊗ φ_! m)` over ℚ[t].
    pub left: FpModule,
    /// `φ^* n ⊗ m` over ℚ[t].
    pub right: FpModule,
    pub holds: bool,
    /// `φ_!(m ⊗ φ^* n)` over ℚ[s].
    pub literal_left: FpModule,
    /// `φ_! m ⊗ n` over ℚ[s].
    pub literal_right: FpModule,
    pub literal_holds: bool,
}

/// The projection morphism of the adjunction `φ_! ⊣ φ^*`, with `φ_!`
/// extension and `φ^*` restriction of scalars, on torsion `m` over ℚ[t] and
/// `n` over ℚ[s]. The form with `φ_!` on the outside is reported as well; it
/// only holds when `φ` is an isomorphism or the modules are degenerate.
pub fn projection_iso_check(spec: &MonFunctorSpec, m: &EndoPair, n: &EndoPair) -> Result<ProjectionReport> {
    let [s] = spec.target() else {
        return Err(Error::WrongVariableCount { expected: 1, found: spec.target().to_vec() });
    };
    let t = spec.source_var();
    let p = spec.phi.images()[0].to_upoly()?;
    let restrict = |e: &EndoPair| EndoPair::new(upoly_at(&p, e.endo()));

    let extended = spec.apply(&m.to_module(t))?;
    let inner = tensor_same_ring(&n.to_module(s), &extended)?;
    let left = restrict(&EndoPair::from_torsion_module(&inner)?)?.to_module(t);
    let right = tensor_coeq(&restrict(n)?, m).to_module(t);
    let holds = iso_test(&left, &right)?;

    let literal_left = spec.apply(&tensor_coeq(m, &restrict(n)?).to_module(t))?;
    let literal_right = tensor_same_ring(&extended, &n.to_module(s))?;
    let literal_holds = iso_test(&literal_left, &literal_right)?;
    Ok(ProjectionReport { left, right, holds, literal_left, literal_right, literal_holds })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeTransform {
    pub source: FpModule,
    pub target: FpModule,
    /// `Id_M ⊗ q` on generators.
    pub map: PolyMatrix,
}

/// The transformation `ev_α → ev_β` induced by `q: (𝟙, α) → (𝟙, β)`, i.e.
/// `q·α = β·q`, checked to respect the relations.
pub fn type_morphism_transform(alpha: &TypeWitness, beta: &TypeWitness, q: &Poly, m: &FpModule) -> Result<TypeTransform> {
    let vars = alpha.target();
    if beta.target() != vars || q.vars() != vars {
        return Err(Error::VariableMismatch { left: vars.to_vec(), right: beta.target().to_vec() });
    }
    if !q.try_mul(&alpha.alpha().try_sub(beta.alpha())?)?.is_zero() {
        return Err(Error::NotIntertwiner(format!("{q} does not intertwine {} and {}", alpha.alpha(), beta.alpha())));
    }
    let source = crate::modcat::ev_alpha(m, alpha)?;
    let target = crate::modcat::ev_alpha(m, beta)?;
    let map = PolyMatrix::scalar(vars, m.generators(), q);
    let image = map.try_mul(source.presentation())?;
    for j in 0..image.cols() {
        if !target.relation_span_contains(&image.column(j))? {
            return Err(Error::NotIntertwiner("induced map does not respect the relations".into()));
        }
    }
    Ok(TypeTransform { source, target, map })
}

/// JSON form of an [`AnSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnSpecJson {
    pub target: Vec<String>,
    pub images: Vec<String>,
}

impl From<&AnSpec> for AnSpecJson {
    fn from(s: &AnSpec) -> Self {
        AnSpecJson { target: s.target.clone(), images: s.images.iter().map(Poly::to_string).collect() }
    }
}

impl TryFrom<&AnSpecJson> for AnSpec {
    type Error = Error;

    fn try_from(j: &AnSpecJson) -> Result<Self> {
        let images: Vec<&str> = j.images.iter().map(String::as_str).collect();
        AnSpec::parse(&j.target, &images)
    }
}
