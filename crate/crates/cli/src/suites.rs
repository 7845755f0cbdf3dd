//! The property suites behind `suite run`.

use std::sync::Arc;
use std::time::{Duration, Instant};

use affine_line::derived::{cone, ev_zero_derived, ComplexMap};
use affine_line::fincat::json::{FinCatJson, FunctorJson, VectDiagramJson};
use affine_line::fincat::{
    contractibility_certificate, der1_check, der4_comparison, exact_square_check, nn_truncations, Budget, FinCat,
    FunctorData, KanDirection, SquareData, SquareVerdict,
};
use affine_line::modcat::json::{EndoPairJson, FpModuleJson};
use affine_line::modcat::{
    ev_alpha, ev_alpha_via_witness, ev_one_via_colimit, extend_coefficients, hom_basis, hom_fp, iso_test,
    structure_i, tensor_a1, tensor_coeq, tensor_same_ring, unit_a1, EndoPair, FpModule, RingMap, TypeWitness,
};
use affine_line::polyalg::{q, Poly};
use affine_line::univ::{
    an_decompose_check, decompose_check, extract_type, plus_star_factorization_check, projection_iso_check, AnSpec,
    MonFunctorSpec,
};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::corpus::{self, stream};
use crate::report::{CheckBuilder, CheckResult, Report, SuiteReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    MonoidalUnit,
    OracleEquivalence,
    Ev,
    Derived,
    ClosedStructure,
    UniversalProperty,
    CategoryEngine,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::MonoidalUnit,
        Suite::OracleEquivalence,
        Suite::Ev,
        Suite::Derived,
        Suite::ClosedStructure,
        Suite::UniversalProperty,
        Suite::CategoryEngine,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::MonoidalUnit => "monoidal-unit",
            Suite::OracleEquivalence => "oracle-equivalence",
            Suite::Ev => "ev",
            Suite::Derived => "derived",
            Suite::ClosedStructure => "closed-structure",
            Suite::UniversalProperty => "universal-property",
            Suite::CategoryEngine => "category-engine",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Largest dimension of a random torsion module or ℚ-module.
    pub max_dim: usize,
    /// Largest degree of a random relation.
    pub max_deg: u32,
    /// Largest number of objects of a random finite category.
    pub max_objects: usize,
    /// Truncation bound for the categories built from ℕ.
    pub trunc_k: usize,
    pub suites: Vec<Suite>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 1, max_dim: 5, max_deg: 5, max_objects: 4, trunc_k: 8, suites: Suite::ALL.to_vec() }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("{0} must be positive")]
    NotPositive(&'static str),
    #[error("trunc-k must be at least 2, got {0}")]
    TruncTooSmall(usize),
    #[error("no suites selected")]
    NoSuites,
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.max_dim == 0 {
            return Err(ConfigError::NotPositive("max-dim"));
        }
        if self.max_deg == 0 {
            return Err(ConfigError::NotPositive("max-deg"));
        }
        if self.max_objects == 0 {
            return Err(ConfigError::NotPositive("max-objects"));
        }
        if self.trunc_k < 2 {
            return Err(ConfigError::TruncTooSmall(self.trunc_k));
        }
        if self.suites.is_empty() {
            return Err(ConfigError::NoSuites);
        }
        Ok(())
    }

    fn selected(&self) -> Vec<Suite> {
        let mut s = self.suites.clone();
        s.sort();
        s.dedup();
        s
    }
}

/// A finished run: the report and, parallel to its suites, the wall time
/// of each.
pub struct RunOutput {
    pub report: Report,
    pub timings: Vec<Duration>,
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<RunOutput, ConfigError> {
    cfg.validate()?;
    let selected = cfg.selected();
    let results: Vec<(SuiteReport, Duration)> = selected
        .par_iter()
        .map(|&s| {
            let start = Instant::now();
            let r = match s {
                Suite::MonoidalUnit => monoidal_unit(cfg),
                Suite::OracleEquivalence => oracle_equivalence(cfg),
                Suite::Ev => ev(cfg),
                Suite::Derived => derived(cfg),
                Suite::ClosedStructure => closed_structure(cfg),
                Suite::UniversalProperty => universal_property(cfg),
                Suite::CategoryEngine => category_engine(cfg),
            };
            (r, start.elapsed())
        })
        .collect();
    let (suites, timings): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    let passed = suites.iter().all(|s| s.passed);
    let mut config = cfg.clone();
    config.suites = selected;
    let report = Report {
        seed: cfg.seed,
        config: serde_json::to_value(&config).expect("config serializes"),
        suites,
        passed,
    };
    Ok(RunOutput { report, timings })
}

type Outcome = affine_line::Result<(bool, Value)>;

/// Evaluates `f` on every input in parallel and records the outcomes in
/// input order.
fn check<I: Sync>(name: &str, inputs: &[I], echo: impl Fn(&I) -> Value, f: impl Fn(&I) -> Outcome + Sync) -> CheckResult {
    let outcomes: Vec<Outcome> = inputs.par_iter().map(&f).collect();
    let mut b = CheckBuilder::new(name);
    for (input, outcome) in inputs.iter().zip(outcomes) {
        match outcome {
            Ok((ok, out)) => b.record(echo(input), out, ok),
            Err(e) => b.record(echo(input), json!({ "error": e.to_string() }), false),
        }
    }
    b.finish()
}

fn canon(m: &FpModule) -> Value {
    match m.render_canonical() {
        Ok(s) => Value::String(s),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

fn module_json(m: &FpModule) -> Value {
    serde_json::to_value(FpModuleJson::from(m)).expect("serializes")
}

fn endo_json(m: &EndoPair) -> Value {
    serde_json::to_value(EndoPairJson::from(m)).expect("serializes")
}

fn s_ring() -> Vec<String> {
    vec!["s".to_string()]
}

/// The four evaluation points: the scalars 0, 1, 2 and `s²` over ℚ[s].
fn witnesses() -> Vec<TypeWitness> {
    let s2 = Poly::parse("s^2", &s_ring()).expect("parses");
    vec![TypeWitness::scalar(q(0)), TypeWitness::scalar(q(1)), TypeWitness::scalar(q(2)), TypeWitness::new(s2)]
}

fn monoidal_unit(cfg: &SuiteConfig) -> SuiteReport {
    let mut rng = stream(cfg.seed, "monoidal-unit");
    let mods: Vec<FpModule> = (0..100).map(|_| corpus::fp_module(&mut rng, "t", cfg.max_deg)).collect();
    let unit = unit_a1("t");
    let left = check("unit on the left", &mods, module_json, |m| {
        let p = tensor_a1(&unit, m)?;
        Ok((iso_test(&p, m)?, json!({ "product": canon(&p), "module": canon(m) })))
    });
    let right = check("unit on the right", &mods, module_json, |m| {
        let p = tensor_a1(m, &unit)?;
        Ok((iso_test(&p, m)?, json!({ "product": canon(&p), "module": canon(m) })))
    });
    SuiteReport::new(Suite::MonoidalUnit.name(), vec![left, right], Vec::new())
}

fn endo_pairs(rng: &mut impl Rng, n: usize, max_dim: usize) -> Vec<(EndoPair, EndoPair)> {
    (0..n).map(|_| (corpus::endo_pair(rng, max_dim), corpus::endo_pair(rng, max_dim))).collect()
}

fn pair_json((m, n): &(EndoPair, EndoPair)) -> Value {
    json!([endo_json(m), endo_json(n)])
}

fn oracle_equivalence(cfg: &SuiteConfig) -> SuiteReport {
    let mut rng = stream(cfg.seed, "oracle-equivalence");
    let pairs = endo_pairs(&mut rng, 100, cfg.max_dim);
    let c = check("coequalizer and presentation routes agree", &pairs, pair_json, |(m, n)| {
        let coeq = tensor_coeq(m, n).to_module("t");
        let pres = tensor_a1(&m.to_module("t"), &n.to_module("t"))?;
        let ok = coeq.canonical_form()? == pres.canonical_form()?;
        Ok((ok, json!({ "coequalizer": canon(&coeq), "presentation": canon(&pres) })))
    });
    SuiteReport::new(Suite::OracleEquivalence.name(), vec![c], Vec::new())
}

fn ev(cfg: &SuiteConfig) -> SuiteReport {
    let mut rng = stream(cfg.seed, "ev");
    let ws = witnesses();
    let spaces: Vec<FpModule> = (0..100).map(|_| corpus::rational_module(&mut rng, cfg.max_dim)).collect();
    let mut checks = Vec::new();
    for w in &ws {
        let name = format!("ev at {} after inclusion is the identity", w.alpha());
        checks.push(check(&name, &spaces, module_json, |v| {
            let e = ev_alpha(&structure_i(v, "t")?, w)?;
            let expected = extend_coefficients(v, w.target())?;
            Ok((iso_test(&e, &expected)?, json!({ "ev": canon(&e), "expected": canon(&expected) })))
        }));
    }

    let pairs: Vec<EndoPair> = (0..100).map(|_| corpus::endo_pair(&mut rng, cfg.max_dim)).collect();
    let one = TypeWitness::scalar(q(1));
    checks.push(check("ev at 1: colimit, substitution and witness routes agree", &pairs, endo_json, |m| {
        let colim = ev_one_via_colimit(m);
        let module = m.to_module("t");
        let subst = ev_alpha(&module, &one)?;
        let witness = ev_alpha_via_witness(&module, &one)?;
        let ok = iso_test(&colim, &subst)? && iso_test(&colim, &witness)?;
        Ok((ok, json!({ "colimit": canon(&colim), "substitution": canon(&subst), "witness": canon(&witness) })))
    }));

    let pairs = endo_pairs(&mut rng, 100, cfg.max_dim);
    let indexed: Vec<(usize, &(EndoPair, EndoPair))> = pairs.iter().enumerate().collect();
    checks.push(check(
        "ev is strong monoidal",
        &indexed,
        |(i, p)| json!({ "alpha": ws[i % ws.len()].alpha().to_string(), "pair": pair_json(p) }),
        |(i, (m, n))| {
            let w = &ws[i % ws.len()];
            let (mm, nm) = (m.to_module("t"), n.to_module("t"));
            let left = ev_alpha(&tensor_a1(&mm, &nm)?, w)?;
            let right = tensor_same_ring(&ev_alpha(&mm, w)?, &ev_alpha(&nm, w)?)?;
            Ok((iso_test(&left, &right)?, json!({ "of_product": canon(&left), "product_of": canon(&right) })))
        },
    ));
    SuiteReport::new(Suite::Ev.name(), checks, Vec::new())
}

fn derived(cfg: &SuiteConfig) -> SuiteReport {
    let mut rng = stream(cfg.seed, "derived");
    let pairs: Vec<EndoPair> = (0..100).map(|_| corpus::endo_pair(&mut rng, cfg.max_dim)).collect();
    let homology = check("homology of ev at 0 is coker and ker of T", &pairs, endo_json, |m| {
        let c = ev_zero_derived(m);
        let rank = m.endo().rank();
        let (h0, h1) = (c.homology(0), c.homology(1));
        let coker = m.dim() - rank;
        let kernel = m.endo().kernel_basis().len();
        // ev at 0 of the module is the cokernel as well
        let ev0 = ev_alpha(&m.to_module("t"), &TypeWitness::scalar(q(0)))?.rational_dim()?;
        let ok = h0 == coker && h1 == kernel && ev0 == Some(coker) && c.is_acyclic() == (rank == m.dim());
        Ok((ok, json!({ "h0": h0, "h1": h1, "coker": coker, "ker": kernel })))
    });
    let maps: Vec<_> = (0..100)
        .map(|_| {
            let n = rng.gen_range(1..=cfg.max_dim);
            corpus::invertible(&mut rng, n)
        })
        .collect();
    let invertible = check(
        "cones of invertible maps are acyclic",
        &maps,
        |p| json!(p.to_string()),
        |p| {
            let c = cone(&ComplexMap::in_degree_zero(p));
            Ok((c.is_acyclic(), json!({ "dims": c.dims() })))
        },
    );
    SuiteReport::new(Suite::Derived.name(), vec![homology, invertible], Vec::new())
}

/// The ring maps `t ↦ p(s)` used for the projection check.
fn projection_specs() -> Vec<MonFunctorSpec> {
    ["s", "s^2", "2*s+1", "s^3-s", "s^2+s"]
        .iter()
        .map(|p| MonFunctorSpec::parse("t", &s_ring(), p).expect("valid spec"))
        .collect()
}

fn closed_structure(cfg: &SuiteConfig) -> SuiteReport {
    let mut rng = stream(cfg.seed, "closed-structure");
    let triples: Vec<(EndoPair, EndoPair, EndoPair)> = (0..50)
        .map(|_| {
            let m = corpus::endo_pair(&mut rng, cfg.max_dim);
            let n = corpus::endo_pair(&mut rng, cfg.max_dim);
            (m, n, corpus::endo_pair(&mut rng, cfg.max_dim))
        })
        .collect();
    let adjunction = check(
        "hom out of a tensor product matches hom into an internal hom",
        &triples,
        |(m, n, p)| json!([endo_json(m), endo_json(n), endo_json(p)]),
        |(m, n, p)| {
            let left = hom_basis(&tensor_coeq(m, n), p).len();
            let right = hom_basis(m, &hom_fp(n, p)).len();
            Ok((left == right, json!({ "hom(m*n, p)": left, "hom(m, [n, p])": right })))
        },
    );

    let specs = projection_specs();
    let cases: Vec<(usize, EndoPair, EndoPair)> = (0..50)
        .map(|i| (i % specs.len(), corpus::endo_pair(&mut rng, cfg.max_dim), corpus::endo_pair(&mut rng, cfg.max_dim)))
        .collect();
    let reports: Vec<_> = cases.par_iter().map(|(k, m, n)| projection_iso_check(&specs[*k], m, n)).collect();
    let mut b = CheckBuilder::new("projection morphism is an isomorphism");
    let mut literal = 0;
    for ((k, m, n), r) in cases.iter().zip(reports) {
        let input = json!({ "spec": specs[*k].phi().to_string(), "m": endo_json(m), "n": endo_json(n) });
        match r {
            Ok(r) => {
                literal += r.literal_holds as usize;
                b.record(input, json!({ "left": canon(&r.left), "right": canon(&r.right) }), r.holds);
            }
            Err(e) => b.record(input, json!({ "error": e.to_string() }), false),
        }
    }
    let notes = vec![format!(
        "extension-of-scalars form of the projection map was an isomorphism in {literal}/{} cases",
        cases.len()
    )];
    SuiteReport::new(Suite::ClosedStructure.name(), vec![adjunction, b.finish()], notes)
}

fn spec_json(s: &MonFunctorSpec) -> Value {
    json!(s.phi().to_string())
}

fn random_spec(rng: &mut impl Rng, source: &str, target: &[String], max_deg: u32) -> MonFunctorSpec {
    let d = rng.gen_range(0..=max_deg);
    let image = corpus::poly_of_degree(rng, target, d);
    MonFunctorSpec::new(RingMap::new(&[source.to_string()], target, vec![image]).expect("one image"))
        .expect("one source variable")
}

fn universal_property(cfg: &SuiteConfig) -> SuiteReport {
    let mut rng = stream(cfg.seed, "universal-property");
    let s = s_ring();
    let mut checks = Vec::new();

    let cases: Vec<(MonFunctorSpec, FpModule)> = (0..100)
        .map(|_| (random_spec(&mut rng, "t", &s, 3), corpus::fp_module(&mut rng, "t", cfg.max_deg)))
        .collect();
    checks.push(check(
        "F is ev at its type after base extension",
        &cases,
        |(f, m)| json!({ "spec": spec_json(f), "module": module_json(m) }),
        |(f, m)| {
            let r = decompose_check(f, m)?;
            Ok((r.iso, json!({ "direct": canon(&r.direct), "via_type": canon(&r.via_type) })))
        },
    ));

    let polys: Vec<Poly> = (0..=5u32).flat_map(|d| (0..5).map(|_| corpus::poly_of_degree(&mut rng, &s, d)).collect::<Vec<_>>()).collect();
    checks.push(check(
        "type of the functor of a type is that type",
        &polys,
        |p| json!(p.to_string()),
        |p| {
            let w = TypeWitness::new(p.clone());
            let f = MonFunctorSpec::from_type(&w, "t")?;
            let back = extract_type(&f)?;
            let again = MonFunctorSpec::from_type(&back, "t")?;
            Ok((back.alpha() == p && again == f, json!(back.alpha().to_string())))
        },
    ));

    let r = vec!["r".to_string()];
    let pairs: Vec<(MonFunctorSpec, MonFunctorSpec)> =
        (0..20).map(|_| (random_spec(&mut rng, "t", &s, 2), random_spec(&mut rng, "s", &r, 2))).collect();
    checks.push(check(
        "type of a composite is the substituted type",
        &pairs,
        |(f, g)| json!([spec_json(f), spec_json(g)]),
        |(f, g)| {
            let composite = extract_type(&f.then(g)?)?;
            let expected = g.phi().apply(extract_type(f)?.alpha())?;
            Ok((composite.alpha() == &expected, json!(composite.alpha().to_string())))
        },
    ));

    let vars = vec!["t1".to_string(), "t2".to_string()];
    let an: Vec<(AnSpec, FpModule)> = (0..50)
        .map(|_| {
            let images = (0..2).map(|_| corpus::poly(&mut rng, &s, 3)).collect();
            let spec = AnSpec::new(&s, images).expect("two images");
            (spec, corpus::multi_module(&mut rng, &vars, 3))
        })
        .collect();
    checks.push(check(
        "two variables: stepwise and single substitution agree",
        &an,
        |(f, m)| {
            json!({ "images": f.images().iter().map(Poly::to_string).collect::<Vec<_>>(), "module": module_json(m) })
        },
        |(f, m)| {
            let r = an_decompose_check(f, m)?;
            Ok((r.iso, json!({ "stepwise": canon(&r.stepwise), "single_shot": canon(&r.single_shot) })))
        },
    ));

    let probes = [q(0), q(1), q(2)];
    let mods: Vec<FpModule> = (0..10).map(|_| corpus::fp_module(&mut rng, "t", 2)).collect();
    checks.push(check("restriction along addition factors at probe points", &mods, module_json, |m| {
        let r = plus_star_factorization_check(m, &probes)?;
        Ok((r.agree, json!({ "diagonal": r.diagonal, "partial": r.partial })))
    }));
    SuiteReport::new(Suite::UniversalProperty.name(), checks, Vec::new())
}

fn functor_json(u: &FunctorData) -> Value {
    json!({
        "source": FinCatJson::from(u.source().as_ref()),
        "target": FinCatJson::from(u.target().as_ref()),
        "functor": FunctorJson::from_functor(u),
    })
}

fn random_functor(rng: &mut impl Rng, max_objects: usize) -> FunctorData {
    let na = rng.gen_range(1..=max_objects);
    let a = Arc::new(corpus::poset(rng, na));
    let nb = rng.gen_range(1..=max_objects);
    let b = Arc::new(corpus::poset(rng, nb));
    corpus::monotone(rng, &a, &b)
}

/// The poset functors whose comma squares are checked; fixed, whatever
/// the run seed.
pub fn exact_corpus() -> Vec<FunctorData> {
    let mut rng = stream(0, "exact-square-corpus");
    (0..20).map(|_| random_functor(&mut rng, 4)).collect()
}

fn category_engine(cfg: &SuiteConfig) -> SuiteReport {
    let mut rng = stream(cfg.seed, "category-engine");
    let mut checks = Vec::new();

    let instances: Vec<(FunctorData, affine_line::fincat::VectDiagram, usize)> = (0..50)
        .map(|_| {
            let u = random_functor(&mut rng, cfg.max_objects);
            let x = corpus::vect_diagram(&mut rng, u.source(), cfg.max_dim.min(3));
            let b = rng.gen_range(0..u.target().num_objects());
            (u, x, b)
        })
        .collect();
    checks.push(check(
        "left Kan extension is computed by comma colimits",
        &instances,
        |(u, x, b)| json!({ "u": functor_json(u), "x": VectDiagramJson::from_diagram(x), "b": u.target().object_name(*b) }),
        |(u, x, b)| {
            let c = der4_comparison(u, x, *b)?;
            Ok((c.well_defined && c.is_iso, serde_json::to_value(c).expect("serializes")))
        },
    ));

    let pairs: Vec<(usize, _, _)> = (0..20)
        .map(|i| {
            let (u, x, _) = &instances[2 * i];
            let (v, y, _) = &instances[2 * i + 1];
            (i, (u.clone(), x.clone()), (v.clone(), y.clone()))
        })
        .collect();
    checks.push(check(
        "Kan extension commutes with coproducts",
        &pairs,
        |(i, _, _)| json!({ "instances": [2 * i, 2 * i + 1] }),
        |(_, (u, x), (v, y))| {
            let left = der1_check(u, x, v, y, KanDirection::Left)?;
            let right = der1_check(u, x, v, y, KanDirection::Right)?;
            Ok((left && right, json!({ "left": left, "right": right })))
        },
    ));

    let mut squares: Vec<(usize, &'static str, String, SquareData)> = Vec::new();
    for (i, u) in exact_corpus().iter().enumerate() {
        for b in 0..u.target().num_objects() {
            let name = u.target().object_name(b).to_string();
            squares.push((i, "over", name.clone(), SquareData::comma_over(u, b).expect("comma square")));
            squares.push((i, "under", name, SquareData::comma_under(u, b).expect("comma square")));
        }
    }
    checks.push(check(
        "comma squares are exact",
        &squares,
        |(i, side, b, _)| json!({ "functor": i, "side": side, "b": b }),
        |(_, _, _, sq)| {
            let r = exact_square_check(sq, Budget::default())?;
            Ok((r.verdict == SquareVerdict::Certified, json!({ "verdict": r.verdict, "cells": r.cells.len() })))
        },
    ));

    let ks: Vec<usize> = (2..=cfg.trunc_k).collect();
    let truncs: Vec<_> = ks.par_iter().map(|&k| (k, nn_truncations(k))).collect();
    let mut adj = CheckBuilder::new("adjunctions on truncations hold");
    let mut certs = CheckBuilder::new("truncated posets are contractible");
    for (k, t) in &truncs {
        match t {
            Ok(t) => {
                for (name, a) in t.adjunctions() {
                    let input = json!({ "k": k, "adjunction": name });
                    match a.check() {
                        Ok(ok) => adj.record(input, json!(ok), ok),
                        Err(e) => adj.record(input, json!({ "error": e.to_string() }), false),
                    }
                }
                let cats: [(&str, &Arc<FinCat>); 3] = [("pairs", &t.pairs), ("grid", &t.grid), ("L", t.l_sub())];
                for (name, c) in cats {
                    let cert = contractibility_certificate(c);
                    let ok = cert.is_contractible() && cert.validate(c).unwrap_or(false);
                    certs.record(json!({ "k": k, "category": name }), json!(cert.witness(c)), ok);
                }
            }
            Err(e) => adj.record(json!({ "k": k }), json!({ "error": e.to_string() }), false),
        }
    }
    checks.push(adj.finish());
    checks.push(certs.finish());
    SuiteReport::new(Suite::CategoryEngine.name(), checks, Vec::new())
}
