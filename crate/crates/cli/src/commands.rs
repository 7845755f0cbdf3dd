//! The subcommands: each reads JSON inputs and returns a JSON fragment
//! together with whether the check it performs (if any) held.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use affine_line::derived::{ev_alpha_derived, ChainComplex, ComplexJson};
use affine_line::fincat::json::{FinCatJson, FunctorJson, SquareJson};
use affine_line::fincat::{
    comma_category, contractibility_certificate, exact_square_check, nn_truncations, sieve_cosieve, Budget, FinCat,
    FunctorData, Side, SquareVerdict,
};
use affine_line::modcat::json::{EndoPairJson, FpModuleJson, RingMapJson};
use affine_line::modcat::{
    ev_alpha, hom_basis, hom_fp, iso_test, tensor_a1, tensor_coeq, EndoPair, FpModule, RingMap, TypeWitness,
};
use affine_line::polyalg::{parse_rational, Poly};
use affine_line::univ::{an_decompose_check, decompose_check, extract_type, projection_iso_check, AnSpec, AnSpecJson, MonFunctorSpec};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::suites::ConfigError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {location}: {message}")]
    Schema { path: PathBuf, location: String, message: String },
    #[error("{path}: {source}")]
    Invalid { path: PathBuf, source: affine_line::Error },
    #[error(transparent)]
    Math(#[from] affine_line::Error),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Usage(String),
}

pub type CliResult<T> = Result<T, CliError>;

/// A command's JSON result; `ok` is false when a check it ran failed.
#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub value: Value,
    pub ok: bool,
}

impl Output {
    fn info(value: Value) -> Self {
        Output { value, ok: true }
    }
}

/// Parses `text` (read from `path`) as `T`, reporting the JSON path and
/// line/column of the first violation.
pub fn parse_json<T: DeserializeOwned>(path: &Path, text: &str) -> CliResult<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let inner = e.inner();
        let at = e.path().to_string();
        let location = if at == "." {
            format!("line {} column {}", inner.line(), inner.column())
        } else {
            format!("at {at} (line {} column {})", inner.line(), inner.column())
        };
        CliError::Schema { path: path.to_path_buf(), location, message: inner.to_string() }
    })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    parse_json(path, &text)
}

fn invalid(path: &Path) -> impl FnOnce(affine_line::Error) -> CliError + '_ {
    move |source| CliError::Invalid { path: path.to_path_buf(), source }
}

/// A module file: either an `fpmodule` or an `endopair` (read over ℚ[t]).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum ModuleFile {
    Fp(FpModuleJson),
    Endo(EndoPairJson),
}

pub fn read_module(path: &Path) -> CliResult<FpModule> {
    let value: Value = read_json(path)?;
    if value.get("ring").is_some() {
        let j: FpModuleJson = parse_json(path, &value.to_string())?;
        FpModule::try_from(&j).map_err(invalid(path))
    } else if value.get("dim").is_some() {
        Ok(read_endo(path)?.to_module("t"))
    } else {
        // let the untagged form produce the error
        match parse_json::<ModuleFile>(path, &value.to_string())? {
            ModuleFile::Fp(j) => FpModule::try_from(&j).map_err(invalid(path)),
            ModuleFile::Endo(j) => Ok(EndoPair::try_from(&j).map_err(invalid(path))?.to_module("t")),
        }
    }
}

pub fn read_endo(path: &Path) -> CliResult<EndoPair> {
    let j: EndoPairJson = read_json(path)?;
    EndoPair::try_from(&j).map_err(invalid(path))
}

pub fn read_spec(path: &Path) -> CliResult<MonFunctorSpec> {
    let j: RingMapJson = read_json(path)?;
    let phi = RingMap::try_from(&j).map_err(invalid(path))?;
    MonFunctorSpec::new(phi).map_err(invalid(path))
}

/// `{source, target, objects, morphisms}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorFile {
    pub source: FinCatJson,
    pub target: FinCatJson,
    #[serde(flatten)]
    pub functor: FunctorJson,
}

impl FunctorFile {
    pub fn from_functor(u: &FunctorData) -> Self {
        FunctorFile {
            source: u.source().as_ref().into(),
            target: u.target().as_ref().into(),
            functor: FunctorJson::from_functor(u),
        }
    }
}

pub fn read_functor(path: &Path) -> CliResult<FunctorData> {
    let j: FunctorFile = read_json(path)?;
    let source = Arc::new(FinCat::try_from(&j.source).map_err(invalid(path))?);
    let target = Arc::new(FinCat::try_from(&j.target).map_err(invalid(path))?);
    j.functor.resolve(&source, &target).map_err(invalid(path))
}

/// Presentation and canonical form of a module.
pub fn module_value(m: &FpModule) -> Value {
    let mut v = json!({ "presentation": FpModuleJson::from(m) });
    if let Ok(c) = m.render_canonical() {
        v["canonical"] = json!(c);
    }
    v
}

fn parse_ring(ring: &[String]) -> Vec<String> {
    ring.iter().flat_map(|r| r.split(',')).map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum TensorRoute {
    Presentation,
    Coequalizer,
}

pub fn mod_tensor(left: &Path, right: &Path, route: TensorRoute) -> CliResult<Output> {
    let product = match route {
        TensorRoute::Presentation => tensor_a1(&read_module(left)?, &read_module(right)?)?,
        TensorRoute::Coequalizer => tensor_coeq(&read_endo(left)?, &read_endo(right)?).to_module("t"),
    };
    Ok(Output::info(module_value(&product)))
}

/// `alpha` is a polynomial over `ring`; an empty ring means a scalar.
pub fn mod_evalpha(module: &Path, alpha: &str, ring: &[String]) -> CliResult<Output> {
    let ring = parse_ring(ring);
    let w = TypeWitness::new(Poly::parse(alpha, &ring)?);
    let m = read_module(module)?;
    let e = ev_alpha(&m, &w)?;
    Ok(Output::info(json!({ "alpha": w.alpha().to_string(), "result": module_value(&e) })))
}

pub fn mod_iso(left: &Path, right: &Path) -> CliResult<Output> {
    let (m, n) = (read_module(left)?, read_module(right)?);
    let iso = iso_test(&m, &n)?;
    Ok(Output::info(json!({ "left": module_value(&m), "right": module_value(&n), "isomorphic": iso })))
}

pub fn mod_hom(left: &Path, right: &Path) -> CliResult<Output> {
    let (m, n) = (read_endo(left)?, read_endo(right)?);
    let h = hom_fp(&m, &n);
    let basis = hom_basis(&m, &n).len();
    Ok(Output::info(json!({
        "internal_hom": EndoPairJson::from(&h),
        "internal_hom_module": module_value(&h.to_module("t")),
        "intertwiners": basis,
    })))
}

pub fn derived_ev0(endo: &Path, alpha: &str) -> CliResult<Output> {
    let m = read_endo(endo)?;
    let a = parse_rational(alpha)?;
    let c: ChainComplex = ev_alpha_derived(&m, &a);
    Ok(Output::info(json!({
        "complex": ComplexJson::from(&c),
        "homology": { "0": c.homology(0), "1": c.homology(1) },
        "acyclic": c.is_acyclic(),
    })))
}

pub fn fincat_comma(functor: &Path, object: &str, side: Side) -> CliResult<Output> {
    let u = read_functor(functor)?;
    let b = u.target().object_index(object).map_err(invalid(functor))?;
    let comma = comma_category(&u, b, side)?;
    let cat = comma.category();
    let cert = contractibility_certificate(cat);
    Ok(Output::info(json!({
        "category": FinCatJson::from(cat.as_ref()),
        "objects": comma.pairs.iter().map(|&(a, f)| json!({
            "a": u.source().object_name(a),
            "morphism": u.target().morphism_name(f),
        })).collect::<Vec<_>>(),
        "certificate": { "verdict": cert.verdict(), "witness": cert.witness(cat) },
    })))
}

pub fn fincat_exact(square: &Path) -> CliResult<Output> {
    let j: SquareJson = read_json(square)?;
    let sq = j.resolve().map_err(invalid(square))?;
    let r = exact_square_check(&sq, Budget::default())?;
    let ok = r.verdict == SquareVerdict::Certified;
    Ok(Output { value: serde_json::to_value(&r).expect("serializes"), ok })
}

pub fn fincat_sieve(functor: &Path) -> CliResult<Output> {
    let u = read_functor(functor)?;
    Ok(Output::info(json!({ "kind": sieve_cosieve(&u) })))
}

pub fn fincat_trunc(k: usize) -> CliResult<Output> {
    let t = nn_truncations(k)?;
    let mut ok = true;
    let mut adjunctions = Vec::new();
    for (name, a) in t.adjunctions() {
        let holds = a.check()?;
        ok &= holds;
        adjunctions.push(json!({ "name": name, "holds": holds }));
    }
    let mut categories = Vec::new();
    let cats: [(&str, &Arc<FinCat>); 6] =
        [("pairs", &t.pairs), ("grid", &t.grid), ("L", t.l_sub()), ("C", &t.c), ("C0", &t.c0), ("D", &t.d)];
    for (name, c) in cats {
        let cert = contractibility_certificate(c);
        categories.push(json!({
            "name": name,
            "objects": c.num_objects(),
            "morphisms": c.num_morphisms(),
            "verdict": cert.verdict(),
            "witness": cert.witness(c),
        }));
    }
    Ok(Output { value: json!({ "k": k, "adjunctions": adjunctions, "categories": categories }), ok })
}

pub fn univ_type(spec: &Path) -> CliResult<Output> {
    let f = read_spec(spec)?;
    let w = extract_type(&f)?;
    Ok(Output::info(json!({ "spec": f.phi().to_string(), "type": w.alpha().to_string() })))
}

pub fn univ_decompose(spec: &Path, module: &Path) -> CliResult<Output> {
    let f = read_spec(spec)?;
    let m = read_module(module)?;
    let r = decompose_check(&f, &m)?;
    let w = extract_type(&f)?;
    Ok(Output {
        value: json!({
            "type": w.alpha().to_string(),
            "direct": module_value(&r.direct),
            "via_type": module_value(&r.via_type),
            "isomorphic": r.iso,
        }),
        ok: r.iso,
    })
}

pub fn univ_an(spec: &Path, module: &Path) -> CliResult<Output> {
    let j: AnSpecJson = read_json(spec)?;
    let f = AnSpec::try_from(&j).map_err(invalid(spec))?;
    let m = read_module(module)?;
    let r = an_decompose_check(&f, &m)?;
    Ok(Output {
        value: json!({
            "stepwise": module_value(&r.stepwise),
            "single_shot": module_value(&r.single_shot),
            "isomorphic": r.iso,
        }),
        ok: r.iso,
    })
}

pub fn univ_projection(spec: &Path, left: &Path, right: &Path) -> CliResult<Output> {
    let f = read_spec(spec)?;
    let r = projection_iso_check(&f, &read_endo(left)?, &read_endo(right)?)?;
    Ok(Output {
        value: json!({
            "left": module_value(&r.left),
            "right": module_value(&r.right),
            "isomorphic": r.holds,
            "extension_form": {
                "left": module_value(&r.literal_left),
                "right": module_value(&r.literal_right),
                "isomorphic": r.literal_holds,
            },
        }),
        ok: r.holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &Path, name: &str, v: Value) -> PathBuf {
        let p = dir.join(name);
        fs::write(&p, v.to_string()).unwrap();
        p
    }

    #[test]
    fn evalpha_at_zero_of_dual_numbers() {
        let dir = tempfile::tempdir().unwrap();
        let m = write(dir.path(), "m.json", json!({ "ring": ["t"], "generators": 1, "relations": [["t^2"]] }));
        let out = mod_evalpha(&m, "0", &[]).unwrap();
        assert_eq!(out.value["result"]["canonical"], "free rank 1; factors []");
    }

    #[test]
    fn type_of_a_spec() {
        let dir = tempfile::tempdir().unwrap();
        let s = write(dir.path(), "s.json", json!({ "source": ["t"], "target": ["s"], "images": ["s^2+1"] }));
        assert_eq!(univ_type(&s).unwrap().value["type"], "s^2+1");
    }

    #[test]
    fn schema_errors_carry_a_location() {
        let dir = tempfile::tempdir().unwrap();
        let m = write(dir.path(), "m.json", json!({ "ring": ["t"], "generators": "one", "relations": [] }));
        let err = read_module(&m).unwrap_err().to_string();
        assert!(err.contains("generators"), "{err}");
        let bad = dir.path().join("bad.json");
        fs::write(&bad, "{\n  \"dim\": 1,\n  \"matrix\": [[\"1\"]\n").unwrap();
        let err = read_endo(&bad).unwrap_err().to_string();
        assert!(err.contains("matrix") && err.contains("line 4"), "{err}");
    }

    #[test]
    fn relation_length_errors_name_the_file() {
        let dir = tempfile::tempdir().unwrap();
        let m = write(dir.path(), "m.json", json!({ "ring": ["t"], "generators": 2, "relations": [["t"]] }));
        let err = read_module(&m).unwrap_err().to_string();
        assert!(err.contains("m.json") && err.contains("relation 0"), "{err}");
    }

    #[test]
    fn functor_files_round_trip() {
        let a = Arc::new(FinCat::arrow());
        let u = FunctorData::identity(&a);
        let j = FunctorFile::from_functor(&u);
        let text = serde_json::to_string(&j).unwrap();
        let back: FunctorFile = parse_json(Path::new("f.json"), &text).unwrap();
        assert_eq!(back, j);
    }

    #[test]
    fn trunc_reports_contractible_categories() {
        let out = fincat_trunc(2).unwrap();
        assert!(out.ok);
        let cats = out.value["categories"].as_array().unwrap();
        for name in ["pairs", "grid", "L"] {
            let c = cats.iter().find(|c| c["name"] == name).unwrap();
            assert!(c["verdict"].as_str().unwrap().starts_with("Contractible"), "{c}");
        }
    }
}
