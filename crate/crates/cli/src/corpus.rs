//! Seeded random inputs. Each suite draws from its own stream so results do
//! not depend on which suites run or in which order.

use std::sync::Arc;

use affine_line::fincat::{
    cokernel_diagram, yoneda_map, FinCat, FunctorData, VectDiagram,
};
use affine_line::modcat::{EndoPair, FpModule};
use affine_line::polyalg::{q, q_frac, Poly, PolyMatrix, QMatrix, Rational, UPoly};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A stream keyed by the run seed and a label.
pub fn stream(seed: u64, label: &str) -> ChaCha8Rng {
    // FNV-1a, stable across platforms and releases
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

pub fn small_rational(rng: &mut impl Rng) -> Rational {
    let num = rng.gen_range(-3..=3);
    let den = *[1, 1, 1, 2, 3].choose(rng).expect("nonempty");
    q_frac(num, den)
}

pub fn eigenvalue(rng: &mut impl Rng) -> Rational {
    q(rng.gen_range(-2..=2))
}

/// A polynomial of degree at most `max_deg` over `vars` with small
/// coefficients; each monomial of the allowed degrees is present with
/// probability one half.
pub fn poly(rng: &mut impl Rng, vars: &[String], max_deg: u32) -> Poly {
    let mut p = Poly::zero(vars);
    let monomials = monomials(vars.len(), max_deg);
    for m in monomials {
        if rng.gen_bool(0.5) {
            let mut term = Poly::constant(vars, small_rational(rng));
            for (i, &e) in m.iter().enumerate() {
                term = term.try_mul(&Poly::var(vars, &vars[i]).expect("declared").pow(e)).expect("same ring");
            }
            p = p.try_add(&term).expect("same ring");
        }
    }
    p
}

fn monomials(nvars: usize, max_deg: u32) -> Vec<Vec<u32>> {
    if nvars == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for e in 0..=max_deg {
        for mut rest in monomials(nvars - 1, max_deg - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

/// A polynomial of exact degree `deg` in one variable.
pub fn poly_of_degree(rng: &mut impl Rng, vars: &[String], deg: u32) -> Poly {
    let lead = loop {
        let c = small_rational(rng);
        if c != q(0) {
            break c;
        }
    };
    let x = Poly::var(vars, &vars[0]).expect("declared");
    let rest = if deg == 0 { Poly::zero(vars) } else { poly(rng, vars, deg - 1) };
    x.pow(deg).scale(&lead).try_add(&rest).expect("same ring")
}

/// A random invertible matrix: unit lower times unit upper triangular.
pub fn invertible(rng: &mut impl Rng, n: usize) -> QMatrix {
    let lower = QMatrix::from_fn(n, n, |i, j| if i == j { q(1) } else if i > j { q(rng.gen_range(-1..=1)) } else { q(0) });
    let upper = QMatrix::from_fn(n, n, |i, j| if i == j { q(1) } else if i < j { q(rng.gen_range(-1..=1)) } else { q(0) });
    lower.mul(&upper)
}

/// A torsion pair of dimension `1..=max_dim`: Jordan and companion blocks
/// with eigenvalues in `−2..2`, conjugated by a random invertible matrix.
pub fn endo_pair(rng: &mut impl Rng, max_dim: usize) -> EndoPair {
    let dim = rng.gen_range(1..=max_dim.max(1));
    let mut out = EndoPair::zero_space();
    let mut left = dim;
    while left > 0 {
        let size = rng.gen_range(1..=left);
        let block = if rng.gen_bool(0.5) {
            EndoPair::jordan(&eigenvalue(rng), size)
        } else {
            let mut f = UPoly::one();
            for _ in 0..size {
                f = f.mul(&UPoly::linear_root(eigenvalue(rng)));
            }
            EndoPair::companion(&f).expect("monic of positive degree")
        };
        out = out.direct_sum(&block);
        left -= size;
    }
    let p = invertible(rng, dim);
    let inv = p.inverse().expect("invertible");
    EndoPair::new(p.mul(out.endo()).mul(&inv)).expect("square")
}

/// A finitely presented module over ℚ[var]: up to 3 generators, up to 3
/// relations of degree at most `max_deg`, sparse.
pub fn fp_module(rng: &mut impl Rng, var: &str, max_deg: u32) -> FpModule {
    let vars = vec![var.to_string()];
    let gens = rng.gen_range(1..=3);
    let rels = rng.gen_range(0..=3);
    let mut m = PolyMatrix::zeros(&vars, gens, rels);
    for j in 0..rels {
        for i in 0..gens {
            if rng.gen_bool(0.6) {
                m.set(i, j, poly(rng, &vars, max_deg));
            }
        }
    }
    FpModule::from_presentation(m)
}

/// A finite-dimensional ℚ-module given by a random constant presentation.
pub fn rational_module(rng: &mut impl Rng, max_dim: usize) -> FpModule {
    let gens = rng.gen_range(0..=max_dim);
    let rels = rng.gen_range(0..=gens);
    let m = QMatrix::from_fn(gens, rels, |_, _| q(rng.gen_range(-2..=2)));
    FpModule::from_presentation(PolyMatrix::from_qmatrix(&[], &m))
}

/// A module over `vars` with up to 2 generators and 2 relations of total
/// degree at most `max_deg`.
pub fn multi_module(rng: &mut impl Rng, vars: &[String], max_deg: u32) -> FpModule {
    let gens = rng.gen_range(1..=2);
    let rels = rng.gen_range(0..=2);
    let mut m = PolyMatrix::zeros(vars, gens, rels);
    for j in 0..rels {
        for i in 0..gens {
            if rng.gen_bool(0.7) {
                m.set(i, j, poly(rng, vars, max_deg));
            }
        }
    }
    FpModule::from_presentation(m)
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

/// A random partial order on `n` elements: a random DAG in index order,
/// closed under transitivity.
pub fn poset(rng: &mut impl Rng, n: usize) -> FinCat {
    let mut le = vec![vec![false; n]; n];
    for i in 0..n {
        le[i][i] = true;
        for j in i + 1..n {
            le[i][j] = rng.gen_bool(0.4);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    FinCat::poset(&names(n), |i, j| le[i][j]).expect("transitive and reflexive")
}

/// A uniformly chosen monotone map between posets.
pub fn monotone(rng: &mut impl Rng, a: &Arc<FinCat>, b: &Arc<FinCat>) -> FunctorData {
    let (na, nb) = (a.num_objects(), b.num_objects());
    let mut maps = Vec::new();
    let mut current = vec![0usize; na];
    loop {
        let ok = a.morphisms().iter().all(|f| !b.hom(current[f.src], current[f.dst]).is_empty());
        if ok {
            maps.push(current.clone());
        }
        // next assignment in base nb
        let mut i = 0;
        while i < na {
            current[i] += 1;
            if current[i] < nb {
                break;
            }
            current[i] = 0;
            i += 1;
        }
        if i == na {
            break;
        }
    }
    let objs = maps.choose(rng).expect("constant maps are monotone").clone();
    FunctorData::from_fns(a.clone(), b.clone(), |x| Ok(objs[x]), |f| Ok(b.hom(objs[a.src(f)], objs[a.dst(f)])[0]))
        .expect("monotone map of posets")
}

/// A random diagram with every dimension at most `max_dim`: the cokernel of
/// a random map between sums of representables, in a random basis.
pub fn vect_diagram(rng: &mut impl Rng, cat: &Arc<FinCat>, max_dim: usize) -> VectDiagram {
    let n = cat.num_objects();
    loop {
        let count = rng.gen_range(0..=2);
        let tops: Vec<usize> = (0..count).map(|_| rng.gen_range(0..n)).collect();
        let y = VectDiagram::representable_sum(cat, &tops);
        let k = rng.gen_range(0..=2);
        let rels: Vec<usize> = (0..k).map(|_| rng.gen_range(0..n)).collect();
        let x = VectDiagram::representable_sum(cat, &rels);
        let elements: Vec<Vec<Rational>> = rels.iter().map(|&a| (0..y.dim(a)).map(|_| q(rng.gen_range(-1..=1))).collect()).collect();
        let comps = yoneda_map(&rels, &y, &elements).expect("shapes match");
        let z = cokernel_diagram(&x, &y, &comps).expect("Yoneda maps are natural");
        if z.dims().iter().any(|&d| d > max_dim) {
            continue;
        }
        let changes: Vec<QMatrix> = z.dims().iter().map(|&d| invertible(rng, d)).collect();
        return z.conjugate(&changes).expect("invertible changes of basis");
    }
}
