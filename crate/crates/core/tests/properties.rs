use std::sync::Arc;

use affine_line::derived::{cone, ev_zero_derived, ChainComplex, ComplexMap};
use affine_line::fincat::{
    colimit, comma_category, contractibility_certificate, der1_check, der4_comparison, exact_square_check,
    kan_extend_finvect, Budget, FinCat, FunctorData, KanDirection, Side, SquareData, SquareVerdict, VectDiagram,
};
use affine_line::modcat::{
    ev_alpha, extend_coefficients, hom_basis, hom_fp, iso_test, structure_i, tensor_a1, tensor_coeq,
    tensor_same_ring, unit_a1, EndoPair, FpModule, TypeWitness,
};
use affine_line::polyalg::{invariant_factors, q, smith_normal_form, Poly, PolyMatrix, QMatrix, UPoly};
use affine_line::univ::{decompose_check, extract_type, MonFunctorSpec};
use proptest::prelude::*;

fn t() -> Vec<String> {
    vec!["t".to_string()]
}

fn s() -> Vec<String> {
    vec!["s".to_string()]
}

fn upoly(max_len: usize) -> impl Strategy<Value = UPoly> {
    prop::collection::vec(-3i64..=3, 0..=max_len).prop_map(|c| UPoly::from_ints(&c))
}

fn tpoly(max_len: usize) -> impl Strategy<Value = Poly> {
    upoly(max_len).prop_map(|u| Poly::from_upoly(&u, &t()))
}

fn poly_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = PolyMatrix> {
    (1..=max_rows, 0..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(tpoly(3), r * c).prop_map(move |e| PolyMatrix::from_fn(&t(), r, c, |i, j| e[i * c + j].clone()))
    })
}

fn module() -> impl Strategy<Value = FpModule> {
    poly_matrix(3, 3).prop_map(FpModule::from_presentation)
}

fn unit_triangular(n: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(-1i64..=1, n * n * 2).prop_map(move |e| {
        let lower = QMatrix::from_fn(n, n, |i, j| if i == j { q(1) } else if i > j { q(e[i * n + j]) } else { q(0) });
        let upper = QMatrix::from_fn(n, n, |i, j| if i == j { q(1) } else if i < j { q(e[n * n + i * n + j]) } else { q(0) });
        lower.mul(&upper)
    })
}

/// Jordan blocks `(λ, size)` with λ in −2..2, conjugated.
fn endo_pair(max_dim: usize) -> impl Strategy<Value = EndoPair> {
    prop::collection::vec((-2i64..=2, 1usize..=2), 1..=max_dim).prop_flat_map(move |blocks| {
        let mut m = EndoPair::zero_space();
        for (l, n) in &blocks {
            if m.dim() + n <= max_dim.max(*n) {
                m = m.direct_sum(&EndoPair::jordan(&q(*l), *n));
            }
        }
        let d = m.dim();
        unit_triangular(d).prop_map(move |p| {
            let inv = p.inverse().unwrap();
            EndoPair::new(p.mul(m.endo()).mul(&inv)).unwrap()
        })
    })
}

fn rational_module() -> impl Strategy<Value = FpModule> {
    (0usize..=3, 0usize..=3).prop_flat_map(|(g, r)| {
        prop::collection::vec(-2i64..=2, g * r).prop_map(move |e| {
            let m = QMatrix::from_fn(g, r, |i, j| q(e[i * r + j]));
            FpModule::from_presentation(PolyMatrix::from_qmatrix(&[], &m))
        })
    })
}

fn poset(max: usize) -> impl Strategy<Value = Arc<FinCat>> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(prop::bool::weighted(0.4), n * n).prop_map(move |bits| {
            let mut le = vec![vec![false; n]; n];
            for i in 0..n {
                le[i][i] = true;
                for j in i + 1..n {
                    le[i][j] = bits[i * n + j];
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
            let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
            Arc::new(FinCat::poset(&names, |i, j| le[i][j]).unwrap())
        })
    })
}

/// A monotone map chosen by trying assignments in order from `start`.
fn monotone(a: &Arc<FinCat>, b: &Arc<FinCat>, start: usize) -> FunctorData {
    let (na, nb) = (a.num_objects(), b.num_objects());
    let total = nb.pow(na as u32);
    for k in 0..total {
        let mut code = (start + k) % total;
        let objs: Vec<usize> = (0..na)
            .map(|_| {
                let x = code % nb;
                code /= nb;
                x
            })
            .collect();
        if a.morphisms().iter().all(|f| !b.hom(objs[f.src], objs[f.dst]).is_empty()) {
            return FunctorData::from_fns(a.clone(), b.clone(), |x| Ok(objs[x]), |f| Ok(b.hom(objs[a.src(f)], objs[a.dst(f)])[0]))
                .unwrap();
        }
    }
    unreachable!("constant maps are monotone")
}

fn diagram(cat: &Arc<FinCat>, seed: &[i64]) -> VectDiagram {
    // a sum of representables, which is functorial by construction
    let n = cat.num_objects();
    let tops: Vec<usize> = seed.iter().take(2).map(|&v| v.unsigned_abs() as usize % n).collect();
    VectDiagram::representable_sum(cat, &tops)
}

fn functor_case() -> impl Strategy<Value = (FunctorData, VectDiagram, usize)> {
    (poset(4), poset(4), any::<usize>(), prop::collection::vec(any::<i64>(), 3)).prop_map(|(a, b, start, seed)| {
        let u = monotone(&a, &b, start);
        let x = diagram(&a, &seed);
        let y = seed[2].unsigned_abs() as usize % b.num_objects();
        (u, x, y)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn snf_reconstructs_and_is_unimodular(a in poly_matrix(3, 3)) {
        let r = smith_normal_form(&a).unwrap();
        prop_assert_eq!(r.left.try_mul(&a).unwrap().try_mul(&r.right).unwrap(), r.diagonal_matrix());
        for u in [&r.left, &r.right] {
            let d = u.det_univariate().unwrap();
            prop_assert!(d.is_constant() && !d.is_zero());
        }
        for w in r.diag.windows(2) {
            prop_assert!(w[0].to_upoly().unwrap().divides(&w[1].to_upoly().unwrap()));
        }
    }

    #[test]
    fn snf_is_idempotent(a in poly_matrix(3, 3)) {
        let r = smith_normal_form(&a).unwrap();
        let again = smith_normal_form(&r.diagonal_matrix()).unwrap();
        prop_assert_eq!(again.diag, r.diag);
    }

    #[test]
    fn divmod_identity(a in upoly(9), b in upoly(9)) {
        prop_assume!(!b.is_zero());
        let (qt, r) = a.divmod(&b).unwrap();
        prop_assert_eq!(qt.mul(&b).add(&r), a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn kernel_basis_is_a_basis(e in prop::collection::vec(-2i64..=2, 12)) {
        let a = QMatrix::from_fn(3, 4, |i, j| q(e[i * 4 + j]));
        let k = a.kernel_basis();
        prop_assert_eq!(k.len(), 4 - a.rank());
        for v in &k {
            prop_assert!(a.mul_vec(v).iter().all(|x| *x == q(0)));
        }
        prop_assert_eq!(QMatrix::from_columns(4, &k).rank(), k.len());
    }

    #[test]
    fn iso_is_invariant_under_change_of_presentation(m in module(), seed in any::<u64>()) {
        let a = m.presentation();
        let (g, r) = (a.rows(), a.cols());
        let p = PolyMatrix::from_qmatrix(&t(), &QMatrix::from_fn(g, g, |i, j| {
            if i == j { q(1) } else if i > j { q(((seed >> (i * 3 + j)) & 1) as i64) } else { q(0) }
        }));
        let qm = PolyMatrix::from_fn(&t(), r, r, |i, j| {
            if i == j { Poly::one(&t()) } else if i < j && (seed >> (20 + i * 3 + j)) & 1 == 1 { Poly::var(&t(), "t").unwrap() } else { Poly::zero(&t()) }
        });
        let n = FpModule::from_presentation(p.try_mul(a).unwrap().try_mul(&qm).unwrap());
        prop_assert!(iso_test(&m, &n).unwrap());
        prop_assert!(iso_test(&m, &m).unwrap());
    }

    #[test]
    fn unit_law(m in module()) {
        prop_assert!(iso_test(&tensor_a1(&unit_a1("t"), &m).unwrap(), &m).unwrap());
    }

    #[test]
    fn tensor_is_symmetric(m in module(), n in module()) {
        prop_assert!(iso_test(&tensor_a1(&m, &n).unwrap(), &tensor_a1(&n, &m).unwrap()).unwrap());
    }

    #[test]
    fn coequalizer_route_matches_presentation_route(m in endo_pair(4), n in endo_pair(4)) {
        let coeq = tensor_coeq(&m, &n).to_module("t");
        let pres = tensor_a1(&m.to_module("t"), &n.to_module("t")).unwrap();
        prop_assert_eq!(coeq.canonical_form().unwrap(), pres.canonical_form().unwrap());
    }

    #[test]
    fn inclusion_is_strong_monoidal(v in rational_module(), w in rational_module()) {
        let left = structure_i(&tensor_same_ring(&v, &w).unwrap(), "t").unwrap();
        let right = tensor_a1(&structure_i(&v, "t").unwrap(), &structure_i(&w, "t").unwrap()).unwrap();
        prop_assert!(iso_test(&left, &right).unwrap());
    }

    #[test]
    fn witnesses_are_idempotent(a in -3i64..=3) {
        let p = TypeWitness::scalar(q(a)).module("t").unwrap();
        prop_assert!(iso_test(&tensor_a1(&p, &p).unwrap(), &p).unwrap());
    }

    #[test]
    fn ev_is_strong_monoidal(m in endo_pair(3), n in endo_pair(3), a in -2i64..=2, b in upoly(3)) {
        let (mm, nm) = (m.to_module("t"), n.to_module("t"));
        for w in [TypeWitness::scalar(q(a)), TypeWitness::new(Poly::from_upoly(&b, &s()))] {
            let left = ev_alpha(&tensor_a1(&mm, &nm).unwrap(), &w).unwrap();
            let right = tensor_same_ring(&ev_alpha(&mm, &w).unwrap(), &ev_alpha(&nm, &w).unwrap()).unwrap();
            prop_assert!(iso_test(&left, &right).unwrap());
        }
    }

    #[test]
    fn ev_is_a_section_of_inclusion(v in rational_module(), b in upoly(3)) {
        let w = TypeWitness::new(Poly::from_upoly(&b, &s()));
        let e = ev_alpha(&structure_i(&v, "t").unwrap(), &w).unwrap();
        prop_assert!(iso_test(&e, &extend_coefficients(&v, &s()).unwrap()).unwrap());
    }

    #[test]
    fn tensor_hom_dimensions(m in endo_pair(3), n in endo_pair(3), p in endo_pair(3)) {
        prop_assert_eq!(hom_basis(&tensor_coeq(&m, &n), &p).len(), hom_basis(&m, &hom_fp(&n, &p)).len());
    }

    #[test]
    fn h0_matches_ev_at_zero(m in endo_pair(4)) {
        let c = ev_zero_derived(&m);
        let ev0 = ev_alpha(&m.to_module("t"), &TypeWitness::scalar(q(0))).unwrap();
        prop_assert_eq!(Some(c.homology(0)), ev0.rational_dim().unwrap());
    }

    #[test]
    fn cone_euler_characteristic(e in prop::collection::vec(-2i64..=2, 9), n in 1usize..=3) {
        let f = QMatrix::from_fn(n, n, |i, j| q(e[i * 3 + j]));
        let map = ComplexMap::in_degree_zero(&f);
        let c = cone(&map);
        let chi = |x: &ChainComplex| x.euler_characteristic();
        prop_assert_eq!(chi(&c), chi(map.target()) - chi(map.source()));
        prop_assert_eq!(c.is_acyclic(), f.rank() == n);
    }

    #[test]
    fn comma_of_identity_has_terminal_object(c in poset(5), b in any::<usize>()) {
        let b = b % c.num_objects();
        let comma = comma_category(&FunctorData::identity(&c), b, Side::Over).unwrap();
        prop_assert!(comma.category().terminal_object().is_some());
    }

    #[test]
    fn certificates_are_sound(c in poset(6)) {
        let cert = contractibility_certificate(&c);
        if cert.is_contractible() {
            prop_assert!(cert.validate(&c).unwrap());
        }
    }

    #[test]
    fn kan_extension_is_pointwise((u, x, b) in functor_case()) {
        let r = der4_comparison(&u, &x, b).unwrap();
        prop_assert!(r.well_defined && r.is_iso);
        let restricted = x.restrict(&comma_category(&u, b, Side::Over).unwrap().projection).unwrap();
        prop_assert_eq!(colimit(&restricted).dim, kan_extend_finvect(&u, &x, KanDirection::Left).unwrap().dim(b));
    }

    #[test]
    fn kan_extension_commutes_with_coproducts((u, x, _) in functor_case(), (v, y, _) in functor_case()) {
        prop_assert!(der1_check(&u, &x, &v, &y, KanDirection::Left).unwrap());
        prop_assert!(der1_check(&u, &x, &v, &y, KanDirection::Right).unwrap());
    }

    #[test]
    fn comma_squares_are_exact((u, _, b) in functor_case()) {
        for sq in [SquareData::comma_over(&u, b).unwrap(), SquareData::comma_under(&u, b).unwrap()] {
            prop_assert_eq!(exact_square_check(&sq, Budget::default()).unwrap().verdict, SquareVerdict::Certified);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn type_round_trip(p in upoly(6)) {
        let p = Poly::from_upoly(&p, &s());
        let w = TypeWitness::new(p.clone());
        let f = MonFunctorSpec::from_type(&w, "t").unwrap();
        let back = extract_type(&f).unwrap();
        prop_assert_eq!(back.alpha(), &p);
        prop_assert_eq!(MonFunctorSpec::from_type(&back, "t").unwrap(), f);
    }

    #[test]
    fn decomposition(p in upoly(4), m in module()) {
        let f = MonFunctorSpec::from_type(&TypeWitness::new(Poly::from_upoly(&p, &s())), "t").unwrap();
        prop_assert!(decompose_check(&f, &m).unwrap().iso);
    }

    #[test]
    fn identity_functor_is_the_identity(m in module()) {
        let f = MonFunctorSpec::parse("t", &t(), "t").unwrap();
        let r = decompose_check(&f, &m).unwrap();
        prop_assert!(r.iso && iso_test(&r.direct, &m).unwrap());
    }

    #[test]
    fn invariant_factors_depend_only_on_the_module(m in endo_pair(4)) {
        let a = m.to_module("t");
        let non_units: Vec<UPoly> = invariant_factors(a.presentation()).unwrap().into_iter().filter(|f| !f.is_unit()).collect();
        prop_assert_eq!(&non_units, &a.canonical_form().unwrap().factors);
    }
}
