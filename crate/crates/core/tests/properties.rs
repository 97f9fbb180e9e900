use std::sync::Arc;

use proptest::prelude::*;

use superalg::algebra::{AlgebraSpec, Element, WordEnv, WordTree};
use superalg::catalog::{self, WMatrix};
use superalg::identities::{check_multilinear_identity, IdentitySpec};
use superalg::math::{
    Field, Fp, Matrix, Monomial, Polynomial, PrimeModulus, Rational, RationalFunction, Ring, ScalarExpr, Specialize,
    Universe,
};
use superalg::order::extract_along;
use superalg::structure::{compute_center, find_unit};

fn uni() -> Universe {
    Universe::new(["x", "y", "z"]).unwrap()
}

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::array::uniform3(0u32..3), rational()), 0..4).prop_map(|terms| {
        let u = uni();
        Polynomial::from_terms(
            &u,
            terms.into_iter().map(|(e, c)| (Monomial::from_exponents(e.to_vec()), c)),
        )
    })
}

fn nonzero_polynomial() -> impl Strategy<Value = Polynomial> {
    polynomial().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RationalFunction> {
    (polynomial(), nonzero_polynomial()).prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

const P: u64 = 1_000_003;

fn point() -> impl Strategy<Value = Vec<Fp>> {
    let m = PrimeModulus::new(P).unwrap();
    prop::collection::vec(1..P, 3).prop_map(move |v| v.into_iter().map(|x| Fp::new(x, m)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_are_reduced(n in -50i64..50, d in 1i64..50, k in 1i64..20) {
        let q = Rational::new(n * k, d * k).unwrap();
        prop_assert_eq!(&q, &Rational::new(n, d).unwrap());
        prop_assert!(q.denom() > &0.into());
        prop_assert_eq!(num_integer::Integer::gcd(q.numer(), q.denom()), if n == 0 { q.denom().clone() } else { 1.into() });
    }

    #[test]
    fn polynomial_ring_laws(p in polynomial(), q in polynomial(), r in polynomial()) {
        prop_assert_eq!(p.add(&q), q.add(&p));
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert!(p.sub(&p).is_zero());
        prop_assert_eq!(p.mul(&Polynomial::one(&uni())), p.clone());
    }

    #[test]
    fn polynomial_display_reparses(p in polynomial()) {
        let back = ScalarExpr::parse(&p.to_string()).unwrap().to_polynomial(&uni()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn fractions_cancel_common_factors(p in polynomial(), q in nonzero_polynomial(), r in nonzero_polynomial()) {
        let a = RationalFunction::new(p.mul(&q), r.mul(&q)).unwrap();
        let b = RationalFunction::new(p, r).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn rational_function_display_reparses(f in ratfunc()) {
        let back = ScalarExpr::parse(&f.to_string()).unwrap().eval_ratfunc(&uni()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn field_laws(f in ratfunc(), g in ratfunc()) {
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        if !g.is_zero() {
            prop_assert_eq!(f.div(&g).unwrap().mul(&g), f.clone());
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in polynomial(), q in polynomial(), pt in point()) {
        let m = PrimeModulus::new(P).unwrap();
        let ev = |x: &Polynomial| x.specialize(m, &pt).unwrap();
        prop_assert_eq!(ev(&p.mul(&q)), ev(&p).mul(&ev(&q)));
        prop_assert_eq!(ev(&p.add(&q)), ev(&p).add(&ev(&q)));
    }

    #[test]
    fn fraction_evaluation_is_a_homomorphism(f in ratfunc(), g in ratfunc(), pt in point()) {
        let m = PrimeModulus::new(P).unwrap();
        let ev = |x: &RationalFunction| x.specialize(m, &pt);
        if let (Ok(a), Ok(b)) = (ev(&f), ev(&g)) {
            prop_assert_eq!(ev(&f.mul(&g)).unwrap(), a.mul(&b));
            prop_assert_eq!(ev(&f.add(&g)).unwrap(), a.add(&b));
        }
    }

    #[test]
    fn rank_plus_nullity(rows in 1usize..5, cols in 1usize..6, seed in prop::collection::vec(-3i64..=3, 30)) {
        let data: Vec<Vec<Rational>> = (0..rows)
            .map(|r| (0..cols).map(|c| Rational::from(seed[r * cols + c])).collect())
            .collect();
        let m = Matrix::from_rows(cols, data).unwrap();
        let kernel = m.kernel(&());
        prop_assert_eq!(m.rank() + kernel.len(), cols);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(Rational::is_zero));
        }
    }
}

fn catalog_algebras() -> Vec<Arc<AlgebraSpec<Rational>>> {
    let (bullet, mask) = catalog::rs_v2m2_default_params::<Rational>(&());
    let w = WMatrix {
        entries: [1, 2, 3, 4].map(Rational::from),
    };
    vec![
        catalog::matrix_rs(2, &()).unwrap(),
        catalog::rs_v2m2(&bullet, &mask, Default::default(), &()).unwrap(),
        catalog::b_nn(3, &()).unwrap(),
        catalog::b_22(&Rational::from(-2), &()).unwrap(),
        catalog::b_44(&w, &()).unwrap(),
    ]
    .into_iter()
    .map(Arc::new)
    .collect()
}

fn element(alg: &Arc<AlgebraSpec<Rational>>, seed: &[i64], offset: usize) -> Element<Rational> {
    let coords = (0..alg.dim()).map(|i| Rational::from(seed[(offset + i) % seed.len()])).collect();
    Element::from_coords(alg, coords).unwrap()
}

fn algebra_and_seed() -> impl Strategy<Value = (usize, Vec<i64>)> {
    (0usize..5, prop::collection::vec(-4i64..=4, 24))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_bilinear((which, seed) in algebra_and_seed(), a in rational(), b in rational()) {
        let alg = &catalog_algebras()[which];
        let (x, y, z) = (element(alg, &seed, 0), element(alg, &seed, 8), element(alg, &seed, 16));
        let lhs = x.scale(&a).add(&y.scale(&b)).unwrap().multiply(&z).unwrap();
        let rhs = x.multiply(&z).unwrap().scale(&a).add(&y.multiply(&z).unwrap().scale(&b)).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = z.multiply(&x.scale(&a).add(&y.scale(&b)).unwrap()).unwrap();
        let rhs = z.multiply(&x).unwrap().scale(&a).add(&z.multiply(&y).unwrap().scale(&b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn products_respect_grading((which, seed) in algebra_and_seed()) {
        let alg = &catalog_algebras()[which];
        let (x, y) = (element(alg, &seed, 0), element(alg, &seed, 8));
        for p in 0..2u8 {
            for q in 0..2u8 {
                let prod = x.homogeneous_part(p).multiply(&y.homogeneous_part(q)).unwrap();
                prop_assert_eq!(prod.homogeneous_part((p + q) % 2), prod);
            }
        }
    }

    #[test]
    fn associator_and_commutator_expand((which, seed) in algebra_and_seed()) {
        let alg = &catalog_algebras()[which];
        let (x, y, z) = (element(alg, &seed, 0), element(alg, &seed, 8), element(alg, &seed, 16));
        let xy = x.multiply(&y).unwrap();
        let expected = xy.multiply(&z).unwrap().sub(&x.multiply(&y.multiply(&z).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(Element::associator(&x, &y, &z).unwrap(), expected);
        let expected = xy.sub(&y.multiply(&x).unwrap()).unwrap();
        prop_assert_eq!(Element::commutator(&x, &y).unwrap(), expected);
    }

    #[test]
    fn words_evaluate_like_products((which, seed) in algebra_and_seed(), c in rational()) {
        let alg = &catalog_algebras()[which];
        let (x, y, z) = (element(alg, &seed, 0), element(alg, &seed, 8), element(alg, &seed, 16));
        let mut env = WordEnv::<Rational>::new(());
        env.bind("x", x.clone());
        env.bind("y", y.clone());
        env.bind("z", z.clone());
        env.scalars.insert("c".into(), c.clone());
        prop_assert_eq!(WordTree::parse("x").unwrap().evaluate(&env).unwrap(), x.clone());
        let w = WordTree::parse("(x y)z").unwrap().evaluate(&env).unwrap();
        prop_assert_eq!(w, x.multiply(&y).unwrap().multiply(&z).unwrap());
        let w = WordTree::parse("{c}(x(y z))").unwrap().evaluate(&env).unwrap();
        prop_assert_eq!(w, x.multiply(&y.multiply(&z).unwrap()).unwrap().scale(&c));
    }

    #[test]
    fn scalar_extraction_round_trips((which, _seed) in algebra_and_seed(), c in rational()) {
        let alg = &catalog_algebras()[which];
        let unit = find_unit(alg).unwrap().unwrap();
        prop_assert_eq!(extract_along(&unit.scale(&c), &unit).unwrap(), c);
    }

    #[test]
    fn center_elements_are_central((which, seed) in algebra_and_seed()) {
        let alg = &catalog_algebras()[which];
        let (x, y) = (element(alg, &seed, 0), element(alg, &seed, 8));
        for c in compute_center(alg).unwrap().basis() {
            prop_assert!(Element::commutator(&c, &x).unwrap().is_zero());
            prop_assert!(Element::associator(&c, &x, &y).unwrap().is_zero());
            prop_assert!(Element::associator(&x, &c, &y).unwrap().is_zero());
            prop_assert!(Element::associator(&x, &y, &c).unwrap().is_zero());
        }
    }

    #[test]
    fn verdicts_are_invariant_under_argument_permutation(which in 0usize..5, perm in Just(vec![0usize, 1, 2]).prop_shuffle()) {
        let alg = &catalog_algebras()[which];
        let mut ids = vec![IdentitySpec::associative(), IdentitySpec::right_symmetric()];
        if alg.is_graded() {
            ids.push(IdentitySpec::right_alternative_super());
        }
        for id in ids {
            let a = check_multilinear_identity(alg, &id).unwrap();
            let b = check_multilinear_identity(alg, &id.permuted(&perm).unwrap()).unwrap();
            prop_assert_eq!(a.verdict, b.verdict, "{} under {:?}", id.name, perm);
            prop_assert_eq!(a.failures, b.failures);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn cli_reports_are_deterministic(seed in 0u64..1000) {
        let seed = seed.to_string();
        let args = ["superalg", "random-check", "--algebra", "b-22", "--identity", "abelian-type",
            "--trials", "10", "--seed", seed.as_str(), "--json"];
        let a = superalg::cli::run(args).stdout;
        let b = superalg::cli::run(args).stdout;
        prop_assert_eq!(a, b);
    }
}
