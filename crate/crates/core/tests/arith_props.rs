use nodal_hilb::arith::{
    determinant_bareiss, determinant_cofactor, elementary_symmetric, parse_poly, ratio, Context, Ctx, Mono, Poly, Rat,
};
use nodal_hilb::vandermonde::{mixed_vdm, CycleRing};
use proptest::prelude::*;

fn ctx5() -> Ctx {
    Context::new(["a", "b", "c", "d", "e"]).unwrap()
}

/// Up to 6 terms, total degree ≤ 6, in 5 variables.
fn poly_strategy() -> impl Strategy<Value = Vec<(Vec<u32>, i64, i64)>> {
    let term = (prop::collection::vec(0u32..=2, 5), -9i64..=9, 1i64..=4).prop_map(|(mut e, n, d)| {
        while e.iter().sum::<u32>() > 6 {
            let k = e.iter().position(|&x| x > 0).unwrap();
            e[k] -= 1;
        }
        (e, n, d)
    });
    prop::collection::vec(term, 0..6)
}

fn build(ctx: &Ctx, terms: &[(Vec<u32>, i64, i64)]) -> Poly {
    Poly::from_terms(ctx, terms.iter().map(|(e, n, d)| (Mono::from_exps(e.clone()), ratio(*n, *d))))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, rng_algorithm: prop::test_runner::RngAlgorithm::ChaCha, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(f in poly_strategy(), g in poly_strategy(), h in poly_strategy()) {
        let c = ctx5();
        let (f, g, h) = (build(&c, &f), build(&c, &g), build(&c, &h));
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn print_parse_round_trip(f in poly_strategy()) {
        let c = ctx5();
        let f = build(&c, &f);
        prop_assert_eq!(parse_poly(&c, &f.to_string()).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, ..ProptestConfig::default() })]

    #[test]
    fn substitution_is_a_homomorphism(f in poly_strategy(), g in poly_strategy(), i1 in poly_strategy(), i2 in poly_strategy()) {
        let c = ctx5();
        let (f, g) = (build(&c, &f), build(&c, &g));
        let (p, q) = (build(&c, &i1), build(&c, &i2));
        let sub = |h: &Poly| h.substitute_polys(&[("a", p.clone()), ("c", q.clone())]).unwrap();
        prop_assert_eq!(sub(&(&f * &g)), &sub(&f) * &sub(&g));
        prop_assert_eq!(sub(&(&f + &g)), &sub(&f) + &sub(&g));
    }

    #[test]
    fn derivative_is_a_derivation(f in poly_strategy(), g in poly_strategy(), v in 0usize..5) {
        let c = ctx5();
        let (f, g) = (build(&c, &f), build(&c, &g));
        prop_assert_eq!((&f * &g).derivative(v), &(&f.derivative(v) * &g) + &(&f * &g.derivative(v)));
    }

    #[test]
    fn eval_is_a_homomorphism(f in poly_strategy(), g in poly_strategy(), pt in prop::collection::vec((-5i64..=5, 1i64..=3), 5)) {
        let c = ctx5();
        let (f, g) = (build(&c, &f), build(&c, &g));
        let pt: Vec<Rat> = pt.into_iter().map(|(n, d)| ratio(n, d)).collect();
        prop_assert_eq!((&f * &g).eval(&pt), f.eval(&pt) * g.eval(&pt));
    }

    #[test]
    fn bareiss_matches_cofactor(n in 1usize..=4, entries in prop::collection::vec(poly_strategy(), 16)) {
        let c = ctx5();
        let mat: Vec<Vec<Poly>> = (0..n).map(|r| (0..n).map(|k| build(&c, &entries[r * 4 + k][..entries[r * 4 + k].len().min(2)])).collect()).collect();
        prop_assert_eq!(determinant_bareiss(&mat).unwrap(), determinant_cofactor(&mat).unwrap());
    }
}

#[test]
fn bareiss_matches_cofactor_on_rational_6x6() {
    let c = ctx5();
    let mut rng = nodal_hilb::rng::seeded(3);
    for _ in 0..20 {
        let mat: Vec<Vec<Poly>> =
            (0..6).map(|_| (0..6).map(|_| Poly::constant(&c, nodal_hilb::rng::small_rat(&mut rng))).collect()).collect();
        assert_eq!(determinant_bareiss(&mat).unwrap(), determinant_cofactor(&mat).unwrap());
    }
}

#[test]
fn bareiss_matches_cofactor_on_suite_matrices() {
    for m in 1..=5 {
        let ring = CycleRing::new(m).unwrap();
        for i in 1..=m {
            let v = mixed_vdm(&ring, i).unwrap();
            assert_eq!(determinant_bareiss(&v.matrix).unwrap(), determinant_cofactor(&v.matrix).unwrap(), "m={m} i={i}");
        }
    }
}

#[test]
fn vieta() {
    for m in 1..=5usize {
        let mut names: Vec<String> = (1..=m).map(|k| format!("x{k}")).collect();
        names.push("X".into());
        let c = Context::new(names).unwrap();
        let big_x = Poly::var_at(&c, m);
        let product = (0..m).fold(Poly::one(&c), |acc, k| &acc * &(&big_x - &Poly::var_at(&c, k)));
        let vars: Vec<usize> = (0..m).collect();
        for k in 0..=m {
            let sigma = elementary_symmetric(&c, &vars, m - k).unwrap();
            let sign = if (m - k) % 2 == 0 { Rat::from_integer(1.into()) } else { Rat::from_integer((-1).into()) };
            let coeff = product.coefficients_in(&[m]).remove(&vec![k as u32]).unwrap_or_else(|| Poly::zero(&c));
            assert_eq!(coeff, sigma.scale(&sign), "m={m} k={k}");
        }
    }
}
