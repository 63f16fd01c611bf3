use nodal_hilb::arith::{parse_poly, Context, Ctx, Mono, Poly};
use nodal_hilb::charts::build_chart_model;
use nodal_hilb::groebner::{buchberger, normal_form, quotient_basis, IdealBasis, MonomialOrder};
use nodal_hilb::punctual::{boundary_ideal, chain_ideal};
use nodal_hilb::rng::{seeded, small_rat, SuiteRng};
use nodal_hilb::vandermonde::CycleRing;
use rand::seq::SliceRandom;
use rand::Rng;

fn random_poly(ctx: &Ctx, rng: &mut SuiteRng, terms: usize, max_exp: u32) -> Poly {
    Poly::from_terms(
        ctx,
        (0..terms).map(|_| (Mono::from_exps((0..ctx.len()).map(|_| rng.gen_range(0..=max_exp)).collect()), small_rat(rng))),
    )
}

fn suite_ideals() -> Vec<IdealBasis> {
    let node = Context::new(["x", "y"]).unwrap();
    let xy = parse_poly(&node, "x*y").unwrap();
    let mut out = Vec::new();
    for m in 2..=5 {
        for i in 1..=m {
            out.push(boundary_ideal(m, i).unwrap().generators.with(std::slice::from_ref(&xy)).unwrap());
        }
        for i in 1..m {
            out.push(chain_ideal(m, i, &nodal_hilb::arith::ratio(-3, 2)).unwrap().generators.with(std::slice::from_ref(&xy)).unwrap());
        }
    }
    let fam = Context::new(["a", "x", "y"]).unwrap();
    out.push(IdealBasis::new(&fam, vec![parse_poly(&fam, "a*x^2 + y^2").unwrap(), parse_poly(&fam, "x*y").unwrap()]).unwrap());
    for m in 3..=5 {
        let model = build_chart_model(m).unwrap();
        out.push(IdealBasis::new(&model.ctx, model.ctilde.clone()).unwrap());
    }
    out
}

#[test]
fn normal_form_is_idempotent_and_linear() {
    let mut rng = seeded(11);
    for ideal in suite_ideals().iter().take(12) {
        let c = ideal.ctx().clone();
        let gb = buchberger(ideal, &MonomialOrder::default_for(&c)).unwrap();
        for _ in 0..100 {
            let f = random_poly(&c, &mut rng, 4, 3);
            let g = random_poly(&c, &mut rng, 4, 3);
            let nf = normal_form(&f, &gb);
            assert_eq!(normal_form(&nf, &gb), nf);
            assert_eq!(normal_form(&(&f + &g), &gb), normal_form(&(&nf + &normal_form(&g, &gb)), &gb));
        }
    }
}

#[test]
fn cycle_ring_rewriting_is_confluent() {
    let mut rng = seeded(12);
    for m in 1..=5 {
        let ring = CycleRing::new(m).unwrap();
        for _ in 0..100 {
            let f = random_poly(ring.ctx(), &mut rng, 5, 2);
            assert_eq!(ring.reduce(&f), ring.reduce_groebner(&f), "m={m}");
        }
    }
}

#[test]
fn reduced_basis_ignores_generator_order() {
    let mut rng = seeded(13);
    for ideal in suite_ideals() {
        let c = ideal.ctx().clone();
        let order = MonomialOrder::default_for(&c);
        let reference = buchberger(&ideal, &order).unwrap();
        for _ in 0..3 {
            let mut gens = ideal.generators().to_vec();
            gens.shuffle(&mut rng);
            let again = buchberger(&IdealBasis::new(&c, gens).unwrap(), &order).unwrap();
            assert_eq!(again.elements(), reference.elements());
        }
    }
}

#[test]
fn monomial_colength_matches_lattice_count() {
    let mut rng = seeded(14);
    let c = Context::new(["x", "y", "z"]).unwrap();
    for _ in 0..40 {
        let pure: Vec<u32> = (0..3).map(|_| rng.gen_range(1..=4)).collect();
        let mut gens: Vec<Mono> = (0..3)
            .map(|k| {
                let mut e = vec![0; 3];
                e[k] = pure[k];
                Mono::from_exps(e)
            })
            .collect();
        for _ in 0..rng.gen_range(0..4) {
            gens.push(Mono::from_exps((0..3).map(|k| rng.gen_range(0..pure[k])).collect()));
        }
        let polys: Vec<Poly> = gens.iter().map(|m| Poly::term(&c, m.clone(), nodal_hilb::arith::rat(1))).collect();
        let q = quotient_basis(&IdealBasis::new(&c, polys).unwrap(), &MonomialOrder::grevlex(&c)).unwrap();
        let mut count = 0;
        for a in 0..pure[0] {
            for b in 0..pure[1] {
                for d in 0..pure[2] {
                    let p = [a, b, d];
                    if !gens.iter().any(|g| g.exps().iter().zip(p).all(|(e, v)| *e <= v)) {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(q.colength, Some(count), "{gens:?}");
    }
}
