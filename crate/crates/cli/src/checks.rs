use nodal_hilb::arith::Mono;
use nodal_hilb::charts::{self, FiberClass, Reduction};
use nodal_hilb::euler::{self, EulerMode, FamilyParams};
use nodal_hilb::groebner::Budget;
use nodal_hilb::punctual::{self, LimitDirection};
use nodal_hilb::rng::{nonzero_rat, stream};
use nodal_hilb::tautological::{self as taut, FockPolynomial, QMonomial};
use nodal_hilb::vandermonde::{self as vdm, VdmFamily};
use nodal_hilb::Result;
use serde_json::{json, Value};

use crate::{Module, SuiteConfig, SweepSpec};

pub struct Env {
    pub seed: u64,
    pub spec_count: usize,
    pub budget: Budget,
    pub sweep: Option<SweepSpec>,
}

pub struct Outcome {
    pub pass: bool,
    pub details: Value,
}

impl Outcome {
    fn new(pass: bool, details: Value) -> Result<Outcome> {
        Ok(Outcome { pass, details })
    }
}

type Run = Box<dyn Fn(&Env, &str) -> Result<Outcome> + Send + Sync>;

pub struct CheckSpec {
    pub id: String,
    pub module: Module,
    pub params: Value,
    pub run: Run,
}

fn spec(id: String, module: Module, params: Value, run: impl Fn(&Env, &str) -> Result<Outcome> + Send + Sync + 'static) -> CheckSpec {
    CheckSpec { id, module, params, run: Box::new(run) }
}

/// Every check enabled by the config, in registration order.
pub fn registry(cfg: &SuiteConfig) -> Vec<CheckSpec> {
    let mut out = Vec::new();
    for module in &cfg.modules {
        match module {
            Module::Punctual => punctual_checks(cfg, &mut out),
            Module::Charts => chart_checks(cfg, &mut out),
            Module::Vdm => vdm_checks(cfg, &mut out),
            Module::Euler => euler_checks(&mut out),
            Module::Taut => taut_checks(cfg, &mut out),
        }
    }
    out
}

fn mono_str(m: &Mono, names: &[&str]) -> String {
    let parts: Vec<String> = m
        .exps()
        .iter()
        .zip(names)
        .filter(|(e, _)| **e > 0)
        .map(|(e, n)| if *e == 1 { n.to_string() } else { format!("{n}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn punctual_checks(cfg: &SuiteConfig, out: &mut Vec<CheckSpec>) {
    let p = Module::Punctual;
    for m in cfg.ms(2) {
        out.push(spec(format!("punctual.boundary_colength.m{m}"), p, json!({ "m": m }), move |env, _| {
            let mut colengths = Vec::new();
            for i in 1..=m {
                colengths.push(punctual::boundary_ideal(m, i)?.colength(env.budget)?);
            }
            Outcome::new(colengths.iter().all(|c| *c == Some(m)), json!({ "colengths": colengths }))
        }));
        out.push(spec(format!("punctual.chain_colength.m{m}"), p, json!({ "m": m, "samples": 5 }), move |env, id| {
            let mut rng = stream(env.seed, id);
            let mut rows = Vec::new();
            let mut ok = true;
            for i in 1..m {
                for _ in 0..5 {
                    let a = nonzero_rat(&mut rng);
                    let c = punctual::chain_ideal(m, i, &a)?.colength(env.budget)?;
                    ok &= c == Some(m);
                    rows.push(json!({ "i": i, "a": a.to_string(), "colength": c }));
                }
            }
            Outcome::new(ok, json!({ "samples": rows }))
        }));
        out.push(spec(format!("punctual.flat_limits.m{m}"), p, json!({ "m": m }), move |env, _| {
            let mut rows = Vec::new();
            let mut ok = true;
            for i in 1..m {
                let z = punctual::flat_limit(m, i, LimitDirection::Zero, env.budget)?;
                let inf = punctual::flat_limit(m, i, LimitDirection::Infinity, env.budget)?;
                ok &= z.boundary == Some(i) && inf.boundary == Some(i + 1);
                rows.push(json!({ "i": i, "zero": z.boundary, "infinity": inf.boundary }));
            }
            Outcome::new(ok, json!({ "components": rows }))
        }));
    }
    for m in cfg.ms(1) {
        for i in 1..=m {
            out.push(spec(format!("punctual.deformation.m{m}.i{i}"), p, json!({ "m": m, "i": i }), move |env, id| {
                let pair = punctual::universal_deformation(m, i, env.budget)?;
                let closes = pair.closes_symbolically()?;
                let uv = punctual::constraints_are_uv(&pair, env.budget)?;
                let mut rng = stream(env.seed, id);
                let mut colengths = Vec::new();
                for k in 0..env.spec_count {
                    let (f, g, t) = pair.specialize(&mut rng, k % 3 == 0)?;
                    colengths.push(punctual::specialized_colength(&f, &g, &t, env.budget)?);
                }
                let flat = colengths.iter().all(|c| *c == Some(m));
                let details = json!({
                    "f": pair.f.to_string(),
                    "g": pair.g.to_string(),
                    "free": pair.free,
                    "determined": pair.determined.iter().map(|(n, v)| json!([n, v.to_string()])).collect::<Vec<_>>(),
                    "constraints": pair.constraints.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "closes": closes,
                    "constraints_are_uv": uv,
                    "specialized_colengths_ok": flat,
                });
                Outcome::new(closes && uv && flat && pair.free_count() == m + 1, details)
            }));
        }
    }
}

fn chart_checks(cfg: &SuiteConfig, out: &mut Vec<CheckSpec>) {
    let c = Module::Charts;
    for m in cfg.ms(1) {
        out.push(spec(format!("charts.model.m{m}"), c, json!({ "m": m }), move |_, _| {
            let model = charts::build_chart_model(m)?;
            let counts = (model.ctilde.len(), model.htilde.len(), model.z.len(), model.f.len());
            let expected = (m.saturating_sub(2), if m == 1 { 1 } else { m + 1 }, m, m + 1);
            let degrees_ok = model.z.iter().all(|z| z.degree() == (m - 1) as u32);
            Outcome::new(
                counts == expected && degrees_ok,
                json!({ "ctilde": counts.0, "htilde": counts.1, "z": counts.2, "f": counts.3 }),
            )
        }));
        for i in 1..=m {
            out.push(spec(format!("charts.reduction.m{m}.i{i}"), c, json!({ "m": m, "i": i }), move |env, _| {
                let model = charts::build_chart_model(m)?;
                let rep = charts::verify_chart_reduction(&model, i, env.budget)?;
                let rows: Vec<Value> = rep
                    .reductions
                    .iter()
                    .map(|(j, r)| match r {
                        Reduction::Factor { target, mu } => json!({ "j": j, "target": target, "mu": mu }),
                        Reduction::Member => json!({ "j": j, "member": true }),
                        Reduction::Fails => json!({ "j": j, "member": false }),
                    })
                    .collect();
                Outcome::new(rep.all_generated(), json!({ "reductions": rows }))
            }));
            out.push(spec(format!("charts.flatness.m{m}.i{i}"), c, json!({ "m": m, "i": i }), move |env, id| {
                let model = charts::build_chart_model(m)?;
                let mut rng = stream(env.seed, id);
                let rep = charts::verify_flatness_chart(&model, i, env.spec_count, &mut rng, env.budget)?;
                let basis: Vec<String> =
                    punctual::expected_staircase(m, i).iter().map(|mo| mono_str(mo, &["x", "y"])).collect();
                Outcome::new(
                    rep.passed(),
                    json!({
                        "samples": rep.samples.len(),
                        "t_zero_samples": rep.samples.iter().filter(|s| s.t_zero).count(),
                        "basis": basis,
                        "bad": rep.samples.iter().filter(|s| s.colength != Some(m) || !s.staircase_ok).count(),
                    }),
                )
            }));
        }
        out.push(spec(format!("charts.smoothness.m{m}"), c, json!({ "m": m, "points": 50 }), move |env, id| {
            let model = charts::build_chart_model(m)?;
            let mut rng = stream(env.seed, id);
            let mut pts = Vec::with_capacity(50);
            for k in 0..50 {
                pts.push(charts::sample_chart_point(&model, 1 + k % m, &mut rng, k % 5 == 0)?);
            }
            let rep = charts::smoothness_check(&model, &pts)?;
            let ranks: Vec<usize> = rep.ranks.iter().map(|r| r.1).collect();
            Outcome::new(
                rep.passed(),
                json!({ "expected_rank": 2 * m - 1, "min_rank": ranks.iter().min(), "max_rank": ranks.iter().max(), "points": ranks.len() }),
            )
        }));
    }
    for m in cfg.ms(3) {
        out.push(spec(format!("charts.z_relations.m{m}"), c, json!({ "m": m }), move |env, _| {
            let model = charts::build_chart_model(m)?;
            let rep = charts::verify_z_relations(&model, env.budget)?;
            let rows: Vec<Value> = rep
                .exponents
                .iter()
                .map(|(i, j, e)| json!({ "i": i, "j": j, "exponent": e, "printed": 1 }))
                .collect();
            Outcome::new(rep.adjacent_are_one() && rep.all_expected(), json!({ "exponents": rows }))
        }));
    }
    for m in cfg.ms(2) {
        out.push(spec(format!("charts.fibers.m{m}"), c, json!({ "m": m, "generic_seeds": 50 }), move |env, id| {
            let mut rng = stream(env.seed, id);
            let mut realized = std::collections::BTreeSet::new();
            let mut mismatches = Vec::new();
            let mut generic_points = 0;
            for k in 0..50 {
                let pts = charts::sample_configuration(m, &mut rng, false, 0);
                let got = charts::classify_fiber(m, &charts::FiberValues::from_points(&pts)?)?;
                generic_points += usize::from(got == FiberClass::Point);
                if got != FiberClass::Point {
                    mismatches.push(json!({ "sample": k, "t_zero": false }));
                }
            }
            for at_node in 0..=m {
                for _ in 0..env.spec_count.min(10) {
                    let pts = charts::sample_configuration(m, &mut rng, true, at_node);
                    let got = charts::classify_fiber(m, &charts::FiberValues::from_points(&pts)?)?;
                    if got != charts::expected_fiber(&pts) {
                        mismatches.push(json!({ "at_node": at_node, "t_zero": true }));
                    }
                    realized.insert(match got {
                        FiberClass::Point => 0,
                        FiberClass::Chain(r) => r,
                    });
                }
            }
            let all_lengths = (0..m).all(|r| realized.contains(&r));
            Outcome::new(
                mismatches.is_empty() && all_lengths && generic_points == 50,
                json!({
                    "generic_point_frequency": format!("{generic_points}/50"),
                    "chain_lengths": realized.iter().filter(|r| **r > 0).collect::<Vec<_>>(),
                    "mismatches": mismatches,
                }),
            )
        }));
        out.push(spec(format!("charts.z_restriction.m{m}"), c, json!({ "m": m }), move |_, _| {
            let model = charts::build_chart_model(m)?;
            let table = charts::z_restriction_degrees(&model)?;
            let rows: Vec<Vec<String>> = table.iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect();
            Outcome::new(charts::z_restriction_pattern_ok(&model, &table), json!({ "table": rows }))
        }));
    }
}

fn vdm_checks(cfg: &SuiteConfig, out: &mut Vec<CheckSpec>) {
    let v = Module::Vdm;
    for m in cfg.ms(2) {
        out.push(spec(format!("vdm.syzygies.m{m}"), v, json!({ "m": m }), move |_, _| {
            let fam = VdmFamily::new(m)?;
            let signs = vdm::find_sign_assignment(&fam)?;
            let rep = vdm::verify_syzygies(&fam, &signs)?;
            let linear: Vec<Value> = rep
                .linear
                .iter()
                .map(|l| {
                    json!({ "family": l.family, "i": l.i, "j": l.j, "printed_exponent": l.printed_exponent,
                            "used_exponent": l.used_exponent, "holds": l.holds })
                })
                .collect();
            let quadratic: Vec<Value> = rep
                .quadratic
                .iter()
                .map(|q| json!({ "i": q.i, "j": q.j, "exponent": q.exponent, "printed_exponent": q.printed_exponent }))
                .collect();
            Outcome::new(
                rep.all_linear_hold() && rep.quadratic_exponents_expected(),
                json!({ "signs": signs.0, "linear": linear, "quadratic": quadratic }),
            )
        }));
        out.push(spec(format!("vdm.transfer.m{m}"), v, json!({ "m": m }), move |_, _| {
            let fam = VdmFamily::new(m)?;
            let signs = vdm::find_sign_assignment(&fam)?;
            let mut rows = Vec::new();
            let mut ok = true;
            for i in 2..=m {
                let tc = vdm::g1_transfer_identity(&fam, &signs, i)?;
                ok &= tc.sign.is_some();
                rows.push(json!({ "i": i, "exponent": tc.exponent, "sign": tc.sign }));
            }
            Outcome::new(ok, json!({ "identities": rows }))
        }));
        out.push(spec(format!("vdm.orders.m{m}"), v, json!({ "m": m }), move |_, _| {
            let fam = VdmFamily::new(m)?;
            let signs = vdm::find_sign_assignment(&fam)?;
            let syz = vdm::verify_syzygies(&fam, &signs)?;
            let table = vdm::verify_discriminant_pullback(&fam)?;
            let additive = vdm::order_additivity(&table, &syz);
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|r| json!({ "i": r.i, "k": r.k, "order": r.order, "oracle": r.oracle, "printed": r.printed }))
                .collect();
            let printed_zero_locus = table.rows.iter().all(|r| (r.order == 0) == (r.printed == 0));
            Outcome::new(
                table.depends_only_on_k && table.zero_locus_ok && additive && table.matches_oracle(),
                json!({
                    "rows": rows,
                    "depends_only_on_k": table.depends_only_on_k,
                    "zero_locus_ok": table.zero_locus_ok,
                    "additive": additive,
                    "printed_zero_locus_agrees": printed_zero_locus,
                    "printed_matches": table.rows.iter().all(|r| r.order == r.printed),
                }),
            )
        }));
    }
    if cfg.ms(2).contains(&2) {
        out.push(spec("vdm.cone_m2".into(), v, json!({ "m": 2 }), |_, _| {
            let rels = vdm::cone_relations_m2()?;
            let ok = rels.iter().all(|(_, h)| *h);
            Outcome::new(ok, json!({ "relations": rels.iter().map(|(n, h)| json!([n, h])).collect::<Vec<_>>() }))
        }));
    }
}

fn euler_checks(out: &mut Vec<CheckSpec>) {
    let e = Module::Euler;
    out.push(spec("euler.sweep".into(), e, json!({}), |env, _| {
        let grid = env.sweep.clone().unwrap_or_default();
        let rows = euler::sweep(&grid.g, &grid.gb, &grid.m, &grid.sigma);
        let disagree: Vec<Value> = rows.iter().filter(|r| !r.agree()).map(row_json).collect();
        let mut details = json!({ "cases": rows.len(), "disagreements": disagree });
        if env.sweep.is_some() {
            details["rows"] = rows.iter().map(row_json).collect();
        }
        Outcome::new(disagree.is_empty(), details)
    }));
    out.push(spec("euler.alternating_identity".into(), e, json!({ "a": "-20..20", "b": "0..20" }), |_, _| {
        let mut bad = Vec::new();
        for a in -20..=20i64 {
            for b in 0..=20u32 {
                let (l, r) = euler::alternating_binomial_identity(a, b);
                if l != r {
                    bad.push(json!([a, b]));
                }
            }
        }
        Outcome::new(bad.is_empty(), json!({ "cases": 41 * 21, "failures": bad }))
    }));
    out.push(spec("euler.blowup_model".into(), e, json!({ "g": 0, "m": "1..10" }), |_, _| {
        let mut bad = Vec::new();
        let mut cases = 0;
        for m in 1..=10u32 {
            for gb in 0..=3u32 {
                for sigma in [0u32, 1, 2, 5] {
                    cases += 1;
                    let closed = euler::euler_hilb(FamilyParams { g: 0, gb, sigma, m }, EulerMode::Closed);
                    if closed != euler::euler_blowup_model(m, gb, sigma) {
                        bad.push(json!([m, gb, sigma]));
                    }
                }
            }
        }
        Outcome::new(bad.is_empty(), json!({ "cases": cases, "failures": bad }))
    }));
    out.push(spec("euler.series".into(), e, json!({ "e": "-6..6", "m": "0..8" }), |_, _| {
        let ok = (-6..=6).all(|ex| (0..=8).all(|m| euler::series_coefficient(ex, m) == euler::euler_sym(ex, m)));
        Outcome::new(ok, json!({}))
    }));
}

fn row_json(r: &euler::SweepRow) -> Value {
    json!({
        "g": r.params.g, "gB": r.params.gb, "m": r.params.m, "sigma": r.params.sigma,
        "closed": r.closed.to_string(), "stratified": r.stratified.to_string(), "oracle": r.oracle.to_string(),
        "agree": r.agree(),
    })
}

fn monomial_json(m: &QMonomial) -> Value {
    m.factors().iter().map(|(n, c)| json!([n, c.name()])).collect()
}

fn fock_json(p: &FockPolynomial) -> Value {
    p.terms().iter().map(|(m, c)| json!({ "factors": monomial_json(m), "coeff": c.to_string() })).collect()
}

fn taut_checks(cfg: &SuiteConfig, out: &mut Vec<CheckSpec>) {
    let t = Module::Taut;
    for m in cfg.ms(1) {
        let m32 = m as u32;
        out.push(spec(format!("taut.equivalence.m{m}"), t, json!({ "m": m }), move |_, _| {
            let (geo, stats) = taut::geo_expansion_with_stats(m32);
            let part = taut::partition_formula(m32);
            let lehn = taut::lehn_expansion(m32);
            Outcome::new(
                geo == part && part == lehn && stats.roots_minimal,
                json!({
                    "choice_functions": stats.choice_functions,
                    "geo": fock_json(&geo),
                    "partition": fock_json(&part),
                    "lehn": fock_json(&lehn),
                }),
            )
        }));
        for conv in cfg.theorem2.clone() {
            out.push(spec(
                format!("taut.theorem2.m{m}.{}", conv.name()),
                t,
                json!({ "m": m, "convention": conv.name() }),
                move |_, _| {
                    let rep = taut::theorem2_compare(m32, conv);
                    let again = taut::theorem2_compare(m32, conv);
                    let mismatched: Vec<Value> = rep
                        .mismatched
                        .iter()
                        .map(|(mo, l, r)| json!({ "factors": monomial_json(mo), "printed": l.to_string(), "expansion": r.to_string() }))
                        .collect();
                    let deterministic = rep.lhs == again.lhs && rep.rhs == again.rhs && rep.mismatched == again.mismatched;
                    // a diff, reported rather than asserted
                    Outcome::new(
                        deterministic,
                        json!({
                            "equal": rep.equal(),
                            "matched": rep.matched.len(),
                            "mismatched": mismatched,
                            "printed": fock_json(&rep.lhs),
                            "expansion": fock_json(&rep.rhs),
                        }),
                    )
                },
            ));
        }
    }
    out.push(spec("taut.count_trees".into(), t, json!({ "k": "1..7" }), |_, _| {
        let rows: Vec<(u64, u64)> = (1..=7u64)
            .map(|k| {
                let set: Vec<u64> = (1..=k).collect();
                (taut::count_trees(&set), (1..k).product())
            })
            .collect();
        Outcome::new(rows.iter().all(|(a, b)| a == b), json!({ "counts": rows.iter().map(|r| r.0).collect::<Vec<_>>() }))
    }));
    out.push(spec("taut.m1_specialization".into(), t, json!({ "m": 1 }), |_, _| {
        let expected = FockPolynomial::q(1, taut::CohSymbol::Unit).add(&FockPolynomial::q(1, taut::CohSymbol::Ell));
        let got = taut::geo_expansion(1);
        Outcome::new(got == expected, json!({ "expansion": got.to_string() }))
    }));
}
