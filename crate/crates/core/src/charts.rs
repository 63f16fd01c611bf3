//! The global local model of the relative Hilbert scheme near a node: the
//! chain `C̃` (coordinates `[u_k : v_k]`), the monomials `Z_i`, the scheme
//! `H̃` over the coefficient space `(a, d, t)`, and the ideal generators
//! `F_0 .. F_m`.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::Rng;

use crate::arith::{rat_rank, Context, Ctx, Mono, Poly, Rat};
use crate::error::{Error, Result};
use crate::groebner::{
    buchberger_with_budget, jacobian_rank_at, normal_form, quotient_basis_with_budget, Budget, GroebnerBasis,
    IdealBasis, MonomialOrder,
};
use crate::punctual::expected_staircase;

#[derive(Clone, Debug)]
pub struct ChartModel {
    pub m: usize,
    /// `u_1..u_{m−1}, v_1..v_{m−1}, a_0..a_{m−1}, d_0..d_{m−1}, t, x, y`.
    pub ctx: Ctx,
    pub ctilde: Vec<Poly>,
    pub htilde: Vec<Poly>,
    pub z: Vec<Mono>,
    /// `F_0 .. F_m`.
    pub f: Vec<Poly>,
}

impl ChartModel {
    pub fn var(&self, name: &str) -> Poly {
        Poly::var(&self.ctx, name).unwrap()
    }

    pub fn u(&self, k: usize) -> Poly {
        self.var(&format!("u{k}"))
    }

    pub fn v(&self, k: usize) -> Poly {
        self.var(&format!("v{k}"))
    }

    pub fn t(&self) -> Poly {
        self.var("t")
    }

    pub fn relations(&self) -> Vec<Poly> {
        self.ctilde.iter().chain(&self.htilde).cloned().collect()
    }

    pub fn z_poly(&self, i: usize) -> Poly {
        Poly::term(&self.ctx, self.z[i - 1].clone(), Rat::one())
    }
}

/// Build the model for length `m`. For `m = 1` there is no chain: `H̃` is
/// `a_0 d_0 = t` and the generators are `x + a_0`, `y + d_0`.
pub fn build_chart_model(m: usize) -> Result<ChartModel> {
    if m == 0 {
        return Err(Error::Range("m must be at least 1".into()));
    }
    let mut names: Vec<String> = Vec::new();
    names.extend((1..m).map(|k| format!("u{k}")));
    names.extend((1..m).map(|k| format!("v{k}")));
    names.extend((0..m).map(|k| format!("a{k}")));
    names.extend((0..m).map(|k| format!("d{k}")));
    names.extend(["t", "x", "y"].map(String::from));
    let ctx = Context::new(names)?;
    let var = |n: String| Poly::var(&ctx, &n).unwrap();
    let (t, x, y) = (var("t".into()), var("x".into()), var("y".into()));
    let u = |k: usize| var(format!("u{k}"));
    let v = |k: usize| var(format!("v{k}"));
    // a_m = d_m = 1
    let a = |k: usize| if k == m { Poly::one(&ctx) } else { var(format!("a{k}")) };
    let d = |k: usize| if k == m { Poly::one(&ctx) } else { var(format!("d{k}")) };

    let ctilde: Vec<Poly> = (1..m.saturating_sub(1)).map(|k| &(&v(k) * &u(k + 1)) - &(&t * &(&u(k) * &v(k + 1)))).collect();
    let htilde = if m == 1 {
        vec![&(&a(0) * &d(0)) - &t]
    } else {
        let mut h = vec![&(&a(0) * &u(1)) - &(&t * &v(1))];
        for j in 1..m {
            h.push(&(&a(j) * &u(j)) - &(&d(m - j) * &v(j)));
        }
        h.push(&(&d(0) * &v(m - 1)) - &(&t * &u(m - 1)));
        h
    };
    let z: Vec<Mono> = (1..=m)
        .map(|i| {
            let mut e = vec![0u32; ctx.len()];
            for k in 1..i {
                e[k - 1] = 1;
            }
            for k in i..m {
                e[m - 1 + k - 1] = 1;
            }
            Mono::from_exps(e)
        })
        .collect();

    let mut f = Vec::with_capacity(m + 1);
    f.push((0..=m).fold(Poly::zero(&ctx), |acc, k| &acc + &(&a(k) * &x.pow(k as u32))));
    for i in 1..m {
        let xs = (i..=m).fold(Poly::zero(&ctx), |acc, k| &acc + &(&a(k) * &x.pow((k - i) as u32)));
        let ys = (1..=i).fold(Poly::zero(&ctx), |acc, k| &acc + &(&d(m - i + k) * &y.pow(k as u32)));
        f.push(&(&u(i) * &xs) + &(&v(i) * &ys));
    }
    f.push((0..=m).fold(Poly::zero(&ctx), |acc, k| &acc + &(&d(k) * &y.pow(k as u32))));
    Ok(ChartModel { m, ctx, ctilde, htilde, z, f })
}

/// Exponent table for `Z_i Z_j = t^e Z_{i+1} Z_{j−1}` modulo the chain
/// relations.
#[derive(Clone, Debug)]
pub struct ZRelationReport {
    pub m: usize,
    /// `(i, j, least e)`.
    pub exponents: Vec<(usize, usize, Option<u32>)>,
}

impl ZRelationReport {
    pub fn adjacent_are_one(&self) -> bool {
        self.exponents.iter().filter(|(i, j, _)| j == &(i + 2)).all(|(_, _, e)| *e == Some(1))
    }

    pub fn all_expected(&self) -> bool {
        self.exponents.iter().all(|(i, j, e)| *e == Some((j - i - 1) as u32))
    }
}

pub fn verify_z_relations(model: &ChartModel, budget: Budget) -> Result<ZRelationReport> {
    let m = model.m;
    if m < 3 {
        return Err(Error::Range("Z relations need m >= 3".into()));
    }
    let mut names: Vec<String> = (1..m).map(|k| format!("u{k}")).collect();
    names.extend((1..m).map(|k| format!("v{k}")));
    names.push("t".into());
    let small = Context::new(names)?;
    let rels = model.ctilde.iter().map(|p| p.to_ctx(&small)).collect::<Result<Vec<_>>>()?;
    let gb = buchberger_with_budget(&IdealBasis::new(&small, rels)?, &MonomialOrder::default_for(&small), budget)?;
    let zs = (1..=m).map(|i| model.z_poly(i).to_ctx(&small)).collect::<Result<Vec<_>>>()?;
    let t = Poly::var(&small, "t")?;
    let mut exponents = Vec::new();
    for i in 1..=m {
        for j in i + 2..=m {
            let lhs = &zs[i - 1] * &zs[j - 1];
            let base = &zs[i] * &zs[j - 2];
            let found = (1..=m as u32).find(|&e| normal_form(&(&lhs - &(&t.pow(e) * &base)), &gb).is_zero());
            if found.is_none() {
                return Err(Error::Verification(format!("Z_{i} Z_{j}: no exponent <= {m} closes the relation")));
            }
            exponents.push((i, j, found));
        }
    }
    Ok(ZRelationReport { m, exponents })
}

/// The chart `U_i = {Z_i ≠ 0}` with `u_1..u_{i−1} = v_i..v_{m−1} = 1`.
/// Every relation then solves for one variable, so the chart is an affine
/// space with `m + 1` coordinates: `p = v_{i−1}` (`a_0` on `U_1`),
/// `q = u_i` (`d_0` on `U_m`), `d_{m−j}` for `j < i`, `a_j` for `j ≥ i`,
/// and `t = pq`.
#[derive(Clone, Debug)]
pub struct ChartParametrization {
    pub i: usize,
    /// Free coordinates, then `x, y`.
    pub ctx: Ctx,
    pub free: Vec<String>,
    /// Image of each model variable, indexed like the model context.
    pub images: Vec<Poly>,
}

impl ChartParametrization {
    pub fn map(&self, f: &Poly) -> Poly {
        f.compose(&self.images, &self.ctx)
    }

    pub fn image_of(&self, model: &ChartModel, name: &str) -> Poly {
        self.images[model.ctx.var(name).unwrap()].clone()
    }
}

fn chart_free_names(m: usize, i: usize) -> (String, String, Vec<String>) {
    let p = if i == 1 { "a0".to_string() } else { format!("v{}", i - 1) };
    let q = if i == m { "d0".to_string() } else { format!("u{i}") };
    let mut rest: Vec<String> = (1..i).map(|j| format!("d{}", m - j)).collect();
    rest.extend((i..m).map(|j| format!("a{j}")));
    (p, q, rest)
}

pub fn chart_parametrization(model: &ChartModel, i: usize) -> Result<ChartParametrization> {
    let m = model.m;
    if i == 0 || i > m {
        return Err(Error::Range(format!("chart index {i} outside 1..={m}")));
    }
    let (p_name, q_name, rest) = chart_free_names(m, i);
    let mut free = vec![p_name.clone(), q_name.clone()];
    free.extend(rest.iter().cloned());
    let mut names = free.clone();
    names.extend(["x", "y"].map(String::from));
    let ctx = Context::new(names)?;
    let pv = |n: &str| Poly::var(&ctx, n).unwrap();
    let (p, q) = (pv(&p_name), pv(&q_name));
    let t = &p * &q;
    let one = Poly::one(&ctx);

    let mut images: Vec<Option<Poly>> = vec![None; model.ctx.len()];
    let mut set = |name: &str, val: Poly| images[model.ctx.var(name).unwrap()] = Some(val);
    set("t", t.clone());
    set("x", pv("x"));
    set("y", pv("y"));
    let u_img = |k: usize| if k < i { one.clone() } else { &t.pow((k - i) as u32) * &q };
    let v_img = |k: usize| if k >= i { one.clone() } else { &t.pow((i - 1 - k) as u32) * &p };
    for k in 1..m {
        set(&format!("u{k}"), u_img(k));
        set(&format!("v{k}"), v_img(k));
    }
    for n in &rest {
        set(n, pv(n));
    }
    for j in 1..i {
        set(&format!("a{j}"), &pv(&format!("d{}", m - j)) * &v_img(j));
    }
    for j in i..m {
        if j >= 1 {
            set(&format!("d{}", m - j), &pv(&format!("a{j}")) * &u_img(j));
        }
    }
    if m == 1 {
        set("a0", p.clone());
        set("d0", q.clone());
    } else {
        set("a0", if i == 1 { p.clone() } else { &t * &v_img(1) });
        set("d0", if i == m { q.clone() } else { &t * &u_img(m - 1) });
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(k, img)| img.ok_or_else(|| Error::Model(format!("no image for {}", model.ctx.name(k)))))
        .collect::<Result<Vec<_>>>()?;
    Ok(ChartParametrization { i, ctx, free, images })
}

/// Are all chain and `H̃` relations identically zero on the chart?
pub fn parametrization_satisfies_relations(model: &ChartModel, par: &ChartParametrization) -> bool {
    model.relations().iter().all(|r| par.map(r).is_zero())
}

/// How `F_j` is obtained from the chart's pair `(F_{i−1}, F_i)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Reduction {
    /// `F_j ≡ μ F_{target}` modulo the relations.
    Factor { target: usize, mu: String },
    /// Only ideal membership could be shown.
    Member,
    Fails,
}

#[derive(Clone, Debug)]
pub struct ChartReductionReport {
    pub m: usize,
    pub i: usize,
    pub reductions: Vec<(usize, Reduction)>,
}

impl ChartReductionReport {
    pub fn all_generated(&self) -> bool {
        self.reductions.iter().all(|(_, r)| *r != Reduction::Fails)
    }
}

/// For every `F_j` other than `F_{i−1}, F_i`, search for a monomial factor
/// `μ` with `F_j ≡ μ F_{i−1}` or `F_j ≡ μ F_i` on `U_i`, falling back to
/// ideal membership.
pub fn verify_chart_reduction(model: &ChartModel, i: usize, budget: Budget) -> Result<ChartReductionReport> {
    let m = model.m;
    let par = chart_parametrization(model, i)?;
    let pc = &par.ctx;
    let (x, y) = (Poly::var(pc, "x")?, Poly::var(pc, "y")?);
    let t = par.image_of(model, "t");
    let node = GroebnerBasis::assume(pc, vec![&(&x * &y) - &t], &MonomialOrder::default_for(pc))?;
    let fs: Vec<Poly> = model.f.iter().map(|f| par.map(f)).collect();

    let mut extra: Vec<(String, Poly)> = vec![("1".into(), Poly::one(pc))];
    for k in 1..i {
        extra.push((format!("v{k}"), par.image_of(model, &format!("v{k}"))));
    }
    for k in i..m {
        extra.push((format!("u{k}"), par.image_of(model, &format!("u{k}"))));
    }
    let mut candidates: Vec<(String, Poly)> = Vec::new();
    for e in 0..=m as u32 {
        for (base, bp) in [("x", &x), ("y", &y)] {
            if e == 0 && base == "y" {
                continue;
            }
            let pw = bp.pow(e);
            for (en, ep) in &extra {
                let label = match (e, en.as_str()) {
                    (0, _) => en.clone(),
                    (_, "1") => format!("{base}^{e}"),
                    _ => format!("{en}*{base}^{e}"),
                };
                candidates.push((label, &pw * ep));
            }
        }
    }

    let targets: Vec<usize> = [i.wrapping_sub(1), i].into_iter().filter(|&s| s <= m).collect();
    let mut membership: Option<GroebnerBasis> = None;
    let mut reductions = Vec::new();
    for j in 0..=m {
        if targets.contains(&j) {
            continue;
        }
        let found = targets.iter().find_map(|&s| {
            candidates.iter().find_map(|(label, mu)| {
                let diff = &fs[j] - &(mu * &fs[s]);
                normal_form(&diff, &node).is_zero().then(|| Reduction::Factor { target: s, mu: label.clone() })
            })
        });
        let r = match found {
            Some(r) => r,
            None => {
                if membership.is_none() {
                    let mut gens: Vec<Poly> = targets.iter().map(|&s| fs[s].clone()).collect();
                    gens.push(&(&x * &y) - &t);
                    membership = Some(buchberger_with_budget(
                        &IdealBasis::nonzero(pc, gens)?,
                        &MonomialOrder::default_for(pc),
                        budget,
                    )?);
                }
                if membership.as_ref().unwrap().contains(&fs[j]) {
                    Reduction::Member
                } else {
                    Reduction::Fails
                }
            }
        };
        reductions.push((j, r));
    }
    Ok(ChartReductionReport { m, i, reductions })
}

/// A point of `H̃` on the chart `U_i`, with a value for every model
/// variable except `x, y`.
#[derive(Clone, Debug)]
pub struct ChartPoint {
    pub chart: usize,
    pub values: Vec<(String, Rat)>,
}

impl ChartPoint {
    pub fn value(&self, name: &str) -> Option<&Rat> {
        self.values.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn satisfies(&self, model: &ChartModel) -> bool {
        let vals: Vec<(&str, Rat)> = self.values.iter().map(|(n, v)| (n.as_str(), v.clone())).collect();
        model.relations().iter().all(|r| r.specialize_named(&vals).map(|p| p.is_zero()).unwrap_or(false))
    }
}

/// Random point of `U_i`; with `force_t_zero` one of the two coordinates
/// whose product is `t` is set to 0.
pub fn sample_chart_point<R: Rng>(model: &ChartModel, i: usize, rng: &mut R, force_t_zero: bool) -> Result<ChartPoint> {
    let par = chart_parametrization(model, i)?;
    let zero_slot = if force_t_zero { Some(rng.gen_range(0..2usize)) } else { None };
    let mut point: Vec<Rat> = Vec::with_capacity(par.ctx.len());
    for (k, _) in par.free.iter().enumerate() {
        let v = if Some(k) == zero_slot { Rat::zero() } else { crate::rng::nonzero_rat(rng) };
        point.push(v);
    }
    point.extend([Rat::zero(), Rat::zero()]);
    let mut values = Vec::new();
    for (k, name) in model.ctx.names().iter().enumerate() {
        if name == "x" || name == "y" {
            continue;
        }
        values.push((name.clone(), par.images[k].eval(&point)));
    }
    Ok(ChartPoint { chart: i, values })
}

/// The chart origin: `p = q = 0` and all free coefficients zero, i.e. the
/// boundary ideal `q^m_i` sitting at the node of `C̃_0`.
pub fn boundary_point(model: &ChartModel, i: usize) -> Result<ChartPoint> {
    let par = chart_parametrization(model, i)?;
    let point = vec![Rat::zero(); par.ctx.len()];
    let values = model
        .ctx
        .names()
        .iter()
        .enumerate()
        .filter(|(_, n)| *n != "x" && *n != "y")
        .map(|(k, n)| (n.clone(), par.images[k].eval(&point)))
        .collect();
    Ok(ChartPoint { chart: i, values })
}

#[derive(Clone, Debug)]
pub struct FlatnessSample {
    pub t_zero: bool,
    pub colength: Option<usize>,
    pub staircase_ok: bool,
}

#[derive(Clone, Debug)]
pub struct FlatnessReport {
    pub m: usize,
    pub i: usize,
    pub samples: Vec<FlatnessSample>,
}

impl FlatnessReport {
    pub fn passed(&self) -> bool {
        self.samples.iter().any(|s| s.t_zero) && self.samples.iter().all(|s| s.colength == Some(self.m) && s.staircase_ok)
    }
}

/// Weighted order on `ℚ[x, y]` under which the staircase on `U_i` is
/// `1, x, .., x^{m−i}, y, .., y^{i−1}`: weights `x = i`, `y = m + 1 − i`.
pub fn chart_order(node: &Ctx, m: usize, i: usize) -> Result<MonomialOrder> {
    MonomialOrder::weighted(node, vec![i as u32, (m + 1 - i) as u32])
}

/// Quotient of `(F_{i−1}, F_i, xy − t)` at `spec_count` seeded points of
/// `U_i` (every third one with `t = 0`).
pub fn verify_flatness_chart<R: Rng>(
    model: &ChartModel,
    i: usize,
    spec_count: usize,
    rng: &mut R,
    budget: Budget,
) -> Result<FlatnessReport> {
    let m = model.m;
    let node = Context::new(["x", "y"])?;
    let order = chart_order(&node, m, i)?;
    let expected: BTreeSet<Mono> = expected_staircase(m, i).into_iter().collect();
    let mut samples = Vec::with_capacity(spec_count);
    for s in 0..spec_count.max(1) {
        let t_zero = s % 3 == 0;
        let pt = sample_chart_point(model, i, rng, t_zero)?;
        if !pt.satisfies(model) {
            return Err(Error::Model(format!("sampled point off H̃ on chart {i}")));
        }
        let vals: Vec<(&str, Rat)> = pt.values.iter().map(|(n, v)| (n.as_str(), v.clone())).collect();
        let mut gens = Vec::new();
        for f in [&model.f[i - 1], &model.f[i]] {
            gens.push(f.specialize_named(&vals)?.to_ctx(&node)?);
        }
        let t = pt.value("t").unwrap().clone();
        gens.push(&(&Poly::var_at(&node, 0) * &Poly::var_at(&node, 1)) - &Poly::constant(&node, t.clone()));
        let q = quotient_basis_with_budget(&IdealBasis::nonzero(&node, gens)?, &order, budget)?;
        let got: BTreeSet<Mono> = q.standard_monomials.iter().cloned().collect();
        samples.push(FlatnessSample { t_zero: t.is_zero(), colength: q.colength, staircase_ok: got == expected });
    }
    Ok(FlatnessReport { m, i, samples })
}

/// Chart-affine ambient of `U_i`: the non-normalized chain coordinates,
/// `a`, `d` and `t` (`3m` variables).
fn chart_ambient(model: &ChartModel, i: usize) -> Result<(Ctx, Vec<Poly>)> {
    let m = model.m;
    let mut names: Vec<String> = (1..i).map(|k| format!("v{k}")).collect();
    names.extend((i..m).map(|k| format!("u{k}")));
    names.extend((0..m).map(|k| format!("a{k}")));
    names.extend((0..m).map(|k| format!("d{k}")));
    names.push("t".into());
    let ctx = Context::new(names)?;
    let mut fixed: Vec<(usize, Rat)> = Vec::new();
    for k in 1..i {
        fixed.push((model.ctx.var(&format!("u{k}"))?, Rat::one()));
    }
    for k in i..m {
        fixed.push((model.ctx.var(&format!("v{k}"))?, Rat::one()));
    }
    let rels = model.relations().iter().map(|r| r.specialize(&fixed).to_ctx(&ctx)).collect::<Result<Vec<_>>>()?;
    Ok((ctx, rels))
}

/// Jacobian rank of the relations at a chart point, in the chart-affine
/// ambient.
pub fn jacobian_rank(model: &ChartModel, pt: &ChartPoint) -> Result<usize> {
    let (ctx, rels) = chart_ambient(model, pt.chart)?;
    let point: Vec<(&str, Rat)> = ctx
        .names()
        .iter()
        .map(|n| pt.value(n).cloned().map(|v| (n.as_str(), v)).ok_or_else(|| Error::UnknownVariable(n.clone())))
        .collect::<Result<Vec<_>>>()?;
    jacobian_rank_at(&rels, &point)
}

#[derive(Clone, Debug)]
pub struct SmoothnessReport {
    pub m: usize,
    /// `(chart, rank, boundary?)`.
    pub ranks: Vec<(usize, usize, bool)>,
}

impl SmoothnessReport {
    pub fn passed(&self) -> bool {
        self.ranks.iter().all(|(_, r, _)| *r == 2 * self.m - 1)
    }
}

/// Jacobian ranks at the `m` boundary points and at `points` others.
pub fn smoothness_check(model: &ChartModel, points: &[ChartPoint]) -> Result<SmoothnessReport> {
    let mut ranks = Vec::new();
    for i in 1..=model.m {
        ranks.push((i, jacobian_rank(model, &boundary_point(model, i)?)?, true));
    }
    for pt in points {
        if !pt.satisfies(model) {
            return Err(Error::Precondition(format!("point on chart {} is not on H̃", pt.chart)));
        }
        ranks.push((pt.chart, jacobian_rank(model, pt)?, false));
    }
    Ok(SmoothnessReport { m: model.m, ranks })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberClass {
    Point,
    Chain(usize),
}

/// Values of `a_0..a_{m−1}`, `d_0..d_{m−1}` and `t`.
#[derive(Clone, Debug)]
pub struct FiberValues {
    pub a: Vec<Rat>,
    pub d: Vec<Rat>,
    pub t: Rat,
}

impl FiberValues {
    /// Coefficients of `∏(x − x_k)` and `∏(y − y_k)` for points with
    /// `x_k y_k = t`.
    pub fn from_points(points: &[(Rat, Rat)]) -> Result<Self> {
        let m = points.len();
        if m == 0 {
            return Err(Error::Range("need at least one point".into()));
        }
        let t = &points[0].0 * &points[0].1;
        if points.iter().any(|(x, y)| x * y != t) {
            return Err(Error::Precondition("points do not share a value of xy".into()));
        }
        let monic = |roots: Vec<&Rat>| -> Vec<Rat> {
            // coefficients low to high, leading 1 dropped
            let mut c = vec![Rat::one()];
            for r in roots {
                let mut next = vec![Rat::zero(); c.len() + 1];
                for (k, ck) in c.iter().enumerate() {
                    next[k + 1] += ck;
                    next[k] -= ck * r;
                }
                c = next;
            }
            c.pop();
            c
        };
        Ok(FiberValues {
            a: monic(points.iter().map(|p| &p.0).collect()),
            d: monic(points.iter().map(|p| &p.1).collect()),
            t,
        })
    }
}

/// Classify the fiber of `H̃` over given `(a, d, t)`.
///
/// For `t ≠ 0` the chain relations force `[u_k : v_k] = [t^{k−1} u_1 : v_1]`
/// and `H̃` becomes a linear system in `(u_1, v_1)`. For `t = 0` the chain
/// is the union of lines `C̃_i` (factors before `i` at `[1:0]`, after `i`
/// at `[0:1]`) and the system is solved line by line.
pub fn classify_fiber(m: usize, vals: &FiberValues) -> Result<FiberClass> {
    if vals.a.len() != m || vals.d.len() != m {
        return Err(Error::Precondition(format!("need {m} values of a and d")));
    }
    if m == 1 {
        return if &vals.a[0] * &vals.d[0] == vals.t {
            Ok(FiberClass::Point)
        } else {
            Err(Error::Model("a0 d0 != t: empty fiber".into()))
        };
    }
    let (a, d, t) = (&vals.a, &vals.d, &vals.t);
    if !t.is_zero() {
        let tp = |e: usize| num_traits::pow(t.clone(), e);
        let mut rows = vec![vec![a[0].clone(), -t.clone()]];
        for j in 1..m {
            rows.push(vec![&a[j] * &tp(j - 1), -d[m - j].clone()]);
        }
        rows.push(vec![-tp(m - 1), d[0].clone()]);
        return match rat_rank(&rows) {
            1 => Ok(FiberClass::Point),
            r => Err(Error::Model(format!("t != 0 fiber system has rank {r}"))),
        };
    }

    // points as (line, [u:v]) with the first nonzero coordinate scaled to 1
    let mut whole = vec![false; m];
    let mut points: BTreeSet<(usize, (Rat, Rat))> = BTreeSet::new();
    for i in 1..m {
        let others_ok = (1..i).all(|j| a[j].is_zero())
            && (i + 1..m).all(|j| d[m - j].is_zero())
            && (i == 1 || a[0].is_zero())
            && (i == m - 1 || d[0].is_zero());
        if !others_ok {
            continue;
        }
        let mut rows = vec![vec![a[i].clone(), -d[m - i].clone()]];
        if i == 1 {
            rows.push(vec![a[0].clone(), Rat::zero()]);
        }
        if i == m - 1 {
            rows.push(vec![Rat::zero(), d[0].clone()]);
        }
        match rat_rank(&rows) {
            0 => whole[i] = true,
            1 => {
                let row = rows.iter().find(|r| !r[0].is_zero() || !r[1].is_zero()).unwrap();
                // α u + β v = 0  →  [u : v] = [−β : α]
                let (u, v) = (-row[1].clone(), row[0].clone());
                let pt = if u.is_zero() { (Rat::zero(), Rat::one()) } else { (Rat::one(), &v / &u) };
                // [0:1] on line i is the node [1:0] of line i − 1
                let canon = if pt == (Rat::zero(), Rat::one()) && i > 1 { (i - 1, (Rat::one(), Rat::zero())) } else { (i, pt) };
                points.insert(canon);
            }
            _ => {}
        }
    }
    let r = whole.iter().filter(|w| **w).count();
    if r == 0 {
        return match points.len() {
            1 => Ok(FiberClass::Point),
            n => Err(Error::Model(format!("t = 0 fiber has {n} isolated points"))),
        };
    }
    let lines: Vec<usize> = (1..m).filter(|&i| whole[i]).collect();
    if lines.windows(2).any(|w| w[1] != w[0] + 1) {
        return Err(Error::Model(format!("whole lines {lines:?} are not consecutive")));
    }
    for (i, (u, v)) in &points {
        let on_line = whole[*i] || (u.is_one() && v.is_zero() && *i + 1 < m && whole[*i + 1]);
        if !on_line {
            return Err(Error::Model(format!("isolated point on line {i} off the chain {lines:?}")));
        }
    }
    if r > m - 1 {
        return Err(Error::Model(format!("chain of {r} lines for m = {m}")));
    }
    Ok(FiberClass::Chain(r))
}

/// What the fiber should be: a chain of `n − 1` lines when `n ≥ 2` of the
/// points sit at the node, otherwise a point.
pub fn expected_fiber(points: &[(Rat, Rat)]) -> FiberClass {
    let n = points.iter().filter(|(x, y)| x.is_zero() && y.is_zero()).count();
    if n >= 2 {
        FiberClass::Chain(n - 1)
    } else {
        FiberClass::Point
    }
}

/// Random configuration of `m` points on `xy = t`; when `t = 0`, exactly
/// `at_node` of them are at the origin and the rest on either branch.
pub fn sample_configuration<R: Rng>(m: usize, rng: &mut R, t_zero: bool, at_node: usize) -> Vec<(Rat, Rat)> {
    let mut out = Vec::with_capacity(m);
    if !t_zero {
        let t = crate::rng::nonzero_rat(rng);
        for _ in 0..m {
            let x = crate::rng::nonzero_rat(rng);
            out.push((x.clone(), &t / &x));
        }
        return out;
    }
    for k in 0..m {
        if k < at_node {
            out.push((Rat::zero(), Rat::zero()));
        } else if rng.gen_bool(0.5) {
            out.push((crate::rng::nonzero_rat(rng), Rat::zero()));
        } else {
            out.push((Rat::zero(), crate::rng::nonzero_rat(rng)));
        }
    }
    out
}

/// Row of `Z_1..Z_m` restricted to `C̃_i`, as polynomials in `u_i, v_i`.
pub fn z_restriction_degrees(model: &ChartModel) -> Result<Vec<Vec<Poly>>> {
    let m = model.m;
    if m < 2 {
        return Err(Error::Range("restriction to chain components needs m >= 2".into()));
    }
    let mut table = Vec::new();
    for i in 1..m {
        let mut fixed: Vec<(usize, Rat)> = Vec::new();
        for k in 1..m {
            if k == i {
                continue;
            }
            let (uval, vval) = if k < i { (Rat::one(), Rat::zero()) } else { (Rat::zero(), Rat::one()) };
            fixed.push((model.ctx.var(&format!("u{k}"))?, uval));
            fixed.push((model.ctx.var(&format!("v{k}"))?, vval));
        }
        table.push((1..=m).map(|j| model.z_poly(j).specialize(&fixed)).collect());
    }
    Ok(table)
}

/// `Z_j|C̃_i = 0` unless `j ∈ {i, i+1}`, `Z_i|C̃_i = v_i`, `Z_{i+1}|C̃_i = u_i`.
pub fn z_restriction_pattern_ok(model: &ChartModel, table: &[Vec<Poly>]) -> bool {
    table.iter().enumerate().all(|(row, zs)| {
        let i = row + 1;
        zs.iter().enumerate().all(|(col, z)| {
            let j = col + 1;
            if j == i {
                *z == model.v(i)
            } else if j == i + 1 {
                *z == model.u(i)
            } else {
                z.is_zero()
            }
        })
    })
}
