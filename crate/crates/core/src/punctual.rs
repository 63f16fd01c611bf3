//! Length-m ideals at the node `xy = 0`: the boundary ideals, the chain of
//! rational curves joining them, flat limits, and the universal flat
//! deformation `(f, g)` over `xy = t`.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::Rng;

use crate::arith::{Context, Ctx, Mono, Poly, Rat};
use crate::error::{Error, Result};
use crate::groebner::{
    buchberger_with_budget, normal_form, quotient_basis_with_budget, saturate_with_budget, Budget, GroebnerBasis,
    IdealBasis, MonomialOrder, QuotientBasis,
};

/// `ℚ[x, y]/(xy)`, standing in for the complete local ring of the node.
#[derive(Clone, Debug)]
pub struct NodeRing {
    ctx: Ctx,
    relation: Poly,
}

impl Default for NodeRing {
    fn default() -> Self {
        NodeRing::new()
    }
}

impl NodeRing {
    pub fn new() -> Self {
        let ctx = Context::new(["x", "y"]).unwrap();
        let relation = &Poly::var_at(&ctx, 0) * &Poly::var_at(&ctx, 1);
        NodeRing { ctx, relation }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn x(&self) -> Poly {
        Poly::var_at(&self.ctx, 0)
    }

    pub fn y(&self) -> Poly {
        Poly::var_at(&self.ctx, 1)
    }

    pub fn relation(&self) -> &Poly {
        &self.relation
    }

    pub fn order(&self) -> MonomialOrder {
        MonomialOrder::grevlex(&self.ctx)
    }

    /// Staircase of `(gens) + (xy)` in `ℚ[x, y]`.
    pub fn quotient(&self, gens: &[Poly], budget: Budget) -> Result<QuotientBasis> {
        let mut all = gens.to_vec();
        all.push(self.relation.clone());
        quotient_basis_with_budget(&IdealBasis::nonzero(&self.ctx, all)?, &self.order(), budget)
    }

    pub fn groebner(&self, gens: &[Poly], budget: Budget) -> Result<GroebnerBasis> {
        let mut all = gens.to_vec();
        all.push(self.relation.clone());
        buchberger_with_budget(&IdealBasis::nonzero(&self.ctx, all)?, &self.order(), budget)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PunctualKind {
    Boundary { m: usize, i: usize },
    ChainPoint { m: usize, i: usize, a: Rat },
}

#[derive(Clone, Debug)]
pub struct PunctualIdeal {
    pub kind: PunctualKind,
    pub generators: IdealBasis,
}

impl PunctualIdeal {
    pub fn m(&self) -> usize {
        match self.kind {
            PunctualKind::Boundary { m, .. } | PunctualKind::ChainPoint { m, .. } => m,
        }
    }

    /// Colength over the node ring; `None` when infinite.
    pub fn colength(&self, budget: Budget) -> Result<Option<usize>> {
        Ok(NodeRing::new().quotient(self.generators.generators(), budget)?.colength)
    }
}

fn x_pow_y_pow(ring: &NodeRing, ex: usize, ey: usize) -> (Poly, Poly) {
    (ring.x().pow(ex as u32), ring.y().pow(ey as u32))
}

/// `q^m_i = (x^{m+1-i}, y^i)`.
pub fn boundary_ideal(m: usize, i: usize) -> Result<PunctualIdeal> {
    if m == 0 || i == 0 || i > m {
        return Err(Error::Range(format!("boundary ideal needs 1 <= i <= m, got m={m}, i={i}")));
    }
    let ring = NodeRing::new();
    let (gx, gy) = x_pow_y_pow(&ring, m + 1 - i, i);
    Ok(PunctualIdeal { kind: PunctualKind::Boundary { m, i }, generators: IdealBasis::new(ring.ctx(), vec![gx, gy])? })
}

/// `I^m_i(a) = (a x^{m-i} + y^i)`, the interior of the `i`-th chain component.
pub fn chain_ideal(m: usize, i: usize, a: &Rat) -> Result<PunctualIdeal> {
    if i == 0 || i + 1 > m {
        return Err(Error::Range(format!("chain ideal needs 1 <= i <= m-1, got m={m}, i={i}")));
    }
    if a.is_zero() {
        return Err(Error::Precondition("a = 0 is the limit point; use boundary_ideal".into()));
    }
    let ring = NodeRing::new();
    let (px, py) = x_pow_y_pow(&ring, m - i, i);
    let gen = &px.scale(a) + &py;
    Ok(PunctualIdeal {
        kind: PunctualKind::ChainPoint { m, i, a: a.clone() },
        generators: IdealBasis::new(ring.ctx(), vec![gen])?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitDirection {
    /// `a → 0`
    Zero,
    /// `a → ∞`, computed through `b = 1/a → 0`
    Infinity,
}

impl LimitDirection {
    pub fn label(self) -> &'static str {
        match self {
            LimitDirection::Zero => "a->0",
            LimitDirection::Infinity => "a->inf",
        }
    }
}

#[derive(Clone, Debug)]
pub struct FlatLimit {
    pub m: usize,
    pub i: usize,
    pub direction: LimitDirection,
    /// Reduced Gröbner basis (grevlex) of the limit ideal plus `xy`.
    pub basis: GroebnerBasis,
    pub colength: Option<usize>,
    /// The boundary index `j` with `limit = q^m_j`, if any.
    pub boundary: Option<usize>,
}

impl FlatLimit {
    pub fn as_ideal(&self) -> Result<PunctualIdeal> {
        let j = self
            .boundary
            .ok_or_else(|| Error::Verification(format!("flat limit {:?} is not a boundary ideal", self.basis.elements())))?;
        boundary_ideal(self.m, j)
    }
}

/// Flat limit of `I^m_i(a)` as `a` tends to `0` or `∞`: saturate the family
/// by the parameter, then set the parameter to zero.
pub fn flat_limit(m: usize, i: usize, direction: LimitDirection, budget: Budget) -> Result<FlatLimit> {
    if i == 0 || i + 1 > m {
        return Err(Error::Range(format!("flat limit needs 1 <= i <= m-1, got m={m}, i={i}")));
    }
    let param = match direction {
        LimitDirection::Zero => "a",
        LimitDirection::Infinity => "b",
    };
    let fam = Context::new([param, "x", "y"])?;
    let p = Poly::var_at(&fam, 0);
    let x = Poly::var_at(&fam, 1);
    let y = Poly::var_at(&fam, 2);
    let (xs, ys) = (x.pow((m - i) as u32), y.pow(i as u32));
    let gen = match direction {
        LimitDirection::Zero => &(&p * &xs) + &ys,
        LimitDirection::Infinity => &xs + &(&p * &ys),
    };
    let family = IdealBasis::new(&fam, vec![gen, &x * &y])?;
    let sat = saturate_with_budget(&family, &p, budget)?;

    let ring = NodeRing::new();
    let at_zero = sat
        .generators()
        .iter()
        .map(|g| g.specialize(&[(0, Rat::zero())]).to_ctx(ring.ctx()))
        .collect::<Result<Vec<_>>>()?;
    let basis = ring.groebner(&at_zero, budget)?;
    let colength = crate::groebner::staircase(&basis).colength;
    let mut boundary = None;
    for j in 1..=m {
        let q = boundary_ideal(m, j)?;
        if ring.groebner(q.generators.generators(), budget)?.same_ideal(&basis) {
            boundary = Some(j);
            break;
        }
    }
    Ok(FlatLimit { m, i, direction, basis, colength, boundary })
}

#[derive(Clone, Debug)]
pub struct ChainComponent {
    pub i: usize,
    /// `q^m_i`, reached as `a → 0`.
    pub left: usize,
    /// `q^m_{i+1}`, reached as `a → ∞`.
    pub right: usize,
    pub zero_limit: FlatLimit,
    pub infinity_limit: FlatLimit,
}

#[derive(Clone, Debug)]
pub struct ChainDescriptor {
    pub m: usize,
    pub components: Vec<ChainComponent>,
    /// Boundary ideals `q^m_1 .. q^m_m` with their colengths.
    pub nodes: Vec<(PunctualIdeal, Option<usize>)>,
}

/// The punctual Hilbert scheme as a chain of `m − 1` lines. Every colength
/// and both flat limits of every component are verified.
pub fn punctual_chain(m: usize, budget: Budget) -> Result<ChainDescriptor> {
    if m == 0 {
        return Err(Error::Range("m must be at least 1".into()));
    }
    let mut nodes = Vec::with_capacity(m);
    for i in 1..=m {
        let q = boundary_ideal(m, i)?;
        let c = q.colength(budget)?;
        if c != Some(m) {
            return Err(Error::Verification(format!("colength of q^{m}_{i} is {c:?}")));
        }
        nodes.push((q, c));
    }
    let mut components = Vec::with_capacity(m.saturating_sub(1));
    for i in 1..m {
        let zero_limit = flat_limit(m, i, LimitDirection::Zero, budget)?;
        let infinity_limit = flat_limit(m, i, LimitDirection::Infinity, budget)?;
        if zero_limit.boundary != Some(i) || infinity_limit.boundary != Some(i + 1) {
            return Err(Error::Verification(format!(
                "component {i}: limits are {:?} and {:?}",
                zero_limit.boundary, infinity_limit.boundary
            )));
        }
        components.push(ChainComponent { i, left: i, right: i + 1, zero_limit, infinity_limit });
    }
    Ok(ChainDescriptor { m, components, nodes })
}

/// The universal deformation of `q^m_i` over `xy = t`.
#[derive(Clone, Debug)]
pub struct DeformationPair {
    pub m: usize,
    pub i: usize,
    /// Parameters, then `t, x, y`.
    pub ctx: Ctx,
    /// With the determined coefficients substituted.
    pub f: Poly,
    pub g: Poly,
    pub free: Vec<String>,
    /// Name of the determined coefficient and its value in the free ones.
    pub determined: Vec<(String, Poly)>,
    /// Name of the parameter playing the role of `u` (resp. `v`).
    pub u: String,
    pub v: String,
    /// Reduced Gröbner basis of the residual constraints.
    pub constraints: Vec<Poly>,
}

impl DeformationPair {
    pub fn free_count(&self) -> usize {
        self.free.len()
    }

    /// The relation `uv − t` in the deformation context.
    pub fn uv_relation(&self) -> Poly {
        let u = Poly::var(&self.ctx, &self.u).unwrap();
        let v = Poly::var(&self.ctx, &self.v).unwrap();
        &(&u * &v) - &Poly::var(&self.ctx, "t").unwrap()
    }

    /// `y f − v g` and `x g − u f` reduced modulo `xy − t`.
    pub fn flatness_residuals(&self) -> Result<(Poly, Poly)> {
        let c = &self.ctx;
        let (x, y) = (Poly::var(c, "x")?, Poly::var(c, "y")?);
        let (u, v) = (Poly::var(c, &self.u)?, Poly::var(c, &self.v)?);
        let node = node_basis(c)?;
        let r1 = normal_form(&(&(&y * &self.f) - &(&v * &self.g)), &node);
        let r2 = normal_form(&(&(&x * &self.g) - &(&u * &self.f)), &node);
        Ok((r1, r2))
    }

    /// Do the residuals vanish once `uv = t` is imposed?
    pub fn closes_symbolically(&self) -> Result<bool> {
        let mut gens = vec![self.uv_relation()];
        let c = &self.ctx;
        gens.push(&(&Poly::var(c, "x")? * &Poly::var(c, "y")?) - &Poly::var(c, "t")?);
        let gb = buchberger_with_budget(&IdealBasis::new(c, gens)?, &MonomialOrder::default_for(c), Budget::DEFAULT)?;
        let (r1, r2) = self.flatness_residuals()?;
        Ok(gb.contains(&r1) && gb.contains(&r2))
    }

    /// Sample the free parameters (with `t = uv`) and return `(f, g, t)`
    /// specialized into `ℚ[x, y]`.
    pub fn specialize<R: Rng>(&self, rng: &mut R, force_t_zero: bool) -> Result<(Poly, Poly, Rat)> {
        let mut values: Vec<(usize, Rat)> = Vec::new();
        let zero_side = if force_t_zero { Some(rng.gen_bool(0.5)) } else { None };
        let mut uval = Rat::zero();
        let mut vval = Rat::zero();
        for name in &self.free {
            let mut val = crate::rng::nonzero_rat(rng);
            if name == &self.u && zero_side == Some(true) {
                val = Rat::zero();
            }
            if name == &self.v && zero_side == Some(false) {
                val = Rat::zero();
            }
            if name == &self.u {
                uval = val.clone();
            }
            if name == &self.v {
                vval = val.clone();
            }
            values.push((self.ctx.var(name)?, val));
        }
        let t = &uval * &vval;
        values.push((self.ctx.var("t")?, t.clone()));
        let ring = NodeRing::new();
        let f = self.f.specialize(&values).to_ctx(ring.ctx())?;
        let g = self.g.specialize(&values).to_ctx(ring.ctx())?;
        Ok((f, g, t))
    }
}

fn node_basis(ctx: &Ctx) -> Result<GroebnerBasis> {
    let rel = &(&Poly::var(ctx, "x")? * &Poly::var(ctx, "y")?) - &Poly::var(ctx, "t")?;
    GroebnerBasis::assume(ctx, vec![rel], &MonomialOrder::default_for(ctx))
}

/// Colength of `(f, g, xy − t)` in `ℚ[x, y]` at a value of `t`.
pub fn specialized_colength(f: &Poly, g: &Poly, t: &Rat, budget: Budget) -> Result<Option<usize>> {
    let ring = NodeRing::new();
    let rel = &ring.relation - &Poly::constant(ring.ctx(), t.clone());
    let ideal = IdealBasis::nonzero(ring.ctx(), vec![f.clone(), g.clone(), rel])?;
    Ok(quotient_basis_with_budget(&ideal, &ring.order(), budget)?.colength)
}

/// Build `f` (mirroring `F_{i−1}` with `u_{i−1} = 1`) and `g` (mirroring
/// `F_i` with `v_i = 1`) with symbolic coefficients, solve the flatness
/// relations for the determined coefficients, and return the residual
/// constraints.
pub fn universal_deformation(m: usize, i: usize, budget: Budget) -> Result<DeformationPair> {
    if m == 0 || i == 0 || i > m {
        return Err(Error::Range(format!("deformation needs 1 <= i <= m, got m={m}, i={i}")));
    }
    // coefficient names, with the constants of f (i = 1) and g (i = m)
    // doubling as v and u
    let a_names: Vec<String> = (i - 1..m).map(|k| format!("a{k}")).collect();
    let d_names: Vec<String> = (m + 1 - i..m).map(|k| format!("d{k}")).collect();
    let b_names: Vec<String> = (1..i.saturating_sub(1)).map(|l| format!("b{l}")).collect();
    let c_names: Vec<String> = (0..m - i).map(|k| format!("c{k}")).collect();
    let v = if i == 1 { "a0".to_string() } else { "v".to_string() };
    let u = if i == m { "d0".to_string() } else { "u".to_string() };

    let mut names: Vec<String> = Vec::new();
    names.extend(a_names.iter().cloned());
    if i > 1 {
        names.push(v.clone());
    }
    names.extend(b_names.iter().cloned());
    names.extend(d_names.iter().cloned());
    names.push(u.clone());
    names.extend(c_names.iter().cloned());
    names.extend(["t", "x", "y"].map(String::from));
    let ctx = Context::new(names.iter().map(String::as_str))?;
    let var = |n: &str| Poly::var(&ctx, n).unwrap();
    let (x, y) = (var("x"), var("y"));

    // f = x^{m+1-i} + Σ a_{k+i-1} x^k + v y^{i-1} + Σ b_l y^l
    let mut f = x.pow((m + 1 - i) as u32);
    for k in 0..=m - i {
        let name = format!("a{}", k + i - 1);
        if i == 1 && k == 0 {
            f = &f + &var(&v);
        } else {
            f = &f + &(&var(&name) * &x.pow(k as u32));
        }
    }
    if i > 1 {
        f = &f + &(&var(&v) * &y.pow((i - 1) as u32));
    }
    for (l, b) in b_names.iter().enumerate() {
        f = &f + &(&var(b) * &y.pow(l as u32 + 1));
    }
    // g = y^i + Σ d_{m-i+l} y^l + u x^{m-i} + Σ c_k x^k
    let mut g = y.pow(i as u32);
    for (l, d) in d_names.iter().enumerate() {
        g = &g + &(&var(d) * &y.pow(l as u32 + 1));
    }
    g = &g + &(&var(&u) * &x.pow((m - i) as u32));
    for (k, c) in c_names.iter().enumerate() {
        g = &g + &(&var(c) * &x.pow(k as u32));
    }

    let mut unknowns: Vec<String> = b_names.clone();
    unknowns.extend(c_names.iter().cloned());
    if i > 1 {
        unknowns.push(format!("a{}", i - 1));
    }

    let node = node_basis(&ctx)?;
    let xi = ctx.var("x")?;
    let yi = ctx.var("y")?;
    let residual_coeffs = |f: &Poly, g: &Poly| -> Vec<Poly> {
        let r1 = normal_form(&(&(&y * f) - &(&var(&v) * g)), &node);
        let r2 = normal_form(&(&(&x * g) - &(&var(&u) * f)), &node);
        let mut out: Vec<Poly> = Vec::new();
        for r in [r1, r2] {
            out.extend(r.coefficients_in(&[xi, yi]).into_values().filter(|p| !p.is_zero()));
        }
        out
    };

    let mut determined: Vec<(String, Poly)> = Vec::new();
    let mut pending: BTreeSet<String> = unknowns.iter().cloned().collect();
    loop {
        let coeffs = residual_coeffs(&f, &g);
        // a coefficient linear in an open unknown with a constant cofactor
        let pivot = coeffs.iter().find_map(|p| {
            pending.iter().find_map(|name| {
                let idx = ctx.var(name).ok()?;
                if p.degree_in(idx) != Some(1) {
                    return None;
                }
                let parts = p.coefficients_in(&[idx]);
                let lead = parts.get(&vec![1])?;
                if !lead.is_constant() {
                    return None;
                }
                let c = lead.constant_term();
                let rest = parts.get(&vec![0]).cloned().unwrap_or_else(|| Poly::zero(&ctx));
                Some((name.clone(), rest.scale(&(-Rat::one() / c))))
            })
        });
        let Some((name, value)) = pivot else { break };
        f = f.substitute_polys(&[(name.as_str(), value.clone())])?;
        g = g.substitute_polys(&[(name.as_str(), value.clone())])?;
        for (_, earlier) in determined.iter_mut() {
            *earlier = earlier.substitute_polys(&[(name.as_str(), value.clone())])?;
        }
        pending.remove(&name);
        determined.push((name, value));
    }
    if !pending.is_empty() {
        return Err(Error::Model(format!("could not determine {:?} for m={m}, i={i}", pending)));
    }
    determined.sort_by(|a, b| a.0.cmp(&b.0));

    let residuals = residual_coeffs(&f, &g);
    let constraints = if residuals.is_empty() {
        Vec::new()
    } else {
        let order = MonomialOrder::default_for(&ctx);
        buchberger_with_budget(&IdealBasis::new(&ctx, residuals)?, &order, budget)?.elements().to_vec()
    };
    let free: Vec<String> = names
        .iter()
        .filter(|n| !["t", "x", "y"].contains(&n.as_str()) && !determined.iter().any(|(d, _)| d == *n))
        .cloned()
        .collect();
    Ok(DeformationPair { m, i, ctx, f, g, free, determined, u, v, constraints })
}

/// Do the residual constraints generate exactly `(uv − t)`?
pub fn constraints_are_uv(pair: &DeformationPair, budget: Budget) -> Result<bool> {
    let order = MonomialOrder::default_for(&pair.ctx);
    let expected = buchberger_with_budget(&IdealBasis::new(&pair.ctx, vec![pair.uv_relation()])?, &order, budget)?;
    if pair.constraints.is_empty() {
        return Ok(false);
    }
    let got = GroebnerBasis::assume(&pair.ctx, pair.constraints.clone(), &order)?;
    Ok(got.same_ideal(&expected))
}

/// Standard monomials `1, x, .., x^{m-i}, y, .., y^{i-1}` in `ℚ[x, y]`.
pub fn expected_staircase(m: usize, i: usize) -> Vec<Mono> {
    let mut out = vec![Mono::one(2)];
    out.extend((1..=m - i).map(|e| Mono::from_exps(vec![e as u32, 0])));
    out.extend((1..i).map(|e| Mono::from_exps(vec![0, e as u32])));
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, ratio};

    fn b() -> Budget {
        Budget::DEFAULT
    }

    #[test]
    fn boundary_examples() {
        let q = boundary_ideal(2, 1).unwrap();
        let ring = NodeRing::new();
        assert_eq!(q.generators.generators(), &[parse_poly(ring.ctx(), "x^2").unwrap(), ring.y()]);
        assert_eq!(q.colength(b()).unwrap(), Some(2));
        let q = boundary_ideal(3, 2).unwrap();
        assert_eq!(q.generators.generators(), &[parse_poly(ring.ctx(), "x^2").unwrap(), parse_poly(ring.ctx(), "y^2").unwrap()]);
        assert_eq!(q.colength(b()).unwrap(), Some(3));
        assert_eq!(boundary_ideal(1, 1).unwrap().colength(b()).unwrap(), Some(1));
        assert!(matches!(boundary_ideal(2, 3), Err(Error::Range(_))));
    }

    #[test]
    fn chain_examples() {
        for (m, i, a) in [(2, 1, 1), (3, 1, 2), (4, 2, 1)] {
            let c = chain_ideal(m, i, &Rat::from_integer(a.into())).unwrap();
            assert_eq!(c.colength(b()).unwrap(), Some(m), "m={m} i={i}");
        }
        let ring = NodeRing::new();
        let c = chain_ideal(3, 1, &ratio(2, 1)).unwrap();
        assert_eq!(c.generators.generators()[0], parse_poly(ring.ctx(), "2*x^2 + y").unwrap());
        assert!(matches!(chain_ideal(2, 1, &Rat::zero()), Err(Error::Precondition(_))));
        assert!(matches!(chain_ideal(2, 2, &Rat::one()), Err(Error::Range(_))));
    }

    #[test]
    fn flat_limit_examples() {
        let l = flat_limit(2, 1, LimitDirection::Zero, b()).unwrap();
        assert_eq!((l.boundary, l.colength), (Some(1), Some(2)));
        let l = flat_limit(2, 1, LimitDirection::Infinity, b()).unwrap();
        assert_eq!((l.boundary, l.colength), (Some(2), Some(2)));
        let l = flat_limit(3, 2, LimitDirection::Infinity, b()).unwrap();
        assert_eq!(l.boundary, Some(3));
        let ring = NodeRing::new();
        let expected: Vec<Poly> = ["x", "y^3"].iter().map(|s| parse_poly(ring.ctx(), s).unwrap()).collect();
        assert!(ring.groebner(&expected, b()).unwrap().same_ideal(&l.basis));
    }

    #[test]
    fn chain_descriptors() {
        let c = punctual_chain(2, b()).unwrap();
        assert_eq!(c.components.len(), 1);
        assert_eq!((c.components[0].left, c.components[0].right), (1, 2));
        let c = punctual_chain(3, b()).unwrap();
        assert_eq!(c.components.len(), 2);
        assert_eq!(c.components[0].right, c.components[1].left);
        let c = punctual_chain(1, b()).unwrap();
        assert!(c.components.is_empty());
        assert_eq!(c.nodes.len(), 1);
    }

    fn show(pair: &DeformationPair) -> (String, String, Vec<String>) {
        (pair.f.to_string(), pair.g.to_string(), pair.constraints.iter().map(|p| p.to_string()).collect())
    }

    #[test]
    fn deformation_m2_i1() {
        let p = universal_deformation(2, 1, b()).unwrap();
        let ctx = &p.ctx;
        assert_eq!(p.f, parse_poly(ctx, "x^2 + a1*x + a0").unwrap());
        assert_eq!(p.g, parse_poly(ctx, "y + u*x + u*a1").unwrap());
        assert_eq!(p.constraints.len(), 1);
        assert!(constraints_are_uv(&p, b()).unwrap(), "{:?}", show(&p));
        assert_eq!(p.free_count(), 3);
    }

    #[test]
    fn deformation_m3_i2() {
        let p = universal_deformation(3, 2, b()).unwrap();
        let ctx = &p.ctx;
        assert_eq!(p.f, parse_poly(ctx, "x^2 + a2*x + v*d2 + v*y").unwrap());
        assert_eq!(p.g, parse_poly(ctx, "y^2 + d2*y + u*x + u*a2").unwrap());
        assert_eq!(
            p.determined,
            vec![
                ("a1".to_string(), parse_poly(ctx, "v*d2").unwrap()),
                ("c0".to_string(), parse_poly(ctx, "u*a2").unwrap())
            ]
        );
        assert!(constraints_are_uv(&p, b()).unwrap());
        assert_eq!(p.free_count(), 4);
    }

    #[test]
    fn deformation_m1() {
        let p = universal_deformation(1, 1, b()).unwrap();
        let ctx = &p.ctx;
        assert_eq!(p.f, parse_poly(ctx, "x + a0").unwrap());
        assert_eq!(p.g, parse_poly(ctx, "y + d0").unwrap());
        assert!(constraints_are_uv(&p, b()).unwrap());
        assert_eq!(p.free_count(), 2);
    }

    #[test]
    fn deformations_close_and_specialize() {
        let mut rng = crate::rng::seeded(11);
        for m in 1..=4 {
            for i in 1..=m {
                let p = universal_deformation(m, i, b()).unwrap();
                assert_eq!(p.free_count(), m + 1);
                assert!(p.closes_symbolically().unwrap());
                for k in 0..4 {
                    let (f, g, t) = p.specialize(&mut rng, k % 2 == 0).unwrap();
                    assert_eq!(specialized_colength(&f, &g, &t, b()).unwrap(), Some(m), "m={m} i={i} f={f} g={g} t={t}");
                }
            }
        }
    }

    #[test]
    fn staircase_shape() {
        assert_eq!(expected_staircase(2, 1), vec![Mono::one(2), Mono::from_exps(vec![1, 0])]);
        assert_eq!(expected_staircase(3, 2).len(), 3);
    }
}
