//! Desk-scale Gröbner machinery: monomial orders, Buchberger's algorithm,
//! normal forms, staircases, saturation and Jacobian ranks.

mod buchberger;
mod order;

use std::collections::{BTreeSet, VecDeque};

use crate::arith::{compatible, rat_rank, Ctx, Mono, Poly, Rat};
use crate::error::{Error, Result};

use buchberger::{Counter, Terms};
pub use order::{MonomialOrder, OrderKind};

/// Cap on elementary reduction steps for one Gröbner computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub usize);

impl Budget {
    pub const DEFAULT: Budget = Budget(1_000_000);
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

/// Generators of an ideal in a fixed context.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealBasis {
    ctx: Ctx,
    generators: Vec<Poly>,
}

impl IdealBasis {
    pub fn new(ctx: &Ctx, generators: Vec<Poly>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Precondition("an ideal basis needs at least one generator".into()));
        }
        for g in &generators {
            if !compatible(g.ctx(), ctx) {
                return Err(Error::ContextMismatch);
            }
            if g.is_zero() {
                return Err(Error::Precondition("zero generator".into()));
            }
        }
        Ok(IdealBasis { ctx: ctx.clone(), generators })
    }

    /// Like `new`, dropping zero generators; the zero ideal is rejected.
    pub fn nonzero(ctx: &Ctx, generators: Vec<Poly>) -> Result<Self> {
        IdealBasis::new(ctx, generators.into_iter().filter(|g| !g.is_zero()).collect())
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn with(&self, extra: &[Poly]) -> Result<IdealBasis> {
        let mut g = self.generators.clone();
        g.extend(extra.iter().cloned());
        IdealBasis::new(&self.ctx, g)
    }
}

/// Reduced Gröbner basis: monic elements, sorted by leading monomial
/// (largest first).
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ctx: Ctx,
    order: MonomialOrder,
    elements: Vec<Poly>,
    terms: Vec<Terms>,
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[Poly] {
        &self.elements
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn leading_monomials(&self) -> Vec<Mono> {
        self.terms.iter().map(|t| t.lead().unwrap().0.clone()).collect()
    }

    /// Is the ideal the whole ring?
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].lead().unwrap().0.is_one()
    }

    pub fn contains(&self, f: &Poly) -> bool {
        normal_form(f, self).is_zero()
    }

    /// Wrap a list already known to be a Gröbner basis (e.g. generators with
    /// pairwise coprime leading monomials). The list is interreduced.
    pub fn assume(ctx: &Ctx, gens: Vec<Poly>, order: &MonomialOrder) -> Result<Self> {
        let terms: Vec<Terms> = gens.iter().filter(|g| !g.is_zero()).map(|g| Terms::from_poly(g, order)).collect();
        let mut counter = Counter::new(Budget::DEFAULT);
        let terms = buchberger::interreduce(terms, order, &mut counter)?;
        Ok(GroebnerBasis::from_terms(ctx, order, terms))
    }

    fn from_terms(ctx: &Ctx, order: &MonomialOrder, terms: Vec<Terms>) -> Self {
        let elements = terms.iter().map(|t| t.to_poly(ctx)).collect();
        GroebnerBasis { ctx: ctx.clone(), order: order.clone(), elements, terms }
    }

    /// Equality of the generated ideals (reduced bases are unique).
    pub fn same_ideal(&self, other: &GroebnerBasis) -> bool {
        self.order == other.order && self.elements == other.elements
    }
}

pub fn buchberger(ideal: &IdealBasis, order: &MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with_budget(ideal, order, Budget::DEFAULT)
}

pub fn buchberger_with_budget(ideal: &IdealBasis, order: &MonomialOrder, budget: Budget) -> Result<GroebnerBasis> {
    if order.nvars() != ideal.ctx.len() {
        return Err(Error::Precondition("monomial order does not match the context".into()));
    }
    let gens: Vec<Terms> = ideal.generators.iter().map(|g| Terms::from_poly(g, order)).collect();
    let terms = buchberger::buchberger(&gens, order, budget)?;
    Ok(GroebnerBasis::from_terms(&ideal.ctx, order, terms))
}

/// Remainder of `f` on full division by the basis.
pub fn normal_form(f: &Poly, gb: &GroebnerBasis) -> Poly {
    // a reduction by a Gröbner basis always terminates; no budget needed
    let mut counter = Counter::new(Budget(usize::MAX));
    let t = Terms::from_poly(f, &gb.order);
    buchberger::reduce(&t, &gb.terms, &gb.order, &mut counter).expect("unbounded budget").to_poly(&gb.ctx)
}

/// Staircase of an ideal: monomials outside the leading-term ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientBasis {
    /// Ascending in the order used. Empty when the colength is infinite.
    pub standard_monomials: Vec<Mono>,
    /// `None` stands for an infinite-dimensional quotient.
    pub colength: Option<usize>,
}

pub fn quotient_basis(ideal: &IdealBasis, order: &MonomialOrder) -> Result<QuotientBasis> {
    quotient_basis_with_budget(ideal, order, Budget::DEFAULT)
}

pub fn quotient_basis_with_budget(ideal: &IdealBasis, order: &MonomialOrder, budget: Budget) -> Result<QuotientBasis> {
    let gb = buchberger_with_budget(ideal, order, budget)?;
    Ok(staircase(&gb))
}

/// Standard monomials of a Gröbner basis.
pub fn staircase(gb: &GroebnerBasis) -> QuotientBasis {
    let lts = gb.leading_monomials();
    let n = gb.ctx.len();
    if gb.is_unit() {
        return QuotientBasis { standard_monomials: Vec::new(), colength: Some(0) };
    }
    // finite iff every variable has a pure power among the leading terms
    let finite = (0..n).all(|v| lts.iter().any(|m| m.exp(v) > 0 && (0..n).all(|w| w == v || m.exp(w) == 0)));
    if !finite {
        return QuotientBasis { standard_monomials: Vec::new(), colength: None };
    }
    let mut seen: BTreeSet<Mono> = BTreeSet::new();
    let mut queue: VecDeque<Mono> = VecDeque::new();
    let one = Mono::one(n);
    if !lts.iter().any(|l| l.divides(&one)) {
        seen.insert(one.clone());
        queue.push_back(one);
    }
    while let Some(m) = queue.pop_front() {
        for v in 0..n {
            let next = m.mul(&Mono::var(n, v, 1));
            if seen.contains(&next) || lts.iter().any(|l| l.divides(&next)) {
                continue;
            }
            seen.insert(next.clone());
            queue.push_back(next);
        }
    }
    let mut out: Vec<Mono> = seen.into_iter().collect();
    out.sort_by(|a, b| gb.order.compare(a, b));
    QuotientBasis { colength: Some(out.len()), standard_monomials: out }
}

/// `I : s^∞`, by adjoining `1 - w s` for a fresh `w` and eliminating `w`.
/// The result is a Gröbner basis for the default order of the context.
pub fn saturate(ideal: &IdealBasis, s: &Poly) -> Result<IdealBasis> {
    saturate_with_budget(ideal, s, Budget::DEFAULT)
}

pub fn saturate_with_budget(ideal: &IdealBasis, s: &Poly, budget: Budget) -> Result<IdealBasis> {
    if s.is_zero() {
        return Err(Error::Precondition("cannot saturate by zero".into()));
    }
    if !compatible(s.ctx(), &ideal.ctx) {
        return Err(Error::ContextMismatch);
    }
    let ctx = &ideal.ctx;
    let wname = ctx.fresh_name("w");
    let big = ctx.extend(&[wname.as_str()])?;
    let w = big.var(&wname)?;
    let mut gens = ideal.generators.iter().map(|g| g.to_ctx(&big)).collect::<Result<Vec<_>>>()?;
    let s_big = s.to_ctx(&big)?;
    gens.push(&Poly::one(&big) - &(&Poly::var_at(&big, w) * &s_big));
    let rest = MonomialOrder::default_for(&big);
    let order = MonomialOrder::elimination(&[w], &rest)?;
    let gb = buchberger_with_budget(&IdealBasis::new(&big, gens)?, &order, budget)?;
    let kept = gb
        .elements()
        .iter()
        .filter(|g| !g.involves(w))
        .map(|g| g.to_ctx(ctx))
        .collect::<Result<Vec<_>>>()?;
    IdealBasis::new(ctx, kept)
}

/// Rank over ℚ of the Jacobian of `gens` (columns: all context variables)
/// at a point of their common zero set.
pub fn jacobian_rank_at(gens: &[Poly], point: &[(&str, Rat)]) -> Result<usize> {
    let Some(first) = gens.first() else {
        return Ok(0);
    };
    let ctx = first.ctx().clone();
    let mut values: Vec<Option<Rat>> = vec![None; ctx.len()];
    for (name, v) in point {
        values[ctx.var(name)?] = Some(v.clone());
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(k, v)| v.ok_or_else(|| Error::Precondition(format!("no value for `{}`", ctx.name(k)))))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::with_capacity(gens.len());
    for g in gens {
        if !compatible(g.ctx(), &ctx) {
            return Err(Error::ContextMismatch);
        }
        let val = g.eval(&values);
        if val != Rat::from_integer(0.into()) {
            return Err(Error::Precondition(format!("point is not on the variety: {g} = {val}")));
        }
        rows.push((0..ctx.len()).map(|v| g.derivative(v).eval(&values)).collect::<Vec<_>>());
    }
    Ok(rat_rank(&rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, rat, Context};

    fn ideal(ctx: &Ctx, gens: &[&str]) -> IdealBasis {
        IdealBasis::new(ctx, gens.iter().map(|g| parse_poly(ctx, g).unwrap()).collect()).unwrap()
    }

    fn polys(ctx: &Ctx, gens: &[&str]) -> Vec<Poly> {
        gens.iter().map(|g| parse_poly(ctx, g).unwrap()).collect()
    }

    #[test]
    fn lex_example_by_hand() {
        let ctx = Context::new(["x", "y"]).unwrap();
        let gb = buchberger(&ideal(&ctx, &["x^2 - 1", "x*y - 1"]), &MonomialOrder::lex(&ctx)).unwrap();
        assert_eq!(gb.elements(), polys(&ctx, &["x - y", "y^2 - 1"]).as_slice());
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let ctx = Context::new(["x", "y"]).unwrap();
        let gb = buchberger(&ideal(&ctx, &["x^3", "y"]), &MonomialOrder::grevlex(&ctx)).unwrap();
        assert_eq!(gb.elements(), polys(&ctx, &["x^3", "y"]).as_slice());
    }

    #[test]
    fn coprime_leading_terms_are_kept() {
        let ctx = Context::new(["x1", "y1", "x2", "y2", "t"]).unwrap();
        let gb = buchberger(&ideal(&ctx, &["x1*y1 - t", "x2*y2 - t"]), &MonomialOrder::default_for(&ctx)).unwrap();
        let mut got: Vec<String> = gb.elements().iter().map(|p| p.to_string()).collect();
        got.sort();
        assert_eq!(got, vec!["x1*y1 - t", "x2*y2 - t"]);
    }

    #[test]
    fn normal_form_examples() {
        let ctx = Context::new(["x", "y", "t"]).unwrap();
        let ord = MonomialOrder::default_for(&ctx);
        let gb = buchberger(&ideal(&ctx, &["x*y - t"]), &ord).unwrap();
        assert_eq!(normal_form(&parse_poly(&ctx, "x^2*y").unwrap(), &gb), parse_poly(&ctx, "t*x").unwrap());
        assert!(normal_form(&parse_poly(&ctx, "y*(x*y - t)").unwrap(), &gb).is_zero());

        let ctx = Context::new(["x1", "y1", "x2", "y2", "t"]).unwrap();
        let ord = MonomialOrder::default_for(&ctx);
        let gb = buchberger(&ideal(&ctx, &["x1*y1 - t", "x2*y2 - t"]), &ord).unwrap();
        assert_eq!(normal_form(&parse_poly(&ctx, "x1*y1*x2*y2").unwrap(), &gb), parse_poly(&ctx, "t^2").unwrap());
    }

    #[test]
    fn quotient_basis_examples() {
        let ctx = Context::new(["x", "y"]).unwrap();
        let ord = MonomialOrder::grevlex(&ctx);
        let q = quotient_basis(&ideal(&ctx, &["x^2", "y", "x*y"]), &ord).unwrap();
        assert_eq!(q.colength, Some(2));
        assert_eq!(q.standard_monomials, vec![Mono::one(2), Mono::from_exps(vec![1, 0])]);
        assert_eq!(quotient_basis(&ideal(&ctx, &["x + y", "x*y"]), &ord).unwrap().colength, Some(2));
        let q = quotient_basis(&ideal(&ctx, &["x", "y"]), &ord).unwrap();
        assert_eq!((q.colength, q.standard_monomials.len()), (Some(1), 1));
        assert_eq!(quotient_basis(&ideal(&ctx, &["x*y"]), &ord).unwrap().colength, None);
        assert_eq!(quotient_basis(&ideal(&ctx, &["x - 1", "y + 2", "x*y"]), &ord).unwrap().colength, Some(0));
    }

    #[test]
    fn saturation_examples() {
        let ctx = Context::new(["a", "x", "y"]).unwrap();
        let ord = MonomialOrder::default_for(&ctx);
        let sat = saturate(&ideal(&ctx, &["a*x + y", "x*y"]), &Poly::var(&ctx, "a").unwrap()).unwrap();
        let gb = buchberger(&sat, &ord).unwrap();
        assert!(gb.contains(&parse_poly(&ctx, "x^2").unwrap()));
        assert!(gb.contains(&parse_poly(&ctx, "a*x + y").unwrap()));

        let i = ideal(&ctx, &["a*x + y", "x*y"]);
        let sat1 = saturate(&i, &Poly::one(&ctx)).unwrap();
        assert!(buchberger(&sat1, &ord).unwrap().same_ideal(&buchberger(&i, &ord).unwrap()));

        let ctx = Context::new(["b", "x", "y"]).unwrap();
        let ord = MonomialOrder::default_for(&ctx);
        let sat = saturate(&ideal(&ctx, &["x + b*y", "x*y"]), &Poly::var(&ctx, "b").unwrap()).unwrap();
        let gb = buchberger(&sat, &ord).unwrap();
        assert!(gb.contains(&parse_poly(&ctx, "y^2").unwrap()));
        assert!(gb.contains(&parse_poly(&ctx, "x + b*y").unwrap()));
    }

    #[test]
    fn jacobian_examples() {
        let ctx = Context::new(["x", "y", "t"]).unwrap();
        let g = polys(&ctx, &["x*y - t"]);
        assert_eq!(jacobian_rank_at(&g, &[("x", rat(1)), ("y", rat(1)), ("t", rat(1))]).unwrap(), 1);
        assert_eq!(jacobian_rank_at(&g, &[("x", rat(0)), ("y", rat(0)), ("t", rat(0))]).unwrap(), 1);
        let node = Context::new(["x", "y"]).unwrap();
        assert_eq!(jacobian_rank_at(&polys(&node, &["x*y"]), &[("x", rat(0)), ("y", rat(0))]).unwrap(), 0);
        assert!(matches!(
            jacobian_rank_at(&g, &[("x", rat(1)), ("y", rat(1)), ("t", rat(0))]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn budget_is_enforced() {
        let ctx = Context::new(["x", "y", "z"]).unwrap();
        let i = ideal(&ctx, &["x^3 - y*z", "y^3 - x*z", "z^3 - x*y"]);
        assert_eq!(
            buchberger_with_budget(&i, &MonomialOrder::lex(&ctx), Budget(3)).unwrap_err(),
            Error::Budget(3)
        );
    }
}
