use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{compatible, format_rat, rat, Ctx, Mono, Rat};
use crate::error::{Error, Result};

/// Sparse polynomial with rational coefficients.
///
/// Terms are kept in a map keyed by [`Mono`] (graded lexicographic on the
/// context's declared variable sequence); zero coefficients are never
/// stored, so structural equality is polynomial equality.
#[derive(Clone)]
pub struct Poly {
    ctx: Ctx,
    terms: BTreeMap<Mono, Rat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Context-checked ring operation.
pub fn poly_arith(lhs: &Poly, rhs: &Poly, op: ArithOp) -> Result<Poly> {
    if !compatible(&lhs.ctx, &rhs.ctx) {
        return Err(Error::ContextMismatch);
    }
    Ok(match op {
        ArithOp::Add => lhs + rhs,
        ArithOp::Sub => lhs - rhs,
        ArithOp::Mul => lhs * rhs,
    })
}

impl Poly {
    pub fn zero(ctx: &Ctx) -> Self {
        Poly { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Ctx) -> Self {
        Poly::constant(ctx, Rat::one())
    }

    pub fn constant(ctx: &Ctx, c: Rat) -> Self {
        Poly::term(ctx, Mono::one(ctx.len()), c)
    }

    pub fn int(ctx: &Ctx, c: i64) -> Self {
        Poly::constant(ctx, rat(c))
    }

    pub fn term(ctx: &Ctx, mono: Mono, c: Rat) -> Self {
        debug_assert_eq!(mono.nvars(), ctx.len());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Poly { ctx: ctx.clone(), terms }
    }

    pub fn var(ctx: &Ctx, name: &str) -> Result<Self> {
        Ok(Poly::var_at(ctx, ctx.var(name)?))
    }

    pub fn var_at(ctx: &Ctx, idx: usize) -> Self {
        Poly::term(ctx, Mono::var(ctx.len(), idx, 1), Rat::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, Rat)>>(ctx: &Ctx, terms: I) -> Self {
        let mut p = Poly::zero(ctx);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Mono::is_one)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from largest to smallest in the storage order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Rat)> + '_ {
        self.terms.iter().rev()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Mono, Rat)> {
        self.terms.into_iter().rev()
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&Mono::one(self.ctx.len()))
    }

    /// Leading term in the storage order (graded lex).
    pub fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(var)).max()
    }

    pub fn min_degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(var)).min()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exp(var) > 0)
    }

    /// Variables occurring in some term, in context order.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ctx.len()).filter(|&v| self.involves(v)).collect()
    }

    pub(crate) fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ctx);
        }
        Poly { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_term(&self, m: &Mono, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ctx);
        }
        Poly { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.ctx);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative.
    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.exps_mut()[var] = e - 1;
            out.add_term(m2, c * rat(e as i64));
        }
        out
    }

    /// Replace the listed variables by rational values; the result stays in
    /// the same context.
    pub fn specialize(&self, values: &[(usize, Rat)]) -> Poly {
        let mut out = Poly::zero(&self.ctx);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let mut c2 = c.clone();
            for (v, val) in values {
                let e = m.exp(*v);
                if e > 0 {
                    c2 *= num_traits::pow(val.clone(), e as usize);
                    m2.exps_mut()[*v] = 0;
                }
            }
            out.add_term(m2, c2);
        }
        out
    }

    /// Specialize by variable name.
    pub fn specialize_named(&self, values: &[(&str, Rat)]) -> Result<Poly> {
        let idx = values
            .iter()
            .map(|(n, v)| Ok((self.ctx.var(n)?, v.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.specialize(&idx))
    }

    /// Evaluate at a full point (one value per context variable).
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.ctx.len(), "point dimension");
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[v].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Ring map sending variable `v` to `images[v]` (all in `target`).
    pub fn compose(&self, images: &[Poly], target: &Ctx) -> Poly {
        assert_eq!(images.len(), self.ctx.len());
        let mut out = Poly::zero(target);
        // cache powers per variable
        let mut cache: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(target), p.clone()]).collect();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (v, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pows = &mut cache[v];
                while pows.len() <= e as usize {
                    let next = &pows[pows.len() - 1] * &images[v];
                    pows.push(next);
                }
                t = &t * &pows[e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Substitute polynomials for some variables, by name.
    pub fn substitute_polys(&self, bindings: &[(&str, Poly)]) -> Result<Poly> {
        let mut images: Vec<Poly> = (0..self.ctx.len()).map(|v| Poly::var_at(&self.ctx, v)).collect();
        for (name, p) in bindings {
            if !compatible(p.ctx(), &self.ctx) {
                return Err(Error::ContextMismatch);
            }
            images[self.ctx.var(name)?] = p.clone();
        }
        Ok(self.compose(&images, &self.ctx))
    }

    /// Move the polynomial into another context, matching variables by
    /// name. Fails if a variable that actually occurs is missing there.
    pub fn to_ctx(&self, target: &Ctx) -> Result<Poly> {
        if compatible(&self.ctx, target) {
            return Ok(Poly { ctx: target.clone(), terms: self.terms.clone() });
        }
        let map: Vec<Option<usize>> = self.ctx.names().iter().map(|n| target.var(n).ok()).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (v, &k) in m.exps().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match map[v] {
                    Some(w) => e[w] = k,
                    None => return Err(Error::UnknownVariable(self.ctx.name(v).to_string())),
                }
            }
            out.add_term(Mono::from_exps(e), c.clone());
        }
        Ok(out)
    }

    /// Collect terms by their exponents in `vars`; the keys record those
    /// exponents, the values are the cofactors (free of `vars`).
    pub fn coefficients_in(&self, vars: &[usize]) -> BTreeMap<Vec<u32>, Poly> {
        let mut out: BTreeMap<Vec<u32>, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Vec<u32> = vars.iter().map(|&v| m.exp(v)).collect();
            let mut rest = m.clone();
            for &v in vars {
                rest.exps_mut()[v] = 0;
            }
            out.entry(key).or_insert_with(|| Poly::zero(&self.ctx)).add_term(rest, c.clone());
        }
        out
    }

    /// Coefficient of the leading term in the storage order.
    pub fn leading_coeff(&self) -> Rat {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rat::zero)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Option<Mono> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, m| acc.gcd(m)))
    }

    /// Exact division of a polynomial by a monomial dividing every term.
    pub fn div_mono(&self, m: &Mono) -> Poly {
        Poly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| {
                    assert!(m.divides(k), "monomial does not divide");
                    (m.quotient_of(k), c.clone())
                })
                .collect(),
        }
    }

    /// `Some(q)` with `self = q * d` when `d` divides `self` exactly.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dl, dc) = d.leading()?;
        let (dl, dc) = (dl.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.ctx);
        while let Some((m, c)) = rem.leading() {
            if !dl.divides(m) {
                return None;
            }
            let qm = dl.quotient_of(m);
            let qc = c / &dc;
            rem = &rem - &d.mul_term(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }
}

/// `σ_k` of the listed variables; `σ_0 = 1`.
pub fn elementary_symmetric(ctx: &Ctx, vars: &[usize], k: usize) -> Result<Poly> {
    if k > vars.len() {
        return Err(Error::Range(format!("σ_{k} of {} variables", vars.len())));
    }
    // dynamic programme over prefixes: e[j] = σ_j of the vars seen so far
    let mut e: Vec<Poly> = vec![Poly::zero(ctx); k + 1];
    e[0] = Poly::one(ctx);
    for &v in vars {
        let xv = Poly::var_at(ctx, v);
        for j in (1..=k).rev() {
            let add = &e[j - 1] * &xv;
            e[j] = &e[j] + &add;
        }
    }
    Ok(e.swap_remove(k))
}

fn check(a: &Poly, b: &Poly) {
    assert!(compatible(&a.ctx, &b.ctx), "polynomials from different contexts: {} vs {}", a.ctx, b.ctx);
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        compatible(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        check(self, rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        check(self, rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        check(self, rhs);
        let mut out = Poly::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c < &Rat::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(format_rat(&abs));
            }
            for (v, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ctx.name(v).to_string()),
                    _ => factors.push(format!("{}^{}", self.ctx.name(v), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
