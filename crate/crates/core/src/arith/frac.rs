use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::One;

use super::{compatible, Ctx, Mono, Poly, Rat};
use crate::error::{Error, Result};

/// Quotient of two polynomials.
///
/// There is no multivariate gcd here. The stored representative has the
/// common monomial factor removed, a monic denominator, and denominator 1
/// whenever it divides the numerator exactly. Equality is decided by
/// cross-multiplication and is therefore always exact.
#[derive(Clone)]
pub struct Frac {
    num: Poly,
    den: Poly,
}

impl Frac {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if !compatible(num.ctx(), den.ctx()) {
            return Err(Error::ContextMismatch);
        }
        if den.is_zero() {
            return Err(Error::InvalidBinding("denominator".into()));
        }
        Ok(Frac::normalized(num, den))
    }

    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.ctx());
        Frac { num: p, den }
    }

    pub fn zero(ctx: &Ctx) -> Self {
        Frac::from_poly(Poly::zero(ctx))
    }

    pub fn one(ctx: &Ctx) -> Self {
        Frac::from_poly(Poly::one(ctx))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn ctx(&self) -> &Ctx {
        self.num.ctx()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    fn normalized(mut num: Poly, mut den: Poly) -> Self {
        let ctx = num.ctx().clone();
        if num.is_zero() {
            return Frac::zero(&ctx);
        }
        if let (Some(a), Some(b)) = (num.monomial_content(), den.monomial_content()) {
            let g = a.gcd(&b);
            if !g.is_one() {
                num = num.div_mono(&g);
                den = den.div_mono(&g);
            }
        }
        if !den.is_constant() {
            if let Some(q) = num.div_exact(&den) {
                num = q;
                den = Poly::one(&ctx);
            }
        }
        let lc = den.leading_coeff();
        if !lc.is_one() {
            let inv = Rat::one() / lc;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Frac { num, den }
    }

    pub fn inv(&self) -> Result<Frac> {
        Frac::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: u32) -> Frac {
        Frac::normalized(self.num.pow(e), self.den.pow(e))
    }

    fn single_monomial(p: &Poly) -> Option<Mono> {
        if p.len() == 1 {
            p.leading().map(|(m, _)| m.clone())
        } else {
            None
        }
    }
}

impl PartialEq for Frac {
    fn eq(&self, other: &Self) -> bool {
        compatible(self.ctx(), other.ctx()) && &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for Frac {}

impl<'a> Add<&'a Frac> for &'a Frac {
    type Output = Frac;
    fn add(self, rhs: &Frac) -> Frac {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Frac::normalized(&self.num + &rhs.num, self.den.clone());
        }
        // both denominators monic monomials: combine over their lcm
        if let (Some(a), Some(b)) = (Frac::single_monomial(&self.den), Frac::single_monomial(&rhs.den)) {
            let l = a.lcm(&b);
            let one = Rat::one();
            let n = &self.num.mul_term(&a.quotient_of(&l), &one) + &rhs.num.mul_term(&b.quotient_of(&l), &one);
            return Frac::normalized(n, Poly::term(self.ctx(), l, one));
        }
        Frac::normalized(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a Frac> for &'a Frac {
    type Output = Frac;
    fn sub(self, rhs: &Frac) -> Frac {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Frac> for &'a Frac {
    type Output = Frac;
    fn mul(self, rhs: &Frac) -> Frac {
        Frac::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<'a> Div<&'a Frac> for &'a Frac {
    type Output = Frac;
    /// Panics on division by zero.
    fn div(self, rhs: &Frac) -> Frac {
        assert!(!rhs.is_zero(), "division by zero rational function");
        Frac::normalized(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &Frac {
    type Output = Frac;
    fn neg(self) -> Frac {
        Frac { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.constant_term().is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Frac({self})")
    }
}

/// Image of `f` under the ring map that sends each bound variable to its
/// rational function and every other variable to the same-named variable of
/// the target context (the context of the bindings).
pub fn substitute(f: &Poly, target: &Ctx, bindings: &[(&str, Frac)]) -> Result<Frac> {
    let mut images: Vec<Option<Frac>> = vec![None; f.ctx().len()];
    for (name, b) in bindings {
        if !compatible(b.ctx(), target) {
            return Err(Error::ContextMismatch);
        }
        if b.den.is_zero() {
            return Err(Error::InvalidBinding(name.to_string()));
        }
        images[f.ctx().var(name)?] = Some(b.clone());
    }
    for v in 0..f.ctx().len() {
        if images[v].is_none() && f.involves(v) {
            let name = f.ctx().name(v);
            images[v] = Some(Frac::from_poly(Poly::var(target, name)?));
        }
    }
    let mut acc = Frac::zero(target);
    let mut cache: Vec<Vec<Frac>> = images
        .iter()
        .map(|img| match img {
            Some(fr) => vec![Frac::one(target), fr.clone()],
            None => Vec::new(),
        })
        .collect();
    for (m, c) in f.terms() {
        let mut t = Frac::from_poly(Poly::constant(target, c.clone()));
        for (v, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let pows = &mut cache[v];
            while pows.len() <= e as usize {
                let next = &pows[pows.len() - 1] * &pows[1];
                pows.push(next);
            }
            t = &t * &pows[e as usize];
        }
        acc = &acc + &t;
    }
    Ok(acc)
}
