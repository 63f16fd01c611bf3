use std::collections::BTreeMap;
use std::fmt;

use super::{Ctx, Frac, Mono};
use crate::error::{Error, Result};

/// Finite Laurent polynomial in one distinguished variable `t`, with
/// coefficients rational functions in the remaining variables.
#[derive(Clone, Debug)]
pub struct TLaurent {
    ctx: Ctx,
    t: usize,
    coeffs: BTreeMap<i64, Frac>,
}

impl TLaurent {
    pub fn zero(ctx: &Ctx, t: usize) -> Self {
        TLaurent { ctx: ctx.clone(), t, coeffs: BTreeMap::new() }
    }

    /// Add `coeff * t^exp`; `coeff` must not involve `t`.
    pub fn add_term(&mut self, exp: i64, coeff: Frac) {
        debug_assert!(!coeff.num().involves(self.t) && !coeff.den().involves(self.t));
        let sum = match self.coeffs.remove(&exp) {
            Some(old) => &old + &coeff,
            None => coeff,
        };
        if !sum.is_zero() {
            self.coeffs.insert(exp, sum);
        }
    }

    /// Expand a rational function whose denominator is `t^k` times a
    /// `t`-free polynomial. Other denominators have no finite expansion and
    /// are rejected.
    pub fn from_frac(f: &Frac, t: usize) -> Result<Self> {
        let ctx = f.ctx().clone();
        let den = f.den();
        let (lo, hi) = (den.min_degree_in(t).unwrap_or(0), den.degree_in(t).unwrap_or(0));
        if lo != hi {
            return Err(Error::Precondition(format!(
                "denominator {den} is not a power of {} times a {}-free polynomial",
                ctx.name(t),
                ctx.name(t)
            )));
        }
        let shift = Mono::var(ctx.len(), t, lo);
        let den_rest = den.div_mono(&shift);
        let mut out = TLaurent::zero(&ctx, t);
        for (key, cof) in f.num().coefficients_in(&[t]) {
            let e = key[0] as i64 - lo as i64;
            out.add_term(e, Frac::new(cof, den_rest.clone())?);
        }
        Ok(out)
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, Frac> {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> Option<&Frac> {
        self.coeffs.get(&exp)
    }

    /// Lowest exponent with a nonzero coefficient, `None` for zero (+∞).
    pub fn order(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn leading_coeff(&self) -> Option<&Frac> {
        self.coeffs.values().next()
    }
}

impl PartialEq for TLaurent {
    fn eq(&self, other: &Self) -> bool {
        super::compatible(&self.ctx, &other.ctx) && self.t == other.t && self.coeffs == other.coeffs
    }
}

/// `t`-adic order: `None` stands for +∞ (the zero element).
pub fn t_order(f: &TLaurent) -> Option<i64> {
    f.order()
}

impl fmt::Display for TLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let t = self.ctx.name(self.t);
        let parts: Vec<String> = self.coeffs.iter().map(|(e, c)| format!("({c})*{t}^{e}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, Context};

    fn setup() -> (Ctx, usize) {
        let ctx = Context::new(["t", "y1", "y2"]).unwrap();
        (ctx.clone(), ctx.var("t").unwrap())
    }

    fn fr(ctx: &Ctx, n: &str, d: &str) -> Frac {
        Frac::new(parse_poly(ctx, n).unwrap(), parse_poly(ctx, d).unwrap()).unwrap()
    }

    #[test]
    fn order_of_mixed_expansion() {
        let (ctx, t) = setup();
        let mut l = TLaurent::zero(&ctx, t);
        l.add_term(2, fr(&ctx, "y1 - y2", "y1"));
        l.add_term(3, Frac::one(&ctx));
        assert_eq!(t_order(&l), Some(2));
    }

    #[test]
    fn zero_has_infinite_order() {
        let (ctx, t) = setup();
        assert_eq!(t_order(&TLaurent::zero(&ctx, t)), None);
    }

    #[test]
    fn order_from_substituted_difference() {
        let (ctx, t) = setup();
        let l = TLaurent::from_frac(&fr(&ctx, "t*y1 - t*y2", "y1*y2"), t).unwrap();
        assert_eq!(t_order(&l), Some(1));
        assert_eq!(l.leading_coeff().unwrap(), &fr(&ctx, "y1 - y2", "y1*y2"));
    }

    #[test]
    fn negative_exponents_from_denominators() {
        let (ctx, t) = setup();
        let l = TLaurent::from_frac(&fr(&ctx, "1 + t", "t^2*y1"), t).unwrap();
        assert_eq!(t_order(&l), Some(-2));
        assert!(TLaurent::from_frac(&fr(&ctx, "1", "1 + t"), t).is_err());
    }
}
