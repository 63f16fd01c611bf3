//! Exact rational arithmetic, sparse multivariate polynomials over ℚ and
//! their fraction field.
//!
//! Every polynomial carries the [`Context`] it was built in. Operations
//! between polynomials from incompatible contexts fail with
//! [`Error::ContextMismatch`](crate::Error::ContextMismatch) (or panic, for
//! the operator-trait shorthands).

mod frac;
mod laurent;
mod matrix;
mod mono;
mod parse;
mod poly;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

pub use frac::{substitute, Frac};
pub use laurent::{t_order, TLaurent};
pub use matrix::{determinant, determinant_bareiss, determinant_cofactor, rat_rank};
pub use mono::Mono;
pub use parse::parse_poly;
pub use poly::{elementary_symmetric, poly_arith, ArithOp, Poly};

/// Exact rational number, always stored in lowest terms with positive
/// denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// `3`, `-1/2`, ...
pub fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// An ordered list of variable names. Polynomials index their exponent
/// vectors by position in this list.
#[derive(Debug)]
pub struct Context {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

pub type Ctx = Arc<Context>;

impl Context {
    pub fn new<I, S>(names: I) -> Result<Ctx>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out = Context { names: Vec::new(), index: HashMap::new() };
        for name in names {
            let name = name.into();
            if !is_identifier(&name) {
                return Err(Error::Parse { pos: 0, msg: format!("`{name}` is not a variable name") });
            }
            if out.index.insert(name.clone(), out.names.len()).is_some() {
                return Err(Error::DuplicateVariable(name));
            }
            out.names.push(name);
        }
        Ok(Arc::new(out))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn var(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn has(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// A new context with `extra` appended after the existing variables.
    pub fn extend<S: AsRef<str>>(&self, extra: &[S]) -> Result<Ctx> {
        Context::new(self.names.iter().cloned().chain(extra.iter().map(|s| s.as_ref().to_string())))
    }

    /// A variable name starting with `stem` that is not yet declared.
    pub fn fresh_name(&self, stem: &str) -> String {
        if !self.has(stem) {
            return stem.to_string();
        }
        (0..).map(|k| format!("{stem}_{k}")).find(|n| !self.has(n)).unwrap()
    }
}

impl PartialEq for Context {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for Context {}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.names.join(", "))
    }
}

pub fn compatible(a: &Ctx, b: &Ctx) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_rejects_duplicates() {
        assert_eq!(Context::new(["x", "y", "x"]).unwrap_err(), Error::DuplicateVariable("x".into()));
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let ctx = Context::new(["w", "w_0", "x"]).unwrap();
        assert_eq!(ctx.fresh_name("w"), "w_1");
        assert_eq!(ctx.fresh_name("z"), "z");
    }

    #[test]
    fn rationals_are_reduced() {
        let r = ratio(6, -4);
        assert_eq!(format_rat(&r), "-3/2");
        assert_eq!(format_rat(&ratio(0, 5)), "0");
    }
}
