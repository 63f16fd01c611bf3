use std::cmp::Ordering;

use crate::arith::{Ctx, Mono};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Lex,
    GrLex,
    GrevLex,
    /// The first `block` variables of the priority sequence form an
    /// elimination block, compared by grevlex before the rest.
    Block { block: usize },
    /// Weighted degree (weights indexed by context position), grevlex ties.
    Weighted(Vec<u32>),
}

/// A monomial order: a kind plus a variable priority sequence, highest
/// priority first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, priority: Vec<usize>) -> Result<Self> {
        let mut seen = priority.clone();
        seen.sort_unstable();
        if seen != (0..priority.len()).collect::<Vec<_>>() {
            return Err(Error::Precondition("priority must be a permutation of the variables".into()));
        }
        match &kind {
            OrderKind::Block { block } if *block > priority.len() => {
                return Err(Error::Range(format!("block of size {block}")));
            }
            OrderKind::Weighted(w) if w.len() != priority.len() || w.contains(&0) => {
                return Err(Error::Precondition("weights must be positive, one per variable".into()));
            }
            _ => {}
        }
        Ok(MonomialOrder { kind, priority })
    }

    fn declared(ctx: &Ctx) -> Vec<usize> {
        (0..ctx.len()).collect()
    }

    pub fn lex(ctx: &Ctx) -> Self {
        MonomialOrder { kind: OrderKind::Lex, priority: Self::declared(ctx) }
    }

    pub fn grlex(ctx: &Ctx) -> Self {
        MonomialOrder { kind: OrderKind::GrLex, priority: Self::declared(ctx) }
    }

    pub fn grevlex(ctx: &Ctx) -> Self {
        MonomialOrder { kind: OrderKind::GrevLex, priority: Self::declared(ctx) }
    }

    /// Grevlex in declared order except that `t` (if present) has the lowest
    /// priority. This is the default order of the crate: with it,
    /// `x_k y_k - t` has leading term `x_k y_k`.
    pub fn default_for(ctx: &Ctx) -> Self {
        let mut priority = Self::declared(ctx);
        if let Ok(t) = ctx.var("t") {
            priority.retain(|&v| v != t);
            priority.push(t);
        }
        MonomialOrder { kind: OrderKind::GrevLex, priority }
    }

    /// Lex with the given variable names first, in that order, followed by
    /// the rest in declared order.
    pub fn lex_by_names(ctx: &Ctx, first: &[&str]) -> Result<Self> {
        let head = first.iter().map(|n| ctx.var(n)).collect::<Result<Vec<_>>>()?;
        let mut priority = head.clone();
        priority.extend((0..ctx.len()).filter(|v| !head.contains(v)));
        MonomialOrder::new(OrderKind::Lex, priority)
    }

    /// Block order eliminating `vars`; the remaining variables follow the
    /// priority of `rest`.
    pub fn elimination(vars: &[usize], rest: &MonomialOrder) -> Result<Self> {
        let mut priority = vars.to_vec();
        priority.extend(rest.priority.iter().copied().filter(|v| !vars.contains(v)));
        MonomialOrder::new(OrderKind::Block { block: vars.len() }, priority)
    }

    pub fn weighted(ctx: &Ctx, weights: Vec<u32>) -> Result<Self> {
        MonomialOrder::new(OrderKind::Weighted(weights), Self::declared(ctx))
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    pub fn compare(&self, a: &Mono, b: &Mono) -> Ordering {
        let (a, b) = (a.exps(), b.exps());
        match &self.kind {
            OrderKind::Lex => lex(&self.priority, a, b),
            OrderKind::GrLex => deg(&self.priority, a, b).then_with(|| lex(&self.priority, a, b)),
            OrderKind::GrevLex => grevlex(&self.priority, a, b),
            OrderKind::Block { block } => {
                let (head, tail) = self.priority.split_at(*block);
                grevlex(head, a, b).then_with(|| grevlex(tail, a, b))
            }
            OrderKind::Weighted(w) => {
                let wa: u64 = a.iter().zip(w).map(|(e, w)| *e as u64 * *w as u64).sum();
                let wb: u64 = b.iter().zip(w).map(|(e, w)| *e as u64 * *w as u64).sum();
                wa.cmp(&wb).then_with(|| grevlex(&self.priority, a, b))
            }
        }
    }
}

fn deg(vars: &[usize], a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = vars.iter().map(|&v| a[v]).sum();
    let db: u32 = vars.iter().map(|&v| b[v]).sum();
    da.cmp(&db)
}

fn lex(vars: &[usize], a: &[u32], b: &[u32]) -> Ordering {
    for &v in vars {
        match a[v].cmp(&b[v]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn grevlex(vars: &[usize], a: &[u32], b: &[u32]) -> Ordering {
    deg(vars, a, b).then_with(|| {
        for &v in vars.iter().rev() {
            match a[v].cmp(&b[v]) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    })
}
