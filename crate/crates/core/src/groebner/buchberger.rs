//! Buchberger's algorithm on term lists sorted by the active monomial order.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_traits::{One, Zero};

use super::{Budget, MonomialOrder};
use crate::arith::{Ctx, Mono, Poly, Rat};
use crate::error::{Error, Result};

/// Terms in ascending order, so the leading term is the last element.
#[derive(Clone, Debug)]
pub(crate) struct Terms(pub(crate) Vec<(Mono, Rat)>);

impl Terms {
    pub(crate) fn from_poly(p: &Poly, ord: &MonomialOrder) -> Terms {
        let mut v: Vec<(Mono, Rat)> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        v.sort_by(|a, b| ord.compare(&a.0, &b.0));
        Terms(v)
    }

    pub(crate) fn to_poly(&self, ctx: &Ctx) -> Poly {
        Poly::from_terms(ctx, self.0.iter().cloned())
    }

    pub(crate) fn lead(&self) -> Option<&(Mono, Rat)> {
        self.0.last()
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn make_monic(&mut self) {
        if let Some((_, c)) = self.0.last() {
            if !c.is_one() {
                let inv = Rat::one() / c;
                for (_, a) in &mut self.0 {
                    *a *= &inv;
                }
            }
        }
    }

    /// `self - c * m * g`, merging two ascending lists.
    fn sub_scaled(&self, c: &Rat, m: &Mono, g: &Terms, ord: &MonomialOrder) -> Terms {
        let mut out = Vec::with_capacity(self.0.len() + g.0.len());
        let mut a = self.0.iter().peekable();
        let mut b = g.0.iter().map(|(gm, gc)| (gm.mul(m), -(gc * c))).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some((am, _)), Some((bm, _))) => match ord.compare(am, bm) {
                    Ordering::Less => out.push(a.next().unwrap().clone()),
                    Ordering::Greater => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (am, ac) = a.next().unwrap();
                        let (_, bc) = b.next().unwrap();
                        let s = ac + bc;
                        if !s.is_zero() {
                            out.push((am.clone(), s));
                        }
                    }
                },
            }
        }
        Terms(out)
    }
}

pub(crate) struct Counter {
    pub(crate) steps: usize,
    pub(crate) budget: Budget,
}

impl Counter {
    pub(crate) fn new(budget: Budget) -> Self {
        Counter { steps: 0, budget }
    }

    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget.0 {
            Err(Error::Budget(self.budget.0))
        } else {
            Ok(())
        }
    }
}

/// Full reduction of `f` by the monic list `basis`: no term of the result
/// is divisible by a leading monomial of the basis.
pub(crate) fn reduce(f: &Terms, basis: &[Terms], ord: &MonomialOrder, counter: &mut Counter) -> Result<Terms> {
    reduce_skipping(f, basis, None, ord, counter)
}

fn reduce_skipping(
    f: &Terms,
    basis: &[Terms],
    skip: Option<usize>,
    ord: &MonomialOrder,
    counter: &mut Counter,
) -> Result<Terms> {
    let mut p = f.clone();
    let mut rem: Vec<(Mono, Rat)> = Vec::new();
    while let Some((lm, lc)) = p.lead().cloned() {
        let divisor = basis
            .iter()
            .enumerate()
            .filter(|(k, _)| Some(*k) != skip)
            .find(|(_, g)| g.lead().is_some_and(|(gm, _)| gm.divides(&lm)));
        match divisor {
            Some((_, g)) => {
                counter.tick()?;
                let q = g.lead().unwrap().0.quotient_of(&lm);
                p = p.sub_scaled(&lc, &q, g, ord);
            }
            None => {
                rem.push(p.0.pop().unwrap());
            }
        }
    }
    rem.reverse();
    Ok(Terms(rem))
}

fn spoly(f: &Terms, g: &Terms, ord: &MonomialOrder) -> Terms {
    let (fm, _) = f.lead().unwrap();
    let (gm, _) = g.lead().unwrap();
    let l = fm.lcm(gm);
    // both monic
    let zero = Terms(Vec::new());
    let a = zero.sub_scaled(&-Rat::one(), &fm.quotient_of(&l), f, ord);
    a.sub_scaled(&Rat::one(), &gm.quotient_of(&l), g, ord)
}

/// Reduced Gröbner basis of the ideal generated by `gens` (all nonzero),
/// sorted by leading monomial, largest first.
pub(crate) fn buchberger(gens: &[Terms], ord: &MonomialOrder, budget: Budget) -> Result<Vec<Terms>> {
    let mut counter = Counter::new(budget);
    let mut basis: Vec<Terms> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let mut g = g.clone();
        g.make_monic();
        basis.push(g);
    }
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }
    while !pending.is_empty() {
        // normal selection strategy: smallest lcm, ties by index
        let &(i, j) = pending
            .iter()
            .min_by(|&&(a, b), &&(c, d)| {
                let l1 = basis[a].lead().unwrap().0.lcm(&basis[b].lead().unwrap().0);
                let l2 = basis[c].lead().unwrap().0.lcm(&basis[d].lead().unwrap().0);
                ord.compare(&l1, &l2).then((a, b).cmp(&(c, d)))
            })
            .unwrap();
        pending.remove(&(i, j));
        let li = &basis[i].lead().unwrap().0;
        let lj = &basis[j].lead().unwrap().0;
        if li.coprime(lj) {
            continue;
        }
        let l = li.lcm(lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lead().unwrap().0.divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = spoly(&basis[i], &basis[j], ord);
        let mut r = reduce(&s, &basis, ord, &mut counter)?;
        if r.is_zero() {
            continue;
        }
        r.make_monic();
        let n = basis.len();
        basis.push(r);
        for k in 0..n {
            pending.insert((k, n));
        }
    }
    interreduce(basis, ord, &mut counter)
}

/// Drop redundant elements, fully reduce the rest against each other, make
/// them monic and sort them (largest leading monomial first).
pub(crate) fn interreduce(basis: Vec<Terms>, ord: &MonomialOrder, counter: &mut Counter) -> Result<Vec<Terms>> {
    let mut keep: Vec<Terms> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let gm = &g.lead().unwrap().0;
        let redundant = basis.iter().enumerate().any(|(l, h)| {
            let hm = &h.lead().unwrap().0;
            l != k && hm.divides(gm) && (hm != gm || l < k)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for k in 0..keep.len() {
        let mut r = reduce_skipping(&keep[k], &keep, Some(k), ord, counter)?;
        r.make_monic();
        out.push(r);
    }
    out.sort_by(|a, b| ord.compare(&b.lead().unwrap().0, &a.lead().unwrap().0));
    Ok(out)
}
