//! A free commutative algebra on symbols `q_n[unit]`, `q_n[ell]`, and the
//! three expansions of the total Chern class of a tautological line-bundle
//! pushforward that must coincide in it.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{format_rat, rat, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CohSymbol {
    /// The class 1.
    Unit,
    /// `c_1(L)`.
    Ell,
}

impl CohSymbol {
    pub fn name(self) -> &'static str {
        match self {
            CohSymbol::Unit => "unit",
            CohSymbol::Ell => "ell",
        }
    }
}

/// Commutative monomial in the `q_n[c]`, stored as a sorted factor list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct QMonomial(Vec<(u32, CohSymbol)>);

impl QMonomial {
    pub fn one() -> Self {
        QMonomial(Vec::new())
    }

    pub fn symbol(n: u32, c: CohSymbol) -> Self {
        assert!(n >= 1, "q_0 is not a symbol");
        QMonomial(vec![(n, c)])
    }

    pub fn from_factors(mut f: Vec<(u32, CohSymbol)>) -> Self {
        f.sort();
        QMonomial(f)
    }

    pub fn factors(&self) -> &[(u32, CohSymbol)] {
        &self.0
    }

    /// `Σ n` over the factors.
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(n, _)| n).sum()
    }

    pub fn mul(&self, other: &QMonomial) -> QMonomial {
        let mut f = self.0.clone();
        f.extend(other.0.iter().copied());
        QMonomial::from_factors(f)
    }
}

impl fmt::Display for QMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut parts: Vec<String> = Vec::new();
        let mut k = 0;
        while k < self.0.len() {
            let mut e = 1;
            while k + e < self.0.len() && self.0[k + e] == self.0[k] {
                e += 1;
            }
            let (n, c) = self.0[k];
            parts.push(if e == 1 { format!("q{n}[{}]", c.name()) } else { format!("q{n}[{}]^{e}", c.name()) });
            k += e;
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// Rational linear combination of `QMonomial`s.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FockPolynomial {
    terms: BTreeMap<QMonomial, Rat>,
}

impl FockPolynomial {
    pub fn zero() -> Self {
        FockPolynomial::default()
    }

    pub fn one() -> Self {
        FockPolynomial::monomial(QMonomial::one(), Rat::one())
    }

    pub fn monomial(m: QMonomial, c: Rat) -> Self {
        let mut p = FockPolynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn q(n: u32, c: CohSymbol) -> Self {
        FockPolynomial::monomial(QMonomial::symbol(n, c), Rat::one())
    }

    /// `q_n[c(L)] = q_n[unit] + q_n[ell]`.
    pub fn q_cl(n: u32) -> Self {
        FockPolynomial::q(n, CohSymbol::Unit).add(&FockPolynomial::q(n, CohSymbol::Ell))
    }

    pub fn terms(&self) -> &BTreeMap<QMonomial, Rat> {
        &self.terms
    }

    pub fn coeff(&self, m: &QMonomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: QMonomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &FockPolynomial) -> FockPolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &FockPolynomial) -> FockPolynomial {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> FockPolynomial {
        let mut out = FockPolynomial::zero();
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn mul(&self, other: &FockPolynomial) -> FockPolynomial {
        self.mul_truncated(other, u32::MAX)
    }

    /// Product, dropping terms of degree above `max_degree`.
    pub fn mul_truncated(&self, other: &FockPolynomial, max_degree: u32) -> FockPolynomial {
        let mut out = FockPolynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if ma.degree() + mb.degree() <= max_degree {
                    out.add_term(ma.mul(mb), ca * cb);
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> FockPolynomial {
        (0..e).fold(FockPolynomial::one(), |acc, _| acc.mul(self))
    }

    /// Part of degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> FockPolynomial {
        FockPolynomial {
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }
}

impl fmt::Display for FockPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| if m.0.is_empty() { format_rat(c) } else { format!("{}*{m}", format_rat(c)) })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn factorial(n: u32) -> Rat {
    (1..=n as i64).fold(Rat::one(), |acc, k| acc * rat(k))
}

/// Degree-`m` part of `exp(Σ_n (−1)^{n−1}/n · q_n[c(L)])`.
pub fn lehn_expansion(m: u32) -> FockPolynomial {
    let mut s = FockPolynomial::zero();
    for n in 1..=m {
        let c = Rat::new(if n % 2 == 1 { 1.into() } else { (-1).into() }, (n as i64).into());
        s = s.add(&FockPolynomial::q_cl(n).scale(&c));
    }
    // every term of s has degree >= 1, so s^k only matters for k <= m
    let mut total = FockPolynomial::one();
    let mut power = FockPolynomial::one();
    for k in 1..=m {
        power = power.mul_truncated(&s, m);
        total = total.add(&power.scale(&(Rat::one() / factorial(k))));
    }
    total.homogeneous_part(m)
}

/// Choice for index `j`: the class 1, `L_j`, or `−Δ_{ij}` with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Choice {
    One,
    L,
    Delta(usize),
}

/// Options available at 1-based index `j`.
fn options(j: usize) -> usize {
    j + 1
}

fn choice_at(j: usize, digit: usize) -> Choice {
    match digit {
        0 => Choice::One,
        1 => Choice::L,
        d => {
            debug_assert!(d - 2 < j - 1);
            Choice::Delta(d - 1)
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct GeoStats {
    pub choice_functions: u64,
    /// Every component's unique terminal node was its minimum.
    pub roots_minimal: bool,
    pub max_ell_per_component: u32,
}

/// Expand `∏_j (1 + L_j − Σ_{i<j} Δ_{ij})` choice by choice, map each
/// connected component of size `k` rooted at a node with mark `c` to
/// `(−1)^{k−1} q_k[c]`, sum and divide by `m!`.
pub fn geo_expansion(m: u32) -> FockPolynomial {
    geo_expansion_with_stats(m).0
}

pub fn geo_expansion_with_stats(m: u32) -> (FockPolynomial, GeoStats) {
    let m = m as usize;
    let mut acc: BTreeMap<QMonomial, i64> = BTreeMap::new();
    let mut stats = GeoStats { roots_minimal: true, ..GeoStats::default() };
    let mut digits = vec![0usize; m];
    loop {
        stats.choice_functions += 1;
        let choices: Vec<Choice> = (0..m).map(|k| choice_at(k + 1, digits[k])).collect();
        // root of each node by following parents (parents are smaller)
        let mut root = vec![0usize; m + 1];
        for j in 1..=m {
            root[j] = match choices[j - 1] {
                Choice::Delta(i) => root[i],
                _ => j,
            };
        }
        let mut sizes: BTreeMap<usize, u32> = BTreeMap::new();
        for j in 1..=m {
            *sizes.entry(root[j]).or_default() += 1;
        }
        let mut factors = Vec::with_capacity(sizes.len());
        let mut sign = 1i64;
        for (&r, &k) in &sizes {
            if (1..=m).any(|j| root[j] == r && j < r) {
                stats.roots_minimal = false;
            }
            let ells = (1..=m).filter(|&j| root[j] == r && choices[j - 1] == Choice::L).count() as u32;
            stats.max_ell_per_component = stats.max_ell_per_component.max(ells);
            let mark = match choices[r - 1] {
                Choice::L => CohSymbol::Ell,
                _ => CohSymbol::Unit,
            };
            if k % 2 == 0 {
                sign = -sign;
            }
            factors.push((k, mark));
        }
        *acc.entry(QMonomial::from_factors(factors)).or_default() += sign;

        // odometer
        let mut pos = 0;
        loop {
            if pos == m {
                let mut out = FockPolynomial::zero();
                let mfact = factorial(m as u32);
                for (mono, c) in acc {
                    out.add_term(mono, rat(c) / &mfact);
                }
                return (out, stats);
            }
            digits[pos] += 1;
            if digits[pos] < options(pos + 1) {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

/// Integer partitions of `n` in non-increasing order.
pub fn integer_partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Number of set partitions of an `m`-set with the given block sizes.
pub fn set_partition_count(blocks: &[u32]) -> Rat {
    let m: u32 = blocks.iter().sum();
    let mut den = Rat::one();
    let mut mult: BTreeMap<u32, u32> = BTreeMap::new();
    for &b in blocks {
        den *= factorial(b);
        *mult.entry(b).or_default() += 1;
    }
    for &k in mult.values() {
        den *= factorial(k);
    }
    factorial(m) / den
}

/// `(1/m!) Σ_π ∏_{B∈π} (−1)^{|B|−1} (|B|−1)! q_{|B|}[c(L)]`, summed by
/// block type.
pub fn partition_formula(m: u32) -> FockPolynomial {
    let mut out = FockPolynomial::zero();
    for blocks in integer_partitions(m) {
        let mut term = FockPolynomial::monomial(QMonomial::one(), set_partition_count(&blocks));
        for &b in &blocks {
            let c = factorial(b - 1) * rat(if b % 2 == 1 { 1 } else { -1 });
            term = term.mul(&FockPolynomial::q_cl(b).scale(&c));
        }
        out = out.add(&term);
    }
    out.scale(&(Rat::one() / factorial(m)))
}

/// Count the parent functions on `set` (each element picks a strictly
/// smaller element of the set, or none) that leave a single root.
pub fn count_trees(set: &[u64]) -> u64 {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    let k = s.len();
    assert!(k >= 1, "count_trees needs a nonempty set");
    // element at position p has p smaller elements, plus the "none" option
    let mut digits = vec![0usize; k];
    let mut count = 0u64;
    loop {
        let roots = digits.iter().filter(|&&d| d == 0).count();
        if roots == 1 {
            count += 1;
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return count;
            }
            digits[pos] += 1;
            if digits[pos] <= pos {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

pub fn star_pad(p: &FockPolynomial, n: u32) -> FockPolynomial {
    p.mul(&FockPolynomial::q(1, CohSymbol::Unit).pow(n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem2Convention {
    Literal,
    Padded,
}

impl Theorem2Convention {
    pub fn name(self) -> &'static str {
        match self {
            Theorem2Convention::Literal => "literal",
            Theorem2Convention::Padded => "padded",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ComparisonReport {
    pub lhs: FockPolynomial,
    pub rhs: FockPolynomial,
    pub matched: Vec<(QMonomial, Rat)>,
    /// Monomial, coefficient on the left, on the right.
    pub mismatched: Vec<(QMonomial, Rat, Rat)>,
}

impl ComparisonReport {
    pub fn new(lhs: FockPolynomial, rhs: FockPolynomial) -> Self {
        let mut keys: Vec<&QMonomial> = lhs.terms.keys().chain(rhs.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        let mut matched = Vec::new();
        let mut mismatched = Vec::new();
        for k in keys {
            let (a, b) = (lhs.coeff(k), rhs.coeff(k));
            if a == b {
                matched.push((k.clone(), a));
            } else {
                mismatched.push((k.clone(), a, b));
            }
        }
        ComparisonReport { lhs, rhs, matched, mismatched }
    }

    pub fn equal(&self) -> bool {
        self.mismatched.is_empty()
    }
}

/// The printed sum over strictly increasing `I` with `Σ i_j ≤ m` (the
/// empty sequence included), evaluated under a convention.
pub fn theorem2_printed(m: u32, convention: Theorem2Convention) -> FockPolynomial {
    fn go(start: u32, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        for i in start..=remaining {
            cur.push(i);
            go(i + 1, remaining - i, cur, out);
            cur.pop();
        }
    }
    let mut seqs = Vec::new();
    go(1, m, &mut Vec::new(), &mut seqs);
    let mut out = FockPolynomial::zero();
    for seq in seqs {
        let total: u32 = seq.iter().sum();
        let k = seq.len() as u32;
        let sign = if (total - k).is_multiple_of(2) { 1 } else { -1 };
        let num: Rat = seq.iter().map(|&i| factorial(i - 1)).fold(Rat::one(), |a, b| a * b);
        let c = num * rat(sign) / (factorial(total) * factorial(m - total));
        let mut term = FockPolynomial::monomial(QMonomial::one(), c);
        for &i in &seq {
            term = term.mul(&FockPolynomial::q_cl(i));
        }
        if convention == Theorem2Convention::Padded {
            term = star_pad(&term, m - total);
        }
        out = out.add(&term);
    }
    out
}

/// Diff of the printed formula against the exponential expansion. Never
/// asserts equality.
pub fn theorem2_compare(m: u32, convention: Theorem2Convention) -> ComparisonReport {
    ComparisonReport::new(theorem2_printed(m, convention), lehn_expansion(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;
    use CohSymbol::{Ell, Unit};

    fn mono(f: &[(u32, CohSymbol)]) -> QMonomial {
        QMonomial::from_factors(f.to_vec())
    }

    fn m2_expected() -> FockPolynomial {
        let mut p = FockPolynomial::zero();
        p.add_term(mono(&[(1, Unit), (1, Unit)]), ratio(1, 2));
        p.add_term(mono(&[(1, Unit), (1, Ell)]), rat(1));
        p.add_term(mono(&[(1, Ell), (1, Ell)]), ratio(1, 2));
        p.add_term(mono(&[(2, Unit)]), ratio(-1, 2));
        p.add_term(mono(&[(2, Ell)]), ratio(-1, 2));
        p
    }

    #[test]
    fn lehn_small() {
        assert_eq!(lehn_expansion(1), FockPolynomial::q_cl(1));
        assert_eq!(lehn_expansion(2), m2_expected());
        assert_eq!(lehn_expansion(3).coeff(&mono(&[(3, Unit)])), ratio(1, 3));
    }

    #[test]
    fn geo_small() {
        let (p, stats) = geo_expansion_with_stats(1);
        assert_eq!(p, FockPolynomial::q_cl(1));
        assert_eq!(stats.choice_functions, 2);
        let (p, stats) = geo_expansion_with_stats(2);
        assert_eq!(p, m2_expected());
        assert_eq!(stats.choice_functions, 6);
        // three choice functions {i<j}: L at i, Δ_ij at j, 1 at the third;
        // each contributes −1, divided by 3!
        assert_eq!(geo_expansion(3).coeff(&mono(&[(1, Unit), (2, Ell)])), ratio(-1, 2));
    }

    #[test]
    fn partitions() {
        assert_eq!(partition_formula(2), m2_expected());
        assert_eq!(partition_formula(3).coeff(&mono(&[(3, Ell)])), ratio(1, 3));
        assert_eq!(partition_formula(4).coeff(&mono(&[(2, Unit), (2, Unit)])), ratio(1, 8));
        assert_eq!(integer_partitions(4).len(), 5);
        assert_eq!(set_partition_count(&[2, 2]), rat(3));
    }

    #[test]
    fn three_expansions_agree() {
        for m in 1..=5 {
            let lehn = lehn_expansion(m);
            let (geo, stats) = geo_expansion_with_stats(m);
            assert_eq!(geo, lehn, "m={m}");
            assert_eq!(partition_formula(m), lehn, "m={m}");
            assert!(lehn.is_homogeneous(m));
            assert!(stats.roots_minimal);
            assert!(stats.max_ell_per_component <= 1);
            assert_eq!(stats.choice_functions, (1..=m as u64 + 1).product::<u64>());
        }
    }

    #[test]
    fn trees() {
        assert_eq!(count_trees(&[4]), 1);
        assert_eq!(count_trees(&[2, 5, 7]), 2);
        assert_eq!(count_trees(&[1, 2, 3, 4]), 6);
    }

    #[test]
    fn padding() {
        let q2l = FockPolynomial::q(2, Ell);
        assert_eq!(star_pad(&q2l, 1), FockPolynomial::monomial(mono(&[(2, Ell), (1, Unit)]), rat(1)));
        assert_eq!(star_pad(&q2l, 0), q2l);
        let q1u = FockPolynomial::q(1, Unit);
        assert_eq!(star_pad(&q1u, 2), q1u.pow(3));
    }

    #[test]
    fn theorem2_diffs() {
        let r = theorem2_compare(1, Theorem2Convention::Literal);
        assert_eq!(r.mismatched, vec![(QMonomial::one(), rat(1), rat(0))]);
        let r = theorem2_compare(2, Theorem2Convention::Literal);
        assert!(r.mismatched.iter().any(|(k, a, _)| k == &QMonomial::one() && a == &ratio(1, 2)));
        let r = theorem2_compare(2, Theorem2Convention::Padded);
        let q1u2 = mono(&[(1, Unit), (1, Unit)]);
        let q1l2 = mono(&[(1, Ell), (1, Ell)]);
        let d: BTreeMap<_, _> = r.mismatched.iter().map(|(k, a, b)| (k.clone(), (a.clone(), b.clone()))).collect();
        assert_eq!(&d[&q1u2].0 - &d[&q1u2].1, rat(1));
        assert_eq!(d[&q1l2], (rat(0), ratio(1, 2)));
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn display() {
        assert_eq!(mono(&[(1, Unit), (1, Unit), (2, Ell)]).to_string(), "q1[unit]^2*q2[ell]");
        assert_eq!(FockPolynomial::q_cl(1).to_string(), "1*q1[unit] + 1*q1[ell]");
    }
}
