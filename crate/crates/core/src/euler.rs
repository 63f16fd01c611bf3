//! Euler numbers of relative Hilbert schemes of nodal families, three ways,
//! plus the blow-up model and the triple-point count.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{rat, Rat};

/// Family of genus-`g` curves over a base of genus `gB`, with `sigma`
/// singular fibers each having exactly one node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub g: u32,
    pub gb: u32,
    pub sigma: u32,
    pub m: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EulerMode {
    Closed,
    Stratified,
    Oracle,
}

/// `a(a−1)…(a−k+1)/k!` for any integer `a`.
pub fn gen_binomial(a: i64, k: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k as i64 {
        num *= a - j;
        den *= j + 1;
    }
    num / den
}

fn sign(k: u32) -> BigInt {
    if k.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Euler number of the `m`-th symmetric product of a space with Euler
/// number `e_x`: `(−1)^m binom(−e_x, m)`.
pub fn euler_sym(e_x: i64, m: u32) -> BigInt {
    sign(m) * gen_binomial(-e_x, m)
}

/// Euler number of a chain of `r` projective lines: `2r − (r − 1)`.
pub fn chain_euler(r: u32) -> i64 {
    2 * r as i64 - (r as i64 - 1)
}

/// Euler number of the punctual part of the fiber over a node at length
/// `i`: a point for `i ≤ 1`, otherwise a chain of `i − 1` lines.
pub fn fiber_euler(i: u32) -> i64 {
    if i <= 1 {
        1
    } else {
        chain_euler(i - 1)
    }
}

pub fn euler_hilb(p: FamilyParams, mode: EulerMode) -> BigInt {
    let FamilyParams { g, gb, sigma, m } = p;
    let top = 2 * g as i64 - 2;
    let base = BigInt::from(2 - 2 * gb as i64);
    let smooth_part = sign(m) * gen_binomial(top, m) * &base;
    match mode {
        EulerMode::Closed => smooth_part + BigInt::from(sigma) * gen_binomial(m as i64 - top, m - 1),
        EulerMode::Stratified => {
            let mut s = BigInt::zero();
            for k in 0..m {
                s += sign(k) * BigInt::from(m - k) * gen_binomial(top, k);
            }
            smooth_part + BigInt::from(sigma) * s
        }
        EulerMode::Oracle => oracle(p),
    }
}

/// Stratify by the fibration: over the smooth locus the fibers are
/// symmetric products of a genus-`g` curve; over each nodal fiber split by
/// the length `i` sitting at the node.
fn oracle(p: FamilyParams) -> BigInt {
    let FamilyParams { g, gb, sigma, m } = p;
    let e_base_open = 2 - 2 * gb as i64 - sigma as i64;
    let e_smooth_fiber = 2 - 2 * g as i64;
    // nodal fiber minus its node: normalization (genus g−1, Euler 4−2g)
    // minus the two preimages of the node
    let e_normalization = 2 - 2 * (g as i64 - 1);
    let e_punctured = e_normalization - 2;
    let mut nodal = BigInt::zero();
    for i in 0..=m {
        nodal += BigInt::from(fiber_euler(i)) * euler_sym(e_punctured, m - i);
    }
    BigInt::from(e_base_open) * euler_sym(e_smooth_fiber, m) + BigInt::from(sigma) * nodal
}

/// `Σ_{k=0}^{b} (−1)^k binom(a, k)` against `(−1)^b binom(a−1, b)`.
pub fn alternating_binomial_identity(a: i64, b: u32) -> (BigInt, BigInt) {
    let mut lhs = BigInt::zero();
    for k in 0..=b {
        lhs += sign(k) * gen_binomial(a, k);
    }
    (lhs, sign(b) * gen_binomial(a - 1, b))
}

/// Genus-0 model: a `ℙ^m`-bundle over the base, blown up over each singular
/// fiber along centers `ℙ^k` (`k = 0..m−1`) of codimension `m + 1 − k`;
/// each blow-up adds `e(ℙ^k)(e(ℙ^{m−k}) − 1) = (k+1)(m−k)`.
pub fn euler_blowup_model(m: u32, gb: u32, sigma: u32) -> BigInt {
    let bundle = BigInt::from(m as i64 + 1) * BigInt::from(2 - 2 * gb as i64);
    let per_fiber: i64 = (0..m as i64).map(|k| (k + 1) * (m as i64 - k)).sum();
    bundle + BigInt::from(sigma) * BigInt::from(per_fiber)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriplePointParams {
    pub l2: i64,
    pub omega_l: i64,
    pub omega2: i64,
    pub d: i64,
    pub g: i64,
    pub sigma: i64,
}

/// `((d−2)(d−4)/2 + g − 1) L² + (3 − d/2) ωL + 2ω² − 4σ`, exactly.
pub fn triple_point_formula(p: &TriplePointParams) -> Rat {
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let c_l2 = rat((p.d - 2) * (p.d - 4)) * &half + rat(p.g - 1);
    let c_wl = rat(3) - rat(p.d) * &half;
    c_l2 * rat(p.l2) + c_wl * rat(p.omega_l) + rat(2 * p.omega2) - rat(4 * p.sigma)
}

/// Coefficient of `q^m` in `(1 − q)^{−e}`, by repeated series products.
pub fn series_coefficient(e: i64, m: u32) -> BigInt {
    let n = m as usize + 1;
    // (1 - q)^{-1} = Σ q^k ; (1 - q) itself for negative exponents
    let geometric: Vec<BigInt> = vec![BigInt::one(); n];
    let mut linear = vec![BigInt::zero(); n];
    linear[0] = BigInt::one();
    if n > 1 {
        linear[1] = -BigInt::one();
    }
    let factor = if e >= 0 { &geometric } else { &linear };
    let mut acc = vec![BigInt::zero(); n];
    acc[0] = BigInt::one();
    for _ in 0..e.abs() {
        let mut next = vec![BigInt::zero(); n];
        for (a, ca) in acc.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in factor.iter().enumerate().take(n - a) {
                next[a + b] += ca * cb;
            }
        }
        acc = next;
    }
    acc.swap_remove(m as usize)
}

#[derive(Clone, Debug)]
pub struct SweepRow {
    pub params: FamilyParams,
    pub closed: BigInt,
    pub stratified: BigInt,
    pub oracle: BigInt,
}

impl SweepRow {
    pub fn agree(&self) -> bool {
        self.closed == self.stratified && self.closed == self.oracle
    }
}

/// All three modes over a grid of parameters.
pub fn sweep(gs: &[u32], gbs: &[u32], ms: &[u32], sigmas: &[u32]) -> Vec<SweepRow> {
    let mut out = Vec::new();
    for &g in gs {
        for &gb in gbs {
            for &m in ms {
                for &sigma in sigmas {
                    let params = FamilyParams { g, gb, sigma, m };
                    out.push(SweepRow {
                        params,
                        closed: euler_hilb(params, EulerMode::Closed),
                        stratified: euler_hilb(params, EulerMode::Stratified),
                        oracle: euler_hilb(params, EulerMode::Oracle),
                    });
                }
            }
        }
    }
    out
}

pub fn is_nonnegative(b: &BigInt) -> bool {
    !b.is_negative()
}
