//! The ordered local model `x_k y_k = t`, mixed Van der Monde determinants
//! `G_i`, their syzygies, and their vanishing orders along the components
//! `Θ_I` of the special fiber.

use std::collections::BTreeMap;

use crate::arith::{determinant, elementary_symmetric, substitute, Context, Ctx, Frac, Mono, Poly, TLaurent};
use crate::error::{Error, Result};
use crate::groebner::{normal_form, GroebnerBasis, MonomialOrder};

/// `ℚ[x_1..x_m, y_1..y_m, t]/(x_k y_k − t)`.
#[derive(Clone, Debug)]
pub struct CycleRing {
    m: usize,
    ctx: Ctx,
    gb: GroebnerBasis,
}

impl CycleRing {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Range("m must be at least 1".into()));
        }
        let mut names: Vec<String> = (1..=m).map(|k| format!("x{k}")).collect();
        names.extend((1..=m).map(|k| format!("y{k}")));
        names.push("t".into());
        let ctx = Context::new(names)?;
        let t = Poly::var_at(&ctx, 2 * m);
        let rels: Vec<Poly> =
            (0..m).map(|k| &(&Poly::var_at(&ctx, k) * &Poly::var_at(&ctx, m + k)) - &t).collect();
        // pairwise coprime leading terms x_k y_k: already a Gröbner basis
        let gb = GroebnerBasis::assume(&ctx, rels, &MonomialOrder::default_for(&ctx))?;
        Ok(CycleRing { m, ctx, gb })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn relations(&self) -> &[Poly] {
        self.gb.elements()
    }

    /// 1-based.
    pub fn x(&self, k: usize) -> Poly {
        Poly::var_at(&self.ctx, k - 1)
    }

    pub fn y(&self, k: usize) -> Poly {
        Poly::var_at(&self.ctx, self.m + k - 1)
    }

    pub fn t(&self) -> Poly {
        Poly::var_at(&self.ctx, 2 * self.m)
    }

    pub fn t_index(&self) -> usize {
        2 * self.m
    }

    pub fn sigma_x(&self, k: usize) -> Poly {
        elementary_symmetric(&self.ctx, &(0..self.m).collect::<Vec<_>>(), k).unwrap()
    }

    pub fn sigma_y(&self, k: usize) -> Poly {
        elementary_symmetric(&self.ctx, &(self.m..2 * self.m).collect::<Vec<_>>(), k).unwrap()
    }

    /// Normal form by the rewrite `x_k y_k → t`, applied to every term at
    /// once.
    pub fn reduce(&self, f: &Poly) -> Poly {
        let m = self.m;
        Poly::from_terms(
            &self.ctx,
            f.terms().map(|(mono, c)| {
                let mut e = mono.exps().to_vec();
                for k in 0..m {
                    let common = e[k].min(e[m + k]);
                    e[k] -= common;
                    e[m + k] -= common;
                    e[2 * m] += common;
                }
                (Mono::from_exps(e), c.clone())
            }),
        )
    }

    /// Normal form by Gröbner division with respect to `{x_k y_k − t}`.
    pub fn reduce_groebner(&self, f: &Poly) -> Poly {
        normal_form(f, &self.gb)
    }

    pub fn congruent(&self, a: &Poly, b: &Poly) -> bool {
        self.reduce(&(a - b)).is_zero()
    }
}

/// `V^m_i`: columns are the points `k = 1..m`, rows are
/// `1, x, .., x^{m−i}, y, .., y^{i−1}` evaluated there.
#[derive(Clone, Debug)]
pub struct MixedVdM {
    pub m: usize,
    pub i: usize,
    pub matrix: Vec<Vec<Poly>>,
    pub det: Poly,
}

pub fn mixed_vdm(ring: &CycleRing, i: usize) -> Result<MixedVdM> {
    let m = ring.m;
    if i == 0 || i > m {
        return Err(Error::Range(format!("mixed Van der Monde needs 1 <= i <= m, got i={i}, m={m}")));
    }
    let mut matrix: Vec<Vec<Poly>> = vec![(1..=m).map(|_| Poly::one(&ring.ctx)).collect()];
    for e in 1..=(m - i) as u32 {
        matrix.push((1..=m).map(|k| ring.x(k).pow(e)).collect());
    }
    for e in 1..i as u32 {
        matrix.push((1..=m).map(|k| ring.y(k).pow(e)).collect());
    }
    let det = determinant(&matrix)?;
    Ok(MixedVdM { m, i, matrix, det })
}

/// Signs `s(1..m)` with `s(1) = +1`; `G̃_i = s(i) det V^m_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignAssignment(pub Vec<i8>);

impl SignAssignment {
    /// 1-based.
    pub fn sign(&self, i: usize) -> i8 {
        self.0[i - 1]
    }
}

/// A relation `lhs · G̃_a ≡ rhs · G̃_b` between two determinants.
#[derive(Clone, Debug)]
pub struct LinearRelation {
    pub family: &'static str,
    pub i: usize,
    pub j: usize,
    /// Exponent as printed (may be negative), and as actually cleared.
    pub printed_exponent: i64,
    pub lhs_index: usize,
    pub rhs_index: usize,
    pub lhs_factor: Poly,
    pub rhs_factor: Poly,
}

/// The determinants `det V^m_1 .. det V^m_m` of a ring.
pub struct VdmFamily {
    pub ring: CycleRing,
    pub dets: Vec<Poly>,
}

impl VdmFamily {
    pub fn new(m: usize) -> Result<Self> {
        let ring = CycleRing::new(m)?;
        let dets = (1..=m).map(|i| mixed_vdm(&ring, i).map(|v| v.det)).collect::<Result<Vec<_>>>()?;
        Ok(VdmFamily { ring, dets })
    }

    pub fn m(&self) -> usize {
        self.ring.m
    }

    pub fn det(&self, i: usize) -> &Poly {
        &self.dets[i - 1]
    }

    pub fn signed(&self, s: &SignAssignment, i: usize) -> Poly {
        let d = self.det(i);
        if s.sign(i) < 0 {
            -d
        } else {
            d.clone()
        }
    }

    fn t_pow(&self, e: i64) -> Poly {
        self.ring.t().pow(e.max(0) as u32)
    }

    /// `σ^y_{m−j} G_i ~ t^{m−j−i} σ^x_j G_{i+1}` and the mirror family
    /// `σ^x_{m−j} G_i ~ t^{i−1−j} σ^y_j G_{i−1}`, with negative powers of
    /// `t` moved to the other side.
    pub fn linear_relations(&self) -> Vec<LinearRelation> {
        let m = self.m();
        let r = &self.ring;
        let mut out = Vec::new();
        for i in 1..m {
            for j in 0..m {
                let e = m as i64 - j as i64 - i as i64;
                out.push(LinearRelation {
                    family: "y-to-x",
                    i,
                    j,
                    printed_exponent: e,
                    lhs_index: i,
                    rhs_index: i + 1,
                    lhs_factor: &self.t_pow(-e) * &r.sigma_y(m - j),
                    rhs_factor: &self.t_pow(e) * &r.sigma_x(j),
                });
            }
        }
        for i in 2..=m {
            for j in 0..m {
                let e = i as i64 - 1 - j as i64;
                out.push(LinearRelation {
                    family: "x-to-y",
                    i,
                    j,
                    printed_exponent: m as i64 - j as i64 - i as i64,
                    lhs_index: i,
                    rhs_index: i - 1,
                    lhs_factor: &self.t_pow(-e) * &r.sigma_x(m - j),
                    rhs_factor: &self.t_pow(e) * &r.sigma_y(j),
                });
            }
        }
        out
    }
}

/// How a relation behaves under the unsigned determinants: holds as is,
/// holds up to an overall sign, or not at all.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Parity {
    Same,
    Opposite,
    Either,
    Neither,
}

fn parity(ring: &CycleRing, lhs: &Poly, rhs: &Poly) -> Parity {
    let a = ring.reduce(lhs);
    let b = ring.reduce(rhs);
    match (a == b, a == -&b) {
        (true, true) => Parity::Either,
        (true, false) => Parity::Same,
        (false, true) => Parity::Opposite,
        (false, false) => Parity::Neither,
    }
}

/// Exhaustive search over the `2^{m−1}` sign patterns for one under which
/// every linear relation holds exactly.
pub fn find_sign_assignment(fam: &VdmFamily) -> Result<SignAssignment> {
    let m = fam.m();
    if m < 2 {
        return Ok(SignAssignment(vec![1; m]));
    }
    let rels = fam.linear_relations();
    let parities: Vec<(usize, usize, Parity)> = rels
        .iter()
        .map(|r| {
            let lhs = &r.lhs_factor * fam.det(r.lhs_index);
            let rhs = &r.rhs_factor * fam.det(r.rhs_index);
            (r.lhs_index, r.rhs_index, parity(&fam.ring, &lhs, &rhs))
        })
        .collect();
    for mask in 0u32..(1 << (m - 1)) {
        let signs: Vec<i8> =
            std::iter::once(1).chain((0..m - 1).map(|b| if mask & (1 << b) != 0 { -1 } else { 1 })).collect();
        let ok = parities.iter().all(|&(a, b, p)| match p {
            Parity::Either => true,
            Parity::Neither => false,
            Parity::Same => signs[a - 1] == signs[b - 1],
            Parity::Opposite => signs[a - 1] != signs[b - 1],
        });
        if ok {
            return Ok(SignAssignment(signs));
        }
    }
    Err(Error::Verification(format!("no sign assignment satisfies the linear relations for m={m}")))
}

#[derive(Clone, Debug)]
pub struct LinearCheck {
    pub family: &'static str,
    pub i: usize,
    pub j: usize,
    pub printed_exponent: i64,
    /// Exponent of `t` that actually closes the relation (same as printed
    /// for the main family; for the mirror family it is `i − 1 − j`).
    pub used_exponent: i64,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct QuadraticCheck {
    pub i: usize,
    pub j: usize,
    /// Least `e` with `G̃_i G̃_j ≡ t^e G̃_{i+1} G̃_{j−1}`, if one exists.
    pub exponent: Option<u32>,
    pub printed_exponent: u32,
}

#[derive(Clone, Debug)]
pub struct SyzygyReport {
    pub m: usize,
    pub signs: SignAssignment,
    pub linear: Vec<LinearCheck>,
    pub quadratic: Vec<QuadraticCheck>,
}

impl SyzygyReport {
    pub fn all_linear_hold(&self) -> bool {
        self.linear.iter().all(|c| c.holds)
    }

    /// Every quadratic relation closes with exponent `j − i − 1`.
    pub fn quadratic_exponents_expected(&self) -> bool {
        self.quadratic.iter().all(|q| q.exponent == Some((q.j - q.i - 1) as u32))
    }
}

/// Checks every linear relation under the sign assignment and finds the
/// least exponent of each quadratic relation.
pub fn verify_syzygies(fam: &VdmFamily, signs: &SignAssignment) -> Result<SyzygyReport> {
    let m = fam.m();
    let ring = &fam.ring;
    let mut linear = Vec::new();
    for r in fam.linear_relations() {
        let lhs = &r.lhs_factor * &fam.signed(signs, r.lhs_index);
        let rhs = &r.rhs_factor * &fam.signed(signs, r.rhs_index);
        let used = match r.family {
            "y-to-x" => r.printed_exponent,
            _ => r.i as i64 - 1 - r.j as i64,
        };
        linear.push(LinearCheck {
            family: r.family,
            i: r.i,
            j: r.j,
            printed_exponent: r.printed_exponent,
            used_exponent: used,
            holds: ring.congruent(&lhs, &rhs),
        });
    }
    let mut quadratic = Vec::new();
    for i in 1..=m {
        for j in i + 2..=m {
            let lhs = ring.reduce(&(&fam.signed(signs, i) * &fam.signed(signs, j)));
            let base = ring.reduce(&(&fam.signed(signs, i + 1) * &fam.signed(signs, j - 1)));
            let t = ring.t();
            let mut rhs = base;
            let mut exponent = None;
            for e in 0..=(m * m) as u32 {
                if lhs == rhs {
                    exponent = Some(e);
                    break;
                }
                rhs = &rhs * &t;
            }
            quadratic.push(QuadraticCheck { i, j, exponent, printed_exponent: 1 });
        }
    }
    Ok(SyzygyReport { m, signs: signs.clone(), linear, quadratic })
}

#[derive(Clone, Debug)]
pub struct TransferCheck {
    pub m: usize,
    pub i: usize,
    pub exponent: u32,
    /// `Some(±1)` when `t^e G̃_i ≡ ±(σ^y_m)^{i−1} G̃_1`.
    pub sign: Option<i8>,
}

/// `t^{(i−1)(2m−i)/2} G̃_i ≡ ±(σ^y_m)^{i−1} G̃_1`.
pub fn g1_transfer_identity(fam: &VdmFamily, signs: &SignAssignment, i: usize) -> Result<TransferCheck> {
    let m = fam.m();
    if i < 2 || i > m {
        return Err(Error::Range(format!("transfer identity needs 2 <= i <= m, got i={i}")));
    }
    let ring = &fam.ring;
    let exponent = ((i - 1) * (2 * m - i) / 2) as u32;
    let lhs = &ring.t().pow(exponent) * &fam.signed(signs, i);
    let rhs = &ring.sigma_y(m).pow((i - 1) as u32) * &fam.signed(signs, 1);
    let sign = match parity(ring, &lhs, &rhs) {
        Parity::Same | Parity::Either => Some(1),
        Parity::Opposite => Some(-1),
        Parity::Neither => None,
    };
    Ok(TransferCheck { m, i, exponent, sign })
}

/// The three relations of the `m = 2` ordered model among `σ^x_1, σ^x_2,
/// σ^y_1, σ^y_2` and `t`.
pub fn cone_relations_m2() -> Result<Vec<(String, bool)>> {
    let r = CycleRing::new(2)?;
    let t = r.t();
    let checks = [
        ("sx1*sy2 = t*sy1", &r.sigma_y(2) * &r.sigma_x(1), &t * &r.sigma_y(1)),
        ("sx2*sy1 = t*sx1", &r.sigma_x(2) * &r.sigma_y(1), &t * &r.sigma_x(1)),
        ("sx2*sy2 = t^2", &r.sigma_x(2) * &r.sigma_y(2), t.pow(2)),
    ];
    Ok(checks.into_iter().map(|(name, a, b)| (name.to_string(), r.congruent(&a, &b))).collect())
}

/// `Θ_I`: points in `I` lie on the `y`-branch (`x_j = t/y_j`), the others on
/// the `x`-branch (`y_j = t/x_j`). 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaComponent {
    pub indices: Vec<usize>,
}

impl ThetaComponent {
    pub fn new(m: usize, mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        if indices.iter().any(|&k| k == 0 || k > m) {
            return Err(Error::Range(format!("index set {indices:?} not inside 1..={m}")));
        }
        Ok(ThetaComponent { indices })
    }

    pub fn from_mask(m: usize, mask: u32) -> Self {
        ThetaComponent { indices: (1..=m).filter(|k| mask & (1 << (k - 1)) != 0).collect() }
    }

    pub fn k(&self) -> usize {
        self.indices.len()
    }
}

#[derive(Clone, Debug)]
pub struct VanishingOrder {
    pub order: i64,
    /// Coefficient of the lowest power of `t`: a nonzero rational function
    /// of the free coordinates.
    pub leading: Frac,
}

/// Order of `G_i` along `Θ_I`, from the `t`-expansion at its generic point.
pub fn vanishing_order(fam: &VdmFamily, i: usize, theta: &ThetaComponent) -> Result<VanishingOrder> {
    let m = fam.m();
    if i == 0 || i > m {
        return Err(Error::Range(format!("i={i} outside 1..={m}")));
    }
    let ring = &fam.ring;
    let ctx = ring.ctx();
    let t = Frac::from_poly(ring.t());
    let mut names: Vec<(String, Frac)> = Vec::with_capacity(m);
    for k in 1..=m {
        if theta.indices.contains(&k) {
            names.push((format!("x{k}"), &t / &Frac::from_poly(ring.y(k))));
        } else {
            names.push((format!("y{k}"), &t / &Frac::from_poly(ring.x(k))));
        }
    }
    let bindings: Vec<(&str, Frac)> = names.iter().map(|(n, f)| (n.as_str(), f.clone())).collect();
    let image = substitute(fam.det(i), ctx, &bindings)?;
    let laurent = TLaurent::from_frac(&image, ring.t_index())?;
    match (laurent.order(), laurent.leading_coeff()) {
        (Some(order), Some(leading)) => Ok(VanishingOrder { order, leading: leading.clone() }),
        _ => Err(Error::Model(format!("G_{i} vanishes identically on Θ_{:?}", theta.indices))),
    }
}

/// `(k−i)(k−i+1)/2`: the order observed on the ordered model.
pub fn oracle_order(k: usize, i: usize) -> i64 {
    let a = k as i64 - i as i64;
    a * (a + 1) / 2
}

/// `(k−i)² + (k−i)`, the value as printed.
pub fn printed_order(k: usize, i: usize) -> i64 {
    let a = k as i64 - i as i64;
    a * a + a
}

#[derive(Clone, Debug)]
pub struct OrderRow {
    pub i: usize,
    pub k: usize,
    pub order: i64,
    pub oracle: i64,
    pub printed: i64,
}

#[derive(Clone, Debug)]
pub struct OrderTable {
    pub m: usize,
    pub rows: Vec<OrderRow>,
    /// Does the order depend only on `|I|`?
    pub depends_only_on_k: bool,
    /// Is the order zero exactly when `|I| ∈ {i−1, i}`?
    pub zero_locus_ok: bool,
}

impl OrderTable {
    pub fn order(&self, i: usize, k: usize) -> Option<i64> {
        self.rows.iter().find(|r| r.i == i && r.k == k).map(|r| r.order)
    }

    pub fn matches_oracle(&self) -> bool {
        self.rows.iter().all(|r| r.order == r.oracle)
    }
}

/// Vanishing orders of every `G_i` along every `Θ_I`.
pub fn verify_discriminant_pullback(fam: &VdmFamily) -> Result<OrderTable> {
    let m = fam.m();
    let mut by_k: BTreeMap<(usize, usize), Vec<i64>> = BTreeMap::new();
    for i in 1..=m {
        for mask in 0u32..(1 << m) {
            let theta = ThetaComponent::from_mask(m, mask);
            let o = vanishing_order(fam, i, &theta)?;
            by_k.entry((i, theta.k())).or_default().push(o.order);
        }
    }
    let depends_only_on_k = by_k.values().all(|v| v.iter().all(|&o| o == v[0]));
    let rows: Vec<OrderRow> = by_k
        .iter()
        .map(|(&(i, k), v)| OrderRow { i, k, order: v[0], oracle: oracle_order(k, i), printed: printed_order(k, i) })
        .collect();
    let zero_locus_ok = rows.iter().all(|r| (r.order == 0) == (r.k + 1 == r.i || r.k == r.i));
    Ok(OrderTable { m, rows, depends_only_on_k, zero_locus_ok })
}

/// `ord_i + ord_j = e + ord_{i+1} + ord_{j−1}` at every `k`, for each
/// quadratic relation that closed.
pub fn order_additivity(table: &OrderTable, syz: &SyzygyReport) -> bool {
    syz.quadratic.iter().all(|q| {
        let Some(e) = q.exponent else { return false };
        (0..=table.m).all(|k| {
            let o = |i| table.order(i, k).unwrap();
            o(q.i) + o(q.j) == e as i64 + o(q.i + 1) + o(q.j - 1)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_poly;

    fn fam(m: usize) -> VdmFamily {
        VdmFamily::new(m).unwrap()
    }

    #[test]
    fn small_determinants() {
        let f = fam(2);
        let c = f.ring.ctx();
        assert_eq!(f.det(1), &parse_poly(c, "x2 - x1").unwrap());
        assert_eq!(f.det(2), &parse_poly(c, "y2 - y1").unwrap());
        let f = fam(3);
        let c = f.ring.ctx();
        assert_eq!(f.det(2), &parse_poly(c, "x2*y3 - x3*y2 - x1*y3 + x3*y1 + x1*y2 - x2*y1").unwrap());
    }

    #[test]
    fn sign_search() {
        let f = fam(2);
        assert_eq!(find_sign_assignment(&f).unwrap(), SignAssignment(vec![1, -1]));
        for m in 3..=4 {
            let f = fam(m);
            let s = find_sign_assignment(&f).unwrap();
            assert_eq!(s.sign(1), 1);
            assert!(verify_syzygies(&f, &s).unwrap().all_linear_hold());
        }
    }

    #[test]
    fn m2_relations() {
        let f = fam(2);
        let s = find_sign_assignment(&f).unwrap();
        let r = &f.ring;
        assert!(r.congruent(&(&r.sigma_y(2) * &f.signed(&s, 1)), &(&r.t() * &f.signed(&s, 2))));
        assert!(r.congruent(&(&r.sigma_x(2) * &r.sigma_y(2)), &r.t().pow(2)));
        assert!(cone_relations_m2().unwrap().iter().all(|(_, ok)| *ok));
    }

    #[test]
    fn quadratic_exponents() {
        let f = fam(3);
        let s = find_sign_assignment(&f).unwrap();
        let rep = verify_syzygies(&f, &s).unwrap();
        assert_eq!(rep.quadratic.len(), 1);
        assert_eq!(rep.quadratic[0].exponent, Some(1));
        let f = fam(4);
        let s = find_sign_assignment(&f).unwrap();
        let rep = verify_syzygies(&f, &s).unwrap();
        let q14 = rep.quadratic.iter().find(|q| (q.i, q.j) == (1, 4)).unwrap();
        assert_eq!(q14.exponent, Some(2));
        assert!(rep.quadratic_exponents_expected());
    }

    #[test]
    fn transfer() {
        let f = fam(2);
        let s = find_sign_assignment(&f).unwrap();
        let c = g1_transfer_identity(&f, &s, 2).unwrap();
        assert_eq!(c.exponent, 1);
        assert!(c.sign.is_some());
        // t (y2 - y1) ≡ -y1 y2 (x2 - x1)
        let r = &f.ring;
        let lhs = &r.t() * f.det(2);
        let rhs = -(&r.sigma_y(2) * f.det(1));
        assert!(r.congruent(&lhs, &rhs));
        let f = fam(3);
        let s = find_sign_assignment(&f).unwrap();
        assert_eq!(g1_transfer_identity(&f, &s, 2).unwrap().exponent, 2);
        let c = g1_transfer_identity(&f, &s, 3).unwrap();
        assert_eq!(c.exponent, 3);
        assert!(c.sign.is_some());
    }

    #[test]
    fn orders() {
        let f = fam(2);
        let o = |i, ix: Vec<usize>| vanishing_order(&f, i, &ThetaComponent::new(f.m(), ix).unwrap()).unwrap().order;
        assert_eq!(o(1, vec![1]), 0);
        assert_eq!(o(1, vec![1, 2]), 1);
        let f3 = fam(3);
        let th = ThetaComponent::new(3, vec![1, 2, 3]).unwrap();
        assert_eq!(vanishing_order(&f3, 1, &th).unwrap().order, 3);
        let table = verify_discriminant_pullback(&f3).unwrap();
        assert!(table.depends_only_on_k && table.zero_locus_ok && table.matches_oracle());
        let t2 = verify_discriminant_pullback(&f).unwrap();
        let row = t2.rows.iter().find(|r| r.i == 1 && r.k == 2).unwrap();
        assert_eq!((row.order, row.printed), (1, 2));
    }

    #[test]
    fn order_additivity_holds() {
        let f = fam(4);
        let s = find_sign_assignment(&f).unwrap();
        let syz = verify_syzygies(&f, &s).unwrap();
        let table = verify_discriminant_pullback(&f).unwrap();
        assert!(order_additivity(&table, &syz));
    }

    #[test]
    fn substitution_example() {
        let f = fam(2);
        let th = ThetaComponent::new(2, vec![1, 2]).unwrap();
        let v = vanishing_order(&f, 1, &th).unwrap();
        let c = f.ring.ctx();
        let expected = Frac::new(parse_poly(c, "y1 - y2").unwrap(), parse_poly(c, "y1*y2").unwrap()).unwrap();
        assert_eq!(v.leading, expected);
    }
}
