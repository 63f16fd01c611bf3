use std::collections::HashMap;

use num_traits::Zero;

use super::{Poly, Rat};
use crate::error::{Error, Result};

fn check_square(mat: &[Vec<Poly>]) -> Result<usize> {
    let n = mat.len();
    for row in mat {
        if row.len() != n {
            return Err(Error::Shape { rows: n, cols: row.len() });
        }
    }
    for w in mat.iter().flatten().collect::<Vec<_>>().windows(2) {
        if !super::compatible(w[0].ctx(), w[1].ctx()) {
            return Err(Error::ContextMismatch);
        }
    }
    Ok(n)
}

/// Exact determinant of a square polynomial matrix.
pub fn determinant(mat: &[Vec<Poly>]) -> Result<Poly> {
    determinant_cofactor(mat)
}

/// Laplace expansion along successive rows, memoised on the set of columns
/// still available.
pub fn determinant_cofactor(mat: &[Vec<Poly>]) -> Result<Poly> {
    let n = check_square(mat)?;
    if n == 0 {
        return Err(Error::Shape { rows: 0, cols: 0 });
    }
    assert!(n < usize::BITS as usize);
    let ctx = mat[0][0].ctx().clone();
    // minors[mask] = det of the bottom |mask| rows restricted to columns in mask
    let mut minors: HashMap<usize, Poly> = HashMap::new();
    minors.insert(0, Poly::one(&ctx));
    let mut layer: Vec<usize> = vec![0];
    for row in (0..n).rev() {
        let mut next: Vec<usize> = Vec::new();
        let mut computed: HashMap<usize, Poly> = HashMap::new();
        for &mask in &layer {
            for col in 0..n {
                if mask & (1 << col) != 0 {
                    continue;
                }
                let wider = mask | (1 << col);
                if computed.contains_key(&wider) {
                    continue;
                }
                // expand the minor on `wider` along its first row (`row`)
                let mut acc = Poly::zero(&ctx);
                let mut sign_pos = true;
                for c in 0..n {
                    if wider & (1 << c) == 0 {
                        continue;
                    }
                    let entry = &mat[row][c];
                    if !entry.is_zero() {
                        let sub = &minors[&(wider & !(1 << c))];
                        let t = entry * sub;
                        acc = if sign_pos { &acc + &t } else { &acc - &t };
                    }
                    sign_pos = !sign_pos;
                }
                computed.insert(wider, acc);
                next.push(wider);
            }
        }
        minors = computed;
        layer = next;
    }
    Ok(minors.remove(&((1usize << n) - 1)).unwrap())
}

/// Fraction-free Gaussian elimination (Bareiss), with exact polynomial
/// division at each step.
pub fn determinant_bareiss(mat: &[Vec<Poly>]) -> Result<Poly> {
    let n = check_square(mat)?;
    if n == 0 {
        return Err(Error::Shape { rows: 0, cols: 0 });
    }
    let ctx = mat[0][0].ctx().clone();
    let mut a: Vec<Vec<Poly>> = mat.to_vec();
    let mut prev = Poly::one(&ctx);
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(Poly::zero(&ctx)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss step is an exact division");
            }
            a[i][k] = Poly::zero(&ctx);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Rank of a rational matrix.
pub fn rat_rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let p = m[rank][col].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = &m[r][col] / &p;
                for c in col..ncols {
                    let d = &f * &m[rank][c];
                    m[r][c] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}
