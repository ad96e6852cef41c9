//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use grouphom::smith::{smith_normal_form, SnfResult};
use grouphom::IntMatrix;

/// Determinant by cofactor expansion along the first row.
pub fn laplace_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0] as i128;
    }
    let mut total = 0i128;
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        total += sign * m[0][j] as i128 * laplace_det(&minor);
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Greatest common divisor of all `k × k` minors, `0` when they all vanish.
pub fn minor_gcd(m: &[Vec<i64>], k: usize) -> i128 {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut g = 0i128;
    for rs in subsets(rows, k) {
        for cs in subsets(cols, k) {
            let sub: Vec<Vec<i64>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
            g = g.gcd(&laplace_det(&sub));
        }
    }
    g
}

/// Checks every defining property of a Smith normal form of `m`.
pub fn check_snf(m: &[Vec<i64>], cols: usize) -> Result<SnfResult, String> {
    let a = IntMatrix::from_rows_with_cols(m, cols);
    let snf = smith_normal_form(&a);
    if snf.left.mul(&a).mul(&snf.right) != snf.diagonal_matrix() {
        return Err(format!("left·M·right is not diagonal for {m:?}"));
    }
    for (name, u) in [("left", &snf.left), ("right", &snf.right)] {
        if !u.determinant().abs().is_one() {
            return Err(format!("{name} transform is not unimodular for {m:?}"));
        }
    }
    let d = &snf.diagonal;
    if d.len() != m.len().min(cols) {
        return Err(format!("diagonal has {} entries for {m:?}", d.len()));
    }
    if d.iter().any(|x| x.is_negative()) {
        return Err(format!("negative invariant factor for {m:?}: {d:?}"));
    }
    for w in d.windows(2) {
        let ok = if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) };
        if !ok {
            return Err(format!("divisibility chain broken for {m:?}: {d:?}"));
        }
    }
    let mut prefix = BigInt::one();
    for k in 1..=d.len() {
        prefix *= &d[k - 1];
        let g = minor_gcd(m, k);
        if prefix != BigInt::from(g) {
            return Err(format!("d1···d{k} = {prefix} but gcd of {k}-minors is {g} for {m:?}"));
        }
    }
    Ok(snf)
}
