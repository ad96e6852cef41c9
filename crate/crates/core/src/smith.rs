//! Exact integer matrices and Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::presentation::Presentation;

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Panics if the rows have unequal lengths.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    /// Like [`IntMatrix::from_rows`], with the column count given explicitly so
    /// that matrices with zero rows keep their width.
    pub fn from_rows_with_cols<T: Into<BigInt> + Clone>(rows: &[Vec<T>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r.iter().cloned().map(Into::into));
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    /// Determinant by fraction-free Bareiss elimination. Square matrices only.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[(k, k)].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !m[(r, k)].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap_rows(k, r);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
            }
            prev = m[(k, k)].clone();
        }
        sign * &m[(n - 1, n - 1)]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k · row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += k · col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * k;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `left · M · right = diag(diagonal)` with unimodular `left`, `right`.
#[derive(Debug, Clone)]
pub struct SnfResult {
    /// `min(rows, cols)` entries; nonzero ones form a divisibility chain and
    /// precede all zeros.
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// The diagonal as a `rows × cols` matrix.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.left.rows(), self.right.rows());
        for (i, v) in self.diagonal.iter().enumerate() {
            d[(i, i)] = v.clone();
        }
        d
    }
}

/// Reduces `m` to Smith normal form, tracking both transforms.
///
/// The pivot is always the smallest nonzero absolute value in the remaining
/// submatrix (first in row-major order on ties).
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);

    let steps = rows.min(cols);
    for t in 0..steps {
        loop {
            let Some((pi, pj)) = min_pivot(&a, t) else {
                break;
            };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                let neg = -q;
                a.add_row(i, t, &neg);
                left.add_row(i, t, &neg);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                let neg = -q;
                a.add_col(j, t, &neg);
                right.add_col(j, t, &neg);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // Row and column are clear; the pivot must divide the rest.
            let pivot = a[(t, t)].clone();
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_multiple_of(&pivot));
            match bad {
                Some((i, _)) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    left.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }

    let diagonal = (0..steps).map(|i| a[(i, i)].clone()).collect();
    SnfResult { diagonal, left, right }
}

fn min_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = &a[(i, j)];
            if v.is_zero() {
                continue;
            }
            if best.map_or(true, |(bi, bj)| v.abs() < a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// One row per relator, one column per generator; entry `(i, j)` is the
/// exponent sum of generator `j` in relator `i`.
pub fn relation_matrix(p: &Presentation) -> IntMatrix {
    let n = p.n_generators();
    let rows: Vec<Vec<i64>> = p
        .relators()
        .iter()
        .map(|r| r.exponent_vector(n).expect("presentation relators are in range"))
        .collect();
    IntMatrix::from_rows_with_cols(&rows, n)
}

/// Invariant factors of the abelianization: torsion coefficients `> 1` in
/// ascending order, then one `0` per free cyclic factor.
pub fn abelian_invariants(p: &Presentation) -> Vec<BigInt> {
    let snf = smith_normal_form(&relation_matrix(p));
    let mut out: Vec<BigInt> = snf.diagonal.iter().filter(|d| **d > BigInt::one()).cloned().collect();
    out.sort();
    let free_rank = p.n_generators() - snf.rank();
    out.extend(std::iter::repeat(BigInt::zero()).take(free_rank));
    out
}

/// Whether `v` is an integer combination of the rows of `m`.
pub fn row_lattice_contains(m: &IntMatrix, v: &[BigInt]) -> bool {
    assert_eq!(v.len(), m.cols(), "vector length must match column count");
    let snf = smith_normal_form(m);
    // v = x·M  ⇔  v·R = y·D with y = x·L⁻¹ integral
    let mut w = vec![BigInt::zero(); m.cols()];
    for (j, wj) in w.iter_mut().enumerate() {
        for (k, vk) in v.iter().enumerate() {
            *wj += vk * &snf.right[(k, j)];
        }
    }
    w.iter().enumerate().all(|(j, wj)| match snf.diagonal.get(j) {
        Some(d) if !d.is_zero() => wj.is_multiple_of(d),
        _ => wj.is_zero(),
    })
}
