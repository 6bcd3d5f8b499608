//! Dense integer matrices and exact lattice algorithms over ℤ.
//!
//! Everything here is fraction-free: row operations are unimodular
//! (swaps, negation, adding integer multiples, and 2×2 extended-gcd
//! combinations), so kernels and normal forms are exact.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn from_columns(columns: &[Vec<i64>]) -> Self {
        Self::from_rows(columns).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `self - lambda·I`.
    pub fn shifted(&self, lambda: i64) -> Self {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            m[(i, i)] -= lambda;
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    /// Every entry reduced into `[0, m)`.
    pub fn reduce_mod(&self, m: i64) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.rem_euclid(m)).collect(),
        }
    }

    pub fn try_mul(&self, other: &IntMatrix) -> Option<IntMatrix> {
        if self.cols != other.rows {
            return None;
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Some(out)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.try_mul(rhs).expect("matrix dimension mismatch")
    }
}

impl fmt::Display for IntMatrix {
    /// `[[a,b],[c,d]]`, row-major.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{self}")
    }
}

/// Returns `(g, s, t)` with `g = gcd(a, b) >= 0` and `s·a + t·b = g`.
pub fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Row-style echelon form by unimodular row operations on `rows`, restricted
/// to the first `pivot_cols` columns. Returns the pivot column of each
/// nonzero leading row, in order. Pivots are made positive and the entries
/// above each pivot are reduced into `[0, pivot)`.
fn echelonize(rows: &mut [Vec<i64>], pivot_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows.len() {
            break;
        }
        // Fold every row below r into row r via 2×2 gcd steps.
        for i in (r + 1)..rows.len() {
            let (a, b) = (rows[r][c], rows[i][c]);
            if b == 0 {
                continue;
            }
            let (g, s, t) = extended_gcd(a, b);
            let (ag, bg) = (a / g, b / g);
            let (top, bottom) = {
                let (head, tail) = rows.split_at_mut(i);
                (&mut head[r], &mut tail[0])
            };
            for k in 0..top.len() {
                let (x, y) = (top[k], bottom[k]);
                top[k] = s * x + t * y;
                bottom[k] = -bg * x + ag * y;
            }
        }
        if rows[r][c] == 0 {
            continue;
        }
        if rows[r][c] < 0 {
            rows[r].iter_mut().for_each(|x| *x = -*x);
        }
        let pivot = rows[r][c];
        for i in 0..r {
            let q = rows[i][c].div_euclid(pivot);
            if q != 0 {
                let (head, tail) = rows.split_at_mut(r);
                for (x, y) in head[i].iter_mut().zip(&tail[0]) {
                    *x -= q * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Hermite normal form (row style) of the lattice spanned by `vectors`.
/// Zero rows are dropped, so the result is a basis.
pub fn hermite_normal_form(vectors: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let Some(dim) = vectors.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut rows = vectors.to_vec();
    let pivots = echelonize(&mut rows, dim);
    rows.truncate(pivots.len());
    rows
}

/// A ℤ-basis (Hermite normal form) of `{ v ∈ ℤ^cols : m·v = 0 }`.
///
/// Reduces `[mᵀ | I]`; rows whose left block vanishes carry kernel vectors
/// in the right block. The result is automatically saturated.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<i64>> {
    let n = m.cols();
    let mut rows: Vec<Vec<i64>> = (0..n)
        .map(|j| {
            let mut row = m.column(j);
            row.extend((0..n).map(|k| i64::from(k == j)));
            row
        })
        .collect();
    let rank = echelonize(&mut rows, m.rows()).len();
    let kernel: Vec<Vec<i64>> = rows[rank..]
        .iter()
        .map(|row| row[m.rows()..].to_vec())
        .collect();
    hermite_normal_form(&kernel)
}

/// Nonzero elementary divisors (Smith normal form diagonal) of the matrix
/// whose rows are `vectors`.
pub fn elementary_divisors(vectors: &[Vec<i64>]) -> Vec<i64> {
    let mut a: Vec<Vec<i64>> = vectors.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut divisors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry in the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let pivot = a[t][t];
        let mut clean = true;
        for i in (t + 1)..rows {
            let q = a[i][t] / pivot;
            if q != 0 {
                for j in t..cols {
                    a[i][j] -= q * a[t][j];
                }
            }
            clean &= a[i][t] == 0;
        }
        for j in (t + 1)..cols {
            let q = a[t][j] / pivot;
            if q != 0 {
                for row in a.iter_mut().skip(t) {
                    row[j] -= q * row[t];
                }
            }
            clean &= a[t][j] == 0;
        }
        if !clean {
            continue;
        }
        // Pivot must divide the remaining block; otherwise fold a row in.
        let bad = ((t + 1)..rows)
            .flat_map(|i| ((t + 1)..cols).map(move |j| (i, j)))
            .find(|&(i, j)| a[i][j] % pivot != 0);
        if let Some((i, _)) = bad {
            for j in t..cols {
                a[t][j] += a[i][j];
            }
            continue;
        }
        divisors.push(pivot.abs());
        t += 1;
    }
    divisors
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_identity() {
        for (a, b) in [(12, 18), (-4, 6), (0, 5), (7, 0), (-3, -9)] {
            let (g, s, t) = extended_gcd(a, b);
            assert_eq!(s * a + t * b, g);
            assert!(g >= 0);
        }
    }

    #[test]
    fn hnf_simple() {
        let h = hermite_normal_form(&[vec![2, 4], vec![3, 5]]);
        assert_eq!(h, vec![vec![1, 1], vec![0, 2]]);
        assert!(hermite_normal_form(&[vec![0, 0]]).is_empty());
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 6]]);
        let k = integer_kernel(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(m.apply(v), vec![0]);
        }
        assert_eq!(elementary_divisors(&k), vec![1, 1]);
    }

    #[test]
    fn smith_diagonal() {
        assert_eq!(elementary_divisors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(elementary_divisors(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(elementary_divisors(&[vec![1, 1, 0], vec![0, 2, 2]]), vec![1, 2]);
    }

    #[test]
    fn display() {
        assert_eq!(IntMatrix::from_rows(&[vec![1, 2], vec![0, 1]]).to_string(), "[[1,2],[0,1]]");
    }

    #[test]
    fn from_columns_is_transpose() {
        let m = IntMatrix::from_columns(&[vec![1, 0], vec![2, 1]]);
        assert_eq!(m, IntMatrix::from_rows(&[vec![1, 2], vec![0, 1]]));
    }
}
