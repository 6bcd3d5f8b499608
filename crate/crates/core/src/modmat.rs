//! Dense square and rectangular matrices over `ℤ/m`.

use std::fmt;

use rand::Rng;

/// `a · b mod m` without overflow.
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u64)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModMatrix {
    modulus: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(modulus: u64, rows: usize, cols: usize) -> Self {
        assert!(modulus >= 1);
        ModMatrix {
            modulus,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(modulus: u64, n: usize) -> Self {
        let mut m = Self::zeros(modulus, n, n);
        for i in 0..n {
            m[(i, i)] = 1 % modulus;
        }
        m
    }

    /// Entries are reduced into `[0, modulus)`.
    pub fn from_rows(modulus: u64, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(modulus, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = x.rem_euclid(modulus as i64) as u64;
            }
        }
        m
    }

    /// Uniform entries from `scale·ℤ/m`.
    pub fn random_multiple<R: Rng + ?Sized>(
        modulus: u64,
        rows: usize,
        cols: usize,
        scale: u64,
        rng: &mut R,
    ) -> Self {
        let mut m = Self::zeros(modulus, rows, cols);
        let choices = modulus / gcd(scale, modulus);
        for x in &mut m.data {
            *x = mul_mod(rng.gen_range(0..choices), scale, modulus);
        }
        m
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[u64]>::to_vec).collect()
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn from_columns(modulus: u64, columns: &[Vec<u64>]) -> Self {
        let c = columns.len();
        let r = columns.first().map_or(0, Vec::len);
        let mut m = Self::zeros(modulus, r, c);
        for (j, col) in columns.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                m[(i, j)] = x % modulus;
            }
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.modulus, self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &ModMatrix) -> ModMatrix {
        self.zip(other, |a, b| (a + b) % self.modulus)
    }

    pub fn sub(&self, other: &ModMatrix) -> ModMatrix {
        self.zip(other, |a, b| (a + self.modulus - b) % self.modulus)
    }

    fn zip(&self, other: &ModMatrix, f: impl Fn(u64, u64) -> u64) -> ModMatrix {
        assert_eq!((self.modulus, self.rows, self.cols), (other.modulus, other.rows, other.cols));
        ModMatrix {
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: u64) -> ModMatrix {
        ModMatrix {
            data: self.data.iter().map(|&a| mul_mod(a, c, self.modulus)).collect(),
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.modulus, other.modulus);
        assert_eq!(self.cols, other.rows);
        let m = self.modulus as u128;
        let mut out = Self::zeros(self.modulus, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: u128 = 0;
                for k in 0..self.cols {
                    acc = (acc + self[(i, k)] as u128 * other[(k, j)] as u128) % m;
                }
                out[(i, j)] = acc as u64;
            }
        }
        out
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(0, |acc, k| (acc + mul_mod(self[(i, k)], v[k], self.modulus)) % self.modulus)
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> ModMatrix {
        let mut acc = Self::identity(self.modulus, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Entries reduced modulo a divisor of the modulus.
    pub fn reduce(&self, divisor: u64) -> ModMatrix {
        assert_eq!(self.modulus % divisor, 0, "{divisor} does not divide {}", self.modulus);
        ModMatrix {
            modulus: divisor,
            data: self.data.iter().map(|&a| a % divisor).collect(),
            ..self.clone()
        }
    }

    /// Inverse by Gauss–Jordan elimination with unit pivots. Over `ℤ/p^k`
    /// this succeeds exactly for invertible matrices; over other composite
    /// moduli it may return `None` for some invertible matrices.
    pub fn inverse(&self) -> Option<ModMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let m = self.modulus;
        let mut a = self.clone();
        let mut inv = Self::identity(m, n);
        for c in 0..n {
            let pivot_row = (c..n).find(|&r| inv_mod(a[(r, c)], m).is_some())?;
            a.swap_rows(c, pivot_row);
            inv.swap_rows(c, pivot_row);
            let p = inv_mod(a[(c, c)], m)?;
            a.scale_row(c, p);
            inv.scale_row(c, p);
            for r in 0..n {
                if r != c && a[(r, c)] != 0 {
                    let f = a[(r, c)];
                    a.add_row_multiple(r, c, m - f);
                    inv.add_row_multiple(r, c, m - f);
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for k in 0..self.cols {
                self.data.swap(i * self.cols + k, j * self.cols + k);
            }
        }
    }

    fn scale_row(&mut self, i: usize, c: u64) {
        for k in 0..self.cols {
            self[(i, k)] = mul_mod(self[(i, k)], c, self.modulus);
        }
    }

    /// row_i += c · row_j
    fn add_row_multiple(&mut self, i: usize, j: usize, c: u64) {
        for k in 0..self.cols {
            let v = mul_mod(self[(j, k)], c, self.modulus);
            self[(i, k)] = (self[(i, k)] + v) % self.modulus;
        }
    }

    /// `a b a⁻¹ b⁻¹`, if both are invertible.
    pub fn commutator(a: &ModMatrix, b: &ModMatrix) -> Option<ModMatrix> {
        Some(a.mul(b).mul(&a.inverse()?).mul(&b.inverse()?))
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl std::ops::Index<(usize, usize)> for ModMatrix {
    type Output = u64;
    fn index(&self, (i, j): (usize, usize)) -> &u64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ModMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.to_rows().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            let cells: Vec<String> = row.iter().map(u64::to_string).collect();
            write!(f, "[{}]", cells.join(","))?;
        }
        write!(f, "] mod {}", self.modulus)
    }
}

impl fmt::Debug for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_arithmetic() {
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(2, 8), None);
        assert_eq!(pow_mod(3, 6, 7), 1);
        assert_eq!(mul_mod(u64::MAX - 1, 2, u64::MAX), u64::MAX - 2);
    }

    #[test]
    fn inverse_over_prime_power() {
        let a = ModMatrix::from_rows(9, &[vec![3, 1, 0], vec![1, 0, 0], vec![4, 5, 1]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(inv.mul(&a).is_identity());
        let singular = ModMatrix::from_rows(9, &[vec![3, 0], vec![0, 1]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn reduce_and_pow() {
        let a = ModMatrix::from_rows(8, &[vec![1, 2], vec![0, 1]]);
        assert_eq!(a.pow(4).to_rows(), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(a.reduce(2).to_rows(), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(a.to_string(), "[[1,2],[0,1]] mod 8");
    }
}
