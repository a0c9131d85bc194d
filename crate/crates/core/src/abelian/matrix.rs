use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense matrix of arbitrary-precision integers, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    /// Builds a matrix from row-major entries.
    ///
    /// Panics if `entries.len() != rows * cols`.
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "entry count must equal rows * cols"
        );
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from small integer rows. All rows must have equal length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            entries.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        Self::new(rows.len(), cols, entries)
    }

    /// Like [`IntegerMatrix::from_rows`] but with an explicit column count so
    /// that zero-row matrices keep their width.
    pub fn from_rows_with_cols<R: AsRef<[i64]>>(cols: usize, rows: &[R]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "row length must equal column count");
            entries.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        Self::new(rows.len(), cols, entries)
    }

    pub fn diagonal<I: IntoIterator<Item = BigInt>>(rows: usize, cols: usize, diag: I) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.into_iter().enumerate() {
            m.set(i, i, d);
        }
        m
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

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// True when every off-diagonal entry is zero.
    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal_entries(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    ///
    /// Panics on non-square input. The empty matrix has determinant 1.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    a.swap(k * n + j, swap * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v.div_floor(&prev);
                }
            }
            prev = a[k * n + k].clone();
        }
        sign * &a[n * n - 1]
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.determinant().abs().is_one()
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[target] += factor * row[source]
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.entries[source * self.cols + j];
            if !s.is_zero() {
                let v = s * factor;
                self.entries[target * self.cols + j] += v;
            }
        }
    }

    /// col[target] += factor * col[source]
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.entries[i * self.cols + source];
            if !s.is_zero() {
                let v = s * factor;
                self.entries[i * self.cols + target] += v;
            }
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let e = &mut self.entries[i * self.cols + j];
            *e = -std::mem::take(e);
        }
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerMatrix({}x{})", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "\n  [")?;
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}
