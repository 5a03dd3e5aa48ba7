use std::fmt;

use num_traits::{One, Zero};

use super::{dot, Int, IntVec};

/// Dense integer matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<IntVec>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![vec![Int::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Int::one();
        }
        m
    }

    /// Panics if the rows do not all have length `cols`.
    pub fn from_rows(rows: Vec<IntVec>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        IntMatrix { rows: rows.len(), cols, data: rows }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(rows.iter().map(|r| super::ivec(r)).collect(), cols)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &IntVec {
        &self.data[i]
    }

    pub fn rows(&self) -> &[IntVec] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<IntVec> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i][j] = v;
    }

    pub fn column(&self, j: usize) -> IntVec {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let ot = other.transpose();
        let data = self
            .data
            .iter()
            .map(|r| ot.data.iter().map(|c| dot(r, c)).collect())
            .collect();
        IntMatrix { rows: self.rows, cols: other.cols, data }
    }

    /// `M * v` for a column vector `v`.
    pub fn apply(&self, v: &[Int]) -> IntVec {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        self.data.iter().map(|r| dot(r, v)).collect()
    }

    /// `v * M` for a row vector `v`.
    pub fn left_apply(&self, v: &[Int]) -> IntVec {
        assert_eq!(self.rows, v.len(), "vector-matrix shape mismatch");
        (0..self.cols)
            .map(|j| self.data.iter().zip(v).map(|(r, x)| &r[j] * x).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| super::is_zero(r))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Int {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut a = self.data.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && {
            let d = self.determinant();
            d == Int::one() || d == -Int::one()
        }
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        self.data.swap(i, j);
    }

    pub fn swap_cols(&mut self, i: usize, j: usize) {
        for r in &mut self.data {
            r.swap(i, j);
        }
    }

    /// row[i] += k * row[j]
    pub(crate) fn add_row_multiple(&mut self, i: usize, j: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        let src = self.data[j].clone();
        for (x, y) in self.data[i].iter_mut().zip(&src) {
            *x += k * y;
        }
    }

    /// col[i] += k * col[j]
    pub(crate) fn add_col_multiple(&mut self, i: usize, j: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        for r in &mut self.data {
            let v = &r[j] * k;
            r[i] += v;
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for x in &mut self.data[i] {
            *x = -&*x;
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.data.iter().map(|r| super::fmt_vec(r)).collect();
        write!(f, "[{}]", rows.join(","))
    }
}
