use alloc::vec;
use alloc::vec::Vec;
use core::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Sparse integer matrix stored by columns. Each column lists its nonzero
/// entries in increasing row order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, BigInt)>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.columns[i].push((i, BigInt::one()));
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if *x != 0 {
                    m.columns[j].push((i, BigInt::from(*x)));
                }
            }
        }
        m
    }

    pub fn from_dense(rows: usize, cols: usize, dense: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, row) in dense.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    m.columns[j].push((i, x.clone()));
                }
            }
        }
        m
    }

    /// Column-major construction; entries within each column may come in any
    /// order but must not repeat a row.
    pub(crate) fn from_columns(rows: usize, mut columns: Vec<Vec<(usize, BigInt)>>) -> Self {
        for col in &mut columns {
            col.retain(|(_, x)| !x.is_zero());
            col.sort_by_key(|(r, _)| *r);
            debug_assert!(col.iter().all(|(r, _)| *r < rows));
            debug_assert!(col.windows(2).all(|w| w[0].0 < w[1].0));
        }
        IntegerMatrix {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, BigInt)] {
        &self.columns[j]
    }

    pub(crate) fn into_columns(self) -> Vec<Vec<(usize, BigInt)>> {
        self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.columns[j]
            .binary_search_by_key(&i, |(r, _)| *r)
            .map(|k| self.columns[j][k].1.clone())
            .unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col {
                d[*i][j] = x.clone();
            }
        }
        d
    }

    pub fn transpose(&self) -> Self {
        let mut t = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col {
                t[*i].push((j, x.clone()));
            }
        }
        IntegerMatrix {
            rows: self.cols,
            cols: self.rows,
            columns: t,
        }
    }

    /// Diagonal entries `d[0..min(rows, cols)]`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.columns
            .iter()
            .enumerate()
            .all(|(j, col)| col.iter().all(|(i, _)| *i == j))
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_dense();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|i| !a[*i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Rank over Q.
    pub fn rank(&self) -> usize {
        super::snf::invariant_factors(self).len()
    }
}

impl Mul for &IntegerMatrix {
    type Output = IntegerMatrix;

    fn mul(self, rhs: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let mut columns = Vec::with_capacity(rhs.cols);
        let mut acc: Vec<BigInt> = vec![BigInt::zero(); self.rows];
        let mut touched: Vec<usize> = Vec::new();
        for rcol in &rhs.columns {
            for (k, y) in rcol {
                for (i, x) in &self.columns[*k] {
                    if acc[*i].is_zero() {
                        touched.push(*i);
                    }
                    acc[*i] += x * y;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut col = Vec::new();
            for i in touched.drain(..) {
                let v = core::mem::take(&mut acc[i]);
                if !v.is_zero() {
                    col.push((i, v));
                }
            }
            columns.push(col);
        }
        IntegerMatrix {
            rows: self.rows,
            cols: rhs.cols,
            columns,
        }
    }
}

/// Small dense rational matrix; used for induced maps on homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, BigRational::from_integer(BigInt::from(*x)));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn trace(&self) -> BigRational {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// Rank by Gaussian elimination over Q.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for c in 0..a.cols {
            let Some(p) = (rank..a.rows).find(|r| !a.get(*r, c).is_zero()) else {
                continue;
            };
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, rank * a.cols + j);
            }
            let pivot = a.get(rank, c).clone();
            for r in 0..a.rows {
                if r != rank && !a.get(r, c).is_zero() {
                    let f = a.get(r, c) / &pivot;
                    for j in c..a.cols {
                        let v = a.get(r, j) - &f * a.get(rank, j);
                        a.set(r, j, v);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(BigRational::is_integer)
    }

    pub fn max_abs_numerator(&self) -> BigInt {
        self.data
            .iter()
            .map(|x| x.numer().abs())
            .max()
            .unwrap_or_default()
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;

    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let mut out = RationalMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j) + a * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}
