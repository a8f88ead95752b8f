//! Smith normal form over the integers.
//!
//! Two routes share one contract. [`smith_normal_form`] is the dense
//! algorithm that also records the unimodular transforms. [`invariant_factors`]
//! is a sparse elimination used for boundary matrices: it pivots on unit
//! entries for as long as it can and hands the leftover block to the dense
//! routine. Both pick the smallest-magnitude pivot and reduce by Euclidean
//! division, so entries stay small on simplicial inputs.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;

/// `u · a · v = d` with `u`, `v` unimodular and `d` diagonal, nonnegative,
/// with each diagonal entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SnfResult {
    /// The nonzero diagonal entries of `d`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.d.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

struct Dense {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
    m: usize,
    n: usize,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

impl Dense {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            if let Some(u) = &mut self.u {
                u.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in &mut self.a {
                row.swap(i, j);
            }
            if let Some(v) = &mut self.v {
                for row in v.iter_mut() {
                    row.swap(i, j);
                }
            }
        }
    }

    /// row_i += q · row_k
    fn add_row(&mut self, i: usize, k: usize, q: &BigInt) {
        for j in 0..self.n {
            let t = &self.a[k][j] * q;
            self.a[i][j] += t;
        }
        if let Some(u) = &mut self.u {
            for j in 0..self.m {
                let t = &u[k][j] * q;
                u[i][j] += t;
            }
        }
    }

    /// col_j += q · col_k
    fn add_col(&mut self, j: usize, k: usize, q: &BigInt) {
        for i in 0..self.m {
            let t = &self.a[i][k] * q;
            self.a[i][j] += t;
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                let t = &row[k] * q;
                row[j] += t;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -core::mem::take(x);
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -core::mem::take(x);
            }
        }
    }

    /// Smallest nonzero magnitude in the block `a[t.., t..]`.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.m {
            for j in t..self.n {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a[bi][bj].abs() <= x.abs() => {}
                    _ => {
                        if x.abs().is_one() {
                            return Some((i, j));
                        }
                        best = Some((i, j));
                    }
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let steps = self.m.min(self.n);
        for t in 0..steps {
            let Some((pi, pj)) = self.min_entry(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..self.m {
                    if !self.a[i][t].is_zero() {
                        let q = -(&self.a[i][t] / &self.a[t][t]);
                        self.add_row(i, t, &q);
                        clean &= self.a[i][t].is_zero();
                    }
                }
                for j in t + 1..self.n {
                    if !self.a[t][j].is_zero() {
                        let q = -(&self.a[t][j] / &self.a[t][t]);
                        self.add_col(j, t, &q);
                        clean &= self.a[t][j].is_zero();
                    }
                }
                if !clean {
                    // A remainder smaller than the pivot survived; move it in.
                    let mut best = (t, t);
                    for i in t + 1..self.m {
                        if !self.a[i][t].is_zero() && self.a[i][t].abs() < self.a[best.0][best.1].abs() {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..self.n {
                        if !self.a[t][j].is_zero() && self.a[t][j].abs() < self.a[best.0][best.1].abs() {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                // Divisibility: fold any offending row into the pivot row.
                let p = self.a[t][t].clone();
                let bad = (t + 1..self.m).find(|i| (t + 1..self.n).any(|j| !self.a[*i][j].is_multiple_of(&p)));
                match bad {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

/// Dense Smith normal form with transforms.
pub fn smith_normal_form(a: &IntegerMatrix) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut work = Dense {
        a: a.to_dense(),
        u: Some(identity(m)),
        v: Some(identity(n)),
        m,
        n,
    };
    work.run();
    SnfResult {
        d: IntegerMatrix::from_dense(m, n, &work.a),
        u: IntegerMatrix::from_dense(m, m, work.u.as_ref().unwrap()),
        v: IntegerMatrix::from_dense(n, n, work.v.as_ref().unwrap()),
    }
}

fn dense_invariant_factors(m: usize, n: usize, a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let mut work = Dense { a, u: None, v: None, m, n };
    work.run();
    (0..m.min(n))
        .map(|i| work.a[i][i].clone())
        .filter(|x| !x.is_zero())
        .collect()
}

/// Nonzero invariant factors (in divisibility order) without transforms.
pub fn invariant_factors(a: &IntegerMatrix) -> Vec<BigInt> {
    let rows = a.rows();
    let mut cols: Vec<Vec<(usize, BigInt)>> = a.clone().into_columns();
    let mut row_cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); rows];
    for (j, col) in cols.iter().enumerate() {
        for (i, _) in col {
            row_cols[*i].insert(j);
        }
    }
    let mut alive: Vec<bool> = cols.iter().map(|c| !c.is_empty()).collect();
    let mut units = 0usize;
    loop {
        let mut progressed = false;
        for j in 0..cols.len() {
            if !alive[j] {
                continue;
            }
            if cols[j].is_empty() {
                alive[j] = false;
                continue;
            }
            // Unit pivot in this column, preferring the sparsest row.
            let pivot = cols[j]
                .iter()
                .filter(|(_, x)| x.abs().is_one())
                .min_by_key(|(i, _)| (row_cols[*i].len(), *i))
                .map(|(i, x)| (*i, x.clone()));
            let Some((r, p)) = pivot else { continue };
            let pivot_col = core::mem::take(&mut cols[j]);
            let others: Vec<usize> = row_cols[r].iter().copied().filter(|k| *k != j).collect();
            for k in others {
                // col_k -= (a_rk / p) col_j, and a_rk / p = a_rk * p for p = ±1.
                let a_rk = cols[k]
                    .iter()
                    .find(|(i, _)| *i == r)
                    .map(|(_, x)| x.clone())
                    .unwrap();
                let factor = a_rk * &p;
                let updated = axpy(&cols[k], &factor, &pivot_col);
                for (i, _) in &cols[k] {
                    row_cols[*i].remove(&k);
                }
                for (i, _) in &updated {
                    row_cols[*i].insert(k);
                }
                cols[k] = updated;
            }
            for (i, _) in &pivot_col {
                row_cols[*i].remove(&j);
            }
            // Row r now only met column j, which is gone; the remaining
            // entries of column j would be cleared by row operations that
            // touch nothing else.
            debug_assert!(row_cols[r].is_empty());
            alive[j] = false;
            units += 1;
            progressed = true;
        }
        if !progressed {
            break;
        }
    }
    let rest: Vec<usize> = (0..cols.len()).filter(|j| alive[*j] && !cols[*j].is_empty()).collect();
    let mut out = vec![BigInt::one(); units];
    if !rest.is_empty() {
        let used_rows: Vec<usize> = {
            let s: BTreeSet<usize> = rest.iter().flat_map(|j| cols[*j].iter().map(|(i, _)| *i)).collect();
            s.into_iter().collect()
        };
        let mut dense = vec![vec![BigInt::zero(); rest.len()]; used_rows.len()];
        for (jj, j) in rest.iter().enumerate() {
            for (i, x) in &cols[*j] {
                let ii = used_rows.binary_search(i).unwrap();
                dense[ii][jj] = x.clone();
            }
        }
        out.extend(dense_invariant_factors(used_rows.len(), rest.len(), dense));
    }
    out
}

/// `x - f·y` on sorted sparse vectors.
pub(crate) fn axpy(x: &[(usize, BigInt)], f: &BigInt, y: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut a, mut b) = (0, 0);
    while a < x.len() || b < y.len() {
        let take_x = b >= y.len() || (a < x.len() && x[a].0 < y[b].0);
        let take_y = a >= x.len() || (b < y.len() && y[b].0 < x[a].0);
        if take_x {
            out.push(x[a].clone());
            a += 1;
        } else if take_y {
            out.push((y[b].0, -(f * &y[b].1)));
            b += 1;
        } else {
            let v = &x[a].1 - f * &y[b].1;
            if !v.is_zero() {
                out.push((x[a].0, v));
            }
            a += 1;
            b += 1;
        }
    }
    out
}
