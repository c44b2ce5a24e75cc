use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, Matrix};

/// `M = U * D * V` with `U`, `V` unimodular and `D` diagonal,
/// `d_1 | d_2 | ... | d_k`, all `d_i >= 0`.
///
/// The inverses of the transforms come for free during the reduction and
/// are kept alongside: `U_inv * M * V_inv = D`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries `d_1, ..., d_min(m,n)` (zeros included).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Nonzero invariant factors.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

struct Reducer {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    // row_i += c * row_j
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        for m in [&mut self.d, &mut self.u_inv] {
            for k in 0..m.cols() {
                let t = &m[(j, k)] * c;
                m[(i, k)] += t;
            }
        }
        // U <- U E^{-1}: col_j -= c * col_i
        for k in 0..self.u.rows() {
            let t = &self.u[(k, i)] * c;
            self.u[(k, j)] -= t;
        }
    }

    fn swap_row(&mut self, i: usize, j: usize) {
        self.d.swap_rows(i, j);
        self.u_inv.swap_rows(i, j);
        self.u.swap_cols(i, j);
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.d, &mut self.u_inv] {
            for x in m.row_mut(i) {
                *x = -core::mem::take(x);
            }
        }
        for k in 0..self.u.rows() {
            let x = core::mem::take(&mut self.u[(k, i)]);
            self.u[(k, i)] = -x;
        }
    }

    // col_i += c * col_j
    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        for m in [&mut self.d, &mut self.v_inv] {
            for k in 0..m.rows() {
                let t = &m[(k, j)] * c;
                m[(k, i)] += t;
            }
        }
        // V <- F^{-1} V: row_j -= c * row_i
        for k in 0..self.v.cols() {
            let t = &self.v[(i, k)] * c;
            self.v[(j, k)] -= t;
        }
    }

    fn swap_col(&mut self, i: usize, j: usize) {
        self.d.swap_cols(i, j);
        self.v_inv.swap_cols(i, j);
        self.v.swap_rows(i, j);
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let x = &self.d[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.d[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

/// Smith normal form with minimal-absolute-value pivoting.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = Reducer {
        d: m.clone(),
        u: Matrix::identity(rows),
        u_inv: Matrix::identity(rows),
        v: Matrix::identity(cols),
        v_inv: Matrix::identity(cols),
    };
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = r.min_entry(t) else { break };
        r.swap_row(t, pi);
        r.swap_col(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if r.d[(i, t)].is_zero() {
                    continue;
                }
                let q = r.d[(i, t)].div_floor(&r.d[(t, t)]);
                r.add_row(i, t, &-q);
                if !r.d[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if r.d[(t, j)].is_zero() {
                    continue;
                }
                let q = r.d[(t, j)].div_floor(&r.d[(t, t)]);
                r.add_col(j, t, &-q);
                if !r.d[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // row and column cleared; enforce divisibility of the rest
                let piv = r.d[(t, t)].clone();
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(r.d[(i, j)].is_multiple_of(&piv)));
                match bad {
                    None => break,
                    Some((i, _)) => {
                        r.add_row(t, i, &BigInt::one());
                        continue;
                    }
                }
            }
            // a smaller remainder appeared in row/column t: move it to the pivot
            let mut best = (t, t);
            for i in t..rows {
                let x = &r.d[(i, t)];
                if !x.is_zero() && x.abs() < r.d[best].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                let x = &r.d[(t, j)];
                if !x.is_zero() && x.abs() < r.d[best].abs() {
                    best = (t, j);
                }
            }
            r.swap_row(t, best.0);
            r.swap_col(t, best.1);
        }
        if r.d[(t, t)].is_negative() {
            r.negate_row(t);
        }
    }
    SmithDecomposition { u: r.u, d: r.d, v: r.v, u_inv: r.u_inv, v_inv: r.v_inv }
}

/// Row Hermite normal form of the row lattice, zero rows dropped: echelon,
/// positive pivots, entries above each pivot in `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let mut a: Vec<Vec<BigInt>> = m.clone().into_rows();
    let cols = m.cols();
    let mut pr = 0;
    for c in 0..cols {
        if pr == a.len() {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for (i, row) in a.iter().enumerate().skip(pr) {
                if row[c].is_zero() {
                    continue;
                }
                if best.is_none_or(|b| row[c].abs() < a[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap(pr, b);
            let mut done = true;
            for i in pr + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[pr][c]);
                for j in c..cols {
                    let t = &a[pr][j] * &q;
                    a[i][j] -= t;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if pr >= a.len() || a[pr][c].is_zero() {
            continue;
        }
        if a[pr][c].is_negative() {
            for x in a[pr].iter_mut() {
                *x = -core::mem::take(x);
            }
        }
        for i in 0..pr {
            let q = a[i][c].div_floor(&a[pr][c]);
            if q.is_zero() {
                continue;
            }
            for j in c..cols {
                let t = &a[pr][j] * &q;
                a[i][j] -= t;
            }
        }
        pr += 1;
    }
    a.truncate(pr);
    Matrix::from_rows(cols, &a)
}

/// Saturated basis (as rows) of `{x in Z^n : m x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let n = m.cols();
    let idx: Vec<usize> = (r..n).collect();
    snf.v_inv.transpose().select_rows(&idx)
}

/// Saturated basis (as rows) of `{y in Z^m : y m = 0}`.
pub fn left_integer_kernel(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let idx: Vec<usize> = (r..m.rows()).collect();
    snf.u_inv.select_rows(&idx)
}

/// Determinant by Bareiss fraction-free elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return BigInt::zero();
            };
            a.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
        }
        prev = a[(k, k)].clone();
    }
    sign * &a[(n - 1, n - 1)]
}
