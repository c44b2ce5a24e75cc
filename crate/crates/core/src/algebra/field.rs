use alloc::vec::Vec;
use core::fmt::Debug;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{common_denominator, make_primitive, Matrix, QuadScalar, Rational};

/// Commutative ring elements usable as matrix entries.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
{
}

pub trait Field: Scalar + Div<Output = Self> {}

impl Field for Rational {}
impl Field for QuadScalar {}

/// Reduced row echelon form and the pivot columns.
pub fn rref<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols() {
        if r == a.rows() {
            break;
        }
        let Some(p) = (r..a.rows()).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = F::one() / a[(r, c)].clone();
        for j in c..a.cols() {
            a[(r, j)] = a[(r, j)].clone() * inv.clone();
        }
        for i in 0..a.rows() {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..a.cols() {
                if a[(r, j)].is_zero() {
                    continue;
                }
                a[(i, j)] = a[(i, j)].clone() - f.clone() * a[(r, j)].clone();
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    rref(m).1.len()
}

/// Basis of `{x : m x = 0}`, one vector per free column, free coordinate set to 1.
pub fn nullspace<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let (r, pivots) = rref(m);
    let n = m.cols();
    let mut out = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = alloc::vec![F::zero(); n];
        v[free] = F::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -r[(row, free)].clone();
        }
        out.push(v);
    }
    out
}

/// One solution of `m x = b` (free variables zero), or `None` if inconsistent.
pub fn solve<F: Field>(m: &Matrix<F>, b: &[F]) -> Option<Vec<F>> {
    assert_eq!(m.rows(), b.len());
    let aug = Matrix::from_fn(m.rows(), m.cols() + 1, |i, j| {
        if j < m.cols() {
            m[(i, j)].clone()
        } else {
            b[i].clone()
        }
    });
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut x = alloc::vec![F::zero(); m.cols()];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r[(row, m.cols())].clone();
    }
    Some(x)
}

/// Indices of a maximal set of linearly independent columns (leftmost first).
pub fn column_basis<F: Field>(m: &Matrix<F>) -> Vec<usize> {
    rref(m).1
}

/// Exact rank of an integer matrix by fraction-free elimination with
/// content removal; rows stay primitive so sparse 0/±1 inputs stay small.
pub fn rank_integer(rows: Vec<Vec<BigInt>>) -> usize {
    let mut rows: Vec<Vec<BigInt>> =
        rows.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    for c in 0..ncols {
        if rank == rows.len() {
            break;
        }
        // sparsest row with the smallest leading entry keeps fill-in down
        let mut best: Option<(usize, usize, BigInt)> = None;
        for (i, r) in rows.iter().enumerate().skip(rank) {
            if r[c].is_zero() {
                continue;
            }
            let nnz = r.iter().filter(|x| !x.is_zero()).count();
            let key = r[c].abs();
            let better = match &best {
                None => true,
                Some((_, bn, bk)) => (nnz, &key) < (*bn, bk),
            };
            if better {
                best = Some((i, nnz, key));
            }
        }
        let Some((p, _, _)) = best else { continue };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        let pv = &prow[c];
        for r in tail.iter_mut() {
            if r[c].is_zero() {
                continue;
            }
            let g = pv.gcd(&r[c]);
            let fp = &r[c] / &g;
            let fr = pv / &g;
            for j in c..ncols {
                if prow[j].is_zero() && r[j].is_zero() {
                    continue;
                }
                r[j] = &r[j] * &fr - &prow[j] * &fp;
            }
            make_primitive(r);
        }
        rank += 1;
    }
    rank
}

/// Exact rank of a rational matrix (rows rescaled to integers first).
pub fn rank_rational(m: &Matrix<Rational>) -> usize {
    rank_integer(m.row_iter().map(integer_row).collect())
}

pub(crate) fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let den = common_denominator(row);
    row.iter().map(|x| (x * &den).to_integer()).collect()
}
