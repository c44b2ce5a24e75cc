use alloc::vec::Vec;

use super::{Matrix, Scalar};

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All `k`-subsets of `0..n` as sorted tuples, in lexicographic order.
///
/// This ordering is the global basis convention for every `wedge^k` in the crate.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance the rightmost index that still has room
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn minor<T: Scalar>(m: &Matrix<T>, rows: &[usize], cols: &[usize]) -> T {
    match rows.len() {
        0 => T::one(),
        1 => m[(rows[0], cols[0])].clone(),
        2 => {
            m[(rows[0], cols[0])].clone() * m[(rows[1], cols[1])].clone()
                - m[(rows[0], cols[1])].clone() * m[(rows[1], cols[0])].clone()
        }
        _ => {
            // Laplace expansion along the first row
            let mut acc = T::zero();
            let mut rest: Vec<usize> = Vec::with_capacity(cols.len() - 1);
            for (j, &c) in cols.iter().enumerate() {
                let a = &m[(rows[0], c)];
                if a.is_zero() {
                    continue;
                }
                rest.clear();
                rest.extend(cols.iter().enumerate().filter(|&(jj, _)| jj != j).map(|(_, &x)| x));
                let sub = a.clone() * minor(m, &rows[1..], &rest);
                acc = if j % 2 == 0 { acc + sub } else { acc - sub };
            }
            acc
        }
    }
}

/// q-th compound matrix: entry `(I, J)` is the minor on row set `I` and
/// column set `J`, both indexed by [`subsets`].
pub fn exterior_power<T: Scalar>(m: &Matrix<T>, q: usize) -> Matrix<T> {
    let rs = subsets(m.rows(), q);
    let cs = subsets(m.cols(), q);
    Matrix::from_fn(rs.len(), cs.len(), |i, j| minor(m, &rs[i], &cs[j]))
}
