use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::field::integer_row;
use super::{left_integer_kernel, smith_normal_form, solve, IntMatrix, Matrix, Rational};

/// Witness `(y, z)` for `A_rat y + A_int z = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedSolution {
    pub rational: Vec<Rational>,
    pub integer: Vec<BigInt>,
}

/// Finds rational `y` and integer `z` with `a_rat * y + a_int * z = b`.
///
/// The rational unknowns are eliminated first by multiplying with an integer
/// basis `P` of the left kernel of `a_rat`; the remaining pure integer system
/// `P a_int z = P b` is solved through its Smith form. Deterministic: free
/// coordinates are always zero.
pub fn solve_mixed(a_rat: &Matrix<Rational>, a_int: &IntMatrix, b: &[Rational]) -> Option<MixedSolution> {
    let n = b.len();
    assert_eq!(a_rat.rows(), n);
    assert_eq!(a_int.rows(), n);

    // integer rows spanning {w : w a_rat = 0}
    let proj = if a_rat.cols() == 0 {
        Matrix::identity(n)
    } else {
        let scaled = Matrix::from_rows(
            n,
            &a_rat.transpose().row_iter().map(integer_row).collect::<Vec<_>>(),
        )
        .transpose();
        left_integer_kernel(&scaled)
    };

    let c = &proj * a_int;
    let rhs = proj.map(|x| Rational::from_integer(x.clone())).mul_vec(b);

    let z = if c.rows() == 0 {
        alloc::vec![BigInt::zero(); a_int.cols()]
    } else {
        // c = U D V  =>  D (V z) = U^{-1} rhs
        let snf = smith_normal_form(&c);
        let target = snf.u_inv.map(|x| Rational::from_integer(x.clone())).mul_vec(&rhs);
        let mut w = alloc::vec![BigInt::zero(); c.cols()];
        for (i, t) in target.iter().enumerate() {
            let d = if i < c.cols() { &snf.d[(i, i)] } else { &BigInt::zero() };
            if d.is_zero() {
                if !t.is_zero() {
                    return None;
                }
                continue;
            }
            let q = t / Rational::from_integer(d.clone());
            if !q.is_integer() {
                return None;
            }
            w[i] = q.to_integer();
        }
        snf.v_inv.mul_vec(&w)
    };

    let residual: Vec<Rational> = a_int
        .map(|x| Rational::from_integer(x.clone()))
        .mul_vec(&z.iter().map(|x| Rational::from_integer(x.clone())).collect::<Vec<_>>())
        .into_iter()
        .zip(b)
        .map(|(az, bi)| bi - az)
        .collect();
    let y = if a_rat.cols() == 0 {
        if residual.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Vec::new()
    } else {
        solve(a_rat, &residual)?
    };
    Some(MixedSolution { rational: y, integer: z })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};
    use alloc::vec;

    fn check(a_rat: &Matrix<Rational>, a_int: &IntMatrix, b: &[Rational], s: &MixedSolution) {
        let lhs: Vec<Rational> = a_rat
            .mul_vec(&s.rational)
            .into_iter()
            .zip(a_int.map(|x| Rational::from_integer(x.clone())).mul_vec(
                &s.integer.iter().map(|x| Rational::from_integer(x.clone())).collect::<Vec<_>>(),
            ))
            .map(|(p, q)| p + q)
            .collect();
        assert_eq!(lhs, b);
    }

    #[test]
    fn zero_rhs() {
        let a = Matrix::from_rows(1, &[vec![rat(1)]]);
        let i = IntMatrix::identity(1);
        let s = solve_mixed(&a, &i, &[rat(0)]).unwrap();
        assert_eq!(s.rational, vec![rat(0)]);
        assert_eq!(s.integer, vec![BigInt::zero()]);
    }

    #[test]
    fn half_in_one_dimension() {
        let a = Matrix::from_rows(1, &[vec![rat(1)]]);
        let i = IntMatrix::identity(1);
        let b = [ratio(1, 2)];
        let s = solve_mixed(&a, &i, &b).unwrap();
        check(&a, &i, &b, &s);
    }

    #[test]
    fn pure_integer_infeasible() {
        let a = Matrix::<Rational>::zeros(2, 0);
        let i = IntMatrix::from_i64(1, &[&[2], &[0]]);
        assert!(solve_mixed(&a, &i, &[rat(1), rat(0)]).is_none());
        assert!(solve_mixed(&a, &i, &[rat(4), rat(0)]).is_some());
        assert!(solve_mixed(&a, &i, &[rat(4), rat(1)]).is_none());
    }

    #[test]
    fn second_intersection_point_coset() {
        // (0,1,0,1) against V1 + V3 for the first and third octagonal tori
        let basis = [[1, 0, 0, 0], [0, 1, 0, -1], [0, 0, 1, 0], [0, 1, 0, 1]];
        let a = Matrix::from_fn(4, 4, |i, j| rat(basis[j][i]));
        let i = IntMatrix::identity(4);
        let b = [rat(0), rat(1), rat(0), rat(1)];
        let s = solve_mixed(&a, &i, &b).unwrap();
        check(&a, &i, &b, &s);
        // and a coset that misses: V1 + V3 + Z^4 is everything, so use a transverse setup
        let a2 = Matrix::from_fn(4, 2, |i, j| rat(basis[j][i]));
        assert!(solve_mixed(&a2, &i, &[rat(0), rat(0), ratio(1, 2), rat(0)]).is_none());
    }
}
