//! Exact scalar and matrix arithmetic.

mod exterior;
mod field;
mod lattice;
mod matrix;
mod mixed;
mod quad;
mod smith;

pub use exterior::{binomial, exterior_power, subsets};
pub use field::{
    column_basis, nullspace, rank, rank_integer, rank_rational, rref, solve, Field, Scalar,
};
pub use lattice::Lattice;
pub use matrix::{IntMatrix, Matrix};
pub use mixed::{solve_mixed, MixedSolution};
pub use quad::QuadScalar;
pub use smith::{
    determinant, hermite_normal_form, integer_kernel, left_integer_kernel, smith_normal_form,
    SmithDecomposition,
};

pub use num_bigint::BigInt;
pub use num_rational::BigRational as Rational;

use alloc::vec::Vec;
use num_integer::Integer;
use num_traits::{One, Zero};

/// `n / 1`.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`, reduced.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

pub fn int_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn to_rational(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(v: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    v.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scales a rational vector to a primitive integer vector with the same direction.
pub fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let den = common_denominator(v);
    let mut out: Vec<BigInt> = v.iter().map(|x| (x * &den).to_integer()).collect();
    let g = out.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in out.iter_mut() {
            *x = &*x / &g;
        }
    }
    out
}

/// Content-free copy of an integer row (gcd of entries 1, sign untouched).
pub(crate) fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}
