use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{
    hermite_normal_form, integer_kernel, smith_normal_form, solve, to_rational, IntMatrix,
    Matrix, Rational,
};
use crate::{Error, Result};

/// A sublattice of `Z^N`, stored by its row Hermite normal form basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lattice {
    ambient_dim: usize,
    basis: IntMatrix,
}

impl Lattice {
    /// Lattice spanned by arbitrary (possibly dependent) generator rows.
    pub fn from_generators(generators: &IntMatrix) -> Self {
        Lattice { ambient_dim: generators.cols(), basis: hermite_normal_form(generators) }
    }

    pub fn from_rows(ambient_dim: usize, rows: &[Vec<BigInt>]) -> Self {
        Self::from_generators(&Matrix::from_rows(ambient_dim, rows))
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Lattice { ambient_dim, basis: IntMatrix::zeros(0, ambient_dim) }
    }

    pub fn standard(ambient_dim: usize) -> Self {
        Lattice { ambient_dim, basis: Matrix::identity(ambient_dim) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Pivot column of each HNF row.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .row_iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).expect("HNF rows are nonzero"))
            .collect()
    }

    /// `Z^N` intersected with the rational span.
    pub fn saturate(&self) -> Lattice {
        if self.rank() == 0 {
            return self.clone();
        }
        let snf = smith_normal_form(&self.basis);
        let idx: Vec<usize> = (0..self.rank()).collect();
        Lattice::from_generators(&snf.v.select_rows(&idx))
    }

    pub fn is_saturated(&self) -> bool {
        smith_normal_form(&self.basis).invariant_factors().iter().all(One::is_one)
    }

    /// Rows spanning the integer orthogonal complement (saturated).
    pub fn orthogonal_complement(&self) -> IntMatrix {
        if self.rank() == 0 {
            return Matrix::identity(self.ambient_dim);
        }
        integer_kernel(&self.basis)
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        Lattice::from_generators(&self.basis.vstack(&other.basis))
    }

    /// Saturated lattice of `span_Q(self) ∩ span_Q(other) ∩ Z^N`.
    pub fn rational_intersection(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let perp = self.orthogonal_complement().vstack(&other.orthogonal_complement());
        if perp.rows() == 0 {
            return Lattice::standard(self.ambient_dim);
        }
        Lattice::from_generators(&integer_kernel(&perp))
    }

    /// Whether `v` lies in the rational span.
    pub fn spans(&self, v: &[Rational]) -> bool {
        let perp = self.orthogonal_complement();
        let ok = perp.row_iter().all(|r| {
            r.iter()
                .zip(v)
                .fold(Rational::zero(), |acc, (a, b)| acc + Rational::from_integer(a.clone()) * b)
                .is_zero()
        });
        ok
    }

    pub fn contains_vector(&self, v: &[BigInt]) -> bool {
        self.coordinates(&to_rational(v)).is_some_and(|c| c.iter().all(|x| x.is_integer()))
    }

    /// Coordinates of a vector of the rational span in the HNF basis.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let bt = self.basis.transpose().map(|x| Rational::from_integer(x.clone()));
        solve(&bt, v)
    }

    /// Integer matrix `C` with `sub.basis = C * self.basis`, if `sub ⊆ self`.
    pub fn express(&self, sub: &Lattice) -> Result<IntMatrix> {
        let mut rows = Vec::with_capacity(sub.rank());
        for r in sub.basis.row_iter() {
            let c = self.coordinates(&to_rational(r)).ok_or(Error::NotSublattice)?;
            if !c.iter().all(|x| x.is_integer()) {
                return Err(Error::NotSublattice);
            }
            rows.push(c.into_iter().map(|x| x.to_integer()).collect());
        }
        Ok(Matrix::from_rows(self.rank(), &rows))
    }

    /// Index `[sup : sub]` for lattices of equal rational span.
    pub fn index_of(sub: &Lattice, sup: &Lattice) -> Result<BigInt> {
        if sub.rank() != sup.rank() {
            return Err(Error::RankMismatch { sub: sub.rank(), sup: sup.rank() });
        }
        let c = sup.express(sub)?;
        let snf = smith_normal_form(&c);
        Ok(snf.diagonal().iter().fold(BigInt::one(), |acc, d| acc * d.abs()))
    }

    /// Whether `self ⊆ other` as lattices.
    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        other.express(self).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int_vec;

    fn lat(n: usize, rows: &[&[i64]]) -> Lattice {
        Lattice::from_generators(&IntMatrix::from_i64(n, rows))
    }

    #[test]
    fn saturate_primitive_vector() {
        assert_eq!(lat(2, &[&[2, 0]]).saturate(), lat(2, &[&[1, 0]]));
    }

    #[test]
    fn saturate_gains_index_two() {
        let l = lat(2, &[&[1, 1], &[1, -1]]);
        let s = l.saturate();
        assert_eq!(s, Lattice::standard(2));
        assert_eq!(Lattice::index_of(&l, &s).unwrap(), BigInt::from(2));
        assert_eq!(smith_normal_form(l.basis()).invariant_factors(), int_vec(&[1, 2]));
    }

    #[test]
    fn already_saturated() {
        let l = lat(4, &[&[1, 0, 0, 0], &[0, 1, 0, -1]]);
        assert!(l.is_saturated());
        assert_eq!(l.saturate(), l);
    }

    #[test]
    fn sums() {
        assert_eq!(lat(2, &[&[1, 0]]).sum(&lat(2, &[&[0, 1]])), Lattice::standard(2));
        // the four generators of t1 and t3 span an index-2 sublattice of Z^4
        let t1 = lat(4, &[&[1, 0, 0, 0], &[0, 1, 0, -1]]);
        let t3 = lat(4, &[&[0, 0, 1, 0], &[0, 1, 0, 1]]);
        let s = t1.sum(&t3);
        assert_eq!(s.rank(), 4);
        assert_eq!(Lattice::index_of(&s, &Lattice::standard(4)).unwrap(), BigInt::from(2));
    }

    #[test]
    fn intersections() {
        let a = lat(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let b = lat(3, &[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(a.rational_intersection(&b), lat(3, &[&[0, 1, 0]]));
        // non-saturated inputs still give the saturated intersection
        let c = lat(2, &[&[2, 2]]);
        let d = lat(2, &[&[3, 3]]);
        assert_eq!(c.rational_intersection(&d), lat(2, &[&[1, 1]]));
    }

    #[test]
    fn index_rejects_rank_mismatch() {
        let a = lat(2, &[&[1, 0]]);
        assert_eq!(
            Lattice::index_of(&a, &Lattice::standard(2)),
            Err(Error::RankMismatch { sub: 1, sup: 2 })
        );
        let b = lat(2, &[&[0, 1]]);
        assert_eq!(Lattice::index_of(&a, &b), Err(Error::NotSublattice));
    }

    #[test]
    fn vector_membership() {
        let l = lat(2, &[&[2, 0], &[0, 3]]);
        assert!(l.contains_vector(&int_vec(&[4, -3])));
        assert!(!l.contains_vector(&int_vec(&[1, 0])));
        assert!(l.spans(&[Rational::new(1.into(), 2.into()), Rational::zero()]));
    }
}
