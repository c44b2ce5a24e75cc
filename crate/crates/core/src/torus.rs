//! Rational affine subtori of `T^N = R^N / Z^N`.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{
    common_denominator, frac, hermite_normal_form, integer_kernel, rank, smith_normal_form,
    solve, solve_mixed, to_rational, IntMatrix, Lattice, Matrix, QuadScalar, Rational,
};
use crate::{Error, Result};

/// `offset + span_R(direction)` modulo `Z^N`, in canonical form.
///
/// The direction lattice is saturated and kept in Hermite normal form. The
/// offset has zeros in the pivot columns of that basis and its remaining
/// entries are reduced modulo the projection of `Z^N` along the direction,
/// so equal subtori have identical fields.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineSubtorus {
    direction: Lattice,
    offset: Vec<Rational>,
}

impl AffineSubtorus {
    /// Canonical subtorus through `offset` spanned by the rows of `basis`.
    pub fn new(basis: &IntMatrix, offset: &[Rational]) -> Result<Self> {
        if basis.cols() != offset.len() {
            return Err(Error::DimensionMismatch { expected: offset.len(), found: basis.cols() });
        }
        let lat = Lattice::from_generators(basis);
        if lat.rank() != basis.rows() {
            return Err(Error::DependentRows);
        }
        Ok(Self::from_lattice(&lat, offset))
    }

    /// Like [`new`](Self::new) but tolerates dependent generators.
    pub fn from_lattice(direction: &Lattice, offset: &[Rational]) -> Self {
        assert_eq!(direction.ambient_dim(), offset.len());
        let direction = direction.saturate();
        let offset = reduce_offset(&direction, offset);
        AffineSubtorus { direction, offset }
    }

    pub fn point(offset: &[Rational]) -> Self {
        Self::from_lattice(&Lattice::zero(offset.len()), offset)
    }

    pub fn ambient_dim(&self) -> usize {
        self.offset.len()
    }

    pub fn dim(&self) -> usize {
        self.direction.rank()
    }

    pub fn direction(&self) -> &Lattice {
        &self.direction
    }

    pub fn offset(&self) -> &[Rational] {
        &self.offset
    }

    /// Whether `x` (a lift in `R^N`) lies on the torus.
    pub fn contains_point(&self, x: &[Rational]) -> bool {
        reduce_offset(&self.direction, x) == self.offset
    }

    /// Whether `inner ⊆ self`.
    pub fn contains(&self, inner: &AffineSubtorus) -> bool {
        if inner.ambient_dim() != self.ambient_dim() || inner.dim() > self.dim() {
            return false;
        }
        inner.direction.basis().row_iter().all(|r| self.direction.spans(&to_rational(r)))
            && self.contains_point(&inner.offset)
    }

    /// Connected components of `self ∩ other`, sorted.
    pub fn intersect(&self, other: &AffineSubtorus) -> Result<Vec<AffineSubtorus>> {
        let n = self.ambient_dim();
        if other.ambient_dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: other.ambient_dim() });
        }
        let b1 = self.direction.basis();
        let b2 = other.direction.basis();
        let d1 = b1.rows();
        let a_rat = b1.vstack(b2).transpose().map(|x| Rational::from_integer(x.clone()));
        let delta: Vec<Rational> =
            other.offset.iter().zip(&self.offset).map(|(a, b)| a - b).collect();
        let Some(sol) = solve_mixed(&a_rat, &Matrix::identity(n), &delta) else {
            return Ok(Vec::new());
        };
        // base point on both tori
        let y1 = &sol.rational[..d1];
        let base: Vec<Rational> = self
            .offset
            .iter()
            .zip(b1.transpose().map(|x| Rational::from_integer(x.clone())).mul_vec(y1))
            .map(|(o, v)| o + v)
            .collect();

        let meet = self.direction.rational_intersection(&other.direction);
        let sum = self.direction.sum(&other.direction);
        let sat = sum.saturate();
        let mut out = Vec::new();
        for w in coset_representatives(&sum, &sat) {
            // w = v1 + v2 with v_i in V_i
            let coeffs = solve(&a_rat, &to_rational(&w)).expect("w lies in V1 + V2");
            let v1 = b1
                .transpose()
                .map(|x| Rational::from_integer(x.clone()))
                .mul_vec(&coeffs[..d1]);
            let p: Vec<Rational> = base.iter().zip(&v1).map(|(a, b)| a + b).collect();
            let c = AffineSubtorus::from_lattice(&meet, &p);
            if !out.contains(&c) {
                out.push(c);
            }
        }
        for c in &out {
            assert!(self.contains(c) && other.contains(c), "component escapes its parents");
        }
        out.sort();
        Ok(out)
    }

    /// Image under `x -> m x + t`.
    pub fn transform(&self, m: &IntMatrix, t: &[Rational]) -> AffineSubtorus {
        let basis = self.direction.basis() * &m.transpose();
        let mq = m.map(|x| Rational::from_integer(x.clone()));
        let off: Vec<Rational> = mq.mul_vec(&self.offset).into_iter().zip(t).map(|(a, b)| a + b).collect();
        AffineSubtorus::from_lattice(&Lattice::from_generators(&basis), &off)
    }
}

/// Representatives of `sup / sub` for lattices of equal rational span.
fn coset_representatives(sub: &Lattice, sup: &Lattice) -> Vec<Vec<BigInt>> {
    let n = sup.ambient_dim();
    if sup.rank() == 0 {
        return alloc::vec![alloc::vec![BigInt::zero(); n]];
    }
    let c = sup.express(sub).expect("sublattice");
    let snf = smith_normal_form(&c);
    // sub = U D (V sup): the rows of V sup form an adapted basis of sup
    let adapted = &snf.v * sup.basis();
    let diag = snf.diagonal();
    let mut reps = alloc::vec![alloc::vec![BigInt::zero(); n]];
    for (i, d) in diag.iter().enumerate() {
        let mut next = Vec::new();
        for r in &reps {
            let mut k = BigInt::zero();
            while &k < d {
                let v: Vec<BigInt> =
                    r.iter().zip(adapted.row(i)).map(|(a, b)| a + &k * b).collect();
                next.push(v);
                k += 1;
            }
        }
        reps = next;
    }
    reps
}

/// Canonical representative of `x + span(direction) + Z^N`.
fn reduce_offset(direction: &Lattice, x: &[Rational]) -> Vec<Rational> {
    let basis = direction.basis();
    let pivots = direction.pivots();
    let project = |v: &mut Vec<Rational>| {
        for (i, &p) in pivots.iter().enumerate() {
            if v[p].is_zero() {
                continue;
            }
            let c = &v[p] / Rational::from_integer(basis[(i, p)].clone());
            for (vj, bj) in v.iter_mut().zip(basis.row(i)) {
                if !bj.is_zero() {
                    *vj -= &c * Rational::from_integer(bj.clone());
                }
            }
        }
    };
    let mut v = x.to_vec();
    project(&mut v);
    if pivots.iter().enumerate().all(|(i, &p)| basis[(i, p)].is_one()) {
        // the projection of Z^N is Z^N on the free columns
        return v.iter().map(frac).collect();
    }
    // with larger pivots the projected lattice is finer than Z on the free
    // columns; reduce against its Hermite basis
    let n = x.len();
    let mut gens: Vec<Vec<Rational>> = Vec::new();
    for j in 0..n {
        let mut e = alloc::vec![Rational::zero(); n];
        e[j] = Rational::one();
        project(&mut e);
        gens.push(e);
    }
    let den = common_denominator(gens.iter().flatten());
    let scaled: Vec<Vec<BigInt>> =
        gens.iter().map(|g| g.iter().map(|x| (x * &den).to_integer()).collect()).collect();
    let h = hermite_normal_form(&Matrix::from_rows(n, &scaled));
    let den_q = Rational::from_integer(den);
    let mut w: Vec<Rational> = v.iter().map(|x| x * &den_q).collect();
    for r in h.row_iter() {
        let c = r.iter().position(|x| !x.is_zero()).expect("HNF row");
        let q = (&w[c] / Rational::from_integer(r[c].clone())).floor();
        if q.is_zero() {
            continue;
        }
        for (wj, rj) in w.iter_mut().zip(r) {
            *wj -= &q * Rational::from_integer(rj.clone());
        }
    }
    w.iter().map(|x| x / &den_q).collect()
}

/// Face data of a polyhedral atomic surface: the cut-hyperplane normal `n`,
/// the face normal `k` and a point of the lifted face.
#[derive(Clone, Debug, PartialEq)]
pub struct FaceSpec {
    pub n: Vec<QuadScalar>,
    pub k: Vec<QuadScalar>,
    pub anchor: Vec<Rational>,
}

/// The codimension-two subtorus through the anchor orthogonal to `n` and `k`.
pub fn subtorus_from_face(f: &FaceSpec, ambient_dim: usize) -> Result<AffineSubtorus> {
    for len in [f.n.len(), f.k.len(), f.anchor.len()] {
        if len != ambient_dim {
            return Err(Error::DimensionMismatch { expected: ambient_dim, found: len });
        }
    }
    let nk = Matrix::from_rows(ambient_dim, &[f.n.clone(), f.k.clone()]);
    if rank(&nk) < 2 {
        return Err(Error::ParallelFaceNormals);
    }
    let rows = split_rational(&[&f.n, &f.k]);
    let kernel = integer_kernel(&rows);
    if kernel.rows() + 2 != ambient_dim {
        return Err(Error::FaceKernel { expected: ambient_dim.saturating_sub(2), found: kernel.rows() });
    }
    Ok(AffineSubtorus::from_lattice(&Lattice::from_generators(&kernel), &f.anchor))
}

/// Integer rows spanning the same rational conditions as `v . x = 0` over `Q(sqrt D)`.
fn split_rational(vs: &[&[QuadScalar]]) -> IntMatrix {
    let n = vs.first().map_or(0, |v| v.len());
    let mut rows = Vec::new();
    for v in vs {
        for part in [0, 1] {
            let r: Vec<Rational> =
                v.iter().map(|x| if part == 0 { x.a().clone() } else { x.b().clone() }).collect();
            if r.iter().all(Zero::is_zero) {
                continue;
            }
            let den = common_denominator(&r);
            rows.push(r.iter().map(|x| (x * &den).to_integer()).collect::<Vec<_>>());
        }
    }
    Matrix::from_rows(n, &rows)
}

/// Whether two parallel tori merge when thickened along `n`.
///
/// Feasible iff `offset_b - offset_a ∈ V + Q(sqrt D) n + Z^N` with the real
/// span of `V` taken over `Q(sqrt D)`. The merged torus is `t_a`.
pub fn knit(
    t_a: &AffineSubtorus,
    t_b: &AffineSubtorus,
    n: &[QuadScalar],
) -> Result<Option<AffineSubtorus>> {
    if t_a.direction != t_b.direction {
        return Err(Error::DirectionMismatch);
    }
    let dim = t_a.ambient_dim();
    if n.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: n.len() });
    }
    let d_disc = n.iter().map(QuadScalar::discriminant).max().unwrap_or(0);
    let dq = Rational::from_integer(BigInt::from(d_disc));
    let b = t_a.direction.basis();
    let d = b.rows();
    // unknowns: y0, y1 (d each), a, b; rows: rational part then sqrt(D) part
    let cols = 2 * d + 2;
    let a_rat = Matrix::from_fn(2 * dim, cols, |i, j| {
        let (row, irr) = if i < dim { (i, false) } else { (i - dim, true) };
        let n0 = n[row].a().clone();
        let n1 = n[row].b().clone();
        match (irr, j) {
            (false, j) if j < d => Rational::from_integer(b[(j, row)].clone()),
            (true, j) if j >= d && j < 2 * d => Rational::from_integer(b[(j - d, row)].clone()),
            (false, j) if j == 2 * d => n0,
            (false, _) if j == 2 * d + 1 => n1 * &dq,
            (true, j) if j == 2 * d => n1,
            (true, _) if j == 2 * d + 1 => n0,
            _ => Rational::zero(),
        }
    });
    let a_int = Matrix::from_fn(2 * dim, dim, |i, j| {
        if i == j {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    });
    let mut rhs: Vec<Rational> = t_b.offset.iter().zip(&t_a.offset).map(|(x, y)| x - y).collect();
    rhs.resize(2 * dim, Rational::zero());
    Ok(solve_mixed(&a_rat, &a_int, &rhs).map(|_| t_a.clone()))
}

/// A finite set of distinct subtori of a common `T^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    name: String,
    ambient_dim: usize,
    tori: Vec<AffineSubtorus>,
}

impl Arrangement {
    pub fn new(name: impl Into<String>, ambient_dim: usize, tori: Vec<AffineSubtorus>) -> Result<Self> {
        for t in &tori {
            if t.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: t.ambient_dim() });
            }
        }
        for i in 0..tori.len() {
            for j in 0..i {
                if tori[i] == tori[j] {
                    return Err(Error::DuplicateTorus(j, i));
                }
            }
        }
        Ok(Arrangement { name: name.into(), ambient_dim, tori })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn tori(&self) -> &[AffineSubtorus] {
        &self.tori
    }

    pub fn len(&self) -> usize {
        self.tori.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tori.is_empty()
    }
}
