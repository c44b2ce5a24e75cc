//! Ranks of `alpha^n: H_{N-n}(A) -> H_{N-n}(T^N)` and `beta^n`, and the Betti
//! numbers of `T^N \ A`.
//!
//! With `c_n = rank beta^n = C(N,n) - rank alpha^n` the split long exact
//! sequence of the pair gives
//! `b_{n-1}(T^N \ A) = b_{N-n}(A) + c_{n-1} + c_n - C(N,n)`.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{binomial, exterior_power, rank_integer, solve_mixed, Matrix, Rational};
use crate::poset::IntersectionPoset;
use crate::spectral::BettiVector;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankInterval {
    pub lower: usize,
    pub upper: usize,
}

impl RankInterval {
    pub fn exact(v: usize) -> Self {
        RankInterval { lower: v, upper: v }
    }

    pub fn new(lower: usize, upper: usize) -> Self {
        assert!(lower <= upper, "empty rank interval");
        RankInterval { lower, upper }
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn value(&self) -> Option<usize> {
        self.is_exact().then_some(self.lower)
    }
}

impl core::fmt::Display for RankInterval {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lower)
        } else {
            write!(f, "[{}, {}]", self.lower, self.upper)
        }
    }
}

/// Integer vectors in `wedge^q Z^N` spanning the known part of `im alpha` on
/// `H_q(A)`: the wedge rows of every element's lattice and, for `q = 1`,
/// the classes of the loops through the incidence graph of the poset.
pub fn alpha_generators(poset: &IntersectionPoset, q: usize) -> Vec<Vec<BigInt>> {
    let n = poset.ambient_dim();
    let mut rows = Vec::new();
    if poset.is_empty() {
        return rows;
    }
    for e in poset.elements() {
        if e.torus.dim() < q {
            continue;
        }
        let w = exterior_power(e.torus.direction().basis(), q);
        rows.extend(w.into_rows());
    }
    if q == 1 {
        rows.extend(loop_generators(poset));
    }
    rows.retain(|r| r.len() == binomial(n, q) && r.iter().any(|x| !x.is_zero()));
    rows
}

/// Integer classes of the fundamental cycles of the comparability graph.
pub fn loop_generators(poset: &IntersectionPoset) -> Vec<Vec<BigInt>> {
    let n = poset.ambient_dim();
    let len = poset.len();
    // edge x -> y (x < y): displacement inside t_x from offset_x to a lift of offset_y
    let mut disp: BTreeMap<(usize, usize), Vec<Rational>> = BTreeMap::new();
    for x in 0..len {
        for &y in poset.above(x) {
            let tx = &poset.element(x).torus;
            let ty = &poset.element(y).torus;
            let b = tx.direction().basis();
            let a_rat = b.transpose().map(|v| Rational::from_integer(v.clone()));
            let diff: Vec<Rational> =
                ty.offset().iter().zip(tx.offset()).map(|(a, c)| a - c).collect();
            let sol = solve_mixed(&a_rat, &Matrix::identity(n), &diff)
                .expect("a smaller element lies on the larger torus");
            disp.insert((x, y), a_rat.mul_vec(&sol.rational));
        }
    }
    let step = |u: usize, v: usize| -> Vec<Rational> {
        match disp.get(&(u, v)) {
            Some(d) => d.clone(),
            None => disp[&(v, u)].iter().map(|x| -x).collect(),
        }
    };
    let neighbours = |u: usize| poset.above(u).iter().chain(poset.below(u)).copied();

    // spanning forest from the lowest id of each component
    let mut pos: Vec<Option<Vec<Rational>>> = alloc::vec![None; len];
    let mut tree: BTreeMap<(usize, usize), ()> = BTreeMap::new();
    for root in 0..len {
        if pos[root].is_some() {
            continue;
        }
        pos[root] = Some(alloc::vec![Rational::zero(); n]);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for v in neighbours(u) {
                if pos[v].is_none() {
                    let pu = pos[u].as_ref().expect("visited");
                    pos[v] = Some(pu.iter().zip(step(u, v)).map(|(a, b)| a + b).collect());
                    tree.insert((u.min(v), u.max(v)), ());
                    queue.push_back(v);
                }
            }
        }
    }
    let mut out = Vec::new();
    for (&(x, y), d) in &disp {
        if tree.contains_key(&(x, y)) {
            continue;
        }
        let px = pos[x].as_ref().expect("visited");
        let py = pos[y].as_ref().expect("visited");
        let cycle: Vec<Rational> =
            px.iter().zip(d).zip(py).map(|((a, b), c)| a + b - c).collect();
        assert!(cycle.iter().all(|c| c.is_integer()), "loop class must be integral");
        out.push(cycle.into_iter().map(|c| c.to_integer()).collect());
    }
    out
}

/// Whether `H_q(A)` lives entirely in filtration 0.
fn pure_filtration_zero(betti: &BettiVector, q: usize) -> bool {
    (1..=q).all(|p| betti.e2_dim(p, q - p) == 0)
}

/// Bounds on `rank alpha` restricted to `H_q(A)`. `equivariant_upper` is an
/// optional sharper upper bound (see `equivariant`).
pub fn alpha_rank(
    poset: &IntersectionPoset,
    betti: &BettiVector,
    q: usize,
    equivariant_upper: Option<usize>,
) -> RankInterval {
    let n = poset.ambient_dim();
    if poset.is_empty() {
        return RankInterval::exact(0);
    }
    let lower = rank_integer(alpha_generators(poset, q));
    let bq = betti.upper.get(q).copied().unwrap_or(0);
    let mut upper = bq.min(binomial(n, q));
    if let Some(u) = equivariant_upper {
        upper = upper.min(u);
    }
    // the generators above span the whole image in these cases
    if pure_filtration_zero(betti, q) || q == 1 {
        upper = lower;
    }
    RankInterval::new(lower, upper.max(lower))
}

/// `c_n = C(N,n) - rank alpha^n`, where `alpha[n]` acts on `H_{N-n}(A)`.
pub fn c_ranks(alpha: &[RankInterval], ambient_dim: usize) -> Vec<RankInterval> {
    (0..=ambient_dim)
        .map(|k| {
            let total = binomial(ambient_dim, k);
            let a = alpha.get(k).copied().unwrap_or(RankInterval::exact(0));
            RankInterval::new(total - a.upper.min(total), total - a.lower.min(total))
        })
        .collect()
}

/// `b_0 ... b_{N-1}` of the complement.
pub fn betti_complement(
    betti_a: &[RankInterval],
    c: &[RankInterval],
    ambient_dim: usize,
) -> Result<Vec<RankInterval>> {
    let get = |v: &[RankInterval], i: usize| v.get(i).copied().unwrap_or(RankInterval::exact(0));
    let mut out = Vec::with_capacity(ambient_dim);
    for k in 1..=ambient_dim {
        let b = get(betti_a, ambient_dim - k);
        let total = binomial(ambient_dim, k) as i64;
        let lo = b.lower as i64 + get(c, k - 1).lower as i64 + get(c, k).lower as i64 - total;
        let hi = b.upper as i64 + get(c, k - 1).upper as i64 + get(c, k).upper as i64 - total;
        if hi < 0 {
            return Err(Error::NegativeBetti { degree: k - 1 });
        }
        out.push(RankInterval::new(lo.max(0) as usize, hi as usize));
    }
    Ok(out)
}

/// Everything needed to print the Betti numbers of `T^N \ A`.
#[derive(Clone, Debug)]
pub struct ComplementReport {
    pub ambient_dim: usize,
    pub betti_a: BettiVector,
    /// `alpha[n]`: rank of `alpha^n` on `H_{N-n}(A)`.
    pub alpha: Vec<RankInterval>,
    pub c: Vec<RankInterval>,
    pub betti_complement: Vec<RankInterval>,
    pub notes: Vec<String>,
}

impl ComplementReport {
    pub fn is_exact(&self) -> bool {
        self.betti_a.is_exact()
            && self.c.iter().all(RankInterval::is_exact)
            && self.betti_complement.iter().all(RankInterval::is_exact)
    }

    /// Exact Betti numbers of the complement, if resolved.
    pub fn betti(&self) -> Option<Vec<usize>> {
        self.betti_complement.iter().map(RankInterval::value).collect()
    }

    pub fn c_values(&self) -> Option<Vec<usize>> {
        self.c.iter().map(RankInterval::value).collect()
    }
}

/// Assembles the report. `equivariant_upper[q]` optionally bounds
/// `rank alpha` on `H_q(A)`.
pub fn complement_report(
    poset: &IntersectionPoset,
    betti: &BettiVector,
    equivariant_upper: Option<&[Option<usize>]>,
) -> Result<ComplementReport> {
    let n = poset.ambient_dim();
    let mut notes = Vec::new();
    if poset.is_empty() {
        let all: Vec<RankInterval> = (0..=n).map(|k| RankInterval::exact(binomial(n, k))).collect();
        notes.push(String::from("empty arrangement: the complement is the whole torus"));
        return Ok(ComplementReport {
            ambient_dim: n,
            betti_a: betti.clone(),
            alpha: alloc::vec![RankInterval::exact(0); n + 1],
            c: all.clone(),
            betti_complement: all,
            notes,
        });
    }
    let alpha: Vec<RankInterval> = (0..=n)
        .map(|k| {
            let q = n - k;
            let eq = equivariant_upper.and_then(|u| u.get(q).copied().flatten());
            alpha_rank(poset, betti, q, eq)
        })
        .collect();
    let c = c_ranks(&alpha, n);
    let betti_a: Vec<RankInterval> = betti
        .lower
        .iter()
        .zip(&betti.upper)
        .map(|(&l, &u)| RankInterval::new(l, u))
        .collect();
    let betti_complement = betti_complement(&betti_a, &c, n)?;
    for (k, a) in alpha.iter().enumerate() {
        if !a.is_exact() {
            notes.push(alloc::format!("rank alpha^{k} only bounded: {a}"));
        }
    }
    if !betti.is_exact() {
        notes.push(String::from("collapse of the spectral sequence unresolved"));
    }
    Ok(ComplementReport { ambient_dim: n, betti_a: betti.clone(), alpha, c, betti_complement, notes })
}

/// `Σ (-1)^k b_k(T^N \ A)` predicted from `A` alone.
pub fn expected_complement_euler(betti_a: &[usize], ambient_dim: usize) -> i64 {
    let chi = crate::spectral::alternating(betti_a);
    if ambient_dim.is_multiple_of(2) {
        -chi
    } else {
        chi
    }
}
