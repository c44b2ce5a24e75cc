//! Finite symmetry groups acting on an arrangement: characters of the
//! spectral pages, isotypic ranks of `d^1`, the `d^2` support test and the
//! irrep content of the cohomology of the complement.
//!
//! Isotypic ranks use the projectors `P = Σ_g χ(g^-1) g`. Irrational irreps
//! come in Galois pairs with equal ranks, so the pair's projector (rational)
//! is used and its rank split evenly.

mod action;
mod character;
mod group;

pub use action::{act_on_poset, PosetAction};
pub use character::{BoundTable, CharacterTable, ClassSpec, Irrep, IrrepDecomposition};
pub use group::{AffineMap, FiniteMatrixGroup};

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::{binomial, determinant, exterior_power, rank_integer, IntMatrix, QuadScalar};
use crate::complement::{alpha_generators, RankInterval};
use crate::poset::IntersectionPoset;
use crate::spectral::{Differential, SpectralPage, Support};
use crate::torus::Arrangement;
use crate::{Error, Result};

fn small(x: &BigInt) -> i64 {
    x.to_i64().expect("entry fits in i64")
}

fn to_small(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.row_iter().map(|r| r.iter().map(small).collect()).collect()
}

/// Action of one group element on `E^1_{p,q}` as blocks
/// `(src chain index, dst chain index, wedge^q C)`, with the convention that
/// source wedge `I` goes to `Σ_J W[I][J]` target wedge `J`.
fn block_action(
    page: &SpectralPage,
    action: &PosetAction,
    g: usize,
    p: usize,
    q: usize,
    cache: &mut BTreeMap<(usize, usize), Vec<Vec<i64>>>,
) -> Vec<(usize, usize, Vec<Vec<i64>>)> {
    let mut out = Vec::new();
    for (ci, c) in page.chains(p).iter().enumerate() {
        let img = action.chain_image(g, c);
        let di = page.chain_index(p, &img).expect("the action preserves chains");
        let x = *c.last().expect("nonempty");
        let w = cache
            .entry((g, x))
            .or_insert_with(|| to_small(&exterior_power(&action.lattice[g][x], q)))
            .clone();
        out.push((ci, di, w));
    }
    out
}

/// Character of `E^1_{p,q}`, one value per table class.
pub fn e1_character(
    page: &SpectralPage,
    action: &PosetAction,
    group: &FiniteMatrixGroup,
    table: &BoundTable,
    p: usize,
    q: usize,
) -> Vec<QuadScalar> {
    let mut out = Vec::with_capacity(table.class_count());
    for spec in &table.table().classes {
        let g = group.evaluate(&spec.word).expect("bound table");
        let mut tr = BigInt::zero();
        for c in page.chains(p) {
            if action.chain_image(g, c) != *c {
                continue;
            }
            let x = *c.last().expect("nonempty");
            let w = exterior_power(&action.lattice[g][x], q);
            for i in 0..w.rows() {
                tr += &w[(i, i)];
            }
        }
        out.push(QuadScalar::rational(tr.into()));
    }
    out
}

/// Checks `d^1 ∘ g = g ∘ d^1` on `E^1_{p,q}` for every generator.
pub fn check_equivariance(
    page: &SpectralPage,
    d1: &Differential,
    action: &PosetAction,
    group: &FiniteMatrixGroup,
    p: usize,
    q: usize,
) -> Result<()> {
    let Some(d) = d1.get(p, q) else { return Ok(()) };
    let d = to_small(d);
    let src_off = page.offsets(p, q);
    let dst_off = page.offsets(p - 1, q);
    let (rows, cols) = (page.dim(p - 1, q), page.dim(p, q));
    for s in 0..group.generators().len() {
        let g = group.evaluate(&[s])?;
        let mut cache = BTreeMap::new();
        let src = block_action(page, action, g, p, q, &mut cache);
        cache.clear();
        let dst = block_action(page, action, g, p - 1, q, &mut cache);
        // d * A_src
        let mut left = alloc::vec![alloc::vec![0i64; cols]; rows];
        for (ci, di, w) in &src {
            for (i, wi) in w.iter().enumerate() {
                for (j, &x) in wi.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    // A_src[(di,j), (ci,i)] = x
                    for r in 0..rows {
                        let v = d[r][src_off[*di] + j];
                        if v != 0 {
                            left[r][src_off[*ci] + i] += v * x;
                        }
                    }
                }
            }
        }
        // A_dst * d
        let mut right = alloc::vec![alloc::vec![0i64; cols]; rows];
        for (ci, di, w) in &dst {
            for (i, wi) in w.iter().enumerate() {
                for (j, &x) in wi.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    let (tr, sr) = (dst_off[*di] + j, dst_off[*ci] + i);
                    for k in 0..cols {
                        let v = d[sr][k];
                        if v != 0 {
                            right[tr][k] += x * v;
                        }
                    }
                }
            }
        }
        if left != right {
            return Err(Error::NotEquivariant { generator: s, p, q });
        }
    }
    Ok(())
}

/// Integer coefficients proportional to `Σ_{ρ in orbit} χ_ρ(g^-1)`.
fn projector_coefficients(group: &FiniteMatrixGroup, table: &BoundTable, irreps: &[usize]) -> Vec<i64> {
    let vals: Vec<_> = (0..group.order()).map(|g| table.orbit_value(irreps, group.inverse(g))).collect();
    let den = vals.iter().fold(BigInt::from(1), |acc, v| acc.lcm(v.denom()));
    vals.iter().map(|v| small(&(v * &crate::algebra::Rational::from_integer(den.clone())).to_integer())).collect()
}

/// Dense isotypic projector (up to a scalar) on `E^1_{p,q}`.
fn block_projector(
    page: &SpectralPage,
    action: &PosetAction,
    group: &FiniteMatrixGroup,
    coef: &[i64],
    p: usize,
    q: usize,
) -> Vec<Vec<i64>> {
    let n = page.dim(p, q);
    let off = page.offsets(p, q);
    let mut proj = alloc::vec![alloc::vec![0i64; n]; n];
    let mut cache = BTreeMap::new();
    for g in 0..group.order() {
        if coef[g] == 0 {
            continue;
        }
        for (ci, di, w) in block_action(page, action, g, p, q, &mut cache) {
            for (i, wi) in w.iter().enumerate() {
                for (j, &x) in wi.iter().enumerate() {
                    if x != 0 {
                        proj[off[di] + j][off[ci] + i] += coef[g] * x;
                    }
                }
            }
        }
    }
    proj
}

fn rank_small(rows: Vec<Vec<i64>>) -> usize {
    rank_integer(rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect())
}

/// Per-irrep ranks of `d^1` out of `E^1_{p,q}`.
fn isotypic_ranks(
    page: &SpectralPage,
    d1: &Differential,
    action: &PosetAction,
    group: &FiniteMatrixGroup,
    table: &BoundTable,
    p: usize,
    q: usize,
    skip: &dyn Fn(usize) -> bool,
) -> Result<Vec<usize>> {
    let mut out = alloc::vec![0usize; table.irrep_count()];
    let Some(d) = d1.get(p, q) else { return Ok(out) };
    if d.rows() == 0 || d.cols() == 0 {
        return Ok(out);
    }
    let d = to_small(d);
    for orbit in table.galois_orbits() {
        if orbit.iter().all(|&i| skip(i)) {
            continue;
        }
        let coef = projector_coefficients(group, table, &orbit);
        let proj = block_projector(page, action, group, &coef, p, q);
        let cols = proj.len();
        let mut dp = alloc::vec![alloc::vec![0i64; cols]; d.len()];
        for (r, drow) in d.iter().enumerate() {
            for (k, &v) in drow.iter().enumerate() {
                if v == 0 {
                    continue;
                }
                for (c, &x) in proj[k].iter().enumerate() {
                    if x != 0 {
                        dp[r][c] += v * x;
                    }
                }
            }
        }
        let r = rank_small(dp);
        let per = orbit.len() * table.degree(orbit[0]);
        if !r.is_multiple_of(per) {
            return Err(Error::NonIntegralMultiplicity { irrep: String::from(table.name(orbit[0])) });
        }
        for &i in &orbit {
            out[i] = r / per;
        }
    }
    Ok(out)
}

/// Irreps occurring in both `E^2_{2,q}` and `E^2_{0,q+1}` for some `q`
/// make a nonzero `d^2` possible; returns true iff there are none.
pub fn d2_vanishing_test(e2: &BTreeMap<(usize, usize), IrrepDecomposition>) -> bool {
    e2.iter().filter(|(&(p, _), _)| p >= 2).all(|(&(p, q), src)| {
        match e2.get(&(p - 2, q + 1)) {
            None => true,
            Some(dst) => src.mult.iter().zip(&dst.mult).all(|(a, b)| *a == 0 || *b == 0),
        }
    })
}

/// Per-irrep bounds on the image of `alpha` in `H_q(T^N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaBounds {
    pub lower: IrrepDecomposition,
    pub upper: IrrepDecomposition,
}

impl AlphaBounds {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn interval(&self, table: &BoundTable) -> RankInterval {
        RankInterval::new(self.lower.dim(table), self.upper.dim(table))
    }
}

/// Everything the symmetry group tells about one arrangement.
#[derive(Clone, Debug)]
pub struct EquivariantReport {
    pub table: BoundTable,
    pub orbits: Vec<Vec<usize>>,
    pub e1: BTreeMap<(usize, usize), IrrepDecomposition>,
    pub e2: BTreeMap<(usize, usize), IrrepDecomposition>,
    pub d2_vanishes: bool,
    /// `H_q(A)`, available when the spectral sequence collapses.
    pub homology: Option<Vec<IrrepDecomposition>>,
    /// `H^n(T^N)`.
    pub torus_cohomology: Vec<IrrepDecomposition>,
    /// `alpha[n]`: image of `H_{N-n}(A)` in `H_{N-n}(T^N)`.
    pub alpha: Vec<AlphaBounds>,
    /// `Im beta^n` when `alpha^n` is pinned down.
    pub im_beta: Vec<Option<IrrepDecomposition>>,
    /// `H^k(T^N \ A)`, `k = 0 .. N-1`.
    pub complement: Vec<Option<IrrepDecomposition>>,
}

impl EquivariantReport {
    /// `(p,q) -> irreps` for the collapse decision in `spectral`.
    pub fn supports(&self) -> BTreeMap<(usize, usize), Support> {
        self.e2.iter().map(|(&k, d)| (k, d.support(&self.table))).collect()
    }

    /// Upper bounds `Σ deg · min(...)` on `rank alpha` over `H_q(A)`, indexed by `q`.
    pub fn alpha_upper_by_degree(&self) -> Vec<Option<usize>> {
        let n = self.alpha.len() - 1;
        (0..=n).map(|q| Some(self.alpha[n - q].upper.dim(&self.table))).collect()
    }

    pub fn dims_consistent(&self, e2_dims: &BTreeMap<(usize, usize), usize>) -> bool {
        self.e2.iter().all(|(k, d)| d.dim(&self.table) == e2_dims.get(k).copied().unwrap_or(0))
    }
}

fn class_values(group: &FiniteMatrixGroup, table: &BoundTable, f: impl Fn(usize) -> BigInt) -> Vec<QuadScalar> {
    table
        .table()
        .classes
        .iter()
        .map(|c| QuadScalar::rational(f(group.evaluate(&c.word).expect("bound")).into()))
        .collect()
}

fn trace(m: &IntMatrix) -> BigInt {
    (0..m.rows()).map(|i| m[(i, i)].clone()).sum()
}

/// Runs the whole equivariant analysis.
pub fn analyze(
    arr: &Arrangement,
    poset: &IntersectionPoset,
    page: &SpectralPage,
    d1: &Differential,
    group: &FiniteMatrixGroup,
    table: &CharacterTable,
) -> Result<EquivariantReport> {
    let table = table.bind(group)?;
    if group.ambient_dim() != arr.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: arr.ambient_dim(), found: group.ambient_dim() });
    }
    let action = act_on_poset(group, arr, poset)?;
    let n = arr.ambient_dim();

    let mut e1 = BTreeMap::new();
    for p in 0..page.columns() {
        for q in 0..=page.max_q() {
            if page.dim(p, q) == 0 {
                continue;
            }
            let chi = e1_character(page, &action, group, &table, p, q);
            e1.insert((p, q), table.decompose(&chi)?);
        }
    }
    for p in 1..page.columns() {
        for q in 0..=page.max_q() {
            if page.dim(p, q) > 0 && page.dim(p - 1, q) > 0 {
                check_equivariance(page, d1, &action, group, p, q)?;
            }
        }
    }
    let zero = IrrepDecomposition::zero(table.irrep_count());
    let mut ranks: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for p in 1..page.columns() {
        for q in 0..=page.max_q() {
            let src = e1.get(&(p, q)).unwrap_or(&zero).clone();
            let dst = e1.get(&(p - 1, q)).unwrap_or(&zero).clone();
            let skip = |i: usize| src.mult[i] == 0 || dst.mult[i] == 0;
            ranks.insert((p, q), isotypic_ranks(page, d1, &action, group, &table, p, q, &skip)?);
        }
    }
    let mut e2 = BTreeMap::new();
    for (&(p, q), m) in &e1 {
        let out = ranks.get(&(p, q)).cloned().unwrap_or_else(|| alloc::vec![0; table.irrep_count()]);
        let inc = ranks.get(&(p + 1, q)).cloned().unwrap_or_else(|| alloc::vec![0; table.irrep_count()]);
        let mut mult = Vec::with_capacity(m.mult.len());
        for i in 0..m.mult.len() {
            let v = m.mult[i]
                .checked_sub(out[i] + inc[i])
                .ok_or_else(|| Error::NegativeMultiplicity { irrep: String::from(table.name(i)) })?;
            mult.push(v);
        }
        let d = IrrepDecomposition { mult };
        if !d.is_empty() {
            e2.insert((p, q), d);
        }
    }
    let d2_vanishes = page.columns() <= 2 || d2_vanishing_test(&e2);
    let collapses = d2_vanishes && page.columns() <= 3;

    let homology: Option<Vec<IrrepDecomposition>> = collapses.then(|| {
        (0..=n)
            .map(|k| {
                (0..=k).fold(zero.clone(), |acc, p| match e2.get(&(p, k - p)) {
                    Some(d) => acc.add(d),
                    None => acc,
                })
            })
            .collect()
    });

    // H_q(T^N) and H^n(T^N) characters
    let wedge_homology: Vec<IrrepDecomposition> = (0..=n)
        .map(|q| table.decompose(&class_values(group, &table, |g| trace(&exterior_power(&group.element(g).m, q)))))
        .collect::<Result<_>>()?;
    let torus_cohomology: Vec<IrrepDecomposition> = (0..=n)
        .map(|k| {
            table.decompose(&class_values(group, &table, |g| {
                trace(&exterior_power(&group.element(group.inverse(g)).m, k))
            }))
        })
        .collect::<Result<_>>()?;
    // orientation character and the twist it induces on irreps
    let det = class_values(group, &table, |g| determinant(&group.element(g).m));
    let twist: Vec<usize> = (0..table.irrep_count())
        .map(|i| table.twist(i, &det).ok_or_else(|| Error::Group(String::from("det twist leaves the table"))))
        .collect::<Result<_>>()?;

    let mut alpha = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let q = n - k;
        let target = &wedge_homology[q];
        let source = homology.as_ref().map(|h| h[q].clone());
        let gens = alpha_generators(poset, q);
        let lower = image_decomposition(&gens, q, n, group, &table)?;
        let mut upper = IrrepDecomposition {
            mult: (0..table.irrep_count())
                .map(|i| {
                    let s = source.as_ref().map_or(usize::MAX, |h| h.mult[i]);
                    s.min(target.mult[i])
                })
                .collect(),
        };
        let complete = q == 1 || (1..=q).all(|p| !e2.contains_key(&(p, q - p)));
        if complete {
            upper = lower.clone();
        }
        if upper.checked_sub(&lower).is_none() {
            return Err(Error::Group(alloc::format!("alpha lower bound exceeds upper bound in degree {q}")));
        }
        alpha.push(AlphaBounds { lower, upper });
    }

    let im_beta: Vec<Option<IrrepDecomposition>> = (0..=n)
        .map(|k| {
            if !alpha[k].is_exact() {
                return None;
            }
            // Poincaré duality: H_{N-k}(T) = H^k(T) ⊗ det
            let moved = alpha[k].lower.permute(&twist);
            torus_cohomology[k].checked_sub(&moved)
        })
        .collect();

    let complement: Vec<Option<IrrepDecomposition>> = (1..=n)
        .map(|k| {
            let h = homology.as_ref()?[n - k].permute(&twist);
            let prev = im_beta[k - 1].as_ref()?;
            let next = im_beta[k].as_ref()?;
            prev.add(&h).add(next).checked_sub(&torus_cohomology[k])
        })
        .collect();

    Ok(EquivariantReport {
        orbits: action.orbits(),
        table,
        e1,
        e2,
        d2_vanishes,
        homology,
        torus_cohomology,
        alpha,
        im_beta,
        complement,
    })
}

/// Irrep content of the span of `rows` inside `wedge^q Q^N`.
fn image_decomposition(
    rows: &[Vec<BigInt>],
    q: usize,
    n: usize,
    group: &FiniteMatrixGroup,
    table: &BoundTable,
) -> Result<IrrepDecomposition> {
    let mut mult = alloc::vec![0usize; table.irrep_count()];
    if rows.is_empty() {
        return Ok(IrrepDecomposition { mult });
    }
    let dim = binomial(n, q);
    let wedges: Vec<Vec<Vec<i64>>> =
        (0..group.order()).map(|g| to_small(&exterior_power(&group.element(g).m, q))).collect();
    let r: Vec<Vec<i64>> = rows.iter().map(|row| row.iter().map(small).collect()).collect();
    for orbit in table.galois_orbits() {
        let coef = projector_coefficients(group, table, &orbit);
        let mut proj = alloc::vec![alloc::vec![0i64; dim]; dim];
        for (g, w) in wedges.iter().enumerate() {
            if coef[g] == 0 {
                continue;
            }
            for (i, wi) in w.iter().enumerate() {
                for (j, &x) in wi.iter().enumerate() {
                    proj[i][j] += coef[g] * x;
                }
            }
        }
        // rows of R P^T are the projected generators
        let projected: Vec<Vec<i64>> = r
            .iter()
            .map(|v| (0..dim).map(|i| (0..dim).map(|j| proj[i][j] * v[j]).sum()).collect())
            .collect();
        let rk = rank_small(projected);
        let per = orbit.len() * table.degree(orbit[0]);
        if !rk.is_multiple_of(per) {
            return Err(Error::NonIntegralMultiplicity { irrep: String::from(table.name(orbit[0])) });
        }
        for &i in &orbit {
            mult[i] = rk / per;
        }
    }
    Ok(IrrepDecomposition { mult })
}
