//! `E^1`, `d^1` and `E^2` of the Mayer-Vietoris spectral sequence of the
//! simplicial resolution, and the Betti numbers of the arrangement.
//!
//! `E^1_{p,q}` is the sum over `p`-chains `x_0 < ... < x_p` of
//! `H_q(t_{x_p}) = wedge^q Λ(x_p)`, with the wedge basis of the Hermite basis
//! of `Λ(x_p)`. `d^1 = Σ_j (-1)^j face_j`, where `face_j` drops `x_j`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{binomial, exterior_power, rank_integer, smith_normal_form, subsets, IntMatrix};
use crate::poset::{Chain, IntersectionPoset};

/// The `E^1` page: chains per column and the rank of every element's lattice.
#[derive(Clone, Debug)]
pub struct SpectralPage {
    chains: Vec<Vec<Chain>>,
    lattice_rank: Vec<usize>,
    max_q: usize,
}

/// `d^1: E^1_{p,q} -> E^1_{p-1,q}` for every `p >= 1`; columns index the
/// source basis, rows the target basis.
#[derive(Clone, Debug)]
pub struct Differential {
    maps: BTreeMap<(usize, usize), IntMatrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CollapseCertificate {
    TwoColumns,
    D2ZeroBySupport,
    D2ZeroBySymmetry,
    Unresolved,
}

impl CollapseCertificate {
    pub fn as_str(self) -> &'static str {
        match self {
            CollapseCertificate::TwoColumns => "two_columns",
            CollapseCertificate::D2ZeroBySupport => "d2_zero_by_support",
            CollapseCertificate::D2ZeroBySymmetry => "d2_zero_by_symmetry",
            CollapseCertificate::Unresolved => "unresolved",
        }
    }
}

/// Betti numbers of `A`. `upper` are the `E^2` totals; `lower` subtracts
/// every higher differential that could be nonzero. They agree unless the
/// certificate is `Unresolved`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiVector {
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
    pub certificate: CollapseCertificate,
    pub e2: BTreeMap<(usize, usize), usize>,
}

impl BettiVector {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    /// The Betti numbers, or `None` when collapse is unresolved.
    pub fn values(&self) -> Option<&[usize]> {
        self.is_exact().then_some(&self.upper[..])
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating(&self.upper)
    }

    pub fn e2_dim(&self, p: usize, q: usize) -> usize {
        self.e2.get(&(p, q)).copied().unwrap_or(0)
    }
}

pub(crate) fn alternating(v: &[usize]) -> i64 {
    v.iter().enumerate().map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
}

pub fn build_e1(poset: &IntersectionPoset) -> SpectralPage {
    let height = poset.height();
    let chains = (0..height).map(|p| poset.chains(p)).collect();
    let lattice_rank: Vec<usize> = poset.elements().iter().map(|e| e.torus.dim()).collect();
    let max_q = lattice_rank.iter().copied().max().unwrap_or(0);
    SpectralPage { chains, lattice_rank, max_q }
}

impl SpectralPage {
    /// Number of nonempty columns.
    pub fn columns(&self) -> usize {
        self.chains.len()
    }

    pub fn max_q(&self) -> usize {
        self.max_q
    }

    pub fn chains(&self, p: usize) -> &[Chain] {
        self.chains.get(p).map_or(&[], |c| &c[..])
    }

    /// Rank of the deepest element's lattice.
    pub fn deepest_rank(&self, chain: &[usize]) -> usize {
        self.lattice_rank[*chain.last().expect("nonempty chain")]
    }

    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.chains(p).iter().map(|c| binomial(self.deepest_rank(c), q)).sum()
    }

    /// Start of each chain's block within the basis of `E^1_{p,q}`.
    pub fn offsets(&self, p: usize, q: usize) -> Vec<usize> {
        let mut acc = 0;
        self.chains(p)
            .iter()
            .map(|c| {
                let o = acc;
                acc += binomial(self.deepest_rank(c), q);
                o
            })
            .collect()
    }

    /// Basis labels of `E^1_{p,q}`: (chain, wedge index set).
    pub fn labels(&self, p: usize, q: usize) -> Vec<(Chain, Vec<usize>)> {
        let mut out = Vec::new();
        for c in self.chains(p) {
            for s in subsets(self.deepest_rank(c), q) {
                out.push((c.clone(), s));
            }
        }
        out
    }

    pub fn chain_index(&self, p: usize, chain: &[usize]) -> Option<usize> {
        self.chains(p).binary_search_by(|c| c[..].cmp(chain)).ok()
    }

    /// `Σ (-1)^{p+q} dim E^1_{p,q}`.
    pub fn euler_characteristic(&self) -> i64 {
        let mut chi = 0i64;
        for p in 0..self.columns() {
            for q in 0..=self.max_q {
                let d = self.dim(p, q) as i64;
                chi += if (p + q) % 2 == 0 { d } else { -d };
            }
        }
        chi
    }
}

/// `C` with `basis(Λ_sub) = C * basis(Λ_sup)`.
pub(crate) fn inclusion_matrix(poset: &IntersectionPoset, sub: usize, sup: usize) -> IntMatrix {
    let lsub = poset.element(sub).torus.direction();
    let lsup = poset.element(sup).torus.direction();
    lsup.express(lsub).expect("comparable elements have nested lattices")
}

pub fn build_d1(page: &SpectralPage, poset: &IntersectionPoset) -> Differential {
    let mut maps = BTreeMap::new();
    let mut compounds: BTreeMap<(usize, usize, usize), IntMatrix> = BTreeMap::new();
    for p in 1..page.columns() {
        for q in 0..=page.max_q {
            let src = page.dim(p, q);
            let dst = page.dim(p - 1, q);
            let src_off = page.offsets(p, q);
            let dst_off = page.offsets(p - 1, q);
            let mut m = IntMatrix::zeros(dst, src);
            for (ci, c) in page.chains(p).iter().enumerate() {
                let r = page.deepest_rank(c);
                let width = binomial(r, q);
                if width == 0 {
                    continue;
                }
                for j in 0..=p {
                    let mut face = c.clone();
                    face.remove(j);
                    let fi = page.chain_index(p - 1, &face).expect("faces of chains are chains");
                    let sign = if j % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
                    if j < p {
                        for k in 0..width {
                            m[(dst_off[fi] + k, src_off[ci] + k)] += &sign;
                        }
                    } else {
                        let key = (c[p], c[p - 1], q);
                        let w = compounds.entry(key).or_insert_with(|| {
                            exterior_power(&inclusion_matrix(poset, c[p], c[p - 1]), q)
                        });
                        // source wedge I maps to Σ_J minor(I, J) wedge J
                        for i in 0..w.rows() {
                            for jj in 0..w.cols() {
                                let x = &w[(i, jj)];
                                if !x.is_zero() {
                                    m[(dst_off[fi] + jj, src_off[ci] + i)] += x * &sign;
                                }
                            }
                        }
                    }
                }
            }
            maps.insert((p, q), m);
        }
    }
    Differential { maps }
}

impl Differential {
    /// `d^1` out of `E^1_{p,q}`; `None` for `p = 0`.
    pub fn get(&self, p: usize, q: usize) -> Option<&IntMatrix> {
        self.maps.get(&(p, q))
    }

    pub fn rank(&self, p: usize, q: usize) -> usize {
        self.get(p, q).map_or(0, |m| rank_integer(m.clone().into_rows()))
    }

    /// Whether `d^1 ∘ d^1 = 0` everywhere.
    pub fn squares_to_zero(&self) -> bool {
        self.maps.iter().all(|(&(p, q), m)| match self.maps.get(&(p + 1, q)) {
            Some(next) => (m * next).is_zero(),
            None => true,
        })
    }

    /// Nontrivial invariant factors of each block (torsion of `im d^1`).
    pub fn torsion(&self) -> BTreeMap<(usize, usize), Vec<BigInt>> {
        let mut out = BTreeMap::new();
        for (&k, m) in &self.maps {
            let t: Vec<BigInt> = smith_normal_form(m)
                .invariant_factors()
                .into_iter()
                .filter(|d| d > &BigInt::from(1))
                .collect();
            if !t.is_empty() {
                out.insert(k, t);
            }
        }
        out
    }
}

/// `E^2` dimensions from the ranks of `d^1`.
pub fn e2_dims(page: &SpectralPage, d1: &Differential) -> BTreeMap<(usize, usize), usize> {
    let mut ranks = BTreeMap::new();
    for p in 1..page.columns() {
        for q in 0..=page.max_q {
            ranks.insert((p, q), d1.rank(p, q));
        }
    }
    let mut out = BTreeMap::new();
    for p in 0..page.columns() {
        for q in 0..=page.max_q {
            let dim = page.dim(p, q);
            let r_out = ranks.get(&(p, q)).copied().unwrap_or(0);
            let r_in = ranks.get(&(p + 1, q)).copied().unwrap_or(0);
            let e = dim - r_out - r_in;
            if e > 0 {
                out.insert((p, q), e);
            }
        }
    }
    out
}

/// Irreducible constituents present in an `E^2` block.
pub type Support = BTreeSet<String>;

/// Betti numbers of `A` from `E^2`. `symmetry` gives, per `(p, q)`, the set of
/// irreps occurring in `E^2_{p,q}`; it is consulted only when the support
/// test cannot exclude a nonzero `d^2`.
pub fn compute_betti(
    page: &SpectralPage,
    d1: &Differential,
    symmetry: Option<&BTreeMap<(usize, usize), Support>>,
) -> BettiVector {
    let e2 = e2_dims(page, d1);
    betti_from_e2(e2, page.columns(), page.max_q, symmetry)
}

pub(crate) fn betti_from_e2(
    e2: BTreeMap<(usize, usize), usize>,
    columns: usize,
    max_q: usize,
    symmetry: Option<&BTreeMap<(usize, usize), Support>>,
) -> BettiVector {
    let top = if e2.is_empty() { 0 } else { columns + max_q };
    let mut upper = alloc::vec![0usize; top];
    for (&(p, q), &d) in &e2 {
        upper[p + q] += d;
    }
    while upper.last() == Some(&0) {
        upper.pop();
    }
    let get = |p: usize, q: usize| e2.get(&(p, q)).copied().unwrap_or(0);

    // possible d^r: E_{p,q} -> E_{p-r,q+r-1}, r >= 2
    let mut live: Vec<(usize, usize, usize)> = Vec::new();
    for r in 2..columns.max(2) {
        for p in r..columns {
            for q in 0..=max_q {
                let bound = get(p, q).min(get(p - r, q + r - 1));
                if bound > 0 {
                    live.push((p, q, r));
                }
            }
        }
    }
    let certificate = if columns <= 2 {
        CollapseCertificate::TwoColumns
    } else if live.is_empty() {
        CollapseCertificate::D2ZeroBySupport
    } else if columns == 3
        && symmetry.is_some_and(|s| {
            live.iter().all(|&(p, q, r)| {
                let empty = Support::new();
                let a = s.get(&(p, q)).unwrap_or(&empty);
                let b = s.get(&(p - r, q + r - 1)).unwrap_or(&empty);
                a.is_disjoint(b)
            })
        })
    {
        CollapseCertificate::D2ZeroBySymmetry
    } else {
        CollapseCertificate::Unresolved
    };
    let mut lower = upper.clone();
    if certificate == CollapseCertificate::Unresolved {
        for &(p, q, r) in &live {
            let bound = get(p, q).min(get(p - r, q + r - 1));
            lower[p + q] -= bound.min(lower[p + q]);
            lower[p + q - 1] -= bound.min(lower[p + q - 1]);
        }
    }
    BettiVector { lower, upper, certificate, e2 }
}

/// Betti numbers of `m` 2-tori in `p` components meeting only in points,
/// `n_k` of which lie on exactly `k` tori.
pub fn betti_2d_closed_form(m: usize, p: usize, n_k: &BTreeMap<usize, usize>) -> [usize; 3] {
    let extra: usize = n_k.iter().map(|(&k, &n)| (k.saturating_sub(1)) * n).sum();
    [p, m + p + extra, m]
}

/// `E^1` dimensions as a grid `[p][q]`.
pub fn e1_grid(page: &SpectralPage) -> Vec<Vec<usize>> {
    (0..page.columns()).map(|p| (0..=page.max_q).map(|q| page.dim(p, q)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};
    use crate::poset::build_poset;
    use crate::poset::tests::{ammann_beenker, torus};
    use crate::torus::Arrangement;
    use alloc::vec;

    #[test]
    fn single_two_torus() {
        let a = Arrangement::new("one", 4, vec![ammann_beenker().tori()[0].clone()]).unwrap();
        let poset = build_poset(&a);
        let page = build_e1(&poset);
        assert_eq!(e1_grid(&page), vec![vec![1, 2, 1]]);
        let d1 = build_d1(&page, &poset);
        assert!(d1.get(1, 0).is_none());
        let b = compute_betti(&page, &d1, None);
        assert_eq!(b.values(), Some(&[1, 2, 1][..]));
        assert_eq!(b.certificate, CollapseCertificate::TwoColumns);
    }

    #[test]
    fn octagonal_pages() {
        let poset = build_poset(&ammann_beenker());
        let page = build_e1(&poset);
        assert_eq!(page.dim(0, 2), 4);
        assert_eq!(page.dim(0, 1), 8);
        assert_eq!(page.dim(0, 0), 7);
        assert_eq!(page.dim(1, 0), 8);
        assert_eq!(page.dim(1, 1), 0);
        let d1 = build_d1(&page, &poset);
        assert!(d1.squares_to_zero());
        assert_eq!(d1.rank(1, 0), 6);
        let b = compute_betti(&page, &d1, None);
        assert_eq!(b.values(), Some(&[1, 10, 4][..]));
        assert_eq!(b.euler_characteristic(), page.euler_characteristic());
        let closed = betti_2d_closed_form(4, 1, &poset.point_multiplicities());
        assert_eq!(closed, [1, 10, 4]);
    }

    #[test]
    fn closed_form_rows() {
        assert_eq!(betti_2d_closed_form(4, 1, &BTreeMap::from([(2, 2), (4, 1)])), [1, 10, 4]);
        assert_eq!(betti_2d_closed_form(10, 1, &BTreeMap::from([(2, 10), (4, 5)])), [1, 36, 10]);
        assert_eq!(betti_2d_closed_form(1, 1, &BTreeMap::new()), [1, 2, 1]);
    }

    #[test]
    fn disjoint_union_adds() {
        let a = Arrangement::new("pair", 3, vec![
            torus(3, &[&[1, 0, 0], &[0, 1, 0]], &[rat(0), rat(0), rat(0)]),
            torus(3, &[&[1, 0, 0], &[0, 1, 0]], &[rat(0), rat(0), ratio(1, 2)]),
        ])
        .unwrap();
        let poset = build_poset(&a);
        let page = build_e1(&poset);
        let d1 = build_d1(&page, &poset);
        assert_eq!(compute_betti(&page, &d1, None).values(), Some(&[2, 4, 2][..]));
    }

    #[test]
    fn three_columns_with_support_collapse() {
        // a 2-torus in T^3 containing two circles that cross at one point
        let z = vec![rat(0); 3];
        let a = Arrangement::new("nested", 3, vec![
            torus(3, &[&[1, 0, 0], &[0, 1, 0]], &z),
            torus(3, &[&[1, 0, 0], &[0, 0, 1]], &z),
            torus(3, &[&[0, 1, 0], &[0, 0, 1]], &z),
        ])
        .unwrap();
        let poset = build_poset(&a);
        assert_eq!(poset.height(), 3);
        let page = build_e1(&poset);
        let d1 = build_d1(&page, &poset);
        assert!(d1.squares_to_zero());
        let b = compute_betti(&page, &d1, None);
        assert_eq!(b.euler_characteristic(), page.euler_characteristic());
    }

    #[test]
    fn unresolved_keeps_bounds() {
        let e2 = BTreeMap::from([((0, 0), 1), ((0, 1), 2), ((2, 0), 3)]);
        let b = betti_from_e2(e2.clone(), 3, 1, None);
        assert_eq!(b.certificate, CollapseCertificate::Unresolved);
        assert_eq!(b.upper, vec![1, 2, 3]);
        assert_eq!(b.lower, vec![1, 0, 1]);
        let sym = BTreeMap::from([
            ((2, 0), Support::from([String::from("A")])),
            ((0, 1), Support::from([String::from("T1")])),
        ]);
        let b = betti_from_e2(e2.clone(), 3, 1, Some(&sym));
        assert_eq!(b.certificate, CollapseCertificate::D2ZeroBySymmetry);
        let clash = BTreeMap::from([
            ((2, 0), Support::from([String::from("A")])),
            ((0, 1), Support::from([String::from("A")])),
        ]);
        assert_eq!(betti_from_e2(e2, 3, 1, Some(&clash)).certificate, CollapseCertificate::Unresolved);
    }
}
