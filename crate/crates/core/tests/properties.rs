use std::collections::BTreeMap;

use hullcohom_core::algebra::*;
use hullcohom_core::complement::{complement_report, expected_complement_euler};
use hullcohom_core::equivariant::{AffineMap, FiniteMatrixGroup};
use hullcohom_core::poset::build_poset;
use hullcohom_core::spectral::{betti_2d_closed_form, build_d1, build_e1, compute_betti};
use hullcohom_core::torus::{AffineSubtorus, Arrangement};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize, range: i64) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(-range..=range, rows * cols).prop_map(move |v| {
        IntMatrix::from_fn(rows, cols, |i, j| BigInt::from(v[i * cols + j]))
    })
}

fn sized_matrix(max: usize, range: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| matrix(r, c, range))
}

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| ratio(n, d))
}

fn quad(d: u64) -> impl Strategy<Value = QuadScalar> {
    (rational(), rational()).prop_map(move |(a, b)| QuadScalar::new(a, b, d))
}

fn is_unimodular(m: &IntMatrix) -> bool {
    m.rows() == m.cols() && determinant(m).abs().is_one()
}

fn torus_strategy(n: usize, dim: usize) -> impl Strategy<Value = Option<AffineSubtorus>> {
    (matrix(dim, n, 2), proptest::collection::vec(0i64..6, n)).prop_map(move |(b, o)| {
        let off: Vec<Rational> = o.iter().map(|&x| ratio(x, 6)).collect();
        AffineSubtorus::new(&b, &off).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn smith_reconstructs(m in sized_matrix(5, 9)) {
        let s = smith_normal_form(&m);
        prop_assert!(is_unimodular(&s.u) && is_unimodular(&s.v));
        prop_assert_eq!(&(&s.u * &s.d) * &s.v, m.clone());
        prop_assert_eq!(&(&s.u_inv * &m) * &s.v_inv, s.d.clone());
        prop_assert_eq!(&s.u * &s.u_inv, IntMatrix::identity(m.rows()));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            if !w[0].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero());
            } else {
                prop_assert!(w[1].is_zero());
            }
        }
        prop_assert_eq!(s.rank(), rank_integer(m.clone().into_rows()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hnf_is_row_equivalent(m in sized_matrix(4, 6)) {
        let h = hermite_normal_form(&m);
        let a = Lattice::from_generators(&m);
        let b = Lattice::from_generators(&h);
        prop_assert_eq!(a, b);
        prop_assert_eq!(hermite_normal_form(&h), h);
    }

    #[test]
    fn cauchy_binet(a in matrix(3, 4, 4), b in matrix(4, 3, 4), q in 0usize..=3) {
        let lhs = exterior_power(&(&a * &b), q);
        let rhs = &exterior_power(&a, q) * &exterior_power(&b, q);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn saturation(m in sized_matrix(3, 5).prop_filter("fits", |m| m.cols() >= m.rows())) {
        let l = Lattice::from_generators(&m);
        let s = l.saturate();
        prop_assert!(s.is_saturated());
        prop_assert_eq!(s.saturate(), s.clone());
        prop_assert!(l.is_sublattice_of(&s));
        let idx = Lattice::index_of(&l, &s).unwrap();
        let product = smith_normal_form(&m).invariant_factors().iter().fold(BigInt::one(), |acc, d| acc * d);
        prop_assert_eq!(idx, product);
    }

    #[test]
    fn quadratic_field(x in quad(5), y in quad(5)) {
        prop_assert_eq!((x.clone() * y.clone()).conjugate(), x.conjugate() * y.conjugate());
        prop_assert_eq!((x.clone() * y.clone()).norm(), x.norm() * y.norm());
        prop_assert_eq!(x.clone() * x.conjugate(), QuadScalar::rational(x.norm()));
        if !x.is_zero() {
            prop_assert_eq!(x.clone() * x.inv(), QuadScalar::from_int(1));
        }
        prop_assert_eq!((x.clone() + y.clone()) - y, x);
    }

    #[test]
    fn intersection_is_symmetric(
        n in 2usize..=4,
        seed in any::<u64>(),
    ) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut torus = |d: usize| {
            let rows: Vec<Vec<BigInt>> = (0..d).map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-2..=2))).collect()).collect();
            let off: Vec<Rational> = (0..n).map(|_| ratio(rng.gen_range(0..4), 4)).collect();
            AffineSubtorus::new(&IntMatrix::from_rows(n, &rows), &off).ok()
        };
        let (Some(a), Some(b)) = (torus(rng_dim(seed, n)), torus(rng_dim(seed >> 8, n))) else { return Ok(()) };
        let ab = a.intersect(&b).unwrap();
        let ba = b.intersect(&a).unwrap();
        prop_assert_eq!(&ab, &ba);
        for c in &ab {
            prop_assert!(a.contains(c) && b.contains(c));
        }
        prop_assert_eq!(a.intersect(&a).unwrap(), vec![a.clone()]);
    }

    #[test]
    fn transform_roundtrip(t in torus_strategy(3, 2)) {
        let Some(t) = t else { return Ok(()) };
        let g = AffineMap::new(
            IntMatrix::from_i64(3, &[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]),
            &[ratio(1, 3), rat(0), ratio(1, 2)],
        ).unwrap();
        let back = g.inverse();
        prop_assert_eq!(t.transform(&g.m, &g.t).transform(&back.m, &back.t), t);
    }
}

fn rng_dim(seed: u64, n: usize) -> usize {
    1 + (seed as usize % (n - 1))
}

fn random_arrangement(seed: u64, n: usize, max_tori: usize, dims: &[usize]) -> Option<Arrangement> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let m = rng.gen_range(1..=max_tori);
    let mut tori = Vec::new();
    for _ in 0..m {
        let d = dims[rng.gen_range(0..dims.len())];
        let rows: Vec<Vec<BigInt>> =
            (0..d).map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-1..=1))).collect()).collect();
        let off: Vec<Rational> = (0..n).map(|_| ratio(rng.gen_range(0..3), 3)).collect();
        tori.push(AffineSubtorus::new(&IntMatrix::from_rows(n, &rows), &off).ok()?);
    }
    tori.sort();
    tori.dedup();
    Arrangement::new("random", n, tori).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn d1_squares_to_zero_and_euler(seed in any::<u64>(), n in 2usize..=4) {
        let dims: Vec<usize> = (1..n).collect();
        let Some(arr) = random_arrangement(seed, n, 4, &dims) else { return Ok(()) };
        let poset = build_poset(&arr);
        let page = build_e1(&poset);
        let d1 = build_d1(&page, &poset);
        prop_assert!(d1.squares_to_zero());
        let betti = compute_betti(&page, &d1, None);
        // E^1 and every page in between share the Euler characteristic
        let e2_chi: i64 = betti.e2.iter().map(|(&(p, q), &d)| if (p + q) % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
        prop_assert_eq!(page.euler_characteristic(), e2_chi);
        if let Some(b) = betti.values() {
            let chi: i64 = b.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
            prop_assert_eq!(chi, page.euler_characteristic());
            if let Ok(rep) = complement_report(&poset, &betti, None) {
                if let Some(c) = rep.betti() {
                    let chi_c: i64 = c.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
                    prop_assert_eq!(chi_c, expected_complement_euler(b, n));
                }
            }
        }
    }

    #[test]
    fn permutation_invariance(seed in any::<u64>(), shift in 0usize..5) {
        let Some(arr) = random_arrangement(seed, 4, 5, &[2]) else { return Ok(()) };
        let mut tori = arr.tori().to_vec();
        let k = shift % tori.len();
        tori.rotate_left(k);
        tori.reverse();
        let other = Arrangement::new("permuted", 4, tori).unwrap();
        let (p1, p2) = (build_poset(&arr), build_poset(&other));
        prop_assert_eq!(p1.census(), p2.census());
        prop_assert_eq!(p1.point_multiplicities(), p2.point_multiplicities());
        let b1 = compute_betti(&build_e1(&p1), &build_d1(&build_e1(&p1), &p1), None);
        let b2 = compute_betti(&build_e1(&p2), &build_d1(&build_e1(&p2), &p2), None);
        prop_assert_eq!(b1.lower, b2.lower);
        prop_assert_eq!(b1.upper, b2.upper);
    }
}

#[test]
fn closed_form_on_point_arrangements() {
    let mut checked = 0;
    let mut seed = 0u64;
    while checked < 100 {
        seed += 1;
        let Some(arr) = random_arrangement(seed, 4, 5, &[2]) else { continue };
        let poset = build_poset(&arr);
        if poset.elements().iter().any(|e| e.torus.dim() == 1) {
            continue;
        }
        let page = build_e1(&poset);
        let betti = compute_betti(&page, &build_d1(&page, &poset), None);
        let closed = betti_2d_closed_form(arr.len(), poset.components(), &poset.point_multiplicities());
        assert_eq!(betti.values(), Some(&closed[..]), "seed {seed}");
        checked += 1;
    }
}

#[test]
fn group_of_signed_permutations() {
    let swap = AffineMap::linear(IntMatrix::from_i64(2, &[&[0, 1], &[1, 0]])).unwrap();
    let neg = AffineMap::linear(IntMatrix::from_i64(2, &[&[-1, 0], &[0, 1]])).unwrap();
    let g = FiniteMatrixGroup::generate(vec![swap, neg]).unwrap();
    assert_eq!(g.order(), 8);
    let sizes: BTreeMap<usize, usize> = g.classes().iter().fold(BTreeMap::new(), |mut m, c| {
        *m.entry(c.len()).or_insert(0) += 1;
        m
    });
    assert_eq!(sizes, BTreeMap::from([(1, 2), (2, 3)]));
}
