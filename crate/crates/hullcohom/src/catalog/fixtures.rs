/// One row of the table of Betti numbers of `T^4 \ A` for planar tilings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Table1Row {
    pub entry: &'static str,
    pub m: usize,
    pub p: usize,
    pub c2: usize,
    pub n_k: &'static [(usize, usize)],
    pub b1: usize,
    pub b2: usize,
}

pub const TABLE1: [Table1Row; 6] = [
    Table1Row { entry: "ammann_beenker", m: 4, p: 1, c2: 3, n_k: &[(2, 2), (4, 1)], b1: 5, b2: 9 },
    Table1Row {
        entry: "ammann_beenker_decorated",
        m: 8,
        p: 1,
        c2: 2,
        n_k: &[(2, 6), (4, 1), (8, 1)],
        b1: 8,
        b2: 23,
    },
    Table1Row { entry: "penrose_special", m: 5, p: 1, c2: 2, n_k: &[(5, 1)], b1: 5, b2: 8 },
    Table1Row { entry: "penrose_generic", m: 10, p: 1, c2: 2, n_k: &[(2, 10), (4, 5)], b1: 10, b2: 34 },
    Table1Row { entry: "dodecagonal", m: 6, p: 1, c2: 3, n_k: &[(2, 9), (3, 4), (6, 1)], b1: 7, b2: 28 },
    Table1Row {
        entry: "dodecagonal_decorated",
        m: 12,
        p: 1,
        c2: 2,
        n_k: &[(2, 12), (3, 8), (4, 3), (12, 1)],
        b1: 12,
        b2: 59,
    },
];

/// Irrep multiplicities, columns in the order of `irreps`.
#[derive(Clone, Debug)]
pub struct IrrepFixtures {
    pub irreps: [&'static str; 10],
    /// `E^2_{p,q}`.
    pub e2: [((usize, usize), [usize; 10]); 9],
    /// `(dimension, Im beta^n)` for `n = 0..=3`; zero above.
    pub im_beta: [(usize, [usize; 10]); 4],
    /// `(dimension, H^n(T^6))`.
    pub torus: [(usize, [usize; 10]); 7],
    /// `(Betti number, H^k(T^6 \ A))` for `k = 0..=3`; zero above.
    pub complement: [(usize, [usize; 10]); 4],
}

pub const AK_IRREPS: IrrepFixtures = IrrepFixtures {
    irreps: ["A", "A'", "T1", "T1'", "T2", "T2'", "G", "G'", "H", "H'"],
    e2: [
        ((0, 4), [1, 0, 0, 0, 0, 0, 1, 0, 2, 0]),
        ((0, 3), [0, 0, 4, 0, 4, 0, 4, 0, 4, 0]),
        ((1, 2), [0, 1, 0, 0, 0, 0, 1, 1, 1, 2]),
        ((0, 2), [1, 0, 2, 0, 2, 0, 3, 0, 3, 0]),
        ((1, 1), [0, 0, 3, 2, 3, 2, 4, 2, 6, 2]),
        ((2, 0), [1, 1, 0, 2, 0, 2, 1, 3, 2, 4]),
        ((0, 1), [0, 0, 1, 0, 1, 0, 0, 0, 0, 0]),
        ((1, 0), [0; 10]),
        ((0, 0), [1, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
    ],
    im_beta: [
        (1, [1, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
        (6, [0, 0, 1, 0, 1, 0, 0, 0, 0, 0]),
        (6, [0, 0, 1, 0, 1, 0, 0, 0, 0, 0]),
        (2, [2, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
    ],
    torus: [
        (1, [1, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
        (6, [0, 0, 1, 0, 1, 0, 0, 0, 0, 0]),
        (15, [0, 0, 1, 0, 1, 0, 1, 0, 1, 0]),
        (20, [2, 0, 0, 0, 0, 0, 2, 0, 2, 0]),
        (15, [0, 0, 1, 0, 1, 0, 1, 0, 1, 0]),
        (6, [0, 0, 1, 0, 1, 0, 0, 0, 0, 0]),
        (1, [1, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
    ],
    complement: [
        (1, [1, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
        (12, [1, 0, 1, 0, 1, 0, 0, 0, 1, 0]),
        (72, [0, 1, 5, 0, 5, 0, 3, 1, 3, 2]),
        (181, [4, 1, 4, 4, 4, 4, 7, 5, 10, 6]),
    ],
};

#[cfg(test)]
mod tests {
    use super::*;

    const DEG: [usize; 10] = [1, 1, 3, 3, 3, 3, 4, 4, 5, 5];

    fn dim(m: &[usize; 10]) -> usize {
        m.iter().zip(DEG).map(|(a, b)| a * b).sum()
    }

    #[test]
    fn rows_are_internally_consistent() {
        for (d, m) in AK_IRREPS.im_beta.iter().chain(&AK_IRREPS.torus).chain(&AK_IRREPS.complement) {
            assert_eq!(*d, dim(m));
        }
        let e2: Vec<usize> = AK_IRREPS.e2.iter().map(|(_, m)| dim(m)).collect();
        assert_eq!(e2, vec![15, 60, 24, 40, 94, 60, 6, 0, 1]);
    }

    #[test]
    fn planar_rows_follow_the_closed_form() {
        for r in &TABLE1 {
            let b1_a = r.m + r.p + r.n_k.iter().map(|(k, n)| (k - 1) * n).sum::<usize>();
            assert_eq!(r.b1, r.m + r.c2 - 2, "{}", r.entry);
            assert_eq!(r.b2, b1_a + r.c2 - 4, "{}", r.entry);
        }
    }
}
