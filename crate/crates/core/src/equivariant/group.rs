use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::ToString;
use alloc::vec::Vec;

use num_traits::{One, Signed};

use crate::algebra::{determinant, frac, solve, IntMatrix, Matrix, Rational};
use crate::{Error, Result};

/// `x -> m x + t` on `T^N`, with `t` reduced into `[0,1)^N`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineMap {
    pub m: IntMatrix,
    pub t: Vec<Rational>,
}

impl AffineMap {
    pub fn new(m: IntMatrix, t: &[Rational]) -> Result<Self> {
        if m.rows() != m.cols() || m.cols() != t.len() {
            return Err(Error::DimensionMismatch { expected: t.len(), found: m.cols() });
        }
        if !determinant(&m).abs().is_one() {
            return Err(Error::Group("generator is not unimodular".to_string()));
        }
        Ok(AffineMap { m, t: t.iter().map(frac).collect() })
    }

    pub fn linear(m: IntMatrix) -> Result<Self> {
        let n = m.cols();
        Self::new(m, &alloc::vec![Rational::from_integer(0.into()); n])
    }

    pub fn identity(n: usize) -> Self {
        AffineMap { m: Matrix::identity(n), t: alloc::vec![Rational::from_integer(0.into()); n] }
    }

    pub fn dim(&self) -> usize {
        self.t.len()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        let mq = self.m.map(|x| Rational::from_integer(x.clone()));
        let t: Vec<Rational> =
            mq.mul_vec(&other.t).iter().zip(&self.t).map(|(a, b)| frac(&(a + b))).collect();
        AffineMap { m: &self.m * &other.m, t }
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        let mq = self.m.map(|v| Rational::from_integer(v.clone()));
        mq.mul_vec(x).iter().zip(&self.t).map(|(a, b)| a + b).collect()
    }

    pub fn inverse(&self) -> AffineMap {
        let n = self.dim();
        let mq = self.m.map(|x| Rational::from_integer(x.clone()));
        let cols: Vec<Vec<Rational>> = (0..n)
            .map(|j| {
                let mut e = alloc::vec![Rational::from_integer(0.into()); n];
                e[j] = Rational::one();
                solve(&mq, &e).expect("unimodular")
            })
            .collect();
        let inv = Matrix::from_fn(n, n, |i, j| cols[j][i].to_integer());
        let invq = inv.map(|x| Rational::from_integer(x.clone()));
        let t: Vec<Rational> = invq.mul_vec(&self.t).iter().map(|x| frac(&-x)).collect();
        AffineMap { m: inv, t }
    }
}

/// A finite group of affine maps of `T^N` generated by a few elements.
///
/// `elements[0]` is the identity; `words[i]` spells element `i` as a product
/// of generator indices.
#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    generators: Vec<AffineMap>,
    elements: Vec<AffineMap>,
    words: Vec<Vec<usize>>,
    index: BTreeMap<AffineMap, usize>,
    mult: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

const MAX_ORDER: usize = 2_000;

impl FiniteMatrixGroup {
    pub fn generate(generators: Vec<AffineMap>) -> Result<Self> {
        let n = generators.first().map_or(0, AffineMap::dim);
        if generators.iter().any(|g| g.dim() != n) {
            return Err(Error::Group("generators act on different tori".to_string()));
        }
        let id = AffineMap::identity(n);
        let mut elements = alloc::vec![id.clone()];
        let mut words = alloc::vec![Vec::new()];
        let mut index = BTreeMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (s, g) in generators.iter().enumerate() {
                let h = elements[i].compose(g);
                if index.contains_key(&h) {
                    continue;
                }
                if elements.len() >= MAX_ORDER {
                    return Err(Error::Group("group is too large or infinite".to_string()));
                }
                let mut w = words[i].clone();
                w.push(s);
                index.insert(h.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(h);
                words.push(w);
            }
        }
        let order = elements.len();
        let mult: Vec<Vec<usize>> = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&a.compose(b)]).collect())
            .collect();
        let inverse: Vec<usize> =
            (0..order).map(|i| (0..order).find(|&j| mult[i][j] == 0).expect("finite group")).collect();
        let mut class_of = alloc::vec![usize::MAX; order];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..order {
            if class_of[x] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = (0..order).map(|g| mult[mult[g][x]][inverse[g]]).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(members);
        }
        Ok(FiniteMatrixGroup { generators, elements, words, index, mult, inverse, classes, class_of })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.elements[0].dim()
    }

    pub fn generators(&self) -> &[AffineMap] {
        &self.generators
    }

    pub fn elements(&self) -> &[AffineMap] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &AffineMap {
        &self.elements[i]
    }

    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    pub fn index_of(&self, g: &AffineMap) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Index of `elements[a] ∘ elements[b]`.
    pub fn product(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Element spelled by a word in the generators (empty word is the identity).
    pub fn evaluate(&self, word: &[usize]) -> Result<usize> {
        let mut acc = 0;
        for &s in word {
            let g = self.generators.get(s).ok_or_else(|| Error::Group(alloc::format!("no generator g{}", s + 1)))?;
            acc = self.mult[acc][self.index[g]];
        }
        Ok(acc)
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mult[x][g];
            k += 1;
        }
        k
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;
    use alloc::vec;

    fn rot4() -> AffineMap {
        AffineMap::linear(IntMatrix::from_i64(2, &[&[0, -1], &[1, 0]])).unwrap()
    }

    #[test]
    fn cyclic_four() {
        let g = FiniteMatrixGroup::generate(vec![rot4()]).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.classes().len(), 4);
        assert_eq!(g.element_order(g.evaluate(&[0]).unwrap()), 4);
        for a in 0..4 {
            assert_eq!(g.product(a, g.inverse(a)), 0);
        }
    }

    #[test]
    fn dihedral_classes() {
        let flip = AffineMap::linear(IntMatrix::from_i64(2, &[&[1, 0], &[0, -1]])).unwrap();
        let g = FiniteMatrixGroup::generate(vec![rot4(), flip]).unwrap();
        assert_eq!(g.order(), 8);
        let mut sizes: Vec<usize> = g.classes().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn translations_compose_mod_one() {
        let h = AffineMap::new(Matrix::identity(2), &[ratio(1, 2), ratio(1, 2)]).unwrap();
        let g = FiniteMatrixGroup::generate(vec![h.clone()]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(h.compose(&h), AffineMap::identity(2));
        assert_eq!(h.inverse(), h);
    }

    #[test]
    fn rejects_non_unimodular() {
        assert!(AffineMap::linear(IntMatrix::from_i64(1, &[&[2]])).is_err());
    }

    #[test]
    fn infinite_group_is_refused() {
        let shear = AffineMap::linear(IntMatrix::from_i64(2, &[&[1, 1], &[0, 1]])).unwrap();
        assert!(FiniteMatrixGroup::generate(vec![shear]).is_err());
    }
}
