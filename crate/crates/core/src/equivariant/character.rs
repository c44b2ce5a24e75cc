use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::group::FiniteMatrixGroup;
use crate::algebra::{QuadScalar, Rational};
use crate::{Error, Result};

/// A conjugacy class named by a word in the generators (`g1 g1 g2`, `e`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSpec {
    pub name: String,
    pub word: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Irrep {
    pub name: String,
    /// One value per class, in the order of [`CharacterTable::classes`].
    pub values: Vec<QuadScalar>,
}

impl Irrep {
    pub fn degree(&self) -> usize {
        self.values[0].a().to_integer().try_into().expect("small degree")
    }
}

/// Character table as written down by hand; [`CharacterTable::bind`]
/// attaches it to a generated group and checks it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub classes: Vec<ClassSpec>,
    pub irreps: Vec<Irrep>,
}

/// A character table validated against a group.
#[derive(Clone, Debug)]
pub struct BoundTable {
    table: CharacterTable,
    order: usize,
    /// table class of every group element
    class_of: Vec<usize>,
    sizes: Vec<usize>,
    /// table class of the inverses of each class
    inverse_class: Vec<usize>,
    /// Galois partner of each irrep (itself when rational)
    partner: Vec<usize>,
}

impl CharacterTable {
    pub fn bind(&self, group: &FiniteMatrixGroup) -> Result<BoundTable> {
        if self.classes.first().is_some_and(|c| !c.word.is_empty()) {
            return Err(Error::Group(String::from("the first class must be the identity `e`")));
        }
        let order = group.order();
        let mut class_of = alloc::vec![usize::MAX; order];
        let mut sizes = Vec::new();
        for (k, c) in self.classes.iter().enumerate() {
            let g = group.evaluate(&c.word)?;
            let members = &group.classes()[group.class_of(g)];
            if class_of[g] != usize::MAX {
                return Err(Error::Group(alloc::format!(
                    "classes {} and {} coincide",
                    self.classes[class_of[g]].name,
                    c.name
                )));
            }
            for &m in members {
                class_of[m] = k;
            }
            sizes.push(members.len());
        }
        if class_of.contains(&usize::MAX) {
            return Err(Error::Group(alloc::format!(
                "table lists {} classes, the group has {}",
                self.classes.len(),
                group.classes().len()
            )));
        }
        let inverse_class: Vec<usize> = self
            .classes
            .iter()
            .map(|c| class_of[group.inverse(group.evaluate(&c.word).expect("checked"))])
            .collect();
        let nc = self.classes.len();
        for r in &self.irreps {
            if r.values.len() != nc {
                return Err(Error::Group(alloc::format!("irrep {} has {} values", r.name, r.values.len())));
            }
        }
        let partner = self
            .irreps
            .iter()
            .map(|r| {
                let conj: Vec<QuadScalar> = r.values.iter().map(QuadScalar::conjugate).collect();
                self.irreps.iter().position(|s| s.values == conj).ok_or_else(|| {
                    Error::Group(alloc::format!("Galois conjugate of {} missing", r.name))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let bound = BoundTable { table: self.clone(), order, class_of, sizes, inverse_class, partner };
        bound.check()?;
        Ok(bound)
    }
}

impl BoundTable {
    fn check(&self) -> Result<()> {
        let n = self.table.irreps.len();
        let g = QuadScalar::from_int(self.order as i64);
        let mut deg2 = 0;
        for i in 0..n {
            let d = &self.table.irreps[i].values[0];
            if !d.is_rational() || !d.a().is_integer() || !d.a().is_positive() {
                return Err(Error::Group(alloc::format!("bad degree for {}", self.table.irreps[i].name)));
            }
            deg2 += self.degree(i) * self.degree(i);
            for j in 0..n {
                let ip = self.inner(&self.table.irreps[i].values, j);
                let want = if i == j { g.clone() } else { QuadScalar::zero() };
                if ip != want {
                    return Err(Error::Group(alloc::format!(
                        "rows {} and {} are not orthonormal",
                        self.table.irreps[i].name,
                        self.table.irreps[j].name
                    )));
                }
            }
        }
        if deg2 != self.order {
            return Err(Error::Group(alloc::format!("sum of squared degrees {deg2} != |G| = {}", self.order)));
        }
        Ok(())
    }

    /// `Σ_classes size · χ(c) · χ_j(c^-1)`, i.e. `|G|` times the inner product.
    fn inner(&self, chi: &[QuadScalar], j: usize) -> QuadScalar {
        let rho = &self.table.irreps[j].values;
        let mut acc = QuadScalar::zero();
        for (c, x) in chi.iter().enumerate() {
            let s = QuadScalar::from_int(self.sizes[c] as i64);
            acc = acc + s * x.clone() * rho[self.inverse_class[c]].clone();
        }
        acc
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn irrep_count(&self) -> usize {
        self.table.irreps.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.table.irreps[i].name
    }

    pub fn names(&self) -> Vec<&str> {
        self.table.irreps.iter().map(|r| r.name.as_str()).collect()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.table.irreps[i].degree()
    }

    pub fn class_count(&self) -> usize {
        self.table.classes.len()
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.sizes[c]
    }

    pub fn class_of_element(&self, g: usize) -> usize {
        self.class_of[g]
    }

    /// `χ_i(g)` for a group element.
    pub fn value(&self, i: usize, g: usize) -> &QuadScalar {
        &self.table.irreps[i].values[self.class_of[g]]
    }

    pub fn partner(&self, i: usize) -> usize {
        self.partner[i]
    }

    /// Irreps grouped into Galois orbits (`[i]` or `[i, j]`), in table order.
    pub fn galois_orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for i in 0..self.irrep_count() {
            if seen.insert(i) {
                let j = self.partner[i];
                if seen.insert(j) {
                    out.push(alloc::vec![i, j]);
                } else {
                    out.push(alloc::vec![i]);
                }
            }
        }
        out
    }

    /// Multiplicities of a character given by one value per table class.
    pub fn decompose(&self, chi: &[QuadScalar]) -> Result<IrrepDecomposition> {
        let order = Rational::from_integer(BigInt::from(self.order));
        let mut mult = Vec::with_capacity(self.irrep_count());
        for j in 0..self.irrep_count() {
            let ip = self.inner(chi, j);
            let name = self.name(j);
            if !ip.is_rational() {
                return Err(Error::NonIntegralMultiplicity { irrep: String::from(name) });
            }
            let m = ip.a() / &order;
            if !m.is_integer() {
                return Err(Error::NonIntegralMultiplicity { irrep: String::from(name) });
            }
            if m.is_negative() {
                return Err(Error::NegativeMultiplicity { irrep: String::from(name) });
            }
            mult.push(m.to_integer().try_into().expect("small multiplicity"));
        }
        Ok(IrrepDecomposition { mult })
    }

    /// Decomposition of an integer-valued character given per class.
    pub fn decompose_integer(&self, chi: &[i64]) -> Result<IrrepDecomposition> {
        let q: Vec<QuadScalar> = chi.iter().map(|&x| QuadScalar::from_int(x)).collect();
        self.decompose(&q)
    }

    /// Sum of the characters of the given irreps at `g`; rational for a Galois orbit.
    pub fn orbit_value(&self, irreps: &[usize], g: usize) -> Rational {
        let v = irreps.iter().fold(QuadScalar::zero(), |acc, &i| acc + self.value(i, g).clone());
        assert!(v.is_rational(), "Galois orbit sums are rational");
        v.a().clone()
    }

    /// Index of the irrep whose character is `χ_i · λ` for a linear character `λ`.
    pub fn twist(&self, i: usize, linear: &[QuadScalar]) -> Option<usize> {
        let v: Vec<QuadScalar> = self.table.irreps[i]
            .values
            .iter()
            .zip(linear)
            .map(|(a, b)| a.clone() * b.clone())
            .collect();
        self.table.irreps.iter().position(|r| r.values == v)
    }

    pub fn is_trivial_character(&self, linear: &[QuadScalar]) -> bool {
        linear.iter().all(|x| x.is_one())
    }
}

/// Multiplicity of each irrep, in table order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IrrepDecomposition {
    pub mult: Vec<usize>,
}

impl IrrepDecomposition {
    pub fn zero(n: usize) -> Self {
        IrrepDecomposition { mult: alloc::vec![0; n] }
    }

    pub fn dim(&self, table: &BoundTable) -> usize {
        self.mult.iter().enumerate().map(|(i, m)| m * table.degree(i)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.iter().all(|&m| m == 0)
    }

    pub fn support(&self, table: &BoundTable) -> BTreeSet<String> {
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, _)| String::from(table.name(i)))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        IrrepDecomposition { mult: self.mult.iter().zip(&other.mult).map(|(a, b)| a + b).collect() }
    }

    /// Componentwise difference; `None` if some multiplicity would go negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.mult
            .iter()
            .zip(&other.mult)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(|mult| IrrepDecomposition { mult })
    }

    /// `A + 2G + H` style rendering; `0` when empty.
    pub fn render(&self, table: &BoundTable) -> String {
        let mut parts = Vec::new();
        for (i, &m) in self.mult.iter().enumerate() {
            match m {
                0 => {}
                1 => parts.push(String::from(table.name(i))),
                _ => parts.push(alloc::format!("{m}{}", table.name(i))),
            }
        }
        if parts.is_empty() {
            String::from("0")
        } else {
            parts.join(" + ")
        }
    }

    /// Re-indexes through an irrep permutation: `out[perm[i]] = mult[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut out = alloc::vec![0; self.mult.len()];
        for (i, &m) in self.mult.iter().enumerate() {
            out[perm[i]] += m;
        }
        IrrepDecomposition { mult: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::IntMatrix;
    use crate::equivariant::group::AffineMap;
    use alloc::vec;

    fn klein() -> (FiniteMatrixGroup, CharacterTable) {
        let a = AffineMap::linear(IntMatrix::from_i64(2, &[&[-1, 0], &[0, 1]])).unwrap();
        let b = AffineMap::linear(IntMatrix::from_i64(2, &[&[1, 0], &[0, -1]])).unwrap();
        let g = FiniteMatrixGroup::generate(vec![a, b]).unwrap();
        let cls = |name: &str, word: Vec<usize>| ClassSpec { name: name.into(), word };
        let irr = |name: &str, v: [i64; 4]| Irrep { name: name.into(), values: v.iter().map(|&x| QuadScalar::from_int(x)).collect() };
        let t = CharacterTable {
            classes: vec![cls("e", vec![]), cls("a", vec![0]), cls("b", vec![1]), cls("ab", vec![0, 1])],
            irreps: vec![
                irr("A", [1, 1, 1, 1]),
                irr("Ba", [1, -1, 1, -1]),
                irr("Bb", [1, 1, -1, -1]),
                irr("Bab", [1, -1, -1, 1]),
            ],
        };
        (g, t)
    }

    #[test]
    fn klein_table_binds() {
        let (g, t) = klein();
        let b = t.bind(&g).unwrap();
        assert_eq!(b.order(), 4);
        // defining representation: traces 2, 0, 0, -2
        let d = b.decompose_integer(&[2, 0, 0, -2]).unwrap();
        assert_eq!(d.render(&b), "Ba + Bb");
        assert_eq!(b.decompose_integer(&[1, 1, 1, 1]).unwrap().render(&b), "A");
        assert_eq!(
            b.decompose_integer(&[1, 0, 0, 0]),
            Err(Error::NonIntegralMultiplicity { irrep: "A".into() })
        );
    }

    #[test]
    fn broken_tables_are_rejected() {
        let (g, mut t) = klein();
        t.irreps[1].values[1] = QuadScalar::from_int(1);
        assert!(t.bind(&g).is_err());
        let (g, mut t) = klein();
        t.classes.pop();
        assert!(t.bind(&g).is_err());
    }
}
