use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::group::FiniteMatrixGroup;
use crate::algebra::{IntMatrix, Lattice};
use crate::poset::IntersectionPoset;
use crate::torus::Arrangement;
use crate::{Error, Result};

/// A group acting on a poset: `perm[g][x] = g·x`, and `lattice[g][x]` is the
/// integer matrix `C` with `B_x M_g^T = C B_{g·x}` for the Hermite bases `B`.
#[derive(Clone, Debug)]
pub struct PosetAction {
    pub perm: Vec<Vec<usize>>,
    pub lattice: Vec<Vec<IntMatrix>>,
}

/// Image of element `x` under `g` and the lattice basis change.
fn image(
    group: &FiniteMatrixGroup,
    poset: &IntersectionPoset,
    g: usize,
    x: usize,
) -> Option<(usize, IntMatrix)> {
    let map = group.element(g);
    let t = &poset.element(x).torus;
    let img = t.transform(&map.m, &map.t);
    let y = poset.id_of(&img)?;
    let moved = t.direction().basis() * &map.m.transpose();
    let c = express_rows(poset.element(y).torus.direction(), &moved)?;
    Some((y, c))
}

fn express_rows(target: &Lattice, rows: &IntMatrix) -> Option<IntMatrix> {
    let mut out = Vec::new();
    for r in rows.row_iter() {
        let c = target.coordinates(&crate::algebra::to_rational(r))?;
        if !c.iter().all(|x| x.is_integer()) {
            return None;
        }
        out.push(c.into_iter().map(|x| x.to_integer()).collect::<Vec<_>>());
    }
    Some(IntMatrix::from_rows(target.rank(), &out))
}

/// Builds the action of every group element, after checking that each
/// generator maps the arrangement onto itself.
pub fn act_on_poset(
    group: &FiniteMatrixGroup,
    arr: &Arrangement,
    poset: &IntersectionPoset,
) -> Result<PosetAction> {
    let inputs: BTreeSet<_> = arr.tori().iter().cloned().collect();
    for (s, g) in group.generators().iter().enumerate() {
        for (i, t) in arr.tori().iter().enumerate() {
            if !inputs.contains(&t.transform(&g.m, &g.t)) {
                return Err(Error::NotInvariant { generator: s, element: i });
            }
        }
    }
    let n = poset.len();
    let mut perm = Vec::with_capacity(group.order());
    let mut lattice = Vec::with_capacity(group.order());
    for g in 0..group.order() {
        let mut p = Vec::with_capacity(n);
        let mut l = Vec::with_capacity(n);
        for x in 0..n {
            let (y, c) = image(group, poset, g, x)
                .ok_or(Error::NotInvariant { generator: g, element: x })?;
            p.push(y);
            l.push(c);
        }
        perm.push(p);
        lattice.push(l);
    }
    Ok(PosetAction { perm, lattice })
}

impl PosetAction {
    /// Orbits of poset elements, each sorted, ordered by smallest member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.perm.first().map_or(0, Vec::len);
        let mut seen = alloc::vec![false; n];
        let mut out = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut orb: Vec<usize> = self.perm.iter().map(|p| p[x]).collect();
            orb.sort_unstable();
            orb.dedup();
            for &y in &orb {
                seen[y] = true;
            }
            out.push(orb);
        }
        out
    }

    /// Image of a chain; still increasing because the action preserves order.
    pub fn chain_image(&self, g: usize, chain: &[usize]) -> Vec<usize> {
        chain.iter().map(|&x| self.perm[g][x]).collect()
    }
}
