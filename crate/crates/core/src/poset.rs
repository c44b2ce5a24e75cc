//! The intersection poset `L(A)` and its chains.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::torus::{AffineSubtorus, Arrangement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetElement {
    pub id: usize,
    pub torus: AffineSubtorus,
    /// Indices (into the arrangement) of the input tori containing this element.
    pub parents: Vec<usize>,
}

/// Components of all nonempty intersections, ordered by reverse inclusion:
/// `x < y` iff `t_y` is strictly contained in `t_x`.
///
/// Ids are sorted by decreasing dimension, then by canonical torus, so
/// `x < y` implies `x.id < y.id` and the numbering does not depend on the
/// order of the input tori.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionPoset {
    ambient_dim: usize,
    elements: Vec<PosetElement>,
    above: Vec<Vec<usize>>,
    below: Vec<Vec<usize>>,
    index: BTreeMap<AffineSubtorus, usize>,
    components: usize,
}

/// A strictly increasing sequence `x_0 < ... < x_p` of element ids.
pub type Chain = Vec<usize>;

pub fn build_poset(arr: &Arrangement) -> IntersectionPoset {
    let mut seen: BTreeSet<AffineSubtorus> = BTreeSet::new();
    let mut found: Vec<AffineSubtorus> = Vec::new();
    for t in arr.tori() {
        if seen.insert(t.clone()) {
            found.push(t.clone());
        }
    }
    // worklist: element j is intersected with all earlier ones once
    let mut j = 0;
    while j < found.len() {
        for i in 0..j {
            let comps = found[i].intersect(&found[j]).expect("arrangement shares N");
            for c in comps {
                if seen.insert(c.clone()) {
                    found.push(c);
                }
            }
        }
        j += 1;
    }

    let mut tori: Vec<AffineSubtorus> = seen.into_iter().collect();
    tori.sort_by(|a, b| b.dim().cmp(&a.dim()).then_with(|| a.cmp(b)));
    let n = tori.len();
    let mut above = alloc::vec![Vec::new(); n];
    let mut below = alloc::vec![Vec::new(); n];
    for x in 0..n {
        for y in x + 1..n {
            if tori[y].dim() < tori[x].dim() && tori[x].contains(&tori[y]) {
                above[x].push(y);
                below[y].push(x);
            }
        }
    }
    let elements: Vec<PosetElement> = tori
        .iter()
        .enumerate()
        .map(|(id, t)| PosetElement {
            id,
            torus: t.clone(),
            parents: arr
                .tori()
                .iter()
                .enumerate()
                .filter(|(_, s)| s.contains(t))
                .map(|(k, _)| k)
                .collect(),
        })
        .collect();
    let index = tori.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();

    let mut uf = UnionFind::new(n);
    for (x, ys) in above.iter().enumerate() {
        for &y in ys {
            uf.union(x, y);
        }
    }
    let components = (0..n).filter(|&x| uf.find(x) == x).count();
    IntersectionPoset { ambient_dim: arr.ambient_dim(), elements, above, below, index, components }
}

impl IntersectionPoset {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[PosetElement] {
        &self.elements
    }

    pub fn element(&self, id: usize) -> &PosetElement {
        &self.elements[id]
    }

    pub fn id_of(&self, t: &AffineSubtorus) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// `x < y`.
    pub fn less(&self, x: usize, y: usize) -> bool {
        self.above[x].binary_search(&y).is_ok()
    }

    /// All `y` with `x < y`, ascending.
    pub fn above(&self, x: usize) -> &[usize] {
        &self.above[x]
    }

    /// All `y` with `y < x`, ascending.
    pub fn below(&self, x: usize) -> &[usize] {
        &self.below[x]
    }

    /// Number of connected components of the arrangement.
    pub fn components(&self) -> usize {
        self.components
    }

    /// Element counts per torus dimension, highest dimension first.
    pub fn census(&self) -> Vec<(usize, usize)> {
        let mut m: BTreeMap<usize, usize> = BTreeMap::new();
        for e in &self.elements {
            *m.entry(e.torus.dim()).or_default() += 1;
        }
        m.into_iter().rev().collect()
    }

    /// `k -> n_k`: the number of points lying on exactly `k >= 2` input tori.
    pub fn point_multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for e in &self.elements {
            if e.torus.dim() == 0 && e.parents.len() >= 2 {
                *m.entry(e.parents.len()).or_default() += 1;
            }
        }
        m
    }

    /// Chains `x_0 < ... < x_p` in lexicographic order.
    pub fn chains(&self, p: usize) -> Vec<Chain> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(p + 1);
        for x in 0..self.len() {
            cur.push(x);
            self.extend(&mut cur, p, &mut out);
            cur.pop();
        }
        out
    }

    fn extend(&self, cur: &mut Chain, p: usize, out: &mut Vec<Chain>) {
        if cur.len() == p + 1 {
            out.push(cur.clone());
            return;
        }
        let last = *cur.last().expect("nonempty");
        for &y in &self.above[last] {
            cur.push(y);
            self.extend(cur, p, out);
            cur.pop();
        }
    }

    /// Length of the longest chain, counted in elements.
    pub fn height(&self) -> usize {
        let mut h = alloc::vec![1usize; self.len()];
        for x in (0..self.len()).rev() {
            for &y in &self.above[x] {
                h[x] = h[x].max(h[y] + 1);
            }
        }
        h.into_iter().max().unwrap_or(0)
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}
