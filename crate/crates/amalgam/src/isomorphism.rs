//! Embeddings and backtracking isomorphism search for small structures.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::structure::{ElementId, Structure};

/// An injective map between domains that preserves and reflects every
/// relation and commutes with every operation table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Embedding {
    map: BTreeMap<ElementId, ElementId>,
}

impl Embedding {
    pub fn identity(s: &Structure) -> Self {
        Embedding {
            map: s.domain().iter().map(|e| (e.clone(), e.clone())).collect(),
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (ElementId, ElementId)>) -> Self {
        Embedding {
            map: pairs.into_iter().collect(),
        }
    }

    pub fn apply(&self, x: &ElementId) -> Option<&ElementId> {
        self.map.get(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ElementId, &ElementId)> {
        self.map.iter()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Checks that this map is a genuine embedding of `a` into `b`: total on
    /// `a`, injective, pairs preserved and reflected, tables commuting.
    pub fn verify(&self, a: &Structure, b: &Structure) -> Result<bool> {
        if !a.same_signature(b) {
            return Err(Error::SignatureMismatch);
        }
        let n = a.len();
        let mut image = Vec::with_capacity(n);
        for e in a.domain() {
            match self.map.get(e).and_then(|t| b.index_of(t)) {
                Some(j) => image.push(j),
                None => return Ok(false),
            }
        }
        let mut seen = image.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Ok(false);
        }
        for r in 0..a.signature().relations().len() {
            for i in 0..n {
                for j in 0..n {
                    if a.rel_at(r, i, j) != b.rel_at(r, image[i], image[j]) {
                        return Ok(false);
                    }
                }
            }
        }
        for o in 0..a.signature().operations().len() {
            for i in 0..n {
                if image[a.op_at(o, i)] != b.op_at(o, image[i]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Per-element invariant used to prune the backtracking search: for each
/// relation the out-degree, in-degree and loop flag, and for each operation
/// whether the element is a fixed point and how many preimages it has.
fn invariant(s: &Structure, i: usize) -> Vec<usize> {
    let n = s.len();
    let mut v = Vec::new();
    for r in 0..s.signature().relations().len() {
        let out = (0..n).filter(|&j| s.rel_at(r, i, j)).count();
        let inn = (0..n).filter(|&j| s.rel_at(r, j, i)).count();
        v.push(out);
        v.push(inn);
        v.push(s.rel_at(r, i, i) as usize);
    }
    for o in 0..s.signature().operations().len() {
        v.push((s.op_at(o, i) == i) as usize);
        v.push((0..n).filter(|&j| s.op_at(o, j) == i).count());
    }
    v
}

/// Searches for an isomorphism between two structures over the same
/// signature. Backtracking with degree-sequence pruning; intended for
/// domains of a dozen elements or so.
pub fn find_isomorphism(a: &Structure, b: &Structure) -> Result<Option<Embedding>> {
    if !a.same_signature(b) {
        return Err(Error::SignatureMismatch);
    }
    if a.len() != b.len() {
        return Ok(None);
    }
    let n = a.len();
    let inv_a: Vec<Vec<usize>> = (0..n).map(|i| invariant(a, i)).collect();
    let inv_b: Vec<Vec<usize>> = (0..n).map(|i| invariant(b, i)).collect();
    {
        let mut sa = inv_a.clone();
        let mut sb = inv_b.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return Ok(None);
        }
    }

    // Map the most constrained (rarest invariant) elements first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| {
        let count = inv_a.iter().filter(|v| **v == inv_a[i]).count();
        (count, i)
    });

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn consistent(a: &Structure, b: &Structure, map: &[usize], i: usize, j: usize) -> bool {
        let n = a.len();
        for r in 0..a.signature().relations().len() {
            if a.rel_at(r, i, i) != b.rel_at(r, j, j) {
                return false;
            }
            for k in 0..n {
                let mk = map[k];
                if mk == usize::MAX || k == i {
                    continue;
                }
                if a.rel_at(r, i, k) != b.rel_at(r, j, mk)
                    || a.rel_at(r, k, i) != b.rel_at(r, mk, j)
                {
                    return false;
                }
            }
        }
        for o in 0..a.signature().operations().len() {
            let fi = a.op_at(o, i);
            if fi == i {
                if b.op_at(o, j) != j {
                    return false;
                }
            } else if map[fi] != usize::MAX && b.op_at(o, j) != map[fi] {
                return false;
            }
            for k in 0..n {
                if k != i && map[k] != usize::MAX && a.op_at(o, k) == i && b.op_at(o, map[k]) != j {
                    return false;
                }
            }
        }
        true
    }

    fn solve(
        a: &Structure,
        b: &Structure,
        inv_a: &[Vec<usize>],
        inv_b: &[Vec<usize>],
        order: &[usize],
        depth: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let i = order[depth];
        for j in 0..b.len() {
            if used[j] || inv_a[i] != inv_b[j] || !consistent(a, b, map, i, j) {
                continue;
            }
            map[i] = j;
            used[j] = true;
            if solve(a, b, inv_a, inv_b, order, depth + 1, map, used) {
                return true;
            }
            map[i] = usize::MAX;
            used[j] = false;
        }
        false
    }

    if solve(a, b, &inv_a, &inv_b, &order, 0, &mut map, &mut used) {
        let emb = Embedding::from_pairs(
            (0..n).map(|i| (a.domain()[i].clone(), b.domain()[map[i]].clone())),
        );
        debug_assert!(emb.verify(a, b).unwrap());
        Ok(Some(emb))
    } else {
        Ok(None)
    }
}
