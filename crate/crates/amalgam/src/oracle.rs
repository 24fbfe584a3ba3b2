//! Complete brute-force search for strong and non-strong amalgams.
//!
//! Every axiom in scope (the five relation properties, coarseness,
//! preservation, reversal, strictness, bijectivity) is universal, and the
//! union of the two sides is closed under the forced operation tables, so
//! the induced substructure of any strong amalgam on that union is itself a
//! strong amalgam. Exhausting the candidates over the union domain is
//! therefore a complete refutation; the only free variables are the cross
//! pairs between the two private parts, per relation. The non-strong search
//! additionally enumerates partial injective matchings between the private
//! parts and runs the same engine on each quotient.
//!
//! Found amalgams are re-verified from scratch (conformance plus both
//! embeddings); the search result is never trusted on its own.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::conformance::check_conformance;
use crate::error::{Error, Result};
use crate::isomorphism::Embedding;
use crate::structure::{ElementId, Property, Signature, Structure};
use crate::triple::TbaTriple;

/// Default node budget; the catalog refutations finish orders of magnitude
/// below it at their native sizes.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SearchStatus {
    Found,
    Exhausted,
    BudgetExceeded,
}

impl SearchStatus {
    pub fn name(self) -> &'static str {
        match self {
            SearchStatus::Found => "found",
            SearchStatus::Exhausted => "exhausted",
            SearchStatus::BudgetExceeded => "budget_exceeded",
        }
    }
}

/// Outcome of one search: the status, the first amalgam in the deterministic
/// ordering when found (with the two embeddings), and the number of search
/// nodes visited. Node counts are reproducible: identical inputs explore
/// identical trees.
#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub amalgam: Option<(Structure, Embedding, Embedding)>,
    pub nodes_explored: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Cell {
    Fixed(bool),
    Var(usize),
}

/// A partially determined candidate structure over a fixed domain: in-side
/// pairs are pinned, cross pairs are variables, operation tables are forced.
struct Skeleton {
    sig: Arc<Signature>,
    domain: Vec<ElementId>,
    n: usize,
    cells: Vec<Vec<Cell>>,
    tables: Vec<Vec<usize>>,
    /// Variables in lexicographic (relation, source, target) order.
    vars: Vec<(usize, usize, usize)>,
}

impl Skeleton {
    /// Builds the strong-search skeleton of a triple. `None` never occurs
    /// for validated triples.
    fn strong(t: &TbaTriple) -> Option<Skeleton> {
        let a = t.a();
        let b = t.b();
        let domain = t.union_domain();
        Skeleton::merge(
            Arc::clone(a.signature()),
            domain,
            |e| a.index_of(e),
            |e| b.index_of(e),
            a,
            b,
        )
    }

    /// Builds the quotient skeleton for one matching of private elements:
    /// pairs and tables prescribed by both images must agree, otherwise the
    /// matching is incompatible and `None` is returned.
    fn quotient(t: &TbaTriple, matching: &[(ElementId, ElementId)]) -> Option<Skeleton> {
        let a = t.a();
        let b = t.b();
        let to_a: BTreeMap<&ElementId, &ElementId> = matching.iter().map(|(x, y)| (y, x)).collect();
        let to_b: BTreeMap<&ElementId, &ElementId> = matching.iter().map(|(x, y)| (x, y)).collect();
        let mut domain: Vec<ElementId> = a.domain().to_vec();
        domain.extend(
            b.domain()
                .iter()
                .filter(|e| !a.contains(e) && !to_a.contains_key(e))
                .cloned(),
        );
        domain.sort();
        let b_index = |e: &ElementId| -> Option<usize> {
            b.index_of(e)
                .or_else(|| to_b.get(e).and_then(|y| b.index_of(y)))
        };
        Skeleton::merge(
            Arc::clone(a.signature()),
            domain,
            |e| a.index_of(e),
            b_index,
            a,
            b,
        )
    }

    fn merge(
        sig: Arc<Signature>,
        domain: Vec<ElementId>,
        a_index: impl Fn(&ElementId) -> Option<usize>,
        b_index: impl Fn(&ElementId) -> Option<usize>,
        a: &Structure,
        b: &Structure,
    ) -> Option<Skeleton> {
        let n = domain.len();
        let ia: Vec<Option<usize>> = domain.iter().map(&a_index).collect();
        let ib: Vec<Option<usize>> = domain.iter().map(&b_index).collect();

        let mut cells = vec![vec![Cell::Fixed(false); n * n]; sig.relations().len()];
        let mut vars = Vec::new();
        for r in 0..sig.relations().len() {
            for i in 0..n {
                for j in 0..n {
                    let va = match (ia[i], ia[j]) {
                        (Some(x), Some(y)) => Some(a.rel_at(r, x, y)),
                        _ => None,
                    };
                    let vb = match (ib[i], ib[j]) {
                        (Some(x), Some(y)) => Some(b.rel_at(r, x, y)),
                        _ => None,
                    };
                    cells[r][i * n + j] = match (va, vb) {
                        (Some(x), Some(y)) if x != y => return None,
                        (Some(v), _) | (_, Some(v)) => Cell::Fixed(v),
                        (None, None) => {
                            vars.push((r, i, j));
                            Cell::Var(vars.len() - 1)
                        }
                    };
                }
            }
        }

        let mut tables = Vec::new();
        for (o, _spec) in sig.operations().iter().enumerate() {
            let mut table = Vec::with_capacity(n);
            for i in 0..n {
                let va = ia[i].map(|x| a.element(a.op_at(o, x)).clone());
                let vb = ib[i].map(|x| {
                    let img = b.element(b.op_at(o, x)).clone();
                    // Map a matched private image back to its merged name.
                    if domain.binary_search(&img).is_ok() {
                        img
                    } else {
                        // The image must be a matched element of B; find its
                        // merged partner by scanning the domain through
                        // b_index.
                        domain
                            .iter()
                            .find(|e| b_index(e) == Some(b.op_at(o, x)))
                            .cloned()
                            .unwrap_or(img)
                    }
                });
                let img = match (va, vb) {
                    (Some(x), Some(y)) if x != y => return None,
                    (Some(v), _) | (_, Some(v)) => v,
                    (None, None) => unreachable!("every element lies in one side"),
                };
                table.push(domain.binary_search(&img).ok()?);
            }
            tables.push(table);
        }

        Some(Skeleton {
            sig,
            domain,
            n,
            cells,
            tables,
            vars,
        })
    }
}

struct Solver<'s> {
    sk: &'s Skeleton,
    assign: Vec<Option<bool>>,
    trail: Vec<usize>,
    nodes: u64,
    budget: u64,
    /// (finer, coarser) index pairs, and per-relation property sets.
    coarse: Vec<(usize, usize)>,
    props: Vec<(bool, bool, bool, bool, bool)>, // trans, refl, sym, antirefl, antisym
}

enum Stop {
    Budget,
}

impl<'s> Solver<'s> {
    fn new(sk: &'s Skeleton, budget: u64) -> Self {
        let props = sk
            .sig
            .relations()
            .iter()
            .map(|d| {
                (
                    d.properties.contains(Property::Transitive),
                    d.properties.contains(Property::Reflexive),
                    d.properties.contains(Property::Symmetric),
                    d.properties.contains(Property::Antireflexive),
                    d.properties.contains(Property::Antisymmetric),
                )
            })
            .collect();
        Solver {
            assign: vec![None; sk.vars.len()],
            trail: Vec::new(),
            nodes: 0,
            budget,
            coarse: sk.sig.coarser_pairs().to_vec(),
            props,
            sk,
        }
    }

    fn val(&self, r: usize, i: usize, j: usize) -> Option<bool> {
        match self.sk.cells[r][i * self.sk.n + j] {
            Cell::Fixed(b) => Some(b),
            Cell::Var(v) => self.assign[v],
        }
    }

    /// Sets a cell value; returns false on contradiction. Newly assigned
    /// variables are queued for rule application.
    fn set(
        &mut self,
        r: usize,
        i: usize,
        j: usize,
        v: bool,
        queue: &mut Vec<(usize, usize, usize)>,
    ) -> bool {
        match self.sk.cells[r][i * self.sk.n + j] {
            Cell::Fixed(b) => b == v,
            Cell::Var(x) => match self.assign[x] {
                Some(b) => b == v,
                None => {
                    self.assign[x] = Some(v);
                    self.trail.push(x);
                    queue.push((r, i, j));
                    true
                }
            },
        }
    }

    /// Applies the universal axioms as forcing rules around one known cell
    /// until fixpoint. Sound: only forced consequences are set.
    fn propagate(&mut self, mut queue: Vec<(usize, usize, usize)>) -> bool {
        while let Some((r, i, j)) = queue.pop() {
            let v = self.val(r, i, j).expect("queued cells are known");
            let (trans, refl, sym, antirefl, antisym) = self.props[r];
            if v {
                if antirefl && i == j {
                    return false;
                }
                if antisym && i != j && self.val(r, j, i) == Some(true) {
                    return false;
                }
                if antisym && i != j && !self.set(r, j, i, false, &mut queue) {
                    return false;
                }
                if sym && !self.set(r, j, i, true, &mut queue) {
                    return false;
                }
                if trans {
                    for k in 0..self.sk.n {
                        if self.val(r, j, k) == Some(true) && !self.set(r, i, k, true, &mut queue) {
                            return false;
                        }
                        if self.val(r, k, i) == Some(true) && !self.set(r, k, j, true, &mut queue) {
                            return false;
                        }
                    }
                }
                for idx in 0..self.coarse.len() {
                    let (f, c) = self.coarse[idx];
                    if f == r && !self.set(c, i, j, true, &mut queue) {
                        return false;
                    }
                }
                for (o, spec) in self.sk.sig.operations().iter().enumerate() {
                    let (fi, fj) = (self.sk.tables[o][i], self.sk.tables[o][j]);
                    for &pr in self.sk.sig.preserved_by(o) {
                        if pr != r {
                            continue;
                        }
                        if spec.strict {
                            if i != j {
                                if fi == fj {
                                    return false;
                                }
                                if !self.set(r, fi, fj, true, &mut queue) {
                                    return false;
                                }
                            }
                        } else if !self.set(r, fi, fj, true, &mut queue) {
                            return false;
                        }
                    }
                    for &rv in self.sk.sig.reversed_by(o) {
                        if rv != r {
                            continue;
                        }
                        if spec.strict {
                            if i != j {
                                if fi == fj {
                                    return false;
                                }
                                if !self.set(r, fj, fi, true, &mut queue) {
                                    return false;
                                }
                            }
                        } else if !self.set(r, fj, fi, true, &mut queue) {
                            return false;
                        }
                    }
                }
            } else {
                if refl && i == j {
                    return false;
                }
                if sym && !self.set(r, j, i, false, &mut queue) {
                    return false;
                }
                for idx in 0..self.coarse.len() {
                    let (f, c) = self.coarse[idx];
                    if c == r && !self.set(f, i, j, false, &mut queue) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Seeds propagation from every initially known cell.
    fn initial_propagation(&mut self) -> bool {
        for o in 0..self.sk.sig.operations().len() {
            if self.sk.sig.operations()[o].bijective {
                let mut hit = vec![false; self.sk.n];
                for i in 0..self.sk.n {
                    let v = self.sk.tables[o][i];
                    if hit[v] {
                        return false;
                    }
                    hit[v] = true;
                }
            }
        }
        let mut queue = Vec::new();
        for r in 0..self.sk.sig.relations().len() {
            for i in 0..self.sk.n {
                for j in 0..self.sk.n {
                    if self.val(r, i, j).is_some() {
                        queue.push((r, i, j));
                    }
                }
            }
        }
        self.propagate(queue)
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().unwrap();
            self.assign[x] = None;
        }
    }

    fn candidate(&self) -> Structure {
        let n = self.sk.n;
        let extents = (0..self.sk.sig.relations().len())
            .map(|r| {
                (0..n * n)
                    .map(|idx| self.val(r, idx / n, idx % n).expect("complete assignment"))
                    .collect()
            })
            .collect();
        Structure::from_parts(
            Arc::clone(&self.sk.sig),
            self.sk.domain.clone(),
            extents,
            self.sk.tables.clone(),
        )
    }

    /// Depth-first search over the variables in order, false before true.
    /// Each call is one node. Returns the first verified structure.
    fn solve(
        &mut self,
        from: usize,
        verify: &dyn Fn(&Structure) -> bool,
    ) -> std::result::Result<Option<Structure>, Stop> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Stop::Budget);
        }
        let next = (from..self.sk.vars.len()).find(|&x| self.assign[x].is_none());
        let x = match next {
            None => {
                let d = self.candidate();
                return Ok(if verify(&d) { Some(d) } else { None });
            }
            Some(x) => x,
        };
        let (r, i, j) = self.sk.vars[x];
        for v in [false, true] {
            let mark = self.trail.len();
            let mut queue = Vec::new();
            if self.set(r, i, j, v, &mut queue) && self.propagate(queue) {
                if let Some(d) = self.solve(x + 1, verify)? {
                    return Ok(Some(d));
                }
            }
            self.undo_to(mark);
        }
        Ok(None)
    }
}

fn verify_strong(t: &TbaTriple, d: &Structure) -> bool {
    check_conformance(d).all_passed()
        && Embedding::identity(t.a()).verify(t.a(), d).unwrap_or(false)
        && Embedding::identity(t.b()).verify(t.b(), d).unwrap_or(false)
}

/// Searches for a strong amalgam: a structure on exactly the union domain
/// whose extents contain both sides, add nothing inside either side, and
/// whose operation tables are the forced union tables. Free variables are
/// only the cross pairs, enumerated lexicographically by (relation, source,
/// target), assigned false before true.
pub fn search_strong_amalgam(t: &TbaTriple, budget: u64) -> SearchOutcome {
    let sk = match Skeleton::strong(t) {
        Some(sk) => sk,
        None => {
            return SearchOutcome {
                status: SearchStatus::Exhausted,
                amalgam: None,
                nodes_explored: 0,
            }
        }
    };
    let mut solver = Solver::new(&sk, budget);
    if !solver.initial_propagation() {
        return SearchOutcome {
            status: SearchStatus::Exhausted,
            amalgam: None,
            nodes_explored: 1,
        };
    }
    let verify = |d: &Structure| verify_strong(t, d);
    match solver.solve(0, &verify) {
        Err(Stop::Budget) => SearchOutcome {
            status: SearchStatus::BudgetExceeded,
            amalgam: None,
            nodes_explored: solver.nodes,
        },
        Ok(Some(d)) => {
            let ea = Embedding::identity(t.a());
            let eb = Embedding::identity(t.b());
            SearchOutcome {
                status: SearchStatus::Found,
                amalgam: Some((d, ea, eb)),
                nodes_explored: solver.nodes,
            }
        }
        Ok(None) => SearchOutcome {
            status: SearchStatus::Exhausted,
            amalgam: None,
            nodes_explored: solver.nodes,
        },
    }
}

fn matchings(
    left: &[ElementId],
    right: &[ElementId],
    cap: usize,
) -> Vec<Vec<(ElementId, ElementId)>> {
    // Depth-first over the left elements, "unmatched" before each candidate
    // partner in ascending order; the empty matching comes first.
    fn rec(
        left: &[ElementId],
        right: &[ElementId],
        used: &mut Vec<bool>,
        current: &mut Vec<(ElementId, ElementId)>,
        cap: usize,
        out: &mut Vec<Vec<(ElementId, ElementId)>>,
    ) {
        match left.first() {
            None => out.push(current.clone()),
            Some(x) => {
                rec(&left[1..], right, used, current, cap, out);
                if current.len() < cap {
                    for (k, y) in right.iter().enumerate() {
                        if used[k] {
                            continue;
                        }
                        used[k] = true;
                        current.push((x.clone(), y.clone()));
                        rec(&left[1..], right, used, current, cap, out);
                        current.pop();
                        used[k] = false;
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(
        left,
        right,
        &mut vec![false; right.len()],
        &mut Vec::new(),
        cap,
        &mut out,
    );
    out
}

/// Searches for any amalgam in the non-strong sense: partial injective
/// matchings between the two private parts (the empty matching first, so a
/// strong amalgam is found as such) are quotiented and the strong engine
/// runs on each quotient. Matching sizes are capped at four.
pub fn search_ap_amalgam(t: &TbaTriple, budget: u64) -> SearchOutcome {
    let left = t.only_a();
    let right = t.only_b();
    let cap = left.len().min(right.len()).min(4);
    let mut nodes: u64 = 0;
    for matching in matchings(&left, &right, cap) {
        nodes += 1;
        if nodes > budget {
            return SearchOutcome {
                status: SearchStatus::BudgetExceeded,
                amalgam: None,
                nodes_explored: nodes,
            };
        }
        let sk = match Skeleton::quotient(t, &matching) {
            Some(sk) => sk,
            None => continue,
        };
        let emb_a = Embedding::identity(t.a());
        let emb_b = Embedding::from_pairs(t.b().domain().iter().map(|y| {
            let target = matching
                .iter()
                .find(|(_, my)| my == y)
                .map(|(x, _)| x.clone())
                .unwrap_or_else(|| y.clone());
            (y.clone(), target)
        }));
        let verify = |d: &Structure| {
            check_conformance(d).all_passed()
                && emb_a.verify(t.a(), d).unwrap_or(false)
                && emb_b.verify(t.b(), d).unwrap_or(false)
        };
        let mut solver = Solver::new(&sk, budget.saturating_sub(nodes));
        if !solver.initial_propagation() {
            nodes += 1;
            continue;
        }
        match solver.solve(0, &verify) {
            Err(Stop::Budget) => {
                return SearchOutcome {
                    status: SearchStatus::BudgetExceeded,
                    amalgam: None,
                    nodes_explored: nodes + solver.nodes,
                }
            }
            Ok(Some(d)) => {
                return SearchOutcome {
                    status: SearchStatus::Found,
                    amalgam: Some((d, emb_a, emb_b)),
                    nodes_explored: nodes + solver.nodes,
                }
            }
            Ok(None) => {
                nodes += solver.nodes;
            }
        }
    }
    SearchOutcome {
        status: SearchStatus::Exhausted,
        amalgam: None,
        nodes_explored: nodes,
    }
}

/// The quotient construction for an equivalence relation with one strict
/// relation-preserving operation: private elements of the two sides are
/// identified when they are linked through the shared part and some common
/// operation power lands on the same shared element. The relation of the
/// quotient is the transitive closure of the union; the operation extends
/// in the unique compatible way.
pub fn ap_equivalence_strict(t: &TbaTriple) -> Result<Structure> {
    let sig = t.a().signature();
    let equivalence = PropsEq {
        want: [
            Property::Transitive,
            Property::Reflexive,
            Property::Symmetric,
        ],
    };
    if sig.relations().len() != 1 || !equivalence.matches(sig.relations()[0].properties) {
        return Err(Error::UnsupportedSignature(
            "ap_equivalence_strict needs exactly one equivalence relation".to_owned(),
        ));
    }
    if sig.operations().len() != 1 {
        return Err(Error::UnsupportedSignature(
            "ap_equivalence_strict needs exactly one operation".to_owned(),
        ));
    }
    let spec = &sig.operations()[0];
    if !spec.strict || sig.preserved_by(0) != [0] || !sig.reversed_by(0).is_empty() {
        return Err(Error::UnsupportedSignature(
            "ap_equivalence_strict needs one strict relation-preserving operation".to_owned(),
        ));
    }

    let a = t.a();
    let b = t.b();
    let c = t.c();
    let rel = &sig.relations()[0].name;

    // Identification pairs between the private parts.
    let mut matching: Vec<(ElementId, ElementId)> = Vec::new();
    for x in t.only_a() {
        for y in t.only_b() {
            let linked = c
                .domain()
                .iter()
                .any(|m| a.related(rel, &x, m) && b.related(rel, m, &y));
            if !linked {
                continue;
            }
            let mut xa = x.clone();
            let mut yb = y.clone();
            let mut identified = false;
            for _ in 0..a.len() * b.len() + 1 {
                xa = a.apply(&spec.name, &xa)?;
                yb = b.apply(&spec.name, &yb)?;
                if xa == yb && c.contains(&xa) {
                    identified = true;
                    break;
                }
            }
            if identified {
                matching.push((x.clone(), y.clone()));
            }
        }
    }
    // Strict preservation makes the identification a partial matching: two
    // distinct private elements of one side can never merge with the same
    // partner.
    for (i, (x, y)) in matching.iter().enumerate() {
        for (x2, y2) in &matching[i + 1..] {
            assert!(x != x2 && y != y2, "identification is not a matching");
        }
    }

    let to_a: BTreeMap<&ElementId, &ElementId> = matching.iter().map(|(x, y)| (y, x)).collect();
    let mut domain: Vec<ElementId> = a.domain().to_vec();
    domain.extend(
        b.domain()
            .iter()
            .filter(|e| !a.contains(e) && !to_a.contains_key(e))
            .cloned(),
    );
    domain.sort();
    let n = domain.len();
    let quotient_name = |e: &ElementId| -> ElementId {
        to_a.get(e)
            .map(|x| (*x).clone())
            .unwrap_or_else(|| e.clone())
    };
    let idx = |e: &ElementId| -> usize {
        domain
            .binary_search(&quotient_name(e))
            .expect("image lies in the quotient domain")
    };

    let mut bits = vec![false; n * n];
    for s in [a, b] {
        for (x, y) in s.extent(rel)? {
            bits[idx(&x) * n + idx(&y)] = true;
        }
    }
    // Transitive closure of the union.
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if !bits[i * n + j] {
                    continue;
                }
                for k in 0..n {
                    if bits[j * n + k] && !bits[i * n + k] {
                        bits[i * n + k] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    let mut table = vec![0usize; n];
    for (i, e) in domain.iter().enumerate() {
        let img = if a.contains(e) {
            a.apply(&spec.name, e)?
        } else {
            b.apply(&spec.name, e)?
        };
        table[i] = idx(&img);
    }

    Ok(Structure::from_parts(
        Arc::clone(sig),
        domain,
        vec![bits],
        vec![table],
    ))
}

struct PropsEq {
    want: [Property; 3],
}

impl PropsEq {
    fn matches(&self, p: crate::structure::PropertySet) -> bool {
        Property::ALL
            .iter()
            .all(|q| p.contains(*q) == self.want.contains(q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{PropertySet, StructureBuilder};
    use crate::triple::validate_tba;

    fn poset_sig() -> Arc<Signature> {
        Arc::new(Signature::single(
            "leq",
            PropertySet::of([
                Property::Transitive,
                Property::Reflexive,
                Property::Antisymmetric,
            ]),
        ))
    }

    #[test]
    fn identity_triple_is_found_unchanged() {
        let sig = poset_sig();
        let s = StructureBuilder::new(&sig)
            .elements(["0", "1"])
            .loops("leq", ["0", "1"])
            .pair("leq", "0", "1")
            .finish()
            .unwrap();
        let t = validate_tba(s.clone(), s.clone(), s.clone()).unwrap();
        let out = search_strong_amalgam(&t, DEFAULT_BUDGET);
        assert_eq!(out.status, SearchStatus::Found);
        assert_eq!(&out.amalgam.unwrap().0, &s);
    }

    #[test]
    fn strong_search_is_deterministic() {
        let sig = poset_sig();
        let c = StructureBuilder::new(&sig)
            .elements(["c"])
            .loops("leq", ["c"])
            .finish()
            .unwrap();
        let a = StructureBuilder::new(&sig)
            .elements(["c", "a"])
            .loops("leq", ["c", "a"])
            .pair("leq", "c", "a")
            .finish()
            .unwrap();
        let b = StructureBuilder::new(&sig)
            .elements(["c", "b"])
            .loops("leq", ["c", "b"])
            .pair("leq", "b", "c")
            .finish()
            .unwrap();
        let t = validate_tba(a, b, c).unwrap();
        let o1 = search_strong_amalgam(&t, DEFAULT_BUDGET);
        let o2 = search_strong_amalgam(&t, DEFAULT_BUDGET);
        assert_eq!(o1.status, SearchStatus::Found);
        assert_eq!(o1.nodes_explored, o2.nodes_explored);
        assert_eq!(&o1.amalgam.unwrap().0, &o2.amalgam.unwrap().0);
    }

    #[test]
    fn strong_found_implies_ap_found_with_empty_matching() {
        let sig = poset_sig();
        let s = StructureBuilder::new(&sig)
            .elements(["0"])
            .loops("leq", ["0"])
            .finish()
            .unwrap();
        let t = validate_tba(s.clone(), s.clone(), s.clone()).unwrap();
        let strong = search_strong_amalgam(&t, DEFAULT_BUDGET);
        let ap = search_ap_amalgam(&t, DEFAULT_BUDGET);
        assert_eq!(strong.status, SearchStatus::Found);
        assert_eq!(ap.status, SearchStatus::Found);
        assert_eq!(
            &ap.amalgam.as_ref().unwrap().0,
            &strong.amalgam.as_ref().unwrap().0
        );
    }

    #[test]
    fn budget_is_reported() {
        let sig = poset_sig();
        let s = StructureBuilder::new(&sig)
            .elements(["0"])
            .loops("leq", ["0"])
            .finish()
            .unwrap();
        let t = validate_tba(s.clone(), s.clone(), s.clone()).unwrap();
        let out = search_strong_amalgam(&t, 0);
        assert_eq!(out.status, SearchStatus::BudgetExceeded);
    }
}
