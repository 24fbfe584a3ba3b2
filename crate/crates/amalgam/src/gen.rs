//! Seeded generators of conformant structures and valid triples, used by the
//! randomized verification suites.
//!
//! Triples come from a "mother" construction: sample one conformant
//! structure, pick two operation-closed subsets, and restrict. The two
//! restrictions automatically agree on their intersection, so validity is
//! structural rather than rejection-sampled. Every valid triple of a class
//! with amalgamation arises this way (take the mother to be an amalgam), so
//! nothing is lost besides the sampling distribution.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::conformance::check_conformance;
use crate::structure::{ElementId, OperationSpec, Property, PropertySet, Signature, Structure};
use crate::triple::{validate_tba, TbaTriple};

/// Signature with one relation and the given numbers of plain preserving and
/// reversing operations.
pub fn ops_signature(p: PropertySet, preserving: usize, reversing: usize) -> Arc<Signature> {
    let mut ops = Vec::new();
    for i in 0..preserving {
        ops.push(OperationSpec::preserving(
            format!("f{}", i + 1),
            ["R".to_owned()],
        ));
    }
    for i in 0..reversing {
        ops.push(OperationSpec::reversing(
            format!("g{}", i + 1),
            ["R".to_owned()],
        ));
    }
    Arc::new(
        Signature::single("R", p)
            .with_operations(ops)
            .expect("fresh names are valid"),
    )
}

/// Signature of the equivalence-with-strict-operation class.
pub fn equivalence_strict_signature() -> Arc<Signature> {
    Arc::new(
        Signature::single(
            "R",
            PropertySet::of([
                Property::Transitive,
                Property::Reflexive,
                Property::Symmetric,
            ]),
        )
        .with_operations(vec![
            OperationSpec::preserving("f", ["R".to_owned()]).strict()
        ])
        .expect("fresh names are valid"),
    )
}

struct RelPlan {
    loops_allowed: bool,
    loops_required: bool,
    order_required: bool,
    diag_only: bool,
    /// Symmetric + transitive + antireflexive somewhere up the coarseness
    /// chain admits no pair at all.
    empty_extent: bool,
}

fn plan(sig: &Signature, r: usize) -> RelPlan {
    let mut props = vec![sig.relations()[r].properties];
    for &(f, c) in sig.coarser_pairs() {
        if f == r {
            props.push(sig.relations()[c].properties);
        }
    }
    let own = props[0];
    let any = |p: Property| props.iter().any(|ps| ps.contains(p));
    let loops_allowed = !any(Property::Antireflexive);
    // Cycles are fatal wherever the chain is antisymmetric, or transitive
    // without loops (the closure would turn a cycle into a loop).
    let order_required =
        any(Property::Antisymmetric) || (any(Property::Transitive) && !loops_allowed);
    // Symmetric against antisymmetric (in the same relation or across the
    // coarseness chain) squeezes the extent into the diagonal.
    let diag_only = (own.contains(Property::Symmetric) && any(Property::Antisymmetric))
        || props
            .iter()
            .any(|ps| ps.contains(Property::Symmetric) && ps.contains(Property::Antisymmetric));
    // Symmetric pairs feeding a loopless transitive chain leave nothing.
    let empty_extent =
        props.iter().any(|ps| {
            ps.contains(Property::Symmetric)
                && ps.contains(Property::Transitive)
                && ps.contains(Property::Antireflexive)
        }) || (own.contains(Property::Symmetric) && any(Property::Transitive) && !loops_allowed);
    RelPlan {
        loops_allowed,
        loops_required: own.contains(Property::Reflexive),
        order_required,
        diag_only,
        empty_extent,
    }
}

fn transitive_close(bits: &mut [bool], n: usize) {
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
}

/// One conformant structure of the given size. When the signature carries
/// reversing operations the extents are kept symmetric under an
/// anti-automorphism so that reversing tables exist; retries repair the rare
/// combinations the recipe misses.
pub fn random_structure(sig: &Arc<Signature>, size: usize, rng: &mut ChaCha8Rng) -> Structure {
    // Reflexivity against a loop-forbidding or pair-forbidding chain admits
    // no nonempty structure at all.
    for r in 0..sig.relations().len() {
        let pl = plan(sig, r);
        if pl.loops_required && (!pl.loops_allowed || pl.empty_extent) {
            return Structure::empty(Arc::clone(sig));
        }
    }
    'retry: for _ in 0..200 {
        let n = size;
        let domain: Vec<ElementId> = (0..n)
            .map(|i| ElementId::new(format!("m{}", i)).unwrap())
            .collect();
        let needs_flip = (0..sig.operations().len()).any(|o| !sig.reversed_by(o).is_empty());
        // Random rank order; the anti-automorphism reverses it.
        let mut rank: Vec<usize> = (0..n).collect();
        rank.shuffle(rng);
        let sigma: Vec<usize> = {
            let mut by_rank = vec![0; n];
            for (i, &p) in rank.iter().enumerate() {
                by_rank[p] = i;
            }
            (0..n).map(|i| by_rank[n - 1 - rank[i]]).collect()
        };

        let nrel = sig.relations().len();
        let mut extents: Vec<Vec<bool>> = Vec::with_capacity(nrel);
        for r in 0..nrel {
            let p = sig.relations()[r].properties;
            let pl = plan(sig, r);
            let density = rng.gen_range(0.15..0.6);
            let mut bits = vec![false; n * n];
            if pl.empty_extent {
                extents.push(bits);
                continue;
            }
            if !pl.diag_only {
                for i in 0..n {
                    for j in 0..n {
                        if i == j || !rng.gen_bool(density) {
                            continue;
                        }
                        if pl.order_required && rank[i] >= rank[j] {
                            continue;
                        }
                        bits[i * n + j] = true;
                    }
                }
            }
            if p.contains(Property::Symmetric) && !pl.diag_only {
                for i in 0..n {
                    for j in 0..n {
                        if bits[i * n + j] {
                            bits[j * n + i] = true;
                        }
                    }
                }
            }
            if needs_flip {
                // Close under (i, j) -> (sigma j, sigma i).
                loop {
                    let mut changed = false;
                    for i in 0..n {
                        for j in 0..n {
                            if bits[i * n + j] && !bits[sigma[j] * n + sigma[i]] {
                                bits[sigma[j] * n + sigma[i]] = true;
                                changed = true;
                            }
                        }
                    }
                    if !changed {
                        break;
                    }
                }
            }
            if p.contains(Property::Transitive) {
                if p.contains(Property::Symmetric) && !pl.loops_allowed {
                    // Symmetric + transitive + loopless collapses to empty.
                    bits = vec![false; n * n];
                } else {
                    transitive_close(&mut bits, n);
                    if p.contains(Property::Symmetric) {
                        // Components become cliques with loops.
                        for i in 0..n {
                            for j in 0..n {
                                if bits[i * n + j] {
                                    bits[i * n + i] = true;
                                    bits[j * n + j] = true;
                                }
                            }
                        }
                    }
                }
            }
            if pl.loops_required {
                for i in 0..n {
                    bits[i * n + i] = true;
                }
            } else if pl.loops_allowed && !p.contains(Property::Transitive) {
                for i in 0..n {
                    if rng.gen_bool(0.3) {
                        bits[i * n + i] = true;
                        if needs_flip {
                            bits[sigma[i] * n + sigma[i]] = true;
                        }
                    }
                }
            }
            extents.push(bits);
        }

        // Coarser extents absorb their finer ones, then re-close.
        for &(f, c) in sig.coarser_pairs() {
            let finer = extents[f].clone();
            let q = sig.relations()[c].properties;
            let bits = &mut extents[c];
            for (idx, &v) in finer.iter().enumerate() {
                if v {
                    bits[idx] = true;
                }
            }
            if q.contains(Property::Symmetric) {
                for i in 0..n {
                    for j in 0..n {
                        if bits[i * n + j] {
                            bits[j * n + i] = true;
                        }
                    }
                }
            }
            if q.contains(Property::Transitive) {
                transitive_close(bits, n);
            }
            if q.contains(Property::Reflexive) {
                for i in 0..n {
                    bits[i * n + i] = true;
                }
            }
        }

        // Operation tables: identity and rank-reversal seed the repertoire,
        // random tables add variety when they happen to satisfy the axioms.
        let mut tables: Vec<Vec<usize>> = Vec::new();
        for (o, _spec) in sig.operations().iter().enumerate() {
            let reversing = !sig.reversed_by(o).is_empty();
            let mut found: Option<Vec<usize>> = None;
            for attempt in 0..60 {
                let candidate: Vec<usize> = if attempt == 0 {
                    if reversing {
                        sigma.clone()
                    } else {
                        (0..n).collect()
                    }
                } else if reversing {
                    // sigma composed with a random preserving-ish map.
                    let p: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n.max(1))).collect();
                    (0..n).map(|i| sigma[p[i]]).collect()
                } else {
                    (0..n).map(|_| rng.gen_range(0..n.max(1))).collect()
                };
                if op_ok(sig, o, &extents, &candidate, n) {
                    if attempt == 0 && rng.gen_bool(0.5) {
                        // Half the time keep looking for a non-trivial table.
                        found = Some(candidate);
                        continue;
                    }
                    found = Some(candidate);
                    break;
                }
            }
            match found {
                Some(t) => tables.push(t),
                None => continue 'retry,
            }
        }

        let s = Structure::from_parts(Arc::clone(sig), domain, extents, tables);
        if check_conformance(&s).all_passed() {
            return s;
        }
    }
    panic!("no conformant structure found for this signature; the recipe does not cover it");
}

fn op_ok(sig: &Signature, o: usize, extents: &[Vec<bool>], table: &[usize], n: usize) -> bool {
    let spec = &sig.operations()[o];
    if spec.bijective {
        let mut seen = vec![false; n];
        for &v in table {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
    }
    for &r in sig.preserved_by(o) {
        for i in 0..n {
            for j in 0..n {
                if !extents[r][i * n + j] || (spec.strict && i == j) {
                    continue;
                }
                let (fi, fj) = (table[i], table[j]);
                if !extents[r][fi * n + fj] || (spec.strict && fi == fj) {
                    return false;
                }
            }
        }
    }
    for &r in sig.reversed_by(o) {
        for i in 0..n {
            for j in 0..n {
                if !extents[r][i * n + j] || (spec.strict && i == j) {
                    continue;
                }
                let (fi, fj) = (table[i], table[j]);
                if !extents[r][fj * n + fi] || (spec.strict && fi == fj) {
                    return false;
                }
            }
        }
    }
    true
}

fn op_closure(s: &Structure, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut out = seed.clone();
    loop {
        let mut grew = false;
        for o in 0..s.signature().operations().len() {
            for &i in out.clone().iter() {
                if out.insert(s.op_at(o, i)) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    out
}

/// One valid triple with both sides of size at most `max_side`.
pub fn random_triple(sig: &Arc<Signature>, max_side: usize, rng: &mut ChaCha8Rng) -> TbaTriple {
    for _ in 0..400 {
        let size = rng.gen_range(2..=(max_side + 3).min(9));
        let mother = random_structure(sig, size, rng);
        if mother.is_empty() {
            let empty = Structure::empty(Arc::clone(sig));
            return validate_tba(empty.clone(), empty.clone(), empty)
                .expect("empty triple is valid");
        }
        let n = mother.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let nc = rng.gen_range(0..=3.min(n));
        let na = rng.gen_range(1..=3.min((n - nc).max(1)));
        let nb = rng.gen_range(1..=3.min((n - nc).max(1)));
        if nc + na > n || nc + na + nb > n {
            continue;
        }
        let shared: BTreeSet<usize> = order[..nc].iter().copied().collect();
        let mut sa: BTreeSet<usize> = shared.clone();
        sa.extend(order[nc..nc + na].iter().copied());
        let mut sb: BTreeSet<usize> = shared.clone();
        sb.extend(order[nc + na..nc + na + nb].iter().copied());
        let sa = op_closure(&mother, &sa);
        let sb = op_closure(&mother, &sb);
        if sa.len() > max_side || sb.len() > max_side {
            continue;
        }
        let sc: BTreeSet<usize> = sa.intersection(&sb).copied().collect();
        let to_ids = |set: &BTreeSet<usize>| -> BTreeSet<ElementId> {
            set.iter().map(|&i| mother.domain()[i].clone()).collect()
        };
        let a =
            crate::structure::induced_substructure(&mother, &to_ids(&sa)).expect("closed subset");
        let b =
            crate::structure::induced_substructure(&mother, &to_ids(&sb)).expect("closed subset");
        let c =
            crate::structure::induced_substructure(&mother, &to_ids(&sc)).expect("closed subset");
        match validate_tba(a, b, c) {
            Ok(t) => return t,
            Err(_) => continue,
        }
    }
    panic!("triple generation failed; signature outside the recipe's coverage");
}

/// One valid triple of the equivalence-with-strict-operation class.
pub fn random_equivalence_strict_triple(rng: &mut ChaCha8Rng) -> (Arc<Signature>, TbaTriple) {
    let sig = equivalence_strict_signature();
    'retry: for _ in 0..400 {
        let n = rng.gen_range(3..=8);
        // Random partition into classes.
        let nclasses = rng.gen_range(1..=n);
        let mut class_of: Vec<usize> = (0..n).map(|i| i % nclasses).collect();
        class_of.shuffle(rng);
        let nclasses = {
            let mut seen: Vec<usize> = class_of.clone();
            seen.sort_unstable();
            seen.dedup();
            let renumber: std::collections::BTreeMap<usize, usize> =
                seen.iter().enumerate().map(|(k, &c)| (c, k)).collect();
            for c in class_of.iter_mut() {
                *c = renumber[c];
            }
            renumber.len()
        };
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); nclasses];
        for (i, &c) in class_of.iter().enumerate() {
            members[c].push(i);
        }
        // Class map with capacity for injectivity, then per-class injections.
        let mut gamma = vec![0usize; nclasses];
        for k in 0..nclasses {
            let candidates: Vec<usize> = (0..nclasses)
                .filter(|&t| members[t].len() >= members[k].len())
                .collect();
            if candidates.is_empty() {
                continue 'retry;
            }
            gamma[k] = candidates[rng.gen_range(0..candidates.len())];
        }
        let mut table = vec![0usize; n];
        for k in 0..nclasses {
            let mut targets = members[gamma[k]].clone();
            targets.shuffle(rng);
            for (pos, &x) in members[k].iter().enumerate() {
                table[x] = targets[pos];
            }
        }
        let domain: Vec<ElementId> = (0..n)
            .map(|i| ElementId::new(format!("m{}", i)).unwrap())
            .collect();
        let mut bits = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                if class_of[i] == class_of[j] {
                    bits[i * n + j] = true;
                }
            }
        }
        let mother = Structure::from_parts(Arc::clone(&sig), domain, vec![bits], vec![table]);
        debug_assert!(check_conformance(&mother).all_passed());

        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let nc = rng.gen_range(1..=2.min(n));
        if nc + 2 > n {
            continue;
        }
        let mut sa: BTreeSet<usize> = order[..nc].iter().copied().collect();
        sa.insert(order[nc]);
        let mut sb: BTreeSet<usize> = order[..nc].iter().copied().collect();
        sb.insert(order[nc + 1]);
        let sa = op_closure(&mother, &sa);
        let sb = op_closure(&mother, &sb);
        if sa.len() > 6 || sb.len() > 6 {
            continue;
        }
        let sc: BTreeSet<usize> = sa.intersection(&sb).copied().collect();
        let to_ids = |set: &BTreeSet<usize>| -> BTreeSet<ElementId> {
            set.iter().map(|&i| mother.domain()[i].clone()).collect()
        };
        let a = crate::structure::induced_substructure(&mother, &to_ids(&sa)).unwrap();
        let b = crate::structure::induced_substructure(&mother, &to_ids(&sb)).unwrap();
        let c = crate::structure::induced_substructure(&mother, &to_ids(&sc)).unwrap();
        if let Ok(t) = validate_tba(a, b, c) {
            return (sig, t);
        }
    }
    panic!("equivalence triple generation failed");
}

/// Independent transitive closure by iterated squaring, used as the oracle
/// for the closure identity of the transitive construction.
pub fn transitive_closure_pairs(
    pairs: &BTreeSet<(ElementId, ElementId)>,
) -> BTreeSet<(ElementId, ElementId)> {
    let mut elems: BTreeSet<ElementId> = BTreeSet::new();
    for (x, y) in pairs {
        elems.insert(x.clone());
        elems.insert(y.clone());
    }
    let elems: Vec<ElementId> = elems.into_iter().collect();
    let n = elems.len();
    let idx = |e: &ElementId| elems.binary_search(e).unwrap();
    let mut m = vec![false; n * n];
    for (x, y) in pairs {
        m[idx(x) * n + idx(y)] = true;
    }
    // Square until stable: m := m | m*m.
    loop {
        let mut next = m.clone();
        for i in 0..n {
            for k in 0..n {
                if !m[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if m[k * n + j] {
                        next[i * n + j] = true;
                    }
                }
            }
        }
        if next == m {
            break;
        }
        m = next;
    }
    let mut out = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            if m[i * n + j] {
                out.insert((elems[i].clone(), elems[j].clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn random_structures_conform_across_all_property_sets() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in PropertySet::all_subsets() {
            let sig = Arc::new(Signature::single("R", p));
            for _ in 0..20 {
                let s = random_structure(&sig, 5, &mut rng);
                assert!(check_conformance(&s).all_passed(), "failed for {:?}", p);
            }
        }
    }

    #[test]
    fn random_triples_are_valid_with_operations() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let sig = ops_signature(
            PropertySet::of([Property::Transitive, Property::Reflexive]),
            2,
            1,
        );
        for _ in 0..20 {
            let t = random_triple(&sig, 6, &mut rng);
            assert!(t.a().len() <= 6 && t.b().len() <= 6);
        }
    }

    #[test]
    fn equivalence_strict_triples_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let (_, t) = random_equivalence_strict_triple(&mut rng);
            assert!(check_conformance(t.a()).all_passed());
        }
    }

    #[test]
    fn closure_oracle_on_a_path() {
        let pairs: BTreeSet<(ElementId, ElementId)> = [("a", "b"), ("b", "c")]
            .iter()
            .map(|&(x, y)| (ElementId::new(x).unwrap(), ElementId::new(y).unwrap()))
            .collect();
        let closed = transitive_closure_pairs(&pairs);
        assert!(closed.contains(&(ElementId::new("a").unwrap(), ElementId::new("c").unwrap())));
        assert_eq!(closed.len(), 3);
    }
}
