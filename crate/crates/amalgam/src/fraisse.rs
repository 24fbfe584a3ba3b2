//! Finite-stage approximation of the generic limit of an amalgamation class.
//!
//! [`build_stage`] grows a structure one point at a time. Extension requests
//! (a base subset of the current stage plus a one-point extension type of
//! that base) are queued in birth order, seed-shuffled among requests born
//! together, and each served request is realized by a strong amalgamation of
//! the stage with the target over the base. The realization is *generic*:
//! starting from the canonical dispatcher amalgam, the free cross pairs
//! between the new point and the rest of the stage are filled in by seeded
//! coin flips, keeping only additions whose forced closure stays conformant
//! and leaves both sides embedded. Minimal amalgams alone provably produce
//! stages too sparse to exhibit the extension property at any useful level;
//! the generic completion is what makes finite stages behave like the limit.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::amalgamation::amalgamate_auto;
use crate::conformance::{check_conformance, AxiomId, CheckEntry, VerificationReport};
use crate::error::{Error, Result};
use crate::isomorphism::find_isomorphism;
use crate::structure::{induced_substructure, ElementId, Property, Signature, Structure};
use crate::triple::TbaTriple;

/// Failure entries kept per sweep report; counts stay exact beyond the cap.
const MAX_KEPT_FAILURES: usize = 1000;

/// A pending extension request: a base inside the current stage and the
/// index of one extension type of that base.
#[derive(Clone, Debug)]
pub struct ExtensionRequest {
    pub base: Vec<ElementId>,
    pub type_index: usize,
}

/// One one-point extension type of a base structure, in the compact form
/// used for matching: per relation the loop bit and the two directions
/// against every base element, plus one value per operation (`base_len`
/// standing for the fresh point itself).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct TypeBits {
    rels: Vec<u32>,
    ops: Vec<usize>,
}

fn bit_loop() -> u32 {
    1
}
fn bit_to(x: usize) -> u32 {
    1 << (1 + x)
}
fn bit_from(x: usize, k: usize) -> u32 {
    1 << (1 + k + x)
}

/// Enumerates the valid extension patterns of one relation over a base of
/// size `k` whose extent is given as a dense matrix.
fn relation_patterns(ext: &[bool], k: usize, props: crate::structure::PropertySet) -> Vec<u32> {
    let trans = props.contains(Property::Transitive);
    let refl = props.contains(Property::Reflexive);
    let sym = props.contains(Property::Symmetric);
    let antirefl = props.contains(Property::Antireflexive);
    let antisym = props.contains(Property::Antisymmetric);
    let total = 1u32 << (2 * k + 1);
    let mut out = Vec::new();
    'next: for bits in 0..total {
        let lp = bits & bit_loop() != 0;
        let to = |x: usize| bits & bit_to(x) != 0;
        let from = |x: usize| bits & bit_from(x, k) != 0;
        if refl && !lp || antirefl && lp {
            continue;
        }
        for x in 0..k {
            if sym && to(x) != from(x) {
                continue 'next;
            }
            if antisym && to(x) && from(x) {
                continue 'next;
            }
            if trans && to(x) && from(x) && !lp {
                continue 'next;
            }
        }
        if trans {
            for x in 0..k {
                for y in 0..k {
                    // x -> z -> y, z -> x -> y, x -> y -> z
                    if to(x) && from(y) && !ext[x * k + y] {
                        continue 'next;
                    }
                    if from(x) && ext[x * k + y] && !from(y) {
                        continue 'next;
                    }
                    if ext[x * k + y] && to(y) && !to(x) {
                        continue 'next;
                    }
                }
            }
        }
        out.push(bits);
    }
    out
}

/// Enumerates the extension types of a base given by dense extents and
/// tables. Deterministic order: relation patterns ascending (relation-major)
/// then operation values ascending.
fn extension_types(
    sig: &Signature,
    exts: &[Vec<bool>],
    tables: &[Vec<usize>],
    k: usize,
) -> Vec<TypeBits> {
    let per_rel: Vec<Vec<u32>> = sig
        .relations()
        .iter()
        .enumerate()
        .map(|(r, d)| relation_patterns(&exts[r], k, d.properties))
        .collect();

    // Coarseness couples the chosen patterns bitwise.
    let mut combos: Vec<Vec<u32>> = vec![vec![]];
    for r in 0..sig.relations().len() {
        let mut next = Vec::new();
        for c in &combos {
            'pat: for &p in &per_rel[r] {
                for &(f, co) in sig.coarser_pairs() {
                    if co == r && f < r && c[f] & !p != 0 {
                        continue 'pat;
                    }
                    if f == r && co < r && p & !c[co] != 0 {
                        continue 'pat;
                    }
                }
                let mut c2 = c.clone();
                c2.push(p);
                next.push(c2);
            }
        }
        combos = next;
    }

    let holds = |combo: &[u32], r: usize, i: usize, j: usize| -> bool {
        // Extended extent lookup with the fresh point at index k.
        match (i == k, j == k) {
            (true, true) => combo[r] & bit_loop() != 0,
            (false, true) => combo[r] & bit_to(i) != 0,
            (true, false) => combo[r] & bit_from(j, k) != 0,
            (false, false) => exts[r][i * k + j],
        }
    };

    let mut out = Vec::new();
    for combo in &combos {
        // Valid fresh values per operation, independently.
        let mut per_op: Vec<Vec<usize>> = Vec::with_capacity(sig.operations().len());
        for (o, spec) in sig.operations().iter().enumerate() {
            let mut vals = Vec::new();
            'val: for v in 0..=k {
                if spec.bijective && v != k {
                    continue;
                }
                let img = |i: usize| if i == k { v } else { tables[o][i] };
                for &r in sig.preserved_by(o) {
                    for i in 0..=k {
                        for j in 0..=k {
                            if i != k && j != k || !holds(combo, r, i, j) {
                                continue;
                            }
                            if spec.strict {
                                if i != j && (img(i) == img(j) || !holds(combo, r, img(i), img(j)))
                                {
                                    continue 'val;
                                }
                            } else if !holds(combo, r, img(i), img(j)) {
                                continue 'val;
                            }
                        }
                    }
                }
                for &r in sig.reversed_by(o) {
                    for i in 0..=k {
                        for j in 0..=k {
                            if i != k && j != k || !holds(combo, r, i, j) {
                                continue;
                            }
                            if spec.strict {
                                if i != j && (img(i) == img(j) || !holds(combo, r, img(j), img(i)))
                                {
                                    continue 'val;
                                }
                            } else if !holds(combo, r, img(j), img(i)) {
                                continue 'val;
                            }
                        }
                    }
                }
                vals.push(v);
            }
            per_op.push(vals);
        }
        let mut op_choices: Vec<Vec<usize>> = vec![vec![]];
        for vals in &per_op {
            let mut next = Vec::new();
            for c in &op_choices {
                for &v in vals {
                    let mut c2 = c.clone();
                    c2.push(v);
                    next.push(c2);
                }
            }
            op_choices = next;
        }
        for ops in op_choices {
            out.push(TypeBits {
                rels: combo.clone(),
                ops,
            });
        }
    }
    out
}

fn dense_parts(s: &Structure) -> (Vec<Vec<bool>>, Vec<Vec<usize>>) {
    let n = s.len();
    let exts = (0..s.signature().relations().len())
        .map(|r| {
            (0..n * n)
                .map(|idx| s.rel_at(r, idx / n, idx % n))
                .collect()
        })
        .collect();
    let tables = (0..s.signature().operations().len())
        .map(|o| (0..n).map(|i| s.op_at(o, i)).collect())
        .collect();
    (exts, tables)
}

fn fresh_token(s: &Structure) -> ElementId {
    for i in 0.. {
        let candidate = ElementId::new(format!("z{}", i)).unwrap();
        if !s.contains(&candidate) {
            return candidate;
        }
    }
    unreachable!()
}

/// Materializes one extension type of `s` as a structure on the domain plus
/// one fresh element named `fresh`.
fn materialize_type(s: &Structure, bits: &TypeBits, fresh: &ElementId) -> Structure {
    let k = s.len();
    let mut domain: Vec<ElementId> = s.domain().to_vec();
    domain.push(fresh.clone());
    domain.sort();
    let pos: Vec<usize> = s
        .domain()
        .iter()
        .map(|e| domain.binary_search(e).unwrap())
        .collect();
    let zpos = domain.binary_search(fresh).unwrap();
    let m = k + 1;
    let nrel = s.signature().relations().len();
    let mut exts = vec![vec![false; m * m]; nrel];
    for (r, ext) in exts.iter_mut().enumerate() {
        for i in 0..k {
            for j in 0..k {
                if s.rel_at(r, i, j) {
                    ext[pos[i] * m + pos[j]] = true;
                }
            }
        }
        if bits.rels[r] & bit_loop() != 0 {
            ext[zpos * m + zpos] = true;
        }
        for x in 0..k {
            if bits.rels[r] & bit_to(x) != 0 {
                ext[pos[x] * m + zpos] = true;
            }
            if bits.rels[r] & bit_from(x, k) != 0 {
                ext[zpos * m + pos[x]] = true;
            }
        }
    }
    let mut tables = Vec::new();
    for o in 0..s.signature().operations().len() {
        let mut table = vec![0usize; m];
        for i in 0..k {
            table[pos[i]] = pos[s.op_at(o, i)];
        }
        table[zpos] = if bits.ops[o] == k {
            zpos
        } else {
            pos[bits.ops[o]]
        };
        tables.push(table);
    }
    Structure::from_parts(Arc::clone(s.signature()), domain, exts, tables)
}

/// All conformant one-point extensions of a structure, up to isomorphism
/// fixing the structure pointwise (which makes distinct patterns distinct
/// types, so no further deduplication applies). A nonconformant input has no
/// conformant extensions and yields the empty list.
pub fn one_point_extensions(s: &Structure) -> Vec<Structure> {
    if !check_conformance(s).all_passed() {
        return Vec::new();
    }
    let (exts, tables) = dense_parts(s);
    let fresh = fresh_token(s);
    extension_types(s.signature(), &exts, &tables, s.len())
        .iter()
        .map(|bits| materialize_type(s, bits, &fresh))
        .collect()
}

/// All conformant structures of size at most `n` over canonical domains,
/// deduplicated up to isomorphism. Signatures without operations are grown
/// level by level through one-point extensions (complete because induced
/// substructures of conformant structures stay conformant); signatures with
/// operations are enumerated directly, which explodes quickly and is capped.
pub fn enumerate_structures(sig: &Arc<Signature>, n: usize) -> Result<Vec<Structure>> {
    const CLASS_CAP: usize = 200_000;
    let mut all: Vec<Structure> = vec![Structure::empty(Arc::clone(sig))];
    if sig.operations().is_empty() {
        let mut level = vec![Structure::empty(Arc::clone(sig))];
        for _ in 1..=n {
            let mut next: Vec<Structure> = Vec::new();
            for s in &level {
                for ext in one_point_extensions(s) {
                    let canon = canonical_rename(&ext);
                    if !next
                        .iter()
                        .any(|t| find_isomorphism(t, &canon).unwrap_or(None).is_some())
                    {
                        next.push(canon);
                    }
                }
            }
            if all.len() + next.len() > CLASS_CAP {
                return Err(Error::BudgetExceeded(format!(
                    "more than {} isomorphism classes",
                    CLASS_CAP
                )));
            }
            all.extend(next.iter().cloned());
            level = next;
        }
        return Ok(all);
    }

    for k in 1..=n {
        let nrel = sig.relations().len();
        let nop = sig.operations().len();
        let raw_rel = 1u128
            .checked_shl((k * k * nrel) as u32)
            .unwrap_or(u128::MAX);
        let raw_op = (k as u128)
            .checked_pow((k * nop) as u32)
            .unwrap_or(u128::MAX);
        if raw_rel.saturating_mul(raw_op) > 5_000_000 {
            return Err(Error::BudgetExceeded(format!(
                "direct enumeration at size {} is too large with operations",
                k
            )));
        }
        let domain: Vec<ElementId> = (0..k)
            .map(|i| ElementId::new(format!("e{}", i)).unwrap())
            .collect();
        let mut classes: Vec<Structure> = Vec::new();
        let rel_masks = 1u64 << (k * k);
        let op_total = (k as u64).pow((k * nop) as u32).max(1);
        let mut rel_choice = vec![0u64; nrel];
        loop {
            for opsel in 0..op_total {
                let mut exts = Vec::with_capacity(nrel);
                for &mask in &rel_choice {
                    exts.push(
                        (0..k * k)
                            .map(|i| mask >> i & 1 != 0)
                            .collect::<Vec<bool>>(),
                    );
                }
                let mut tables = Vec::with_capacity(nop);
                let mut rest = opsel;
                for _ in 0..nop {
                    let mut table = Vec::with_capacity(k);
                    for _ in 0..k {
                        table.push((rest % k as u64) as usize);
                        rest /= k as u64;
                    }
                    tables.push(table);
                }
                let s = Structure::from_parts(Arc::clone(sig), domain.clone(), exts, tables);
                if !check_conformance(&s).all_passed() {
                    continue;
                }
                if !classes
                    .iter()
                    .any(|t| find_isomorphism(t, &s).unwrap_or(None).is_some())
                {
                    classes.push(s);
                }
            }
            // Advance the per-relation masks like a counter.
            let mut r = 0;
            loop {
                if r == nrel {
                    break;
                }
                rel_choice[r] += 1;
                if rel_choice[r] < rel_masks {
                    break;
                }
                rel_choice[r] = 0;
                r += 1;
            }
            if r == nrel {
                break;
            }
        }
        if all.len() + classes.len() > CLASS_CAP {
            return Err(Error::BudgetExceeded(format!(
                "more than {} isomorphism classes",
                CLASS_CAP
            )));
        }
        all.extend(classes);
    }
    Ok(all)
}

/// Renames a structure onto the canonical domain `e0..` preserving the
/// current element order.
fn canonical_rename(s: &Structure) -> Structure {
    let n = s.len();
    let domain: Vec<ElementId> = (0..n)
        .map(|i| ElementId::new(format!("e{}", i)).unwrap())
        .collect();
    let (exts, tables) = dense_parts(s);
    Structure::from_parts(Arc::clone(s.signature()), domain, exts, tables)
}

/// Grows a stage of the generic limit: `steps` one-point strong
/// amalgamations driven by a fair birth-ordered request queue. Identical
/// `(signature, steps, seed)` inputs produce identical stages.
pub fn build_stage(sig: &Arc<Signature>, steps: usize, seed: u64) -> Result<Structure> {
    crate::amalgamation::ensure_supported_class(sig)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stage = Structure::empty(Arc::clone(sig));
    let mut births: Vec<ElementId> = Vec::new();
    let mut queue: VecDeque<ExtensionRequest> = VecDeque::new();
    let mut next_cohort = 0usize;

    for step in 0..steps {
        while queue.is_empty() {
            if next_cohort > births.len() {
                return Ok(stage);
            }
            let mut cohort = generate_cohort(&stage, &births, next_cohort);
            cohort.shuffle(&mut rng);
            queue.extend(cohort);
            next_cohort += 1;
        }
        let request = queue.pop_front().unwrap();
        let token = ElementId::new(format!("p{}", step)).unwrap();
        stage = realize(&stage, &request, &token, &mut rng)?;
        births.push(token);
    }
    Ok(stage)
}

/// Requests born when the `cohort`-th element appeared: bases containing it
/// (only the empty base for cohort zero), sizes up to four, closed under the
/// operations, each paired with every extension type of its induced
/// substructure.
fn generate_cohort(
    stage: &Structure,
    births: &[ElementId],
    cohort: usize,
) -> Vec<ExtensionRequest> {
    let mut requests = Vec::new();
    let bases: Vec<Vec<ElementId>> = if cohort == 0 {
        vec![vec![]]
    } else {
        let newest = &births[cohort - 1];
        let pool: Vec<ElementId> = births[..cohort - 1].to_vec();
        let mut out = Vec::new();
        for size in 0..=3.min(pool.len()) {
            subsets_of(&pool, size, &mut |chosen| {
                let mut base: Vec<ElementId> = chosen.iter().map(|e| (*e).clone()).collect();
                base.push(newest.clone());
                base.sort();
                out.push(base);
            });
        }
        out
    };
    for base in bases {
        let set: BTreeSet<ElementId> = base.iter().cloned().collect();
        let induced = match induced_substructure(stage, &set) {
            Ok(s) => s,
            Err(_) => continue, // not operation-closed
        };
        let (exts, tables) = dense_parts(&induced);
        let count = extension_types(stage.signature(), &exts, &tables, induced.len()).len();
        for type_index in 0..count {
            requests.push(ExtensionRequest {
                base: induced.domain().to_vec(),
                type_index,
            });
        }
    }
    requests
}

fn subsets_of<T>(pool: &[T], size: usize, f: &mut impl FnMut(&[&T])) {
    fn rec<'a, T>(
        pool: &'a [T],
        size: usize,
        start: usize,
        acc: &mut Vec<&'a T>,
        f: &mut impl FnMut(&[&T]),
    ) {
        if acc.len() == size {
            f(acc);
            return;
        }
        for i in start..pool.len() {
            acc.push(&pool[i]);
            rec(pool, size, i + 1, acc, f);
            acc.pop();
        }
    }
    rec(pool, size, 0, &mut Vec::new(), f);
}

/// Realizes one request: canonical strong amalgam of the stage with the
/// target over the base, then a seeded generic completion of the free cross
/// pairs. Every accepted addition keeps the stage and the target embedded
/// and the whole structure conformant.
fn realize(
    stage: &Structure,
    request: &ExtensionRequest,
    token: &ElementId,
    rng: &mut ChaCha8Rng,
) -> Result<Structure> {
    let set: BTreeSet<ElementId> = request.base.iter().cloned().collect();
    let base = induced_substructure(stage, &set)?;
    let (exts, tables) = dense_parts(&base);
    let types = extension_types(stage.signature(), &exts, &tables, base.len());
    let bits = &types[request.type_index];
    let target = materialize_type(&base, bits, token);
    let triple = TbaTriple::from_parts_unchecked(stage.clone(), target, base);
    let canonical = amalgamate_auto(&triple)?.d;

    let n = canonical.len();
    let sig = canonical.signature().clone();
    let (mut bits_d, tables_d) = dense_parts(&canonical);
    let z = canonical.index_of(token).expect("fresh point in amalgam");
    let free: Vec<bool> = {
        // Free cells: cross pairs between the fresh point and stage elements
        // outside the base; everything else is pinned by the two sides.
        let mut free = vec![false; n];
        for (i, e) in canonical.domain().iter().enumerate() {
            free[i] = i != z && !set.contains(e);
        }
        free
    };

    let mut proposals: Vec<(usize, usize, usize)> = Vec::new();
    for r in 0..sig.relations().len() {
        for (i, &is_free) in free.iter().enumerate() {
            if is_free {
                proposals.push((r, i, z));
                proposals.push((r, z, i));
            }
        }
    }
    proposals.shuffle(rng);

    for (r, i, j) in proposals {
        if bits_d[r][i * n + j] || !rng.gen_bool(0.5) {
            continue;
        }
        try_commit(&sig, &mut bits_d, &tables_d, n, z, &free, (r, i, j));
    }

    let out = Structure::from_parts(sig, canonical.domain().to_vec(), bits_d, tables_d);
    debug_assert!(check_conformance(&out).all_passed());
    Ok(out)
}

/// Tentatively adds one pair and its forced closure; commits only when the
/// closure stays inside the free region (or lands on already-present pairs)
/// and violates nothing.
fn try_commit(
    sig: &Signature,
    bits: &mut [Vec<bool>],
    tables: &[Vec<usize>],
    n: usize,
    z: usize,
    free: &[bool],
    start: (usize, usize, usize),
) {
    // The loop at the fresh point is pinned by the target, so the free
    // region is exactly the cross cells against non-base stage elements.
    let in_free_region = |i: usize, j: usize| (i == z && free[j]) || (j == z && free[i]);
    let mut added: Vec<(usize, usize, usize)> = Vec::new();
    let mut stack = vec![start];
    let mut ok = true;
    let present = |bits: &[Vec<bool>], r: usize, i: usize, j: usize| bits[r][i * n + j];

    'outer: while let Some((r, i, j)) = stack.pop() {
        if present(bits, r, i, j) {
            continue;
        }
        if !in_free_region(i, j) {
            ok = false;
            break;
        }
        let props = sig.relations()[r].properties;
        if props.contains(Property::Antireflexive) && i == j {
            ok = false;
            break;
        }
        if props.contains(Property::Antisymmetric) && i != j && present(bits, r, j, i) {
            ok = false;
            break;
        }
        bits[r][i * n + j] = true;
        added.push((r, i, j));

        if props.contains(Property::Symmetric) && !present(bits, r, j, i) {
            stack.push((r, j, i));
        }
        if props.contains(Property::Transitive) {
            for k in 0..n {
                if present(bits, r, j, k) && !present(bits, r, i, k) {
                    stack.push((r, i, k));
                }
                if present(bits, r, k, i) && !present(bits, r, k, j) {
                    stack.push((r, k, j));
                }
            }
        }
        for &(f, c) in sig.coarser_pairs() {
            if f == r && !present(bits, c, i, j) {
                stack.push((c, i, j));
            }
        }
        for (o, spec) in sig.operations().iter().enumerate() {
            let (fi, fj) = (tables[o][i], tables[o][j]);
            for &pr in sig.preserved_by(o) {
                if pr != r {
                    continue;
                }
                if spec.strict && i != j && fi == fj {
                    ok = false;
                    break 'outer;
                }
                if (!spec.strict || i != j) && !present(bits, r, fi, fj) {
                    stack.push((r, fi, fj));
                }
            }
            for &rv in sig.reversed_by(o) {
                if rv != r {
                    continue;
                }
                if spec.strict && i != j && fi == fj {
                    ok = false;
                    break 'outer;
                }
                if (!spec.strict || i != j) && !present(bits, r, fj, fi) {
                    stack.push((r, fj, fi));
                }
            }
        }
    }

    if !ok {
        for (r, i, j) in added {
            bits[r][i * n + j] = false;
        }
    }
}

/// Checks the extension property of a structure at level `k`: for every
/// operation-closed subset of size at most `k` and every extension type of
/// it, does some element realize the type over the subset? The report keeps
/// failure entries (capped) and exact counts.
pub fn check_extension_property(m: &Structure, k: usize) -> VerificationReport {
    let sig = m.signature();
    let n = m.len();
    let nrel = sig.relations().len();
    let nop = sig.operations().len();
    let mut report = VerificationReport::default();
    let mut kept = 0usize;
    // Types depend only on the labeled induced substructure; cache by its
    // dense encoding. Candidate patterns are packed into one integer (a
    // relation word holds 2k+1 bits at level k) so the inner loop allocates
    // nothing.
    let mut cache: HashMap<Vec<u64>, (usize, HashMap<u128, usize>)> = HashMap::new();
    let rel_lane = 2 * k + 1;
    let pack = move |rels: &[u32], ops: &[usize]| -> u128 {
        let mut key = 0u128;
        for &w in rels {
            key = key << rel_lane | w as u128;
        }
        for &v in ops {
            key = key << 8 | (v as u128 + 1);
        }
        key
    };
    assert!(
        nrel * rel_lane + nop * 8 <= 128,
        "signature too wide for level-{} extension checking",
        k
    );

    let indices: Vec<usize> = (0..n).collect();
    for size in 0..=k {
        subsets_of(&indices, size, &mut |chosen| {
            let subset: Vec<usize> = chosen.iter().map(|i| **i).collect();
            // Only operation-closed subsets carry induced substructures.
            for o in 0..nop {
                for &i in &subset {
                    if !subset.contains(&m.op_at(o, i)) {
                        return;
                    }
                }
            }
            let kk = subset.len();
            let mut key: Vec<u64> = Vec::with_capacity(nrel + 1);
            for r in 0..nrel {
                let mut word = 0u64;
                for (pi, &i) in subset.iter().enumerate() {
                    for (pj, &j) in subset.iter().enumerate() {
                        if m.rel_at(r, i, j) {
                            word |= 1 << (pi * kk + pj);
                        }
                    }
                }
                key.push(word);
            }
            let mut opword = 0u64;
            for o in 0..nop {
                for &i in &subset {
                    let img = subset.iter().position(|&x| x == m.op_at(o, i)).unwrap();
                    opword = opword * (kk as u64 + 1) + img as u64 + 1;
                }
            }
            key.push(opword);

            let (type_count, index_of) = cache.entry(key).or_insert_with(|| {
                let mut exts = Vec::with_capacity(nrel);
                for r in 0..nrel {
                    let mut e = vec![false; kk * kk];
                    for (pi, &i) in subset.iter().enumerate() {
                        for (pj, &j) in subset.iter().enumerate() {
                            e[pi * kk + pj] = m.rel_at(r, i, j);
                        }
                    }
                    exts.push(e);
                }
                let mut tabs = Vec::with_capacity(nop);
                for o in 0..nop {
                    tabs.push(
                        subset
                            .iter()
                            .map(|&i| subset.iter().position(|&x| x == m.op_at(o, i)).unwrap())
                            .collect::<Vec<usize>>(),
                    );
                }
                let types = extension_types(sig, &exts, &tabs, kk);
                let index_of = types
                    .iter()
                    .enumerate()
                    .map(|(i, t)| (pack(&t.rels, &t.ops), i))
                    .collect();
                (types.len(), index_of)
            });

            let mut realized = vec![false; *type_count];
            let mut rels_buf = [0u32; 4];
            let mut ops_buf = [0usize; 8];
            'cand: for zc in 0..n {
                if subset.contains(&zc) {
                    continue;
                }
                for o in 0..nop {
                    let img = m.op_at(o, zc);
                    if img == zc {
                        ops_buf[o] = kk;
                    } else {
                        match subset.iter().position(|&x| x == img) {
                            Some(p) => ops_buf[o] = p,
                            None => continue 'cand,
                        }
                    }
                }
                for (r, word_slot) in rels_buf.iter_mut().enumerate().take(nrel) {
                    let mut word = 0u32;
                    if m.rel_at(r, zc, zc) {
                        word |= bit_loop();
                    }
                    for (pi, &i) in subset.iter().enumerate() {
                        if m.rel_at(r, i, zc) {
                            word |= bit_to(pi);
                        }
                        if m.rel_at(r, zc, i) {
                            word |= bit_from(pi, kk);
                        }
                    }
                    *word_slot = word;
                }
                if let Some(&t) = index_of.get(&pack(&rels_buf[..nrel], &ops_buf[..nop])) {
                    realized[t] = true;
                }
            }

            for (t, &r) in realized.iter().enumerate() {
                report.checked += 1;
                if r {
                    report.passed += 1;
                } else if kept < MAX_KEPT_FAILURES {
                    kept += 1;
                    let base_ids: Vec<ElementId> =
                        subset.iter().map(|&i| m.domain()[i].clone()).collect();
                    report.entries.push(CheckEntry::fail(
                        AxiomId::ExtensionRealized {
                            base: base_ids.clone(),
                            type_index: t,
                        },
                        base_ids,
                    ));
                }
            }
        });
    }
    report
}

/// Checks one-step homogeneity at level `k`: every isomorphism between two
/// substructures of size at most `k` should extend over every single
/// additional point. The fraction of extendable isomorphisms is the summary;
/// failures are kept (capped).
pub fn check_partial_homogeneity(m: &Structure, k: usize) -> VerificationReport {
    let mut report = VerificationReport::default();
    let n = m.len();
    let nrel = m.signature().relations().len();
    let nop = m.signature().operations().len();
    let mut kept = 0usize;

    // Pattern of x against u: per relation (x->u, u->x, x->x), per op one
    // bit for f(x) = u and one for f(x) = x.
    let pattern = |x: usize, u: usize| -> u64 {
        let mut w = 0u64;
        let mut shift = 0;
        for r in 0..nrel {
            w |= (m.rel_at(r, x, u) as u64) << shift;
            w |= (m.rel_at(r, u, x) as u64) << (shift + 1);
            w |= (m.rel_at(r, x, x) as u64) << (shift + 2);
            shift += 3;
        }
        for o in 0..nop {
            w |= ((m.op_at(o, x) == u) as u64) << shift;
            w |= ((m.op_at(o, x) == x) as u64) << (shift + 1);
            shift += 2;
        }
        w
    };

    let mut record = |report: &mut VerificationReport,
                      passed: bool,
                      map: Vec<(ElementId, ElementId)>,
                      witness: Vec<ElementId>| {
        let entry = if passed {
            CheckEntry::pass(AxiomId::IsoExtends { map })
        } else {
            CheckEntry::fail(AxiomId::IsoExtends { map }, witness)
        };
        if entry.passed || kept < MAX_KEPT_FAILURES {
            if !entry.passed {
                kept += 1;
            }
            report.tally(entry);
        } else {
            report.checked += 1;
        }
    };

    if k >= 1 {
        // Size-1 fast path: the pattern sets around the two points decide
        // extendability by inclusion.
        let closed: Vec<bool> = (0..n)
            .map(|u| (0..nop).all(|o| m.op_at(o, u) == u))
            .collect();
        let selfpat = |u: usize| -> u64 {
            let mut w = 0u64;
            for r in 0..nrel {
                w = w << 1 | m.rel_at(r, u, u) as u64;
            }
            w
        };
        let masks: Vec<std::collections::BTreeSet<u64>> = (0..n)
            .map(|u| {
                (0..n)
                    .filter(|&x| {
                        x != u
                            && (0..nop).all(|o| {
                                let img = m.op_at(o, x);
                                img == x || img == u
                            })
                    })
                    .map(|x| pattern(x, u))
                    .collect()
            })
            .collect();
        for u in 0..n {
            if !closed[u] {
                continue;
            }
            for v in 0..n {
                if !closed[v] || selfpat(u) != selfpat(v) {
                    continue;
                }
                let missing = masks[u].iter().find(|p| !masks[v].contains(*p));
                let witness = missing.and_then(|p| (0..n).find(|&x| x != u && pattern(x, u) == *p));
                record(
                    &mut report,
                    missing.is_none(),
                    vec![(m.domain()[u].clone(), m.domain()[v].clone())],
                    witness
                        .map(|x| vec![m.domain()[x].clone()])
                        .unwrap_or_default(),
                );
            }
        }
    }

    // Sizes 0 and 2..=k by direct enumeration.
    let indices: Vec<usize> = (0..n).collect();
    for size in (0..=k).filter(|&s| s != 1) {
        let mut sources: Vec<Vec<usize>> = Vec::new();
        subsets_of(&indices, size, &mut |chosen| {
            sources.push(chosen.iter().map(|i| **i).collect());
        });
        let closed = |s: &[usize]| -> bool {
            (0..nop).all(|o| s.iter().all(|&i| s.contains(&m.op_at(o, i))))
        };
        let sources: Vec<Vec<usize>> = sources.into_iter().filter(|s| closed(s)).collect();
        for us in &sources {
            for vs in &sources {
                permutations(vs, &mut |perm| {
                    // Does us[i] -> perm[i] define an isomorphism of the
                    // induced substructures?
                    for r in 0..nrel {
                        for (i, &ui) in us.iter().enumerate() {
                            for (j, &uj) in us.iter().enumerate() {
                                if m.rel_at(r, ui, uj) != m.rel_at(r, perm[i], perm[j]) {
                                    return;
                                }
                            }
                        }
                    }
                    for o in 0..nop {
                        for (i, &ui) in us.iter().enumerate() {
                            let p = us.iter().position(|&x| x == m.op_at(o, ui)).unwrap();
                            if m.op_at(o, perm[i]) != perm[p] {
                                return;
                            }
                        }
                    }
                    let map: Vec<(ElementId, ElementId)> = us
                        .iter()
                        .zip(perm.iter())
                        .map(|(&a, &b)| (m.domain()[a].clone(), m.domain()[b].clone()))
                        .collect();
                    // Forth extension over every additional point.
                    let mut bad: Option<usize> = None;
                    'xloop: for x in 0..n {
                        if us.contains(&x) {
                            continue;
                        }
                        // x must form a closed extension of us.
                        for o in 0..nop {
                            let img = m.op_at(o, x);
                            if img != x && !us.contains(&img) {
                                continue 'xloop;
                            }
                        }
                        let mut found = false;
                        'yloop: for y in 0..n {
                            if perm.contains(&y) {
                                continue;
                            }
                            for o in 0..nop {
                                let imgx = m.op_at(o, x);
                                let imgy = m.op_at(o, y);
                                let want = if imgx == x {
                                    y
                                } else {
                                    perm[us.iter().position(|&u| u == imgx).unwrap()]
                                };
                                if imgy != want {
                                    continue 'yloop;
                                }
                            }
                            for r in 0..nrel {
                                if m.rel_at(r, x, x) != m.rel_at(r, y, y) {
                                    continue 'yloop;
                                }
                                for (i, &ui) in us.iter().enumerate() {
                                    if m.rel_at(r, x, ui) != m.rel_at(r, y, perm[i])
                                        || m.rel_at(r, ui, x) != m.rel_at(r, perm[i], y)
                                    {
                                        continue 'yloop;
                                    }
                                }
                            }
                            found = true;
                            break;
                        }
                        if !found {
                            bad = Some(x);
                            break;
                        }
                    }
                    record(
                        &mut report,
                        bad.is_none(),
                        map,
                        bad.map(|x| vec![m.domain()[x].clone()]).unwrap_or_default(),
                    );
                });
            }
        }
    }
    report
}

fn permutations(items: &[usize], f: &mut impl FnMut(&[usize])) {
    let mut v: Vec<usize> = items.to_vec();
    permute(&mut v, 0, f);
}

fn permute(v: &mut Vec<usize>, start: usize, f: &mut impl FnMut(&[usize])) {
    if start == v.len() {
        f(v);
        return;
    }
    for i in start..v.len() {
        v.swap(start, i);
        permute(v, start + 1, f);
        v.swap(start, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{PropertySet, StructureBuilder};

    fn graph_sig() -> Arc<Signature> {
        Arc::new(Signature::single(
            "E",
            PropertySet::of([Property::Symmetric, Property::Antireflexive]),
        ))
    }

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
    fn one_vertex_graph_has_two_extensions() {
        let sig = graph_sig();
        let s = StructureBuilder::new(&sig)
            .elements(["v"])
            .finish()
            .unwrap();
        assert_eq!(one_point_extensions(&s).len(), 2);
    }

    #[test]
    fn empty_structure_has_one_graph_extension() {
        let sig = graph_sig();
        let s = Structure::empty(sig);
        let exts = one_point_extensions(&s);
        assert_eq!(exts.len(), 1);
        assert_eq!(exts[0].len(), 1);
    }

    #[test]
    fn two_chain_extensions_match_brute_force() {
        // Independent count: a new point against a two-chain poset picks an
        // up-set and a down-set; brute force over all 2^5 patterns with a
        // conformance filter gives the same number.
        let sig = poset_sig();
        let s = StructureBuilder::new(&sig)
            .elements(["0", "1"])
            .loops("leq", ["0", "1"])
            .pair("leq", "0", "1")
            .finish()
            .unwrap();
        let fast = one_point_extensions(&s).len();
        let mut brute = 0;
        for bits in 0u32..32 {
            let mut b = StructureBuilder::new(&sig)
                .elements(["0", "1", "z"])
                .loops("leq", ["0", "1"])
                .pair("leq", "0", "1");
            if bits & 1 != 0 {
                b = b.pair("leq", "z", "z");
            }
            if bits & 2 != 0 {
                b = b.pair("leq", "0", "z");
            }
            if bits & 4 != 0 {
                b = b.pair("leq", "1", "z");
            }
            if bits & 8 != 0 {
                b = b.pair("leq", "z", "0");
            }
            if bits & 16 != 0 {
                b = b.pair("leq", "z", "1");
            }
            let s3 = b.finish().unwrap();
            if check_conformance(&s3).all_passed() {
                brute += 1;
            }
        }
        assert_eq!(fast, brute);
        // Above both, below both, between, above-one, below-one, incomparable.
        assert_eq!(fast, 6);
    }

    #[test]
    fn graph_classes_up_to_three_vertices() {
        let sig = graph_sig();
        let all = enumerate_structures(&sig, 3).unwrap();
        assert_eq!(all.len(), 8);
        assert_eq!(all.iter().filter(|s| s.len() == 3).count(), 4);
    }

    #[test]
    fn enumerating_size_zero_gives_the_empty_structure() {
        let sig = graph_sig();
        let all = enumerate_structures(&sig, 0).unwrap();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_empty());
    }

    #[test]
    fn poset_classes_of_size_two() {
        let sig = poset_sig();
        let all = enumerate_structures(&sig, 2).unwrap();
        assert_eq!(all.iter().filter(|s| s.len() == 2).count(), 2);
    }

    #[test]
    fn operation_enumeration_matches_the_orbit_count() {
        // One unconstrained relation and one unconstrained unary operation
        // on two points: 16 * 4 = 64 labeled structures, of which 8 are
        // fixed by the swap, so Burnside gives (64 + 8) / 2 = 36 classes.
        use crate::structure::OperationSpec;
        let sig = Arc::new(
            Signature::single("R", PropertySet::empty())
                .with_operations(vec![OperationSpec::preserving("f", [])])
                .unwrap(),
        );
        let all = enumerate_structures(&sig, 2).unwrap();
        assert_eq!(all.iter().filter(|s| s.len() == 2).count(), 36);
        assert_eq!(all.iter().filter(|s| s.len() == 1).count(), 2);
    }

    #[test]
    fn enumeration_is_hereditary() {
        // The age is closed under induced substructures: removing any point
        // from an enumerated class lands on another enumerated class.
        use crate::isomorphism::find_isomorphism;
        use std::collections::BTreeSet;
        let sig = graph_sig();
        let all = enumerate_structures(&sig, 4).unwrap();
        for s in &all {
            for drop in s.domain() {
                let subset: BTreeSet<_> =
                    s.domain().iter().filter(|e| *e != drop).cloned().collect();
                let sub = crate::structure::induced_substructure(s, &subset).unwrap();
                assert!(
                    all.iter()
                        .any(|t| find_isomorphism(t, &sub).unwrap().is_some()),
                    "missing class for a restriction of {:?}",
                    s
                );
            }
        }
    }

    #[test]
    fn stages_support_operation_signatures() {
        use crate::structure::OperationSpec;
        let sig = Arc::new(
            Signature::single(
                "R",
                PropertySet::of([Property::Transitive, Property::Reflexive]),
            )
            .with_operations(vec![OperationSpec::preserving("f", ["R".to_owned()])])
            .unwrap(),
        );
        let stage = build_stage(&sig, 25, 9).unwrap();
        assert!(check_conformance(&stage).all_passed());
        assert!(stage.len() >= 1);
        let again = build_stage(&sig, 25, 9).unwrap();
        assert_eq!(stage, again);
    }

    #[test]
    fn zero_steps_is_the_empty_stage() {
        let sig = graph_sig();
        let stage = build_stage(&sig, 0, 1).unwrap();
        assert!(stage.is_empty());
    }

    #[test]
    fn stages_are_reproducible() {
        let sig = graph_sig();
        let s1 = build_stage(&sig, 30, 7).unwrap();
        let s2 = build_stage(&sig, 30, 7).unwrap();
        assert_eq!(s1, s2);
    }

    #[test]
    fn stages_are_conformant_and_chain() {
        let sig = poset_sig();
        let small = build_stage(&sig, 10, 3).unwrap();
        let big = build_stage(&sig, 20, 3).unwrap();
        assert!(check_conformance(&small).all_passed());
        assert!(check_conformance(&big).all_passed());
        assert!(crate::structure::is_substructure(&small, &big).unwrap());
    }

    #[test]
    fn complete_graph_fails_level_one() {
        let sig = graph_sig();
        let names = ["v0", "v1", "v2", "v3", "v4"];
        let mut b = StructureBuilder::new(&sig).elements(names);
        for i in 0..5 {
            for j in 0..5 {
                if i != j {
                    b = b.pair("E", names[i], names[j]);
                }
            }
        }
        let s = b.finish().unwrap();
        let report = check_extension_property(&s, 1);
        assert!(!report.all_passed());
    }

    #[test]
    fn empty_structure_fails_level_zero() {
        let sig = graph_sig();
        let s = Structure::empty(sig);
        let report = check_extension_property(&s, 0);
        assert_eq!(report.checked, 1);
        assert_eq!(report.passed, 0);
    }

    #[test]
    fn extension_check_handles_wider_signatures() {
        // Three relations with two coarseness pairs: the packed pattern
        // representation must still fit at small levels.
        use crate::structure::RelationDecl;
        let sig = Arc::new(
            Signature::new(
                vec![
                    RelationDecl {
                        name: "r1".into(),
                        properties: PropertySet::empty(),
                    },
                    RelationDecl {
                        name: "r2".into(),
                        properties: PropertySet::empty(),
                    },
                    RelationDecl {
                        name: "s".into(),
                        properties: PropertySet::empty(),
                    },
                ],
                vec![("r1".into(), "s".into()), ("r2".into(), "s".into())],
                vec![],
            )
            .unwrap(),
        );
        let m = StructureBuilder::new(&sig)
            .elements(["a", "b", "c"])
            .pair("r1", "a", "b")
            .pair("s", "a", "b")
            .pair("r2", "b", "c")
            .pair("s", "b", "c")
            .finish()
            .unwrap();
        let report = check_extension_property(&m, 2);
        assert!(report.checked > 0);
    }

    #[test]
    fn homogeneity_on_the_four_cycle() {
        let sig = graph_sig();
        let names = ["v0", "v1", "v2", "v3"];
        let mut b = StructureBuilder::new(&sig).elements(names);
        for (x, y) in [(0, 1), (1, 2), (2, 3), (3, 0)] {
            b = b
                .pair("E", names[x], names[y])
                .pair("E", names[y], names[x]);
        }
        let s = b.finish().unwrap();
        let report = check_partial_homogeneity(&s, 1);
        assert!(report.all_passed());
        // 16 single-point maps plus the empty map.
        assert_eq!(report.checked, 17);
    }

    #[test]
    fn chain_map_bottom_to_top_does_not_extend() {
        let sig = poset_sig();
        let s = StructureBuilder::new(&sig)
            .elements(["0", "1"])
            .loops("leq", ["0", "1"])
            .pair("leq", "0", "1")
            .finish()
            .unwrap();
        let report = check_partial_homogeneity(&s, 1);
        // Identity maps extend, bottom->top and top->bottom do not, and the
        // empty map extends.
        assert_eq!(report.checked, 5);
        assert_eq!(report.passed, 3);
    }
}
