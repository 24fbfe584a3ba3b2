//! Randomized verification of the construction against independent oracles:
//! the transitive-closure identity, monotonicity of the two raw
//! constructors, strict commuting on posets, embedding preservation, and
//! the search engine's soundness, desk-scale completeness, agreement and
//! determinism.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use amalgam::conformance::check_conformance;
use amalgam::gen::{
    self, ops_signature, random_equivalence_strict_triple, random_structure, random_triple,
    transitive_closure_pairs,
};
use amalgam::isomorphism::find_isomorphism;
use amalgam::oracle::{
    ap_equivalence_strict, search_ap_amalgam, search_strong_amalgam, SearchStatus, DEFAULT_BUDGET,
};
use amalgam::structure::{
    induced_substructure, is_substructure, rename_with_suffix, ElementId, Property, PropertySet,
    Signature,
};
use amalgam::triple::validate_tba;
use amalgam::{
    amalgamate_single, amalgamate_transitive, amalgamate_union, joint_embedding, strict_of,
    superamalgamation_witnesses,
};

fn poset_sig() -> Arc<Signature> {
    Arc::new(Signature::single(
        "R",
        PropertySet::of([
            Property::Transitive,
            Property::Reflexive,
            Property::Antisymmetric,
        ]),
    ))
}

#[test]
fn transitive_construction_equals_independent_closure() {
    // The case-b extent must be the least transitive relation containing the
    // union; the oracle closure is computed by iterated squaring.
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for trial in 0..200 {
        let mut p = PropertySet::of([Property::Transitive]);
        if trial % 3 == 0 {
            p = p.with(Property::Reflexive);
        }
        if trial % 4 == 0 {
            p = p.with(Property::Antisymmetric);
        }
        let sig = Arc::new(Signature::single("R", p));
        let t = random_triple(&sig, 6, &mut rng);
        let (pairs, _) = amalgamate_transitive(&t, "R").unwrap();
        let mut union = t.a().extent("R").unwrap();
        union.extend(t.b().extent("R").unwrap());
        let expected = transitive_closure_pairs(&union);
        assert_eq!(pairs, expected, "trial {}", trial);
    }
}

#[test]
fn union_is_contained_in_transitive_output() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for p in PropertySet::all_subsets() {
        let sig = Arc::new(Signature::single("R", p));
        for _ in 0..10 {
            let t = random_triple(&sig, 6, &mut rng);
            let u = amalgamate_union(&t, "R").unwrap();
            let (tr, _) = amalgamate_transitive(&t, "R").unwrap();
            assert!(u.is_subset(&tr));
        }
    }
}

#[test]
fn strict_commuting_on_random_poset_triples() {
    let sig = poset_sig();
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for trial in 0..200 {
        let t = random_triple(&sig, 6, &mut rng);
        let direct = amalgamate_single(&t).unwrap();
        let lhs = strict_of(&direct.d, "R").unwrap();

        let sa = strict_of(t.a(), "R").unwrap();
        let sb = strict_of(t.b(), "R").unwrap();
        let sc = strict_of(t.c(), "R").unwrap();
        let st = validate_tba(sa, sb, sc).unwrap();
        let rhs = amalgamate_single(&st).unwrap();

        assert_eq!(
            lhs.extent("R").unwrap(),
            rhs.d.extent("R").unwrap(),
            "trial {}",
            trial
        );
    }
}

#[test]
fn amalgam_embeds_both_sides_with_sound_witnesses() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for p in PropertySet::all_subsets() {
        let sig = Arc::new(Signature::single("R", p));
        for _ in 0..15 {
            let t = random_triple(&sig, 6, &mut rng);
            let am = amalgamate_single(&t).unwrap();
            assert!(check_conformance(&am.d).all_passed());
            assert!(is_substructure(t.a(), &am.d).unwrap());
            assert!(is_substructure(t.b(), &am.d).unwrap());
            let (report, derived) = superamalgamation_witnesses(&am.d, &t, "R").unwrap();
            assert!(report.all_passed());
            assert_eq!(derived.len(), am.witnesses["R"].len());
            // Stored witnesses satisfy the two-step path literally.
            for ((x, y), c) in &am.witnesses["R"] {
                let side_x = if t.a().contains(x) { t.a() } else { t.b() };
                let side_y = if t.a().contains(y) && !t.c().contains(y) {
                    t.a()
                } else {
                    t.b()
                };
                assert!(side_x.related("R", x, c) && side_y.related("R", c, y));
            }
        }
    }
}

#[test]
fn joint_embedding_of_random_graph_pairs() {
    let sig = Arc::new(Signature::single(
        "E",
        PropertySet::of([Property::Symmetric, Property::Antireflexive]),
    ));
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    for _ in 0..100 {
        let a = random_structure(&sig, rng.gen_range(1..=5), &mut rng);
        let b = rename_with_suffix(
            &random_structure(&sig, rng.gen_range(1..=5), &mut rng),
            "_r",
        )
        .unwrap();
        let am = joint_embedding(&a, &b).unwrap();
        assert!(check_conformance(&am.d).all_passed());
        assert!(is_substructure(&a, &am.d).unwrap());
        assert!(is_substructure(&b, &am.d).unwrap());
    }
}

#[test]
fn isomorphic_structures_have_identical_conformance_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    for p in [
        PropertySet::of([Property::Transitive]),
        PropertySet::of([Property::Symmetric, Property::Antireflexive]),
        PropertySet::of([Property::Reflexive, Property::Antisymmetric]),
    ] {
        let sig = Arc::new(Signature::single("R", p));
        for _ in 0..20 {
            let s = random_structure(&sig, 4, &mut rng);
            let renamed = rename_with_suffix(&s, "_x").unwrap();
            let iso = find_isomorphism(&s, &renamed).unwrap();
            assert!(iso.is_some());
            let va: Vec<bool> = check_conformance(&s)
                .entries
                .iter()
                .map(|e| e.passed)
                .collect();
            let vb: Vec<bool> = check_conformance(&renamed)
                .entries
                .iter()
                .map(|e| e.passed)
                .collect();
            assert_eq!(va, vb);
        }
    }
}

#[test]
fn transitivity_check_agrees_with_pair_composition() {
    // Dual route: the direct triple-loop check against the pair-set algebra
    // "transitive iff extent composed with extent is contained in extent".
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let sig = Arc::new(Signature::single(
        "R",
        PropertySet::of([Property::Transitive]),
    ));
    let free = Arc::new(Signature::single("R", PropertySet::empty()));
    for _ in 0..200 {
        // Half conformant, half arbitrary.
        let s = if rng.gen_bool(0.5) {
            random_structure(&sig, 5, &mut rng)
        } else {
            random_structure(&free, 5, &mut rng)
        };
        let pairs = s.extent("R").unwrap();
        let mut composed: BTreeSet<(ElementId, ElementId)> = BTreeSet::new();
        for (x, y) in &pairs {
            for (y2, z) in &pairs {
                if y == y2 {
                    composed.insert((x.clone(), z.clone()));
                }
            }
        }
        let algebra_says = composed.is_subset(&pairs);
        let annotated = amalgam::structure::Structure::new(
            Arc::clone(&sig),
            s.domain().to_vec(),
            &std::collections::BTreeMap::from([(
                "R".to_owned(),
                pairs.iter().cloned().collect::<Vec<_>>(),
            )]),
            &Default::default(),
        )
        .unwrap();
        assert_eq!(check_conformance(&annotated).all_passed(), algebra_says);
    }
}

#[test]
fn identity_triple_validates_for_random_conformant_structures() {
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    for p in PropertySet::all_subsets() {
        let sig = Arc::new(Signature::single("R", p));
        let s = random_structure(&sig, 4, &mut rng);
        assert!(validate_tba(s.clone(), s.clone(), s.clone()).is_ok());
    }
}

#[test]
fn induced_substructures_are_substructures() {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let sig = ops_signature(
        PropertySet::of([Property::Transitive, Property::Reflexive]),
        1,
        1,
    );
    for _ in 0..50 {
        let s = random_structure(&sig, 5, &mut rng);
        // Random subset, closed under the operations by iteration.
        let mut subset: BTreeSet<ElementId> = s
            .domain()
            .iter()
            .filter(|_| rng.gen_bool(0.5))
            .cloned()
            .collect();
        loop {
            let mut grew = false;
            for spec in s.signature().operations() {
                for e in subset.clone() {
                    let img = s.apply(&spec.name, &e).unwrap();
                    if subset.insert(img) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let sub = induced_substructure(&s, &subset).unwrap();
        assert!(is_substructure(&sub, &s).unwrap());
    }
}

#[test]
fn oracle_finds_on_supported_classes_and_agrees() {
    // Desk-scale completeness: on supported single-relation classes the
    // strong search never reports exhausted, the found amalgam re-verifies,
    // and the non-strong search then finds as well (with the empty
    // matching, hence the identical structure).
    let mut rng = ChaCha8Rng::seed_from_u64(110);
    for p in PropertySet::all_subsets() {
        let sig = Arc::new(Signature::single("R", p));
        for _ in 0..10 {
            let t = random_triple(&sig, 6, &mut rng);
            let strong = search_strong_amalgam(&t, DEFAULT_BUDGET);
            assert_eq!(strong.status, SearchStatus::Found);
            let (d, ea, eb) = strong.amalgam.as_ref().unwrap();
            assert!(check_conformance(d).all_passed());
            assert!(ea.verify(t.a(), d).unwrap());
            assert!(eb.verify(t.b(), d).unwrap());
            let ap = search_ap_amalgam(&t, DEFAULT_BUDGET);
            assert_eq!(ap.status, SearchStatus::Found);
            assert_eq!(&ap.amalgam.as_ref().unwrap().0, d);
            // Determinism of the node count.
            let again = search_strong_amalgam(&t, DEFAULT_BUDGET);
            assert_eq!(again.nodes_explored, strong.nodes_explored);
        }
    }
}

#[test]
fn constructed_amalgam_lies_in_the_search_space() {
    let mut rng = ChaCha8Rng::seed_from_u64(111);
    for p in PropertySet::all_subsets() {
        let sig = Arc::new(Signature::single("R", p));
        for _ in 0..10 {
            let t = random_triple(&sig, 6, &mut rng);
            let am = amalgamate_single(&t).unwrap();
            // Admissible assignment: the extent restricted to either side is
            // exactly that side's extent, and the whole structure conforms.
            let da: BTreeSet<_> =
                am.d.extent("R")
                    .unwrap()
                    .into_iter()
                    .filter(|(x, y)| t.a().contains(x) && t.a().contains(y))
                    .collect();
            assert_eq!(da, t.a().extent("R").unwrap());
            let db: BTreeSet<_> =
                am.d.extent("R")
                    .unwrap()
                    .into_iter()
                    .filter(|(x, y)| t.b().contains(x) && t.b().contains(y))
                    .collect();
            assert_eq!(db, t.b().extent("R").unwrap());
            assert!(check_conformance(&am.d).all_passed());
        }
    }
}

#[test]
fn equivalence_quotient_never_merges_shared_classes() {
    let mut rng = ChaCha8Rng::seed_from_u64(112);
    for _ in 0..100 {
        let (_, t) = random_equivalence_strict_triple(&mut rng);
        let q = ap_equivalence_strict(&t).unwrap();
        assert!(check_conformance(&q).all_passed());
        // Distinct classes of the shared part stay distinct.
        for c1 in t.c().domain() {
            for c2 in t.c().domain() {
                if c1 < c2 && !t.c().related("R", c1, c2) {
                    assert!(!q.related("R", c1, c2), "{} and {} merged", c1, c2);
                }
            }
        }
        // Both sides embed.
        assert!(is_substructure(t.a(), &q).unwrap());
    }
}

#[test]
fn quotient_without_contact_is_the_plain_union() {
    // A triple whose private parts share no class through the shared part
    // and whose operation orbits never collide: no identifications, and the
    // output relation is the closed union.
    let sig = gen::equivalence_strict_signature();
    let c = amalgam::structure::StructureBuilder::new(&sig)
        .elements(["c"])
        .loops("R", ["c"])
        .op("f", "c", "c")
        .finish()
        .unwrap();
    let a = amalgam::structure::StructureBuilder::new(&sig)
        .elements(["c", "a"])
        .loops("R", ["c", "a"])
        .op("f", "c", "c")
        .op("f", "a", "a")
        .finish()
        .unwrap();
    let b = amalgam::structure::StructureBuilder::new(&sig)
        .elements(["c", "b"])
        .loops("R", ["c", "b"])
        .op("f", "c", "c")
        .op("f", "b", "b")
        .finish()
        .unwrap();
    let t = validate_tba(a, b, c).unwrap();
    let q = ap_equivalence_strict(&t).unwrap();
    assert_eq!(q.len(), 3);
    let a_id = ElementId::new("a").unwrap();
    let b_id = ElementId::new("b").unwrap();
    assert!(!q.related("R", &a_id, &b_id));
}

#[test]
fn first_found_amalgam_is_the_constructed_minimal_one() {
    // False-before-true assignment makes the search surface the
    // set-inclusion-minimal amalgam first, which is exactly what the
    // constructive dispatchers build, for every supported dispatch cell.
    let mut rng = ChaCha8Rng::seed_from_u64(113);
    for p in PropertySet::all_subsets() {
        let sig = Arc::new(Signature::single("R", p));
        for _ in 0..5 {
            let t = random_triple(&sig, 6, &mut rng);
            let constructed = amalgamate_single(&t).unwrap().d;
            let found = search_strong_amalgam(&t, DEFAULT_BUDGET).amalgam.unwrap().0;
            assert_eq!(found, constructed);
        }
    }
    for (p_trans, q_trans, q_sym) in [
        (false, false, false),
        (true, true, false),
        (false, true, false),
        (true, false, true),
        (true, false, false),
    ] {
        let mut p = PropertySet::of([Property::Reflexive, Property::Antisymmetric]);
        let mut q = PropertySet::empty();
        if p_trans {
            p = p.with(Property::Transitive);
        }
        if q_trans {
            q = q.with(Property::Transitive);
        }
        if q_sym {
            q = q.with(Property::Symmetric);
        }
        let sig = Arc::new(Signature::pair("R", p, "S", q));
        for _ in 0..20 {
            let t = random_triple(&sig, 6, &mut rng);
            let constructed = amalgam::amalgamate_pair(&t).unwrap().d;
            let found = search_strong_amalgam(&t, DEFAULT_BUDGET).amalgam.unwrap().0;
            assert_eq!(found, constructed);
        }
    }
}
