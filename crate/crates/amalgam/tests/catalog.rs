//! The counterexample catalog end to end: every entry verifies its expected
//! verdict, verification is deterministic, and dropping the offending axiom
//! flips each verdict.

use std::collections::BTreeMap;
use std::sync::Arc;

use amalgam::counterexamples::{build, verify, CATALOG};
use amalgam::oracle::{search_strong_amalgam, SearchStatus, DEFAULT_BUDGET};
use amalgam::structure::{OperationSpec, PropertySet, RelationDecl, Signature, Structure};
use amalgam::triple::{validate_tba, TbaTriple};
use amalgam::Error;

/// Rebuilds a triple over a modified signature: same domains, extents and
/// tables, with `map_rel` rewriting each relation's property set and
/// `keep_ops` controlling whether operations survive.
fn rebuild(
    t: &TbaTriple,
    map_rel: impl Fn(&RelationDecl) -> PropertySet,
    keep_ops: bool,
    map_op: impl Fn(&OperationSpec) -> OperationSpec,
) -> TbaTriple {
    let old = t.a().signature();
    let relations = old
        .relations()
        .iter()
        .map(|d| RelationDecl {
            name: d.name.clone(),
            properties: map_rel(d),
        })
        .collect();
    let coarser = old
        .coarser_pairs()
        .iter()
        .map(|&(f, c)| {
            (
                old.relations()[f].name.clone(),
                old.relations()[c].name.clone(),
            )
        })
        .collect();
    let operations = if keep_ops {
        old.operations().iter().map(map_op).collect()
    } else {
        vec![]
    };
    let sig = Arc::new(Signature::new(relations, coarser, operations).unwrap());
    let convert = |s: &Structure| -> Structure {
        let mut rels = BTreeMap::new();
        for d in old.relations() {
            rels.insert(
                d.name.clone(),
                s.extent(&d.name).unwrap().into_iter().collect::<Vec<_>>(),
            );
        }
        let mut ops = BTreeMap::new();
        if keep_ops {
            for spec in old.operations() {
                ops.insert(spec.name.clone(), s.table(&spec.name).unwrap());
            }
        }
        Structure::new(Arc::clone(&sig), s.domain().to_vec(), &rels, &ops).unwrap()
    };
    validate_tba(convert(t.a()), convert(t.b()), convert(t.c())).unwrap()
}

#[test]
fn all_entries_verify_within_budget() {
    for e in &CATALOG {
        let report = verify(e.name, DEFAULT_BUDGET)
            .unwrap_or_else(|err| panic!("{} failed: {}", e.name, err));
        assert!(report.all_passed(), "{} has failing report lines", e.name);
    }
}

#[test]
fn verification_is_deterministic() {
    for e in &CATALOG {
        let r1 = verify(e.name, DEFAULT_BUDGET).unwrap().render();
        let r2 = verify(e.name, DEFAULT_BUDGET).unwrap().render();
        assert_eq!(r1, r2, "{}", e.name);
    }
}

#[test]
fn unknown_entry_is_rejected() {
    assert!(matches!(
        verify("nonsense", DEFAULT_BUDGET),
        Err(Error::UnknownEntry(_))
    ));
}

// One ablation per entry: removing the offending axiom turns the refutation
// into a found amalgam.

#[test]
fn thm31c_without_the_operation_amalgamates() {
    let (_, t) = build("thm31C").unwrap();
    let reduct = rebuild(&t, |d| d.properties, false, |o| o.clone());
    let out = search_strong_amalgam(&reduct, DEFAULT_BUDGET);
    assert_eq!(out.status, SearchStatus::Found);
    // The constructed pair amalgam agrees: both relations gain the forced
    // cross pair and coarseness holds.
    let am = amalgam::amalgamate_pair(&reduct).unwrap();
    assert!(amalgam::check_conformance(&am.d).all_passed());
    let a = amalgam::ElementId::new("a").unwrap();
    let b = amalgam::ElementId::new("b").unwrap();
    assert!(am.d.related("R", &a, &b));
    assert!(am.d.related("S", &a, &b));
}

#[test]
fn thm31d_without_the_operation_amalgamates() {
    let (_, t) = build("thm31D").unwrap();
    let reduct = rebuild(&t, |d| d.properties, false, |o| o.clone());
    assert_eq!(
        search_strong_amalgam(&reduct, DEFAULT_BUDGET).status,
        SearchStatus::Found
    );
}

#[test]
fn prop35a_without_antisymmetry_amalgamates() {
    let (_, t) = build("prop35a").unwrap();
    let ablated = rebuild(
        &t,
        |d| {
            if d.name == "S" {
                PropertySet::empty()
            } else {
                d.properties
            }
        },
        false,
        |o| o.clone(),
    );
    assert_eq!(
        search_strong_amalgam(&ablated, DEFAULT_BUDGET).status,
        SearchStatus::Found
    );
}

#[test]
fn prop35b_without_antisymmetry_amalgamates() {
    let (_, t) = build("prop35b").unwrap();
    let ablated = rebuild(
        &t,
        |d| {
            if d.name == "S" {
                PropertySet::empty()
            } else {
                d.properties
            }
        },
        false,
        |o| o.clone(),
    );
    assert_eq!(
        search_strong_amalgam(&ablated, DEFAULT_BUDGET).status,
        SearchStatus::Found
    );
}

#[test]
fn prop35c_without_antisymmetry_amalgamates() {
    let (_, t) = build("prop35c").unwrap();
    let ablated = rebuild(
        &t,
        |d| {
            if d.name == "S" {
                PropertySet::empty()
            } else {
                d.properties
            }
        },
        true,
        |o| o.clone(),
    );
    assert_eq!(
        search_strong_amalgam(&ablated, DEFAULT_BUDGET).status,
        SearchStatus::Found
    );
}

#[test]
fn prop42_without_strictness_amalgamates() {
    let (_, t) = build("prop42").unwrap();
    let ablated = rebuild(
        &t,
        |d| d.properties,
        true,
        |o| {
            let mut o = o.clone();
            o.strict = false;
            o
        },
    );
    assert_eq!(
        search_strong_amalgam(&ablated, DEFAULT_BUDGET).status,
        SearchStatus::Found
    );
}

#[test]
fn ex43sap_without_strictness_amalgamates_strongly() {
    let (_, t) = build("ex43sap").unwrap();
    let ablated = rebuild(
        &t,
        |d| d.properties,
        true,
        |o| {
            let mut o = o.clone();
            o.strict = false;
            o
        },
    );
    assert_eq!(
        search_strong_amalgam(&ablated, DEFAULT_BUDGET).status,
        SearchStatus::Found
    );
}

#[test]
fn rem33_without_acyclicity_amalgamates() {
    // In the plain antireflexive-digraph class the union itself works; only
    // the acyclicity encoding refutes.
    let (_, t) = build("rem33").unwrap();
    assert_eq!(
        search_strong_amalgam(&t, DEFAULT_BUDGET).status,
        SearchStatus::Found
    );
}

#[test]
fn rem41_without_antisymmetry_makes_the_misapplication_harmless() {
    let (_, t) = build("rem41").unwrap();
    let ablated = rebuild(&t, |_| PropertySet::empty(), false, |o| o.clone());
    let (pairs, _) = amalgam::amalgamate_transitive(&ablated, "R").unwrap();
    // Rebuild the output as a structure of the ablated class: conformant,
    // because no axiom is left to violate.
    let d = Structure::new(
        Arc::clone(ablated.a().signature()),
        {
            let mut dom = ablated.a().domain().to_vec();
            for e in ablated.b().domain() {
                if !dom.contains(e) {
                    dom.push(e.clone());
                }
            }
            dom
        },
        &BTreeMap::from([("R".to_owned(), pairs.into_iter().collect::<Vec<_>>())]),
        &BTreeMap::new(),
    )
    .unwrap();
    assert!(amalgam::check_conformance(&d).all_passed());
}

#[test]
fn three_relations_are_rejected_by_the_dispatcher() {
    let (_, t) = build("prop35a").unwrap();
    assert!(matches!(
        amalgam::amalgamate_pair(&t),
        Err(Error::UnsupportedSignature(_))
    ));
}

#[test]
fn coarser_only_operation_is_rejected_by_the_dispatcher() {
    let (_, t) = build("thm31C").unwrap();
    let err = amalgam::amalgamate_pair(&t);
    match err {
        Err(Error::UnsupportedSignature(msg)) => {
            assert!(
                msg.contains("thm31C"),
                "message should cite the catalog: {}",
                msg
            )
        }
        other => panic!(
            "expected UnsupportedSignature, got {:?}",
            other.map(|a| a.d)
        ),
    }
}

#[test]
fn bijective_coarser_only_operation_is_still_rejected() {
    let (_, t) = build("prop35c").unwrap();
    assert!(matches!(
        amalgam::amalgamate_pair(&t),
        Err(Error::UnsupportedSignature(_))
    ));
}

#[test]
fn strict_nonbijective_operation_is_rejected_for_single_preorders() {
    let (_, t) = build("prop42").unwrap();
    assert!(matches!(
        amalgam::amalgamate_single(&t),
        Err(Error::UnsupportedSignature(_))
    ));
}

#[test]
fn restricting_prop42_side_a_recovers_the_shared_part() {
    // The operation maps the shared elements among themselves, so the
    // restriction of A to the shared domain is closed and lands exactly on
    // the shared structure.
    let (_, t) = build("prop42").unwrap();
    let subset = t.c().domain().iter().cloned().collect();
    let restricted = amalgam::induced_substructure(t.a(), &subset).unwrap();
    assert_eq!(&restricted, t.c());
}
