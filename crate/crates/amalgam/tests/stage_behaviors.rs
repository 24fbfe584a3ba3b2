//! Behavioral checks of grown stages beyond the acceptance thresholds.

use std::sync::Arc;

use amalgam::check_conformance;
use amalgam::fraisse::build_stage;
use amalgam::structure::{Property, PropertySet, Signature, Structure};

fn related(s: &Structure, rel: &str, i: usize, j: usize) -> bool {
    s.related(rel, &s.domain()[i], &s.domain()[j])
}

#[test]
fn poset_stage_contains_a_three_chain_and_a_three_antichain() {
    let sig = Arc::new(Signature::single(
        "leq",
        PropertySet::of([
            Property::Transitive,
            Property::Reflexive,
            Property::Antisymmetric,
        ]),
    ));
    let stage = build_stage(&sig, 200, 1).unwrap();
    assert!(check_conformance(&stage).all_passed());
    let n = stage.len();

    let mut chain = false;
    'chain: for i in 0..n {
        for j in 0..n {
            if i == j || !related(&stage, "leq", i, j) {
                continue;
            }
            for k in 0..n {
                if k != i && k != j && related(&stage, "leq", j, k) {
                    chain = true;
                    break 'chain;
                }
            }
        }
    }

    let incomparable =
        |i: usize, j: usize| !related(&stage, "leq", i, j) && !related(&stage, "leq", j, i);
    let mut antichain = false;
    'anti: for i in 0..n {
        for j in i + 1..n {
            if !incomparable(i, j) {
                continue;
            }
            for k in j + 1..n {
                if incomparable(i, k) && incomparable(j, k) {
                    antichain = true;
                    break 'anti;
                }
            }
        }
    }

    assert!(chain, "no three-element chain in the stage");
    assert!(antichain, "no three-element antichain in the stage");
}
