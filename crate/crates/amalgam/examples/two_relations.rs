//! A partial order with a coarser tolerance relation, amalgamated so that
//! both relations keep their axioms and the containment between them.
//!
//! This is the mixed dispatch cell: the finer relation is transitive, the
//! coarser one is only reflexive and symmetric, so the coarser extent is
//! completed from the finer cross pairs in both directions.
//!
//! ```bash
//! cargo run --example two_relations
//! ```

use std::sync::Arc;

use amalgam::structure::{Property, PropertySet, Signature, StructureBuilder};
use amalgam::triple::validate_tba;
use amalgam::{amalgamate_pair, check_conformance};

fn main() -> amalgam::Result<()> {
    let sig = Arc::new(Signature::pair(
        "leq",
        PropertySet::of([
            Property::Transitive,
            Property::Reflexive,
            Property::Antisymmetric,
        ]),
        "tol",
        PropertySet::of([Property::Reflexive, Property::Symmetric]),
    ));

    let base = |b: StructureBuilder, names: &[&str]| {
        let mut b = b;
        for n in names {
            b = b.pair("leq", n, n).pair("tol", n, n);
        }
        b
    };

    let c = base(StructureBuilder::new(&sig).elements(["c"]), &["c"]).finish()?;
    let a = base(
        StructureBuilder::new(&sig).elements(["c", "a"]),
        &["c", "a"],
    )
    .pair("leq", "a", "c")
    .pairs("tol", [("a", "c"), ("c", "a")])
    .finish()?;
    let b = base(
        StructureBuilder::new(&sig).elements(["c", "b"]),
        &["c", "b"],
    )
    .pair("leq", "c", "b")
    .pairs("tol", [("c", "b"), ("b", "c")])
    .finish()?;

    let t = validate_tba(a, b, c)?;
    let amalgam = amalgamate_pair(&t)?;

    println!("order part:");
    for (x, y) in amalgam.d.extent("leq")? {
        if x != y {
            println!("  {} <= {}", x, y);
        }
    }
    println!("tolerance part:");
    for (x, y) in amalgam.d.extent("tol")? {
        if x < y {
            println!("  {} ~ {}", x, y);
        }
    }
    for rel in ["leq", "tol"] {
        println!("witnesses for {}: {:?}", rel, amalgam.witnesses[rel]);
    }
    let report = check_conformance(&amalgam.d);
    println!(
        "conformance including coarseness: {}",
        if report.all_passed() { "pass" } else { "fail" }
    );
    Ok(())
}
