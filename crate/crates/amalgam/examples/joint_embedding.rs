//! Joint embedding: any two structures of a supported class embed into a
//! common one, by amalgamating over the empty shared part.
//!
//! ```bash
//! cargo run --example joint_embedding
//! ```

use std::sync::Arc;

use amalgam::structure::{rename_with_suffix, Property, PropertySet, Signature, StructureBuilder};
use amalgam::{check_conformance, joint_embedding};

fn main() -> amalgam::Result<()> {
    let sig = Arc::new(Signature::single(
        "leq",
        PropertySet::of([
            Property::Transitive,
            Property::Reflexive,
            Property::Antisymmetric,
        ]),
    ));

    let chain = StructureBuilder::new(&sig)
        .elements(["x0", "x1"])
        .loops("leq", ["x0", "x1"])
        .pair("leq", "x0", "x1")
        .finish()?;
    let other = StructureBuilder::new(&sig)
        .elements(["x0", "x1"])
        .loops("leq", ["x0", "x1"])
        .pair("leq", "x1", "x0")
        .finish()?;

    // Domains overlap, so rename one side first.
    let renamed = rename_with_suffix(&other, "_b")?;
    let amalgam = joint_embedding(&chain, &renamed)?;

    println!(
        "joint embedding of two chains ({} elements):",
        amalgam.d.len()
    );
    for (x, y) in amalgam.d.extent("leq")? {
        if x != y {
            println!("  {} <= {}", x, y);
        }
    }
    println!(
        "the two chains stay mutually incomparable; conformance: {}",
        if check_conformance(&amalgam.d).all_passed() {
            "pass"
        } else {
            "fail"
        }
    );
    Ok(())
}
