//! Enumerating all structures of a class up to isomorphism.
//!
//! ```bash
//! cargo run --example enumerate_classes
//! ```

use std::sync::Arc;

use amalgam::fraisse::{enumerate_structures, one_point_extensions};
use amalgam::structure::{Property, PropertySet, Signature, StructureBuilder};

fn main() -> amalgam::Result<()> {
    let graphs = Arc::new(Signature::single(
        "E",
        PropertySet::of([Property::Symmetric, Property::Antireflexive]),
    ));
    for n in 0..=4 {
        let all = enumerate_structures(&graphs, n)?;
        println!(
            "graphs up to {} vertices: {} classes ({} of size exactly {})",
            n,
            all.len(),
            all.iter().filter(|s| s.len() == n).count(),
            n
        );
    }

    let posets = Arc::new(Signature::single(
        "leq",
        PropertySet::of([
            Property::Transitive,
            Property::Reflexive,
            Property::Antisymmetric,
        ]),
    ));
    for n in 0..=4 {
        let all = enumerate_structures(&posets, n)?;
        println!(
            "posets up to {} points: {} classes ({} of size exactly {})",
            n,
            all.len(),
            all.iter().filter(|s| s.len() == n).count(),
            n
        );
    }

    // One-point extensions are the building blocks of the enumeration: a
    // two-chain extends in six essentially different ways.
    let chain = StructureBuilder::new(&posets)
        .elements(["0", "1"])
        .loops("leq", ["0", "1"])
        .pair("leq", "0", "1")
        .finish()?;
    println!(
        "one-point extensions of the two-chain: {}",
        one_point_extensions(&chain).len()
    );
    Ok(())
}
