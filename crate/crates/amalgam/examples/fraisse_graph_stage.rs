//! Finite stages of the generic graph limit.
//!
//! Each step realizes one extension request by a strong amalgamation, with
//! the free cross pairs completed by seeded coin flips. As the stage grows
//! it realizes every small extension type and one-step homogeneity climbs
//! toward 1.
//!
//! ```bash
//! cargo run --release --example fraisse_graph_stage
//! ```

use std::sync::Arc;

use amalgam::fraisse::{build_stage, check_extension_property, check_partial_homogeneity};
use amalgam::structure::{Property, PropertySet, Signature};

fn main() -> amalgam::Result<()> {
    let graphs = Arc::new(Signature::single(
        "E",
        PropertySet::of([Property::Symmetric, Property::Antireflexive]),
    ));

    println!("steps | vertices | extension level 2 | one-step homogeneity level 1");
    for steps in [50, 100, 200] {
        let stage = build_stage(&graphs, steps, 1)?;
        let ext = check_extension_property(&stage, 2);
        let hom = check_partial_homogeneity(&stage, 1);
        println!(
            "{:5} | {:8} | {:7}/{:7} = {:.4} | {:7}/{:7} = {:.4}",
            steps,
            stage.len(),
            ext.passed,
            ext.checked,
            ext.fraction(),
            hom.passed,
            hom.checked,
            hom.fraction()
        );
    }

    // Posets work the same way; the stage quickly contains every small
    // configuration, for instance chains and antichains of length three.
    let posets = Arc::new(Signature::single(
        "leq",
        PropertySet::of([
            Property::Transitive,
            Property::Reflexive,
            Property::Antisymmetric,
        ]),
    ));
    let stage = build_stage(&posets, 120, 7)?;
    let ext = check_extension_property(&stage, 1);
    println!(
        "poset stage: {} elements, level-1 extension fraction {:.4}",
        stage.len(),
        ext.fraction()
    );
    Ok(())
}
