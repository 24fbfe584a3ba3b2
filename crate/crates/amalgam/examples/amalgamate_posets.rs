//! Strong amalgamation of two posets over a shared part.
//!
//! The amalgam lives on the union of the two domains, embeds both sides
//! unchanged, and every cross pair comes with a witness in the shared part
//! showing the two-step path that forced it.
//!
//! ```bash
//! cargo run --example amalgamate_posets
//! ```

use std::sync::Arc;

use amalgam::structure::{Property, PropertySet, Signature, StructureBuilder};
use amalgam::triple::validate_tba;
use amalgam::{amalgamate_single, superamalgamation_witnesses};

fn main() -> amalgam::Result<()> {
    let sig = Arc::new(Signature::single(
        "leq",
        PropertySet::of([
            Property::Transitive,
            Property::Reflexive,
            Property::Antisymmetric,
        ]),
    ));

    // Shared part: two incomparable points c, d.
    let c = StructureBuilder::new(&sig)
        .elements(["c", "d"])
        .loops("leq", ["c", "d"])
        .finish()?;
    // One side puts a above c, the other puts b below c.
    let a = StructureBuilder::new(&sig)
        .elements(["c", "d", "a"])
        .loops("leq", ["c", "d", "a"])
        .pair("leq", "c", "a")
        .finish()?;
    let b = StructureBuilder::new(&sig)
        .elements(["c", "d", "b"])
        .loops("leq", ["c", "d", "b"])
        .pair("leq", "b", "c")
        .finish()?;

    let t = validate_tba(a, b, c)?;
    let amalgam = amalgamate_single(&t)?;

    println!("amalgam extent:");
    for (x, y) in amalgam.d.extent("leq")? {
        if x != y {
            println!("  {} <= {}", x, y);
        }
    }
    println!("construction witnesses (cross pair -> shared middle):");
    for ((x, y), w) in &amalgam.witnesses["leq"] {
        println!("  {} <= {}  via  {}", x, y, w);
    }

    // Independent re-derivation of the witnesses from the amalgam alone.
    let (report, _) = superamalgamation_witnesses(&amalgam.d, &t, "leq")?;
    println!(
        "witness re-derivation: {}",
        if report.all_passed() {
            "all cross pairs factor through the shared part"
        } else {
            "failed"
        }
    );
    Ok(())
}
