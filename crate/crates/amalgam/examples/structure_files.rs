//! The JSON interchange format and the DOT rendering.
//!
//! ```bash
//! cargo run --example structure_files
//! ```

use std::sync::Arc;

use amalgam::dot::export_dot;
use amalgam::io::{structure_from_json, structure_to_json};
use amalgam::structure::{Property, PropertySet, Signature, StructureBuilder};

fn main() -> amalgam::Result<()> {
    let sig = Arc::new(Signature::pair(
        "R",
        PropertySet::of([Property::Transitive]),
        "S",
        PropertySet::empty(),
    ));
    let s = StructureBuilder::new(&sig)
        .elements(["a", "b", "c"])
        .pairs("R", [("a", "b"), ("b", "c"), ("a", "c")])
        .pairs("S", [("a", "b"), ("b", "c"), ("a", "c"), ("c", "a")])
        .finish()?;

    let text = structure_to_json(&s);
    println!("canonical document:\n{}", text);

    let back = structure_from_json(&text)?;
    assert_eq!(back, s);
    println!("round trip: exact");

    println!(
        "DOT rendering (coarser relation dashed):\n{}",
        export_dot(&s)
    );
    Ok(())
}
