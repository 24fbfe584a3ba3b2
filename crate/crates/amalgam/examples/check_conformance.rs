//! Declaring axioms and checking a structure against them.
//!
//! Structures never satisfy their signature implicitly: the checker reports
//! every axiom instance, with a witness tuple for each violation.
//!
//! ```bash
//! cargo run --example check_conformance
//! ```

use std::sync::Arc;

use amalgam::check_conformance;
use amalgam::structure::{Property, PropertySet, Signature, StructureBuilder};

fn main() -> amalgam::Result<()> {
    let poset = Arc::new(Signature::single(
        "leq",
        PropertySet::of([
            Property::Transitive,
            Property::Reflexive,
            Property::Antisymmetric,
        ]),
    ));

    let chain = StructureBuilder::new(&poset)
        .elements(["0", "1", "2"])
        .loops("leq", ["0", "1", "2"])
        .pairs("leq", [("0", "1"), ("1", "2"), ("0", "2")])
        .finish()?;
    println!("three-chain against the partial-order axioms:");
    print!("{}", check_conformance(&chain).render());

    // A two-cycle passes transitivity and reflexivity but not antisymmetry;
    // the report names the offending pair.
    let cycle = StructureBuilder::new(&poset)
        .elements(["d", "e"])
        .loops("leq", ["d", "e"])
        .pairs("leq", [("d", "e"), ("e", "d")])
        .finish()?;
    println!("\ntwo-cycle against the same axioms:");
    print!("{}", check_conformance(&cycle).render());
    Ok(())
}
