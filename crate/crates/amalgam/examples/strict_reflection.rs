//! Passing between a partial order and its strict part commutes with
//! amalgamation: reflecting first and amalgamating equals amalgamating
//! first and reflecting, as exact extent equality.
//!
//! ```bash
//! cargo run --example strict_reflection
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

use amalgam::gen::random_triple;
use amalgam::structure::{Property, PropertySet, Signature};
use amalgam::triple::validate_tba;
use amalgam::{amalgamate_single, strict_of};

fn main() -> amalgam::Result<()> {
    let sig = Arc::new(Signature::single(
        "leq",
        PropertySet::of([
            Property::Transitive,
            Property::Reflexive,
            Property::Antisymmetric,
        ]),
    ));
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    let mut agreements = 0;
    for _ in 0..50 {
        let t = random_triple(&sig, 6, &mut rng);

        // Route one: amalgamate, then drop the loops.
        let direct = strict_of(&amalgamate_single(&t)?.d, "leq")?;

        // Route two: drop the loops everywhere, then amalgamate.
        let st = validate_tba(
            strict_of(t.a(), "leq")?,
            strict_of(t.b(), "leq")?,
            strict_of(t.c(), "leq")?,
        )?;
        let reflected = amalgamate_single(&st)?.d;

        assert_eq!(direct.extent("leq")?, reflected.extent("leq")?);
        agreements += 1;
    }
    println!("both routes agreed on {} random poset triples", agreements);

    // The annotation bookkeeping: a poset annotation turns into the strict
    // one, anything else is dropped for re-checking.
    let poset_probe = random_triple(&sig, 4, &mut rng);
    let strict = strict_of(poset_probe.a(), "leq")?;
    let props = strict.signature().relations()[0].properties;
    println!(
        "strict annotation: transitive={} antireflexive={} antisymmetric={}",
        props.contains(Property::Transitive),
        props.contains(Property::Antireflexive),
        props.contains(Property::Antisymmetric),
    );
    Ok(())
}
