//! Constructive strong amalgamation.
//!
//! The two raw constructors build one relation of the amalgam directly:
//! [`amalgamate_union`] takes the plain union of the two extents and
//! [`amalgamate_transitive`] adds the two-sided compositions through the
//! shared part. The raw constructors perform no precondition policing, so
//! misapplications stay reproducible (see catalog entry `rem41`); the
//! dispatchers [`amalgamate_single`] and [`amalgamate_pair`] are the safe
//! API and reject signatures outside the supported classes.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::conformance::{AxiomId, CheckEntry, VerificationReport};
use crate::error::{Error, Result};
use crate::structure::{ElementId, Property, PropertySet, RelationDecl, Signature, Structure};
use crate::triple::{validate_tba, TbaTriple};

/// Witness map for one relation: cross pair -> shared middle element.
pub type WitnessMap = BTreeMap<(ElementId, ElementId), ElementId>;

/// A strong amalgam: a structure over the union domain in which both sides
/// embed unchanged, together with one witness per cross pair showing the
/// two-step path through the shared part.
#[derive(Clone, Debug)]
pub struct Amalgam {
    pub d: Structure,
    /// Per relation name, a witness for every cross pair of its extent.
    /// Empty maps are the vacuous case: the construction produced no cross
    /// pairs.
    pub witnesses: BTreeMap<String, WitnessMap>,
}

fn rel_index(t: &TbaTriple, rel: &str) -> Result<usize> {
    t.a()
        .signature()
        .relation_index(rel)
        .ok_or_else(|| Error::UnknownRelation(rel.to_owned()))
}

/// The union extent over the union domain: `d R e` iff both lie in A and
/// `d R_A e`, or both lie in B and `d R_B e`. Cross pairs never appear.
pub fn amalgamate_union(t: &TbaTriple, rel: &str) -> Result<BTreeSet<(ElementId, ElementId)>> {
    rel_index(t, rel)?;
    let mut out = t.a().extent(rel)?;
    out.extend(t.b().extent(rel)?);
    Ok(out)
}

/// The transitive-case extent: the union plus both compositions routed
/// through the shared part, `R_A \u{2218} R_B` and `R_B \u{2218} R_A`. For
/// each produced cross pair one witnessing middle element is returned, ties
/// broken by lexicographically least token. Intended for relations that are
/// transitive on both sides; nothing is enforced, so misapplied calls
/// faithfully reproduce their failures.
pub fn amalgamate_transitive(
    t: &TbaTriple,
    rel: &str,
) -> Result<(BTreeSet<(ElementId, ElementId)>, WitnessMap)> {
    rel_index(t, rel)?;
    let mut pairs = amalgamate_union(t, rel)?;
    let only_a: BTreeSet<ElementId> = t.only_a().into_iter().collect();
    let only_b: BTreeSet<ElementId> = t.only_b().into_iter().collect();
    let mut witnesses = WitnessMap::new();

    // c iterates the shared domain ascending, so the first witness recorded
    // for a pair is the lexicographically least one.
    for (first, second) in [(t.a(), t.b()), (t.b(), t.a())] {
        for c in t.c().domain() {
            for d in first.domain() {
                if !first.related(rel, d, c) {
                    continue;
                }
                for e in second.domain() {
                    if !second.related(rel, c, e) {
                        continue;
                    }
                    pairs.insert((d.clone(), e.clone()));
                    let cross = (only_a.contains(d) && only_b.contains(e))
                        || (only_b.contains(d) && only_a.contains(e));
                    if cross {
                        witnesses
                            .entry((d.clone(), e.clone()))
                            .or_insert_with(|| c.clone());
                    }
                }
            }
        }
    }
    Ok((pairs, witnesses))
}

/// Merges the two operation tables over the union domain: `f(x) = f_A(x)`
/// for `x` in A and `f(x) = f_B(x)` for `x` in B. Well defined for a valid
/// triple because the tables agree on the shared part; the disagreement
/// guard cannot fire for validated input but is kept anyway.
pub fn extend_operations(t: &TbaTriple, d: &Structure) -> Result<Structure> {
    let union = t.union_domain();
    if d.domain() != union.as_slice() {
        let diff = union
            .iter()
            .find(|e| !d.contains(e))
            .or_else(|| d.domain().iter().find(|e| !union.contains(e)))
            .cloned()
            .unwrap_or_else(|| ElementId::new("?").unwrap());
        return Err(Error::DomainMismatch(diff));
    }
    let tables = merged_tables(t, &union)?;
    let extents = (0..d.signature().relations().len())
        .map(|r| d.extent_bits(r).to_vec())
        .collect();
    Ok(Structure::from_parts(
        Arc::clone(d.signature()),
        union,
        extents,
        tables,
    ))
}

fn merged_tables(t: &TbaTriple, union: &[ElementId]) -> Result<Vec<Vec<usize>>> {
    let sig = t.a().signature();
    let mut tables = Vec::with_capacity(sig.operations().len());
    for spec in sig.operations() {
        for c in t.c().domain() {
            let va = t.a().apply(&spec.name, c)?;
            let vb = t.b().apply(&spec.name, c)?;
            if va != vb {
                return Err(Error::Inconsistent {
                    op: spec.name.clone(),
                    element: c.clone(),
                });
            }
        }
        let mut table = Vec::with_capacity(union.len());
        for e in union {
            let img = if t.a().contains(e) {
                t.a().apply(&spec.name, e)?
            } else {
                t.b().apply(&spec.name, e)?
            };
            let idx = union
                .binary_search(&img)
                .map_err(|_| Error::UnknownElement(img.clone()))?;
            table.push(idx);
        }
        tables.push(table);
    }
    Ok(tables)
}

/// Assembles a structure over the union domain from one token pair set per
/// relation (in signature order), merging the operation tables.
fn assemble(t: &TbaTriple, extents: Vec<BTreeSet<(ElementId, ElementId)>>) -> Result<Structure> {
    let sig = Arc::clone(t.a().signature());
    let union = t.union_domain();
    let n = union.len();
    let mut bits = vec![vec![false; n * n]; sig.relations().len()];
    for (r, pairs) in extents.iter().enumerate() {
        for (x, y) in pairs {
            let i = union.binary_search(x).expect("pair inside union domain");
            let j = union.binary_search(y).expect("pair inside union domain");
            bits[r][i * n + j] = true;
        }
    }
    let tables = merged_tables(t, &union)?;
    Ok(Structure::from_parts(sig, union, bits, tables))
}

fn op_support_single(sig: &Signature) -> Result<()> {
    let p = sig.relations()[0].properties;
    for spec in sig.operations() {
        if spec.strict
            && !spec.bijective
            && !(p.contains(Property::Transitive) && p.contains(Property::Antisymmetric))
        {
            return Err(Error::UnsupportedSignature(format!(
                "strict operation {} on a relation without both transitivity and antisymmetry \
                 (and not bijective): no amalgam exists in general, see catalog entry prop42",
                spec.name
            )));
        }
    }
    Ok(())
}

/// Strong amalgamation for signatures with exactly one relation symbol.
///
/// The relation is built by [`amalgamate_union`] when transitivity is not
/// among the declared properties and by [`amalgamate_transitive`] when it
/// is; operations extend by table union. Strict operation specs are
/// accepted only when bijective or when the property set contains both
/// transitivity and antisymmetry (where the construction agrees with the
/// strict-reflection route); everything else is rejected loudly.
pub fn amalgamate_single(t: &TbaTriple) -> Result<Amalgam> {
    let sig = t.a().signature();
    if sig.relations().len() != 1 {
        return Err(Error::UnsupportedSignature(format!(
            "amalgamate_single needs exactly one relation symbol, found {}",
            sig.relations().len()
        )));
    }
    op_support_single(sig)?;
    let decl = &sig.relations()[0];
    let (pairs, witnesses) = if decl.properties.contains(Property::Transitive) {
        amalgamate_transitive(t, &decl.name)?
    } else {
        (amalgamate_union(t, &decl.name)?, WitnessMap::new())
    };
    let d = assemble(t, vec![pairs])?;
    Ok(Amalgam {
        d,
        witnesses: BTreeMap::from([(decl.name.clone(), witnesses)]),
    })
}

fn op_support_pair(sig: &Signature, finer: usize, coarser: usize) -> Result<()> {
    for (o, spec) in sig.operations().iter().enumerate() {
        for set in [sig.preserved_by(o), sig.reversed_by(o)] {
            if set.contains(&coarser) && !set.contains(&finer) {
                return Err(Error::UnsupportedSignature(format!(
                    "operation {} touches only the coarser relation {}: no amalgam exists in \
                     general, see catalog entries thm31C and thm31D",
                    spec.name,
                    sig.relations()[coarser].name
                )));
            }
        }
        if spec.strict && !spec.bijective {
            return Err(Error::UnsupportedSignature(format!(
                "strict non-bijective operation {} is not supported with two relations",
                spec.name
            )));
        }
    }
    Ok(())
}

/// Strong amalgamation for signatures with exactly two relation symbols, a
/// finer one and a coarser one.
///
/// Dispatches on which sides are transitive: both non-transitive takes the
/// union for both, both transitive the transitive construction for both,
/// only the coarser mixes union below transitive. When only the finer
/// relation is transitive, the coarser one is completed from the finer
/// cross pairs, symmetrically when the coarser relation is required to be
/// symmetric. Superamalgamation witnesses are recorded for both relations.
pub fn amalgamate_pair(t: &TbaTriple) -> Result<Amalgam> {
    let sig = t.a().signature();
    if sig.relations().len() != 2 {
        return Err(Error::UnsupportedSignature(format!(
            "amalgamate_pair needs exactly two relation symbols, found {}{}",
            sig.relations().len(),
            if sig.relations().len() > 2 {
                "; three or more comparable relations have no amalgamation in general, see \
                 catalog entries prop35a, prop35b and prop35c"
            } else {
                ""
            }
        )));
    }
    if sig.coarser_pairs().len() != 1 {
        return Err(Error::UnsupportedSignature(format!(
            "amalgamate_pair needs exactly one coarseness pair, found {}",
            sig.coarser_pairs().len()
        )));
    }
    let (finer, coarser) = sig.coarser_pairs()[0];
    op_support_pair(sig, finer, coarser)?;

    let rname = sig.relations()[finer].name.clone();
    let sname = sig.relations()[coarser].name.clone();
    let p = sig.relations()[finer].properties;
    let q = sig.relations()[coarser].properties;

    let (r_pairs, r_wits) = if p.contains(Property::Transitive) {
        amalgamate_transitive(t, &rname)?
    } else {
        (amalgamate_union(t, &rname)?, WitnessMap::new())
    };

    let (s_pairs, s_wits) = if q.contains(Property::Transitive) {
        amalgamate_transitive(t, &sname)?
    } else if p.contains(Property::Transitive) {
        // The exceptional case: transitive finer relation, non-transitive
        // coarser one. The coarser extent is the union closed under the
        // finer cross pairs (in both directions when it must be symmetric),
        // and its witnesses come straight from the finer ones.
        let mut s = amalgamate_union(t, &sname)?;
        let mut wits = WitnessMap::new();
        for ((x, y), c) in &r_wits {
            s.insert((x.clone(), y.clone()));
            wits.entry((x.clone(), y.clone()))
                .or_insert_with(|| c.clone());
            if q.contains(Property::Symmetric) {
                s.insert((y.clone(), x.clone()));
                wits.entry((y.clone(), x.clone()))
                    .or_insert_with(|| c.clone());
            }
        }
        // In-side pairs of the finer output are already coarser inside their
        // own side; only the cross pairs above are new.
        (s, wits)
    } else {
        (amalgamate_union(t, &sname)?, WitnessMap::new())
    };

    let mut extents = vec![BTreeSet::new(), BTreeSet::new()];
    extents[finer] = r_pairs;
    extents[coarser] = s_pairs;
    let d = assemble(t, extents)?;
    Ok(Amalgam {
        d,
        witnesses: BTreeMap::from([(rname, r_wits), (sname, s_wits)]),
    })
}

/// Shape and operation guards shared by the dispatchers and the stage
/// builder: one relation, or two relations with one coarseness pair, with
/// the operation specs inside the supported family.
pub(crate) fn ensure_supported_class(sig: &Signature) -> Result<()> {
    match sig.relations().len() {
        1 => op_support_single(sig),
        2 if sig.coarser_pairs().len() == 1 => {
            let (finer, coarser) = sig.coarser_pairs()[0];
            op_support_pair(sig, finer, coarser)
        }
        2 => Err(Error::UnsupportedSignature(
            "two relations without a coarseness pair are not a supported class".to_owned(),
        )),
        n => Err(Error::UnsupportedSignature(format!(
            "{} relations are not a supported class; three or more comparable relations have no \
             amalgamation in general, see catalog entries prop35a, prop35b and prop35c",
            n
        ))),
    }
}

/// Dispatches on the signature shape: one relation goes to
/// [`amalgamate_single`], two relations with one coarseness pair go to
/// [`amalgamate_pair`].
pub fn amalgamate_auto(t: &TbaTriple) -> Result<Amalgam> {
    let sig = t.a().signature();
    match sig.relations().len() {
        1 => amalgamate_single(t),
        2 if sig.coarser_pairs().len() == 1 => amalgamate_pair(t),
        2 => Err(Error::UnsupportedSignature(
            "two relations without a coarseness pair are not a supported class".to_owned(),
        )),
        n => Err(Error::UnsupportedSignature(format!(
            "{} relations are not a supported class; three or more comparable relations have no \
             amalgamation in general, see catalog entries prop35a, prop35b and prop35c",
            n
        ))),
    }
}

/// Independently re-derives superamalgamation witnesses for one relation of
/// a candidate amalgam: every cross pair must factor as a two-step path
/// through the shared part. Returns the verification report and the witness
/// map found; failing entries list the unwitnessed cross pairs.
pub fn superamalgamation_witnesses(
    d: &Structure,
    t: &TbaTriple,
    rel: &str,
) -> Result<(VerificationReport, WitnessMap)> {
    rel_index(t, rel)?;
    let only_a: BTreeSet<ElementId> = t.only_a().into_iter().collect();
    let only_b: BTreeSet<ElementId> = t.only_b().into_iter().collect();
    let mut report = VerificationReport::default();
    let mut map = WitnessMap::new();
    for (x, y) in d.extent(rel)? {
        let cross = (only_a.contains(&x) && only_b.contains(&y))
            || (only_b.contains(&x) && only_a.contains(&y));
        if !cross {
            continue;
        }
        let side_x = if only_a.contains(&x) { t.a() } else { t.b() };
        let side_y = if only_a.contains(&y) { t.a() } else { t.b() };
        let witness = t
            .c()
            .domain()
            .iter()
            .find(|c| side_x.related(rel, &x, c) && side_y.related(rel, c, &y));
        let axiom = AxiomId::Witnessed {
            rel: rel.to_owned(),
            x: x.clone(),
            y: y.clone(),
        };
        match witness {
            Some(c) => {
                map.insert((x, y), c.clone());
                report.push(CheckEntry::pass(axiom));
            }
            None => report.push(CheckEntry::fail(axiom, vec![x, y])),
        }
    }
    Ok((report, map))
}

/// The strict reflection of one relation: drops every loop from the extent.
/// When the input relation was annotated exactly transitive + reflexive +
/// antisymmetric the output annotation is transitive + antireflexive +
/// antisymmetric; any other annotation is dropped and must be re-checked.
pub fn strict_of(s: &Structure, rel: &str) -> Result<Structure> {
    let r = s
        .signature()
        .relation_index(rel)
        .ok_or_else(|| Error::UnknownRelation(rel.to_owned()))?;
    let old = s.signature();
    let poset = PropertySet::of([
        Property::Transitive,
        Property::Reflexive,
        Property::Antisymmetric,
    ]);
    let strict_poset = PropertySet::of([
        Property::Transitive,
        Property::Antireflexive,
        Property::Antisymmetric,
    ]);
    let relations = old
        .relations()
        .iter()
        .enumerate()
        .map(|(i, decl)| RelationDecl {
            name: decl.name.clone(),
            properties: if i != r {
                decl.properties
            } else if decl.properties == poset {
                strict_poset
            } else {
                PropertySet::empty()
            },
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
    let sig = Arc::new(Signature::new(
        relations,
        coarser,
        old.operations().to_vec(),
    )?);

    let n = s.len();
    let mut extents: Vec<Vec<bool>> = (0..old.relations().len())
        .map(|i| s.extent_bits(i).to_vec())
        .collect();
    for i in 0..n {
        extents[r][i * n + i] = false;
    }
    let tables = (0..old.operations().len())
        .map(|o| (0..n).map(|i| s.op_at(o, i)).collect())
        .collect();
    Ok(Structure::from_parts(
        sig,
        s.domain().to_vec(),
        extents,
        tables,
    ))
}

/// Joint embedding: amalgamates two structures with disjoint domains over
/// the empty shared part, through the regular dispatcher.
pub fn joint_embedding(a: &Structure, b: &Structure) -> Result<Amalgam> {
    if !a.same_signature(b) {
        return Err(Error::SignatureMismatch);
    }
    if let Some(e) = a.domain().iter().find(|e| b.contains(e)) {
        return Err(Error::DomainsOverlap(e.clone()));
    }
    let c = Structure::empty(Arc::clone(a.signature()));
    let t = validate_tba(a.clone(), b.clone(), c)?;
    amalgamate_auto(&t)
}
