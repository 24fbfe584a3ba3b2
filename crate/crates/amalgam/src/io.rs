//! The JSON interchange format.
//!
//! A structure document has the top-level keys `signature`, `domain`,
//! `relations` and `operations`. Pair lists are order-insensitive and
//! duplicates are rejected; writing is canonical (sorted keys and pair
//! lists), so documents round-trip byte-identically.
//!
//! An amalgam document is a structure document with one extra `witnesses`
//! key mapping each relation to a list of `[x, y, c]` triples.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::amalgamation::{Amalgam, WitnessMap};
use crate::error::{Error, Result};
use crate::structure::{
    ElementId, OperationSpec, Property, PropertySet, RelationDecl, Signature, Structure,
};

#[derive(Serialize, Deserialize, Default)]
struct RelationDoc {
    name: String,
    #[serde(default)]
    properties: Vec<String>,
}

#[derive(Serialize, Deserialize, Default)]
struct OperationDoc {
    name: String,
    #[serde(default)]
    preserves: Vec<String>,
    #[serde(default)]
    reverses: Vec<String>,
    #[serde(default)]
    strict: bool,
    #[serde(default)]
    bijective: bool,
}

#[derive(Serialize, Deserialize, Default)]
struct SignatureDoc {
    relations: Vec<RelationDoc>,
    #[serde(default)]
    coarser_than: Vec<(String, String)>,
    #[serde(default)]
    operations: Vec<OperationDoc>,
}

type WitnessDoc = BTreeMap<String, Vec<(String, String, String)>>;

#[derive(Serialize, Deserialize)]
struct StructureDoc {
    signature: SignatureDoc,
    domain: Vec<String>,
    #[serde(default)]
    relations: BTreeMap<String, Vec<(String, String)>>,
    #[serde(default)]
    operations: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    witnesses: Option<WitnessDoc>,
}

fn signature_from_doc(doc: &SignatureDoc) -> Result<Arc<Signature>> {
    let mut relations = Vec::new();
    for r in &doc.relations {
        let mut props = PropertySet::empty();
        for p in &r.properties {
            let prop = Property::from_name(p)
                .ok_or_else(|| Error::Parse(format!("unknown property {:?}", p)))?;
            props = props.with(prop);
        }
        relations.push(RelationDecl {
            name: r.name.clone(),
            properties: props,
        });
    }
    let operations = doc
        .operations
        .iter()
        .map(|o| OperationSpec {
            name: o.name.clone(),
            preserves: o.preserves.iter().cloned().collect(),
            reverses: o.reverses.iter().cloned().collect(),
            strict: o.strict,
            bijective: o.bijective,
        })
        .collect();
    Ok(Arc::new(Signature::new(
        relations,
        doc.coarser_than.clone(),
        operations,
    )?))
}

fn signature_to_doc(sig: &Signature) -> SignatureDoc {
    SignatureDoc {
        relations: sig
            .relations()
            .iter()
            .map(|r| RelationDoc {
                name: r.name.clone(),
                properties: r.properties.iter().map(|p| p.name().to_owned()).collect(),
            })
            .collect(),
        coarser_than: sig
            .coarser_pairs()
            .iter()
            .map(|&(f, c)| {
                (
                    sig.relations()[f].name.clone(),
                    sig.relations()[c].name.clone(),
                )
            })
            .collect(),
        operations: sig
            .operations()
            .iter()
            .map(|o| OperationDoc {
                name: o.name.clone(),
                preserves: o.preserves.iter().cloned().collect(),
                reverses: o.reverses.iter().cloned().collect(),
                strict: o.strict,
                bijective: o.bijective,
            })
            .collect(),
    }
}

fn structure_from_doc(doc: &StructureDoc) -> Result<Structure> {
    let sig = signature_from_doc(&doc.signature)?;
    let domain = doc
        .domain
        .iter()
        .map(|t| ElementId::new(t.clone()))
        .collect::<Result<Vec<_>>>()?;
    let mut relations = BTreeMap::new();
    for (name, pairs) in &doc.relations {
        let pairs = pairs
            .iter()
            .map(|(x, y)| Ok((ElementId::new(x.clone())?, ElementId::new(y.clone())?)))
            .collect::<Result<Vec<_>>>()?;
        relations.insert(name.clone(), pairs);
    }
    let mut operations = BTreeMap::new();
    for (name, table) in &doc.operations {
        let table = table
            .iter()
            .map(|(x, y)| Ok((ElementId::new(x.clone())?, ElementId::new(y.clone())?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        operations.insert(name.clone(), table);
    }
    Structure::new(sig, domain, &relations, &operations)
}

fn structure_to_doc(s: &Structure) -> StructureDoc {
    let mut relations = BTreeMap::new();
    for decl in s.signature().relations() {
        let pairs: Vec<(String, String)> = s
            .extent(&decl.name)
            .expect("declared relation")
            .into_iter()
            .map(|(x, y)| (x.as_str().to_owned(), y.as_str().to_owned()))
            .collect();
        relations.insert(decl.name.clone(), pairs);
    }
    let mut operations = BTreeMap::new();
    for spec in s.signature().operations() {
        let table: BTreeMap<String, String> = s
            .table(&spec.name)
            .expect("declared operation")
            .into_iter()
            .map(|(x, y)| (x.as_str().to_owned(), y.as_str().to_owned()))
            .collect();
        operations.insert(spec.name.clone(), table);
    }
    StructureDoc {
        signature: signature_to_doc(s.signature()),
        domain: s.domain().iter().map(|e| e.as_str().to_owned()).collect(),
        relations,
        operations,
        witnesses: None,
    }
}

/// Parses a structure document.
pub fn structure_from_json(text: &str) -> Result<Structure> {
    let doc: StructureDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    structure_from_doc(&doc)
}

/// Canonical rendering of a structure document.
pub fn structure_to_json(s: &Structure) -> String {
    serde_json::to_string_pretty(&structure_to_doc(s)).expect("serializable") + "\n"
}

/// Canonical rendering of an amalgam: the structure plus its witnesses.
pub fn amalgam_to_json(a: &Amalgam) -> String {
    let mut doc = structure_to_doc(&a.d);
    doc.witnesses = Some(
        a.witnesses
            .iter()
            .map(|(rel, map)| {
                (
                    rel.clone(),
                    map.iter()
                        .map(|((x, y), c)| {
                            (
                                x.as_str().to_owned(),
                                y.as_str().to_owned(),
                                c.as_str().to_owned(),
                            )
                        })
                        .collect(),
                )
            })
            .collect(),
    );
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

/// Parses an amalgam document back into the structure and its witness maps.
pub fn amalgam_from_json(text: &str) -> Result<(Structure, BTreeMap<String, WitnessMap>)> {
    let doc: StructureDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let s = structure_from_doc(&doc)?;
    let mut witnesses = BTreeMap::new();
    if let Some(w) = &doc.witnesses {
        for (rel, triples) in w {
            let mut map = WitnessMap::new();
            for (x, y, c) in triples {
                map.insert(
                    (ElementId::new(x.clone())?, ElementId::new(y.clone())?),
                    ElementId::new(c.clone())?,
                );
            }
            witnesses.insert(rel.clone(), map);
        }
    }
    Ok((s, witnesses))
}

/// Parses a signature from either a bare signature object, a document with a
/// `signature` key, or a full structure document (whose domain is ignored).
pub fn signature_from_json(text: &str) -> Result<Arc<Signature>> {
    #[derive(Deserialize)]
    struct Wrapper {
        signature: SignatureDoc,
    }
    if let Ok(w) = serde_json::from_str::<Wrapper>(text) {
        return signature_from_doc(&w.signature);
    }
    let doc: SignatureDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    signature_from_doc(&doc)
}
