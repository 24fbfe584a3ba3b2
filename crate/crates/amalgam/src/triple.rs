//! Validated triples to be amalgamated.

use std::collections::BTreeSet;

use crate::conformance::check_conformance;
use crate::error::{Error, Result};
use crate::structure::{is_substructure, ElementId, Structure};

/// A triple (A, B, C) ready for amalgamation: all three share one signature
/// and conform to it, C is the literal intersection of the domains, and C is
/// a substructure of both sides. C may be empty.
#[derive(Clone, Debug)]
pub struct TbaTriple {
    a: Structure,
    b: Structure,
    c: Structure,
}

impl TbaTriple {
    pub fn a(&self) -> &Structure {
        &self.a
    }

    pub fn b(&self) -> &Structure {
        &self.b
    }

    pub fn c(&self) -> &Structure {
        &self.c
    }

    /// Elements of A outside the shared part, ascending.
    pub fn only_a(&self) -> Vec<ElementId> {
        self.a
            .domain()
            .iter()
            .filter(|e| !self.c.contains(e))
            .cloned()
            .collect()
    }

    /// Elements of B outside the shared part, ascending.
    pub fn only_b(&self) -> Vec<ElementId> {
        self.b
            .domain()
            .iter()
            .filter(|e| !self.c.contains(e))
            .cloned()
            .collect()
    }

    /// The union domain, ascending.
    pub fn union_domain(&self) -> Vec<ElementId> {
        let mut d: Vec<ElementId> = self.a.domain().to_vec();
        d.extend(self.only_b());
        d.sort();
        d
    }

    /// Which side an element comes from, preferring A for shared elements.
    pub fn side_of(&self, e: &ElementId) -> Option<&Structure> {
        if self.a.contains(e) {
            Some(&self.a)
        } else if self.b.contains(e) {
            Some(&self.b)
        } else {
            None
        }
    }

    pub(crate) fn from_parts_unchecked(a: Structure, b: Structure, c: Structure) -> Self {
        TbaTriple { a, b, c }
    }
}

/// Validates a triple: shared signature, `C = A \u{2229} B` as element sets,
/// C a substructure of both sides, and all three structures conformant.
pub fn validate_tba(a: Structure, b: Structure, c: Structure) -> Result<TbaTriple> {
    if !a.same_signature(&b) || !a.same_signature(&c) {
        return Err(Error::SignatureMismatch);
    }

    let inter: BTreeSet<&ElementId> = a.domain().iter().filter(|e| b.contains(e)).collect();
    for e in c.domain() {
        if !inter.contains(e) {
            return Err(Error::DomainMismatch(e.clone()));
        }
    }
    for e in inter {
        if !c.contains(e) {
            return Err(Error::DomainMismatch(e.clone()));
        }
    }

    if !is_substructure(&c, &a)? {
        return Err(Error::NotSubstructure("C", "A"));
    }
    if !is_substructure(&c, &b)? {
        return Err(Error::NotSubstructure("C", "B"));
    }

    for (which, s) in [("A", &a), ("B", &b), ("C", &c)] {
        let report = check_conformance(s);
        if !report.all_passed() {
            return Err(Error::NotConformant {
                which: match which {
                    "A" => "A",
                    "B" => "B",
                    _ => "C",
                },
                report: Box::new(report),
            });
        }
    }

    Ok(TbaTriple { a, b, c })
}
