//! Checking a structure against the axioms its signature declares.
//!
//! Conformance is never assumed and never checked implicitly: a [`Structure`]
//! may violate every axiom of its signature and remain a perfectly valid
//! structure. [`check_conformance`] reports one entry per axiom instance with
//! a concrete witness tuple for every failure.

use std::fmt;

use crate::structure::{ElementId, Property, Structure};

/// Identifier of a single checked axiom or checked fact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AxiomId {
    /// One of the five properties for one relation.
    Property { rel: String, prop: Property },
    /// Coarseness: every finer pair is a coarser pair.
    Coarseness { finer: String, coarser: String },
    /// `x R y` implies `f(x) R f(y)`; the strict form also forces
    /// `f(x) != f(y)` when `x != y` (and is only quantified over `x != y`).
    Preserves {
        op: String,
        rel: String,
        strict: bool,
    },
    /// `x R y` implies `f(y) R f(x)`, strict variant analogous.
    Reverses {
        op: String,
        rel: String,
        strict: bool,
    },
    /// The operation table is a bijection of the domain.
    Bijective { op: String },
    /// A cross pair of an amalgam has a two-step witness through the shared
    /// part.
    Witnessed {
        rel: String,
        x: ElementId,
        y: ElementId,
    },
    /// A one-point extension type over a base is realized by some element.
    ExtensionRealized {
        base: Vec<ElementId>,
        type_index: usize,
    },
    /// A partial isomorphism extends over every single additional point.
    IsoExtends { map: Vec<(ElementId, ElementId)> },
    /// Free-form fact checked by a verifier.
    Fact(String),
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomId::Property { rel, prop } => write!(f, "{}({})", prop.name(), rel),
            AxiomId::Coarseness { finer, coarser } => write!(f, "coarser({},{})", finer, coarser),
            AxiomId::Preserves { op, rel, strict } => {
                write!(
                    f,
                    "{}preserves({},{})",
                    if *strict { "strict-" } else { "" },
                    op,
                    rel
                )
            }
            AxiomId::Reverses { op, rel, strict } => {
                write!(
                    f,
                    "{}reverses({},{})",
                    if *strict { "strict-" } else { "" },
                    op,
                    rel
                )
            }
            AxiomId::Bijective { op } => write!(f, "bijective({})", op),
            AxiomId::Witnessed { rel, x, y } => write!(f, "witnessed({},{},{})", rel, x, y),
            AxiomId::ExtensionRealized { base, type_index } => {
                write!(f, "extension([")?;
                for (i, e) in base.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", e)?;
                }
                write!(f, "],#{})", type_index)
            }
            AxiomId::IsoExtends { map } => {
                write!(f, "extends(")?;
                for (i, (x, y)) in map.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}->{}", x, y)?;
                }
                write!(f, ")")
            }
            AxiomId::Fact(s) => f.write_str(s),
        }
    }
}

/// One checked axiom instance. A failed entry always carries a witness tuple.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckEntry {
    pub axiom: AxiomId,
    pub passed: bool,
    pub witness: Option<Vec<ElementId>>,
}

impl CheckEntry {
    pub fn pass(axiom: AxiomId) -> Self {
        CheckEntry {
            axiom,
            passed: true,
            witness: None,
        }
    }

    pub fn fail(axiom: AxiomId, witness: Vec<ElementId>) -> Self {
        CheckEntry {
            axiom,
            passed: false,
            witness: Some(witness),
        }
    }
}

/// Outcome of a batch of checks. `checked`/`passed` count every instance even
/// when (as in the large Fraisse sweeps) only failures are kept as entries.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct VerificationReport {
    pub entries: Vec<CheckEntry>,
    pub checked: u64,
    pub passed: u64,
}

impl VerificationReport {
    pub fn push(&mut self, entry: CheckEntry) {
        self.checked += 1;
        if entry.passed {
            self.passed += 1;
        }
        self.entries.push(entry);
    }

    /// Records an outcome without keeping a pass entry; failures are kept.
    pub fn tally(&mut self, entry: CheckEntry) {
        self.checked += 1;
        if entry.passed {
            self.passed += 1;
        } else {
            self.entries.push(entry);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checked == self.passed
    }

    pub fn fraction(&self) -> f64 {
        if self.checked == 0 {
            1.0
        } else {
            self.passed as f64 / self.checked as f64
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }

    /// Canonical plain-text rendering, one line per kept entry.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!(
                "{}: {}{}\n",
                e.axiom,
                if e.passed { "pass" } else { "FAIL" },
                match &e.witness {
                    Some(w) => format!(
                        " [{}]",
                        w.iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                    None => String::new(),
                }
            ));
        }
        out.push_str(&format!("passed {}/{}\n", self.passed, self.checked));
        out
    }
}

fn ids(s: &Structure, indices: &[usize]) -> Vec<ElementId> {
    indices.iter().map(|&i| s.domain()[i].clone()).collect()
}

fn check_property(s: &Structure, rel: usize, prop: Property) -> Option<Vec<usize>> {
    let n = s.len();
    match prop {
        Property::Transitive => {
            for i in 0..n {
                for j in 0..n {
                    if !s.rel_at(rel, i, j) {
                        continue;
                    }
                    for k in 0..n {
                        if s.rel_at(rel, j, k) && !s.rel_at(rel, i, k) {
                            return Some(vec![i, j, k]);
                        }
                    }
                }
            }
            None
        }
        Property::Reflexive => (0..n).find(|&i| !s.rel_at(rel, i, i)).map(|i| vec![i]),
        Property::Symmetric => {
            for i in 0..n {
                for j in 0..n {
                    if s.rel_at(rel, i, j) && !s.rel_at(rel, j, i) {
                        return Some(vec![i, j]);
                    }
                }
            }
            None
        }
        Property::Antireflexive => (0..n).find(|&i| s.rel_at(rel, i, i)).map(|i| vec![i]),
        Property::Antisymmetric => {
            for i in 0..n {
                for j in 0..n {
                    if i != j && s.rel_at(rel, i, j) && s.rel_at(rel, j, i) {
                        return Some(vec![i, j]);
                    }
                }
            }
            None
        }
    }
}

fn check_op_axiom(
    s: &Structure,
    op: usize,
    rel: usize,
    reversed: bool,
    strict: bool,
) -> Option<Vec<usize>> {
    let n = s.len();
    for i in 0..n {
        for j in 0..n {
            if !s.rel_at(rel, i, j) || (strict && i == j) {
                continue;
            }
            let (fi, fj) = (s.op_at(op, i), s.op_at(op, j));
            let holds = if reversed {
                s.rel_at(rel, fj, fi) && (!strict || fi != fj)
            } else {
                s.rel_at(rel, fi, fj) && (!strict || fi != fj)
            };
            if !holds {
                return Some(vec![i, j]);
            }
        }
    }
    None
}

/// Checks every axiom instance the signature declares: one entry per
/// (relation, property) pair, per coarseness pair, and per (operation,
/// preserved or reversed relation) pair, with strictness folded into the
/// operation entries and one bijectivity entry per flagged operation.
/// Universal axioms hold vacuously on the empty structure.
pub fn check_conformance(s: &Structure) -> VerificationReport {
    let mut report = VerificationReport::default();
    let sig = s.signature();
    let n = s.len();

    for (r, decl) in sig.relations().iter().enumerate() {
        for prop in decl.properties.iter() {
            let axiom = AxiomId::Property {
                rel: decl.name.clone(),
                prop,
            };
            match check_property(s, r, prop) {
                None => report.push(CheckEntry::pass(axiom)),
                Some(w) => report.push(CheckEntry::fail(axiom, ids(s, &w))),
            }
        }
    }

    for &(finer, coarser) in sig.coarser_pairs() {
        let axiom = AxiomId::Coarseness {
            finer: sig.relations()[finer].name.clone(),
            coarser: sig.relations()[coarser].name.clone(),
        };
        let mut witness = None;
        'outer: for i in 0..n {
            for j in 0..n {
                if s.rel_at(finer, i, j) && !s.rel_at(coarser, i, j) {
                    witness = Some(vec![i, j]);
                    break 'outer;
                }
            }
        }
        match witness {
            None => report.push(CheckEntry::pass(axiom)),
            Some(w) => report.push(CheckEntry::fail(axiom, ids(s, &w))),
        }
    }

    for (o, spec) in sig.operations().iter().enumerate() {
        for &r in sig.preserved_by(o) {
            let axiom = AxiomId::Preserves {
                op: spec.name.clone(),
                rel: sig.relations()[r].name.clone(),
                strict: spec.strict,
            };
            match check_op_axiom(s, o, r, false, spec.strict) {
                None => report.push(CheckEntry::pass(axiom)),
                Some(w) => report.push(CheckEntry::fail(axiom, ids(s, &w))),
            }
        }
        for &r in sig.reversed_by(o) {
            let axiom = AxiomId::Reverses {
                op: spec.name.clone(),
                rel: sig.relations()[r].name.clone(),
                strict: spec.strict,
            };
            match check_op_axiom(s, o, r, true, spec.strict) {
                None => report.push(CheckEntry::pass(axiom)),
                Some(w) => report.push(CheckEntry::fail(axiom, ids(s, &w))),
            }
        }
        if spec.bijective {
            let axiom = AxiomId::Bijective {
                op: spec.name.clone(),
            };
            let mut hit = vec![usize::MAX; n];
            let mut witness = None;
            for i in 0..n {
                let v = s.op_at(o, i);
                if hit[v] != usize::MAX {
                    witness = Some(vec![hit[v], i]);
                    break;
                }
                hit[v] = i;
            }
            match witness {
                None => report.push(CheckEntry::pass(axiom)),
                Some(w) => report.push(CheckEntry::fail(axiom, ids(s, &w))),
            }
        }
    }

    report
}
