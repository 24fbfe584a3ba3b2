use thiserror::Error;

use crate::conformance::VerificationReport;
use crate::structure::ElementId;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid element token {0:?}: tokens must be nonempty, printable, without whitespace")]
    InvalidToken(String),

    #[error("duplicate element {0} in domain")]
    DuplicateElement(ElementId),

    #[error("duplicate pair ({x}, {y}) in relation {relation}")]
    DuplicatePair {
        relation: String,
        x: ElementId,
        y: ElementId,
    },

    #[error("duplicate relation symbol {0}")]
    DuplicateRelation(String),

    #[error("duplicate operation symbol {0}")]
    DuplicateOperation(String),

    #[error("unknown relation symbol {0}")]
    UnknownRelation(String),

    #[error("unknown operation symbol {0}")]
    UnknownOperation(String),

    #[error("element {0} does not belong to the domain")]
    UnknownElement(ElementId),

    #[error("coarseness pair ({0}, {0}) relates a relation to itself")]
    ReflexiveCoarseness(String),

    #[error("operation {op} has no value for element {element}")]
    IncompleteTable { op: String, element: ElementId },

    #[error("structures have different signatures")]
    SignatureMismatch,

    #[error("subset is not closed under operation {op}: {op}({element}) = {image} lies outside")]
    NotClosed {
        op: String,
        element: ElementId,
        image: ElementId,
    },

    #[error("domain intersection mismatch: {0} separates A \u{2229} B from C")]
    DomainMismatch(ElementId),

    #[error("{0} is not a substructure of {1}")]
    NotSubstructure(&'static str, &'static str),

    #[error("structure {which} fails conformance")]
    NotConformant {
        which: &'static str,
        report: Box<VerificationReport>,
    },

    #[error("operation tables disagree on the shared part: {op}({element})")]
    Inconsistent { op: String, element: ElementId },

    #[error("unsupported signature: {0}")]
    UnsupportedSignature(String),

    #[error("unknown catalog entry {0}")]
    UnknownEntry(String),

    #[error("catalog entry {entry} violated its expected verdict: {detail}")]
    ExpectationViolated { entry: String, detail: String },

    #[error("domains overlap at {0}; rename one side first")]
    DomainsOverlap(ElementId),

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
