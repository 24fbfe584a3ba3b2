//! A toolkit for finite structures with one or two comparable binary
//! relations and relation-preserving or reversing unary operations.
//!
//! The crate provides:
//!
//! - finite structures over declarative signatures, with conformance
//!   checking, substructure and isomorphism machinery ([`structure`],
//!   [`conformance`], [`isomorphism`], [`triple`]);
//! - constructive strong amalgamation with superamalgamation witnesses,
//!   strict reflection and joint embedding ([`amalgamation`]);
//! - a complete brute-force amalgam search used as ground truth
//!   ([`oracle`]);
//! - an executable catalog of boundary instances where amalgamation fails
//!   ([`counterexamples`]);
//! - finite-stage approximations of the generic limit structure with
//!   extension-property and homogeneity checks ([`fraisse`]);
//! - a JSON interchange format, DOT export, seeded generators and a batch
//!   CLI ([`io`], [`dot`], [`gen`], [`cli`]).
//!
//! Start with the runnable programs under `examples/`; each one exercises a
//! major capability end to end.

pub mod amalgamation;
pub mod cli;
pub mod conformance;
pub mod counterexamples;
pub mod dot;
pub mod error;
pub mod fraisse;
pub mod gen;
pub mod io;
pub mod isomorphism;
pub mod oracle;
pub mod structure;
pub mod triple;

pub use amalgamation::{
    amalgamate_auto, amalgamate_pair, amalgamate_single, amalgamate_transitive, amalgamate_union,
    extend_operations, joint_embedding, strict_of, superamalgamation_witnesses, Amalgam,
};
pub use conformance::{check_conformance, AxiomId, CheckEntry, VerificationReport};
pub use error::{Error, Result};
pub use isomorphism::{find_isomorphism, Embedding};
pub use oracle::{
    ap_equivalence_strict, search_ap_amalgam, search_strong_amalgam, SearchOutcome, SearchStatus,
};
pub use structure::{
    induced_substructure, is_substructure, rename_with_suffix, ElementId, OperationSpec, Property,
    PropertySet, RelationDecl, Signature, Structure, StructureBuilder,
};
pub use triple::{validate_tba, TbaTriple};
