//! Finite structures over signatures of binary relations and unary operations.
//!
//! A [`Structure`] is a finite domain of named elements together with one
//! extent (a set of ordered pairs) per relation symbol and one total table per
//! operation symbol. Structures do not automatically satisfy the axioms their
//! signature declares; see [`crate::conformance::check_conformance`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An element name: nonempty, printable, no whitespace. Element identity is by
/// token only, so structures over overlapping token sets share those elements.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(String);

impl ElementId {
    pub fn new(token: impl Into<String>) -> Result<Self> {
        let token = token.into();
        if token.is_empty() || token.chars().any(|c| c.is_whitespace() || c.is_control()) {
            return Err(Error::InvalidToken(token));
        }
        Ok(ElementId(token))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// One of the five relation properties an extent can be required to satisfy.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Property {
    Transitive,
    Reflexive,
    Symmetric,
    Antireflexive,
    Antisymmetric,
}

impl Property {
    pub const ALL: [Property; 5] = [
        Property::Transitive,
        Property::Reflexive,
        Property::Symmetric,
        Property::Antireflexive,
        Property::Antisymmetric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Transitive => "transitive",
            Property::Reflexive => "reflexive",
            Property::Symmetric => "symmetric",
            Property::Antireflexive => "antireflexive",
            Property::Antisymmetric => "antisymmetric",
        }
    }

    pub fn from_name(name: &str) -> Option<Property> {
        Property::ALL.iter().copied().find(|p| p.name() == name)
    }

    fn bit(self) -> u8 {
        match self {
            Property::Transitive => 1,
            Property::Reflexive => 2,
            Property::Symmetric => 4,
            Property::Antireflexive => 8,
            Property::Antisymmetric => 16,
        }
    }
}

/// A subset of the five properties. Any subset is legal, including the empty
/// and the full one; the full set merely forces near-trivial relations.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PropertySet(u8);

impl PropertySet {
    pub fn empty() -> Self {
        PropertySet(0)
    }

    pub fn of(props: impl IntoIterator<Item = Property>) -> Self {
        let mut s = PropertySet(0);
        for p in props {
            s.0 |= p.bit();
        }
        s
    }

    pub fn with(mut self, p: Property) -> Self {
        self.0 |= p.bit();
        self
    }

    pub fn without(mut self, p: Property) -> Self {
        self.0 &= !p.bit();
        self
    }

    pub fn contains(self, p: Property) -> bool {
        self.0 & p.bit() != 0
    }

    pub fn iter(self) -> impl Iterator<Item = Property> {
        Property::ALL.into_iter().filter(move |p| self.contains(*p))
    }

    /// All 32 property sets, in mask order.
    pub fn all_subsets() -> impl Iterator<Item = PropertySet> {
        (0u8..32).map(PropertySet)
    }
}

impl fmt::Debug for PropertySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.iter().map(|p| p.name()))
            .finish()
    }
}

/// Declaration of one relation symbol.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RelationDecl {
    pub name: String,
    pub properties: PropertySet,
}

/// Declaration of one unary operation symbol: which relations it preserves
/// (`x R y` implies `f(x) R f(y)`), which it reverses (`x R y` implies
/// `f(y) R f(x)`), whether those axioms are taken in the strict form that also
/// forces distinct images on distinct related arguments, and whether the table
/// must be a bijection. `preserves` and `reverses` may overlap.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OperationSpec {
    pub name: String,
    pub preserves: BTreeSet<String>,
    pub reverses: BTreeSet<String>,
    pub strict: bool,
    pub bijective: bool,
}

impl OperationSpec {
    pub fn preserving(name: impl Into<String>, rels: impl IntoIterator<Item = String>) -> Self {
        OperationSpec {
            name: name.into(),
            preserves: rels.into_iter().collect(),
            reverses: BTreeSet::new(),
            strict: false,
            bijective: false,
        }
    }

    pub fn reversing(name: impl Into<String>, rels: impl IntoIterator<Item = String>) -> Self {
        OperationSpec {
            name: name.into(),
            preserves: BTreeSet::new(),
            reverses: rels.into_iter().collect(),
            strict: false,
            bijective: false,
        }
    }

    pub fn strict(mut self) -> Self {
        self.strict = true;
        self
    }

    pub fn bijective(mut self) -> Self {
        self.bijective = true;
        self
    }
}

/// A signature: an ordered list of relation symbols with their property sets,
/// a set of coarseness pairs (finer, coarser), and unary operation symbols.
#[derive(Clone, Debug)]
pub struct Signature {
    relations: Vec<RelationDecl>,
    coarser_than: Vec<(usize, usize)>,
    operations: Vec<OperationSpec>,
    op_preserves: Vec<Vec<usize>>,
    op_reverses: Vec<Vec<usize>>,
}

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        self.relations == other.relations
            && self.coarser_than == other.coarser_than
            && self.operations == other.operations
    }
}

impl Eq for Signature {}

impl Signature {
    pub fn new(
        relations: Vec<RelationDecl>,
        coarser_than: Vec<(String, String)>,
        operations: Vec<OperationSpec>,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for r in &relations {
            if !seen.insert(r.name.clone()) {
                return Err(Error::DuplicateRelation(r.name.clone()));
            }
        }
        let index_of = |name: &str| -> Result<usize> {
            relations
                .iter()
                .position(|r| r.name == name)
                .ok_or_else(|| Error::UnknownRelation(name.to_owned()))
        };
        let mut pairs = Vec::new();
        for (finer, coarser) in &coarser_than {
            if finer == coarser {
                return Err(Error::ReflexiveCoarseness(finer.clone()));
            }
            let pair = (index_of(finer)?, index_of(coarser)?);
            if !pairs.contains(&pair) {
                pairs.push(pair);
            }
        }
        let mut seen_ops = BTreeSet::new();
        let mut op_preserves = Vec::new();
        let mut op_reverses = Vec::new();
        for op in &operations {
            if !seen_ops.insert(op.name.clone()) {
                return Err(Error::DuplicateOperation(op.name.clone()));
            }
            op_preserves.push(
                op.preserves
                    .iter()
                    .map(|n| index_of(n))
                    .collect::<Result<Vec<_>>>()?,
            );
            op_reverses.push(
                op.reverses
                    .iter()
                    .map(|n| index_of(n))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Ok(Signature {
            relations,
            coarser_than: pairs,
            operations,
            op_preserves,
            op_reverses,
        })
    }

    /// Signature with a single relation and no operations.
    pub fn single(name: impl Into<String>, properties: PropertySet) -> Self {
        Signature::new(
            vec![RelationDecl {
                name: name.into(),
                properties,
            }],
            vec![],
            vec![],
        )
        .expect("single relation signature is always valid")
    }

    /// Signature with a finer and a coarser relation and no operations.
    pub fn pair(
        finer: impl Into<String>,
        p: PropertySet,
        coarser: impl Into<String>,
        q: PropertySet,
    ) -> Self {
        let finer = finer.into();
        let coarser = coarser.into();
        Signature::new(
            vec![
                RelationDecl {
                    name: finer.clone(),
                    properties: p,
                },
                RelationDecl {
                    name: coarser.clone(),
                    properties: q,
                },
            ],
            vec![(finer, coarser)],
            vec![],
        )
        .expect("pair signature is always valid")
    }

    pub fn with_operations(mut self, operations: Vec<OperationSpec>) -> Result<Self> {
        let decls = std::mem::take(&mut self.relations);
        let coarser = self
            .coarser_than
            .iter()
            .map(|&(f, c)| (decls[f].name.clone(), decls[c].name.clone()))
            .collect();
        Signature::new(decls, coarser, operations)
    }

    pub fn relations(&self) -> &[RelationDecl] {
        &self.relations
    }

    pub fn operations(&self) -> &[OperationSpec] {
        &self.operations
    }

    /// Coarseness pairs as (finer index, coarser index).
    pub fn coarser_pairs(&self) -> &[(usize, usize)] {
        &self.coarser_than
    }

    pub fn relation_index(&self, name: &str) -> Option<usize> {
        self.relations.iter().position(|r| r.name == name)
    }

    pub fn operation_index(&self, name: &str) -> Option<usize> {
        self.operations.iter().position(|o| o.name == name)
    }

    pub(crate) fn preserved_by(&self, op: usize) -> &[usize] {
        &self.op_preserves[op]
    }

    pub(crate) fn reversed_by(&self, op: usize) -> &[usize] {
        &self.op_reverses[op]
    }
}

/// A finite structure: domain, one pair set per relation, one total unary
/// table per operation. Immutable after construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Structure {
    sig: Arc<Signature>,
    domain: Vec<ElementId>,
    extents: Vec<Vec<bool>>,
    tables: Vec<Vec<usize>>,
}

impl Structure {
    /// The empty structure over a signature.
    pub fn empty(sig: Arc<Signature>) -> Self {
        let nrel = sig.relations().len();
        let nop = sig.operations().len();
        Structure {
            sig,
            domain: Vec::new(),
            extents: vec![Vec::new(); nrel],
            tables: vec![Vec::new(); nop],
        }
    }

    pub fn new(
        sig: Arc<Signature>,
        domain: Vec<ElementId>,
        relations: &BTreeMap<String, Vec<(ElementId, ElementId)>>,
        operations: &BTreeMap<String, BTreeMap<ElementId, ElementId>>,
    ) -> Result<Self> {
        let mut sorted = domain;
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateElement(w[0].clone()));
            }
        }
        let n = sorted.len();
        let index = |e: &ElementId| -> Result<usize> {
            sorted
                .binary_search(e)
                .map_err(|_| Error::UnknownElement(e.clone()))
        };

        let mut extents = vec![vec![false; n * n]; sig.relations().len()];
        for (name, pairs) in relations {
            let r = sig
                .relation_index(name)
                .ok_or_else(|| Error::UnknownRelation(name.clone()))?;
            for (x, y) in pairs {
                let (i, j) = (index(x)?, index(y)?);
                if extents[r][i * n + j] {
                    return Err(Error::DuplicatePair {
                        relation: name.clone(),
                        x: x.clone(),
                        y: y.clone(),
                    });
                }
                extents[r][i * n + j] = true;
            }
        }

        let mut tables = vec![vec![usize::MAX; n]; sig.operations().len()];
        for (name, table) in operations {
            let o = sig
                .operation_index(name)
                .ok_or_else(|| Error::UnknownOperation(name.clone()))?;
            for (x, y) in table {
                tables[o][index(x)?] = index(y)?;
            }
        }
        for (o, table) in tables.iter().enumerate() {
            if let Some(i) = table.iter().position(|&v| v == usize::MAX) {
                return Err(Error::IncompleteTable {
                    op: sig.operations()[o].name.clone(),
                    element: sorted[i].clone(),
                });
            }
        }

        Ok(Structure {
            sig,
            domain: sorted,
            extents,
            tables,
        })
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn same_signature(&self, other: &Structure) -> bool {
        Arc::ptr_eq(&self.sig, &other.sig) || self.sig == other.sig
    }

    /// Domain in ascending token order.
    pub fn domain(&self) -> &[ElementId] {
        &self.domain
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    pub fn contains(&self, e: &ElementId) -> bool {
        self.domain.binary_search(e).is_ok()
    }

    pub fn index_of(&self, e: &ElementId) -> Option<usize> {
        self.domain.binary_search(e).ok()
    }

    pub(crate) fn element(&self, i: usize) -> &ElementId {
        &self.domain[i]
    }

    pub(crate) fn rel_at(&self, rel: usize, i: usize, j: usize) -> bool {
        self.extents[rel][i * self.domain.len() + j]
    }

    pub(crate) fn op_at(&self, op: usize, i: usize) -> usize {
        self.tables[op][i]
    }

    pub(crate) fn extent_bits(&self, rel: usize) -> &[bool] {
        &self.extents[rel]
    }

    pub(crate) fn from_parts(
        sig: Arc<Signature>,
        domain: Vec<ElementId>,
        extents: Vec<Vec<bool>>,
        tables: Vec<Vec<usize>>,
    ) -> Self {
        debug_assert!(domain.windows(2).all(|w| w[0] < w[1]));
        Structure {
            sig,
            domain,
            extents,
            tables,
        }
    }

    /// True when `x rel y` holds; false for unknown names or elements.
    pub fn related(&self, rel: &str, x: &ElementId, y: &ElementId) -> bool {
        match (
            self.sig.relation_index(rel),
            self.index_of(x),
            self.index_of(y),
        ) {
            (Some(r), Some(i), Some(j)) => self.rel_at(r, i, j),
            _ => false,
        }
    }

    /// The extent of a relation as token pairs.
    pub fn extent(&self, rel: &str) -> Result<BTreeSet<(ElementId, ElementId)>> {
        let r = self
            .sig
            .relation_index(rel)
            .ok_or_else(|| Error::UnknownRelation(rel.to_owned()))?;
        let n = self.domain.len();
        let mut out = BTreeSet::new();
        for i in 0..n {
            for j in 0..n {
                if self.rel_at(r, i, j) {
                    out.insert((self.domain[i].clone(), self.domain[j].clone()));
                }
            }
        }
        Ok(out)
    }

    /// The value of an operation on one element.
    pub fn apply(&self, op: &str, x: &ElementId) -> Result<ElementId> {
        let o = self
            .sig
            .operation_index(op)
            .ok_or_else(|| Error::UnknownOperation(op.to_owned()))?;
        let i = self
            .index_of(x)
            .ok_or_else(|| Error::UnknownElement(x.clone()))?;
        Ok(self.domain[self.op_at(o, i)].clone())
    }

    /// The table of an operation as a token map.
    pub fn table(&self, op: &str) -> Result<BTreeMap<ElementId, ElementId>> {
        let o = self
            .sig
            .operation_index(op)
            .ok_or_else(|| Error::UnknownOperation(op.to_owned()))?;
        Ok(self
            .domain
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), self.domain[self.op_at(o, i)].clone()))
            .collect())
    }
}

impl fmt::Debug for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("Structure");
        s.field("domain", &self.domain);
        for (r, decl) in self.sig.relations().iter().enumerate() {
            let n = self.domain.len();
            let pairs: Vec<String> = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| self.rel_at(r, i, j))
                .map(|(i, j)| format!("{} {} {}", self.domain[i], decl.name, self.domain[j]))
                .collect();
            s.field(&decl.name, &pairs);
        }
        for (o, spec) in self.sig.operations().iter().enumerate() {
            let map: Vec<String> = self
                .domain
                .iter()
                .enumerate()
                .map(|(i, e)| format!("{} -> {}", e, self.domain[self.op_at(o, i)]))
                .collect();
            s.field(&spec.name, &map);
        }
        s.finish()
    }
}

/// Convenience builder used by tests, the counterexample catalog and examples.
pub struct StructureBuilder {
    sig: Arc<Signature>,
    domain: Vec<ElementId>,
    relations: BTreeMap<String, Vec<(ElementId, ElementId)>>,
    operations: BTreeMap<String, BTreeMap<ElementId, ElementId>>,
    error: Option<Error>,
}

impl StructureBuilder {
    pub fn new(sig: &Arc<Signature>) -> Self {
        StructureBuilder {
            sig: Arc::clone(sig),
            domain: Vec::new(),
            relations: BTreeMap::new(),
            operations: BTreeMap::new(),
            error: None,
        }
    }

    fn id(&mut self, token: &str) -> Option<ElementId> {
        match ElementId::new(token) {
            Ok(e) => Some(e),
            Err(e) => {
                self.error.get_or_insert(e);
                None
            }
        }
    }

    pub fn elements<'a>(mut self, tokens: impl IntoIterator<Item = &'a str>) -> Self {
        for t in tokens {
            if let Some(e) = self.id(t) {
                self.domain.push(e);
            }
        }
        self
    }

    pub fn pair(mut self, rel: &str, x: &str, y: &str) -> Self {
        if let (Some(x), Some(y)) = (self.id(x), self.id(y)) {
            self.relations
                .entry(rel.to_owned())
                .or_default()
                .push((x, y));
        }
        self
    }

    pub fn pairs<'a>(
        mut self,
        rel: &str,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Self {
        for (x, y) in pairs {
            self = self.pair(rel, x, y);
        }
        self
    }

    /// Adds the loop (x, x) for every listed element.
    pub fn loops<'a>(mut self, rel: &str, xs: impl IntoIterator<Item = &'a str>) -> Self {
        for x in xs {
            self = self.pair(rel, x, x);
        }
        self
    }

    pub fn op(mut self, op: &str, x: &str, y: &str) -> Self {
        if let (Some(x), Some(y)) = (self.id(x), self.id(y)) {
            self.operations
                .entry(op.to_owned())
                .or_default()
                .insert(x, y);
        }
        self
    }

    pub fn finish(self) -> Result<Structure> {
        if let Some(e) = self.error {
            return Err(e);
        }
        Structure::new(self.sig, self.domain, &self.relations, &self.operations)
    }
}

/// Restricts a structure to a subset of its domain. The subset must be closed
/// under every operation.
pub fn induced_substructure(s: &Structure, subset: &BTreeSet<ElementId>) -> Result<Structure> {
    for e in subset {
        if !s.contains(e) {
            return Err(Error::UnknownElement(e.clone()));
        }
    }
    let keep: Vec<usize> = s
        .domain()
        .iter()
        .enumerate()
        .filter(|(_, e)| subset.contains(e))
        .map(|(i, _)| i)
        .collect();
    let new_domain: Vec<ElementId> = keep.iter().map(|&i| s.domain()[i].clone()).collect();
    let pos_of: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(p, &i)| (i, p)).collect();

    for (o, spec) in s.signature().operations().iter().enumerate() {
        for &i in &keep {
            let img = s.op_at(o, i);
            if !pos_of.contains_key(&img) {
                return Err(Error::NotClosed {
                    op: spec.name.clone(),
                    element: s.domain()[i].clone(),
                    image: s.domain()[img].clone(),
                });
            }
        }
    }

    let k = keep.len();
    let mut extents = vec![vec![false; k * k]; s.signature().relations().len()];
    for (r, ext) in extents.iter_mut().enumerate() {
        for (pi, &i) in keep.iter().enumerate() {
            for (pj, &j) in keep.iter().enumerate() {
                ext[pi * k + pj] = s.rel_at(r, i, j);
            }
        }
    }
    let tables = (0..s.signature().operations().len())
        .map(|o| keep.iter().map(|&i| pos_of[&s.op_at(o, i)]).collect())
        .collect();
    Ok(Structure::from_parts(
        Arc::clone(s.signature()),
        new_domain,
        extents,
        tables,
    ))
}

/// True when `c` is a substructure of `a`: same signature, `c`'s domain is a
/// subset of `a`'s, every extent of `c` is the restriction of `a`'s extent,
/// and the operation tables agree on `c`'s domain (which must be closed in
/// `a`).
pub fn is_substructure(c: &Structure, a: &Structure) -> Result<bool> {
    if !c.same_signature(a) {
        return Err(Error::SignatureMismatch);
    }
    let subset: BTreeSet<ElementId> = c.domain().iter().cloned().collect();
    if !subset.iter().all(|e| a.contains(e)) {
        return Ok(false);
    }
    match induced_substructure(a, &subset) {
        Ok(restriction) => Ok(&restriction == c),
        Err(Error::NotClosed { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Returns a copy of `s` with every element token suffixed. Used to make
/// domains disjoint before a joint embedding.
pub fn rename_with_suffix(s: &Structure, suffix: &str) -> Result<Structure> {
    let renamed: Vec<ElementId> = s
        .domain()
        .iter()
        .map(|e| ElementId::new(format!("{}{}", e, suffix)))
        .collect::<Result<_>>()?;
    // Suffixing preserves the relative order of distinct tokens only when the
    // suffix is appended to every token; re-sort defensively anyway.
    let mut order: Vec<usize> = (0..renamed.len()).collect();
    order.sort_by(|&i, &j| renamed[i].cmp(&renamed[j]));
    let pos_of: Vec<usize> = {
        let mut v = vec![0; renamed.len()];
        for (p, &i) in order.iter().enumerate() {
            v[i] = p;
        }
        v
    };
    let n = s.len();
    let domain: Vec<ElementId> = order.iter().map(|&i| renamed[i].clone()).collect();
    let mut extents = vec![vec![false; n * n]; s.signature().relations().len()];
    for (r, ext) in extents.iter_mut().enumerate() {
        for i in 0..n {
            for j in 0..n {
                if s.rel_at(r, i, j) {
                    ext[pos_of[i] * n + pos_of[j]] = true;
                }
            }
        }
    }
    let mut tables = vec![vec![0; n]; s.signature().operations().len()];
    for (o, table) in tables.iter_mut().enumerate() {
        for i in 0..n {
            table[pos_of[i]] = pos_of[s.op_at(o, i)];
        }
    }
    Ok(Structure::from_parts(
        Arc::clone(s.signature()),
        domain,
        extents,
        tables,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poset_sig() -> Arc<Signature> {
        Arc::new(Signature::single(
            "leq",
            PropertySet::of([
                Property::Transitive,
                Property::Reflexive,
                Property::Antisymmetric,
            ]),
        ))
    }

    pub(crate) fn two_chain(sig: &Arc<Signature>) -> Structure {
        StructureBuilder::new(sig)
            .elements(["0", "1"])
            .loops("leq", ["0", "1"])
            .pair("leq", "0", "1")
            .finish()
            .unwrap()
    }

    #[test]
    fn tokens_are_validated() {
        assert!(ElementId::new("a1").is_ok());
        assert!(ElementId::new("").is_err());
        assert!(ElementId::new("a b").is_err());
        assert!(ElementId::new("a\n").is_err());
    }

    #[test]
    fn duplicate_pairs_are_rejected() {
        let sig = poset_sig();
        let err = StructureBuilder::new(&sig)
            .elements(["0", "1"])
            .pair("leq", "0", "1")
            .pair("leq", "0", "1")
            .finish();
        assert!(matches!(err, Err(Error::DuplicatePair { .. })));
    }

    #[test]
    fn singleton_restriction_keeps_loop() {
        let sig = poset_sig();
        let s = two_chain(&sig);
        let zero = ElementId::new("0").unwrap();
        let sub = induced_substructure(&s, &BTreeSet::from([zero.clone()])).unwrap();
        assert_eq!(sub.len(), 1);
        assert!(sub.related("leq", &zero, &zero));
    }

    #[test]
    fn restriction_fails_on_open_subset() {
        let sig = Arc::new(
            Signature::single("R", PropertySet::empty())
                .with_operations(vec![OperationSpec::preserving("f", ["R".to_owned()])])
                .unwrap(),
        );
        let s = StructureBuilder::new(&sig)
            .elements(["a", "b"])
            .op("f", "a", "b")
            .op("f", "b", "b")
            .finish()
            .unwrap();
        let a = ElementId::new("a").unwrap();
        let err = induced_substructure(&s, &BTreeSet::from([a]));
        assert!(matches!(err, Err(Error::NotClosed { .. })));
    }

    #[test]
    fn every_structure_is_its_own_substructure() {
        let sig = poset_sig();
        let s = two_chain(&sig);
        assert!(is_substructure(&s, &s).unwrap());
    }

    #[test]
    fn restriction_detects_extra_pairs() {
        let sig = Arc::new(Signature::single("R", PropertySet::empty()));
        let small = StructureBuilder::new(&sig)
            .elements(["c", "e"])
            .finish()
            .unwrap();
        let big = StructureBuilder::new(&sig)
            .elements(["c", "e", "x"])
            .pair("R", "c", "e")
            .finish()
            .unwrap();
        assert!(!is_substructure(&small, &big).unwrap());
    }

    #[test]
    fn rename_disjoint() {
        let sig = poset_sig();
        let s = two_chain(&sig);
        let r = rename_with_suffix(&s, "_b").unwrap();
        assert!(r.contains(&ElementId::new("0_b").unwrap()));
        assert!(!r.contains(&ElementId::new("0").unwrap()));
    }
}
