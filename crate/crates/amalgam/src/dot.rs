//! DOT export: one digraph per relation, with the extents of coarser
//! relations drawn as dashed edges. Operation tables are not drawn.

use crate::structure::Structure;

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Renders a structure as a sequence of DOT digraphs, one per relation, in
/// signature order. Output is canonical: nodes and edges appear in sorted
/// order.
pub fn export_dot(s: &Structure) -> String {
    let mut out = String::new();
    let coarser: Vec<usize> = s
        .signature()
        .coarser_pairs()
        .iter()
        .map(|&(_, c)| c)
        .collect();
    for (r, decl) in s.signature().relations().iter().enumerate() {
        out.push_str(&format!("digraph {} {{\n", quoted(&decl.name)));
        let style = if coarser.contains(&r) {
            " [style=dashed]"
        } else {
            ""
        };
        for e in s.domain() {
            out.push_str(&format!("  {};\n", quoted(e.as_str())));
        }
        for (x, y) in s.extent(&decl.name).expect("declared relation") {
            out.push_str(&format!(
                "  {} -> {}{};\n",
                quoted(x.as_str()),
                quoted(y.as_str()),
                style
            ));
        }
        out.push_str("}\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{Property, PropertySet, Signature, StructureBuilder};
    use std::sync::Arc;

    #[test]
    fn coarser_relation_is_dashed() {
        let sig = Arc::new(Signature::pair(
            "R",
            PropertySet::of([Property::Transitive]),
            "S",
            PropertySet::empty(),
        ));
        let s = StructureBuilder::new(&sig)
            .elements(["a", "b"])
            .pair("R", "a", "b")
            .pair("S", "a", "b")
            .finish()
            .unwrap();
        let dot = export_dot(&s);
        assert_eq!(dot.matches("digraph").count(), 2);
        assert!(dot.contains("\"a\" -> \"b\" [style=dashed];"));
        assert!(dot.contains("\"a\" -> \"b\";"));
    }
}
