//! Graphviz DOT export.

use std::fmt::Write;

use crate::labeling::{induce, EdgeLabeling};
use crate::tree::{parse_spec, RootedTree, SpecError, TreeSpec};

const SPEC_PREFIX: &str = "// spec: ";

/// Renders `tree`, with vertex sums and edge labels when `labeling` is given.
///
/// Nodes appear root first, then spine vertices, then leaves by parent.
pub fn to_dot(tree: &RootedTree, labeling: Option<&EdgeLabeling>) -> String {
    let sums = labeling.and_then(|f| induce(tree, f).ok());
    let mut out = String::new();
    writeln!(out, "{SPEC_PREFIX}{}", tree.spec()).unwrap();
    out.push_str("graph seg {\n");
    for v in tree.vertices() {
        match sums.as_ref().and_then(|s| s.get(v)) {
            Some(x) => writeln!(out, "  \"{v}\" [label=\"{x}\"];").unwrap(),
            None => writeln!(out, "  \"{v}\";").unwrap(),
        }
    }
    for &e in tree.edges() {
        let parent = e.parent().expect("edges have parents");
        match labeling.and_then(|f| f.get(e)) {
            Some(x) => writeln!(out, "  \"{parent}\" -- \"{e}\" [label=\"{x}\"];").unwrap(),
            None => writeln!(out, "  \"{parent}\" -- \"{e}\";").unwrap(),
        }
    }
    out.push_str("}\n");
    out
}

/// Recovers the spec from the comment line written by [`to_dot`].
pub fn spec_from_dot(dot: &str) -> Option<Result<TreeSpec, SpecError>> {
    dot.lines()
        .find_map(|line| line.strip_prefix(SPEC_PREFIX))
        .map(parse_spec)
}
