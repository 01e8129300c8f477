//! Graphviz export.

use std::fmt::Write as _;

use crate::quiver::GradedQuiver;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// A `digraph` with one node per vertex and one edge per arrow labelled
/// `name:degree` (and `/w=weight` when weights are present).
pub fn emit_dot(q: &GradedQuiver) -> String {
    let quiver = q.quiver();
    let mut out = String::from("digraph quiver {\n");
    for v in quiver.vertices() {
        let label = v.label.as_deref().unwrap_or(&v.name);
        writeln!(out, "  {} [label={}];", quote(&v.name), quote(label)).unwrap();
    }
    for a in quiver.arrow_ids() {
        let arrow = quiver.arrow(a);
        let mut label = format!("{}:{}", arrow.name, q.degree(a));
        if let Some(w) = q.weight(a) {
            write!(label, "/w={w}").unwrap();
        }
        writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(quiver.vertex_name(arrow.source)),
            quote(quiver.vertex_name(arrow.target)),
            quote(&label)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
