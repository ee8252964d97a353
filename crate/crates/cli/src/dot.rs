//! Graphviz export.

use std::fmt::Write;

use twarrow_core::fincat::FinCategory;
use twarrow_core::sset::FinSimplicialSet;

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

/// Objects as nodes, non-identity morphisms as labelled edges.
pub fn category_dot(name: &str, cat: &FinCategory) -> String {
    let mut out = format!("digraph {} {{\n", quote(name));
    for x in cat.objects() {
        writeln!(out, "  n{x} [label={}];", quote(cat.object_name(x))).unwrap();
    }
    for f in cat.morphisms().filter(|&f| !cat.is_identity(f)) {
        writeln!(out, "  n{} -> n{} [label={}];", cat.source(f), cat.target(f), quote(cat.morphism_name(f))).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Vertices as nodes and nondegenerate edges from `d_1` to `d_0`.
pub fn sset_dot(name: &str, s: &FinSimplicialSet) -> String {
    let mut out = format!("digraph {} {{\n", quote(name));
    for v in 0..s.count(0) {
        writeln!(out, "  v{v} [label=\"{v}\"];").unwrap();
    }
    if s.trunc() >= 1 {
        for e in s.nondegenerate(1) {
            writeln!(out, "  v{} -> v{} [label=\"{e}\"];", s.face(1, 1, e), s.face(1, 0, e)).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// `(nodes, edges)` of a DOT document written by this module.
pub fn count_dot(text: &str) -> (usize, usize) {
    let body = text.lines().filter(|l| l.trim_end().ends_with("];"));
    // labels may contain "->", so only look before the attribute list
    body.fold((0, 0), |(n, e), l| match l.split('[').next() {
        Some(head) if head.contains("->") => (n, e + 1),
        _ => (n + 1, e),
    })
}
