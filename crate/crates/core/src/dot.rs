//! Graphviz export of a colored graph and its orientation.

use crate::coloring::Coloring;
use crate::digraph::{build_dc, level_partition};
use crate::graph::Graph;

/// Fill colors per color class, indexed by color - 1 (cycled past 5).
const PALETTE: [&str; 5] = ["#e8726d", "#6da8e8", "#7ad17a", "#e8c96d", "#b98fd4"];

/// Renders the orientation induced by a proper coloring as a DOT digraph:
/// nodes labeled `v<i>/c<color>` and filled by color class, one directed
/// arc per orientation arc, and — when the orientation is acyclic — one
/// `rank=same` row per level so layouts stack the level partition.
pub fn render_dot(g: &Graph, c: &Coloring) -> String {
    let d = build_dc(g, c).expect("DOT export expects a proper coloring");
    let mut out = String::from("digraph coloring {\n");
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=circle style=filled fontname=\"Helvetica\"];\n");
    for v in 0..g.n() {
        let col = c.get(v);
        out.push_str(&format!(
            "  {} [label=\"v{}/c{}\" fillcolor=\"{}\"];\n",
            v,
            v + 1,
            col,
            PALETTE[(col - 1) % PALETTE.len()]
        ));
    }
    for (a, b) in d.arcs() {
        out.push_str(&format!("  {a} -> {b};\n"));
    }
    if let Ok(lp) = level_partition(&d) {
        for i in 1..=lp.height() {
            out.push_str("  { rank=same;");
            for &v in lp.level(i) {
                out.push_str(&format!(" {v};"));
            }
            out.push_str(" }\n");
        }
    }
    out.push_str("}\n");
    out
}
