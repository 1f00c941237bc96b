//! Layout-free DOT export.

use crate::graph::Graph;

/// Renders the graph in DOT syntax; vertices are their numeric ids, isolated
/// vertices are listed explicitly, optional extra attributes mark vertices
/// (e.g. good vertices as boxes).
pub fn to_dot(g: &Graph, marked: &[usize]) -> String {
    let mut out = String::from("graph {\n");
    for v in marked {
        out.push_str(&format!("  {v} [shape=box];\n"));
    }
    for v in g.vertices() {
        if g.degree(v) == 0 {
            out.push_str(&format!("  {v};\n"));
        }
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_edges_and_isolated_vertices() {
        let dot = to_dot(&Graph::path(3), &[]);
        assert_eq!(dot, "graph {\n  0 -- 1;\n  1 -- 2;\n}\n");
        let lone = to_dot(&Graph::trivial(), &[]);
        assert!(lone.contains("  0;\n"));
    }

    #[test]
    fn marks_vertices_as_boxes() {
        let dot = to_dot(&Graph::cycle(3), &[1]);
        assert!(dot.contains("  1 [shape=box];\n"));
    }
}
