//! Text and DOT renderings of flow grids.

use std::fmt::Write;

use asmgrid_core::{EdgeState, ElementaryFlowGrid, GridEdge};

/// Grid vertices as `+`; horizontal edges as `>`, `<` or `=`, vertical
/// edges as `v`, `^` or `‖`. Boundary arcs are omitted.
pub fn text_grid(g: &ElementaryFlowGrid) -> String {
    let n = g.n();
    let mut out = String::new();
    for i in 0..n {
        for j in 0..n {
            out.push('+');
            if j + 1 < n {
                out.push(match g.state(GridEdge::horizontal(i, j)) {
                    EdgeState::Forward => '>',
                    EdgeState::Backward => '<',
                    EdgeState::Doubly => '=',
                });
            }
        }
        out.push('\n');
        if i + 1 < n {
            let row: Vec<String> = (0..n)
                .map(|j| {
                    match g.state(GridEdge::vertical(i, j)) {
                        EdgeState::Forward => 'v',
                        EdgeState::Backward => '^',
                        EdgeState::Doubly => '‖',
                    }
                    .to_string()
                })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}

/// Graphviz digraph with pinned vertex positions. Doubly directed edges are
/// red and bidirectional, fixed edges point along their orientation.
pub fn dot(g: &ElementaryFlowGrid, name: &str) -> String {
    let n = g.n();
    let id = |i: usize, j: usize| format!("v{}_{}", i + 1, j + 1);
    let mut s = String::new();
    writeln!(s, "digraph {name} {{").unwrap();
    writeln!(s, "  node [shape=point];").unwrap();
    for i in 0..n {
        for j in 0..n {
            writeln!(s, "  {} [pos=\"{},{}!\"];", id(i, j), j, n - 1 - i).unwrap();
        }
    }
    for e in asmgrid_core::grid::all_edges(n) {
        let (a, b) = e.endpoints();
        let (a, b) = (id(a.i, a.j), id(b.i, b.j));
        match g.state(e) {
            EdgeState::Forward => writeln!(s, "  {a} -> {b};"),
            EdgeState::Backward => writeln!(s, "  {b} -> {a};"),
            EdgeState::Doubly => writeln!(s, "  {a} -> {b} [dir=both, color=red, penwidth=2];"),
        }
        .unwrap();
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use asmgrid_core::samples;

    #[test]
    fn square_face_text() {
        let t = text_grid(&samples::square_grid());
        assert_eq!(t, "+=+>+\n‖ ‖ ^\n+=+=+\nv ‖ ‖\n+<+=+\n");
    }

    #[test]
    fn dot_marks_doubly_edges() {
        let d = dot(&samples::edge_grid(), "edge");
        assert_eq!(d.matches("color=red").count(), 4);
        assert!(d.starts_with("digraph edge {"));
        assert_eq!(d.matches(" -> ").count(), 12);
    }
}
