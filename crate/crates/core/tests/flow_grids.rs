use asmgrid_core::classify::scan_faces;
use asmgrid_core::grid::EdgeKind;
use asmgrid_core::oracle::affine_rank;
use asmgrid_core::{
    asm_to_simple_flow_grid, enumerate_asms, simple_flow_grid_to_asm, smallest_face, Asm, Face, GridEdge,
    GridVertex, SimpleFlowGrid,
};

/// The four arcs at `v` as (internal edge, flows into `v` in `g`), in the
/// order left, right, up, down. Boundary arcs point outward.
fn arcs(g: &SimpleFlowGrid, v: GridVertex) -> [(Option<GridEdge>, bool); 4] {
    let n = g.n();
    let GridVertex { i, j } = v;
    let left = (j > 0).then(|| GridEdge::horizontal(i, j - 1));
    let right = (j + 1 < n).then(|| GridEdge::horizontal(i, j));
    let up = (i > 0).then(|| GridEdge::vertical(i - 1, j));
    let down = (i + 1 < n).then(|| GridEdge::vertical(i, j));
    [
        (left, left.is_some_and(|e| g.is_forward(e))),
        (right, right.is_some_and(|e| !g.is_forward(e))),
        (up, up.is_some_and(|e| g.is_forward(e))),
        (down, down.is_some_and(|e| !g.is_forward(e))),
    ]
}

#[test]
fn asm_and_simple_grid_are_inverse() {
    for n in 1..=5 {
        let all = enumerate_asms(n).unwrap();
        let mut grids: Vec<SimpleFlowGrid> = all.iter().map(asm_to_simple_flow_grid).collect();
        for (a, g) in all.iter().zip(&grids) {
            assert_eq!(&simple_flow_grid_to_asm(g).unwrap(), a);
            for i in 0..n {
                for j in 0..n {
                    let v = GridVertex::new(i, j);
                    assert_eq!(g.entry_at(v), Some(a.get(i, j)));
                    let into = arcs(g, v).iter().filter(|x| x.1).count();
                    assert_eq!(into, (2 - 2 * a.get(i, j)) as usize, "in-degree at {v} of\n{a}");
                }
            }
        }
        grids.sort();
        grids.dedup();
        assert_eq!(grids.len(), all.len());
    }
}

#[test]
fn pair_faces_satisfy_degree_rules() {
    for n in 3..=4 {
        let all = enumerate_asms(n).unwrap();
        for (x, a) in all.iter().enumerate() {
            for b in &all[x + 1..] {
                let f = smallest_face(&[a.clone(), b.clone()]).unwrap();
                let g = f.graph();
                assert!(g.bridges().is_empty());
                assert_eq!(f.dimension(), affine_rank(f.vertices()));
                for i in 0..n {
                    for j in 0..n {
                        let v = GridVertex::new(i, j);
                        let deg = g.degree(v);
                        let (p, q) = (a.get(i, j), b.get(i, j));
                        assert!(deg.is_multiple_of(2), "odd degree {deg} in a two-vertex face");
                        if p * q == -1 {
                            assert_eq!(deg, 4);
                        }
                        if deg == 4 {
                            assert!(p * q == -1 || (p == 0 && q == 0));
                        }
                    }
                }
            }
        }
    }
}

fn check_degree_two(f: &Face) {
    let g = f.graph();
    let any = asm_to_simple_flow_grid(&f.vertices()[0]);
    for v in g.vertices() {
        if g.degree(v) != 2 {
            continue;
        }
        let kinds: Vec<EdgeKind> = g.incident(v).iter().map(|e| e.kind).collect();
        let values: Vec<i8> = {
            let mut s: Vec<i8> = f.vertices().iter().map(|a: &Asm| a.get(v.i, v.j)).collect();
            s.sort();
            s.dedup();
            s
        };
        let fixed: Vec<bool> = arcs(&any, v)
            .iter()
            .filter(|(e, _)| e.is_none_or(|e| !g.has_edge(e)))
            .map(|x| x.1)
            .collect();
        assert_eq!(fixed.len(), 2);
        if kinds[0] == kinds[1] {
            assert_eq!(values, [0], "collinear degree-2 vertex {v} with nonzero entries");
            assert_ne!(fixed[0], fixed[1], "collinear fixed arcs at {v} both enter or both leave");
        } else {
            assert_eq!(values.len(), 2, "right-angle vertex {v} takes values {values:?}");
            assert!(values.contains(&0));
            assert_eq!(fixed[0], fixed[1], "right-angle fixed arcs at {v} disagree");
        }
    }
}

#[test]
fn degree_two_vertices_follow_their_shape() {
    for n in 3..=4 {
        let scan = scan_faces(n, 4, usize::MAX).unwrap();
        assert!(scan.complete);
        for f in scan.faces() {
            check_degree_two(f);
        }
    }
}
