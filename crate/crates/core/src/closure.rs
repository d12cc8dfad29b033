//! Constraint propagation and exhaustive search over partially fixed grids.
//!
//! A partial grid is a mask per internal edge (see [`EdgeState`]); the
//! simple flow grids it admits are found by fixing the smallest free edge
//! both ways and propagating the six-configuration constraint after each
//! choice. Within a face this is ear fixing: fixing one edge of an ear forces
//! the rest of the ear.

use alloc::vec;
use alloc::vec::Vec;

use crate::grid::{edge_count, vertex_arcs, vertex_restrict, Arc, ElementaryFlowGrid, EdgeState, GridVertex, SimpleFlowGrid};

struct Layout {
    n: usize,
    arcs: Vec<[Arc; 4]>,
    /// Endpoint vertex ids of each edge.
    ends: Vec<[usize; 2]>,
}

impl Layout {
    fn new(n: usize) -> Self {
        let arcs: Vec<[Arc; 4]> = (0..n * n)
            .map(|k| vertex_arcs(n, GridVertex::new(k / n, k % n)))
            .collect();
        let mut ends = vec![[usize::MAX; 2]; edge_count(n)];
        for (v, a) in arcs.iter().enumerate() {
            for arc in a {
                if let Arc::Edge(e) = *arc {
                    let slot = if ends[e][0] == usize::MAX { 0 } else { 1 };
                    ends[e][slot] = v;
                }
            }
        }
        Layout { n, arcs, ends }
    }

    /// Propagates from the queued vertices; false on contradiction.
    fn propagate(&self, masks: &mut [u8], queue: &mut Vec<usize>, queued: &mut [bool]) -> bool {
        while let Some(v) = queue.pop() {
            queued[v] = false;
            let arcs = &self.arcs[v];
            let cur = arcs.map(|a| match a {
                Arc::Edge(e) => masks[e],
                Arc::Boundary(b) => 1 << b,
            });
            let next = vertex_restrict(cur);
            for k in 0..4 {
                if next[k] == 0 {
                    return false;
                }
                if next[k] != cur[k] {
                    if let Arc::Edge(e) = arcs[k] {
                        masks[e] = next[k];
                        for &w in &self.ends[e] {
                            if w != v && !queued[w] {
                                queued[w] = true;
                                queue.push(w);
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn propagate_all(&self, masks: &mut [u8]) -> bool {
        let nv = self.n * self.n;
        let mut queue: Vec<usize> = (0..nv).rev().collect();
        let mut queued = vec![true; nv];
        self.propagate(masks, &mut queue, &mut queued)
    }

    fn fix(&self, masks: &mut [u8], e: usize, value: u8) -> bool {
        masks[e] = 1 << value;
        let mut queue = Vec::with_capacity(8);
        let mut queued = vec![false; self.n * self.n];
        for &w in &self.ends[e] {
            queued[w] = true;
            queue.push(w);
        }
        self.propagate(masks, &mut queue, &mut queued)
    }

    fn search(&self, masks: &mut [u8], visit: &mut dyn FnMut(&[u8]) -> bool) -> bool {
        match masks.iter().position(|&m| m == 3) {
            None => visit(masks),
            Some(e) => {
                for value in [0u8, 1] {
                    let mut next = masks.to_vec();
                    if self.fix(&mut next, e, value) && !self.search(&mut next, visit) {
                        return false;
                    }
                }
                true
            }
        }
    }
}

/// Visits every simple flow grid admitted by `masks`; the visitor returns
/// false to stop early.
pub(crate) fn for_each_solution(n: usize, masks: Vec<u8>, mut visit: impl FnMut(&[u8]) -> bool) {
    let layout = Layout::new(n);
    let mut masks = masks;
    if masks.iter().any(|&m| m == 0 || m > 3) || !layout.propagate_all(&mut masks) {
        return;
    }
    layout.search(&mut masks, &mut visit);
}

pub(crate) fn solutions(n: usize, masks: Vec<u8>) -> Vec<SimpleFlowGrid> {
    let mut out = Vec::new();
    for_each_solution(n, masks, |m| {
        out.push(SimpleFlowGrid::from_orientations_unchecked(n, m.iter().map(|&x| x == 2).collect()));
        true
    });
    out
}

/// Smallest elementary flow grid containing every admitted simple grid, or
/// `None` when nothing is admitted.
pub(crate) fn close(n: usize, masks: Vec<u8>) -> Option<ElementaryFlowGrid> {
    let mut acc: Option<Vec<u8>> = None;
    let m = masks.len();
    for_each_solution(n, masks, |sol| {
        let acc = acc.get_or_insert_with(|| vec![0u8; m]);
        for (a, &s) in acc.iter_mut().zip(sol) {
            *a |= s;
        }
        // Once everything is doubly the answer cannot grow.
        !acc.iter().all(|&x| x == 3)
    });
    acc.map(|a| {
        let states = a.into_iter().map(|x| EdgeState::from_mask(x).expect("nonempty")).collect();
        ElementaryFlowGrid::from_states(n, states).expect("length matches")
    })
}
