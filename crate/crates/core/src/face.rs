//! Faces of `ASM_n` as elementary flow grids: vertices, ears, facets and the
//! face lattice.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};

use once_cell::race::OnceBox;

use crate::asm::Asm;
use crate::closure;
use crate::error::{Error, Result};
use crate::grid::{
    asm_to_simple_flow_grid, doubly_directed_graph, simple_flow_grid_to_asm, union,
    DoublyDirectedGraph, EdgeState, ElementaryFlowGrid, GridEdge, GridVertex, SimpleFlowGrid,
};
use crate::Limits;

/// One of the two consistent orientations of an ear.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EarDirection {
    /// The ear's smallest edge points forward.
    A,
    /// The ear's smallest edge points backward.
    B,
}

impl EarDirection {
    pub fn opposite(self) -> EarDirection {
        match self {
            EarDirection::A => EarDirection::B,
            EarDirection::B => EarDirection::A,
        }
    }
}

/// A maximal path of the doubly directed graph whose interior vertices have
/// degree 2, or a cycle through at most one branch vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ear {
    /// Edges in walking order.
    pub edges: Vec<GridEdge>,
    /// Branch vertices (degree 3 or 4) at the ends; 0, 1 or 2 of them.
    pub endpoints: Vec<GridVertex>,
    pub is_cycle: bool,
}

impl Ear {
    pub fn smallest_edge(&self) -> GridEdge {
        *self.edges.iter().min().expect("ears are nonempty")
    }
}

/// A face of `ASM_n`. Vertices, ears and facets are computed on first use and
/// cached; concurrent callers may race but all observe the same value.
pub struct Face {
    grid: ElementaryFlowGrid,
    graph: OnceBox<DoublyDirectedGraph>,
    vertices: OnceBox<Vec<Asm>>,
    ears: OnceBox<Vec<Ear>>,
    facets: OnceBox<Vec<Face>>,
}

impl Face {
    /// Wraps a grid after checking that it is a union of simple flow grids.
    pub fn from_grid(grid: ElementaryFlowGrid) -> Result<Face> {
        grid.validate()?;
        Ok(Face::from_closed(grid))
    }

    pub(crate) fn from_closed(grid: ElementaryFlowGrid) -> Face {
        Face {
            grid,
            graph: OnceBox::new(),
            vertices: OnceBox::new(),
            ears: OnceBox::new(),
            facets: OnceBox::new(),
        }
    }

    pub fn from_simple(g: &SimpleFlowGrid) -> Face {
        Face::from_closed(ElementaryFlowGrid::from_simple(g))
    }

    pub fn grid(&self) -> &ElementaryFlowGrid {
        &self.grid
    }

    pub fn n(&self) -> usize {
        self.grid.n()
    }

    pub fn encode(&self) -> Vec<u8> {
        self.grid.encode()
    }

    pub fn graph(&self) -> &DoublyDirectedGraph {
        self.graph.get_or_init(|| Box::new(doubly_directed_graph(&self.grid)))
    }

    pub fn dimension(&self) -> usize {
        self.grid.region_count()
    }

    /// Vertex ASMs in lexicographic order.
    pub fn vertices(&self) -> &[Asm] {
        self.vertices.get_or_init(|| {
            let mut vs: Vec<Asm> = closure::solutions(self.n(), self.grid.masks())
                .iter()
                .map(|g| simple_flow_grid_to_asm(g).expect("search yields valid grids"))
                .collect();
            vs.sort();
            Box::new(vs)
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices().len()
    }

    pub fn contains_vertex(&self, a: &Asm) -> bool {
        a.n() == self.n() && self.grid.admits(&asm_to_simple_flow_grid(a))
    }

    /// True iff `other` is a face of `self`.
    pub fn contains(&self, other: &Face) -> bool {
        self.grid.contains_grid(&other.grid)
    }

    /// Ears sorted by their smallest edge.
    pub fn ears(&self) -> &[Ear] {
        self.ears.get_or_init(|| Box::new(compute_ears(self.graph())))
    }

    /// Fixes `ear` in `direction` and returns the smallest face containing
    /// every vertex compatible with that choice.
    pub fn fix_ear(&self, ear: &Ear, direction: EarDirection) -> Result<Face> {
        let e = ear.smallest_edge();
        if !self.grid.state(e).is_doubly() {
            return Err(Error::Domain(format!("edge {e} is not doubly directed in this face")));
        }
        self.fix_edge(e, direction == EarDirection::A)
    }

    pub(crate) fn fix_edge(&self, e: GridEdge, forward: bool) -> Result<Face> {
        let mut masks = self.grid.masks();
        masks[e.index(self.n())] = EdgeState::fixed(forward).mask();
        closure::close(self.n(), masks).map(Face::from_closed).ok_or_else(|| {
            Error::InvariantViolation(format!("fixing doubly edge {e} admits no simple flow grid"))
        })
    }

    /// Facets in discovery order: ears in order, direction A before B.
    pub fn facets(&self) -> &[Face] {
        self.facets.get_or_init(|| {
            let d = self.dimension();
            let mut out: Vec<Face> = Vec::new();
            if d == 0 {
                return Box::new(out);
            }
            for ear in self.ears() {
                for dir in [EarDirection::A, EarDirection::B] {
                    let f = self.fix_ear(ear, dir).expect("ear of a valid face");
                    if f.dimension() + 1 == d && !out.iter().any(|g| g.grid == f.grid) {
                        out.push(f);
                    }
                }
            }
            Box::new(out)
        })
    }

    pub fn num_facets(&self) -> usize {
        self.facets().len()
    }
}

impl Clone for Face {
    fn clone(&self) -> Self {
        let f = Face::from_closed(self.grid.clone());
        if let Some(g) = self.graph.get() {
            let _ = f.graph.set(Box::new(g.clone()));
        }
        if let Some(v) = self.vertices.get() {
            let _ = f.vertices.set(Box::new(v.clone()));
        }
        if let Some(e) = self.ears.get() {
            let _ = f.ears.set(Box::new(e.clone()));
        }
        if let Some(x) = self.facets.get() {
            let _ = f.facets.set(Box::new(x.clone()));
        }
        f
    }
}

impl PartialEq for Face {
    fn eq(&self, other: &Self) -> bool {
        self.grid == other.grid
    }
}

impl Eq for Face {}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grid.cmp(&other.grid)
    }
}

impl Hash for Face {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.grid.hash(state)
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Face").field("dimension", &self.dimension()).field("grid", &self.grid).finish()
    }
}

/// The face `F(X)`: the union of the simple flow grids of `xs`.
pub fn smallest_face(xs: &[Asm]) -> Result<Face> {
    let grids: Vec<SimpleFlowGrid> = xs.iter().map(asm_to_simple_flow_grid).collect();
    Ok(Face::from_closed(union(&grids)?))
}

fn compute_ears(g: &DoublyDirectedGraph) -> Vec<Ear> {
    let n = g.n();
    let mut used = vec![false; crate::grid::edge_count(n)];
    let mut ears = Vec::new();
    let is_branch = |v: GridVertex| g.degree(v) >= 3;

    let walk = |start: GridVertex, first: GridEdge, used: &mut Vec<bool>| -> Ear {
        let mut edges = vec![first];
        used[first.index(n)] = true;
        let mut prev = first;
        let mut cur = first.other(start);
        while cur != start && !is_branch(cur) {
            let next = g
                .incident(cur)
                .into_iter()
                .find(|&e| e != prev)
                .expect("degree-2 vertex has a second edge");
            used[next.index(n)] = true;
            edges.push(next);
            prev = next;
            cur = next.other(cur);
        }
        let is_cycle = cur == start;
        let mut endpoints = Vec::new();
        if is_branch(start) {
            endpoints.push(start);
        }
        if is_branch(cur) && cur != start {
            endpoints.push(cur);
        }
        endpoints.sort();
        Ear { edges, endpoints, is_cycle }
    };

    for v in g.vertices() {
        if !is_branch(v) {
            continue;
        }
        for e in g.incident(v) {
            if !used[e.index(n)] {
                ears.push(walk(v, e, &mut used));
            }
        }
    }
    for &e in g.edges() {
        if !used[e.index(n)] {
            let (a, _) = e.endpoints();
            ears.push(walk(a, e, &mut used));
        }
    }
    ears.sort_by_key(|e| e.smallest_edge());
    ears
}

/// One element of a face lattice. The empty face has `face == None` and
/// dimension -1.
#[derive(Clone, Debug)]
pub struct LatticeElement {
    pub face: Option<Face>,
    pub dimension: isize,
    /// Indices of the elements this one covers.
    pub covers: Vec<usize>,
}

/// All faces of a face, with cover relations.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    elements: Vec<LatticeElement>,
    top: usize,
}

impl FaceLattice {
    pub fn elements(&self) -> &[LatticeElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Index of the empty face.
    pub fn bottom(&self) -> usize {
        0
    }

    /// Number of faces of each dimension `0..=d`.
    pub fn f_vector(&self) -> Vec<usize> {
        let d = self.elements[self.top].dimension;
        let mut f = vec![0usize; (d + 1) as usize];
        for el in &self.elements {
            if el.dimension >= 0 {
                f[el.dimension as usize] += 1;
            }
        }
        f
    }

    pub fn faces_of_dimension(&self, d: usize) -> impl Iterator<Item = &Face> + '_ {
        self.elements
            .iter()
            .filter(move |e| e.dimension == d as isize)
            .filter_map(|e| e.face.as_ref())
    }

    /// Partial order: `a <= b` iff face `a` is contained in face `b`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        match (&self.elements[a].face, &self.elements[b].face) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(x), Some(y)) => y.contains(x),
        }
    }
}

/// Face lattice of `f` with the default dimension guard.
pub fn face_lattice(f: &Face) -> Result<FaceLattice> {
    face_lattice_limited(f, Limits::default().max_lattice_dim)
}

pub fn face_lattice_limited(f: &Face, max_dim: usize) -> Result<FaceLattice> {
    let d = f.dimension();
    if d > max_dim {
        return Err(Error::ResourceGuard { what: "face dimension", value: d, limit: max_dim });
    }
    let mut elements = vec![LatticeElement { face: None, dimension: -1, covers: Vec::new() }];
    let mut memo: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    let top = insert_face(f.clone(), &mut elements, &mut memo);
    Ok(FaceLattice { elements, top })
}

fn insert_face(f: Face, elements: &mut Vec<LatticeElement>, memo: &mut BTreeMap<Vec<u8>, usize>) -> usize {
    let key = f.encode();
    if let Some(&k) = memo.get(&key) {
        return k;
    }
    let covers = if f.dimension() == 0 {
        vec![0]
    } else {
        let mut c: Vec<usize> = f.facets().iter().map(|g| insert_face(g.clone(), elements, memo)).collect();
        c.sort_unstable();
        c
    };
    let dimension = f.dimension() as isize;
    elements.push(LatticeElement { face: Some(f), dimension, covers });
    let k = elements.len() - 1;
    memo.insert(key, k);
    k
}

/// Certificate that a facet's hyperplane has a parallel translate through
/// all other vertices.
#[derive(Clone, Debug)]
pub struct TwoLevelWitness {
    pub facet: Face,
    /// The edge whose orientation defines the facet.
    pub edge: GridEdge,
    /// Orientation of `edge` on the facet.
    pub forward: bool,
    /// The face cut out by the opposite orientation; its vertices are exactly
    /// the vertices of the face outside the facet.
    pub complement: Face,
}

#[derive(Clone, Debug)]
pub struct TwoLevelReport {
    pub holds: bool,
    pub witnesses: Vec<TwoLevelWitness>,
    /// Facets for which no witness was found.
    pub failures: Vec<Face>,
}

/// Checks, facet by facet, that the vertices off the facet form the opposite
/// face of an ear fixing.
pub fn is_two_level(f: &Face) -> Result<TwoLevelReport> {
    if f.dimension() == 0 {
        return Err(Error::Precondition("a vertex has no facets".into()));
    }
    let mut witnesses = Vec::new();
    let mut failures = Vec::new();
    for g in f.facets() {
        match two_level_witness(f, g) {
            Some(w) => witnesses.push(w),
            None => failures.push(g.clone()),
        }
    }
    Ok(TwoLevelReport { holds: failures.is_empty(), witnesses, failures })
}

fn two_level_witness(f: &Face, g: &Face) -> Option<TwoLevelWitness> {
    for ear in f.ears() {
        for forward in [true, false] {
            let e = ear.smallest_edge();
            let Ok(h) = f.fix_edge(e, forward) else { continue };
            if h != *g {
                continue;
            }
            let complement = f.fix_edge(e, !forward).ok()?;
            let off: Vec<&Asm> = f.vertices().iter().filter(|a| !g.vertices().contains(a)).collect();
            let comp: Vec<&Asm> = complement.vertices().iter().collect();
            return (off == comp).then(|| TwoLevelWitness { facet: g.clone(), edge: e, forward, complement });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asm::enumerate_asms;
    use crate::samples;

    fn top_face(n: usize) -> Face {
        smallest_face(&enumerate_asms(n).unwrap()).unwrap()
    }

    #[test]
    fn small_faces() {
        let e = smallest_face(&[samples::d3(), samples::d3_neighbour()]).unwrap();
        assert_eq!(e.dimension(), 1);
        assert_eq!(e.vertices(), &[samples::d3(), samples::d3_neighbour()][..]);
        let v = smallest_face(&[samples::d3()]).unwrap();
        assert_eq!((v.dimension(), v.vertices()), (0, &[samples::d3()][..]));
        let t = smallest_face(&samples::triangle_asms()).unwrap();
        assert_eq!((t.dimension(), t.num_vertices()), (2, 3));
        assert!(smallest_face(&[]).is_err());
        assert!(smallest_face(&[Asm::identity(2), Asm::identity(3)]).is_err());
    }

    #[test]
    fn top_face_dimension_and_facets() {
        for (n, d, f) in [(3, 4, 8), (4, 9, 20)] {
            let t = top_face(n);
            assert_eq!(t.dimension(), d);
            assert_eq!(t.num_facets(), f);
        }
        assert_eq!(top_face(4).vertices(), enumerate_asms(4).unwrap().as_slice());
    }

    #[test]
    fn triangle_ears_and_fixings() {
        let t = Face::from_grid(samples::triangle_grid()).unwrap();
        let ears = t.ears();
        assert_eq!(ears.len(), 3);
        for ear in ears {
            assert_eq!(ear.endpoints, vec![GridVertex::new(1, 0), GridVertex::new(1, 1)]);
        }
        // the ear consisting of the single horizontal edge (2,1)-(2,2)
        let h = ears.iter().find(|e| e.edges == [GridEdge::horizontal(1, 0)]).unwrap();
        // right to left
        assert_eq!(t.fix_ear(h, EarDirection::B).unwrap().dimension(), 1);
        // left to right forces everything
        assert_eq!(t.fix_ear(h, EarDirection::A).unwrap().dimension(), 0);
        assert_eq!(t.num_facets(), 3);
    }

    #[test]
    fn edge_ear_gives_endpoints() {
        let e = Face::from_grid(samples::edge_grid()).unwrap();
        assert_eq!(e.ears().len(), 1);
        assert!(e.ears()[0].is_cycle && e.ears()[0].endpoints.is_empty());
        let mut ends: Vec<Asm> = [EarDirection::A, EarDirection::B]
            .iter()
            .map(|&d| e.fix_ear(&e.ears()[0], d).unwrap().vertices()[0].clone())
            .collect();
        ends.sort();
        assert_eq!(ends, e.vertices());
    }

    #[test]
    fn iterated_pyramid_has_nine_ears() {
        let f = Face::from_grid(samples::square_pyramid_pyramid_grid()).unwrap();
        assert_eq!(f.ears().len(), 9);
        assert_eq!((f.dimension(), f.num_vertices(), f.num_facets()), (4, 6, 6));
    }

    #[test]
    fn bipyramid_counts() {
        let f = Face::from_grid(samples::cubical_bipyramid_grid()).unwrap();
        assert_eq!((f.dimension(), f.num_vertices(), f.num_facets()), (4, 10, 12));
        let r = is_two_level(&f).unwrap();
        assert!(r.holds);
        assert_eq!(r.witnesses.len(), 12);
    }

    #[test]
    fn lattices() {
        let t = Face::from_grid(samples::triangle_grid()).unwrap();
        let l = face_lattice(&t).unwrap();
        assert_eq!(l.len(), 8);
        assert_eq!(l.f_vector(), vec![3, 3, 1]);
        let o = Face::from_grid(samples::octahedron_grid()).unwrap();
        assert_eq!(face_lattice(&o).unwrap().f_vector(), vec![6, 12, 8, 1]);
        assert_eq!(face_lattice(&top_face(3)).unwrap().f_vector(), vec![7, 17, 18, 8, 1]);
        assert!(matches!(
            face_lattice(&top_face(4)),
            Err(Error::ResourceGuard { value: 9, .. })
        ));
    }

    #[test]
    fn lattice_order_is_containment() {
        let l = face_lattice(&top_face(3)).unwrap();
        for (k, el) in l.elements().iter().enumerate() {
            assert!(l.leq(l.bottom(), k) && l.leq(k, l.top()));
            for &c in &el.covers {
                assert!(l.leq(c, k) && !l.leq(k, c));
                assert_eq!(l.elements()[c].dimension + 1, el.dimension);
            }
        }
    }

    #[test]
    fn every_face_of_asm3_is_two_level() {
        let l = face_lattice(&top_face(3)).unwrap();
        for el in l.elements() {
            if let Some(f) = &el.face {
                if el.dimension >= 1 {
                    assert!(is_two_level(f).unwrap().holds);
                }
            }
        }
    }

    #[test]
    fn closure_of_vertices_is_the_face() {
        for f in [samples::octahedron_grid(), samples::square_grid(), samples::cubical_bipyramid_grid()] {
            let face = Face::from_grid(f).unwrap();
            assert_eq!(smallest_face(face.vertices()).unwrap(), face);
        }
    }
}
