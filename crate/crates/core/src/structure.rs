//! Blocks, central symmetry, cycle matrices and product decomposition.
//!
//! Regions are found by flood-filling the unit cells of the grid: two cells
//! are in the same region of a block unless a block edge separates them, and
//! the region containing the outside of the grid is the unbounded one.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::asm::Asm;
use crate::error::{Error, Result};
use crate::face::{face_lattice, smallest_face, Face};
use crate::grid::{
    asm_to_simple_flow_grid, simple_flow_grid_to_asm, DoublyDirectedGraph, EdgeKind, GridEdge, GridVertex,
    SimpleFlowGrid,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoConnectedDecomposition {
    /// Edge sets of the blocks, each sorted, ordered by smallest edge.
    pub components: Vec<Vec<GridEdge>>,
    pub cut_vertices: Vec<GridVertex>,
}

/// Block decomposition by low-point depth-first search.
pub fn two_connected_components(g: &DoublyDirectedGraph) -> TwoConnectedDecomposition {
    struct State<'a> {
        g: &'a DoublyDirectedGraph,
        n: usize,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<GridEdge>,
        blocks: Vec<Vec<GridEdge>>,
        cuts: BTreeSet<GridVertex>,
    }

    fn visit(s: &mut State<'_>, v: GridVertex, parent: Option<GridEdge>) {
        let vi = v.i * s.n + v.j;
        s.time += 1;
        s.disc[vi] = s.time;
        s.low[vi] = s.time;
        let mut children = 0;
        for e in s.g.incident(v) {
            if Some(e) == parent {
                continue;
            }
            let w = e.other(v);
            let wi = w.i * s.n + w.j;
            if s.disc[wi] == 0 {
                children += 1;
                s.stack.push(e);
                visit(s, w, Some(e));
                s.low[vi] = s.low[vi].min(s.low[wi]);
                if s.low[wi] >= s.disc[vi] {
                    if parent.is_some() || children > 1 {
                        s.cuts.insert(v);
                    }
                    let mut block = Vec::new();
                    while let Some(f) = s.stack.pop() {
                        block.push(f);
                        if f == e {
                            break;
                        }
                    }
                    block.sort();
                    s.blocks.push(block);
                }
            } else if s.disc[wi] < s.disc[vi] {
                s.stack.push(e);
                s.low[vi] = s.low[vi].min(s.disc[wi]);
            }
        }
        // a root with several children is a cut vertex only between blocks
        if parent.is_none() && children < 2 {
            s.cuts.remove(&v);
        }
    }

    let n = g.n();
    let mut s = State {
        g,
        n,
        disc: vec![0; n * n],
        low: vec![0; n * n],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
        cuts: BTreeSet::new(),
    };
    for v in g.vertices() {
        if s.disc[v.i * n + v.j] == 0 {
            visit(&mut s, v, None);
        }
    }
    let mut components = s.blocks;
    components.sort();
    TwoConnectedDecomposition { components, cut_vertices: s.cuts.into_iter().collect() }
}

/// Checks that every cut vertex has degree 4 and meets each of its two
/// blocks in one horizontal and one vertical edge.
pub fn check_cut_vertices(g: &DoublyDirectedGraph, dec: &TwoConnectedDecomposition) -> Result<()> {
    for &v in &dec.cut_vertices {
        if g.degree(v) != 4 {
            return Err(Error::InvariantViolation(format!("cut vertex {v} has degree {}", g.degree(v))));
        }
        for block in &dec.components {
            let at: Vec<&GridEdge> = block.iter().filter(|e| e.endpoints().0 == v || e.endpoints().1 == v).collect();
            if !at.is_empty() && (at.len() != 2 || at[0].kind == at[1].kind) {
                return Err(Error::InvariantViolation(format!("cut vertex {v} does not split at right angles")));
            }
        }
    }
    Ok(())
}

/// A `{0, ±1}` matrix with nonzero entries at the corners of a simple grid
/// cycle, alternating in sign around it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleMatrix {
    n: usize,
    entries: Vec<i64>,
    cycle: Vec<GridVertex>,
}

impl CycleMatrix {
    /// The clockwise cycle matrix of a cycle given as a closed vertex walk
    /// (first vertex not repeated).
    pub fn clockwise(n: usize, cycle: &[GridVertex]) -> Result<CycleMatrix> {
        let corners = corners(cycle)?;
        let top = (0..corners.len()).max_by_key(|&k| corners[k]).expect("cycles have corners");
        let mut entries = vec![0i64; n * n];
        for (k, v) in corners.iter().enumerate() {
            let dist = (k + corners.len() - top) % corners.len();
            entries[v.i * n + v.j] = if dist % 2 == 0 { 1 } else { -1 };
        }
        Ok(CycleMatrix { n, entries, cycle: cycle.to_vec() })
    }

    /// Wraps an explicit matrix after checking it against `cycle`.
    pub fn from_entries(n: usize, entries: Vec<i64>, cycle: &[GridVertex]) -> Result<CycleMatrix> {
        let cw = CycleMatrix::clockwise(n, cycle)?;
        if entries == cw.entries || entries == cw.negated().entries {
            Ok(CycleMatrix { n, entries, cycle: cycle.to_vec() })
        } else {
            Err(Error::InvariantViolation("matrix is not a cycle matrix of the given cycle".into()))
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn cycle(&self) -> &[GridVertex] {
        &self.cycle
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn negated(&self) -> CycleMatrix {
        CycleMatrix { n: self.n, entries: self.entries.iter().map(|x| -x).collect(), cycle: self.cycle.clone() }
    }

    pub fn is_clockwise(&self) -> bool {
        CycleMatrix::clockwise(self.n, &self.cycle).is_ok_and(|c| c.entries == self.entries)
    }

    /// Row and column sums vanish.
    pub fn is_balanced(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).map(|j| self.get(i, j)).sum::<i64>() == 0)
            && (0..n).all(|j| (0..n).map(|i| self.get(i, j)).sum::<i64>() == 0)
    }
}

/// Turning vertices of a closed rectilinear walk, in walk order.
fn corners(cycle: &[GridVertex]) -> Result<Vec<GridVertex>> {
    let m = cycle.len();
    if m < 4 {
        return Err(Error::Domain(format!("a grid cycle needs at least 4 vertices, got {m}")));
    }
    let out: Vec<GridVertex> = (0..m)
        .filter(|&k| {
            let (p, v, q) = (cycle[(k + m - 1) % m], cycle[k], cycle[(k + 1) % m]);
            !(p.i == v.i && v.i == q.i || p.j == v.j && v.j == q.j)
        })
        .map(|k| cycle[k])
        .collect();
    Ok(out)
}

/// Checks that `k` is a simple cycle of `g`.
pub fn check_cycle(g: &DoublyDirectedGraph, k: &[GridVertex]) -> Result<Vec<GridEdge>> {
    let mut seen = BTreeSet::new();
    if k.len() < 4 || !k.iter().all(|v| seen.insert(*v)) {
        return Err(Error::Domain("not a simple cycle".into()));
    }
    (0..k.len())
        .map(|t| {
            let (a, b) = (k[t], k[(t + 1) % k.len()]);
            GridEdge::between(a, b)
                .filter(|&e| g.has_edge(e))
                .ok_or_else(|| Error::Domain(format!("{a} and {b} are not joined by a doubly directed edge")))
        })
        .collect()
}

/// A bounded region of one block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub block: usize,
    /// Unit cells `(a, b)` with top-left corner `(a, b)`, sorted.
    pub cells: Vec<(usize, usize)>,
    /// Bounding cycle, starting at its smallest vertex.
    pub cycle: Vec<GridVertex>,
}

/// Cells on either side of an edge; `None` is the outside of the grid.
fn edge_sides(n: usize, e: GridEdge) -> [Option<(usize, usize)>; 2] {
    let cell = |a: isize, b: isize| {
        (a >= 0 && b >= 0 && (a as usize) + 1 < n && (b as usize) + 1 < n).then_some((a as usize, b as usize))
    };
    let (i, j) = (e.i as isize, e.j as isize);
    match e.kind {
        EdgeKind::Horizontal => [cell(i - 1, j), cell(i, j)],
        EdgeKind::Vertical => [cell(i, j - 1), cell(i, j)],
    }
}

/// Orders an edge set in which every vertex has degree 2 into one closed
/// walk from its smallest vertex.
fn order_cycle(edges: &[GridEdge]) -> Vec<GridVertex> {
    let mut adj: BTreeMap<GridVertex, Vec<GridVertex>> = BTreeMap::new();
    for e in edges {
        let (a, b) = e.endpoints();
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let start = *adj.keys().next().expect("nonempty cycle");
    let mut walk = vec![start];
    let mut prev = start;
    let mut cur = *adj[&start].iter().min().expect("degree 2");
    while cur != start {
        walk.push(cur);
        let next = *adj[&cur].iter().find(|&&w| w != prev).expect("degree 2");
        prev = cur;
        cur = next;
    }
    walk
}

/// Bounded regions of every block, blocks in decomposition order and regions
/// by smallest cell.
pub fn regions(g: &DoublyDirectedGraph) -> Vec<Region> {
    let n = g.n();
    let dec = two_connected_components(g);
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let cells = (n - 1) * (n - 1);
    let outside = cells;
    for (b, block) in dec.components.iter().enumerate() {
        let walls: BTreeSet<GridEdge> = block.iter().copied().collect();
        let mut parent: Vec<usize> = (0..=cells).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        let id = |c: Option<(usize, usize)>| c.map_or(outside, |(a, bb)| a * (n - 1) + bb);
        for e in crate::grid::all_edges(n) {
            if walls.contains(&e) {
                continue;
            }
            let [x, y] = edge_sides(n, e).map(id);
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            parent[rx] = ry;
        }
        let out_root = find(&mut parent, outside);
        let mut groups: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for c in 0..cells {
            let r = find(&mut parent, c);
            if r != out_root {
                groups.entry(r).or_default().push((c / (n - 1), c % (n - 1)));
            }
        }
        let mut regs: Vec<Region> = groups
            .into_values()
            .map(|cells_in| {
                let inside: BTreeSet<(usize, usize)> = cells_in.iter().copied().collect();
                let boundary: Vec<GridEdge> = block
                    .iter()
                    .copied()
                    .filter(|&e| {
                        let [x, y] = edge_sides(n, e);
                        x.is_some_and(|c| inside.contains(&c)) != y.is_some_and(|c| inside.contains(&c))
                    })
                    .collect();
                Region { block: b, cells: cells_in, cycle: order_cycle(&boundary) }
            })
            .collect();
        regs.sort_by(|x, y| x.cells[0].cmp(&y.cells[0]));
        out.extend(regs);
    }
    out
}

/// One clockwise cycle matrix per region.
pub fn basic_cycles(f: &Face) -> Vec<CycleMatrix> {
    regions(f.graph())
        .iter()
        .map(|r| CycleMatrix::clockwise(f.n(), &r.cycle).expect("region boundaries are cycles"))
        .collect()
}

/// True iff the centre of cell `(a, b)` lies inside the closed walk.
fn cell_inside(cell: (usize, usize), cycle: &[GridVertex]) -> bool {
    let (a, b) = cell;
    let m = cycle.len();
    let mut inside = false;
    for t in 0..m {
        let (p, q) = (cycle[t], cycle[(t + 1) % m]);
        // a ray from the cell centre toward increasing j crosses vertical steps
        if p.j == q.j && p.i.min(q.i) == a && p.j > b {
            inside = !inside;
        }
    }
    inside
}

/// Whether the clockwise matrices of the regions inside `k` (within the
/// block containing `k`) add up to the clockwise matrix of `k`.
pub fn cycle_sum_check(f: &Face, k: &[GridVertex]) -> Result<bool> {
    let g = f.graph();
    let edges = check_cycle(g, k)?;
    let dec = two_connected_components(g);
    let block = dec
        .components
        .iter()
        .position(|b| b.binary_search(&edges[0]).is_ok())
        .expect("edge lies in a block");
    let n = f.n();
    let mut sum = vec![0i64; n * n];
    for r in regions(g).iter().filter(|r| r.block == block && cell_inside(r.cells[0], k)) {
        let c = CycleMatrix::clockwise(n, &r.cycle)?;
        for (s, x) in sum.iter_mut().zip(c.entries()) {
            *s += x;
        }
    }
    Ok(sum == CycleMatrix::clockwise(n, k)?.entries)
}

/// Simple cycles of `g` as closed walks from their smallest vertex, at most
/// `limit` of them.
pub fn simple_cycles(g: &DoublyDirectedGraph, limit: usize) -> Vec<Vec<GridVertex>> {
    fn extend(
        g: &DoublyDirectedGraph,
        start: GridVertex,
        path: &mut Vec<GridVertex>,
        on_path: &mut BTreeSet<GridVertex>,
        out: &mut Vec<Vec<GridVertex>>,
        limit: usize,
    ) {
        let v = *path.last().expect("path starts at start");
        for w in g.neighbors(v) {
            if out.len() >= limit {
                return;
            }
            if w == start && path.len() >= 4 && path[1] < path[path.len() - 1] {
                out.push(path.clone());
            } else if w > start && !on_path.contains(&w) {
                path.push(w);
                on_path.insert(w);
                extend(g, start, path, on_path, out, limit);
                on_path.remove(&w);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in g.vertices() {
        let mut path = vec![s];
        let mut on_path = BTreeSet::from([s]);
        extend(g, s, &mut path, &mut on_path, &mut out, limit);
    }
    out
}

/// True iff every doubly-graph vertex has even degree. When it does, the
/// midpoint of every estranged pair is checked to be the same matrix.
pub fn is_centrally_symmetric(f: &Face) -> Result<bool> {
    let g = f.graph();
    if !g.vertices().iter().all(|&v| g.degree(v).is_multiple_of(2)) {
        return Ok(false);
    }
    if centre_doubled(f)?.is_none() {
        return Err(Error::InvariantViolation("estranged pairs have different midpoints".into()));
    }
    Ok(true)
}

/// `A + partner(A)`, if every vertex has a partner and the sums agree.
pub fn centre_doubled(f: &Face) -> Result<Option<Vec<i64>>> {
    let mut centre: Option<Vec<i64>> = None;
    for a in f.vertices() {
        let Some(b) = estranged_partner(f, a)? else { return Ok(None) };
        let s: Vec<i64> = a.entries().iter().zip(b.entries()).map(|(&x, &y)| (x + y) as i64).collect();
        match &centre {
            None => centre = Some(s),
            Some(c) if *c != s => return Ok(None),
            _ => {}
        }
    }
    Ok(centre)
}

/// The vertex whose grid reverses every doubly edge of `a`'s grid, when all
/// doubly-graph degrees are even.
pub fn estranged_partner(f: &Face, a: &Asm) -> Result<Option<Asm>> {
    if !f.contains_vertex(a) {
        return Err(Error::Domain(format!("matrix is not a vertex of this face:\n{a}")));
    }
    let g = f.graph();
    if !g.vertices().iter().all(|&v| g.degree(v).is_multiple_of(2)) {
        return Ok(None);
    }
    let flipped = asm_to_simple_flow_grid(a).reversed_on(g.edges().iter().copied());
    simple_flow_grid_to_asm(&flipped).map(Some).map_err(|_| {
        Error::InvariantViolation("reversing the doubly edges of a vertex gives an invalid grid".into())
    })
}

/// Vertices `b` with `F({a, b}) = F`, found by search.
pub fn estranged_by_search(f: &Face, a: &Asm) -> Vec<Asm> {
    f.vertices()
        .iter()
        .filter(|b| smallest_face(&[a.clone(), (*b).clone()]).is_ok_and(|h| h == *f))
        .cloned()
        .collect()
}

/// `b - a` for polytope-adjacent vertices.
pub fn difference_cycle_matrix(a: &Asm, b: &Asm) -> Result<CycleMatrix> {
    let f = smallest_face(&[a.clone(), b.clone()])?;
    if f.dimension() != 1 {
        return Err(Error::Domain(format!("the two matrices span a face of dimension {}, not an edge", f.dimension())));
    }
    let cycle = order_cycle(f.graph().edges());
    let entries = b.entries().iter().zip(a.entries()).map(|(&x, &y)| (x - y) as i64).collect();
    CycleMatrix::from_entries(a.n(), entries, &cycle)
}

/// The face spanned by a vertex of `f` and its reversal along `c`: an edge
/// of `f` whose doubly directed graph is `c`.
pub fn edge_flow_grid_from_cycle(f: &Face, c: &[GridVertex]) -> Result<Face> {
    edges_along_cycle(f, c)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::InvariantViolation("no vertex reverses along the cycle".into()))
}

/// Every edge of `f` whose doubly directed graph is `c`, in vertex order.
pub fn edges_along_cycle(f: &Face, c: &[GridVertex]) -> Result<Vec<Face>> {
    let g = f.graph();
    if let Some(v) = g.vertices().into_iter().find(|&v| g.degree(v) % 2 == 1) {
        return Err(Error::Precondition(format!("doubly directed graph has odd degree at {v}")));
    }
    let edges = check_cycle(g, c)?;
    let mut out: Vec<Face> = Vec::new();
    for a in f.vertices() {
        let flipped = asm_to_simple_flow_grid(a).reversed_on(edges.iter().copied());
        if let Ok(b) = simple_flow_grid_to_asm(&flipped) {
            let e = smallest_face(&[a.clone(), b])?;
            if !out.contains(&e) {
                out.push(e);
            }
        }
    }
    Ok(out)
}

/// A face split into one factor per block of its doubly directed graph.
#[derive(Clone, Debug)]
pub struct ProductDecomposition {
    pub base: Asm,
    pub blocks: Vec<Vec<GridEdge>>,
    pub factors: Vec<Face>,
}

impl ProductDecomposition {
    /// `b` on block `k`, the base vertex elsewhere.
    pub fn project(&self, b: &Asm, k: usize) -> Result<Asm> {
        let gb = asm_to_simple_flow_grid(b);
        let ga = asm_to_simple_flow_grid(&self.base);
        let n = b.n();
        let mut forward = ga.orientations().to_vec();
        for &e in &self.blocks[k] {
            forward[e.index(n)] = gb.is_forward(e);
        }
        let g = SimpleFlowGrid::from_orientations(n, forward)
            .map_err(|_| Error::InvariantViolation(format!("block {} projection is not a flow grid", k + 1)))?;
        simple_flow_grid_to_asm(&g)
    }

    /// Image of `b` in every factor.
    pub fn trace(&self, b: &Asm) -> Result<Vec<Asm>> {
        (0..self.blocks.len()).map(|k| self.project(b, k)).collect()
    }

    /// The map `b -> trace(b)` is a bijection from the vertices of `f` onto
    /// the product of the factor vertex sets.
    pub fn check_vertex_bijection(&self, f: &Face) -> Result<()> {
        let expected: usize = self.factors.iter().map(|p| p.num_vertices()).product();
        if expected != f.num_vertices() {
            return Err(Error::InvariantViolation(format!(
                "factor vertex counts multiply to {expected}, face has {}",
                f.num_vertices()
            )));
        }
        let mut images = BTreeSet::new();
        for b in f.vertices() {
            let t = self.trace(b)?;
            for (k, x) in t.iter().enumerate() {
                if !self.factors[k].vertices().contains(x) {
                    return Err(Error::InvariantViolation(format!("projection to block {} leaves the factor", k + 1)));
                }
            }
            images.insert(t);
        }
        if images.len() != f.num_vertices() {
            return Err(Error::InvariantViolation("two vertices share a trace".into()));
        }
        Ok(())
    }

    /// The face lattice of `f` matches the product of the factor lattices:
    /// nonempty faces correspond to tuples of nonempty factor faces, with
    /// dimensions adding and containment preserved both ways.
    pub fn check_lattice_product(&self, f: &Face) -> Result<()> {
        let fail = |m: &str| Err(Error::InvariantViolation(format!("lattice product check: {m}")));
        let lf = face_lattice(f)?;
        let mut factor_faces: Vec<BTreeMap<Vec<u8>, usize>> = Vec::new();
        let mut product = 1usize;
        for p in &self.factors {
            let lp = face_lattice(p)?;
            let m: BTreeMap<Vec<u8>, usize> = lp
                .elements()
                .iter()
                .filter_map(|e| e.face.as_ref().map(|x| (x.encode(), e.dimension as usize)))
                .collect();
            product *= m.len();
            factor_faces.push(m);
        }
        let faces: Vec<&Face> = lf.elements().iter().filter_map(|e| e.face.as_ref()).collect();
        if faces.len() != product {
            return fail("face counts differ");
        }
        let mut images: Vec<Vec<Face>> = Vec::with_capacity(faces.len());
        for g in &faces {
            let mut tuple = Vec::with_capacity(self.factors.len());
            let mut dim = 0;
            for (k, ff) in factor_faces.iter().enumerate() {
                let xs: Vec<Asm> = g.vertices().iter().map(|b| self.project(b, k)).collect::<Result<_>>()?;
                let h = smallest_face(&xs)?;
                match ff.get(&h.encode()) {
                    Some(&d) => dim += d,
                    None => return fail("image is not a factor face"),
                }
                tuple.push(h);
            }
            if dim != g.dimension() {
                return fail("dimensions do not add");
            }
            images.push(tuple);
        }
        let distinct: BTreeSet<Vec<Vec<u8>>> = images.iter().map(|t| t.iter().map(|h| h.encode()).collect()).collect();
        if distinct.len() != faces.len() {
            return fail("two faces share an image");
        }
        for (x, tx) in faces.iter().zip(&images) {
            for (y, ty) in faces.iter().zip(&images) {
                let below = y.contains(x);
                let below_in_product = tx.iter().zip(ty).all(|(a, b)| b.contains(a));
                if below != below_in_product {
                    return fail("containment is not preserved");
                }
            }
        }
        Ok(())
    }
}

/// Factors of `f` relative to its first vertex.
pub fn product_decomposition(f: &Face) -> Result<ProductDecomposition> {
    let base = f.vertices().first().cloned().expect("faces have vertices");
    product_decomposition_with_base(f, &base)
}

pub fn product_decomposition_with_base(f: &Face, base: &Asm) -> Result<ProductDecomposition> {
    if !f.contains_vertex(base) {
        return Err(Error::Domain("base matrix is not a vertex of the face".into()));
    }
    let dec = two_connected_components(f.graph());
    if dec.components.len() < 2 {
        return Err(Error::Domain("the doubly directed graph is 2-connected; no product split".into()));
    }
    let mut pd = ProductDecomposition { base: base.clone(), blocks: dec.components, factors: Vec::new() };
    for k in 0..pd.blocks.len() {
        let xs: Vec<Asm> = f.vertices().iter().map(|b| pd.project(b, k)).collect::<Result<_>>()?;
        pd.factors.push(smallest_face(&xs)?);
    }
    Ok(pd)
}
