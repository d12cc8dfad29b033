//! Simple and elementary flow grids and the doubly directed graph.
//!
//! Internal grid edges carry state; the boundary arcs are implicit and always
//! point outward. An edge is *forward* when it points toward increasing
//! coordinate: right for horizontal edges, down for vertical ones.
//!
//! Edge state coincides with the internal partial sums of the ASM: the
//! horizontal edge `(i,j)-(i,j+1)` is forward iff `W[i][j] = 1`, and the
//! vertical edge `(i,j)-(i+1,j)` is forward iff `N[i][j] = 1`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::asm::{partial_sums, Asm};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    Horizontal,
    Vertical,
}

/// A grid vertex `(i, j)`, 0-based. Displays 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridVertex {
    pub i: usize,
    pub j: usize,
}

impl GridVertex {
    pub const fn new(i: usize, j: usize) -> Self {
        GridVertex { i, j }
    }
}

impl fmt::Display for GridVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i + 1, self.j + 1)
    }
}

/// An internal edge, anchored at its top/left endpoint (0-based).
///
/// Horizontal edges join `(i,j)` to `(i,j+1)`; vertical edges join `(i,j)`
/// to `(i+1,j)`. The derived order (horizontal first, then row-major) is the
/// canonical edge order used by encodings and tie-breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridEdge {
    pub kind: EdgeKind,
    pub i: usize,
    pub j: usize,
}

impl GridEdge {
    pub const fn horizontal(i: usize, j: usize) -> Self {
        GridEdge { kind: EdgeKind::Horizontal, i, j }
    }

    pub const fn vertical(i: usize, j: usize) -> Self {
        GridEdge { kind: EdgeKind::Vertical, i, j }
    }

    /// Edge joining two adjacent vertices, if they are adjacent.
    pub fn between(a: GridVertex, b: GridVertex) -> Option<GridEdge> {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if lo.i == hi.i && lo.j + 1 == hi.j {
            Some(GridEdge::horizontal(lo.i, lo.j))
        } else if lo.j == hi.j && lo.i + 1 == hi.i {
            Some(GridEdge::vertical(lo.i, lo.j))
        } else {
            None
        }
    }

    pub fn index(self, n: usize) -> usize {
        match self.kind {
            EdgeKind::Horizontal => self.i * (n - 1) + self.j,
            EdgeKind::Vertical => n * (n - 1) + self.i * n + self.j,
        }
    }

    pub fn from_index(n: usize, idx: usize) -> GridEdge {
        let h = n * (n - 1);
        if idx < h {
            GridEdge::horizontal(idx / (n - 1), idx % (n - 1))
        } else {
            let k = idx - h;
            GridEdge::vertical(k / n, k % n)
        }
    }

    /// `(low, high)` endpoints; the edge is forward when it points to `high`.
    pub fn endpoints(self) -> (GridVertex, GridVertex) {
        let a = GridVertex::new(self.i, self.j);
        let b = match self.kind {
            EdgeKind::Horizontal => GridVertex::new(self.i, self.j + 1),
            EdgeKind::Vertical => GridVertex::new(self.i + 1, self.j),
        };
        (a, b)
    }

    pub fn other(self, v: GridVertex) -> GridVertex {
        let (a, b) = self.endpoints();
        if v == a {
            b
        } else {
            a
        }
    }

    fn in_range(self, n: usize) -> bool {
        match self.kind {
            EdgeKind::Horizontal => self.i < n && self.j + 1 < n,
            EdgeKind::Vertical => self.i + 1 < n && self.j < n,
        }
    }
}

impl fmt::Display for GridEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.endpoints();
        write!(f, "{a}-{b}")
    }
}

/// Number of internal edges of the order-`n` grid.
pub const fn edge_count(n: usize) -> usize {
    2 * n * n.saturating_sub(1)
}

/// All internal edges in canonical order.
pub fn all_edges(n: usize) -> impl Iterator<Item = GridEdge> {
    (0..edge_count(n)).map(move |k| GridEdge::from_index(n, k))
}

/// Per-edge state of an elementary flow grid.
///
/// The discriminant is the set of partial-sum values the edge admits:
/// bit 0 for value 0 (backward), bit 1 for value 1 (forward).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum EdgeState {
    Backward = 1,
    Forward = 2,
    Doubly = 3,
}

impl EdgeState {
    pub fn from_mask(mask: u8) -> Option<EdgeState> {
        match mask {
            1 => Some(EdgeState::Backward),
            2 => Some(EdgeState::Forward),
            3 => Some(EdgeState::Doubly),
            _ => None,
        }
    }

    pub fn mask(self) -> u8 {
        self as u8
    }

    pub fn fixed(forward: bool) -> EdgeState {
        if forward {
            EdgeState::Forward
        } else {
            EdgeState::Backward
        }
    }

    pub fn is_doubly(self) -> bool {
        self == EdgeState::Doubly
    }

    pub fn as_char(self) -> char {
        match self {
            EdgeState::Forward => 'F',
            EdgeState::Backward => 'B',
            EdgeState::Doubly => 'D',
        }
    }

    pub fn from_char(c: char) -> Option<EdgeState> {
        match c {
            'F' => Some(EdgeState::Forward),
            'B' => Some(EdgeState::Backward),
            'D' => Some(EdgeState::Doubly),
            _ => None,
        }
    }
}

/// The four arcs at an internal vertex, as partial-sum masks in the order
/// left, right, up, down. Boundary arcs are constants.
pub(crate) fn vertex_arcs(n: usize, v: GridVertex) -> [Arc; 4] {
    let GridVertex { i, j } = v;
    let left = if j == 0 { Arc::Boundary(0) } else { Arc::Edge(GridEdge::horizontal(i, j - 1).index(n)) };
    let right = if j + 1 == n { Arc::Boundary(1) } else { Arc::Edge(GridEdge::horizontal(i, j).index(n)) };
    let up = if i == 0 { Arc::Boundary(0) } else { Arc::Edge(GridEdge::vertical(i - 1, j).index(n)) };
    let down = if i + 1 == n { Arc::Boundary(1) } else { Arc::Edge(GridEdge::vertical(i, j).index(n)) };
    [left, right, up, down]
}

#[derive(Clone, Copy, Debug)]
pub(crate) enum Arc {
    Edge(usize),
    /// Fixed partial-sum value of an outward boundary arc.
    Boundary(u8),
}

/// Restricts four arc masks to the six vertex configurations.
///
/// An assignment `(l, r, u, d)` of partial sums is allowed iff
/// `r - l == d - u`; the vertex entry is then `r - l`. Returns the tightened
/// masks, with an empty mask signalling a contradiction.
pub(crate) fn vertex_restrict(masks: [u8; 4]) -> [u8; 4] {
    let mut out = [0u8; 4];
    for combo in 0u8..16 {
        let bits = [combo & 1, (combo >> 1) & 1, (combo >> 2) & 1, (combo >> 3) & 1];
        if (0..4).any(|k| masks[k] & (1 << bits[k]) == 0) {
            continue;
        }
        let (l, r, u, d) = (bits[0] as i8, bits[1] as i8, bits[2] as i8, bits[3] as i8);
        if r - l != d - u {
            continue;
        }
        for k in 0..4 {
            out[k] |= 1 << bits[k];
        }
    }
    out
}

/// One orientation of every internal edge: the flow grid of a single ASM.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleFlowGrid {
    n: usize,
    forward: Vec<bool>,
}

impl SimpleFlowGrid {
    /// Checked constructor: every vertex must realize one of the six
    /// configurations.
    pub fn from_orientations(n: usize, forward: Vec<bool>) -> Result<Self> {
        if n == 0 || forward.len() != edge_count(n) {
            return Err(Error::Structure(format!(
                "expected {} edge orientations for n = {n}, got {}",
                edge_count(n),
                forward.len()
            )));
        }
        let g = SimpleFlowGrid { n, forward };
        g.validate()?;
        Ok(g)
    }

    pub(crate) fn from_orientations_unchecked(n: usize, forward: Vec<bool>) -> Self {
        SimpleFlowGrid { n, forward }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_forward(&self, e: GridEdge) -> bool {
        self.forward[e.index(self.n)]
    }

    pub fn orientations(&self) -> &[bool] {
        &self.forward
    }

    fn arc_value(&self, arc: Arc) -> u8 {
        match arc {
            Arc::Edge(k) => self.forward[k] as u8,
            Arc::Boundary(b) => b,
        }
    }

    /// Entry of the corresponding ASM at `v`, or `None` when the arcs at `v`
    /// are not one of the six configurations.
    pub fn entry_at(&self, v: GridVertex) -> Option<i8> {
        let [l, r, u, d] = vertex_arcs(self.n, v).map(|a| self.arc_value(a) as i8);
        (r - l == d - u).then_some(r - l)
    }

    pub fn validate(&self) -> Result<()> {
        for i in 0..self.n {
            for j in 0..self.n {
                if self.entry_at(GridVertex::new(i, j)).is_none() {
                    return Err(Error::InvalidFlowGrid { i: i + 1, j: j + 1 });
                }
            }
        }
        Ok(())
    }

    /// Reverses the given edges.
    pub fn reversed_on(&self, edges: impl IntoIterator<Item = GridEdge>) -> SimpleFlowGrid {
        let mut forward = self.forward.clone();
        for e in edges {
            let k = e.index(self.n);
            forward[k] = !forward[k];
        }
        SimpleFlowGrid { n: self.n, forward }
    }
}

/// The simple flow grid of `a`: an edge points down from `(i,j)` iff
/// `N[i][j] = 1`, and right from `(i,j)` iff `W[i][j] = 1`.
pub fn asm_to_simple_flow_grid(a: &Asm) -> SimpleFlowGrid {
    let n = a.n();
    let ps = partial_sums(a);
    let forward = all_edges(n)
        .map(|e| match e.kind {
            EdgeKind::Horizontal => ps.west(e.i, e.j) == 1,
            EdgeKind::Vertical => ps.north(e.i, e.j) == 1,
        })
        .collect();
    SimpleFlowGrid { n, forward }
}

/// Inverse of [`asm_to_simple_flow_grid`].
pub fn simple_flow_grid_to_asm(g: &SimpleFlowGrid) -> Result<Asm> {
    let n = g.n;
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let x = g
                .entry_at(GridVertex::new(i, j))
                .ok_or(Error::InvalidFlowGrid { i: i + 1, j: j + 1 })?;
            entries.push(x);
        }
    }
    Ok(Asm::from_entries_unchecked(n, entries))
}

/// A union of simple flow grids: each internal edge is fixed in one direction
/// or doubly directed.
///
/// The state map alone does not guarantee that the grid is a genuine union;
/// [`ElementaryFlowGrid::validate`] checks that constructively.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementaryFlowGrid {
    n: usize,
    states: Vec<EdgeState>,
}

impl ElementaryFlowGrid {
    pub fn from_states(n: usize, states: Vec<EdgeState>) -> Result<Self> {
        if n == 0 || states.len() != edge_count(n) {
            return Err(Error::Structure(format!(
                "expected {} edge states for n = {n}, got {}",
                edge_count(n),
                states.len()
            )));
        }
        Ok(ElementaryFlowGrid { n, states })
    }

    /// Builds from `n` rows of `n - 1` horizontal states and `n - 1` rows of
    /// `n` vertical states, each written with the letters `F`, `B`, `D`.
    pub fn from_rows<S: AsRef<str>>(n: usize, horizontal: &[S], vertical: &[S]) -> Result<Self> {
        if n == 0 || horizontal.len() != n || vertical.len() + 1 != n {
            return Err(Error::Structure(format!(
                "expected {n} horizontal rows and {} vertical rows",
                n.saturating_sub(1)
            )));
        }
        let mut states = Vec::with_capacity(edge_count(n));
        for (rows, width) in [(horizontal, n - 1), (vertical, n)] {
            for (r, row) in rows.iter().enumerate() {
                let row = row.as_ref();
                if row.chars().count() != width {
                    return Err(Error::Structure(format!(
                        "row {} has {} states, expected {width}",
                        r + 1,
                        row.chars().count()
                    )));
                }
                for c in row.chars() {
                    states.push(
                        EdgeState::from_char(c)
                            .ok_or_else(|| Error::Structure(format!("unknown edge state {c:?}")))?,
                    );
                }
            }
        }
        ElementaryFlowGrid::from_states(n, states)
    }

    pub fn from_simple(g: &SimpleFlowGrid) -> Self {
        ElementaryFlowGrid {
            n: g.n,
            states: g.forward.iter().map(|&f| EdgeState::fixed(f)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn state(&self, e: GridEdge) -> EdgeState {
        self.states[e.index(self.n)]
    }

    pub fn states(&self) -> &[EdgeState] {
        &self.states
    }

    /// Rows of state letters, horizontal block then vertical block.
    pub fn to_rows(&self) -> (Vec<String>, Vec<String>) {
        let n = self.n;
        let h = n * (n - 1);
        let horizontal = self.states[..h]
            .chunks(n - 1)
            .map(|r| r.iter().map(|s| s.as_char()).collect())
            .collect();
        let vertical = if n > 1 {
            self.states[h..].chunks(n).map(|r| r.iter().map(|s| s.as_char()).collect()).collect()
        } else {
            Vec::new()
        };
        (horizontal, vertical)
    }

    pub fn doubly_edges(&self) -> impl Iterator<Item = GridEdge> + '_ {
        self.states
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_doubly())
            .map(|(k, _)| GridEdge::from_index(self.n, k))
    }

    pub fn is_simple(&self) -> bool {
        !self.states.iter().any(|s| s.is_doubly())
    }

    /// True iff every fixed edge of `self` agrees with `g`.
    pub fn admits(&self, g: &SimpleFlowGrid) -> bool {
        self.n == g.n
            && self
                .states
                .iter()
                .zip(&g.forward)
                .all(|(s, &f)| s.mask() & (1 << f as u8) != 0)
    }

    /// True iff every simple grid admitted by `other` is admitted by `self`.
    pub fn contains_grid(&self, other: &ElementaryFlowGrid) -> bool {
        self.n == other.n
            && self
                .states
                .iter()
                .zip(&other.states)
                .all(|(a, b)| a.mask() & b.mask() == b.mask())
    }

    pub fn union_with(&mut self, g: &SimpleFlowGrid) {
        for (s, &f) in self.states.iter_mut().zip(&g.forward) {
            *s = EdgeState::from_mask(s.mask() | (1 << f as u8)).expect("nonempty mask");
        }
    }

    pub fn union_grid(&mut self, other: &ElementaryFlowGrid) {
        for (s, o) in self.states.iter_mut().zip(&other.states) {
            *s = EdgeState::from_mask(s.mask() | o.mask()).expect("nonempty mask");
        }
    }

    /// Canonical binary encoding: one byte `n`, then 2 bits per edge in
    /// canonical edge order, four edges per byte, low bits first.
    pub fn encode(&self) -> Vec<u8> {
        let mut out = vec![0u8; 1 + self.states.len().div_ceil(4)];
        out[0] = self.n as u8;
        for (k, s) in self.states.iter().enumerate() {
            out[1 + k / 4] |= s.mask() << (2 * (k % 4));
        }
        out
    }

    pub fn decode(bytes: &[u8]) -> Result<Self> {
        let (&n, rest) =
            bytes.split_first().ok_or_else(|| Error::Structure("empty encoding".into()))?;
        let n = n as usize;
        let m = edge_count(n);
        if n == 0 || rest.len() != m.div_ceil(4) {
            return Err(Error::Structure(format!(
                "encoding length {} does not match n = {n}",
                bytes.len()
            )));
        }
        let mut states = Vec::with_capacity(m);
        for k in 0..m {
            let mask = (rest[k / 4] >> (2 * (k % 4))) & 3;
            states.push(
                EdgeState::from_mask(mask)
                    .ok_or_else(|| Error::Structure(format!("empty state at edge {k}")))?,
            );
        }
        if rest.iter().enumerate().any(|(b, &byte)| {
            let used = (m - 4 * b).min(4);
            used < 4 && byte >> (2 * used) != 0
        }) {
            return Err(Error::Structure("nonzero padding bits".into()));
        }
        Ok(ElementaryFlowGrid { n, states })
    }

    /// Number of doubly directed regions, computed straight from the states.
    pub fn region_count(&self) -> usize {
        let n = self.n;
        let mut parent: Vec<usize> = (0..n * n).collect();
        let mut touched = vec![false; n * n];
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let (mut edges, mut merges) = (0, 0);
        for (k, s) in self.states.iter().enumerate() {
            if !s.is_doubly() {
                continue;
            }
            edges += 1;
            let (a, b) = GridEdge::from_index(n, k).endpoints();
            let (x, y) = (a.i * n + a.j, b.i * n + b.j);
            touched[x] = true;
            touched[y] = true;
            let (rx, ry) = (root(&mut parent, x), root(&mut parent, y));
            if rx != ry {
                parent[rx] = ry;
                merges += 1;
            }
        }
        // |E| - |V| + components, with components = |V| - merges
        edges - merges
    }

    pub(crate) fn masks(&self) -> Vec<u8> {
        self.states.iter().map(|s| s.mask()).collect()
    }

    /// Checks that the state map is the union of the simple grids it admits.
    pub fn validate(&self) -> Result<()> {
        match crate::closure::close(self.n, self.masks()) {
            Some(closed) if closed == *self => Ok(()),
            Some(closed) => {
                let k = self
                    .states
                    .iter()
                    .zip(closed.states())
                    .position(|(a, b)| a != b)
                    .expect("grids differ");
                Err(Error::InvariantViolation(format!(
                    "edge {} is doubly directed but fixed in every admitted simple flow grid",
                    GridEdge::from_index(self.n, k)
                )))
            }
            None => Err(Error::InvariantViolation(
                "no simple flow grid is compatible with the fixed edges".into(),
            )),
        }
    }
}

impl fmt::Debug for ElementaryFlowGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (h, v) = self.to_rows();
        f.debug_struct("ElementaryFlowGrid")
            .field("n", &self.n)
            .field("horizontal", &h)
            .field("vertical", &v)
            .finish()
    }
}

/// Edge-wise union: fixed where all grids agree, doubly where they differ.
pub fn union(grids: &[SimpleFlowGrid]) -> Result<ElementaryFlowGrid> {
    let (first, rest) =
        grids.split_first().ok_or_else(|| Error::Structure("union of no grids".into()))?;
    let mut out = ElementaryFlowGrid::from_simple(first);
    for g in rest {
        if g.n != first.n {
            return Err(Error::Structure(format!(
                "mixed grid orders {} and {}",
                first.n, g.n
            )));
        }
        out.union_with(g);
    }
    Ok(out)
}

/// Undirected graph of the doubly directed edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublyDirectedGraph {
    n: usize,
    edges: Vec<GridEdge>,
    present: Vec<bool>,
}

impl DoublyDirectedGraph {
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = GridEdge>) -> Result<Self> {
        let mut present = vec![false; edge_count(n)];
        let mut list = Vec::new();
        for e in edges {
            if !e.in_range(n) {
                return Err(Error::Structure(format!("edge {e} outside the order-{n} grid")));
            }
            if !present[e.index(n)] {
                present[e.index(n)] = true;
                list.push(e);
            }
        }
        list.sort();
        Ok(DoublyDirectedGraph { n, edges: list, present })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges in canonical order.
    pub fn edges(&self) -> &[GridEdge] {
        &self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn has_edge(&self, e: GridEdge) -> bool {
        e.in_range(self.n) && self.present[e.index(self.n)]
    }

    /// Incident doubly edges of `v`, in left, right, up, down order.
    pub fn incident(&self, v: GridVertex) -> Vec<GridEdge> {
        let n = self.n;
        let GridVertex { i, j } = v;
        let mut out = Vec::with_capacity(4);
        let cand = [
            (j > 0).then(|| GridEdge::horizontal(i, j.wrapping_sub(1))),
            (j + 1 < n).then(|| GridEdge::horizontal(i, j)),
            (i > 0).then(|| GridEdge::vertical(i.wrapping_sub(1), j)),
            (i + 1 < n).then(|| GridEdge::vertical(i, j)),
        ];
        for e in cand.into_iter().flatten() {
            if self.present[e.index(n)] {
                out.push(e);
            }
        }
        out
    }

    pub fn degree(&self, v: GridVertex) -> usize {
        self.incident(v).len()
    }

    pub fn neighbors(&self, v: GridVertex) -> Vec<GridVertex> {
        self.incident(v).into_iter().map(|e| e.other(v)).collect()
    }

    /// Vertices with positive degree, sorted.
    pub fn vertices(&self) -> Vec<GridVertex> {
        let mut vs: Vec<GridVertex> = self
            .edges
            .iter()
            .flat_map(|e| {
                let (a, b) = e.endpoints();
                [a, b]
            })
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Connected components as sorted vertex lists, ordered by first vertex.
    pub fn components(&self) -> Vec<Vec<GridVertex>> {
        let vs = self.vertices();
        let mut seen = vec![false; self.n * self.n];
        let mut out = Vec::new();
        for &v in &vs {
            if seen[v.i * self.n + v.j] {
                continue;
            }
            seen[v.i * self.n + v.j] = true;
            let mut comp = vec![v];
            let mut stack = vec![v];
            while let Some(u) = stack.pop() {
                for w in self.neighbors(u) {
                    if !seen[w.i * self.n + w.j] {
                        seen[w.i * self.n + w.j] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    /// Edges that lie on no cycle.
    pub fn bridges(&self) -> Vec<GridEdge> {
        self.edges.iter().copied().filter(|&e| !self.connected_without(e)).collect()
    }

    fn connected_without(&self, e: GridEdge) -> bool {
        let (a, b) = e.endpoints();
        let mut seen = vec![false; self.n * self.n];
        seen[a.i * self.n + a.j] = true;
        let mut stack = vec![a];
        while let Some(u) = stack.pop() {
            for f in self.incident(u) {
                if f == e {
                    continue;
                }
                let w = f.other(u);
                if w == b {
                    return true;
                }
                if !seen[w.i * self.n + w.j] {
                    seen[w.i * self.n + w.j] = true;
                    stack.push(w);
                }
            }
        }
        false
    }

    fn cyclomatic(&self) -> usize {
        self.edges.len() + self.components().len() - self.vertices().len()
    }
}

pub fn doubly_directed_graph(e: &ElementaryFlowGrid) -> DoublyDirectedGraph {
    DoublyDirectedGraph::from_edges(e.n, e.doubly_edges()).expect("edges in range")
}

/// Bounded faces of the grid embedding: `|E| - |V| + components`.
pub fn doubly_directed_regions(g: &DoublyDirectedGraph) -> usize {
    g.cyclomatic()
}

/// Counts of doubly-graph vertices of degree 2, 3 and 4.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct DegreeProfile {
    pub v2: usize,
    pub v3: usize,
    pub v4: usize,
}

pub fn degree_profile(g: &DoublyDirectedGraph) -> Result<DegreeProfile> {
    let mut p = DegreeProfile::default();
    for v in g.vertices() {
        match g.degree(v) {
            2 => p.v2 += 1,
            3 => p.v3 += 1,
            4 => p.v4 += 1,
            d => {
                return Err(Error::InvariantViolation(format!(
                    "doubly directed graph vertex {v} has degree {d}"
                )))
            }
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asm::enumerate_asms;
    use crate::samples;

    #[test]
    fn edge_index_round_trip() {
        for n in 1..6 {
            for k in 0..edge_count(n) {
                let e = GridEdge::from_index(n, k);
                assert_eq!(e.index(n), k);
                assert!(e.in_range(n));
            }
            let edges: Vec<_> = all_edges(n).collect();
            assert!(edges.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn d3_grid_has_inward_centre() {
        let g = asm_to_simple_flow_grid(&samples::d3());
        assert_eq!(ElementaryFlowGrid::from_simple(&g), samples::d3_grid());
        // all four arcs at the centre point inward
        assert!(g.is_forward(GridEdge::horizontal(1, 0)));
        assert!(!g.is_forward(GridEdge::horizontal(1, 1)));
        assert!(g.is_forward(GridEdge::vertical(0, 1)));
        assert!(!g.is_forward(GridEdge::vertical(1, 1)));
        assert_eq!(simple_flow_grid_to_asm(&g).unwrap(), samples::d3());
    }

    #[test]
    fn identity_corner_is_a_source() {
        let g = asm_to_simple_flow_grid(&Asm::identity(3));
        // right of (1,1) points right, below (1,1) points down
        assert!(g.is_forward(GridEdge::horizontal(0, 0)));
        assert!(g.is_forward(GridEdge::vertical(0, 0)));
    }

    #[test]
    fn invalid_configuration_rejected() {
        let g = asm_to_simple_flow_grid(&samples::d3());
        // three arcs into the centre, one out
        let bad = g.reversed_on([GridEdge::horizontal(1, 1)]);
        assert!(matches!(
            simple_flow_grid_to_asm(&bad),
            Err(Error::InvalidFlowGrid { .. })
        ));
        assert!(SimpleFlowGrid::from_orientations(3, bad.orientations().to_vec()).is_err());
    }

    #[test]
    fn bijection_exhaustive_n4() {
        let all = enumerate_asms(4).unwrap();
        assert_eq!(all.len(), 42);
        let mut grids = Vec::new();
        for a in &all {
            let g = asm_to_simple_flow_grid(a);
            assert_eq!(&simple_flow_grid_to_asm(&g).unwrap(), a);
            grids.push(g);
        }
        grids.sort();
        grids.dedup();
        assert_eq!(grids.len(), 42);
    }

    #[test]
    fn union_of_two_adjacent_vertices() {
        let a = asm_to_simple_flow_grid(&samples::d3());
        let b = asm_to_simple_flow_grid(&samples::d3_neighbour());
        let u = union(&[a.clone(), b]).unwrap();
        assert_eq!(u, samples::edge_grid());
        let g = doubly_directed_graph(&u);
        assert_eq!(doubly_directed_regions(&g), 1);
        assert_eq!(
            degree_profile(&g).unwrap(),
            DegreeProfile { v2: 4, v3: 0, v4: 0 }
        );
        assert_eq!(
            g.vertices(),
            vec![
                GridVertex::new(0, 0),
                GridVertex::new(0, 1),
                GridVertex::new(1, 0),
                GridVertex::new(1, 1)
            ]
        );
        assert_eq!(union(core::slice::from_ref(&a)).unwrap(), ElementaryFlowGrid::from_simple(&a));
        assert!(doubly_directed_graph(&ElementaryFlowGrid::from_simple(&a)).is_empty());
    }

    #[test]
    fn union_of_three_has_degree_three_vertex() {
        let grids: Vec<_> = samples::triangle_asms().iter().map(asm_to_simple_flow_grid).collect();
        let u = union(&grids).unwrap();
        assert_eq!(u, samples::triangle_grid());
        let g = doubly_directed_graph(&u);
        assert_eq!(g.degree(GridVertex::new(1, 1)), 3);
        assert_eq!(g.degree(GridVertex::new(1, 0)), 3);
        assert_eq!(degree_profile(&g).unwrap().v3, 2);
    }

    #[test]
    fn iterated_pyramid_degree_profile() {
        let g = doubly_directed_graph(&samples::square_pyramid_pyramid_grid());
        let p = degree_profile(&g).unwrap();
        assert_eq!((p.v3, p.v4), (6, 0));
        let threes: Vec<_> = g.vertices().into_iter().filter(|&v| g.degree(v) == 3).collect();
        let expect = [(1, 4), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3)]
            .map(|(i, j)| GridVertex::new(i - 1, j - 1));
        assert_eq!(threes, expect);
    }

    #[test]
    fn octahedron_regions() {
        let g = doubly_directed_graph(&samples::octahedron_grid());
        assert_eq!(doubly_directed_regions(&g), 3);
    }

    #[test]
    fn degree_one_is_reported() {
        let g = DoublyDirectedGraph::from_edges(3, [GridEdge::horizontal(0, 0)]).unwrap();
        assert!(matches!(degree_profile(&g), Err(Error::InvariantViolation(_))));
        assert_eq!(g.bridges(), vec![GridEdge::horizontal(0, 0)]);
    }

    #[test]
    fn encoding_round_trip_and_rejects_garbage() {
        let g = samples::square_pyramid_pyramid_grid();
        let bytes = g.encode();
        assert_eq!(ElementaryFlowGrid::decode(&bytes).unwrap(), g);
        assert!(ElementaryFlowGrid::decode(&bytes[..bytes.len() - 1]).is_err());
        let mut bad = bytes.clone();
        bad[1] &= !3; // empty state on the first edge
        assert!(ElementaryFlowGrid::decode(&bad).is_err());
    }

    #[test]
    fn validate_rejects_fake_doubly_edge() {
        // a lone doubly edge cannot be a union of simple grids
        let mut states = ElementaryFlowGrid::from_simple(&asm_to_simple_flow_grid(&Asm::identity(3)))
            .states()
            .to_vec();
        states[0] = EdgeState::Doubly;
        let g = ElementaryFlowGrid::from_states(3, states).unwrap();
        assert!(g.validate().is_err());
        assert!(samples::cubical_bipyramid_grid().validate().is_ok());
        assert!(samples::square_pyramid_pyramid_grid().validate().is_ok());
    }
}
