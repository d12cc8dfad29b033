//! Per-face theorem checks. Each returns `Err(detail)` on a violation.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::asm::Asm;
use crate::face::{is_two_level, smallest_face, EarDirection, Face};
use crate::grid::{degree_profile, DoublyDirectedGraph, GridEdge, GridVertex};
use crate::linalg;
use crate::oracle::{affine_dimension_oracle, filter_asms, profile_of_face};
use crate::structure::{
    basic_cycles, centre_doubled, check_cut_vertices, estranged_by_search, estranged_partner,
    is_centrally_symmetric, product_decomposition, two_connected_components,
};

pub type Check = core::result::Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn is_connected(g: &DoublyDirectedGraph) -> bool {
    g.components().len() == 1
}

fn has_branch(g: &DoublyDirectedGraph) -> bool {
    g.vertices().iter().any(|&v| g.degree(v) > 2)
}

/// Vertex and facet count bounds.
pub fn bounds(f: &Face) -> Check {
    let (d, v, nf) = (f.dimension(), f.num_vertices(), f.num_facets());
    ensure!(v <= 1 << d, "{v} vertices exceed 2^{d}");
    if d >= 2 {
        ensure!(nf <= 4 * (d - 1), "{nf} facets exceed 4(d-1) for d = {d}");
    }
    ensure!(v * nf <= d << (d + 1), "v*f = {} exceeds d*2^(d+1)", v * nf);
    let g = f.graph();
    if d >= 1 && is_connected(g) && two_connected_components(g).components.len() == 1 {
        let has_three = g.vertices().iter().any(|&v| g.degree(v) == 3);
        let cap = (1usize << (d - 1)) + if has_three || d < 3 { 1 } else { 2 };
        ensure!(v <= cap, "2-connected face with {v} vertices exceeds {cap}");
    }
    Ok(())
}

/// Ear counts and degree relations of connected branched doubly graphs.
pub fn euler_relations(f: &Face) -> Check {
    let g = f.graph();
    if !is_connected(g) || !has_branch(g) {
        return Ok(());
    }
    let p = degree_profile(g).map_err(|e| format!("{e}"))?;
    let (d, s) = (f.dimension() as isize, f.ears().len() as isize);
    let (v3, v4) = (p.v3 as isize, p.v4 as isize);
    ensure!(v3 + v4 - s + (d + 1) == 2, "V3 + V4 - s + (d+1) = {} != 2", v3 + v4 - s + d + 1);
    ensure!(2 * s == 4 * v4 + 3 * v3, "2s = {} but 4V4 + 3V3 = {}", 2 * s, 4 * v4 + 3 * v3);
    ensure!(2 * v4 + v3 == 2 * (d - 1), "2V4 + V3 = {} != 2(d-1)", 2 * v4 + v3);
    ensure!(2 * (d - 1) <= s && s <= 3 * (d - 1), "s = {s} outside [2(d-1), 3(d-1)]");
    Ok(())
}

/// Two-dimensional faces are triangles or quadrilaterals.
pub fn two_face_shape(f: &Face) -> Check {
    if f.dimension() == 2 {
        ensure!(matches!(f.num_vertices(), 3 | 4), "2-face with {} vertices", f.num_vertices());
    }
    Ok(())
}

/// Every facet has a complementary face through all other vertices.
pub fn two_level(f: &Face) -> Check {
    if f.dimension() == 0 {
        return Ok(());
    }
    let r = is_two_level(f).map_err(|e| format!("{e}"))?;
    ensure!(r.holds, "{} facets without a complementary face", r.failures.len());
    ensure!(r.witnesses.len() == f.num_facets(), "missing witnesses");
    for w in &r.witnesses {
        let mut all: Vec<&Asm> = w.facet.vertices().iter().chain(w.complement.vertices()).collect();
        all.sort();
        ensure!(all.iter().copied().eq(f.vertices().iter()), "facet and complement do not partition the vertices");
    }
    Ok(())
}

/// Even degrees, existence of estranged partners and a common midpoint
/// coincide.
pub fn central_symmetry(f: &Face) -> Check {
    let even = is_centrally_symmetric(f).map_err(|e| format!("{e}"))?;
    let mut all_partnered = true;
    for a in f.vertices() {
        let found = estranged_by_search(f, a);
        let formula = estranged_partner(f, a).map_err(|e| format!("{e}"))?;
        ensure!(found.len() <= 1 || f.dimension() == 0, "{} estranged partners of one vertex", found.len());
        match (&formula, found.first()) {
            (Some(b), Some(c)) => ensure!(b == c, "partner by reversal differs from partner by search"),
            (None, None) => {}
            (Some(_), None) if f.dimension() == 0 => {}
            _ => return Err(format!("partner by reversal {:?} vs search {}", formula.is_some(), found.len())),
        }
        all_partnered &= formula.is_some();
    }
    let midpoint = centre_doubled(f).map_err(|e| format!("{e}"))?.is_some();
    ensure!(
        even == all_partnered && even == midpoint,
        "even degrees {even}, partners {all_partnered}, common midpoint {midpoint}"
    );
    Ok(())
}

/// Ear fixing and inequality filtering give the same vertices, and the
/// region count is the affine dimension.
pub fn oracle_agreement(f: &Face, all: &[Asm]) -> Check {
    let p = profile_of_face(f).map_err(|e| format!("{e}"))?;
    let filtered: Vec<&Asm> = filter_asms(all, &p).collect();
    ensure!(
        filtered.iter().copied().eq(f.vertices().iter()),
        "filter finds {} vertices, ear fixing {}",
        filtered.len(),
        f.num_vertices()
    );
    let rank = affine_dimension_oracle(f);
    ensure!(rank == f.dimension(), "affine rank {rank} but {} regions", f.dimension());
    Ok(())
}

/// Basic cycle matrices form a basis of the direction space.
pub fn cycle_basis(f: &Face) -> Check {
    let cs = basic_cycles(f);
    let d = f.dimension();
    ensure!(cs.len() == d, "{} basic cycles for dimension {d}", cs.len());
    let rows: Vec<Vec<i64>> = cs.iter().map(|c| c.entries().to_vec()).collect();
    ensure!(linalg::rank(&rows) == d, "basic cycles have rank {}", linalg::rank(&rows));
    for c in &cs {
        ensure!(c.is_balanced() && c.is_clockwise(), "malformed basic cycle matrix");
    }
    let a = &f.vertices()[0];
    for b in f.vertices() {
        let diff: Vec<i64> = b.entries().iter().zip(a.entries()).map(|(&x, &y)| (x - y) as i64).collect();
        ensure!(linalg::in_integer_span(&rows, &diff), "vertex difference outside the integer span");
    }
    Ok(())
}

/// Faces with several blocks are products of their block factors.
pub fn product_split(f: &Face) -> Check {
    let g = f.graph();
    let dec = two_connected_components(g);
    check_cut_vertices(g, &dec).map_err(|e| format!("{e}"))?;
    if dec.components.len() < 2 {
        return Ok(());
    }
    let pd = product_decomposition(f).map_err(|e| format!("{e}"))?;
    pd.check_vertex_bijection(f).map_err(|e| format!("{e}"))?;
    pd.check_lattice_product(f).map_err(|e| format!("{e}"))?;
    Ok(())
}

fn defines_facet(f: &Face, e: GridEdge, dir: EarDirection) -> bool {
    f.ears()
        .iter()
        .find(|ear| ear.edges.contains(&e))
        .and_then(|ear| f.fix_ear(ear, dir).ok())
        .is_some_and(|h| h.dimension() + 1 == f.dimension())
}

/// Ear-level facet restrictions.
pub fn ear_facets(f: &Face) -> Check {
    let g = f.graph();
    let ears = f.ears();
    // with 6 vertices in dimension 4, an ear defines a facet in at most one direction
    if f.dimension() == 4 && f.num_vertices() == 6 {
        for ear in ears {
            let both = [EarDirection::A, EarDirection::B]
                .iter()
                .all(|&dir| defines_facet(f, ear.smallest_edge(), dir));
            ensure!(!both, "ear at {} defines facets both ways", ear.smallest_edge());
        }
    }
    // two ears whose removal disconnects the graph force each other
    let comps = g.components();
    for x in 0..ears.len() {
        for y in x + 1..ears.len() {
            let rest: Vec<GridEdge> = ears
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != x && k != y)
                .flat_map(|(_, e)| e.edges.iter().copied())
                .collect();
            let h = DoublyDirectedGraph::from_edges(g.n(), rest).expect("subgraph");
            let mut survivors: BTreeSet<GridVertex> = h.vertices().into_iter().collect();
            survivors.extend(ears[x].endpoints.iter().chain(&ears[y].endpoints).copied());
            let pieces = h.components();
            let disconnected = comps.iter().any(|c| {
                let lonely = c.iter().filter(|&&v| survivors.contains(&v) && h.degree(v) == 0).count();
                let parts = pieces.iter().filter(|p| c.contains(&p[0])).count();
                lonely + parts > 1
            });
            if !disconnected {
                continue;
            }
            for dir in [EarDirection::A, EarDirection::B] {
                let fixed = f.fix_ear(&ears[x], dir).map_err(|e| format!("{e}"))?;
                ensure!(
                    !fixed.grid().state(ears[y].smallest_edge()).is_doubly(),
                    "fixing ear {} leaves the separating partner ear {} free",
                    x + 1,
                    y + 1
                );
            }
        }
    }
    // in a triangle of ears between degree-3 vertices, at most two define facets
    let threes: Vec<GridVertex> = g.vertices().into_iter().filter(|&v| g.degree(v) == 3).collect();
    let joins = |a: GridVertex, b: GridVertex| -> Vec<usize> {
        (0..ears.len())
            .filter(|&k| ears[k].endpoints.len() == 2 && ears[k].endpoints.contains(&a) && ears[k].endpoints.contains(&b))
            .collect()
    };
    let facet_ear = |k: usize| {
        [EarDirection::A, EarDirection::B].iter().any(|&dir| defines_facet(f, ears[k].smallest_edge(), dir))
    };
    for (p, &a) in threes.iter().enumerate() {
        for (q, &b) in threes.iter().enumerate().skip(p + 1) {
            for &c in threes.iter().skip(q + 1) {
                for &x in &joins(a, b) {
                    for &y in &joins(b, c) {
                        for &z in &joins(a, c) {
                            let k = [x, y, z].iter().filter(|&&e| facet_ear(e)).count();
                            ensure!(k <= 2, "all three ears between {a}, {b}, {c} define facets");
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// No bridges, no degree-1 vertices, and the face is the closure of its
/// vertices.
pub fn grid_consistency(f: &Face) -> Check {
    let g = f.graph();
    ensure!(g.bridges().is_empty(), "doubly directed graph has a bridge");
    degree_profile(g).map_err(|e| format!("{e}"))?;
    ensure!(f.num_vertices() >= 1, "face without vertices");
    let closed = smallest_face(f.vertices()).map_err(|e| format!("{e}"))?;
    ensure!(closed == *f, "closure of the vertices is a different face");
    Ok(())
}
