//! Small named faces used by tests, audits and the CLI demos.
//!
//! Grids are written as rows of edge states (`F`, `B`, `D`); see
//! [`ElementaryFlowGrid::from_rows`].

use alloc::vec;
use alloc::vec::Vec;

use crate::asm::Asm;
use crate::grid::ElementaryFlowGrid;

fn asm(rows: &[&[i64]]) -> Asm {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    Asm::from_rows(&rows).expect("sample is an ASM")
}

fn grid(n: usize, h: &[&str], v: &[&str]) -> ElementaryFlowGrid {
    ElementaryFlowGrid::from_rows(n, h, v).expect("sample grid is well formed")
}

/// The 3x3 ASM with a -1 in the centre.
pub fn d3() -> Asm {
    asm(&[&[0, 1, 0], &[1, -1, 1], &[0, 1, 0]])
}

pub fn d3_grid() -> ElementaryFlowGrid {
    grid(3, &["BF", "FB", "BF"], &["BFB", "FBF"])
}

/// A permutation matrix adjacent to `d3` in the polytope graph.
pub fn d3_neighbour() -> Asm {
    asm(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]])
}

/// The edge joining `d3` and `d3_neighbour`: a single doubly directed cell.
pub fn edge_grid() -> ElementaryFlowGrid {
    grid(3, &["DF", "DB", "BF"], &["DDB", "FBF"])
}

/// Three vertices of a triangular face of ASM_3.
pub fn triangle_asms() -> Vec<Asm> {
    vec![d3(), d3_neighbour(), asm(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]])]
}

/// Two degree-3 vertices joined by three ears.
pub fn triangle_grid() -> ElementaryFlowGrid {
    grid(3, &["DF", "DB", "DF"], &["DDB", "DDF"])
}

/// Vertices of a square face whose doubly directed graph is two unit cells
/// sharing the centre vertex.
pub fn square_asms() -> Vec<Asm> {
    vec![
        Asm::identity(3),
        d3(),
        d3_neighbour(),
        asm(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]),
    ]
}

pub fn square_grid() -> ElementaryFlowGrid {
    grid(3, &["DF", "DD", "BD"], &["DDB", "FDD"])
}

/// A pair of estranged 6x6 vertices spanning an octahedral face.
pub fn octahedron_pair() -> (Asm, Asm) {
    let a = asm(&[
        &[0, 0, 1, 0, 0, 0],
        &[0, 1, 0, 0, 0, 0],
        &[1, 0, 0, 0, 0, 0],
        &[0, 0, 0, 0, 0, 1],
        &[0, 0, 0, 0, 1, 0],
        &[0, 0, 0, 1, 0, 0],
    ]);
    let b = asm(&[
        &[0, 0, 1, 0, 0, 0],
        &[0, 0, 0, 1, 0, 0],
        &[1, 0, -1, 0, 1, 0],
        &[0, 1, 0, -1, 0, 1],
        &[0, 0, 1, 0, 0, 0],
        &[0, 0, 0, 1, 0, 0],
    ]);
    (a, b)
}

/// Twice the centre of the octahedral face, row-major.
pub fn octahedron_centre_doubled() -> Vec<i8> {
    vec![
        0, 0, 2, 0, 0, 0, //
        0, 1, 0, 1, 0, 0, //
        2, 0, -1, 0, 1, 0, //
        0, 1, 0, -1, 0, 2, //
        0, 0, 1, 0, 1, 0, //
        0, 0, 0, 2, 0, 0,
    ]
}

pub fn octahedron_grid() -> ElementaryFlowGrid {
    grid(
        6,
        &["BBFFF", "BDDFF", "FFDDF", "BDDBB", "BBDDF", "BBBFF"],
        &["BBFBBB", "BDFDBB", "FDDDDB", "FFDBDF", "FFFBFF"],
    )
}

/// A 4-dimensional bipyramid over a 3-cube in ASM_4.
pub fn cubical_bipyramid_grid() -> ElementaryFlowGrid {
    grid(4, &["DDF", "BDD", "DDD", "BDF"], &["DBDB", "DDDD", "FDDF"])
}

/// A 4-dimensional two-fold pyramid over a square in ASM_5; its doubly
/// directed graph is 3-regular with nine ears.
pub fn square_pyramid_pyramid_grid() -> ElementaryFlowGrid {
    grid(
        5,
        &["BDDD", "BDDF", "FDDF", "BDDD", "BBFF"],
        &["BDBDD", "BDDDD", "FDBFD", "FFBFF"],
    )
}
