//! Faces of the alternating sign matrix polytope `ASM_n`, represented as
//! elementary flow grids.
//!
//! The crate is `no_std` with `alloc`. File formats, the CLI and parallel
//! audits live in the `asmgrid` companion crate.
//!
//! Coordinates are 0-based in the API and 1-based in every `Display` and
//! error message.

#![no_std]

extern crate alloc;

pub mod asm;
pub mod audit;
mod canon;
pub mod classify;
mod closure;
pub mod error;
pub mod face;
pub mod grid;
pub mod linalg;
pub mod oracle;
pub mod samples;
pub mod structure;

pub use asm::{count_asms, enumerate_asms, enumerate_asms_limited, partial_sums, validate_asm, Asm, PartialSums, Symmetry};
pub use classify::{classify_all_faces, fingerprint, CombinatorialType, TypeCensus};
pub use error::{Error, Result};
pub use face::{face_lattice, is_two_level, smallest_face, Ear, EarDirection, Face, FaceLattice};
pub use grid::{
    asm_to_simple_flow_grid, degree_profile, doubly_directed_graph, doubly_directed_regions,
    simple_flow_grid_to_asm, union, DegreeProfile, DoublyDirectedGraph, EdgeKind, EdgeState,
    ElementaryFlowGrid, GridEdge, GridVertex, SimpleFlowGrid,
};
pub use structure::CycleMatrix;

/// Resource guards shared by enumeration, lattice and classification code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest `n` for which all ASMs may be listed.
    pub max_enumeration_n: usize,
    /// Largest face dimension for which a full face lattice is built.
    pub max_lattice_dim: usize,
    /// Largest face dimension that can be fingerprinted.
    pub max_classify_dim: usize,
    /// Largest `n` accepted by the classification scans and audits.
    pub max_classify_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_enumeration_n: 7,
            max_lattice_dim: 5,
            max_classify_dim: 4,
            max_classify_n: 5,
        }
    }
}
