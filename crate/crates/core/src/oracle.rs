//! Independent checks built only on ASM enumeration and prefix sums.
//!
//! `ASM_n` is the set of real matrices whose row and column prefix sums lie
//! in `[0, 1]` with full sums equal to 1. A face is cut out by making some
//! prefix constraints tight, so its vertices are the ASMs meeting those
//! tight values. Nothing here consults flow grids except
//! [`profile_of_face`], which compares the two descriptions.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::asm::{enumerate_asms_limited, partial_sums, Asm};
use crate::error::{Error, Result};
use crate::face::Face;
use crate::grid::{EdgeState, GridEdge};
use crate::linalg;
use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tightness {
    FixedAt0,
    FixedAt1,
    Free,
}

impl Tightness {
    pub fn as_str(self) -> &'static str {
        match self {
            Tightness::FixedAt0 => "fixed_at_0",
            Tightness::FixedAt1 => "fixed_at_1",
            Tightness::Free => "free",
        }
    }
}

/// State of each of the `2n^2` prefix constraints. Index `i*n + j` is the
/// row prefix through column `j` of row `i`; index `n^2 + i*n + j` is the
/// column prefix through row `i` of column `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TightnessProfile {
    n: usize,
    states: Vec<Tightness>,
}

impl TightnessProfile {
    /// Every constraint free.
    pub fn all_free(n: usize) -> Self {
        TightnessProfile { n, states: vec![Tightness::Free; 2 * n * n] }
    }

    pub fn from_states(n: usize, states: Vec<Tightness>) -> Result<Self> {
        if states.len() != 2 * n * n {
            return Err(Error::Structure(format!("expected {} constraints, got {}", 2 * n * n, states.len())));
        }
        Ok(TightnessProfile { n, states })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn states(&self) -> &[Tightness] {
        &self.states
    }

    pub fn row_prefix(&self, i: usize, j: usize) -> Tightness {
        self.states[i * self.n + j]
    }

    pub fn column_prefix(&self, i: usize, j: usize) -> Tightness {
        self.states[self.n * self.n + i * self.n + j]
    }

    pub fn num_free(&self) -> usize {
        self.states.iter().filter(|&&s| s == Tightness::Free).count()
    }

    /// True iff `a` meets every fixed constraint.
    pub fn admits(&self, a: &Asm) -> bool {
        a.n() == self.n && prefix_values(a).iter().zip(&self.states).all(|(&v, s)| match s {
            Tightness::FixedAt0 => v == 0,
            Tightness::FixedAt1 => v == 1,
            Tightness::Free => true,
        })
    }
}

/// The `2n^2` prefix values of `a` in profile order.
pub fn prefix_values(a: &Asm) -> Vec<u8> {
    let n = a.n();
    let ps = partial_sums(a);
    let mut out = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(ps.west(i, j));
        }
    }
    for i in 0..n {
        for j in 0..n {
            out.push(ps.north(i, j));
        }
    }
    out
}

/// Constraints constant across `xs` are fixed at that value.
pub fn profile_of_vertices(xs: &[Asm]) -> Result<TightnessProfile> {
    let (first, rest) = xs.split_first().ok_or_else(|| Error::Structure("profile of no matrices".into()))?;
    let n = first.n();
    let base = prefix_values(first);
    let mut free = vec![false; base.len()];
    for a in rest {
        if a.n() != n {
            return Err(Error::Structure(format!("mixed matrix orders {n} and {}", a.n())));
        }
        for (k, v) in prefix_values(a).into_iter().enumerate() {
            free[k] |= v != base[k];
        }
    }
    let states = base
        .iter()
        .zip(&free)
        .map(|(&v, &f)| match (f, v) {
            (true, _) => Tightness::Free,
            (false, 0) => Tightness::FixedAt0,
            (false, _) => Tightness::FixedAt1,
        })
        .collect();
    Ok(TightnessProfile { n, states })
}

/// An oracle disagreement, with the constraint and a vertex that exhibits it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheckFailure {
    /// Canonical encoding of the face grid.
    pub face: Vec<u8>,
    pub constraint: usize,
    pub flowgrid_state: String,
    pub oracle_state: String,
    pub witness_asm: Option<Asm>,
}

/// The grid-side reading of constraint `k`: internal prefixes follow edge
/// states, full row and column sums are fixed at 1.
fn grid_tightness(f: &Face, k: usize) -> Tightness {
    let n = f.n();
    let (row, idx) = if k < n * n { (true, k) } else { (false, k - n * n) };
    let (i, j) = (idx / n, idx % n);
    let edge = match (row, i, j) {
        (true, _, j) if j + 1 == n => None,
        (false, i, _) if i + 1 == n => None,
        (true, i, j) => Some(GridEdge::horizontal(i, j)),
        (false, i, j) => Some(GridEdge::vertical(i, j)),
    };
    match edge.map(|e| f.grid().state(e)) {
        None | Some(EdgeState::Forward) => Tightness::FixedAt1,
        Some(EdgeState::Backward) => Tightness::FixedAt0,
        Some(EdgeState::Doubly) => Tightness::Free,
    }
}

/// Profile of the vertices of `f`, checked constraint by constraint against
/// the grid's fixed edges.
pub fn profile_of_face(f: &Face) -> Result<TightnessProfile> {
    let p = profile_of_vertices(f.vertices())?;
    for (k, &oracle) in p.states.iter().enumerate() {
        let grid = grid_tightness(f, k);
        if grid != oracle {
            let witness = f
                .vertices()
                .iter()
                .find(|a| {
                    let v = prefix_values(a)[k];
                    matches!((grid, v), (Tightness::FixedAt0, 1) | (Tightness::FixedAt1, 0))
                })
                .cloned();
            return Err(Error::CrossCheck(Box::new(CrossCheckFailure {
                face: f.encode(),
                constraint: k,
                flowgrid_state: grid.as_str().to_string(),
                oracle_state: oracle.as_str().to_string(),
                witness_asm: witness,
            })));
        }
    }
    Ok(p)
}

/// All ASMs of order `n` meeting the fixed constraints of `p`.
pub fn vertices_by_filter(n: usize, p: &TightnessProfile) -> Result<Vec<Asm>> {
    if p.n != n {
        return Err(Error::Structure(format!("profile is for n = {}, not {n}", p.n)));
    }
    Ok(enumerate_asms_limited(n, Limits::default().max_classify_n)?.into_iter().filter(|a| p.admits(a)).collect())
}

/// Same as [`vertices_by_filter`] over a precomputed list of all ASMs.
pub fn filter_asms<'a>(all: &'a [Asm], p: &'a TightnessProfile) -> impl Iterator<Item = &'a Asm> + 'a {
    all.iter().filter(move |a| p.admits(a))
}

/// Affine dimension of a vertex set: rank of the differences to the first.
pub fn affine_rank(xs: &[Asm]) -> usize {
    let Some((a, rest)) = xs.split_first() else { return 0 };
    let rows: Vec<Vec<i64>> = rest
        .iter()
        .map(|b| b.entries().iter().zip(a.entries()).map(|(&x, &y)| (x - y) as i64).collect())
        .collect();
    linalg::rank(&rows)
}

pub fn affine_dimension_oracle(f: &Face) -> usize {
    affine_rank(f.vertices())
}
