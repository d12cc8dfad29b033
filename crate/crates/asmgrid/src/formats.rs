//! JSON shapes shared by the CLI and reports.

use asmgrid_core::oracle::CrossCheckFailure;
use asmgrid_core::structure::{two_connected_components, CycleMatrix};
use asmgrid_core::{degree_profile, Asm, ElementaryFlowGrid, Face};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsmJson {
    pub n: usize,
    pub rows: Vec<Vec<i8>>,
}

impl From<&Asm> for AsmJson {
    fn from(a: &Asm) -> Self {
        AsmJson { n: a.n(), rows: a.to_rows() }
    }
}

impl AsmJson {
    pub fn to_asm(&self) -> asmgrid_core::Result<Asm> {
        if self.rows.len() != self.n {
            return Err(asmgrid_core::Error::Structure(format!(
                "declared n = {} but {} rows given",
                self.n,
                self.rows.len()
            )));
        }
        Asm::from_rows(&self.rows)
    }
}

/// Edge states as `"F"`, `"B"` or `"D"`, one inner list per grid row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridJson {
    pub n: usize,
    pub horizontal: Vec<Vec<String>>,
    pub vertical: Vec<Vec<String>>,
}

impl From<&ElementaryFlowGrid> for GridJson {
    fn from(g: &ElementaryFlowGrid) -> Self {
        let split = |rows: Vec<String>| -> Vec<Vec<String>> {
            rows.iter().map(|r| r.chars().map(String::from).collect()).collect()
        };
        let (h, v) = g.to_rows();
        GridJson { n: g.n(), horizontal: split(h), vertical: split(v) }
    }
}

impl GridJson {
    pub fn to_grid(&self) -> asmgrid_core::Result<ElementaryFlowGrid> {
        let join = |rows: &[Vec<String>]| -> Vec<String> { rows.iter().map(|r| r.concat()).collect() };
        ElementaryFlowGrid::from_rows(self.n, &join(&self.horizontal), &join(&self.vertical))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FaceReport {
    pub n: usize,
    pub dimension: usize,
    pub num_vertices: usize,
    pub num_facets: usize,
    pub num_ears: usize,
    /// Vertex counts of degree 2, 3 and 4 in the doubly directed graph.
    pub degree_profile: [usize; 3],
    pub vertices: Vec<AsmJson>,
    pub grid: GridJson,
    /// Number of 2-connected blocks; a face with several is their product.
    pub blocks: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub combinatorial_type: Option<String>,
}

impl FaceReport {
    pub fn new(f: &Face) -> asmgrid_core::Result<Self> {
        let p = degree_profile(f.graph())?;
        let blocks = two_connected_components(f.graph()).components.len();
        let combinatorial_type = match f.dimension() {
            2..=4 => Some(asmgrid_core::fingerprint(f)?.label()),
            _ => None,
        };
        Ok(FaceReport {
            n: f.n(),
            dimension: f.dimension(),
            num_vertices: f.num_vertices(),
            num_facets: f.num_facets(),
            num_ears: f.ears().len(),
            degree_profile: [p.v2, p.v3, p.v4],
            vertices: f.vertices().iter().map(AsmJson::from).collect(),
            grid: f.grid().into(),
            blocks,
            combinatorial_type,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleMatrixJson {
    pub n: usize,
    pub entries: Vec<Vec<i64>>,
    /// 1-based grid vertices in walking order.
    pub cycle: Vec<[usize; 2]>,
}

impl From<&CycleMatrix> for CycleMatrixJson {
    fn from(c: &CycleMatrix) -> Self {
        CycleMatrixJson {
            n: c.n(),
            entries: c.to_rows(),
            cycle: c.cycle().iter().map(|v| [v.i + 1, v.j + 1]).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheckJson {
    /// Canonical grid encoding, hex.
    pub face: String,
    pub constraint: usize,
    pub flowgrid_state: String,
    pub oracle_state: String,
    pub witness_asm: Option<AsmJson>,
}

impl From<&CrossCheckFailure> for CrossCheckJson {
    fn from(c: &CrossCheckFailure) -> Self {
        CrossCheckJson {
            face: c.face.iter().map(|b| format!("{b:02x}")).collect(),
            constraint: c.constraint,
            flowgrid_state: c.flowgrid_state.clone(),
            oracle_state: c.oracle_state.clone(),
            witness_asm: c.witness_asm.as_ref().map(AsmJson::from),
        }
    }
}

/// Input for commands taking a face: a list of ASMs or a grid.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum FaceInput {
    Asms(Vec<AsmJson>),
    Grid(GridJson),
}

impl FaceInput {
    pub fn to_face(&self) -> asmgrid_core::Result<Face> {
        match self {
            FaceInput::Asms(xs) => {
                let asms = xs
                    .iter()
                    .enumerate()
                    .map(|(k, a)| {
                        a.to_asm().map_err(|e| asmgrid_core::Error::Structure(format!("matrix {}: {e}", k + 1)))
                    })
                    .collect::<asmgrid_core::Result<Vec<_>>>()?;
                asmgrid_core::smallest_face(&asms)
            }
            FaceInput::Grid(g) => Face::from_grid(g.to_grid()?),
        }
    }
}
