//! Classification reports in CSV and JSON.

use asmgrid_core::classify::scan_faces;
use asmgrid_core::{ElementaryFlowGrid, Face};
use serde::Serialize;

use crate::audit::parallel_census;
use crate::config::{RunConfig, VERSION};
use crate::formats::GridJson;

#[derive(Clone, Debug, Serialize)]
pub struct TypeRow {
    /// Table name, or `#` and a certificate hash for unnamed types.
    pub name: String,
    pub dimension: usize,
    pub vertices: usize,
    pub facets: usize,
    /// Facet types with multiplicities, e.g. `4S 4Py`.
    pub facet_types: String,
    pub count: usize,
    pub in_table: bool,
    pub witness: GridJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: RunConfig,
    pub complete: bool,
    pub coverage: String,
    pub faces_scanned: usize,
    pub rows: Vec<TypeRow>,
}

pub fn classify(cfg: &RunConfig, n: usize) -> asmgrid_core::Result<ClassifyReport> {
    let scan = scan_faces(n, cfg.max_dim, cfg.budget)?;
    let faces: Vec<&Face> = scan.faces().collect();
    let rows = parallel_census(&faces, cfg.max_dim)?
        .into_iter()
        .map(|e| TypeRow {
            name: e.ty.label(),
            dimension: e.ty.dimension,
            vertices: e.ty.num_vertices,
            facets: e.ty.num_facets,
            facet_types: e.ty.facet_string(),
            count: e.count,
            in_table: e.ty.in_table(),
            witness: (&e.witness).into(),
        })
        .collect();
    Ok(ClassifyReport {
        tool: "asmgrid",
        version: VERSION,
        config: cfg.clone(),
        complete: scan.complete,
        coverage: scan.coverage.clone(),
        faces_scanned: faces.len(),
        rows,
    })
}

/// `h=..|..;v=..|..` using the `F`/`B`/`D` letters.
pub fn compact_grid(g: &ElementaryFlowGrid) -> String {
    let (h, v) = g.to_rows();
    format!("h={};v={}", h.join("|"), v.join("|"))
}

/// CSV with `#` comment lines carrying version, configuration and coverage.
pub fn to_csv(r: &ClassifyReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["name", "d", "V", "F", "facets", "count", "in_table", "witness"]).unwrap();
    for row in &r.rows {
        let g = row.witness.to_grid().expect("witness grids are valid");
        w.write_record([
            row.name.clone(),
            row.dimension.to_string(),
            row.vertices.to_string(),
            row.facets.to_string(),
            row.facet_types.clone(),
            row.count.to_string(),
            row.in_table.to_string(),
            compact_grid(&g),
        ])
        .unwrap();
    }
    let body = String::from_utf8(w.into_inner().unwrap()).unwrap();
    let status = if r.complete { "complete" } else { "incomplete" };
    format!(
        "# asmgrid {}\n# config {}\n# {status}: {}\n{body}",
        r.version,
        serde_json::to_string(&r.config).unwrap(),
        r.coverage
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Format;

    fn cfg(max_dim: usize) -> RunConfig {
        RunConfig {
            command: "classify".into(),
            n: Some(3),
            max_dim,
            budget: usize::MAX,
            format: Format::Csv,
            input: None,
            out: None,
            max_n: 7,
        }
    }

    #[test]
    fn asm3_two_faces_are_triangles_and_squares() {
        let r = classify(&cfg(2), 3).unwrap();
        let names: Vec<&str> = r.rows.iter().map(|x| x.name.as_str()).collect();
        assert_eq!(names, ["triangle", "square"]);
        assert!(r.complete);
    }

    #[test]
    fn csv_has_header_and_rows() {
        let r = classify(&cfg(2), 3).unwrap();
        let s = to_csv(&r);
        let lines: Vec<&str> = s.lines().collect();
        assert!(lines[0].starts_with("# asmgrid "));
        assert_eq!(lines[3], "name,d,V,F,facets,count,in_table,witness");
        assert!(lines[4].starts_with("triangle,2,3,3,3LS,"), "{}", lines[4]);
        assert_eq!(lines.len(), 6);
    }
}
