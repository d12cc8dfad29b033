//! Combinatorial types of low-dimensional faces, face scans and the
//! excluded-type audits.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

pub use crate::canon::CanonicalForm;

use crate::asm::{enumerate_asms_limited, Asm};
use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::face::{smallest_face, Face};
use crate::grid::{asm_to_simple_flow_grid, ElementaryFlowGrid};
use crate::Limits;

/// Combinatorial type of a face, determined by its vertex-facet incidences.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CombinatorialType {
    pub dimension: usize,
    pub num_vertices: usize,
    pub num_facets: usize,
    pub canonical: CanonicalForm,
    /// Facet types as `(type, multiplicity)`, sorted.
    pub facet_types: Vec<(CombinatorialType, usize)>,
}

/// Known types: `(name, abbreviation, d, V, F, facet multiset)`.
const KNOWN: &[(&str, &str, usize, usize, usize, &str)] = &[
    ("point", "P", 0, 1, 0, ""),
    ("segment", "LS", 1, 2, 2, "2P"),
    ("square", "Sq", 2, 4, 4, "4LS"),
    ("triangle", "T", 2, 3, 3, "3LS"),
    ("pyramid with a square base", "Py", 3, 5, 5, "1Sq 4T"),
    ("tetrahedron", "S", 3, 4, 4, "4T"),
    ("3-cube", "C", 3, 8, 6, "6Sq"),
    ("octahedron", "O", 3, 6, 8, "8T"),
    ("triangular prism", "Pr", 3, 6, 5, "3Sq 2T"),
    ("4-simplex", "", 4, 5, 5, "5S"),
    ("square pyramid pyramid", "", 4, 6, 6, "4S 2Py"),
    ("pyramid over a triangular prism", "", 4, 7, 6, "2S 3Py 1Pr"),
    ("ASM_3", "", 4, 7, 8, "4S 4Py"),
    ("tetrahedron prism", "", 4, 8, 6, "2S 4Pr"),
    ("polytope Y", "", 4, 8, 7, "1S 4Py 2Pr"),
    ("polytope X", "", 4, 8, 9, "4S 4Py 1O"),
    ("3-3 duoprism", "", 4, 9, 6, "6Pr"),
    ("cubic pyramid", "", 4, 9, 7, "6Py 1C"),
    ("polytope Z", "", 4, 9, 9, "3S 3Py 1Pr 2O"),
    ("square pyramid prism", "", 4, 10, 7, "2Py 4Pr 1C"),
    ("cubical bipyramid", "", 4, 10, 12, "12Py"),
    ("3-4 duoprism", "", 4, 12, 7, "4Pr 3C"),
    ("octahedral prism", "", 4, 12, 10, "8Pr 2O"),
    ("4-cube", "", 4, 16, 8, "8C"),
];

/// Facet abbreviations in display order.
const ABBREVIATION_ORDER: &[&str] = &["P", "LS", "Sq", "T", "S", "Py", "Pr", "O", "C"];

/// Number of named types of dimension 2 to 4 (the low-dimensional table).
pub const TABLE_ROWS: usize = 22;

/// Excluded 4-dimensional 2-level types: `(name, V, F, facet multiset)`.
/// The first is additionally neighborly.
pub const EXCLUDED: &[(&str, usize, usize, &str)] = &[
    ("B_3", 6, 9, "9S"),
    ("pyramid over an octahedron", 7, 9, "8S 1O"),
    ("0/1 vectors with one or two ones", 10, 10, "5S 5O"),
    ("4-dimensional cross polytope", 8, 16, "16S"),
];

impl CombinatorialType {
    fn row(&self) -> Option<&'static (&'static str, &'static str, usize, usize, usize, &'static str)> {
        let facets = self.facet_string();
        KNOWN.iter().find(|r| {
            (r.2, r.3, r.4) == (self.dimension, self.num_vertices, self.num_facets) && r.5 == facets
        })
    }

    /// Name from the type table, when the signature matches a row.
    pub fn name(&self) -> Option<&'static str> {
        self.row().map(|r| r.0)
    }

    fn abbreviation(&self) -> String {
        match self.row() {
            Some(r) if !r.1.is_empty() => r.1.to_string(),
            Some(r) => r.0.to_string(),
            None => self.label(),
        }
    }

    /// Name, or a stable label built from the signature and a hash of the
    /// canonical form.
    pub fn label(&self) -> String {
        match self.name() {
            Some(n) => n.to_string(),
            None => format!(
                "d{}v{}f{}#{:016x}",
                self.dimension,
                self.num_vertices,
                self.num_facets,
                self.canonical.hash64()
            ),
        }
    }

    /// Facet multiset such as `4S 2Py`.
    pub fn facet_string(&self) -> String {
        let mut parts: Vec<(usize, String, usize)> = self
            .facet_types
            .iter()
            .map(|(t, k)| {
                let a = t.abbreviation();
                let rank = ABBREVIATION_ORDER.iter().position(|&x| x == a).unwrap_or(usize::MAX);
                (rank, a, *k)
            })
            .collect();
        parts.sort();
        parts.iter().map(|(_, a, k)| format!("{k}{a}")).collect::<Vec<_>>().join(" ")
    }

    /// In the low-dimensional table (dimension 2 to 4).
    pub fn in_table(&self) -> bool {
        self.dimension >= 2 && self.name().is_some()
    }
}

impl fmt::Display for CombinatorialType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (d={}, V={}, F={}, facets {})",
            self.label(),
            self.dimension,
            self.num_vertices,
            self.num_facets,
            self.facet_string()
        )
    }
}

/// Fingerprints faces, memoized by grid encoding.
#[derive(Default)]
pub struct Fingerprinter {
    memo: BTreeMap<Vec<u8>, CombinatorialType>,
}

impl Fingerprinter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fingerprint(&mut self, f: &Face) -> Result<CombinatorialType> {
        let max = Limits::default().max_classify_dim;
        let d = f.dimension();
        if d > max {
            return Err(Error::UnsupportedDimension { dimension: d, max });
        }
        let key = f.encode();
        if let Some(t) = self.memo.get(&key) {
            return Ok(t.clone());
        }
        let vs = f.vertices();
        let facets = f.facets();
        let incidence: Vec<Vec<usize>> = facets
            .iter()
            .map(|g| (0..vs.len()).filter(|&k| g.contains_vertex(&vs[k])).collect())
            .collect();
        let mut counts: BTreeMap<CombinatorialType, usize> = BTreeMap::new();
        for g in facets {
            *counts.entry(self.fingerprint(g)?).or_default() += 1;
        }
        let t = CombinatorialType {
            dimension: d,
            num_vertices: vs.len(),
            num_facets: facets.len(),
            canonical: canonical_form(vs.len(), &incidence),
            facet_types: counts.into_iter().collect(),
        };
        self.memo.insert(key, t.clone());
        Ok(t)
    }
}

pub fn fingerprint(f: &Face) -> Result<CombinatorialType> {
    Fingerprinter::new().fingerprint(f)
}

/// Faces of `ASM_n` by dimension, found bottom-up and grouped by their
/// smallest vertex (the seed). Within a seed, each face of dimension `k + 1`
/// is the join of a `k`-face with one later vertex.
#[derive(Clone, Debug)]
pub struct FaceScan {
    pub n: usize,
    pub max_dim: usize,
    /// `levels[k]` lists the `k`-dimensional faces in discovery order.
    pub levels: Vec<Vec<Face>>,
    pub complete: bool,
    /// Seeds whose faces were all found.
    pub seeds_exhausted: usize,
    pub seeds_total: usize,
    /// Human-readable coverage summary.
    pub coverage: String,
}

impl FaceScan {
    pub fn faces(&self) -> impl Iterator<Item = &Face> + '_ {
        self.levels.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(|l| l.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Scans every face of `ASM_n` up to `max_dim`, stopping once `budget`
/// faces have been found.
pub fn scan_faces(n: usize, max_dim: usize, budget: usize) -> Result<FaceScan> {
    let limits = Limits::default();
    if n > limits.max_classify_n {
        return Err(Error::ResourceGuard { what: "n", value: n, limit: limits.max_classify_n });
    }
    let asms = enumerate_asms_limited(n, limits.max_classify_n)?;
    scan_faces_of(&asms, max_dim, budget)
}

/// Same as [`scan_faces`] over the faces spanned by a sorted vertex list.
pub fn scan_faces_of(asms: &[Asm], max_dim: usize, budget: usize) -> Result<FaceScan> {
    let n = asms.first().map_or(0, |a| a.n());
    let grids: Vec<ElementaryFlowGrid> =
        asms.iter().map(|a| ElementaryFlowGrid::from_simple(&asm_to_simple_flow_grid(a))).collect();
    let mut levels: Vec<Vec<Face>> = (0..=max_dim).map(|_| Vec::new()).collect();
    let mut found = 0usize;
    let total = asms.len();
    for (s, seed) in grids.iter().enumerate() {
        let mut frontier = Vec::from([Face::from_closed(seed.clone())]);
        for k in 0..=max_dim {
            if k > 0 {
                let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
                let mut next = Vec::new();
                for f in &frontier {
                    for g in &grids[s + 1..] {
                        if f.grid().contains_grid(g) {
                            continue;
                        }
                        let mut u = f.grid().clone();
                        u.union_grid(g);
                        if u.region_count() != k || !seen.insert(u.encode()) {
                            continue;
                        }
                        let h = Face::from_closed(u);
                        if h.vertices()[0] == asms[s] {
                            next.push(h);
                        }
                    }
                }
                frontier = next;
            }
            for f in &frontier {
                if found == budget {
                    let coverage = format!(
                        "budget {budget} reached: faces through the first {s} of {total} vertices are complete"
                    );
                    return Ok(FaceScan {
                        n,
                        max_dim,
                        levels,
                        complete: false,
                        seeds_exhausted: s,
                        seeds_total: total,
                        coverage,
                    });
                }
                found += 1;
                levels[k].push(f.clone());
            }
            if frontier.is_empty() {
                break;
            }
        }
    }
    while levels.len() > 1 && levels.last().is_some_and(|l| l.is_empty()) {
        levels.pop();
    }
    let coverage = format!("all {found} faces of dimension at most {max_dim}");
    Ok(FaceScan { n, max_dim, levels, complete: true, seeds_exhausted: total, seeds_total: total, coverage })
}

/// One row of a classification report.
#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub ty: CombinatorialType,
    pub count: usize,
    pub witness: ElementaryFlowGrid,
}

/// Distinct types with occurrence counts.
#[derive(Clone, Debug)]
pub struct TypeCensus {
    pub n: usize,
    pub max_dim: usize,
    pub entries: Vec<CensusEntry>,
    pub complete: bool,
    pub coverage: String,
    pub faces_scanned: usize,
}

impl TypeCensus {
    pub fn names(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.ty.label()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&CensusEntry> {
        self.entries.iter().find(|e| e.ty.name() == Some(name))
    }
}

/// Tallies the types of `faces` of dimension 2 to `max_dim`. Rows are
/// ordered by dimension, vertex count, facet count and label.
pub fn census<'a>(faces: impl IntoIterator<Item = &'a Face>, max_dim: usize) -> Result<Vec<CensusEntry>> {
    let mut fp = Fingerprinter::new();
    let mut typed = Vec::new();
    for f in faces {
        if (2..=max_dim).contains(&f.dimension()) {
            typed.push((fp.fingerprint(f)?, f.grid()));
        }
    }
    Ok(tally(typed))
}

/// Groups already fingerprinted faces into census rows; the first face of
/// each type is its witness.
pub fn tally<'a>(typed: impl IntoIterator<Item = (CombinatorialType, &'a ElementaryFlowGrid)>) -> Vec<CensusEntry> {
    let mut rows: BTreeMap<CombinatorialType, CensusEntry> = BTreeMap::new();
    for (t, g) in typed {
        rows.entry(t.clone()).or_insert_with(|| CensusEntry { ty: t, count: 0, witness: g.clone() }).count += 1;
    }
    let mut entries: Vec<CensusEntry> = rows.into_values().collect();
    entries.sort_by_cached_key(|e| (e.ty.dimension, e.ty.num_vertices, e.ty.num_facets, e.ty.label()));
    entries
}

/// Every type among the faces of `ASM_n` of dimension 2 to `max_dim`.
pub fn classify_all_faces(n: usize, max_dim: usize, budget: usize) -> Result<TypeCensus> {
    let max = Limits::default().max_classify_dim;
    if max_dim > max {
        return Err(Error::UnsupportedDimension { dimension: max_dim, max });
    }
    let scan = scan_faces(n, max_dim, budget)?;
    Ok(TypeCensus {
        n,
        max_dim,
        entries: census(scan.faces(), max_dim)?,
        complete: scan.complete,
        coverage: scan.coverage.clone(),
        faces_scanned: scan.len(),
    })
}

/// Every pair of vertices spans an edge.
pub fn is_neighborly(f: &Face) -> bool {
    let vs = f.vertices();
    (0..vs.len()).all(|a| {
        (a + 1..vs.len()).all(|b| smallest_face(&[vs[a].clone(), vs[b].clone()]).is_ok_and(|e| e.dimension() == 1))
    })
}

/// Outcome of an absence audit over a face scan.
#[derive(Clone, Debug)]
pub struct AbsenceReport {
    /// `(signature name, matching faces)` per excluded type.
    pub matches: Vec<(&'static str, Vec<ElementaryFlowGrid>)>,
    pub four_faces_scanned: usize,
    pub complete: bool,
    pub coverage: String,
}

impl AbsenceReport {
    pub fn clean(&self) -> bool {
        self.matches.iter().all(|(_, m)| m.is_empty())
    }
}

fn matches_excluded(fp: &mut Fingerprinter, f: &Face, k: usize) -> Result<bool> {
    let (_, v, nf, facets) = EXCLUDED[k];
    if f.dimension() != 4 || f.num_vertices() != v || f.num_facets() != nf {
        return Ok(false);
    }
    let t = fp.fingerprint(f)?;
    Ok(t.facet_string() == facets && (k != 0 || is_neighborly(f)))
}

fn audit(scan: &FaceScan, which: &[usize]) -> Result<AbsenceReport> {
    let mut fp = Fingerprinter::new();
    let mut matches: Vec<(&'static str, Vec<ElementaryFlowGrid>)> =
        which.iter().map(|&k| (EXCLUDED[k].0, Vec::new())).collect();
    let mut scanned = 0;
    for f in scan.faces().filter(|f| f.dimension() == 4) {
        scanned += 1;
        for (slot, &k) in which.iter().enumerate() {
            if matches_excluded(&mut fp, f, k)? {
                matches[slot].1.push(f.grid().clone());
            }
        }
    }
    Ok(AbsenceReport {
        matches,
        four_faces_scanned: scanned,
        complete: scan.complete,
        coverage: scan.coverage.clone(),
    })
}

/// Looks for 4-faces with 6 vertices, 9 facets and a complete vertex graph.
pub fn b3_absence_audit(scan: &FaceScan) -> Result<AbsenceReport> {
    audit(scan, &[0])
}

/// Looks for the four excluded 4-dimensional 2-level types.
pub fn excluded_two_level_audit(scan: &FaceScan) -> Result<AbsenceReport> {
    audit(scan, &[0, 1, 2, 3])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asm::{enumerate_asms, Symmetry};
    use crate::samples;

    #[test]
    fn table_has_22_rows_of_dimension_two_to_four() {
        assert_eq!(KNOWN.iter().filter(|r| r.2 >= 2).count(), TABLE_ROWS);
    }

    #[test]
    fn named_samples() {
        let cases = [
            (samples::cubical_bipyramid_grid(), "cubical bipyramid", "12Py"),
            (samples::square_pyramid_pyramid_grid(), "square pyramid pyramid", "4S 2Py"),
            (samples::octahedron_grid(), "octahedron", "8T"),
            (samples::triangle_grid(), "triangle", "3LS"),
            (samples::square_grid(), "square", "4LS"),
        ];
        for (g, name, facets) in cases {
            let t = fingerprint(&Face::from_grid(g).unwrap()).unwrap();
            assert_eq!(t.name(), Some(name));
            assert_eq!(t.facet_string(), facets);
        }
        let top = smallest_face(&enumerate_asms(3).unwrap()).unwrap();
        let t = fingerprint(&top).unwrap();
        assert_eq!((t.num_vertices, t.num_facets, t.facet_string().as_str()), (7, 8, "4S 4Py"));
        assert_eq!(t.name(), Some("ASM_3"));
    }

    #[test]
    fn too_large_for_a_fingerprint() {
        let top = smallest_face(&enumerate_asms(4).unwrap()).unwrap();
        assert!(matches!(fingerprint(&top), Err(Error::UnsupportedDimension { dimension: 9, .. })));
    }

    #[test]
    fn asm3_two_faces_are_polygons() {
        let c = classify_all_faces(3, 2, usize::MAX).unwrap();
        assert!(c.complete);
        assert_eq!(c.names(), ["triangle", "square"]);
    }

    #[test]
    fn asm3_scan_counts_match_f_vector() {
        let s = scan_faces(3, 4, usize::MAX).unwrap();
        let f: Vec<usize> = s.levels.iter().map(|l| l.len()).collect();
        assert_eq!(f, [7, 17, 18, 8, 1]);
    }

    #[test]
    fn budget_marks_scan_incomplete() {
        let s = scan_faces(3, 4, 10).unwrap();
        assert!(!s.complete);
        assert_eq!(s.len(), 10);
        assert!(s.coverage.contains("budget 10"));
    }

    #[test]
    fn fingerprint_ignores_grid_symmetry() {
        let f = Face::from_grid(samples::square_pyramid_pyramid_grid()).unwrap();
        let t = fingerprint(&f).unwrap();
        for s in Symmetry::ALL {
            let moved: Vec<Asm> = f.vertices().iter().map(|a| a.transform(s)).collect();
            assert_eq!(fingerprint(&smallest_face(&moved).unwrap()).unwrap(), t, "{s:?}");
        }
    }

    #[test]
    fn asm3_audits_are_clean() {
        let s = scan_faces(3, 4, usize::MAX).unwrap();
        let r = excluded_two_level_audit(&s).unwrap();
        assert!(r.clean());
        assert_eq!(r.four_faces_scanned, 1);
        assert!(b3_absence_audit(&s).unwrap().clean());
    }
}
