//! Parallel theorem audits over face scans.

use asmgrid_core::audit::{self as checks, Check};
use asmgrid_core::classify::{excluded_two_level_audit, scan_faces, tally, FaceScan, Fingerprinter};
use asmgrid_core::oracle::{profile_of_face, profile_of_vertices, vertices_by_filter};
use asmgrid_core::structure::{cycle_sum_check, simple_cycles};
use asmgrid_core::{
    asm_to_simple_flow_grid, count_asms, enumerate_asms_limited, simple_flow_grid_to_asm, smallest_face, Asm,
    Error, Face, GridVertex,
};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::formats::{CrossCheckJson, GridJson};

#[derive(Clone, Debug, Serialize)]
pub struct AuditConfig {
    pub n: usize,
    pub max_dim: usize,
    pub budget: usize,
    /// Simple cycles sampled for the cycle-sum check when `n >= 4`.
    pub cycle_samples: usize,
    pub seed: u64,
    pub max_n: usize,
}

impl AuditConfig {
    pub fn new(n: usize) -> Self {
        AuditConfig { n, max_dim: 4, budget: usize::MAX, cycle_samples: 1000, seed: 0x5eed, max_n: 7 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridJson>,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<CrossCheckJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub checked: usize,
    pub failures: usize,
    /// First failure in scan order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn from_outcomes<'a>(name: &'static str, outcomes: impl IntoIterator<Item = (Option<&'a Face>, Check)>) -> Self {
        let mut r = CheckResult { name, checked: 0, failures: 0, witness: None, note: None };
        for (f, c) in outcomes {
            r.checked += 1;
            if let Err(detail) = c {
                r.failures += 1;
                r.witness.get_or_insert_with(|| Witness { grid: f.map(|f| f.grid().into()), detail, cross_check: None });
            }
        }
        r
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: AuditConfig,
    pub complete: bool,
    pub coverage: String,
    /// Faces found per dimension.
    pub levels: Vec<usize>,
    pub checks: Vec<CheckResult>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

type FaceCheck = fn(&Face) -> Check;

/// Per-face checks, in report order.
pub const FACE_CHECKS: &[(&str, FaceCheck)] = &[
    ("vertex and facet bounds", checks::bounds),
    ("ear and degree relations", checks::euler_relations),
    ("two-faces are triangles or quadrilaterals", checks::two_face_shape),
    ("two-level", checks::two_level),
    ("central symmetry", checks::central_symmetry),
    ("cycle basis", checks::cycle_basis),
    ("product of blocks", checks::product_split),
    ("ear facet restrictions", checks::ear_facets),
    ("grid consistency", checks::grid_consistency),
];

pub const ORACLE_CHECK: &str = "ear fixing agrees with tightness filter";

/// Runs every per-face check on every face, in parallel. Results keep scan
/// order, so witnesses are deterministic.
pub fn run_face_checks(faces: &[&Face], all: &[Asm]) -> Vec<CheckResult> {
    let rows: Vec<Vec<Check>> = faces
        .par_iter()
        .map(|f| FACE_CHECKS.iter().map(|(_, c)| c(f)).collect())
        .collect();
    let mut out: Vec<CheckResult> = FACE_CHECKS
        .iter()
        .enumerate()
        .map(|(k, (name, _))| {
            CheckResult::from_outcomes(name, faces.iter().zip(&rows).map(|(f, r)| (Some(*f), r[k].clone())))
        })
        .collect();
    out.push(oracle_check(faces, all));
    out
}

fn oracle_check(faces: &[&Face], all: &[Asm]) -> CheckResult {
    let results: Vec<(Check, Option<CrossCheckJson>)> = faces
        .par_iter()
        .map(|f| match profile_of_face(f) {
            Err(Error::CrossCheck(c)) => (Err(format!("constraint {} disagrees", c.constraint)), Some((&*c).into())),
            _ => (checks::oracle_agreement(f, all), None),
        })
        .collect();
    let mut r = CheckResult { name: ORACLE_CHECK, checked: 0, failures: 0, witness: None, note: None };
    for (f, (c, cc)) in faces.iter().zip(results) {
        r.checked += 1;
        if let Err(detail) = c {
            r.failures += 1;
            r.witness.get_or_insert_with(|| Witness { grid: Some(f.grid().into()), detail, cross_check: cc });
        }
    }
    r
}

fn single(name: &'static str, c: Check) -> CheckResult {
    CheckResult::from_outcomes(name, [(None, c)])
}

/// Enumeration size equals the closed-form count.
pub fn count_check(n: usize, all: &[Asm]) -> CheckResult {
    let c = count_asms(n);
    single(
        "enumeration matches count",
        if c == BigUint::from(all.len()) { Ok(()) } else { Err(format!("enumerated {}, formula {c}", all.len())) },
    )
}

/// Dimension `(n-1)^2` and `4((n-2)^2 + 1)` facets for `n >= 3`.
pub fn top_face_check(n: usize) -> CheckResult {
    let f = Face::from_grid(asmgrid_core::ElementaryFlowGrid::from_states(
        n,
        vec![asmgrid_core::EdgeState::Doubly; 2 * n * n.saturating_sub(1)],
    )
    .expect("all-doubly grid"))
    .expect("top face");
    let d = (n - 1) * (n - 1);
    let facets = match n {
        1 => 0,
        2 => 2,
        _ => 4 * ((n - 2) * (n - 2) + 1),
    };
    let c = if f.dimension() != d {
        Err(format!("top face has dimension {}, expected {d}", f.dimension()))
    } else if f.num_facets() != facets {
        Err(format!("top face has {} facets, expected {facets}", f.num_facets()))
    } else {
        Ok(())
    };
    CheckResult {
        note: Some(format!("dimension {}, {} facets", f.dimension(), f.num_facets())),
        ..single("top face geometry", c)
    }
}

/// ASM to simple flow grid and back is the identity and injective.
pub fn bijection_check(all: &[Asm]) -> CheckResult {
    let mut seen = std::collections::BTreeSet::new();
    let outcomes = all.iter().map(|a| {
        let g = asm_to_simple_flow_grid(a);
        let back = simple_flow_grid_to_asm(&g).map_err(|e| e.to_string());
        let c = match back {
            Ok(b) if &b == a && seen.insert(g) => Ok(()),
            Ok(_) => Err(format!("round trip fails for\n{a}")),
            Err(e) => Err(e),
        };
        (None, c)
    });
    CheckResult::from_outcomes("simple flow grid bijection", outcomes.collect::<Vec<_>>())
}

/// Every nonempty vertex subset: the closure and the filter of its
/// tightness profile agree. Only feasible for `n <= 3`.
pub fn subset_oracle_check(all: &[Asm]) -> CheckResult {
    let k = all.len();
    let outcomes: Vec<(Option<&Face>, Check)> = (1u64..1 << k)
        .into_par_iter()
        .map(|mask| {
            let xs: Vec<Asm> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| all[b].clone()).collect();
            let c = match (smallest_face(&xs), profile_of_vertices(&xs)) {
                (Ok(f), Ok(p)) => match vertices_by_filter(all[0].n(), &p) {
                    Ok(v) if v == f.vertices() => Ok(()),
                    Ok(v) => Err(format!("subset {mask:b}: filter {} vertices, closure {}", v.len(), f.num_vertices())),
                    Err(e) => Err(e.to_string()),
                },
                (Err(e), _) | (_, Err(e)) => Err(e.to_string()),
            };
            (None, c)
        })
        .collect();
    CheckResult::from_outcomes("vertex subsets close to filtered faces", outcomes)
}

/// Fingerprints every face of dimension 2 to `max_dim` in parallel and
/// tallies the types in scan order.
pub fn parallel_census(faces: &[&Face], max_dim: usize) -> asmgrid_core::Result<Vec<asmgrid_core::classify::CensusEntry>> {
    let typed: Vec<_> = faces
        .par_iter()
        .filter(|f| (2..=max_dim).contains(&f.dimension()))
        .map_init(Fingerprinter::new, |fp, f| fp.fingerprint(f).map(|t| (t, f.grid())))
        .collect::<asmgrid_core::Result<_>>()?;
    Ok(tally(typed))
}

pub fn classification_check(faces: &[&Face], max_dim: usize) -> CheckResult {
    let c = match parallel_census(faces, max_dim) {
        Err(e) => Err(e.to_string()),
        Ok(rows) => match rows.iter().find(|r| !r.ty.in_table()) {
            Some(r) => Err(format!("type {} is not in the table of known types", r.ty.label())),
            None => Ok(()),
        },
    };
    single("every type is a known type", c)
}

pub fn exclusion_check(scan: &FaceScan) -> CheckResult {
    let c = excluded_two_level_audit(scan).map_err(|e| e.to_string()).and_then(|r| {
        match r.matches.iter().find(|(_, m)| !m.is_empty()) {
            Some((name, m)) => Err(format!("{} faces of type {name}", m.len())),
            None => Ok(()),
        }
    });
    single("excluded 4-dimensional types are absent", c)
}

/// Cycle sums over all simple cycles when there are at most `samples`,
/// otherwise over a seeded sample of that size.
pub fn cycle_sum_sample(faces: &[&Face], samples: usize, seed: u64) -> CheckResult {
    let mut pool: Vec<(usize, Vec<GridVertex>)> = Vec::new();
    for (k, f) in faces.iter().enumerate() {
        pool.extend(simple_cycles(f.graph(), 256).into_iter().map(|c| (k, c)));
    }
    if pool.len() > samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        pool = pool.choose_multiple(&mut rng, samples).cloned().collect();
        pool.sort();
    }
    let outcomes: Vec<(Option<&Face>, Check)> = pool
        .par_iter()
        .map(|(k, c)| {
            let f = faces[*k];
            let r = match cycle_sum_check(f, c) {
                Ok(true) => Ok(()),
                Ok(false) => Err(format!("inner basic cycles do not sum to the cycle through {}", c[0])),
                Err(e) => Err(e.to_string()),
            };
            (Some(f), r)
        })
        .collect();
    CheckResult::from_outcomes("cycle matrices sum over inner regions", outcomes)
}

/// Full audit of `ASM_n`: global checks plus every per-face check over a
/// scan to `max_dim`, budget-guarded.
pub fn audit(cfg: &AuditConfig) -> asmgrid_core::Result<AuditReport> {
    let n = cfg.n;
    let all = enumerate_asms_limited(n, cfg.max_n)?;
    let scan = scan_faces(n, cfg.max_dim, cfg.budget)?;
    let faces: Vec<&Face> = scan.faces().collect();
    let mut out = vec![count_check(n, &all), top_face_check(n), bijection_check(&all)];
    if all.len() <= 12 {
        out.push(subset_oracle_check(&all));
    }
    out.extend(run_face_checks(&faces, &all));
    out.push(cycle_sum_sample(&faces, if n <= 3 { usize::MAX } else { cfg.cycle_samples }, cfg.seed));
    out.push(classification_check(&faces, cfg.max_dim.min(4)));
    if cfg.max_dim >= 4 {
        out.push(exclusion_check(&scan));
    }
    Ok(AuditReport {
        tool: "asmgrid",
        version: crate::config::VERSION,
        config: cfg.clone(),
        complete: scan.complete,
        coverage: scan.coverage.clone(),
        levels: scan.levels.iter().map(Vec::len).collect(),
        checks: out,
    })
}

/// One `PASS`/`FAIL` line per check.
pub fn summary(r: &AuditReport) -> String {
    let mut s = String::new();
    for c in &r.checks {
        let status = if c.passed() { "PASS" } else { "FAIL" };
        s.push_str(&format!("{status} {} ({} checked, {} failed)", c.name, c.checked, c.failures));
        if let Some(note) = &c.note {
            s.push_str(&format!(": {note}"));
        }
        s.push('\n');
        if let Some(w) = &c.witness {
            s.push_str(&format!("     witness: {}\n", w.detail));
        }
    }
    s.push_str(&format!("coverage: {}\n", r.coverage));
    s
}
