use std::sync::OnceLock;

use asmgrid_core::oracle::{affine_rank, profile_of_vertices, vertices_by_filter};
use asmgrid_core::{audit, enumerate_asms, smallest_face, union, asm_to_simple_flow_grid, Asm, Face, SimpleFlowGrid};
use proptest::prelude::*;

fn asm5() -> &'static [Asm] {
    static ALL: OnceLock<Vec<Asm>> = OnceLock::new();
    ALL.get_or_init(|| enumerate_asms(5).unwrap())
}

fn subset() -> impl Strategy<Value = Vec<Asm>> {
    prop::collection::btree_set(0..429usize, 1..5).prop_map(|ks| ks.into_iter().map(|k| asm5()[k].clone()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_contains_generators_and_is_idempotent(xs in subset()) {
        let f = smallest_face(&xs).unwrap();
        for a in &xs {
            prop_assert!(f.contains_vertex(a));
        }
        let again = smallest_face(f.vertices()).unwrap();
        prop_assert_eq!(&again, &f);
        let grids: Vec<SimpleFlowGrid> = xs.iter().map(asm_to_simple_flow_grid).collect();
        prop_assert!(f.grid().contains_grid(&union(&grids).unwrap()));
    }

    #[test]
    fn region_count_is_affine_dimension(xs in subset()) {
        let f = smallest_face(&xs).unwrap();
        prop_assert_eq!(f.dimension(), affine_rank(f.vertices()));
        let p = profile_of_vertices(&xs).unwrap();
        prop_assert_eq!(vertices_by_filter(5, &p).unwrap(), f.vertices().to_vec());
    }

    #[test]
    fn random_faces_pass_structural_checks(xs in subset()) {
        let f: Face = smallest_face(&xs).unwrap();
        prop_assume!(f.dimension() <= 5);
        for r in [
            audit::bounds(&f),
            audit::euler_relations(&f),
            audit::two_level(&f),
            audit::central_symmetry(&f),
            audit::cycle_basis(&f),
            audit::grid_consistency(&f),
        ] {
            prop_assert!(r.is_ok(), "{:?}: {}", f.grid(), r.unwrap_err());
        }
    }

    #[test]
    fn facets_are_faces_one_dimension_down(xs in subset()) {
        let f = smallest_face(&xs).unwrap();
        prop_assume!(f.dimension() >= 1 && f.dimension() <= 5);
        for h in f.facets() {
            prop_assert_eq!(h.dimension() + 1, f.dimension());
            prop_assert!(f.contains(h));
            prop_assert!(h.vertices().iter().all(|a| f.contains_vertex(a)));
        }
    }
}
