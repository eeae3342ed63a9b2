mod common;

use common::topology::{all_cycles, random_embedding};
use hatguess::decomposition::genus::{cycle_edges, is_separating_cycle};
use proptest::prelude::*;

#[test]
fn every_planar_cycle_separates() {
    common::topology::planar_cycles_separate(3, 20).unwrap();
}

#[test]
fn grid_meridians_do_not_separate() {
    common::topology::grid_meridians().unwrap();
}

#[test]
fn peel_neighbor_bound_on_toroidal_embeddings() {
    common::topology::peel_bound(0..40).unwrap();
}

#[test]
fn three_path_consequence_holds_exhaustively() {
    common::topology::three_paths(8).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn separation_ignores_direction_and_start(seed in 0u64..10_000, pick in 0usize..1000, shift in 0usize..10) {
        let rs = random_embedding(6, 0.5, seed);
        let cycles = all_cycles(rs.graph());
        prop_assume!(!cycles.is_empty());
        let c = &cycles[pick % cycles.len()];
        let base = is_separating_cycle(&rs, &cycle_edges(c)).unwrap();
        let mut rev = c.clone();
        rev.reverse();
        let mut edges = cycle_edges(&rev);
        let len = edges.len();
        edges.rotate_left(shift % len);
        prop_assert_eq!(is_separating_cycle(&rs, &edges).unwrap(), base);
    }
}
