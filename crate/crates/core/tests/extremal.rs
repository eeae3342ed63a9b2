mod common;

use common::extremal::has_k22;
use hatguess::extremal::{contains_complete, PartiteHypergraph};
use proptest::prelude::*;

#[test]
fn one_partite_formula() {
    common::extremal::one_partite(10).unwrap();
}

#[test]
fn small_bipartite_values() {
    common::extremal::small_bipartite().unwrap();
}

#[test]
fn dense_bipartite_graphs_contain_four_cycles() {
    common::extremal::density(606, 2000).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn four_cycle_search_matches_brute_force(n in 2usize..=6, mask in any::<u64>()) {
        let cells: Vec<Vec<usize>> = (0..n * n).filter(|c| mask >> c & 1 == 1).map(|c| vec![c / n, c % n]).collect();
        let mut adj = vec![vec![false; n]; n];
        for e in &cells {
            adj[e[0]][e[1]] = true;
        }
        let h = PartiteHypergraph::new(2, n, cells).unwrap();
        let found = contains_complete(&h, 2).unwrap();
        prop_assert_eq!(found.is_some(), has_k22(&adj));
        if let Some(w) = found {
            for &i in &w[0] {
                for &j in &w[1] {
                    prop_assert!(adj[i][j]);
                }
            }
        }
    }
}
