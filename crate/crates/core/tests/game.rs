mod common;

use std::time::Duration;

use common::oracle;
use hatguess::game::{players_win, random_strategy, verify_strategy, ColorLists};
use hatguess::generate::rng;
use hatguess::{Budget, Graph};
use proptest::prelude::*;

#[test]
fn smallest_graphs() {
    common::game::small_values(Duration::from_secs(60)).unwrap();
}

#[test]
fn solver_matches_brute_force_on_all_small_graphs() {
    common::game::solver_matches_oracle(4, &[2, 3]).unwrap();
}

fn small_graph() -> impl Strategy<Value = Graph> {
    (1usize..=5, any::<u16>()).prop_map(|(n, mask)| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let edges: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn verifier_agrees_with_table_lookup(g in small_graph(), k in 2u32..=3, seed in any::<u64>()) {
        let lists = ColorLists::uniform(g.vertex_count(), k);
        let strat = random_strategy(&g, &lists, 1, &mut rng(seed));
        let verdict = verify_strategy(&g, &lists, &strat, Budget::default()).unwrap();
        match verdict.counterexample {
            Some(a) => {
                prop_assert!(!verdict.wins);
                prop_assert!(!oracle::someone_right(&g, &lists, &strat, &a));
            }
            None => prop_assert!(verdict.wins),
        }
    }

    #[test]
    fn more_colors_never_help(g in small_graph()) {
        let n = g.vertex_count();
        let two = players_win(&g, &ColorLists::uniform(n, 2), 1, Budget::default()).unwrap().wins();
        let three = players_win(&g, &ColorLists::uniform(n, 3), 1, Budget::default()).unwrap().wins();
        prop_assert!(two || !three);
    }
}
