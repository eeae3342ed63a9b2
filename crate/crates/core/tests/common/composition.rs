use hatguess::composition::{lemma22_adversary, theorem25_adversary, TreePartitionScheme};
use hatguess::game::{random_strategy, ColorLists};
use hatguess::generate::{random_tree, rng};
use hatguess::{Budget, Graph, VertexPartition};
use rand::Rng;

use super::oracle::someone_right;
use super::{lib, Check};

/// Random trees on 2 to 8 vertices with singleton classes, r = 1, l = 2 and
/// k = 3; the tree adversary must defeat every random strategy.
pub fn tree_adversary(seed: u64, trees: usize, strategies: usize) -> Check {
    let mut r = rng(seed);
    for t in 0..trees {
        let n = 2 + t % 7;
        let g = lib(random_tree(n, &mut r), "tree")?;
        let designated = r.gen_range(0..n);
        let scheme = TreePartitionScheme { partition: VertexPartition::singletons(n), r: 1, l: 2, s: 1 };
        let lists = lib(
            ColorLists::new((0..n).map(|v| (1..=if v == designated { 2 } else { 3 }).collect()).collect()),
            "lists",
        )?;
        for i in 0..strategies {
            let strat = random_strategy(&g, &lists, 1, &mut r);
            let c = lib(
                theorem25_adversary(&g, &scheme, designated, &strat, &lists, i % 2 == 0, Budget::default()),
                format!("tree {t}, strategy {i}"),
            )?;
            ensure!(c.assignment.respects(&lists), "tree {t}, strategy {i}: assignment leaves the lists");
            ensure!(!someone_right(&g, &lists, &strat, &c.assignment), "tree {t}, strategy {i}: a guess is right");
        }
    }
    Ok(())
}

/// Random graph on `A ∪ B` with both sides independent and every vertex of
/// `A` adjacent to at most one vertex of `B`.
pub fn split_instance<R: Rng>(n: usize, r: &mut R) -> (Graph, Vec<usize>, Vec<usize>) {
    let nb = r.gen_range(1..n);
    let b: Vec<usize> = (0..nb).collect();
    let a: Vec<usize> = (nb..n).collect();
    let mut edges = Vec::new();
    for &v in &a {
        if r.gen_bool(0.8) {
            edges.push((r.gen_range(0..nb), v));
        }
    }
    (Graph::from_edges(n, &edges).unwrap(), a, b)
}

/// Split instances on 2 to 6 vertices with k = 3; the two-part adversary must
/// defeat every random strategy.
pub fn split_adversary(seed: u64, instances: usize, strategies: usize) -> Check {
    let mut r = rng(seed);
    for t in 0..instances {
        let n = 2 + t % 5;
        let (g, a, b) = split_instance(n, &mut r);
        let lists = ColorLists::uniform(n, 3);
        for i in 0..strategies {
            let strat = random_strategy(&g, &lists, 1, &mut r);
            let c = lib(lemma22_adversary(&g, &a, &b, &strat, 3, Budget::default()), format!("instance {t}, strategy {i}"))?;
            ensure!(c.s_prime < 3u32.into(), "instance {t}: inflated guess count {} is not below k", c.s_prime);
            ensure!(!someone_right(&g, &lists, &strat, &c.assignment), "instance {t}, strategy {i}: a guess is right");
        }
    }
    Ok(())
}
