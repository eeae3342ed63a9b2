use hatguess::extremal::{appendix_density_failures, contains_complete, erdos_threshold, ex_exact, PartiteHypergraph};
use hatguess::generate::rng;
use hatguess::Budget;
use rand::seq::index::sample;
use rand::Rng;

use super::{lib, Check};

/// Whether the bipartite graph on `n + n` vertices, given as an adjacency
/// matrix, contains a 4-cycle: two rows sharing two columns.
pub fn has_k22(adj: &[Vec<bool>]) -> bool {
    let n = adj.len();
    (0..n).any(|i| (i + 1..n).any(|j| (0..n).filter(|&c| adj[i][c] && adj[j][c]).count() >= 2))
}

fn matrix(n: usize, edges: &[Vec<usize>]) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; n]; n];
    for e in edges {
        adj[e[0]][e[1]] = true;
    }
    adj
}

/// Largest edge count over all subsets of the `n x n` grid with no 4-cycle.
pub fn brute_ex_bipartite(n: usize) -> u64 {
    let cells = n * n;
    (0u32..1 << cells)
        .filter(|&mask| {
            let adj: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| mask >> (i * n + j) & 1 == 1).collect()).collect();
            !has_k22(&adj)
        })
        .map(|mask| mask.count_ones() as u64)
        .max()
        .unwrap()
}

/// `ex(1, n, l) = l - 1` for all `1 <= l <= n <= n_max`, pruned and not.
pub fn one_partite(n_max: usize) -> Check {
    for n in 1..=n_max {
        for l in 1..=n {
            // an l-subset of the selected indices is the forbidden configuration
            let brute = (0u32..1 << n).map(|m| m.count_ones() as u64).filter(|&c| c < l as u64).max().unwrap();
            for pruned in [true, false] {
                let ex = lib(ex_exact(1, n, l, pruned, Budget::default()), format!("ex(1, {n}, {l})"))?;
                ensure!(ex.value == l as u64 - 1, "ex(1, {n}, {l}) = {} (pruned {pruned})", ex.value);
                ensure!(ex.value == brute, "ex(1, {n}, {l}) = {} but brute force gives {brute}", ex.value);
            }
        }
    }
    Ok(())
}

/// The bipartite values at `n = 2, 3` against full subset enumeration, with
/// witnesses checked.
pub fn small_bipartite() -> Check {
    for (n, stated) in [(2, 3), (3, 6)] {
        let brute = brute_ex_bipartite(n);
        ensure!(brute == stated, "brute force ex(2, {n}, 2) = {brute}, expected {stated}");
        for pruned in [true, false] {
            let ex = lib(ex_exact(2, n, 2, pruned, Budget::default()), format!("ex(2, {n}, 2)"))?;
            ensure!(ex.value == brute, "ex(2, {n}, 2) = {} (pruned {pruned}), brute force {brute}", ex.value);
            ensure!(ex.witness.len() as u64 == ex.value, "ex(2, {n}, 2): witness has {} edges", ex.witness.len());
            ensure!(!has_k22(&matrix(n, &ex.witness)), "ex(2, {n}, 2): witness contains a 4-cycle");
        }
    }
    Ok(())
}

/// Random bipartite graphs on `n + n` vertices for `n` in 9..=16 with at
/// least `3 n^(3/2)` edges; none may avoid a 4-cycle.
pub fn density(seed: u64, samples: usize) -> Check {
    let mut r = rng(seed);
    ensure!(lib(erdos_threshold(2, 9, 2), "threshold")?.ceiling() == 81, "threshold at n = 9 is not 81");
    ensure!(lib(erdos_threshold(2, 16, 2), "threshold")?.ceiling() == 192, "threshold at n = 16 is not 192");
    let mut free = 0;
    for t in 0..samples {
        let n = 9 + t % 8;
        let th = lib(erdos_threshold(2, n, 2), "threshold")?;
        let m = r.gen_range(th.ceiling()..=(n * n) as u64) as usize;
        ensure!(th.is_met_by(m as u64), "sample {t}: {m} edges below the threshold");
        let edges: Vec<Vec<usize>> = sample(&mut r, n * n, m).into_iter().map(|c| vec![c / n, c % n]).collect();
        let ours = lib(contains_complete(&lib(PartiteHypergraph::new(2, n, edges.clone()), "hypergraph")?, 2), "search")?;
        let brute = has_k22(&matrix(n, &edges));
        ensure!(ours.is_some() == brute, "sample {t}: library and brute force disagree");
        if !brute {
            free += 1;
        }
    }
    ensure!(free == 0, "{free} of {samples} dense samples avoid a 4-cycle");
    let bad = appendix_density_failures(1000);
    ensure!(bad.is_empty(), "density estimates fail at l = {bad:?}");
    Ok(())
}
