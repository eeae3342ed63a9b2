use std::time::{Duration, Instant};

use hatguess::game::{hg_exact, players_win, ColorLists};
use hatguess::{Budget, Graph};

use super::{lib, oracle, Check};

/// `(name, graph6, expected)` for the smallest graphs.
pub const SMALL: [(&str, &str, u32); 5] = [("K2", "A_", 2), ("P3", "Bg", 2), ("P4", "Ch", 2), ("K3", "Bw", 3), ("C4", "Cr", 3)];

/// The exact solver and the brute-force oracle agree with the expected
/// values, and each exact solve finishes within `limit`.
pub fn small_values(limit: Duration) -> Check {
    for (name, g6, expected) in SMALL {
        let g = lib(Graph::parse_graph6(g6), name)?;
        let t = Instant::now();
        let hg = lib(hg_exact(&g, 1, expected + 2, Budget::default()), name)?;
        let took = t.elapsed();
        ensure!(hg == expected, "{name}: solver gives {hg}, expected {expected}");
        ensure!(took <= limit, "{name}: took {took:?}");
        let brute = oracle::hat_guessing_number(&g);
        ensure!(brute as u32 == expected, "{name}: oracle gives {brute}, expected {expected}");
    }
    Ok(())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Solver and oracle agree on every graph with at most `n_max` vertices, one
/// per isomorphism class, for each `k` in `ks`.
pub fn solver_matches_oracle(n_max: usize, ks: &[usize]) -> Check {
    for n in 1..=n_max {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let index = |a: usize, b: usize| pairs.iter().position(|&e| e == (a.min(b), a.max(b))).unwrap();
        let perms = permutations(n);
        let relabel = |mask: u32, p: &[usize]| {
            pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).fold(0u32, |m, (_, &(a, b))| m | 1 << index(p[a], p[b]))
        };
        for mask in 0u32..1 << pairs.len() {
            if perms.iter().any(|p| relabel(mask, p) < mask) {
                continue;
            }
            let edges: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            let g = lib(Graph::from_edges(n, &edges), "graph")?;
            for &k in ks {
                let lists = ColorLists::uniform(n, k as u32);
                let ours = lib(players_win(&g, &lists, 1, Budget::default()), "solve")?.wins();
                let brute = oracle::players_win(&g, k);
                ensure!(ours == brute, "n = {n}, edges {edges:?}, k = {k}: solver {ours}, oracle {brute}");
            }
        }
    }
    Ok(())
}
