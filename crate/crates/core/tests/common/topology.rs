use hatguess::decomposition::genus::{cycle_edges, for_each_cycle, genus_peel, is_separating_cycle};
use hatguess::embedding::RotationSystem;
use hatguess::generate::{self, rng};
use hatguess::{Budget, Graph};
use rand::seq::SliceRandom;
use rand::Rng;

use super::{lib, Check};

/// Connected random graph with a uniformly random rotation at every vertex.
pub fn random_embedding(n: usize, p: f64, seed: u64) -> RotationSystem {
    let mut r = rng(seed);
    loop {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if r.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, &edges).unwrap();
        if !g.is_connected() {
            continue;
        }
        let rotation = (0..n)
            .map(|v| {
                let mut x = g.neighbors(v).to_vec();
                x.shuffle(&mut r);
                x
            })
            .collect();
        return RotationSystem::new(g, rotation).unwrap();
    }
}

pub fn all_cycles(g: &Graph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut meter = Budget::unlimited().meter();
    for len in 3..=g.vertex_count() {
        for_each_cycle(g, len, &mut meter, &mut |c| {
            out.push(c.to_vec());
            Ok(false)
        })
        .unwrap();
    }
    out
}

/// Every cycle of random planar rotation systems on 4 to 10 vertices separates.
pub fn planar_cycles_separate(seed: u64, count: usize) -> Check {
    let mut r = rng(seed);
    for t in 0..count {
        let rs = lib(generate::random_planar_rotation(4 + t % 7, &mut r), "planar rotation")?;
        ensure!(rs.genus() == 0, "instance {t}: genus {}", rs.genus());
        for c in all_cycles(rs.graph()) {
            ensure!(lib(is_separating_cycle(&rs, &cycle_edges(&c)), "separation")?, "instance {t}: cycle {c:?} does not separate");
        }
    }
    Ok(())
}

/// No row or column of the toroidal 3 x 3 grid separates.
pub fn grid_meridians() -> Check {
    let rs = lib(generate::toroidal_grid(), "grid")?;
    for i in 0..3 {
        for c in [[3 * i, 3 * i + 1, 3 * i + 2], [i, i + 3, i + 6]] {
            ensure!(!lib(is_separating_cycle(&rs, &cycle_edges(&c)), "separation")?, "meridian {c:?} separates");
        }
    }
    Ok(())
}

/// The peel succeeds with at most five cycle neighbors on the toroidal
/// examples and on random embeddings of positive genus.
pub fn peel_bound(seeds: std::ops::Range<u64>) -> Check {
    let mut embeddings = vec![
        lib(generate::toroidal_grid(), "grid")?,
        lib(generate::toroidal_k5(), "K5")?,
        lib(generate::toroidal_k33(), "K33")?,
    ];
    embeddings.extend(seeds.map(|s| random_embedding(7, 0.5, s)).filter(|rs| rs.genus() > 0));
    for (i, rs) in embeddings.iter().enumerate() {
        let p = lib(genus_peel(rs, Budget::default()), format!("embedding {i}"))?;
        let g = rs.graph();
        for &v in &p.a {
            let c = g.neighbors(v).iter().filter(|u| p.b.contains(u)).count();
            ensure!(c <= 5, "embedding {i}: vertex {v} has {c} cycle neighbors");
        }
        ensure!(!lib(is_separating_cycle(rs, &cycle_edges(&p.cycle)), "separation")?, "embedding {i}: peeled cycle separates");
    }
    Ok(())
}

fn xy_paths(g: &Graph, x: usize, y: usize) -> Vec<Vec<usize>> {
    fn go(g: &Graph, y: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        if last == y {
            out.push(path.clone());
            return;
        }
        for &w in g.neighbors(last) {
            if !path.contains(&w) {
                path.push(w);
                go(g, y, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(g, y, &mut vec![x], &mut out);
    out
}

fn union_cycle(p: &[usize], q: &[usize]) -> Vec<usize> {
    let mut c = p.to_vec();
    c.extend(q[1..q.len() - 1].iter().rev());
    c
}

fn disjoint_inside(p: &[usize], q: &[usize]) -> bool {
    p[1..p.len() - 1].iter().all(|v| !q.contains(v)) && !(p.len() == 2 && q.len() == 2)
}

/// For three internally disjoint x-y paths, never exactly two of the three
/// cycles they form separate; checked on every triple in embeddings with at
/// most 8 vertices.
pub fn three_paths(seed: u64) -> Check {
    let mut embeddings = vec![lib(generate::toroidal_k5(), "K5")?, lib(generate::toroidal_k33(), "K33")?];
    let mut r = rng(seed);
    for t in 0..4 {
        embeddings.push(lib(generate::random_planar_rotation(5 + t, &mut r), "planar rotation")?);
    }
    embeddings.extend((0..12).map(|s| random_embedding(6 + (s as usize) % 3, 0.45, seed * 1000 + s)));
    let mut triples = 0;
    for rs in &embeddings {
        let g = rs.graph();
        ensure!(g.vertex_count() <= 8, "embedding too large");
        for x in 0..g.vertex_count() {
            for y in x + 1..g.vertex_count() {
                let paths = xy_paths(g, x, y);
                let sep = |a: usize, b: usize| is_separating_cycle(rs, &cycle_edges(&union_cycle(&paths[a], &paths[b])));
                for i in 0..paths.len() {
                    for j in i + 1..paths.len() {
                        if !disjoint_inside(&paths[i], &paths[j]) {
                            continue;
                        }
                        let sij = lib(sep(i, j), "separation")?;
                        for k in j + 1..paths.len() {
                            if !disjoint_inside(&paths[i], &paths[k]) || !disjoint_inside(&paths[j], &paths[k]) {
                                continue;
                            }
                            let count = [sij, lib(sep(i, k), "separation")?, lib(sep(j, k), "separation")?].iter().filter(|&&s| s).count();
                            ensure!(count != 2, "paths {:?} {:?} {:?}: exactly two cycles separate", paths[i], paths[j], paths[k]);
                            triples += 1;
                        }
                    }
                }
            }
        }
    }
    ensure!(triples > 100, "only {triples} path triples examined");
    Ok(())
}
