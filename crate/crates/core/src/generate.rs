//! Named graph families and seeded random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::embedding::{polygon_faces, LayeredPlanarGraph, OuterBlock, OuterplaneGraph, RotationSystem};
use crate::error::{HatError, Result};
use crate::graph::Graph;

fn need(n: usize, min: usize, family: &str) -> Result<()> {
    if n < min {
        return Err(HatError::Parameter(format!("{family} needs at least {min} vertices, got {n}")));
    }
    Ok(())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn path(n: usize) -> Result<Graph> {
    need(n, 1, "path")?;
    Graph::from_edges(n, &(1..n).map(|v| (v - 1, v)).collect::<Vec<_>>())
}

pub fn cycle(n: usize) -> Result<Graph> {
    need(n, 3, "cycle")?;
    Graph::from_edges(n, &(0..n).map(|v| (v, (v + 1) % n)).collect::<Vec<_>>())
}

pub fn clique(n: usize) -> Result<Graph> {
    need(n, 1, "clique")?;
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::from_edges(n, &edges)
}

/// `K_{1,n-1}` with center 0.
pub fn star(n: usize) -> Result<Graph> {
    need(n, 1, "star")?;
    Graph::from_edges(n, &(1..n).map(|v| (0, v)).collect::<Vec<_>>())
}

/// Path `1..n` plus the stem 0 adjacent to all of it.
pub fn petal(n: usize) -> Result<Graph> {
    need(n, 1, "petal")?;
    let mut e: Vec<(usize, usize)> = (1..n).map(|v| (0, v)).collect();
    e.extend((2..n).map(|v| (v - 1, v)));
    Graph::from_edges(n, &e)
}

/// Tree from a uniformly random Prüfer sequence.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Result<Graph> {
    need(n, 1, "random tree")?;
    if n <= 2 {
        return path(n);
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &x in &seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in &seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf remains");
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(n, &edges)
}

/// Petal blocks glued along a random tree of attachments; each block keeps
/// each of its edges with probability `keep`, so every block of the result is
/// a subgraph of a petal graph.
pub fn random_petunia<R: Rng>(n: usize, keep: f64, rng: &mut R) -> Result<Graph> {
    need(n, 1, "random petunia")?;
    let mut edges = Vec::new();
    let mut count = 1;
    while count < n {
        let attach = rng.gen_range(0..count);
        let size = rng.gen_range(1..=5usize.min(n - count));
        let fresh: Vec<usize> = (count..count + size).collect();
        count += size;
        // the attachment vertex is either the stem or a path vertex
        let (stem, path) = if rng.gen_bool(0.5) {
            (attach, fresh.clone())
        } else {
            let mut p = fresh[1..].to_vec();
            p.insert(rng.gen_range(0..=p.len()), attach);
            (fresh[0], p)
        };
        let mut block: Vec<(usize, usize)> = path.iter().map(|&v| (stem, v)).collect();
        block.extend(path.windows(2).map(|w| (w[0], w[1])));
        edges.extend(block.into_iter().filter(|_| rng.gen_bool(keep)));
    }
    Graph::from_edges(n, &edges)
}

/// Triangulated polygon on a random labeling of `0..n`, built by random
/// parenthesization.
pub fn random_maximal_outerplanar<R: Rng>(n: usize, rng: &mut R) -> Result<OuterplaneGraph> {
    need(n, 1, "random maximal outerplanar")?;
    let mut boundary: Vec<usize> = (0..n).collect();
    boundary.shuffle(rng);
    if n <= 2 {
        return OuterplaneGraph::from_blocks(n, vec![OuterBlock::new(boundary, vec![])]);
    }
    let mut chords = Vec::new();
    let mut stack = vec![(0usize, n - 1)];
    while let Some((i, j)) = stack.pop() {
        if j - i < 2 {
            continue;
        }
        let k = rng.gen_range(i + 1..j);
        for (a, b) in [(i, k), (k, j)] {
            if b - a >= 2 {
                chords.push((boundary[a], boundary[b]));
            }
        }
        stack.push((i, k));
        stack.push((k, j));
    }
    OuterplaneGraph::polygon(n, boundary, chords)
}

/// [`random_maximal_outerplanar`] with each chord deleted with probability `drop`.
pub fn random_outerplanar<R: Rng>(n: usize, drop: f64, rng: &mut R) -> Result<OuterplaneGraph> {
    let og = random_maximal_outerplanar(n, rng)?;
    let block = &og.blocks[0];
    let chords = block.chords.iter().copied().filter(|_| !rng.gen_bool(drop)).collect();
    OuterplaneGraph::from_blocks(n, vec![OuterBlock::new(block.boundary.clone(), chords)])
}

fn random_chords<R: Rng>(boundary: &[usize], drop: f64, rng: &mut R) -> Vec<(usize, usize)> {
    let n = boundary.len();
    let mut chords = Vec::new();
    let mut stack = vec![(0usize, n - 1)];
    while let Some((i, j)) = stack.pop() {
        if j - i < 2 {
            continue;
        }
        let k = rng.gen_range(i + 1..j);
        for (a, b) in [(i, k), (k, j)] {
            if b - a >= 2 && !rng.gen_bool(drop) {
                chords.push((boundary[a], boundary[b]));
            }
        }
        stack.push((i, k));
        stack.push((k, j));
    }
    chords
}

/// Nested polygons with the given sizes. Each level keeps each chord of a
/// random triangulation with probability `1 - drop`; each level sits in a
/// random face of the previous one and each edge of a random annulus
/// triangulation between them is kept with probability `keep`. Vertex labels
/// are shuffled.
pub fn random_layered<R: Rng>(sizes: &[usize], drop: f64, keep: f64, rng: &mut R) -> Result<LayeredPlanarGraph> {
    if sizes.is_empty() || sizes.iter().any(|&m| m < 3) {
        return Err(HatError::Parameter("every level needs at least 3 vertices".into()));
    }
    let n: usize = sizes.iter().sum();
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let mut levels = Vec::new();
    let mut offset = 0;
    for &m in sizes {
        let boundary: Vec<usize> = (offset..offset + m).map(|v| label[v]).collect();
        offset += m;
        let chords = random_chords(&boundary, drop, rng);
        levels.push(OuterBlock::new(boundary, chords));
    }
    let mut faces = Vec::new();
    let mut cross = Vec::new();
    for i in 0..sizes.len() - 1 {
        let all = polygon_faces(&levels[i].boundary, &levels[i].chords);
        let face = all[rng.gen_range(0..all.len())].clone();
        let inner = &levels[i + 1].boundary;
        let (p, q) = (face.len(), inner.len());
        let s = rng.gen_range(0..p);
        let mut moves: Vec<bool> = std::iter::repeat_n(true, p).chain(std::iter::repeat_n(false, q - 1)).collect();
        moves.shuffle(rng);
        let (mut o, mut k) = (0, 0);
        let mut list = vec![(face[s], inner[0])];
        for outer in moves {
            if outer {
                o += 1;
            } else {
                k += 1;
            }
            let e = (face[(s + o) % p], inner[k]);
            if !list.contains(&e) {
                list.push(e);
            }
        }
        list.retain(|_| rng.gen_bool(keep));
        faces.push(face);
        cross.push(list);
    }
    LayeredPlanarGraph::new(levels, cross, faces).map_err(|e| HatError::Parameter(format!("generated layered graph is invalid: {e}")))
}

/// Rotation system of a polygon with chords drawn inside (a planar embedding).
pub fn polygon_rotation(og: &OuterplaneGraph) -> Result<RotationSystem> {
    let g = og.graph.clone();
    let n = g.vertex_count();
    let mut pos = vec![usize::MAX; n];
    let mut boundary: Vec<usize> = Vec::new();
    for b in &og.blocks {
        if b.boundary.len() >= 3 {
            if og.blocks.len() != 1 {
                return Err(HatError::precondition("polygon rotation needs a single block"));
            }
            boundary = b.boundary.clone();
        }
    }
    if boundary.len() != n {
        return Err(HatError::precondition("polygon rotation needs a Hamiltonian boundary"));
    }
    for (i, &v) in boundary.iter().enumerate() {
        pos[v] = i;
    }
    let rotation = (0..n)
        .map(|v| {
            let mut r = g.neighbors(v).to_vec();
            r.sort_by_key(|&u| (pos[u] + n - pos[v]) % n);
            r
        })
        .collect();
    RotationSystem::new(g, rotation)
}

/// Planar embedding of a random triangulated polygon on `n - 1` vertices plus
/// an apex (vertex `n - 1`) in the outer face joined to every boundary vertex.
pub fn random_planar_rotation<R: Rng>(n: usize, rng: &mut R) -> Result<RotationSystem> {
    need(n, 4, "random planar rotation")?;
    let og = random_maximal_outerplanar(n - 1, rng)?;
    let inner = polygon_rotation(&og)?;
    let apex = n - 1;
    let boundary = &og.blocks[0].boundary;
    let mut edges: Vec<(usize, usize)> = og.graph.edges().collect();
    edges.extend(boundary.iter().map(|&v| (v, apex)));
    let g = Graph::from_edges(n, &edges)?;
    let mut rotation: Vec<Vec<usize>> = (0..n - 1)
        .map(|v| {
            let mut r = inner.rotation(v).to_vec();
            r.push(apex);
            r
        })
        .collect();
    rotation.push(boundary.iter().rev().copied().collect());
    RotationSystem::new(g, rotation)
}

/// `C_3 × C_3` on the torus with the grid rotation; vertex `3i + j` sits at
/// row `i`, column `j`.
pub fn toroidal_grid() -> Result<RotationSystem> {
    let id = |i: usize, j: usize| 3 * (i % 3) + j % 3;
    let mut edges = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            edges.push((id(i, j), id(i, j + 1)));
            edges.push((id(i, j), id(i + 1, j)));
        }
    }
    let g = Graph::from_edges(9, &edges)?;
    let rotation = (0..9)
        .map(|v| {
            let (i, j) = (v / 3, v % 3);
            vec![id(i, j + 1), id(i + 1, j), id(i, j + 2), id(i + 2, j)]
        })
        .collect();
    RotationSystem::new(g, rotation)
}

/// `K_5` embedded on the torus.
pub fn toroidal_k5() -> Result<RotationSystem> {
    let g = clique(5)?;
    let rotation = vec![vec![1, 4, 2, 3], vec![0, 2, 3, 4], vec![0, 3, 1, 4], vec![0, 1, 2, 4], vec![0, 1, 2, 3]];
    RotationSystem::new(g, rotation)
}

/// `K_{3,3}` (parts `0..3`, `3..6`) embedded on the torus.
pub fn toroidal_k33() -> Result<RotationSystem> {
    let edges: Vec<(usize, usize)> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
    let g = Graph::from_edges(6, &edges)?;
    let rotation = vec![vec![3, 4, 5], vec![3, 4, 5], vec![3, 4, 5], vec![0, 1, 2], vec![0, 1, 2], vec![0, 1, 2]];
    RotationSystem::new(g, rotation)
}
