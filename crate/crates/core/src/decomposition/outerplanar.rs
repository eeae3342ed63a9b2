//! Splitting an outerplanar graph into a petunia and an independent set, and
//! an exact outerplanarity test for small graphs.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::petunia::{is_petunia, PetuniaCertificate};
use crate::embedding::{chords_cross, maximal_completion, OuterplaneGraph};
use crate::error::{Budget, HatError, Result};
use crate::graph::Graph;

/// `A`, `B` and a petunia certificate for `G[A]` (on the vertices of `A`
/// renumbered `0..|A|` in ascending order).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OuterplanarSplit {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub certificate: PetuniaCertificate,
}

/// Partition into `A` and `B` with `G[A]` a petunia containing `uv`, `B`
/// independent, `u` without `B`-neighbors, `v` with at most two and every
/// other vertex with at most three.
///
/// The drawing is completed to a triangulated polygon first; the recursion
/// takes `N[u]` into `A`, and for every run of the polygon strictly between
/// consecutive neighbors `w_i, w_{i+1}` of `u` puts the apex `x_i` of the
/// second triangle on `w_i w_{i+1}` into `B` and its neighbors into `A`, then
/// recurses into the sub-polygons cut off by consecutive neighbors of `x_i`,
/// oriented away from `x_i`'s position. The five conditions are checked on
/// the completion and hence hold for the input.
pub fn outerplanar_split(og: &OuterplaneGraph, root: (usize, usize)) -> Result<OuterplanarSplit> {
    let g = &og.graph;
    let n = g.vertex_count();
    let (u, v) = root;
    if u >= n || v >= n || !g.has_edge(u, v) {
        return Err(HatError::precondition(format!("root edge {u}-{v} is not an edge")));
    }
    let (plus, side) = if n < 3 {
        og.validate().map_err(|e| HatError::precondition(format!("invalid outerplane drawing: {e}")))?;
        (g.clone(), vec![Some(true); n])
    } else {
        let (cycle, chords) = maximal_completion(og)?;
        let k = cycle.len();
        let mut edges: Vec<(usize, usize)> = (0..k).map(|i| (cycle[i], cycle[(i + 1) % k])).collect();
        edges.extend(chords);
        let plus = Graph::from_edges_dedup(n, edges)?;
        let mut side = vec![None; n];
        split_polygon(&plus, &cycle, u, v, &mut side)?;
        (plus, side)
    };
    let a: Vec<usize> = (0..n).filter(|&x| side[x] == Some(true)).collect();
    let b: Vec<usize> = (0..n).filter(|&x| side[x] == Some(false)).collect();
    if a.len() + b.len() != n {
        return Err(HatError::claim("split left vertices unassigned", format!("{side:?}")));
    }
    check_split(&plus, &a, &b, root)?;
    let certificate = is_petunia(&g.induced(&a).0)
        .ok_or_else(|| HatError::claim("G[A] is not a petunia", format!("A = {a:?}")))?;
    Ok(OuterplanarSplit { a, b, certificate })
}

fn assign(side: &mut [Option<bool>], x: usize, in_a: bool) -> Result<()> {
    match side[x] {
        Some(s) if s != in_a => Err(HatError::claim("vertex assigned to both A and B", format!("vertex {x}"))),
        _ => {
            side[x] = Some(in_a);
            Ok(())
        }
    }
}

/// `poly` lists the vertices of a triangulated sub-polygon in boundary order;
/// its edges are all edges of `plus` among them.
fn split_polygon(plus: &Graph, poly: &[usize], u: usize, v: usize, side: &mut [Option<bool>]) -> Result<()> {
    let m = poly.len();
    if m <= 2 {
        for &x in poly {
            assign(side, x, true)?;
        }
        return Ok(());
    }
    let at: HashMap<usize, usize> = poly.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let pu = at[&u];
    if !at.contains_key(&v) {
        return Err(HatError::claim("root head outside its polygon", format!("{u}->{v} in {poly:?}")));
    }
    let offset = |x: usize| (at[&x] + m - pu) % m;
    let mut w: Vec<usize> = plus.neighbors(u).iter().copied().filter(|x| at.contains_key(x)).collect();
    w.sort_by_key(|&x| offset(x));
    assign(side, u, true)?;
    for &x in &w {
        assign(side, x, true)?;
    }
    for pair in w.windows(2) {
        let (wi, wj) = (pair[0], pair[1]);
        let (oi, oj) = (offset(wi), offset(wj));
        if oj - oi < 2 {
            continue;
        }
        let run: Vec<usize> = (oi + 1..oj).map(|o| poly[(pu + o) % m]).collect();
        let x = *run
            .iter()
            .find(|&&x| plus.has_edge(x, wi) && plus.has_edge(x, wj))
            .ok_or_else(|| HatError::claim("no second triangle on a separating chord", format!("{wi}-{wj}")))?;
        assign(side, x, false)?;
        let mut y: Vec<usize> = plus.neighbors(x).iter().copied().filter(|z| at.contains_key(z)).collect();
        y.sort_by_key(|&z| offset(z));
        for &z in &y {
            assign(side, z, true)?;
        }
        let ox = offset(x);
        for t in 0..y.len() - 1 {
            let (ya, yb) = (y[t], y[t + 1]);
            let (oa, ob) = (offset(ya), offset(yb));
            if oa < ox && ox < ob {
                continue;
            }
            let sub: Vec<usize> = (oa..=ob).map(|o| poly[(pu + o) % m]).collect();
            let (tail, head) = if ob <= ox { (ya, yb) } else { (yb, ya) };
            split_polygon(plus, &sub, tail, head, side)?;
        }
    }
    Ok(())
}

/// The five split conditions on `g` (already known to be a partition).
pub fn check_split(g: &Graph, a: &[usize], b: &[usize], root: (usize, usize)) -> Result<()> {
    let n = g.vertex_count();
    let mut in_b = vec![false; n];
    for &x in b {
        in_b[x] = true;
    }
    let (u, v) = root;
    if in_b[u] || in_b[v] {
        return Err(HatError::claim("root edge not inside A", format!("{u}-{v}")));
    }
    if is_petunia(&g.induced(a).0).is_none() {
        return Err(HatError::claim("G[A] is not a petunia", format!("A = {a:?}")));
    }
    for &x in b {
        if let Some(&y) = g.neighbors(x).iter().find(|&&y| in_b[y]) {
            return Err(HatError::claim("B is not independent", format!("edge {x}-{y}")));
        }
    }
    let count = |x: usize| g.neighbors(x).iter().filter(|&&y| in_b[y]).count();
    if count(u) > 0 {
        return Err(HatError::claim("u has a neighbor in B", format!("u = {u}")));
    }
    if count(v) > 2 {
        return Err(HatError::claim("v has more than two neighbors in B", format!("v = {v}")));
    }
    if let Some(&x) = a.iter().find(|&&x| count(x) > 3) {
        return Err(HatError::claim("vertex with more than three neighbors in B", format!("vertex {x}")));
    }
    Ok(())
}

/// Exact outerplanarity test: every block must have a Hamiltonian cycle with
/// all other block edges as pairwise non-crossing chords.
pub fn is_outerplanar(g: &Graph, budget: Budget) -> Result<bool> {
    let mut meter = budget.meter();
    for block in g.blocks().blocks {
        if block.len() <= 3 {
            continue;
        }
        let (h, _) = g.induced(&block);
        if h.edge_count() > 2 * h.vertex_count() - 3 {
            return Ok(false);
        }
        let mut path = vec![0usize];
        let mut used = vec![false; h.vertex_count()];
        used[0] = true;
        if !ham_search(&h, &mut path, &mut used, &mut meter)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn ham_search(h: &Graph, path: &mut Vec<usize>, used: &mut [bool], meter: &mut crate::error::Meter) -> Result<bool> {
    meter.tick()?;
    let m = h.vertex_count();
    let last = *path.last().unwrap();
    if path.len() == m {
        if !h.has_edge(last, path[0]) {
            return Ok(false);
        }
        let pos: HashMap<usize, usize> = path.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let cyc: BTreeSet<(usize, usize)> =
            (0..m).map(|i| norm(path[i], path[(i + 1) % m])).collect();
        let chords: Vec<(usize, usize)> = h.edges().filter(|e| !cyc.contains(e)).collect();
        for (i, &c) in chords.iter().enumerate() {
            if chords[i + 1..].iter().any(|&d| chords_cross(&pos, c, d)) {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    for &next in h.neighbors(last) {
        // fix the direction: the second vertex is smaller than the last one
        if used[next] || (path.len() == m - 1 && path.len() > 1 && next < path[1]) {
            continue;
        }
        used[next] = true;
        path.push(next);
        if ham_search(h, path, used, meter)? {
            return Ok(true);
        }
        path.pop();
        used[next] = false;
    }
    Ok(false)
}

fn norm(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}
