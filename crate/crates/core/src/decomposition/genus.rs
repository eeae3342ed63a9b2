//! Separating cycles of embedded graphs and the peel of a shortest
//! non-separating cycle.

use serde::{Deserialize, Serialize};

use crate::embedding::RotationSystem;
use crate::error::{Budget, HatError, Meter, Result};
use crate::graph::Graph;

/// Vertex order of a simple cycle given as an edge list, starting at the
/// first edge's first endpoint.
pub fn cycle_vertices(g: &Graph, edges: &[(usize, usize)]) -> Result<Vec<usize>> {
    let m = edges.len();
    if m < 3 {
        return Err(HatError::contract("a cycle needs at least 3 edges"));
    }
    let n = g.vertex_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in edges {
        if a >= n || b >= n || !g.has_edge(a, b) {
            return Err(HatError::contract(format!("{a}-{b} is not an edge")));
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    if adj.iter().any(|x| !x.is_empty() && x.len() != 2) {
        return Err(HatError::contract("edge list is not a simple cycle"));
    }
    let mut order = vec![edges[0].0];
    let mut prev = edges[0].0;
    let mut cur = edges[0].1;
    while cur != edges[0].0 {
        order.push(cur);
        let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
        prev = cur;
        cur = next;
    }
    if order.len() != m {
        return Err(HatError::contract("edge list is not a single cycle"));
    }
    Ok(order)
}

pub fn cycle_edges(vertices: &[usize]) -> Vec<(usize, usize)> {
    let m = vertices.len();
    (0..m).map(|i| (vertices[i], vertices[(i + 1) % m])).collect()
}

/// Whether cutting the surface along the cycle disconnects it: the dual graph
/// minus the duals of the cycle edges is disconnected.
pub fn is_separating_cycle(rs: &RotationSystem, cycle: &[(usize, usize)]) -> Result<bool> {
    let g = rs.graph();
    cycle_vertices(g, cycle)?;
    let faces = rs.faces();
    let on_cycle = |a: usize, b: usize| cycle.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a));
    let mut parent: Vec<usize> = (0..faces.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut parts = faces.len();
    for (a, b) in g.edges() {
        if on_cycle(a, b) {
            continue;
        }
        let (x, y) = (find(&mut parent, faces.face_of(a, b)), find(&mut parent, faces.face_of(b, a)));
        if x != y {
            parent[x] = y;
            parts -= 1;
        }
    }
    Ok(parts > 1)
}

/// Calls `f` on every simple cycle of length exactly `len`, each once, as a
/// vertex sequence starting at its least vertex. Stops early when `f`
/// returns `true`.
pub fn for_each_cycle(
    g: &Graph,
    len: usize,
    meter: &mut Meter,
    f: &mut dyn FnMut(&[usize]) -> Result<bool>,
) -> Result<bool> {
    fn extend(
        g: &Graph,
        len: usize,
        path: &mut Vec<usize>,
        used: &mut [bool],
        meter: &mut Meter,
        f: &mut dyn FnMut(&[usize]) -> Result<bool>,
    ) -> Result<bool> {
        meter.tick()?;
        let (s, last) = (path[0], *path.last().unwrap());
        if path.len() == len {
            if path[1] < path[len - 1] && g.has_edge(last, s) {
                return f(path);
            }
            return Ok(false);
        }
        for &w in g.neighbors(last) {
            if w > s && !used[w] {
                used[w] = true;
                path.push(w);
                let stop = extend(g, len, path, used, meter, f)?;
                path.pop();
                used[w] = false;
                if stop {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
    let n = g.vertex_count();
    if len < 3 {
        return Ok(false);
    }
    let mut used = vec![false; n];
    for s in 0..n {
        used[s] = true;
        let mut path = vec![s];
        let stop = extend(g, len, &mut path, &mut used, meter, f)?;
        used[s] = false;
        if stop {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A non-separating cycle of minimum length, or `None` when every cycle
/// separates (genus 0).
pub fn shortest_nonseparating_cycle(rs: &RotationSystem, budget: Budget) -> Result<Option<Vec<usize>>> {
    let g = rs.graph();
    if rs.genus() == 0 {
        return Ok(None);
    }
    let mut meter = budget.meter();
    let mut found = None;
    for len in 3..=g.vertex_count() {
        for_each_cycle(g, len, &mut meter, &mut |c| {
            if is_separating_cycle(rs, &cycle_edges(c))? {
                return Ok(false);
            }
            found = Some(c.to_vec());
            Ok(true)
        })?;
        if found.is_some() {
            return Ok(found);
        }
    }
    Err(HatError::claim("positive genus but every cycle separates", format!("genus {}", rs.genus())))
}

/// `A = V \ V(C)` and `B = V(C)` for a shortest non-separating cycle `C`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusPeel {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub cycle: Vec<usize>,
    /// Most neighbors on `C` of a vertex off `C`.
    pub max_cycle_neighbors: usize,
    pub d_check: bool,
}

/// Peels a shortest non-separating cycle. Every vertex off the cycle must
/// see at most five cycle vertices and the cycle must be induced; either
/// failure is a claim violation.
pub fn genus_peel(rs: &RotationSystem, budget: Budget) -> Result<GenusPeel> {
    let g = rs.graph();
    let cycle = shortest_nonseparating_cycle(rs, budget)?
        .ok_or_else(|| HatError::precondition("no nonseparating cycle: the embedding is planar"))?;
    let mut on = vec![false; g.vertex_count()];
    for &v in &cycle {
        on[v] = true;
    }
    let a: Vec<usize> = (0..g.vertex_count()).filter(|&v| !on[v]).collect();
    let mut b = cycle.clone();
    b.sort_unstable();
    let mut max_cycle_neighbors = 0;
    for &v in &a {
        let c = g.neighbors(v).iter().filter(|&&u| on[u]).count();
        if c > 5 {
            return Err(HatError::claim("vertex off the shortest non-separating cycle has more than five neighbors on it", format!("vertex {v}, cycle {cycle:?}")));
        }
        max_cycle_neighbors = max_cycle_neighbors.max(c);
    }
    if b.iter().any(|&v| g.neighbors(v).iter().filter(|&&u| on[u]).count() > 2) {
        return Err(HatError::claim("shortest non-separating cycle has a chord", format!("{cycle:?}")));
    }
    Ok(GenusPeel { a, b, cycle, max_cycle_neighbors, d_check: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn grid_meridian_is_nonseparating() {
        let rs = generate::toroidal_grid().unwrap();
        assert!(!is_separating_cycle(&rs, &cycle_edges(&[0, 1, 2])).unwrap());
        assert!(!is_separating_cycle(&rs, &cycle_edges(&[0, 3, 6])).unwrap());
        // a face boundary always separates
        assert!(is_separating_cycle(&rs, &cycle_edges(&[0, 1, 4, 3])).unwrap());
        let c = shortest_nonseparating_cycle(&rs, Budget::default()).unwrap().unwrap();
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn planar_cycles_separate() {
        let k4 = generate::clique(4).unwrap();
        let rs = RotationSystem::new(k4, vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]]).unwrap();
        assert_eq!(rs.genus(), 0);
        for t in [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] {
            assert!(is_separating_cycle(&rs, &cycle_edges(&t)).unwrap());
        }
        assert_eq!(shortest_nonseparating_cycle(&rs, Budget::default()).unwrap(), None);
        assert!(matches!(genus_peel(&rs, Budget::default()), Err(HatError::Precondition(_))));
    }

    #[test]
    fn peels() {
        let p = genus_peel(&generate::toroidal_grid().unwrap(), Budget::default()).unwrap();
        assert!(p.max_cycle_neighbors <= 2 && p.b.len() == 3 && p.a.len() == 6);
        let p = genus_peel(&generate::toroidal_k5().unwrap(), Budget::default()).unwrap();
        assert_eq!(p.cycle.len(), 3);
        assert!(p.max_cycle_neighbors <= 3);
    }

    #[test]
    fn bad_cycles_rejected() {
        let rs = generate::toroidal_grid().unwrap();
        assert!(is_separating_cycle(&rs, &[(0, 1), (1, 2)]).is_err());
        assert!(is_separating_cycle(&rs, &[(0, 1), (1, 5), (5, 0)]).is_err());
    }
}
