//! Petunias (graphs whose blocks are subgraphs of petal graphs) and their
//! partition into forests with a forest quotient.

use serde::{Deserialize, Serialize};

use crate::error::{HatError, Result};
use crate::graph::{cross_neighbor_count, quotient, Graph, VertexPartition};

/// One block written as a subgraph of a petal graph: every block edge not at
/// the stem joins two consecutive vertices of `order`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PetalBlock {
    pub stem: Option<usize>,
    pub order: Vec<usize>,
}

impl PetalBlock {
    pub fn vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.stem.into_iter().chain(self.order.iter().copied()).collect();
        v.sort_unstable();
        v
    }
}

/// Petal description of every block, in the order of [`Graph::blocks`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PetuniaCertificate {
    pub blocks: Vec<PetalBlock>,
}

impl PetuniaCertificate {
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let blocks = g.blocks().blocks;
        if blocks.len() != self.blocks.len() {
            return Err(HatError::contract(format!("{} blocks certified, graph has {}", self.blocks.len(), blocks.len())));
        }
        for (i, (b, pb)) in blocks.iter().zip(&self.blocks).enumerate() {
            if &pb.vertices() != b {
                return Err(HatError::contract(format!("block {i} certified on the wrong vertex set")));
            }
            let mut rank = std::collections::HashMap::new();
            for (r, &v) in pb.order.iter().enumerate() {
                rank.insert(v, r);
            }
            for &x in b {
                for &y in g.neighbors(x) {
                    if x < y && Some(x) != pb.stem && Some(y) != pb.stem {
                        if let (Some(&rx), Some(&ry)) = (rank.get(&x), rank.get(&y)) {
                            if rx.abs_diff(ry) != 1 {
                                return Err(HatError::contract(format!("edge {x}-{y} of block {i} skips along the path")));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Certificate iff every block minus some vertex is a disjoint union of paths.
/// Stems are tried in ascending order.
pub fn is_petunia(g: &Graph) -> Option<PetuniaCertificate> {
    let mut out = Vec::new();
    for b in g.blocks().blocks {
        match b.len() {
            1 => out.push(PetalBlock { stem: None, order: b }),
            2 => out.push(PetalBlock { stem: Some(b[0]), order: vec![b[1]] }),
            _ => out.push(b.iter().find_map(|&stem| path_order(g, &b, stem).map(|order| PetalBlock { stem: Some(stem), order }))?),
        }
    }
    Some(PetuniaCertificate { blocks: out })
}

/// Concatenated paths of `block − stem`, or `None` if it is not a union of paths.
fn path_order(g: &Graph, block: &[usize], stem: usize) -> Option<Vec<usize>> {
    let rest: Vec<usize> = block.iter().copied().filter(|&v| v != stem).collect();
    let (h, map) = g.induced(&rest);
    if h.max_degree() > 2 || !h.is_forest() {
        return None;
    }
    let mut order = Vec::with_capacity(rest.len());
    for comp in h.components() {
        let start = *comp.iter().find(|&&v| h.degree(v) <= 1).expect("path has an end");
        let (mut prev, mut cur) = (usize::MAX, start);
        loop {
            order.push(map[cur]);
            match h.neighbors(cur).iter().find(|&&w| w != prev) {
                Some(&next) => {
                    prev = cur;
                    cur = next;
                }
                None => break,
            }
        }
    }
    Some(order)
}

/// Red/blue forest partition of a petunia.
///
/// Each block is completed to its petal graph. The first vertex of each
/// component is red; a block entered through its stem gets its path colored
/// alternately starting red, a block entered through a path vertex gets the
/// alternation extended from it and a red stem. Classes are the monochromatic
/// components of the completed graph, numbered by least vertex. Checked
/// postconditions: each class induces a forest, the quotient is a forest and
/// `|N(F_i) ∩ F_j| ≤ 3`.
pub fn petunia_forest_partition(g: &Graph, cert: &PetuniaCertificate) -> Result<VertexPartition> {
    cert.validate(g).map_err(|e| HatError::precondition(format!("invalid petunia certificate: {e}")))?;
    let n = g.vertex_count();
    let mut plus: Vec<(usize, usize)> = g.edges().collect();
    let mut blocks_of: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, pb) in cert.blocks.iter().enumerate() {
        for v in pb.vertices() {
            blocks_of[v].push(i);
        }
        if let Some(s) = pb.stem {
            plus.extend(pb.order.iter().map(|&v| (s, v)));
        }
        plus.extend(pb.order.windows(2).map(|w| (w[0], w[1])));
    }
    let gp = Graph::from_edges_dedup(n, plus)?;

    let mut red: Vec<Option<bool>> = vec![None; n];
    let mut done = vec![false; cert.blocks.len()];
    for start in 0..n {
        if red[start].is_some() {
            continue;
        }
        red[start] = Some(true);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &bi in &blocks_of[x] {
                if done[bi] {
                    continue;
                }
                done[bi] = true;
                let pb = &cert.blocks[bi];
                if Some(x) == pb.stem {
                    for (r, &v) in pb.order.iter().enumerate() {
                        red[v] = Some(r % 2 == 0);
                    }
                } else {
                    let at = pb.order.iter().position(|&v| v == x).expect("entry vertex lies in its block");
                    let c = red[x].expect("entry vertex is colored");
                    for (r, &v) in pb.order.iter().enumerate() {
                        red[v] = Some(c == (r.abs_diff(at) % 2 == 0));
                    }
                    if let Some(s) = pb.stem {
                        red[s] = Some(true);
                    }
                }
                stack.extend(pb.vertices().into_iter().filter(|&v| v != x));
            }
        }
    }
    let mono = Graph::from_edges(n, &gp.edges().filter(|&(a, b)| red[a] == red[b]).collect::<Vec<_>>())?;
    let classes = mono.components();
    let p = VertexPartition::new(n, classes)?;
    check_forest_partition(g, &p, 3)?;
    Ok(p)
}

/// Asserts the forest-partition postconditions with cross parameter `r`.
pub fn check_forest_partition(g: &Graph, p: &VertexPartition, r: usize) -> Result<()> {
    for (i, c) in p.classes().iter().enumerate() {
        if !g.induced(c).0.is_forest() {
            return Err(HatError::claim("class does not induce a forest", format!("class {i}: {c:?}")));
        }
    }
    let q = quotient(g, p)?;
    if !q.is_forest() {
        return Err(HatError::claim("quotient graph has a cycle", format!("{:?}", p.classes())));
    }
    for (i, j) in q.edges() {
        for (x, y) in [(i, j), (j, i)] {
            let c = cross_neighbor_count(g, &p.classes()[x], &p.classes()[y])?;
            if c > r {
                return Err(HatError::claim(
                    "too many cross neighbors",
                    format!("|N(F_{x}) ∩ F_{y}| = {c}: {:?} / {:?}", p.classes()[x], p.classes()[y]),
                ));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petal(m: usize) -> Graph {
        let mut e: Vec<(usize, usize)> = (1..=m).map(|v| (0, v)).collect();
        e.extend((1..m).map(|v| (v, v + 1)));
        Graph::from_edges(m + 1, &e).unwrap()
    }

    #[test]
    fn petal_is_petunia() {
        let g = petal(5);
        let c = is_petunia(&g).unwrap();
        assert_eq!(c.blocks.len(), 1);
        assert_eq!(c.blocks[0].stem, Some(0));
        c.validate(&g).unwrap();
    }

    #[test]
    fn trees_and_k4() {
        let t = Graph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        assert!(is_petunia(&t).is_some());
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(is_petunia(&k4).is_none());
    }

    #[test]
    fn petal_partition_is_star_plus_singletons() {
        let g = petal(4);
        let p = petunia_forest_partition(&g, &is_petunia(&g).unwrap()).unwrap();
        // stem with path vertices 1 and 3; 2 and 4 alone
        assert_eq!(p.classes(), &[vec![0, 1, 3], vec![2], vec![4]]);
        let q = quotient(&g, &p).unwrap();
        assert!(q.is_forest() && q.is_connected());
    }

    #[test]
    fn single_edge() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let p = petunia_forest_partition(&g, &is_petunia(&g).unwrap()).unwrap();
        assert!(p.len() <= 2);
    }

    #[test]
    fn bad_certificate_is_a_precondition_error() {
        let g = petal(3);
        let cert = PetuniaCertificate { blocks: vec![PetalBlock { stem: Some(0), order: vec![1, 3, 2] }] };
        assert!(matches!(petunia_forest_partition(&g, &cert), Err(HatError::Precondition(_))));
    }
}
