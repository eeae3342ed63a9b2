//! Five-coloring of layered planar graphs into green, blue, indigo, red and
//! pink classes with bounded cross degrees.

use serde::{Deserialize, Serialize};

use super::outerplanar::is_outerplanar;
use super::petunia::is_petunia;
use crate::embedding::LayeredPlanarGraph;
use crate::error::{Budget, HatError, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Green,
    Blue,
    Indigo,
    Red,
    Pink,
}

impl Color {
    pub const ALL: [Color; 5] = [Color::Green, Color::Blue, Color::Indigo, Color::Red, Color::Pink];
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiveColoring {
    pub colors: Vec<Color>,
}

impl FiveColoring {
    pub fn class(&self, c: Color) -> Vec<usize> {
        (0..self.colors.len()).filter(|&v| self.colors[v] == c).collect()
    }

    /// Classes in the order green, blue, indigo, red, pink.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        Color::ALL.iter().map(|&c| self.class(c)).collect()
    }
}

/// Largest counts observed while checking the five claims.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ClaimReport {
    pub green_non_green: usize,
    pub green_children: usize,
    pub blue_later: usize,
    pub indigo_later: usize,
    pub red_pink: usize,
    pub pink_degree: usize,
}

/// Lower-level neighbors of `v` in clockwise order.
pub fn parents(lp: &LayeredPlanarGraph, v: usize) -> Vec<usize> {
    let i = lp.level_of(v);
    if i == 0 {
        return Vec::new();
    }
    lp.cross_edges[i - 1].iter().filter(|e| e.1 == v).map(|e| e.0).collect()
}

/// Upper-level neighbors of `v` in clockwise order. The edges of `v` are
/// cyclically consecutive in the cross-edge list; when `v` carries every
/// edge, the list order is used as is.
pub fn children(lp: &LayeredPlanarGraph, v: usize) -> Vec<usize> {
    let i = lp.level_of(v);
    if i + 1 >= lp.level_count() {
        return Vec::new();
    }
    let list = &lp.cross_edges[i];
    let m = list.len();
    let mine: Vec<bool> = list.iter().map(|e| e.0 == v).collect();
    let Some(start) = (0..m).find(|&j| mine[j] && !mine[(j + m - 1) % m]).or_else(|| mine.first().copied().filter(|&x| x).map(|_| 0))
    else {
        return Vec::new();
    };
    (0..m).map(|t| (start + t) % m).take_while(|&j| mine[j]).map(|j| list[j].1).collect()
}

/// `K_v`: the vertices of the level above strictly between the first and
/// last parent of `v`, going clockwise along that level's boundary.
pub fn k_set(lp: &LayeredPlanarGraph, v: usize) -> Vec<usize> {
    let par = parents(lp, v);
    if par.len() < 2 {
        return Vec::new();
    }
    let boundary = &lp.levels[lp.level_of(v) - 1].boundary;
    let m = boundary.len();
    let pos = |x: usize| boundary.iter().position(|&y| y == x).expect("parent lies on the level above");
    let (p1, pt) = (pos(par[0]), pos(*par.last().unwrap()));
    let len = (pt + m - p1) % m;
    (1..len).map(|d| boundary[(p1 + d) % m]).collect()
}

/// Colors `K_v` green for every `v`, then vertices with at least three
/// children red, then the clockwise-most and counterclockwise-most red child
/// of every red vertex pink, and the rest blue on even levels and indigo on
/// odd ones (levels counted from 1). The five claims are checked before
/// returning; a failure is a claim violation.
pub fn layered_five_coloring(lp: &LayeredPlanarGraph) -> Result<(FiveColoring, ClaimReport)> {
    let g = lp.graph();
    let n = g.vertex_count();
    let mut colors: Vec<Option<Color>> = vec![None; n];
    for v in 0..n {
        let par = parents(lp, v);
        let k = k_set(lp, v);
        for u in par.iter().skip(1).take(par.len().saturating_sub(2)) {
            if !k.contains(u) {
                return Err(HatError::claim("middle parent outside K_v", format!("v = {v}, parents {par:?}, K_v {k:?}")));
            }
        }
        for x in k {
            colors[x] = Some(Color::Green);
        }
    }
    let kids: Vec<Vec<usize>> = (0..n).map(|v| children(lp, v)).collect();
    let red: Vec<bool> = (0..n).map(|v| kids[v].len() >= 3).collect();
    for v in 0..n {
        if red[v] {
            if colors[v] == Some(Color::Green) {
                return Err(HatError::claim("vertex is both green and red", format!("vertex {v}")));
            }
            colors[v] = Some(Color::Red);
        }
    }
    for v in 0..n {
        if !red[v] {
            continue;
        }
        let red_kids: Vec<usize> = kids[v].iter().copied().filter(|&c| red[c]).collect();
        if let (Some(&first), Some(&last)) = (red_kids.first(), red_kids.last()) {
            colors[first] = Some(Color::Pink);
            colors[last] = Some(Color::Pink);
        }
    }
    let colors: Vec<Color> = (0..n)
        .map(|v| colors[v].unwrap_or(if lp.level_of(v) % 2 == 1 { Color::Blue } else { Color::Indigo }))
        .collect();
    let coloring = FiveColoring { colors };
    let report = check_claims(lp, &coloring, &kids)?;
    Ok((coloring, report))
}

/// Checks the five class claims for a coloring of `lp`.
pub fn check_claims(lp: &LayeredPlanarGraph, coloring: &FiveColoring, kids: &[Vec<usize>]) -> Result<ClaimReport> {
    let g = lp.graph();
    let col = &coloring.colors;
    let count = |v: usize, pred: &dyn Fn(Color) -> bool| g.neighbors(v).iter().filter(|&&u| pred(col[u])).count();
    let mut report = ClaimReport::default();
    let fail = |claim: &str, v: usize, found: usize| {
        HatError::claim(format!("{claim} fails"), format!("vertex {v} ({:?}, level {}) has {found}", col[v], lp.level_of(v) + 1))
    };
    for v in 0..g.vertex_count() {
        match col[v] {
            Color::Green => {
                let c = count(v, &|x| x != Color::Green);
                report.green_non_green = report.green_non_green.max(c);
                report.green_children = report.green_children.max(kids[v].len());
                if c > 5 {
                    return Err(fail("green claim (at most five non-green neighbors)", v, c));
                }
                if kids[v].len() > 1 {
                    return Err(fail("green vertices have at most one child", v, kids[v].len()));
                }
            }
            Color::Blue => {
                let c = count(v, &|x| matches!(x, Color::Indigo | Color::Red | Color::Pink));
                report.blue_later = report.blue_later.max(c);
                if c > 6 {
                    return Err(fail("blue claim (at most six indigo, red or pink neighbors)", v, c));
                }
            }
            Color::Indigo => {
                let c = count(v, &|x| matches!(x, Color::Red | Color::Pink));
                report.indigo_later = report.indigo_later.max(c);
                if c > 6 {
                    return Err(fail("indigo claim (at most six red or pink neighbors)", v, c));
                }
            }
            Color::Red => {
                let c = count(v, &|x| x == Color::Pink);
                report.red_pink = report.red_pink.max(c);
                if c > 6 {
                    return Err(fail("red claim (at most six pink neighbors)", v, c));
                }
            }
            Color::Pink => {
                let c = count(v, &|x| x == Color::Pink);
                report.pink_degree = report.pink_degree.max(c);
                if c > 6 {
                    return Err(fail("pink claim (maximum degree six)", v, c));
                }
            }
        }
    }
    for c in [Color::Green, Color::Blue, Color::Indigo] {
        certify_outerplanar(lp, &coloring.class(c)).map_err(|e| match e {
            HatError::ClaimViolation { message, witness } => {
                HatError::claim(format!("{c:?} class: {message}"), witness)
            }
            other => other,
        })?;
    }
    let red = coloring.class(Color::Red);
    if is_petunia(&g.induced(&red).0).is_none() {
        return Err(HatError::claim("red class does not induce a petunia", format!("{red:?}")));
    }
    Ok(report)
}

/// Largest component checked by exhaustive search; larger components are
/// certified by having every block inside a single level.
pub const BRUTE_FORCE_LIMIT: usize = 15;

fn certify_outerplanar(lp: &LayeredPlanarGraph, class: &[usize]) -> Result<()> {
    let (h, map) = lp.graph().induced(class);
    for comp in h.components() {
        let (c, cmap) = h.induced(&comp);
        if comp.len() <= BRUTE_FORCE_LIMIT {
            if !is_outerplanar(&c, Budget::default())? {
                let vs: Vec<usize> = cmap.iter().map(|&x| map[x]).collect();
                return Err(HatError::claim("component is not outerplanar", format!("{vs:?}")));
            }
            continue;
        }
        for block in c.blocks().blocks {
            let vs: Vec<usize> = block.iter().map(|&x| map[cmap[x]]).collect();
            if vs.iter().any(|&v| lp.level_of(v) != lp.level_of(vs[0])) {
                return Err(HatError::claim("block spans two levels", format!("{vs:?}")));
            }
        }
    }
    Ok(())
}

/// The graph induced by one class, for callers building partitions.
pub fn class_graph(lp: &LayeredPlanarGraph, coloring: &FiveColoring, c: Color) -> (Graph, Vec<usize>) {
    lp.graph().induced(&coloring.class(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::OuterBlock;

    fn tri(a: usize, b: usize, c: usize) -> OuterBlock {
        OuterBlock::new(vec![a, b, c], vec![])
    }

    #[test]
    fn single_level_is_indigo() {
        let lp = LayeredPlanarGraph::new(vec![OuterBlock::new(vec![0, 1, 2, 3], vec![(0, 2)])], vec![], vec![]).unwrap();
        let (c, _) = layered_five_coloring(&lp).unwrap();
        assert!(c.colors.iter().all(|&x| x == Color::Indigo));
    }

    #[test]
    fn prism_has_no_red() {
        let lp = LayeredPlanarGraph::new(vec![tri(0, 1, 2), tri(3, 4, 5)], vec![vec![(0, 3), (1, 4), (2, 5)]], vec![vec![0, 1, 2]])
            .unwrap();
        let (c, _) = layered_five_coloring(&lp).unwrap();
        assert!(c.class(Color::Red).is_empty() && c.class(Color::Pink).is_empty());
        assert_eq!(c.class(Color::Blue), vec![3, 4, 5]);
    }

    #[test]
    fn hexagon_with_four_parents() {
        // vertex 6 of the inner triangle sees hexagon vertices 0..=3
        let lp = LayeredPlanarGraph::new(
            vec![OuterBlock::new((0..6).collect(), vec![]), tri(6, 7, 8)],
            vec![vec![(0, 6), (1, 6), (2, 6), (3, 6)]],
            vec![(0..6).collect()],
        )
        .unwrap();
        assert_eq!(parents(&lp, 6), vec![0, 1, 2, 3]);
        let (c, _) = layered_five_coloring(&lp).unwrap();
        assert_eq!(c.class(Color::Green), vec![1, 2]);
        assert_eq!(children(&lp, 1), vec![6]);
        assert_eq!(children(&lp, 2), vec![6]);
    }

    #[test]
    fn three_levels() {
        // level 1: triangle 0,1,2; level 2: hexagon 3..9 inside; level 3: triangle inside the hexagon
        let lp = LayeredPlanarGraph::new(
            vec![tri(0, 1, 2), OuterBlock::new((3..9).collect(), vec![]), tri(9, 10, 11)],
            vec![
                vec![(0, 3), (0, 4), (0, 5), (0, 6), (1, 7), (2, 8)],
                vec![(3, 9), (4, 9), (5, 9), (5, 10), (6, 10), (7, 10), (7, 11), (8, 11)],
            ],
            vec![vec![0, 1, 2], (3..9).collect()],
        )
        .unwrap();
        let (c, _) = layered_five_coloring(&lp).unwrap();
        assert_eq!(c.class(Color::Red), vec![0]);
        assert_eq!(c.class(Color::Green), vec![4, 6]);
        assert!(c.class(Color::Pink).is_empty());
    }
}
