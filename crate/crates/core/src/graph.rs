//! Simple undirected graphs on dense vertex ids, graph6 I/O, and the
//! structural primitives everything else is built on: blocks, components,
//! induced subgraphs, partitions and quotients.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{HatError, Result};

/// A finite simple undirected graph with vertices `0..vertex_count`.
///
/// Adjacency lists are kept sorted, which makes "ascending vertex id" the
/// canonical neighbor order used by strategy tables.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphDoc", into = "GraphDoc")]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], edge_count: 0 }
    }

    /// Builds a graph, rejecting loops, duplicates and out-of-range ids.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(HatError::contract(format!("edge ({u},{v}) out of range for {n} vertices")));
            }
            if u == v {
                return Err(HatError::contract(format!("self-loop at {u}")));
            }
            if g.has_edge(u, v) {
                return Err(HatError::contract(format!("parallel edge ({u},{v})")));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph, silently merging duplicate edges.
    pub fn from_edges_dedup(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(HatError::contract(format!("bad edge ({u},{v}) for {n} vertices")));
            }
            if !g.has_edge(u, v) {
                g.insert_edge(u, v);
            }
        }
        Ok(g)
    }

    fn insert_edge(&mut self, u: usize, v: usize) {
        let pos = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        self.edge_count += 1;
    }

    /// Adds `uv` if absent. Returns whether the edge was new.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v && u < self.vertex_count() && v < self.vertex_count());
        if self.has_edge(u, v) {
            return false;
        }
        self.insert_edge(u, v);
        true
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Sorted neighbor list.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().copied().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Induced subgraph on `vertices`; the returned map sends new ids to old ids
    /// (new ids follow the order of `vertices`).
    pub fn induced(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut h = Graph::empty(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    h.insert_edge(i, j);
                }
            }
        }
        (h, vertices.to_vec())
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_within(&vec![true; self.vertex_count()])
    }

    /// Components of the subgraph induced by the vertices with `alive[v]`.
    pub fn components_within(&self, alive: &[bool]) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] || !alive[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if alive[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// True when the graph has no cycle.
    pub fn is_forest(&self) -> bool {
        self.edge_count + self.components().len() == self.vertex_count()
    }

    /// Blocks (maximal 2-connected subgraphs, bridges, and isolated vertices)
    /// together with the cut vertices.
    pub fn blocks(&self) -> Blocks {
        compute_blocks(self)
    }

    /// Parses one graph6 line. A trailing newline and the optional
    /// `>>graph6<<` header are accepted.
    pub fn parse_graph6(text: &str) -> Result<Graph> {
        parse_graph6(text)
    }

    pub fn to_graph6(&self) -> String {
        emit_graph6(self)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.vertex_count(), self.edges().collect::<Vec<_>>())
    }
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    format: String,
    version: u32,
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<GraphDoc> for Graph {
    type Error = HatError;

    fn try_from(doc: GraphDoc) -> Result<Graph> {
        check_format(&doc.format, doc.version, "graph", 1)?;
        Graph::from_edges(doc.vertex_count, &doc.edges)
    }
}

impl From<Graph> for GraphDoc {
    fn from(g: Graph) -> GraphDoc {
        GraphDoc {
            format: "graph".into(),
            version: 1,
            vertex_count: g.vertex_count(),
            edges: g.edges().collect(),
        }
    }
}

pub(crate) fn check_format(found: &str, version: u32, expected: &str, expected_version: u32) -> Result<()> {
    if found != expected || version != expected_version {
        return Err(HatError::Input(format!(
            "expected format {expected} v{expected_version}, found {found} v{version}"
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// graph6

const G6_MIN: u8 = 63;
const G6_MAX: u8 = 126;

fn parse_graph6(text: &str) -> Result<Graph> {
    let mut bytes = text.as_bytes();
    let mut base = 0;
    if let Some(rest) = bytes.strip_prefix(b">>graph6<<") {
        bytes = rest;
        base = 10;
    }
    while let Some((&last, rest)) = bytes.split_last() {
        if last == b'\n' || last == b'\r' {
            bytes = rest;
        } else {
            break;
        }
    }
    if bytes.is_empty() {
        return Err(HatError::Parse { offset: base, message: "empty input".into() });
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(G6_MIN..=G6_MAX).contains(&b) {
            return Err(HatError::Parse { offset: base + i, message: format!("byte {b} outside 63..=126") });
        }
    }
    let (n, header) = if bytes[0] != G6_MAX {
        ((bytes[0] - G6_MIN) as usize, 1)
    } else if bytes.len() >= 2 && bytes[1] == G6_MAX {
        if bytes.len() < 8 {
            return Err(HatError::Parse { offset: base + bytes.len(), message: "truncated 8-byte size header".into() });
        }
        (decode_sextets(&bytes[2..8]), 8)
    } else {
        if bytes.len() < 4 {
            return Err(HatError::Parse { offset: base + bytes.len(), message: "truncated 4-byte size header".into() });
        }
        let n = decode_sextets(&bytes[1..4]);
        if n < 63 {
            return Err(HatError::Parse { offset: base + 1, message: format!("non-canonical size header for n={n}") });
        }
        (n, 4)
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    let body = &bytes[header..];
    if body.len() < need {
        return Err(HatError::Parse {
            offset: base + bytes.len(),
            message: format!("expected {need} data bytes for n={n}, found {}", body.len()),
        });
    }
    if body.len() > need {
        return Err(HatError::Parse { offset: base + header + need, message: "trailing bytes after adjacency data".into() });
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - G6_MIN;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.insert_edge(i, j);
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = body[need - 1] - G6_MIN;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(HatError::Parse { offset: base + header + need - 1, message: "nonzero padding bits".into() });
        }
    }
    Ok(g)
}

fn decode_sextets(bytes: &[u8]) -> usize {
    bytes.iter().fold(0usize, |acc, &b| (acc << 6) | (b - G6_MIN) as usize)
}

fn emit_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + G6_MIN);
    } else if n <= 258_047 {
        out.push(G6_MAX);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + G6_MIN);
        }
    } else {
        out.push(G6_MAX);
        out.push(G6_MAX);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + G6_MIN);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + G6_MIN);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + G6_MIN);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

// ---------------------------------------------------------------------------
// blocks

/// Block decomposition. Every edge lies in exactly one block; isolated
/// vertices form singleton blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blocks {
    /// Sorted vertex sets, ordered by least vertex then lexicographically.
    pub blocks: Vec<Vec<usize>>,
    pub cut_vertices: Vec<usize>,
}

fn compute_blocks(g: &Graph) -> Blocks {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();

    // iterative DFS: frames are (vertex, parent, next neighbor index)
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        if g.degree(root) == 0 {
            disc[root] = time;
            time += 1;
            blocks.push(vec![root]);
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if *idx < g.degree(v) {
                let w = g.neighbors(v)[*idx];
                *idx += 1;
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut set = BTreeSet::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            set.insert(a);
                            set.insert(b);
                            if (a, b) == (p, v) {
                                break;
                            }
                        }
                        blocks.push(set.into_iter().collect());
                    }
                }
            }
        }
    }
    blocks.sort();
    let mut count = vec![0usize; n];
    for b in &blocks {
        for &v in b {
            count[v] += 1;
        }
    }
    let cut_vertices = (0..n).filter(|&v| count[v] >= 2).collect();
    Blocks { blocks, cut_vertices }
}

// ---------------------------------------------------------------------------
// partitions

/// Ordered family of disjoint nonempty vertex classes covering `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PartitionDoc", into = "PartitionDoc")]
pub struct VertexPartition {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl VertexPartition {
    pub fn new(n: usize, classes: Vec<Vec<usize>>) -> Result<Self> {
        let mut class_of = vec![usize::MAX; n];
        let mut classes = classes;
        for (i, c) in classes.iter_mut().enumerate() {
            if c.is_empty() {
                return Err(HatError::contract(format!("class {i} is empty")));
            }
            c.sort_unstable();
            for &v in c.iter() {
                if v >= n {
                    return Err(HatError::contract(format!("vertex {v} out of range")));
                }
                if class_of[v] != usize::MAX {
                    return Err(HatError::contract(format!("vertex {v} in two classes")));
                }
                class_of[v] = i;
            }
        }
        if let Some(v) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(HatError::contract(format!("vertex {v} not covered")));
        }
        Ok(VertexPartition { classes, class_of })
    }

    /// One class per vertex.
    pub fn singletons(n: usize) -> Self {
        VertexPartition { classes: (0..n).map(|v| vec![v]).collect(), class_of: (0..n).collect() }
    }

    /// Builds a partition from a class label per vertex, numbering classes
    /// by their least vertex.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut order: Vec<usize> = Vec::new();
        let mut map = std::collections::HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (v, &l) in labels.iter().enumerate() {
            let idx = *map.entry(l).or_insert_with(|| {
                order.push(l);
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[idx].push(v);
        }
        VertexPartition::new(labels.len(), classes).expect("labels cover every vertex")
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.class_of.len()
    }
}

#[derive(Serialize, Deserialize)]
struct PartitionDoc {
    format: String,
    version: u32,
    vertex_count: usize,
    classes: Vec<Vec<usize>>,
}

impl TryFrom<PartitionDoc> for VertexPartition {
    type Error = HatError;

    fn try_from(doc: PartitionDoc) -> Result<Self> {
        check_format(&doc.format, doc.version, "vertex-partition", 1)?;
        VertexPartition::new(doc.vertex_count, doc.classes)
    }
}

impl From<VertexPartition> for PartitionDoc {
    fn from(p: VertexPartition) -> Self {
        PartitionDoc {
            format: "vertex-partition".into(),
            version: 1,
            vertex_count: p.vertex_count(),
            classes: p.classes,
        }
    }
}

/// Quotient graph: one vertex per class, classes adjacent iff a cross edge exists.
pub fn quotient(g: &Graph, p: &VertexPartition) -> Result<Graph> {
    if p.vertex_count() != g.vertex_count() {
        return Err(HatError::contract("partition does not match graph size"));
    }
    let mut q = Graph::empty(p.len());
    for (u, v) in g.edges() {
        let (a, b) = (p.class_of(u), p.class_of(v));
        if a != b {
            q.add_edge(a, b);
        }
    }
    Ok(q)
}

/// `|N(X) ∩ Y|`: the number of vertices of `y` with a neighbor in `x`.
pub fn cross_neighbor_count(g: &Graph, x: &[usize], y: &[usize]) -> Result<usize> {
    let mut in_x = vec![false; g.vertex_count()];
    for &v in x {
        in_x[v] = true;
    }
    if let Some(&v) = y.iter().find(|&&v| in_x[v]) {
        return Err(HatError::contract(format!("vertex {v} lies in both sets")));
    }
    Ok(y.iter().filter(|&&v| g.neighbors(v).iter().any(|&w| in_x[w])).count())
}
