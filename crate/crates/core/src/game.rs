//! The multi-guess hat game: color lists, strategy tables, adversary search
//! and an exact solver for small instances.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Budget, HatError, Meter, Result};
use crate::graph::{check_format, Graph};

/// Allowed colors per vertex. Colors are positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ListsDoc", into = "ListsDoc")]
pub struct ColorLists {
    lists: Vec<Vec<u32>>,
}

impl ColorLists {
    pub fn new(lists: Vec<Vec<u32>>) -> Result<Self> {
        for (v, l) in lists.iter().enumerate() {
            if l.is_empty() {
                return Err(HatError::contract(format!("list of vertex {v} is empty")));
            }
            if l.contains(&0) {
                return Err(HatError::contract(format!("list of vertex {v} contains color 0")));
            }
            let mut s = l.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != l.len() {
                return Err(HatError::contract(format!("list of vertex {v} repeats a color")));
            }
        }
        Ok(ColorLists { lists })
    }

    /// Colors `1..=k` at each of `n` vertices.
    pub fn uniform(n: usize, k: u32) -> Self {
        ColorLists { lists: vec![(1..=k).collect(); n] }
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn list(&self, v: usize) -> &[u32] {
        &self.lists[v]
    }

    pub fn size(&self, v: usize) -> usize {
        self.lists[v].len()
    }

    pub fn position(&self, v: usize, color: u32) -> Option<usize> {
        self.lists[v].iter().position(|&c| c == color)
    }

    /// Lists of the given vertices, in that order.
    pub fn restrict(&self, vertices: &[usize]) -> ColorLists {
        ColorLists { lists: vertices.iter().map(|&v| self.lists[v].clone()).collect() }
    }

    /// Number of colorings respecting the lists, or `None` on overflow.
    pub fn product(&self) -> Option<u128> {
        self.lists.iter().try_fold(1u128, |acc, l| acc.checked_mul(l.len() as u128))
    }
}

#[derive(Serialize, Deserialize)]
struct ListsDoc {
    format: String,
    version: u32,
    lists: Vec<Vec<u32>>,
}

impl TryFrom<ListsDoc> for ColorLists {
    type Error = HatError;

    fn try_from(doc: ListsDoc) -> Result<Self> {
        check_format(&doc.format, doc.version, "color-lists", 1)?;
        ColorLists::new(doc.lists)
    }
}

impl From<ColorLists> for ListsDoc {
    fn from(c: ColorLists) -> Self {
        ListsDoc { format: "color-lists".into(), version: 1, lists: c.lists }
    }
}

/// One color per vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "AssignmentDoc", into = "AssignmentDoc")]
pub struct HatAssignment {
    pub colors: Vec<u32>,
}

impl HatAssignment {
    pub fn new(colors: Vec<u32>) -> Self {
        HatAssignment { colors }
    }

    pub fn respects(&self, lists: &ColorLists) -> bool {
        self.colors.len() == lists.len() && self.colors.iter().enumerate().all(|(v, &c)| lists.position(v, c).is_some())
    }
}

#[derive(Serialize, Deserialize)]
struct AssignmentDoc {
    format: String,
    version: u32,
    colors: Vec<u32>,
}

impl TryFrom<AssignmentDoc> for HatAssignment {
    type Error = HatError;

    fn try_from(doc: AssignmentDoc) -> Result<Self> {
        check_format(&doc.format, doc.version, "hat-assignment", 1)?;
        Ok(HatAssignment { colors: doc.colors })
    }
}

impl From<HatAssignment> for AssignmentDoc {
    fn from(a: HatAssignment) -> Self {
        AssignmentDoc { format: "hat-assignment".into(), version: 1, colors: a.colors }
    }
}

/// Guess tables for every vertex.
///
/// `tables[v][ctx]` is the guess set of `v` when its neighbors, taken in
/// ascending id order, show the colors encoded by `ctx`: a mixed-radix
/// number whose digits are positions in the neighbors' lists, first
/// neighbor most significant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "StrategyDoc", into = "StrategyDoc")]
pub struct StrategyProfile {
    pub s: usize,
    pub tables: Vec<Vec<Vec<u32>>>,
}

#[derive(Serialize, Deserialize)]
struct StrategyDoc {
    format: String,
    version: u32,
    neighbor_order: String,
    s: usize,
    tables: Vec<Vec<Vec<u32>>>,
}

impl TryFrom<StrategyDoc> for StrategyProfile {
    type Error = HatError;

    fn try_from(doc: StrategyDoc) -> Result<Self> {
        check_format(&doc.format, doc.version, "strategy-profile", 1)?;
        if doc.neighbor_order != "ascending" {
            return Err(HatError::Input(format!("unsupported neighbor order {:?}", doc.neighbor_order)));
        }
        Ok(StrategyProfile { s: doc.s, tables: doc.tables })
    }
}

impl From<StrategyProfile> for StrategyDoc {
    fn from(p: StrategyProfile) -> Self {
        StrategyDoc {
            format: "strategy-profile".into(),
            version: 1,
            neighbor_order: "ascending".into(),
            s: p.s,
            tables: p.tables,
        }
    }
}

/// Number of neighborhood colorings of `v`.
pub fn context_count(g: &Graph, lists: &ColorLists, v: usize) -> usize {
    g.neighbors(v).iter().map(|&u| lists.size(u)).product()
}

/// Context index of `v` under a (possibly partial) coloring; every neighbor must be colored.
pub fn context_of(g: &Graph, lists: &ColorLists, v: usize, colors: &[u32]) -> usize {
    let mut ctx = 0;
    for &u in g.neighbors(v) {
        let p = lists.position(u, colors[u]).expect("neighbor color outside its list");
        ctx = ctx * lists.size(u) + p;
    }
    ctx
}

/// Decodes a context index into neighbor colors (ascending neighbor order).
pub fn decode_context(g: &Graph, lists: &ColorLists, v: usize, mut ctx: usize) -> Vec<u32> {
    let nb = g.neighbors(v);
    let mut out = vec![0; nb.len()];
    for (i, &u) in nb.iter().enumerate().rev() {
        let r = lists.size(u);
        out[i] = lists.list(u)[ctx % r];
        ctx /= r;
    }
    out
}

impl StrategyProfile {
    /// Checks the table shapes and guess sets against `(g, lists)`.
    pub fn check(&self, g: &Graph, lists: &ColorLists) -> Result<()> {
        let n = g.vertex_count();
        if lists.len() != n {
            return Err(HatError::contract(format!("{} lists for {n} vertices", lists.len())));
        }
        if self.s == 0 {
            return Err(HatError::contract("guess count must be positive"));
        }
        if self.tables.len() != n {
            return Err(HatError::contract(format!("{} tables for {n} vertices", self.tables.len())));
        }
        for v in 0..n {
            let want = context_count(g, lists, v);
            if self.tables[v].len() != want {
                return Err(HatError::contract(format!(
                    "table of vertex {v} has {} entries, expected {want}",
                    self.tables[v].len()
                )));
            }
            for (ctx, set) in self.tables[v].iter().enumerate() {
                if set.is_empty() || set.len() > self.s {
                    return Err(HatError::contract(format!("vertex {v} context {ctx}: {} guesses", set.len())));
                }
                for (i, &c) in set.iter().enumerate() {
                    if lists.position(v, c).is_none() || set[..i].contains(&c) {
                        return Err(HatError::contract(format!("vertex {v} context {ctx}: bad guess {c}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn guesses(&self, g: &Graph, lists: &ColorLists, v: usize, colors: &[u32]) -> &[u32] {
        &self.tables[v][context_of(g, lists, v, colors)]
    }

    /// Whether `v` guesses its own color under a full coloring.
    pub fn correct_at(&self, g: &Graph, lists: &ColorLists, v: usize, colors: &[u32]) -> bool {
        self.guesses(g, lists, v, colors).contains(&colors[v])
    }

    /// Whether some vertex guesses correctly.
    pub fn wins_on(&self, g: &Graph, lists: &ColorLists, a: &HatAssignment) -> bool {
        (0..g.vertex_count()).any(|v| self.correct_at(g, lists, v, &a.colors))
    }
}

/// Uniformly random strategy with exactly `min(s, |L(v)|)` guesses per entry.
pub fn random_strategy<R: Rng>(g: &Graph, lists: &ColorLists, s: usize, rng: &mut R) -> StrategyProfile {
    let tables = (0..g.vertex_count())
        .map(|v| {
            let list = lists.list(v);
            let take = s.min(list.len());
            (0..context_count(g, lists, v))
                .map(|_| {
                    let mut idx: Vec<usize> = rand::seq::index::sample(rng, list.len(), take).into_vec();
                    idx.sort_unstable();
                    idx.into_iter().map(|i| list[i]).collect()
                })
                .collect()
        })
        .collect();
    StrategyProfile { s, tables }
}

/// Lexicographically least assignment on which nothing is guessed, if any.
pub fn find_defeating_assignment(
    g: &Graph,
    lists: &ColorLists,
    strat: &StrategyProfile,
    budget: Budget,
) -> Result<Option<HatAssignment>> {
    strat.check(g, lists)?;
    let n = g.vertex_count();
    // vertices whose closed neighborhood is complete once `v` is colored
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); n];
    for u in 0..n {
        let last = g.neighbors(u).iter().copied().chain(std::iter::once(u)).max().unwrap();
        ready[last].push(u);
    }
    let sorted: Vec<Vec<u32>> = (0..n)
        .map(|v| {
            let mut l = lists.list(v).to_vec();
            l.sort_unstable();
            l
        })
        .collect();
    let mut colors = vec![0u32; n];
    let mut meter = budget.meter();
    let mut choice = vec![0usize; n];
    let mut v = 0usize;
    if n == 0 {
        return Ok(Some(HatAssignment::new(vec![])));
    }
    loop {
        if choice[v] == sorted[v].len() {
            choice[v] = 0;
            if v == 0 {
                return Ok(None);
            }
            v -= 1;
            choice[v] += 1;
            continue;
        }
        meter.tick()?;
        colors[v] = sorted[v][choice[v]];
        let ok = ready[v].iter().all(|&u| !strat.correct_at(g, lists, u, &colors));
        if !ok {
            choice[v] += 1;
            continue;
        }
        if v + 1 == n {
            return Ok(Some(HatAssignment::new(colors)));
        }
        v += 1;
    }
}

/// Result of checking a strategy against every assignment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub wins: bool,
    pub counterexample: Option<HatAssignment>,
}

pub fn verify_strategy(g: &Graph, lists: &ColorLists, strat: &StrategyProfile, budget: Budget) -> Result<Verdict> {
    let found = find_defeating_assignment(g, lists, strat, budget)?;
    Ok(Verdict { wins: found.is_none(), counterexample: found })
}

/// Lexicographically least coloring of `region` (taken in the given order,
/// vertex `region[i]` drawing from `choices[i]`) under which no region vertex
/// guesses correctly. Vertices outside the region keep their colors from
/// `fixed`; every outside neighbor of the region must be colored there.
pub fn defeat_region(
    g: &Graph,
    lists: &ColorLists,
    strat: &StrategyProfile,
    region: &[usize],
    choices: &[Vec<u32>],
    fixed: &[u32],
    meter: &mut Meter,
) -> Result<Option<Vec<u32>>> {
    let n = g.vertex_count();
    if choices.len() != region.len() || fixed.len() != n {
        return Err(HatError::contract("region, choices and coloring sizes disagree"));
    }
    let mut slot = vec![usize::MAX; n];
    for (i, &v) in region.iter().enumerate() {
        if v >= n || slot[v] != usize::MAX {
            return Err(HatError::contract(format!("bad region vertex {v}")));
        }
        slot[v] = i;
    }
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); region.len()];
    for (i, &v) in region.iter().enumerate() {
        let mut last = i;
        for &u in g.neighbors(v) {
            if slot[u] == usize::MAX {
                if lists.position(u, fixed[u]).is_none() {
                    return Err(HatError::contract(format!("outside neighbor {u} of {v} is not colored")));
                }
            } else {
                last = last.max(slot[u]);
            }
        }
        ready[last].push(v);
    }
    if region.is_empty() {
        return Ok(Some(Vec::new()));
    }
    let mut colors = fixed.to_vec();
    let mut choice = vec![0usize; region.len()];
    let mut i = 0usize;
    loop {
        if choice[i] == choices[i].len() {
            choice[i] = 0;
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            choice[i] += 1;
            continue;
        }
        meter.tick()?;
        colors[region[i]] = choices[i][choice[i]];
        if ready[i].iter().any(|&u| strat.correct_at(g, lists, u, &colors)) {
            choice[i] += 1;
            continue;
        }
        if i + 1 == region.len() {
            return Ok(Some(region.iter().map(|&v| colors[v]).collect()));
        }
        i += 1;
    }
}

/// Restricts a strategy on `lists` to sublists: each guess set is cut down to
/// the vertex's sublist, and an emptied set becomes the first sublist color.
/// An assignment within the sublists that defeats the result defeats `strat`.
pub fn restrict_strategy(
    g: &Graph,
    lists: &ColorLists,
    strat: &StrategyProfile,
    sublists: &ColorLists,
) -> Result<StrategyProfile> {
    strat.check(g, lists)?;
    let n = g.vertex_count();
    if sublists.len() != n {
        return Err(HatError::contract("sublists do not match the graph"));
    }
    for v in 0..n {
        if let Some(&c) = sublists.list(v).iter().find(|&&c| lists.position(v, c).is_none()) {
            return Err(HatError::contract(format!("color {c} of vertex {v} is not in its list")));
        }
    }
    let mut colors = vec![0u32; n];
    let tables = (0..n)
        .map(|v| {
            (0..context_count(g, sublists, v))
                .map(|ctx| {
                    for (&u, c) in g.neighbors(v).iter().zip(decode_context(g, sublists, v, ctx)) {
                        colors[u] = c;
                    }
                    let own = sublists.list(v);
                    let mut set: Vec<u32> =
                        strat.guesses(g, lists, v, &colors).iter().copied().filter(|c| own.contains(c)).collect();
                    if set.is_empty() {
                        set.push(own[0]);
                    }
                    set
                })
                .collect()
        })
        .collect();
    Ok(StrategyProfile { s: strat.s, tables })
}

/// K_n with colors `1..=n`: vertex `i` guesses the color making the total ≡ i (mod n).
pub fn clique_strategy(n: usize) -> Result<(Graph, ColorLists, StrategyProfile)> {
    if n == 0 {
        return Err(HatError::Parameter("clique strategy needs n >= 1".into()));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    let g = Graph::from_edges(n, &edges)?;
    let lists = ColorLists::uniform(n, n as u32);
    let tables = (0..n)
        .map(|i| {
            (0..context_count(&g, &lists, i))
                .map(|ctx| {
                    let others: usize = decode_context(&g, &lists, i, ctx).iter().map(|&c| c as usize).sum();
                    let c = (i + n - others % n) % n;
                    vec![if c == 0 { n as u32 } else { c as u32 }]
                })
                .collect()
        })
        .collect();
    Ok((g, lists, StrategyProfile { s: 1, tables }))
}

/// Least integer strictly above `(max_degree + 1) * e * s`, using the upper
/// bound 2718281829 / 10^9 for e.
pub fn lll_bound(max_degree: u64, s: u64) -> u128 {
    (max_degree as u128 + 1) * s as u128 * 2_718_281_829 / 1_000_000_000 + 1
}

// ---------------------------------------------------------------------------
// exact solver

/// A root branch of an exhausted search and the size of its subtree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootBranch {
    pub vertex: usize,
    pub color: u32,
    pub nodes: u64,
}

/// Exhausted search on one connected component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRefutation {
    /// Component vertices in the order the search numbered them.
    pub vertices: Vec<usize>,
    /// The first uncovered assignment (colors of `vertices`), on which the root branches.
    pub root_assignment: Vec<u32>,
    /// Whether the root was closed by the counting or routing bound alone.
    pub root_cut: bool,
    pub branches: Vec<RootBranch>,
    pub nodes: u64,
}

/// Record of an exhaustive search that found no winning strategy.
///
/// The players lose on a graph exactly when they lose on every component,
/// so there is one record per component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refutation {
    pub format: String,
    pub version: u32,
    pub s: usize,
    pub components: Vec<ComponentRefutation>,
    pub nodes: u64,
    pub exhaustive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SolveOutcome {
    Win { strategy: StrategyProfile },
    Lose { refutation: Refutation },
}

impl SolveOutcome {
    pub fn wins(&self) -> bool {
        matches!(self, SolveOutcome::Win { .. })
    }
}

enum Bound {
    Cut,
    Open,
    Solved,
}

struct Solver<'a> {
    n: usize,
    s: u32,
    lists: &'a ColorLists,
    assignments: usize,
    /// `digit[a * n + v]`: position of `v`'s color in assignment `a`.
    digit: Vec<u8>,
    /// `entry[a * n + v]`: table entry of `v` read under assignment `a`.
    entry: Vec<u32>,
    entry_vertex: Vec<u32>,
    /// Assignments reading each entry.
    slab: Vec<Vec<u32>>,
    /// Assignments covered by one color of an entry.
    free: Vec<u64>,
    chosen: Vec<u64>,
    forbidden: Vec<u64>,
    cover: Vec<u16>,
    /// `open[e][d]`: uncovered assignments that color `d` of entry `e` would cover.
    open: Vec<Vec<u32>>,
    uncovered: u64,
    capacity: u64,
    held: Vec<Vec<u32>>,
    cap: Vec<u64>,
    seen: Vec<u32>,
    stamp: u32,
    meter: crate::error::Meter,
}

impl<'a> Solver<'a> {
    fn new(g: &Graph, lists: &'a ColorLists, s: usize, budget: Budget) -> Result<Self> {
        let n = g.vertex_count();
        if lists.len() != n {
            return Err(HatError::contract("one list per vertex required"));
        }
        if (0..n).any(|v| lists.size(v) > 64) {
            return Err(HatError::Parameter("solver supports lists of at most 64 colors".into()));
        }
        let total = lists.product().filter(|&p| p <= 1 << 24).ok_or_else(|| HatError::Budget {
            nodes: 0,
            reason: "assignment space above 2^24".into(),
        })? as usize;
        let mut offset = vec![0usize; n + 1];
        for v in 0..n {
            offset[v + 1] = offset[v] + context_count(g, lists, v);
        }
        let entries = offset[n];
        let mut stride = vec![1usize; n];
        for v in (0..n.saturating_sub(1)).rev() {
            stride[v] = stride[v + 1] * lists.size(v + 1);
        }
        let mut digit = vec![0u8; total * n];
        let mut entry = vec![0u32; total * n];
        let mut slab = vec![Vec::new(); entries];
        for a in 0..total {
            for v in 0..n {
                digit[a * n + v] = ((a / stride[v]) % lists.size(v)) as u8;
            }
            for v in 0..n {
                let mut ctx = 0;
                for &u in g.neighbors(v) {
                    ctx = ctx * lists.size(u) + digit[a * n + u] as usize;
                }
                let e = offset[v] + ctx;
                entry[a * n + v] = e as u32;
                slab[e].push(a as u32);
            }
        }
        let mut entry_vertex = vec![0u32; entries];
        let mut free = vec![0u64; entries];
        for v in 0..n {
            for e in offset[v]..offset[v + 1] {
                entry_vertex[e] = v as u32;
                free[e] = (slab[e].len() / lists.size(v)) as u64;
            }
        }
        let mut solver = Solver {
            n,
            s: s as u32,
            lists,
            assignments: total,
            digit,
            entry,
            entry_vertex,
            slab,
            free,
            chosen: vec![0; entries],
            forbidden: vec![0; entries],
            cover: vec![0; total],
            open: Vec::new(),
            uncovered: total as u64,
            capacity: 0,
            held: vec![Vec::new(); entries],
            cap: vec![0; entries],
            seen: vec![0; entries],
            stamp: 0,
            meter: budget.meter(),
        };
        solver.open = (0..entries)
            .map(|e| vec![solver.free[e] as u32; lists.size(solver.entry_vertex[e] as usize)])
            .collect();
        solver.capacity = (0..entries).map(|e| solver.entry_capacity(e)).sum();
        Ok(solver)
    }

    /// Most uncovered assignments the entry can still cover.
    fn entry_capacity(&self, e: usize) -> u64 {
        let used = self.chosen[e].count_ones();
        let slots = self.s.saturating_sub(used) as usize;
        if slots == 0 {
            return 0;
        }
        let blocked = self.chosen[e] | self.forbidden[e];
        let mut vals: Vec<u32> =
            self.open[e].iter().enumerate().filter(|&(d, _)| blocked & (1 << d) == 0).map(|(_, &c)| c).collect();
        if slots < vals.len() {
            vals.sort_unstable_by(|a, b| b.cmp(a));
            vals.truncate(slots);
        }
        vals.iter().map(|&c| c as u64).sum()
    }

    /// Adjusts the open counts of every entry reading `a` when `a` flips coverage.
    fn flip(&mut self, a: usize, now_covered: bool) {
        for v in 0..self.n {
            let e = self.entry[a * self.n + v] as usize;
            let d = self.digit[a * self.n + v] as usize;
            self.capacity -= self.entry_capacity(e);
            if now_covered {
                self.open[e][d] -= 1;
            } else {
                self.open[e][d] += 1;
            }
            self.capacity += self.entry_capacity(e);
        }
    }

    fn add(&mut self, e: usize, d: u8) {
        self.capacity -= self.entry_capacity(e);
        self.chosen[e] |= 1 << d;
        self.capacity += self.entry_capacity(e);
        let v = self.entry_vertex[e] as usize;
        for i in 0..self.slab[e].len() {
            let a = self.slab[e][i] as usize;
            if self.digit[a * self.n + v] == d {
                if self.cover[a] == 0 {
                    self.uncovered -= 1;
                    self.flip(a, true);
                }
                self.cover[a] += 1;
            }
        }
    }

    fn remove(&mut self, e: usize, d: u8) {
        let v = self.entry_vertex[e] as usize;
        for i in 0..self.slab[e].len() {
            let a = self.slab[e][i] as usize;
            if self.digit[a * self.n + v] == d {
                self.cover[a] -= 1;
                if self.cover[a] == 0 {
                    self.uncovered += 1;
                    self.flip(a, false);
                }
            }
        }
        self.capacity -= self.entry_capacity(e);
        self.chosen[e] &= !(1 << d);
        self.capacity += self.entry_capacity(e);
    }

    fn set_forbidden(&mut self, e: usize, d: u8, on: bool) {
        self.capacity -= self.entry_capacity(e);
        if on {
            self.forbidden[e] |= 1 << d;
        } else {
            self.forbidden[e] &= !(1 << d);
        }
        self.capacity += self.entry_capacity(e);
    }

    fn options(&self, a: usize, out: &mut Vec<(usize, u8)>) {
        out.clear();
        for v in 0..self.n {
            let e = self.entry[a * self.n + v] as usize;
            let d = self.digit[a * self.n + v];
            if self.chosen[e].count_ones() < self.s && self.forbidden[e] & (1 << d) == 0 {
                out.push((e, d));
            }
        }
    }

    /// Uncovered assignment with the fewest ways to cover it (least index on ties).
    fn pick(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for a in 0..self.assignments {
            if self.cover[a] != 0 {
                continue;
            }
            let mut count = 0;
            for v in 0..self.n {
                let e = self.entry[a * self.n + v] as usize;
                let d = self.digit[a * self.n + v];
                if self.chosen[e].count_ones() < self.s && self.forbidden[e] & (1 << d) == 0 {
                    count += 1;
                }
            }
            if best.is_none_or(|(_, c)| count < c) {
                best = Some((a, count));
                if count <= 1 {
                    break;
                }
            }
        }
        best
    }

    fn allowed(&self, e: usize, d: u8) -> bool {
        self.chosen[e].count_ones() < self.s && self.forbidden[e] & (1 << d) == 0
    }

    fn held_mask(&self, e: usize) -> u64 {
        let v = self.entry_vertex[e] as usize;
        self.held[e].iter().fold(self.chosen[e], |m, &a| m | 1 << self.digit[a as usize * self.n + v])
    }

    fn augment(&mut self, a: usize) -> bool {
        // entries already showing this color first, so the routing tends to stay roundable
        let mut order: Vec<(bool, u64, usize, u8)> = Vec::with_capacity(self.n);
        for v in 0..self.n {
            let e = self.entry[a * self.n + v] as usize;
            let d = self.digit[a * self.n + v];
            if self.seen[e] != self.stamp && self.allowed(e, d) {
                order.push((self.held_mask(e) & (1 << d) == 0, self.free[e], e, d));
            }
        }
        order.sort_unstable();
        for (_, _, e, _) in order {
            if self.seen[e] == self.stamp {
                continue;
            }
            self.seen[e] = self.stamp;
            if (self.held[e].len() as u64) < self.cap[e] {
                self.held[e].push(a as u32);
                return true;
            }
            for i in 0..self.held[e].len() {
                let b = self.held[e][i] as usize;
                if self.augment(b) {
                    self.held[e][i] = a as u32;
                    return true;
                }
            }
        }
        false
    }

    /// Routes every uncovered assignment to an entry that could still cover
    /// it, ignoring that an entry's colors must be shared. No routing means
    /// no completion; a routing whose entries need few enough colors is one.
    fn matching(&mut self) -> Bound {
        for e in 0..self.held.len() {
            self.held[e].clear();
            self.cap[e] = self.entry_capacity(e);
        }
        for a in 0..self.assignments {
            if self.cover[a] != 0 {
                continue;
            }
            self.stamp = self.stamp.wrapping_add(1);
            if self.stamp == 0 {
                self.seen.iter_mut().for_each(|x| *x = 0);
                self.stamp = 1;
            }
            if !self.augment(a) {
                return Bound::Cut;
            }
        }
        let mut masks = vec![0u64; self.held.len()];
        for (e, held) in self.held.iter().enumerate() {
            let v = self.entry_vertex[e] as usize;
            for &a in held {
                masks[e] |= 1 << self.digit[a as usize * self.n + v];
            }
            if (masks[e] | self.chosen[e]).count_ones() > self.s {
                return Bound::Open;
            }
        }
        for (e, m) in masks.into_iter().enumerate() {
            self.chosen[e] |= m;
        }
        Bound::Solved
    }

    fn search(&mut self) -> Result<bool> {
        self.meter.tick()?;
        if self.uncovered == 0 {
            return Ok(true);
        }
        if self.capacity < self.uncovered {
            return Ok(false);
        }
        match self.matching() {
            Bound::Cut => return Ok(false),
            Bound::Solved => return Ok(true),
            Bound::Open => {}
        }
        let Some((a, count)) = self.pick() else { return Ok(true) };
        if count == 0 {
            return Ok(false);
        }
        let mut opts = Vec::with_capacity(self.n);
        self.options(a, &mut opts);
        opts.sort_by_key(|&(e, d)| std::cmp::Reverse(self.open[e][d as usize]));
        let mut won = false;
        let mut tried = 0;
        for &(e, d) in &opts {
            self.add(e, d);
            if self.search()? {
                won = true;
                break;
            }
            self.remove(e, d);
            self.set_forbidden(e, d, true);
            tried += 1;
        }
        for &(e, d) in &opts[..tried] {
            self.set_forbidden(e, d, false);
        }
        Ok(won)
    }

    fn root(&mut self) -> Result<std::result::Result<StrategyProfile, ComponentRefutation>> {
        let root = (0..self.assignments).find(|&a| self.cover[a] == 0);
        let root_colors: Vec<u32> = match root {
            Some(a) => (0..self.n).map(|v| self.lists.list(v)[self.digit[a * self.n + v] as usize]).collect(),
            None => vec![],
        };
        let mut refutation = ComponentRefutation {
            vertices: Vec::new(),
            root_assignment: root_colors,
            root_cut: false,
            branches: Vec::new(),
            nodes: 0,
        };
        self.meter.tick()?;
        let Some(a) = root else { return Ok(Ok(self.strategy())) };
        if self.capacity < self.uncovered {
            refutation.root_cut = true;
            refutation.nodes = self.meter.nodes();
            return Ok(Err(refutation));
        }
        match self.matching() {
            Bound::Cut => {
                refutation.root_cut = true;
                refutation.nodes = self.meter.nodes();
                return Ok(Err(refutation));
            }
            Bound::Solved => return Ok(Ok(self.strategy())),
            Bound::Open => {}
        }
        let mut opts = Vec::new();
        self.options(a, &mut opts);
        for &(e, d) in &opts {
            let before = self.meter.nodes();
            self.add(e, d);
            if self.search()? {
                return Ok(Ok(self.strategy()));
            }
            self.remove(e, d);
            self.set_forbidden(e, d, true);
            let v = self.entry_vertex[e] as usize;
            refutation.branches.push(RootBranch {
                vertex: v,
                color: self.lists.list(v)[d as usize],
                nodes: self.meter.nodes() - before,
            });
        }
        refutation.nodes = self.meter.nodes();
        Ok(Err(refutation))
    }

    /// Seeded min-conflict search for a winning table assignment.
    ///
    /// Only ever used to find wins quickly; a failure says nothing.
    fn local_search(&self, flips: u64) -> Option<Vec<u64>> {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        let entries = self.chosen.len();
        let mut chosen = vec![0u64; entries];
        let mut cover = vec![0u16; self.assignments];
        let mut uncovered: Vec<usize> = Vec::new();
        let mut slot = vec![usize::MAX; self.assignments];
        for e in 0..entries {
            let r = self.lists.size(self.entry_vertex[e] as usize);
            for d in rand::seq::index::sample(&mut rng, r, (self.s as usize).min(r)) {
                chosen[e] |= 1 << d;
            }
        }
        for a in 0..self.assignments {
            for v in 0..self.n {
                let e = self.entry[a * self.n + v] as usize;
                if chosen[e] & (1 << self.digit[a * self.n + v]) != 0 {
                    cover[a] += 1;
                }
            }
            if cover[a] == 0 {
                slot[a] = uncovered.len();
                uncovered.push(a);
            }
        }
        let count = |chosen: &[u64], cover: &[u16], e: usize, d: u8, want: u16| -> i64 {
            let v = self.entry_vertex[e] as usize;
            let _ = chosen;
            self.slab[e].iter().filter(|&&a| self.digit[a as usize * self.n + v] == d && cover[a as usize] == want).count()
                as i64
        };
        for _ in 0..flips {
            if uncovered.is_empty() {
                return Some(chosen);
            }
            let a = uncovered[rng.gen_range(0..uncovered.len())];
            // candidate moves: put a's color into one of its entries, dropping the cheapest color if full
            let mut moves: Vec<(i64, usize, u8, Option<u8>)> = Vec::with_capacity(self.n);
            for v in 0..self.n {
                let e = self.entry[a * self.n + v] as usize;
                let d = self.digit[a * self.n + v];
                let gain = count(&chosen, &cover, e, d, 0);
                let drop = if chosen[e].count_ones() < self.s {
                    None
                } else {
                    (0..64u8)
                        .filter(|&c| chosen[e] & (1 << c) != 0)
                        .map(|c| (count(&chosen, &cover, e, c, 1), c))
                        .min()
                };
                let loss = drop.map_or(0, |(l, _)| l);
                moves.push((gain - loss, e, d, drop.map(|(_, c)| c)));
            }
            let pick = if rng.gen_bool(0.2) {
                moves[rng.gen_range(0..moves.len())]
            } else {
                *moves.iter().max_by_key(|m| m.0).unwrap()
            };
            let (_, e, d, drop) = pick;
            let v = self.entry_vertex[e] as usize;
            let apply = |d: u8, delta: i32, cover: &mut Vec<u16>, uncovered: &mut Vec<usize>, slot: &mut Vec<usize>| {
                for &a in &self.slab[e] {
                    let a = a as usize;
                    if self.digit[a * self.n + v] != d {
                        continue;
                    }
                    if delta > 0 {
                        if cover[a] == 0 {
                            let i = slot[a];
                            let last = *uncovered.last().unwrap();
                            uncovered.swap_remove(i);
                            if last != a {
                                slot[last] = i;
                            }
                            slot[a] = usize::MAX;
                        }
                        cover[a] += 1;
                    } else {
                        cover[a] -= 1;
                        if cover[a] == 0 {
                            slot[a] = uncovered.len();
                            uncovered.push(a);
                        }
                    }
                }
            };
            if let Some(c) = drop {
                chosen[e] &= !(1 << c);
                apply(c, -1, &mut cover, &mut uncovered, &mut slot);
            }
            chosen[e] |= 1 << d;
            apply(d, 1, &mut cover, &mut uncovered, &mut slot);
        }
        uncovered.is_empty().then_some(chosen)
    }

    fn strategy(&self) -> StrategyProfile {
        let mut tables: Vec<Vec<Vec<u32>>> = vec![Vec::new(); self.n];
        for (e, &mask) in self.chosen.iter().enumerate() {
            let v = self.entry_vertex[e] as usize;
            let list = self.lists.list(v);
            let mut set: Vec<u32> = (0..list.len()).filter(|&i| mask & (1 << i) != 0).map(|i| list[i]).collect();
            if set.is_empty() {
                set.push(list[0]);
            }
            tables[v].push(set);
        }
        StrategyProfile { s: self.s as usize, tables }
    }
}

const LOCAL_FLIPS: u64 = 200_000;

/// Decides whether the players have a winning strategy with `s` guesses.
///
/// Returns either a strategy that passes [`verify_strategy`] or the record of
/// an exhausted search. Running out of budget is an error, never a loss.
/// Components are solved separately; the budget applies to each.
pub fn players_win(g: &Graph, lists: &ColorLists, s: usize, budget: Budget) -> Result<SolveOutcome> {
    if s == 0 {
        return Err(HatError::Parameter("s must be at least 1".into()));
    }
    if lists.len() != g.vertex_count() {
        return Err(HatError::contract("one list per vertex required"));
    }
    let mut parts = Vec::new();
    let mut nodes = 0;
    for comp in g.components() {
        let mut order = comp;
        order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        let (h, _) = g.induced(&order);
        let sub = lists.restrict(&order);
        match solve_connected(&h, &sub, s, budget)? {
            Ok(strategy) => {
                let strategy = transplant(g, lists, &order, &h, &sub, &strategy);
                let verdict = verify_strategy(g, lists, &strategy, Budget::unlimited())?;
                if !verdict.wins {
                    return Err(HatError::claim(
                        "solver produced a losing strategy",
                        format!("{:?}", verdict.counterexample),
                    ));
                }
                return Ok(SolveOutcome::Win { strategy });
            }
            Err(mut part) => {
                for b in &mut part.branches {
                    b.vertex = order[b.vertex];
                }
                part.vertices = order;
                nodes += part.nodes;
                parts.push(part);
            }
        }
    }
    Ok(SolveOutcome::Lose {
        refutation: Refutation { format: "refutation".into(), version: 1, s, components: parts, nodes, exhaustive: true },
    })
}

fn solve_connected(
    g: &Graph,
    lists: &ColorLists,
    s: usize,
    budget: Budget,
) -> Result<std::result::Result<StrategyProfile, ComponentRefutation>> {
    let mut solver = Solver::new(g, lists, s, budget)?;
    if solver.capacity >= solver.uncovered {
        if let Some(chosen) = solver.local_search(LOCAL_FLIPS) {
            solver.chosen = chosen;
            return Ok(Ok(solver.strategy()));
        }
    }
    solver.root()
}

/// Lifts a strategy found on `h = g[order]` (vertex `i` of `h` is
/// `order[i]`) to all of `g`; vertices outside guess their first color.
fn transplant(
    g: &Graph,
    lists: &ColorLists,
    order: &[usize],
    h: &Graph,
    sub: &ColorLists,
    strat: &StrategyProfile,
) -> StrategyProfile {
    let n = g.vertex_count();
    let mut local = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        local[v] = i;
    }
    let tables = (0..n)
        .map(|v| {
            let count = context_count(g, lists, v);
            if local[v] == usize::MAX {
                return vec![vec![lists.list(v)[0]]; count];
            }
            let i = local[v];
            (0..count)
                .map(|ctx| {
                    let seen = decode_context(g, lists, v, ctx);
                    let mut colors = vec![0u32; h.vertex_count()];
                    for (&u, &c) in g.neighbors(v).iter().zip(&seen) {
                        colors[local[u]] = c;
                    }
                    strat.tables[i][context_of(h, sub, i, &colors)].clone()
                })
                .collect()
        })
        .collect();
    StrategyProfile { s: strat.s, tables }
}

/// Re-runs the search and checks it reproduces the recorded refutation.
pub fn replay_refutation(g: &Graph, lists: &ColorLists, refutation: &Refutation) -> Result<bool> {
    let budget = Budget::nodes(refutation.nodes.saturating_add(1));
    match players_win(g, lists, refutation.s, budget)? {
        SolveOutcome::Win { .. } => Ok(false),
        SolveOutcome::Lose { refutation: again } => Ok(&again == refutation),
    }
}

/// Largest `k <= k_cap` for which the players win with colors `1..=k`.
pub fn hg_exact(g: &Graph, s: usize, k_cap: u32, budget: Budget) -> Result<u32> {
    if s == 0 {
        return Err(HatError::Parameter("s must be at least 1".into()));
    }
    let n = g.vertex_count();
    for k in 1..=k_cap {
        // with at least as many guesses as colors every vertex is always right
        if n > 0 && k as usize <= s {
            continue;
        }
        if !players_win(g, &ColorLists::uniform(n, k), s, budget)?.wins() {
            return Ok(k - 1);
        }
    }
    Ok(k_cap)
}
