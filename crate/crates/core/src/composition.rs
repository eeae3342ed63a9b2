//! Composition of strategies across vertex partitions: the guess-count
//! inflation bounds and constructive adversaries for the two-part and
//! tree-partition arguments.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bounds::Power;
use crate::error::{Budget, HatError, Result};
use crate::game::{
    context_count, decode_context, defeat_region, find_defeating_assignment, hg_exact, ColorLists, HatAssignment,
    StrategyProfile,
};
use crate::graph::{quotient, Graph, VertexPartition};

/// `s · (hg_b + 1)^d`: the guess count on `G[A]` once `B` is quantified away.
pub fn lemma22_guess_inflation(s: impl Into<BigUint>, hg_b: impl Into<BigUint>, d: u32) -> BigUint {
    s.into() * (hg_b.into() + 1u32).pow(d)
}

/// Ordered partition with cross-degree bounds `d[i][j]` (used for `i < j`)
/// and per-class color counts `ells[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionScheme {
    pub partition: VertexPartition,
    pub d: Vec<Vec<u32>>,
    pub ells: Vec<BigUint>,
    pub s: BigUint,
}

impl PartitionScheme {
    pub fn validate(&self, g: &Graph) -> Result<()> {
        self.check_shape()?;
        if self.partition.vertex_count() != g.vertex_count() {
            return Err(HatError::contract("partition does not match graph size"));
        }
        let t = self.partition.len();
        for i in 0..t {
            for &v in &self.partition.classes()[i] {
                let mut count = vec![0u32; t];
                for &u in g.neighbors(v) {
                    count[self.partition.class_of(u)] += 1;
                }
                for j in i + 1..t {
                    if count[j] > self.d[i][j] {
                        return Err(HatError::contract(format!(
                            "vertex {v} of class {i} has {} neighbors in class {j}, bound {}",
                            count[j], self.d[i][j]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_shape(&self) -> Result<()> {
        let t = self.partition.len();
        if self.d.len() != t || self.d.iter().any(|row| row.len() != t) || self.ells.len() != t {
            return Err(HatError::contract("scheme matrices do not match the number of classes"));
        }
        if self.s.is_zero() || self.ells.iter().any(|l| l.is_zero()) {
            return Err(HatError::Parameter("s and every ℓ_i must be positive".into()));
        }
        Ok(())
    }
}

/// Guess counts `s_i = s · Π_{j>i} ℓ_j^{d_{i,j}}` and the conclusion `HG_s(G) < max ℓ_i`,
/// valid once each `HG_{s_i}(G[V_i]) < ℓ_i` is certified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainBound {
    pub s_values: Vec<BigUint>,
    pub bound: BigUint,
}

pub fn lemma23_chain(scheme: &PartitionScheme) -> Result<ChainBound> {
    scheme.check_shape()?;
    let t = scheme.ells.len();
    let s_values = (0..t)
        .map(|i| {
            (i + 1..t).fold(scheme.s.clone(), |acc, j| acc * scheme.ells[j].pow(scheme.d[i][j]))
        })
        .collect();
    let bound = scheme.ells.iter().max().cloned().unwrap_or_else(BigUint::one);
    Ok(ChainBound { s_values, bound })
}

/// Inclusive bound on `HG_s` for tree partitions with cross parameter `r`:
/// `ℓ(ℓ−1)` for `r = 1`, `(3ℓ)^{rℓ^{r−1}}` otherwise.
pub fn theorem25_bound(r: u32, l: impl Into<BigUint>) -> Result<Power> {
    let l = l.into();
    if r == 0 || l.is_zero() {
        return Err(HatError::Parameter("r and ℓ must be positive".into()));
    }
    if r == 1 {
        return Ok(Power::integer(&l * (&l - 1u32)));
    }
    Ok(Power::new(BigUint::from(3u32) * &l, BigUint::from(r) * l.pow(r - 1)))
}

/// Whether `ℓ^r · ex < k^r`.
pub fn pigeonhole_claim_check(r: u32, l: impl Into<BigUint>, k: impl Into<BigUint>, ex: impl Into<BigUint>) -> bool {
    l.into().pow(r) * ex.into() < k.into().pow(r)
}

/// Partition whose quotient is a tree, with at most `r` vertices of each
/// class adjacent to any neighboring class, and `HG_s(G[V_i]) < ℓ` assumed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreePartitionScheme {
    pub partition: VertexPartition,
    pub r: usize,
    pub l: u32,
    pub s: usize,
}

impl TreePartitionScheme {
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.r == 0 || self.l == 0 || self.s == 0 {
            return Err(HatError::Parameter("r, ℓ and s must be positive".into()));
        }
        let q = quotient(g, &self.partition)?;
        if !q.is_connected() || !q.is_forest() {
            return Err(HatError::contract("quotient graph is not a tree"));
        }
        for (i, j) in q.edges() {
            for (x, y) in [(i, j), (j, i)] {
                let c = boundary(g, &self.partition, x, y).len();
                if c > self.r {
                    return Err(HatError::contract(format!(
                        "{c} vertices of class {y} are adjacent to class {x}, more than r = {}",
                        self.r
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `N(V_x) ∩ V_y`, ascending.
fn boundary(g: &Graph, p: &VertexPartition, x: usize, y: usize) -> Vec<usize> {
    p.classes()[y]
        .iter()
        .copied()
        .filter(|&v| g.neighbors(v).iter().any(|&u| p.class_of(u) == x))
        .collect()
}

/// Calls `f` on every coloring drawn from `lists`, in lexicographic order,
/// until it returns `false`.
fn for_each_coloring(lists: &[Vec<u32>], mut f: impl FnMut(&[u32]) -> Result<bool>) -> Result<()> {
    let mut idx = vec![0usize; lists.len()];
    if lists.iter().any(|l| l.is_empty()) {
        return Ok(());
    }
    let mut cur: Vec<u32> = lists.iter().map(|l| l[0]).collect();
    loop {
        if !f(&cur)? {
            return Ok(());
        }
        let mut i = lists.len();
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < lists[i].len() {
                cur[i] = lists[i][idx[i]];
                break;
            }
            idx[i] = 0;
            cur[i] = lists[i][0];
        }
    }
}

fn sorted_list(lists: &ColorLists, v: usize) -> Vec<u32> {
    let mut l = lists.list(v).to_vec();
    l.sort_unstable();
    l
}

/// Output of the two-part construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma22Construction {
    pub assignment: HatAssignment,
    pub hg_b: u32,
    pub d: u32,
    pub s_prime: BigUint,
}

/// Defeats `strat` (on `k` colors everywhere) by first quantifying `B` away:
/// `B` gets lists of `HG_s(G[B]) + 1` colors, the induced `s′`-guess strategy
/// on `G[A]` is defeated with `k` colors, then `B` is defeated with `A` fixed.
pub fn lemma22_adversary(
    g: &Graph,
    a: &[usize],
    b: &[usize],
    strat: &StrategyProfile,
    k: u32,
    budget: Budget,
) -> Result<Lemma22Construction> {
    let n = g.vertex_count();
    let lists = ColorLists::uniform(n, k);
    strat.check(g, &lists)?;
    let mut side = vec![None; n];
    for (&v, in_a) in a.iter().map(|v| (v, true)).chain(b.iter().map(|v| (v, false))) {
        if v >= n || side[v].is_some() {
            return Err(HatError::contract(format!("vertex {v} is out of range or repeated")));
        }
        side[v] = Some(in_a);
    }
    if let Some(v) = side.iter().position(|x| x.is_none()) {
        return Err(HatError::contract(format!("vertex {v} is in neither A nor B")));
    }
    let (gb, _) = g.induced(b);
    let hg_b = hg_exact(&gb, strat.s, k, budget)?;
    if hg_b >= k {
        return Err(HatError::precondition(format!("HG_s(G[B]) ≥ k = {k}; B cannot be given smaller lists")));
    }
    let b_list: Vec<u32> = (1..=hg_b + 1).collect();
    let d = a
        .iter()
        .map(|&v| g.neighbors(v).iter().filter(|&&u| side[u] == Some(false)).count() as u32)
        .max()
        .unwrap_or(0);
    let s_prime = lemma22_guess_inflation(strat.s as u64, hg_b, d);

    let (ga, amap) = g.induced(a);
    let a_lists = ColorLists::uniform(a.len(), k);
    let mut colors = vec![0u32; n];
    let mut tables = Vec::with_capacity(a.len());
    for (x, &v) in amap.iter().enumerate() {
        let nb_b: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| side[u] == Some(false)).collect();
        let b_choices = vec![b_list.clone(); nb_b.len()];
        let mut table = Vec::new();
        for ctx in 0..context_count(&ga, &a_lists, x) {
            for (&y, c) in ga.neighbors(x).iter().zip(decode_context(&ga, &a_lists, x, ctx)) {
                colors[amap[y]] = c;
            }
            let mut union = BTreeSet::new();
            for_each_coloring(&b_choices, |beta| {
                for (&u, &c) in nb_b.iter().zip(beta) {
                    colors[u] = c;
                }
                union.extend(strat.guesses(g, &lists, v, &colors).iter().copied());
                Ok(true)
            })?;
            table.push(union.into_iter().collect::<Vec<u32>>());
        }
        tables.push(table);
    }
    let cap = s_prime.to_usize().unwrap_or(usize::MAX);
    let induced = StrategyProfile { s: cap, tables };
    let a_colors = find_defeating_assignment(&ga, &a_lists, &induced, budget)?.ok_or_else(|| {
        HatError::precondition(format!("the induced {s_prime}-guess strategy on G[A] wins with {k} colors"))
    })?;
    let mut colors = vec![0u32; n];
    for (x, &v) in amap.iter().enumerate() {
        colors[v] = a_colors.colors[x];
    }
    let mut meter = budget.meter();
    let b_choices = vec![b_list; b.len()];
    let b_colors = defeat_region(g, &lists, strat, b, &b_choices, &colors, &mut meter)?
        .ok_or_else(|| HatError::claim("B is not defeated within its lists", format!("{:?}", colors)))?;
    for (&v, c) in b.iter().zip(b_colors) {
        colors[v] = c;
    }
    let assignment = HatAssignment::new(colors);
    if strat.wins_on(g, &lists, &assignment) {
        return Err(HatError::claim("two-part construction is guessed", format!("{:?}", assignment.colors)));
    }
    Ok(Lemma22Construction { assignment, hg_b, d, s_prime })
}

/// Choice made on one subtree of the quotient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubtreeChoice {
    pub class: usize,
    pub u: Vec<usize>,
    pub w: Vec<usize>,
    pub survivors: usize,
    pub coloring: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem25Construction {
    pub assignment: HatAssignment,
    pub subtrees: Vec<SubtreeChoice>,
    pub padded_vertices: usize,
}

/// Defeats `strat` when the `designated` class has ℓ-lists and every other
/// vertex has `k`-lists.
///
/// For each subtree `C_j` hanging off the designated class `V_i`, every
/// coloring `α` of `W_j = N(V_j) ∩ V_i` yields the set `A_{α,j}` of colorings of
/// `U_j = N(V_i) ∩ V_j` that extend to an assignment of `C_j` on which no vertex of `C_j` is right.
/// The least coloring common to all `A_{α,j}` is fixed on `U_j`, then `V_i` is
/// defeated, which fixes `α`, and finally each `C_j` is extended.
///
/// With `pad`, classes are first padded with extra vertices so that every
/// neighboring pair has exactly `r` boundary vertices on each side; the extra
/// vertices are dropped from the result.
pub fn theorem25_adversary(
    g: &Graph,
    scheme: &TreePartitionScheme,
    designated: usize,
    strat: &StrategyProfile,
    lists: &ColorLists,
    pad: bool,
    budget: Budget,
) -> Result<Theorem25Construction> {
    scheme.validate(g)?;
    strat.check(g, lists)?;
    let p = &scheme.partition;
    if designated >= p.len() {
        return Err(HatError::Parameter(format!("class {designated} does not exist")));
    }
    let mut k = None;
    for v in 0..g.vertex_count() {
        let size = lists.size(v);
        if p.class_of(v) == designated {
            if size != scheme.l as usize {
                return Err(HatError::contract(format!("vertex {v} of the designated class has {size} colors, not ℓ")));
            }
        } else if *k.get_or_insert(size) != size {
            return Err(HatError::contract("vertices outside the designated class need lists of equal size"));
        }
    }
    if !pad {
        let (assignment, subtrees) = tree_adversary(g, p, designated, strat, lists, budget)?;
        return Ok(Theorem25Construction { assignment, subtrees, padded_vertices: 0 });
    }
    let (pg, pp, pl, ps) = pad_instance(g, p, scheme.r, lists, strat)?;
    let (padded, subtrees) = tree_adversary(&pg, &pp, designated, &ps, &pl, budget)?;
    let n = g.vertex_count();
    let assignment = HatAssignment::new(padded.colors[..n].to_vec());
    if strat.wins_on(g, lists, &assignment) {
        return Err(HatError::claim("stripped padded assignment is guessed", format!("{:?}", assignment.colors)));
    }
    Ok(Theorem25Construction { assignment, subtrees, padded_vertices: pg.vertex_count() - n })
}

fn tree_adversary(
    g: &Graph,
    p: &VertexPartition,
    designated: usize,
    strat: &StrategyProfile,
    lists: &ColorLists,
    budget: Budget,
) -> Result<(HatAssignment, Vec<SubtreeChoice>)> {
    let n = g.vertex_count();
    let q = quotient(g, p)?;
    let mut meter = budget.meter();
    let mut colors = vec![0u32; n];
    let mut subtrees = Vec::new();
    let mut regions = Vec::new();
    for &j in q.neighbors(designated) {
        let u = boundary(g, p, designated, j);
        let w = boundary(g, p, j, designated);
        // C_j: classes reachable from j without passing the designated class
        let mut seen = BTreeSet::from([designated, j]);
        let mut stack = vec![j];
        let mut rest = Vec::new();
        while let Some(c) = stack.pop() {
            rest.extend(p.classes()[c].iter().copied().filter(|v| !u.contains(v)));
            for &x in q.neighbors(c) {
                if seen.insert(x) {
                    stack.push(x);
                }
            }
        }
        rest.sort_unstable();
        let region: Vec<usize> = u.iter().chain(rest.iter()).copied().collect();
        let rest_choices: Vec<Vec<u32>> = rest.iter().map(|&v| sorted_list(lists, v)).collect();
        let u_lists: Vec<Vec<u32>> = u.iter().map(|&v| sorted_list(lists, v)).collect();
        let w_lists: Vec<Vec<u32>> = w.iter().map(|&v| sorted_list(lists, v)).collect();

        let mut survivors: Option<Vec<Vec<u32>>> = None;
        let mut history: Vec<(Vec<u32>, Vec<Vec<u32>>)> = Vec::new();
        for_each_coloring(&w_lists, |alpha| {
            for (&x, &c) in w.iter().zip(alpha) {
                colors[x] = c;
            }
            let mut extendable = Vec::new();
            let mut test = |beta: &[u32], colors: &[u32]| -> Result<bool> {
                let choices: Vec<Vec<u32>> =
                    beta.iter().map(|&c| vec![c]).chain(rest_choices.iter().cloned()).collect();
                Ok(defeat_region(g, lists, strat, &region, &choices, colors, &mut meter)?.is_some())
            };
            match &survivors {
                None => for_each_coloring(&u_lists, |beta| {
                    if test(beta, &colors)? {
                        extendable.push(beta.to_vec());
                    }
                    Ok(true)
                })?,
                Some(prev) => {
                    for beta in prev {
                        if test(beta, &colors)? {
                            extendable.push(beta.clone());
                        }
                    }
                }
            }
            history.push((alpha.to_vec(), extendable.clone()));
            let empty = extendable.is_empty();
            survivors = Some(extendable);
            Ok(!empty)
        })?;
        let survivors = survivors.unwrap_or_default();
        let Some(pick) = survivors.first().cloned() else {
            let witness = json!({
                "class": j,
                "u": u,
                "w": w,
                "steps": history.iter().map(|(a, s)| json!({"alpha": a, "surviving": s})).collect::<Vec<_>>(),
            });
            return Err(HatError::ConstructionFailure {
                message: format!("no coloring of U_{j} extends for every coloring of W_{j}"),
                witness: witness.to_string(),
            });
        };
        for (&x, &c) in u.iter().zip(&pick) {
            colors[x] = c;
        }
        for &x in &w {
            colors[x] = 0;
        }
        subtrees.push(SubtreeChoice { class: j, u: u.clone(), w, survivors: survivors.len(), coloring: pick.clone() });
        regions.push((region, pick, rest_choices));
    }

    let inner = p.classes()[designated].clone();
    let inner_choices: Vec<Vec<u32>> = inner.iter().map(|&v| sorted_list(lists, v)).collect();
    let inner_colors = defeat_region(g, lists, strat, &inner, &inner_choices, &colors, &mut meter)?.ok_or_else(|| {
        HatError::precondition(format!("class {designated} is not defeated with its ℓ-lists given the boundary colors"))
    })?;
    for (&v, c) in inner.iter().zip(inner_colors) {
        colors[v] = c;
    }
    for (region, pick, rest_choices) in regions {
        let choices: Vec<Vec<u32>> = pick.iter().map(|&c| vec![c]).chain(rest_choices).collect();
        let found = defeat_region(g, lists, strat, &region, &choices, &colors, &mut meter)?
            .ok_or_else(|| HatError::claim("surviving boundary coloring does not extend", format!("{:?}", colors)))?;
        for (&v, c) in region.iter().zip(found) {
            colors[v] = c;
        }
    }
    let assignment = HatAssignment::new(colors);
    if strat.wins_on(g, lists, &assignment) {
        return Err(HatError::claim("tree construction is guessed", format!("{:?}", assignment.colors)));
    }
    Ok((assignment, subtrees))
}

/// Adds vertices until every neighboring pair of classes has exactly `r`
/// boundary vertices on each side. A new vertex of `V_y` is joined to one
/// existing vertex of `N(V_y) ∩ V_x`, copies the list of a vertex of its own
/// class and always guesses its first color; old vertices ignore new ones.
fn pad_instance(
    g: &Graph,
    p: &VertexPartition,
    r: usize,
    lists: &ColorLists,
    strat: &StrategyProfile,
) -> Result<(Graph, VertexPartition, ColorLists, StrategyProfile)> {
    let n = g.vertex_count();
    let q = quotient(g, p)?;
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    let mut classes: Vec<Vec<usize>> = p.classes().to_vec();
    let mut new_lists: Vec<Vec<u32>> = (0..n).map(|v| lists.list(v).to_vec()).collect();
    for (i, j) in q.edges() {
        for (x, y) in [(i, j), (j, i)] {
            let have = boundary(g, p, x, y).len();
            let anchor = boundary(g, p, y, x)[0];
            for _ in have..r {
                let v = new_lists.len();
                edges.push((anchor, v));
                new_lists.push(lists.list(p.classes()[y][0]).to_vec());
                classes[y].push(v);
            }
        }
    }
    let total = new_lists.len();
    let pg = Graph::from_edges(total, &edges)?;
    let pl = ColorLists::new(new_lists)?;
    let pp = VertexPartition::new(total, classes)?;
    let mut colors = vec![0u32; total];
    let tables = (0..total)
        .map(|v| {
            (0..context_count(&pg, &pl, v))
                .map(|ctx| {
                    if v >= n {
                        return vec![pl.list(v)[0]];
                    }
                    for (&u, c) in pg.neighbors(v).iter().zip(decode_context(&pg, &pl, v, ctx)) {
                        colors[u] = c;
                    }
                    strat.guesses(g, lists, v, &colors).to_vec()
                })
                .collect()
        })
        .collect();
    Ok((pg, pp, pl, StrategyProfile { s: strat.s, tables }))
}
