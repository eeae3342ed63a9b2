//! Balanced r-partite r-uniform hypergraphs, complete-subgraph detection and
//! exact extremal numbers at desk scale.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Pow, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Budget, HatError, Result};

/// An r-partite r-graph with `n` vertices per part; an edge picks one index per part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartiteHypergraph {
    pub r: usize,
    pub n: usize,
    pub edges: BTreeSet<Vec<usize>>,
}

impl PartiteHypergraph {
    pub fn new(r: usize, n: usize, edges: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        if r == 0 {
            return Err(HatError::Parameter("r must be at least 1".into()));
        }
        let mut set = BTreeSet::new();
        for e in edges {
            if e.len() != r || e.iter().any(|&x| x >= n) {
                return Err(HatError::contract(format!("edge {e:?} is not an r-tuple of part indices")));
            }
            if !set.insert(e.clone()) {
                return Err(HatError::contract(format!("duplicate edge {e:?}")));
            }
        }
        Ok(PartiteHypergraph { r, n, edges: set })
    }

    pub fn complete(r: usize, n: usize) -> Self {
        let edges = (0..n.pow(r as u32)).map(|c| cell_tuple(c, r, n)).collect();
        PartiteHypergraph { r, n, edges }
    }

    /// One bitmask per index of the first part over the remaining `n^(r-1)` cells.
    fn rows(&self) -> Result<Vec<u64>> {
        let width = row_width(self.r, self.n)?;
        let mut rows = vec![0u64; self.n];
        for e in &self.edges {
            let cell = e[1..].iter().fold(0, |acc, &x| acc * self.n + x);
            debug_assert!(cell < width);
            rows[e[0]] |= 1 << cell;
        }
        Ok(rows)
    }
}

fn row_width(r: usize, n: usize) -> Result<usize> {
    match n.checked_pow(r as u32 - 1) {
        Some(w) if w <= 64 => Ok(w),
        _ => Err(HatError::Parameter(format!("n^(r-1) must be at most 64 (r={r}, n={n})"))),
    }
}

fn cell_tuple(mut c: usize, r: usize, n: usize) -> Vec<usize> {
    let mut t = vec![0; r];
    for i in (0..r).rev() {
        t[i] = c % n;
        c /= n;
    }
    t
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order until it returns true.
fn subsets(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            if go(i + 1, n, k, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    go(0, n, k, &mut Vec::with_capacity(k), f)
}

/// Complete sub-grid in a `dims`-dimensional `n`-grid encoded as bits (first coordinate most significant).
fn complete_in(mask: u64, dims: usize, n: usize, l: usize) -> Option<Vec<Vec<usize>>> {
    match dims {
        0 => (mask & 1 != 0).then(Vec::new),
        1 => {
            let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).take(l).collect();
            (idx.len() == l).then(|| vec![idx])
        }
        _ => {
            let width = n.pow(dims as u32 - 1);
            let full = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
            let subs: Vec<u64> = (0..n).map(|i| (mask >> (i * width)) & full).collect();
            complete_in_rows(&subs, dims - 1, n, l)
        }
    }
}

fn complete_in_rows(rows: &[u64], rest: usize, n: usize, l: usize) -> Option<Vec<Vec<usize>>> {
    let mut found = None;
    subsets(rows.len(), l, &mut |s| {
        let and = s.iter().fold(u64::MAX, |acc, &i| acc & rows[i]);
        if let Some(mut w) = complete_in(and, rest, n, l) {
            w.insert(0, s.to_vec());
            found = Some(w);
            true
        } else {
            false
        }
    });
    found
}

/// Index sets `L_1..L_r` of size `l` whose full product lies in the edge set, if any.
pub fn contains_complete(h: &PartiteHypergraph, l: usize) -> Result<Option<Vec<Vec<usize>>>> {
    if l == 0 || l > h.n {
        return Err(HatError::Parameter(format!("need 1 <= l <= n (l={l}, n={})", h.n)));
    }
    let rows = h.rows()?;
    Ok(complete_in_rows(&rows, h.r - 1, h.n, l))
}

/// An exact extremal number with one extremal configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExValue {
    pub r: usize,
    pub n: usize,
    pub l: usize,
    pub value: u64,
    pub witness: Vec<Vec<usize>>,
}

fn rows_to_edges(rows: &[u64], r: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for (i, &row) in rows.iter().enumerate() {
        for c in 0..64 {
            if row >> c & 1 == 1 {
                let mut t = vec![i];
                t.extend(cell_tuple(c, r - 1, n));
                out.push(t);
            }
        }
    }
    out
}

/// Maximum number of edges of a balanced r-partite r-graph with `n`
/// vertices per part and no complete `K^(r)_l`.
///
/// With `pruned` the search fixes the first-part order (rows in nonincreasing
/// popcount/mask order) and, for `r = 2`, the column order of the fullest
/// row; without it every edge subset is examined.
pub fn ex_exact(r: usize, n: usize, l: usize, pruned: bool, budget: Budget) -> Result<ExValue> {
    if r == 0 || l == 0 || l > n {
        return Err(HatError::Parameter(format!("need r >= 1 and 1 <= l <= n (r={r}, n={n}, l={l})")));
    }
    let width = row_width(r, n)?;
    let mut meter = budget.meter();
    let rows = if pruned { ex_pruned(r, n, l, width, &mut meter)? } else { ex_unpruned(r, n, l, width, &mut meter)? };
    let value = rows.iter().map(|m| m.count_ones() as u64).sum();
    Ok(ExValue { r, n, l, value, witness: rows_to_edges(&rows, r, n) })
}

fn k_free_with(rows: &[u64], new: u64, r: usize, n: usize, l: usize) -> bool {
    let mut ok = true;
    subsets(rows.len(), l - 1, &mut |s| {
        let and = s.iter().fold(new, |acc, &i| acc & rows[i]);
        if complete_in(and, r - 1, n, l).is_some() {
            ok = false;
            return true;
        }
        false
    });
    ok
}

fn ex_unpruned(r: usize, n: usize, l: usize, width: usize, meter: &mut crate::error::Meter) -> Result<Vec<u64>> {
    let cells = n * width;
    if cells > 24 {
        return Err(HatError::Budget { nodes: 0, reason: format!("unpruned search over 2^{cells} subsets") });
    }
    let full = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
    let mut best: Option<(u32, Vec<u64>)> = None;
    for subset in 0u64..(1u64 << cells) {
        meter.tick()?;
        let pop = subset.count_ones();
        if best.as_ref().is_some_and(|(b, _)| pop <= *b) {
            continue;
        }
        let rows: Vec<u64> = (0..n).map(|i| (subset >> (i * width)) & full).collect();
        if complete_in_rows(&rows, r - 1, n, l).is_none() {
            best = Some((pop, rows));
        }
    }
    Ok(best.expect("the empty configuration is always K-free").1)
}

fn ex_pruned(r: usize, n: usize, l: usize, width: usize, meter: &mut crate::error::Meter) -> Result<Vec<u64>> {
    if width > 20 {
        return Err(HatError::Budget { nodes: 0, reason: format!("row space 2^{width} too large") });
    }
    let mut masks: Vec<u64> = (0..1u64 << width).collect();
    masks.sort_by(|a, b| b.count_ones().cmp(&a.count_ones()).then(b.cmp(a)));
    let total = (n * width) as u64;
    for target in (0..total).rev() {
        let mut rows = Vec::with_capacity(n);
        if search_rows(&masks, r, n, l, width, target, 0, &mut rows, meter)? {
            return Ok(rows);
        }
    }
    // only the empty configuration is K-free
    Ok(vec![0; n])
}

#[allow(clippy::too_many_arguments)]
fn search_rows(
    masks: &[u64],
    r: usize,
    n: usize,
    l: usize,
    width: usize,
    target: u64,
    sum: u64,
    rows: &mut Vec<u64>,
    meter: &mut crate::error::Meter,
) -> Result<bool> {
    meter.tick()?;
    let i = rows.len();
    if i == n {
        return Ok(sum >= target);
    }
    let remaining = (n - i) as u64;
    let candidates: Vec<usize> = if i == 0 && r == 2 {
        // the fullest row can be taken to occupy the highest columns
        (0..=width)
            .rev()
            .map(|p| {
                let m = if p == 0 { 0 } else { ((1u64 << p) - 1) << (width - p) };
                masks.iter().position(|&x| x == m).unwrap()
            })
            .collect()
    } else {
        let start = match rows.last() {
            Some(&prev) => masks.iter().position(|&x| x == prev).unwrap(),
            None => 0,
        };
        (start..masks.len()).collect()
    };
    for idx in candidates {
        let m = masks[idx];
        if sum + remaining * (m.count_ones() as u64) < target {
            if i == 0 && r == 2 {
                continue;
            }
            break;
        }
        if !k_free_with(rows, m, r, n, l) {
            continue;
        }
        rows.push(m);
        if search_rows(masks, r, n, l, width, target, sum + m.count_ones() as u64, rows, meter)? {
            return Ok(true);
        }
        rows.pop();
    }
    Ok(false)
}

/// The density threshold `3 n^(r - 1/l^(r-1))`, compared exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErdosThreshold {
    pub r: usize,
    pub n: usize,
    pub l: usize,
}

pub fn erdos_threshold(r: usize, n: usize, l: usize) -> Result<ErdosThreshold> {
    if r < 2 || l < 2 || l > n {
        return Err(HatError::Parameter(format!("need r >= 2 and 2 <= l <= n (r={r}, n={n}, l={l})")));
    }
    Ok(ErdosThreshold { r, n, l })
}

impl ErdosThreshold {
    fn q(&self) -> u32 {
        (self.l as u32).pow(self.r as u32 - 1)
    }

    /// Whether `m` is at least the threshold: `m^q >= 3^q n^(rq - 1)` with `q = l^(r-1)`.
    pub fn is_met_by(&self, m: u64) -> bool {
        let q = self.q();
        let lhs = BigUint::from(m).pow(q);
        let rhs = BigUint::from(3u32).pow(q) * BigUint::from(self.n).pow(self.r as u32 * q - 1);
        lhs >= rhs
    }

    /// Least integer meeting the threshold.
    pub fn ceiling(&self) -> u64 {
        let (mut lo, mut hi) = (0u64, 3 * (self.n as u64).pow(self.r as u32));
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.is_met_by(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        lo
    }
}

/// The bound `(l-1)^(1/l) (n-l+1) n^(1-1/l) + (l-1) n`, compared exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KstBound {
    pub n: usize,
    pub l: usize,
}

pub fn kst_bound(n: usize, l: usize) -> Result<KstBound> {
    if l < 2 || l > n {
        return Err(HatError::Parameter(format!("need 2 <= l <= n (n={n}, l={l})")));
    }
    Ok(KstBound { n, l })
}

impl KstBound {
    /// Ordering of the integer `m` against the bound.
    pub fn compare(&self, m: u64) -> Ordering {
        let (n, l) = (self.n as u64, self.l as u64);
        let base = (l - 1) * n;
        if m < base {
            return Ordering::Less;
        }
        let x = BigUint::from(m - base).pow(l as u32);
        let rhs = BigUint::from(l - 1) * BigUint::from(n - l + 1).pow(l as u32) * BigUint::from(n).pow(l as u32 - 1);
        x.cmp(&rhs)
    }
}

/// A family of `l` indices and the size of their common intersection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionWitness {
    pub indices: Vec<usize>,
    pub size: usize,
}

/// Exhaustive check of the set-intersection lemma on one family.
///
/// `Err(Precondition)` means the hypotheses fail (`sum |A_i| >= nN/w` and
/// `n >= 2 l^2 w^l`); `Ok(None)` means they hold and no `l` sets meet the
/// conclusion `|A_i1 ∩ ... ∩ A_il| >= N / (2 w^l)`, which would contradict the lemma.
pub fn intersection_lemma_search(
    sets: &[BTreeSet<usize>],
    ground: usize,
    l: usize,
    w: &BigRational,
) -> Result<Option<IntersectionWitness>> {
    if l == 0 || l > sets.len() {
        return Err(HatError::Parameter("need 1 <= l <= number of sets".into()));
    }
    if !w.is_positive() {
        return Err(HatError::Parameter("w must be positive".into()));
    }
    if sets.iter().flatten().any(|&x| x >= ground) {
        return Err(HatError::contract("set element outside the ground set"));
    }
    let big = |x: usize| BigRational::from_integer(x.into());
    let n = sets.len();
    let total: usize = sets.iter().map(BTreeSet::len).sum();
    let wl: BigRational = Pow::pow(w, l as u32);
    if big(total) * w < big(n * ground) {
        return Err(HatError::precondition("sum of set sizes is below nN/w"));
    }
    if big(n) < big(2 * l * l) * &wl {
        return Err(HatError::precondition("n is below 2 l^2 w^l"));
    }
    let need = big(ground) / (big(2) * &wl);
    let mut found = None;
    subsets(n, l, &mut |s| {
        let mut inter = sets[s[0]].clone();
        for &i in &s[1..] {
            inter = inter.intersection(&sets[i]).copied().collect();
        }
        if big(inter.len()) >= need {
            found = Some(IntersectionWitness { indices: s.to_vec(), size: inter.len() });
            return true;
        }
        false
    });
    Ok(found)
}

/// Values of `l <= max_l` violating either `(l-1)^(1/l) < 3/2` or
/// `(3/2) l^(1-1/l) - l + 1 > 0`, both checked after raising to the `l`-th power.
pub fn appendix_density_failures(max_l: u32) -> Vec<u32> {
    let mut bad = Vec::new();
    for l in 1..=max_l {
        let two = BigUint::from(2u32).pow(l);
        let three = BigUint::from(3u32).pow(l);
        let first = &two * BigUint::from(l - 1) < three;
        let second = if l == 1 {
            true
        } else {
            &three * BigUint::from(l).pow(l - 1) > &two * BigUint::from(l - 1).pow(l)
        };
        if !(first && second) {
            bad.push(l);
        }
    }
    bad
}
