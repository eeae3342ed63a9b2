//! Brute-force oracles written against the definitions only.

use hatguess::game::{ColorLists, HatAssignment, StrategyProfile};
use hatguess::Graph;

/// Whether some vertex guesses its own color, evaluated straight from the
/// tables: the context index runs over ascending neighbors, first most
/// significant, by list position.
pub fn someone_right(g: &Graph, lists: &ColorLists, strat: &StrategyProfile, a: &HatAssignment) -> bool {
    (0..g.vertex_count()).any(|v| {
        let mut ctx = 0;
        for &u in g.neighbors(v) {
            let pos = lists.list(u).iter().position(|&c| c == a.colors[u]).unwrap();
            ctx = ctx * lists.list(u).len() + pos;
        }
        strat.tables[v][ctx].contains(&a.colors[v])
    })
}

struct Game {
    n: usize,
    k: usize,
    /// `digits[a][v]` and `ctx[a][v]` for every assignment `a`.
    digits: Vec<Vec<usize>>,
    ctx: Vec<Vec<usize>>,
    /// Assignments covered by entry `c` of `v` set to `x`, at `members[v][c * k + x]`.
    members: Vec<Vec<Vec<usize>>>,
    weight: Vec<usize>,
    table: Vec<Vec<Option<usize>>>,
    cover: Vec<u32>,
    uncovered: usize,
    capacity: usize,
}

impl Game {
    fn new(g: &Graph, k: usize) -> Game {
        let n = g.vertex_count();
        let total = k.pow(n as u32);
        let digits: Vec<Vec<usize>> = (0..total)
            .map(|mut a| {
                (0..n)
                    .map(|_| {
                        let x = a % k;
                        a /= k;
                        x
                    })
                    .collect()
            })
            .collect();
        let ctx: Vec<Vec<usize>> = digits
            .iter()
            .map(|d| (0..n).map(|v| g.neighbors(v).iter().fold(0, |c, &u| c * k + d[u])).collect())
            .collect();
        let sizes: Vec<usize> = (0..n).map(|v| k.pow(g.neighbors(v).len() as u32)).collect();
        let mut members: Vec<Vec<Vec<usize>>> = sizes.iter().map(|&s| vec![Vec::new(); s * k]).collect();
        for a in 0..total {
            for v in 0..n {
                members[v][ctx[a][v] * k + digits[a][v]].push(a);
            }
        }
        let weight: Vec<usize> = (0..n).map(|v| total / (sizes[v] * k)).collect();
        let capacity = (0..n).map(|v| sizes[v] * weight[v]).sum();
        let table = sizes.iter().map(|&s| vec![None; s]).collect();
        Game { n, k, digits, ctx, members, weight, table, cover: vec![0; total], uncovered: total, capacity }
    }

    fn set(&mut self, v: usize, c: usize, x: usize) {
        self.table[v][c] = Some(x);
        self.capacity -= self.weight[v];
        for &a in &self.members[v][c * self.k + x] {
            if self.cover[a] == 0 {
                self.uncovered -= 1;
            }
            self.cover[a] += 1;
        }
    }

    fn unset(&mut self, v: usize, c: usize, x: usize) {
        self.table[v][c] = None;
        self.capacity += self.weight[v];
        for &a in &self.members[v][c * self.k + x] {
            self.cover[a] -= 1;
            if self.cover[a] == 0 {
                self.uncovered += 1;
            }
        }
    }

    fn open(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.table[v][self.ctx[a][v]].is_none())
    }

    /// Covers the uncovered assignment with the fewest open entries by each
    /// of those entries in turn.
    fn search(&mut self) -> bool {
        if self.uncovered > self.capacity {
            return false;
        }
        let Some(a) = (0..self.cover.len()).filter(|&a| self.cover[a] == 0).min_by_key(|&a| self.open(a).count()) else {
            return true;
        };
        let open: Vec<usize> = self.open(a).collect();
        for v in open {
            let (c, x) = (self.ctx[a][v], self.digits[a][v]);
            self.set(v, c, x);
            if self.search() {
                return true;
            }
            self.unset(v, c, x);
        }
        false
    }
}

/// Whether the players win on `g` with `k` colors and one guess each.
pub fn players_win(g: &Graph, k: usize) -> bool {
    Game::new(g, k).search()
}

/// Largest `k` at which the players win, trying `k = 1, 2, ...`.
pub fn hat_guessing_number(g: &Graph) -> usize {
    let mut k = 1;
    while players_win(g, k + 1) {
        k += 1;
    }
    k
}
