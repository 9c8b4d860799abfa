//! Exact list coloring by backtracking, used as the colorer's base case and
//! as ground truth in tests.
//!
//! The search colors a conflict graph (the square of the input, for
//! 2-distance coloring) with forward checking: picking a color removes it
//! from every uncolored conflicting vertex, and a vertex left with no color
//! triggers backtracking. The next vertex is the one with fewest remaining
//! colors, ties broken by id; colors are tried in increasing order.

use thiserror::Error;

use crate::graph::{Color, Coloring, Graph, ListAssignment};

/// Default vertex cap for the exact solvers.
pub const DEFAULT_CAP: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("exact search capped at {cap} vertices, graph has {n}")]
    TooLarge { n: usize, cap: usize },
    #[error("{lists} lists for {n} vertices")]
    SizeMismatch { n: usize, lists: usize },
}

struct Search<'a> {
    conflict: &'a Graph,
    lists: &'a [Vec<Color>],
    color: Vec<Option<Color>>,
    /// `blocked[v][i]`: colored conflict-neighbors of `v` using `lists[v][i]`.
    blocked: Vec<Vec<u32>>,
    avail: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(conflict: &'a Graph, lists: &'a [Vec<Color>]) -> Self {
        Search {
            conflict,
            lists,
            color: vec![None; conflict.n()],
            blocked: lists.iter().map(|l| vec![0; l.len()]).collect(),
            avail: lists.iter().map(Vec::len).collect(),
        }
    }

    /// Colors `v` with `c` and propagates; returns false on a wipe-out, in
    /// which case the caller must still call [`Search::unassign`].
    fn assign(&mut self, v: usize, c: Color) -> bool {
        self.color[v] = Some(c);
        let mut ok = true;
        for &w in self.conflict.neighbors(v) {
            if self.color[w].is_some() {
                continue;
            }
            if let Ok(i) = self.lists[w].binary_search(&c) {
                self.blocked[w][i] += 1;
                if self.blocked[w][i] == 1 {
                    self.avail[w] -= 1;
                    if self.avail[w] == 0 {
                        ok = false;
                    }
                }
            }
        }
        ok
    }

    fn unassign(&mut self, v: usize, c: Color) {
        self.color[v] = None;
        for &w in self.conflict.neighbors(v) {
            if self.color[w].is_some() {
                continue;
            }
            if let Ok(i) = self.lists[w].binary_search(&c) {
                self.blocked[w][i] -= 1;
                if self.blocked[w][i] == 0 {
                    self.avail[w] += 1;
                }
            }
        }
    }

    fn solve(&mut self) -> bool {
        let next = (0..self.conflict.n()).filter(|&v| self.color[v].is_none()).min_by_key(|&v| (self.avail[v], v));
        let Some(v) = next else { return true };
        for i in 0..self.lists[v].len() {
            if self.blocked[v][i] != 0 {
                continue;
            }
            let c = self.lists[v][i];
            let ok = self.assign(v, c);
            if ok && self.solve() {
                return true;
            }
            self.unassign(v, c);
        }
        false
    }
}

/// Properly colors `conflict` from `lists`, or returns `None` if impossible.
/// No size cap: callers are responsible for keeping instances small.
pub fn color_conflict_graph(conflict: &Graph, lists: &[Vec<Color>]) -> Option<Vec<Color>> {
    assert_eq!(conflict.n(), lists.len());
    if lists.iter().any(Vec::is_empty) {
        return None;
    }
    let mut s = Search::new(conflict, lists);
    s.solve().then(|| s.color.into_iter().map(|c| c.expect("total")).collect())
}

/// A 2-distance coloring of `g` from `lists`, or `Ok(None)` if none exists.
pub fn exact_list_color(g: &Graph, lists: &ListAssignment, cap: usize) -> Result<Option<Coloring>, OracleError> {
    if g.n() > cap {
        return Err(OracleError::TooLarge { n: g.n(), cap });
    }
    if lists.len() != g.n() {
        return Err(OracleError::SizeMismatch { n: g.n(), lists: lists.len() });
    }
    let raw: Vec<Vec<Color>> = g.vertices().map(|v| lists.list(v).to_vec()).collect();
    Ok(color_conflict_graph(&g.square(), &raw).map(Coloring::from_colors))
}

/// Size of a clique in `h` found greedily from every start vertex.
fn greedy_clique(h: &Graph) -> usize {
    let mut best = usize::from(h.n() > 0);
    for v in h.vertices() {
        let mut cand: Vec<usize> = h.neighbors(v).to_vec();
        cand.sort_by_key(|&w| (std::cmp::Reverse(h.degree(w)), w));
        let mut clique = vec![v];
        for w in cand {
            if clique.iter().all(|&c| h.has_edge(c, w)) {
                clique.push(w);
            }
        }
        best = best.max(clique.len());
    }
    best
}

/// The 2-distance chromatic number: chromatic number of the square.
pub fn chi2(g: &Graph, cap: usize) -> Result<usize, OracleError> {
    if g.n() > cap {
        return Err(OracleError::TooLarge { n: g.n(), cap });
    }
    if g.is_empty() {
        return Ok(0);
    }
    let sq = g.square();
    let delta = g.max_degree().expect("nonempty");
    let lower = (delta + 1).max(greedy_clique(&sq));
    for k in lower..=g.n() {
        let lists = vec![(1..=k as Color).collect::<Vec<_>>(); g.n()];
        if color_conflict_graph(&sq, &lists).is_some() {
            return Ok(k);
        }
    }
    unreachable!("n colors always suffice")
}
