//! Immutable simple graphs, vertex masks, colorings and list assignments.
//!
//! Vertices are dense ids `0..n`. A [`Graph`] never changes after it is
//! built; deletions used by the colorer are expressed with a [`VertexMask`]
//! and materialized through [`Graph::induced`] when a standalone subgraph is
//! needed.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Dense vertex index, valid for the graph it was obtained from.
pub type VertexId = usize;

/// A color. Colors are positive integers.
pub type Color = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("graph has no vertices")]
    Empty,
    #[error("vertex {0} is uncolored")]
    Uncolored(VertexId),
    #[error("list of vertex {vertex} has {size} colors, fewer than {k}")]
    ListTooSmall { vertex: VertexId, size: usize, k: usize },
    #[error("color 0 in list of vertex {0}; colors are positive")]
    ZeroColor(VertexId),
    #[error("expected {expected} entries, got {got}")]
    SizeMismatch { expected: usize, got: usize },
}

/// Simple undirected graph with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    /// Builds a graph, rejecting self-loops, duplicate edges and bad ids.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u.min(w[0]), u.max(w[0]));
                return Err(GraphError::DuplicateEdge(a, b));
            }
        }
        Ok(Graph { adj, m: edges.len() })
    }

    /// Like [`Graph::from_edges`] but silently drops loops and repeated edges.
    pub fn from_edges_lossy(n: usize, edges: &[(VertexId, VertexId)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u != v && u < n && v < n {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        let mut twice = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            twice += list.len();
        }
        Graph { adj, m: twice / 2 }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.n()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.m);
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// Maximum degree Δ. Errors on the graph with no vertices.
    pub fn max_degree(&self) -> Result<usize, GraphError> {
        self.adj.iter().map(Vec::len).max().ok_or(GraphError::Empty)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.adj.iter().map(Vec::len).min()
    }

    /// N*(v): vertices at distance 1 or 2 from `v`, sorted.
    pub fn two_distance_neighborhood(&self, v: VertexId) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = Vec::new();
        for &a in &self.adj[v] {
            out.push(a);
            out.extend(self.adj[a].iter().copied().filter(|&b| b != v));
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The square: `uv` is an edge iff `1 <= dist(u, v) <= 2`.
    pub fn square(&self) -> Graph {
        let adj: Vec<Vec<VertexId>> = self.vertices().map(|v| self.two_distance_neighborhood(v)).collect();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { adj, m }
    }

    /// Length of a shortest cycle, or `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        for s in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[s] = 0;
            parent[s] = usize::MAX;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                if best.is_some_and(|b| 2 * dist[x] + 1 >= b) {
                    break;
                }
                for &y in &self.adj[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y {
                        let len = dist[x] + dist[y] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        self.components_within(&VertexMask::full(self.n()))
    }

    /// Components of the subgraph induced by `mask`.
    pub fn components_within(&self, mask: &VertexMask) -> Vec<Vec<VertexId>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in mask.iter() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &self.adj[x] {
                    if mask.contains(y) && !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.connected_components().len() == 1
    }

    /// Subgraph induced by `mask`, relabelled densely in increasing id
    /// order. The second value maps new ids back to ids of `self`.
    pub fn induced(&self, mask: &VertexMask) -> (Graph, Vec<VertexId>) {
        let back: Vec<VertexId> = mask.iter().collect();
        let mut fwd = vec![usize::MAX; self.n()];
        for (i, &v) in back.iter().enumerate() {
            fwd[v] = i;
        }
        let mut m2 = 0;
        let adj: Vec<Vec<VertexId>> = back
            .iter()
            .map(|&v| {
                let list: Vec<VertexId> =
                    self.adj[v].iter().filter(|&&w| fwd[w] != usize::MAX).map(|&w| fwd[w]).collect();
                m2 += list.len();
                list
            })
            .collect();
        (Graph { adj, m: m2 / 2 }, back)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|l| l.iter().map(|&v| v + off).collect()));
        Graph { adj, m: self.m + other.m }
    }

    /// Same graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[VertexId]) -> Graph {
        let edges: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edges_lossy(self.n(), &edges)
    }
}

/// Subset of the vertices of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMask {
    alive: Vec<bool>,
    count: usize,
}

impl VertexMask {
    pub fn full(n: usize) -> Self {
        VertexMask { alive: vec![true; n], count: n }
    }

    pub fn none(n: usize) -> Self {
        VertexMask { alive: vec![false; n], count: 0 }
    }

    pub fn from_vertices(n: usize, vs: &[VertexId]) -> Self {
        let mut mask = VertexMask::none(n);
        for &v in vs {
            mask.insert(v);
        }
        mask
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.alive[v]
    }

    pub fn insert(&mut self, v: VertexId) {
        if !self.alive[v] {
            self.alive[v] = true;
            self.count += 1;
        }
    }

    pub fn remove(&mut self, v: VertexId) {
        if self.alive[v] {
            self.alive[v] = false;
            self.count -= 1;
        }
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.alive.iter().enumerate().filter(|(_, &a)| a).map(|(v, _)| v)
    }
}

/// Partial or total assignment of colors to vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<Option<Color>>,
}

impl Coloring {
    pub fn uncolored(n: usize) -> Self {
        Coloring { colors: vec![None; n] }
    }

    pub fn from_colors(colors: Vec<Color>) -> Self {
        Coloring { colors: colors.into_iter().map(Some).collect() }
    }

    pub fn from_options(colors: Vec<Option<Color>>) -> Self {
        Coloring { colors }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn get(&self, v: VertexId) -> Option<Color> {
        self.colors[v]
    }

    pub fn set(&mut self, v: VertexId, c: Color) {
        self.colors[v] = Some(c);
    }

    pub fn clear(&mut self, v: VertexId) {
        self.colors[v] = None;
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    pub fn as_slice(&self) -> &[Option<Color>] {
        &self.colors
    }

    /// Number of distinct colors used.
    pub fn distinct_colors(&self) -> usize {
        let mut cs: Vec<Color> = self.colors.iter().flatten().copied().collect();
        cs.sort_unstable();
        cs.dedup();
        cs.len()
    }
}

/// Per-vertex lists of allowed colors, each of size at least `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListAssignment {
    lists: Vec<Vec<Color>>,
    k: usize,
}

impl ListAssignment {
    /// Validates sizes and positivity. Lists are sorted and deduplicated.
    pub fn new(lists: Vec<Vec<Color>>, k: usize) -> Result<Self, GraphError> {
        let mut lists = lists;
        for (v, list) in lists.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            if list.first() == Some(&0) {
                return Err(GraphError::ZeroColor(v));
            }
            if list.len() < k {
                return Err(GraphError::ListTooSmall { vertex: v, size: list.len(), k });
            }
        }
        Ok(ListAssignment { lists, k })
    }

    /// Every vertex gets `{1, ..., k}`.
    pub fn uniform(n: usize, k: usize) -> Self {
        ListAssignment { lists: vec![(1..=k as Color).collect(); n], k }
    }

    /// `k` is the size of the smallest list.
    pub fn from_lists(lists: Vec<Vec<Color>>) -> Result<Self, GraphError> {
        let mut lists = lists;
        lists.iter_mut().for_each(|l| {
            l.sort_unstable();
            l.dedup();
        });
        let k = lists.iter().map(Vec::len).min().unwrap_or(0);
        Self::new(lists, k)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn list(&self, v: VertexId) -> &[Color] {
        &self.lists[v]
    }

    pub fn min_size(&self) -> usize {
        self.lists.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn restrict(&self, vs: &[VertexId]) -> ListAssignment {
        ListAssignment { lists: vs.iter().map(|&v| self.lists[v].clone()).collect(), k: self.k }
    }
}

/// Outcome of [`validate_coloring`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidityReport {
    /// Pairs `(u, v)`, `u < v`, at distance at most 2 sharing a color.
    pub conflicts: Vec<(VertexId, VertexId)>,
    /// Vertices whose color is outside their list.
    pub list_violations: Vec<VertexId>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.conflicts.is_empty() && self.list_violations.is_empty()
    }
}

/// Checks a total coloring against the distance-2 rule and, optionally, lists.
pub fn validate_coloring(
    g: &Graph,
    coloring: &Coloring,
    lists: Option<&ListAssignment>,
) -> Result<ValidityReport, GraphError> {
    if coloring.len() != g.n() {
        return Err(GraphError::SizeMismatch { expected: g.n(), got: coloring.len() });
    }
    let colors: Vec<Color> =
        g.vertices().map(|v| coloring.get(v).ok_or(GraphError::Uncolored(v))).collect::<Result<_, _>>()?;
    let mut report = ValidityReport::default();
    for u in g.vertices() {
        for w in g.two_distance_neighborhood(u) {
            if w > u && colors[u] == colors[w] {
                report.conflicts.push((u, w));
            }
        }
    }
    if let Some(l) = lists {
        if l.len() != g.n() {
            return Err(GraphError::SizeMismatch { expected: g.n(), got: l.len() });
        }
        report.list_violations = g.vertices().filter(|&v| l.list(v).binary_search(&colors[v]).is_err()).collect();
    }
    Ok(report)
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn rejects_loops_and_duplicates() {
        assert_eq!(Graph::from_edges(2, &[(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(Graph::from_edges(2, &[(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert!(matches!(Graph::from_edges(2, &[(0, 2)]), Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })));
    }

    #[test]
    fn two_distance_neighborhoods() {
        let c5 = cycle(5);
        for v in 0..5 {
            assert_eq!(c5.two_distance_neighborhood(v).len(), 4);
        }
        let s = star(4);
        assert_eq!(s.two_distance_neighborhood(1), vec![0, 2, 3, 4]);
        assert_eq!(path(4).two_distance_neighborhood(0), vec![1, 2]);
    }

    #[test]
    fn squares() {
        let sq = path(4).square();
        assert_eq!(sq.edges(), vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(complete(4).square(), complete(4));
        assert_eq!(petersen().square(), complete(10));
    }

    #[test]
    fn girths() {
        assert_eq!(cycle(5).girth(), Some(5));
        assert_eq!(path(6).girth(), None);
        assert_eq!(star(5).girth(), None);
        assert_eq!(complete(4).girth(), Some(3));
        assert_eq!(petersen().girth(), Some(5));
        assert_eq!(cycle(8).girth(), Some(8));
    }

    #[test]
    fn components() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.connected_components().len(), 2);
        assert_eq!(cycle(5).connected_components().len(), 1);
        assert_eq!(Graph::empty(3).connected_components(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn max_degrees() {
        assert_eq!(star(4).max_degree(), Ok(4));
        assert_eq!(cycle(5).max_degree(), Ok(2));
        assert_eq!(Graph::empty(1).max_degree(), Ok(0));
        assert_eq!(Graph::empty(0).max_degree(), Err(GraphError::Empty));
    }

    #[test]
    fn validation() {
        let c4 = Coloring::from_colors(vec![1, 2, 1, 2]);
        let r = validate_coloring(&cycle(4), &c4, None).unwrap();
        assert!(!r.is_valid());
        assert_eq!(r.conflicts, vec![(0, 2), (1, 3)]);

        let k4 = Coloring::from_colors(vec![1, 2, 3, 4]);
        assert!(validate_coloring(&complete(4), &k4, None).unwrap().is_valid());

        let lists = ListAssignment::new(vec![vec![1, 2, 3], vec![1, 2, 3], vec![1, 2]], 2).unwrap();
        let c = Coloring::from_colors(vec![1, 2, 3]);
        let r = validate_coloring(&path(3), &c, Some(&lists)).unwrap();
        assert!(r.conflicts.is_empty());
        assert_eq!(r.list_violations, vec![2]);

        let partial = Coloring::from_options(vec![Some(1), None, Some(2)]);
        assert_eq!(validate_coloring(&path(3), &partial, None), Err(GraphError::Uncolored(1)));
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = cycle(5);
        let mask = VertexMask::from_vertices(5, &[0, 1, 2, 4]);
        let (h, back) = g.induced(&mask);
        assert_eq!(back, vec![0, 1, 2, 4]);
        assert_eq!(h.edges(), vec![(0, 1), (0, 3), (1, 2)]);
        assert_eq!(g.components_within(&VertexMask::from_vertices(5, &[0, 2])).len(), 2);
    }

    #[test]
    fn list_assignment_checks() {
        assert!(matches!(
            ListAssignment::new(vec![vec![1]], 2),
            Err(GraphError::ListTooSmall { vertex: 0, size: 1, k: 2 })
        ));
        assert_eq!(ListAssignment::new(vec![vec![0, 1]], 1), Err(GraphError::ZeroColor(0)));
        let l = ListAssignment::new(vec![vec![3, 1, 3, 2]], 3).unwrap();
        assert_eq!(l.list(0), &[1, 2, 3]);
    }
}
