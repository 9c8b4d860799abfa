//! Seeded generators for sparse graphs and list assignments, plus exhaustive
//! enumeration of small connected graphs up to isomorphism.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::density::mad_exact;
use crate::graph::{Color, Graph, ListAssignment, VertexId};
use crate::Variant;

/// Attempts made by [`gen_sparse`] before giving up.
pub const RETRY_BUDGET: u64 = 100;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("cannot build a {variant} graph on {n} vertices (need at least {min})")]
    TooSmall { n: usize, variant: Variant, min: usize },
    #[error("no {variant} graph on {n} vertices after {attempts} attempts (seed {seed})")]
    Exhausted { n: usize, variant: Variant, seed: u64, attempts: u64 },
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Smallest `n` accepted by [`gen_sparse`].
pub fn min_order(variant: Variant) -> usize {
    variant.min_delta() + 1
}

/// A connected graph on exactly `n` vertices meeting the hypotheses of
/// `variant`, with minimum degree 2 whenever the construction allows it.
///
/// Each attempt builds a random tree around a hub of degree at least the
/// variant's Δ bound, joins remaining leaves to other vertices, adds a few
/// extra edges, subdivides random edges up to `n` vertices and shuffles the
/// labels. The attempt is kept only if the result is connected, has the
/// required Δ and its exact mad is below the bound.
pub fn gen_sparse(n: usize, variant: Variant, seed: u64) -> Result<Graph, GenError> {
    let min = min_order(variant);
    if n < min {
        return Err(GenError::TooSmall { n, variant, min });
    }
    for attempt in 0..RETRY_BUDGET {
        let mut rng = rng_for(seed, attempt);
        let g = build_sparse(n, variant, &mut rng);
        if accepts(&g, n, variant) {
            return Ok(g);
        }
    }
    Err(GenError::Exhausted { n, variant, seed, attempts: RETRY_BUDGET })
}

fn accepts(g: &Graph, n: usize, variant: Variant) -> bool {
    g.n() == n
        && g.is_connected()
        && g.max_degree().is_ok_and(|d| d >= variant.min_delta())
        && mad_exact(g).is_ok_and(|m| m.value < variant.mad_threshold())
}

fn build_sparse(n: usize, variant: Variant, rng: &mut ChaCha8Rng) -> Graph {
    let lo = variant.min_delta();
    let delta = rng.gen_range(lo..=(lo + 3).min(n - 1));
    let frac = match variant {
        Variant::T1 => rng.gen_range(0.25..0.45),
        Variant::T2 => rng.gen_range(0.35..0.6),
    };
    let branch = ((n as f64 * frac) as usize).clamp(delta + 1, n);

    let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); branch];
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let add = |adj: &mut Vec<Vec<VertexId>>, edges: &mut Vec<(VertexId, VertexId)>, a: VertexId, b: VertexId| {
        adj[a].push(b);
        adj[b].push(a);
        edges.push((a, b));
    };
    for v in 1..=delta {
        add(&mut adj, &mut edges, 0, v);
    }
    for v in delta + 1..branch {
        let open: Vec<VertexId> = (1..v).filter(|&u| adj[u].len() < delta).collect();
        let &u = open.choose(rng).expect("vertices below the cap exist");
        add(&mut adj, &mut edges, u, v);
    }
    for x in 0..branch {
        if adj[x].len() != 1 {
            continue;
        }
        let ok = |y: &VertexId| *y != x && adj[*y].len() < delta && !adj[x].contains(y);
        let leaves: Vec<VertexId> = (0..branch).filter(|y| ok(y) && adj[*y].len() == 1).collect();
        let pool = if leaves.is_empty() { (0..branch).filter(ok).collect() } else { leaves };
        if let Some(&y) = pool.choose(rng) {
            add(&mut adj, &mut edges, x, y);
        }
    }
    for _ in 0..rng.gen_range(0..=2) {
        let (a, b) = (rng.gen_range(0..branch), rng.gen_range(0..branch));
        if a != b && !adj[a].contains(&b) && adj[a].len() < delta && adj[b].len() < delta {
            add(&mut adj, &mut edges, a, b);
        }
    }
    let mut next = branch;
    while next < n {
        let i = rng.gen_range(0..edges.len());
        let (a, b) = edges[i];
        edges[i] = (a, next);
        edges.push((next, b));
        next += 1;
    }
    let mut perm: Vec<VertexId> = (0..n).collect();
    perm.shuffle(rng);
    let relabeled: Vec<_> = edges.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
    Graph::from_edges(n, &relabeled).expect("construction keeps the graph simple")
}

/// How [`gen_lists`] fills lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ListMode {
    /// Every list is `{1..k}`.
    Uniform,
    /// Vertex `v` gets `{v·k+1, ..., v·k+k}` wrapped into a palette of `3k`.
    Shifted,
    /// `k` distinct colors drawn from a palette of `2k`.
    Random,
}

impl fmt::Display for ListMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ListMode::Uniform => "uniform",
            ListMode::Shifted => "shifted",
            ListMode::Random => "random",
        })
    }
}

impl FromStr for ListMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform" => Ok(ListMode::Uniform),
            "shifted" => Ok(ListMode::Shifted),
            "random" => Ok(ListMode::Random),
            _ => Err(format!("unknown list mode `{s}` (expected uniform, shifted or random)")),
        }
    }
}

/// Lists of exactly `k` colors per vertex. `seed` matters only for
/// [`ListMode::Random`].
pub fn gen_lists(g: &Graph, k: usize, mode: ListMode, seed: u64) -> ListAssignment {
    assert!(k >= 1, "lists need at least one color");
    let lists: Vec<Vec<Color>> = match mode {
        ListMode::Uniform => return ListAssignment::uniform(g.n(), k),
        ListMode::Shifted => g
            .vertices()
            .map(|v| {
                let mut l: Vec<Color> = (0..k).map(|i| ((v * k + i) % (3 * k) + 1) as Color).collect();
                l.sort_unstable();
                l
            })
            .collect(),
        ListMode::Random => {
            let mut rng = rng_for(seed, 0);
            g.vertices()
                .map(|_| {
                    let mut l: Vec<Color> =
                        rand::seq::index::sample(&mut rng, 2 * k, k).iter().map(|i| i as Color + 1).collect();
                    l.sort_unstable();
                    l
                })
                .collect()
        }
    };
    ListAssignment::new(lists, k).expect("generated lists have k distinct positive colors")
}

/// Erdős–Rényi graph `G(n, p)`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = rng_for(seed, 0);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("pairs are distinct")
}

/// A connected graph on `n` vertices with minimum degree at least 2 and a
/// vertex of degree at least `min_delta`, or `None` if `n` is too small.
///
/// A random hub receives `min_delta` to `n - 1` neighbors, other pairs are
/// joined with probability `p`, and then low-degree vertices and separate
/// components are joined by extra edges.
pub fn random_min_degree2(n: usize, min_delta: usize, p: f64, seed: u64) -> Option<Graph> {
    if n < 3 || min_delta >= n {
        return None;
    }
    let mut rng = rng_for(seed, 0);
    let mut has = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    let mut add = |a: usize, b: usize, edges: &mut Vec<(usize, usize)>| {
        if a != b && !has[a][b] {
            has[a][b] = true;
            has[b][a] = true;
            edges.push((a.min(b), a.max(b)));
        }
    };
    let hub = rng.gen_range(0..n);
    let d = rng.gen_range(min_delta..n);
    let mut others: Vec<usize> = (0..n).filter(|&v| v != hub).collect();
    others.shuffle(&mut rng);
    for &v in &others[..d] {
        add(hub, v, &mut edges);
    }
    for a in 0..n {
        for b in a + 1..n {
            if a != hub && b != hub && rng.gen_bool(p) {
                add(a, b, &mut edges);
            }
        }
    }
    for v in 0..n {
        while edges.iter().filter(|&&(a, b)| a == v || b == v).count() < 2 {
            let w = rng.gen_range(0..n);
            add(v, w, &mut edges);
        }
    }
    loop {
        let g = Graph::from_edges_lossy(n, &edges);
        let comps = g.connected_components();
        if comps.len() == 1 {
            return Some(g);
        }
        let a = *comps[0].choose(&mut rng).expect("nonempty");
        let b = *comps[1].choose(&mut rng).expect("nonempty");
        add(a, b, &mut edges);
    }
}

/// Canonical code of a graph with at most 11 vertices: the largest
/// upper-triangle adjacency bit string over the leaves of an
/// individualization-refinement search.
pub fn canonical_code(g: &Graph) -> u64 {
    assert!(g.n() <= 11, "canonical codes fit 11 vertices");
    let cells = refine(g, vec![g.vertices().collect()]);
    let mut best = 0;
    search(g, cells, &mut best);
    best
}

/// Splits cells by neighbor counts into every cell until stable.
fn refine(g: &Graph, mut cells: Vec<Vec<VertexId>>) -> Vec<Vec<VertexId>> {
    loop {
        let mut cell_of = vec![0; g.n()];
        for (i, c) in cells.iter().enumerate() {
            c.iter().for_each(|&v| cell_of[v] = i);
        }
        let key = |v: VertexId| {
            let mut k = vec![0usize; cells.len()];
            g.neighbors(v).iter().for_each(|&w| k[cell_of[w]] += 1);
            k
        };
        let mut next = Vec::with_capacity(cells.len());
        for c in &cells {
            if c.len() == 1 {
                next.push(c.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<usize>, VertexId)> = c.iter().map(|&v| (key(v), v)).collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn search(g: &Graph, cells: Vec<Vec<VertexId>>, best: &mut u64) {
    let Some(i) = cells.iter().position(|c| c.len() > 1) else {
        let mut pos = vec![0; g.n()];
        for (p, c) in cells.iter().enumerate() {
            pos[c[0]] = p;
        }
        let n = g.n();
        let mut code = 0u64;
        for (a, b) in g.edges() {
            let (x, y) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
            code |= 1 << (x * n - x * (x + 1) / 2 + (y - x - 1));
        }
        *best = (*best).max(code);
        return;
    };
    for &v in &cells[i] {
        let mut split = cells[..i].to_vec();
        split.push(vec![v]);
        split.push(cells[i].iter().copied().filter(|&w| w != v).collect());
        split.extend_from_slice(&cells[i + 1..]);
        search(g, refine(g, split), best);
    }
}

/// All connected graphs on `n` vertices, one per isomorphism class.
///
/// Every connected graph has a vertex whose removal leaves it connected, so
/// the graphs on `n` vertices arise from those on `n - 1` by adding a vertex
/// with a nonempty neighborhood.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!((1..=10).contains(&n), "enumeration supports 1 to 10 vertices");
    let mut level = vec![Graph::empty(1)];
    for k in 2..=n {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for g in &level {
            let base = g.edges();
            for mask in 1u32..(1 << (k - 1)) {
                let mut e = base.clone();
                e.extend((0..k - 1).filter(|&v| mask >> v & 1 == 1).map(|v| (v, k - 1)));
                let h = Graph::from_edges(k, &e).expect("new edges are distinct");
                if seen.insert(canonical_code(&h)) {
                    out.push(h);
                }
            }
        }
        level = out;
    }
    level
}
