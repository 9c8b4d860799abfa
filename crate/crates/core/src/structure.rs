//! Path signatures of vertices and detection of reducible configurations.
//!
//! A `k`-path leaving a vertex runs through `k` consecutive 2-vertices
//! before reaching a vertex of degree other than 2. A `(k1, ..., kd)`-vertex
//! is a `d`-vertex whose incident paths are `k1`-, ..., `kd`-paths; `k = 0`
//! means the neighbor itself is not a 2-vertex. Signatures stop walking at
//! the second 2-vertex and report such paths as `2+`.
//!
//! Each [`ConfigKind`] is a local pattern that a minimal counterexample to
//! the coloring theorems cannot contain. The colorer removes the pattern,
//! recurses, and extends the coloring back (see [`crate::colorer`]).

use std::fmt;

use crate::graph::{Graph, VertexId};
use crate::Variant;

/// Length class of a path leaving a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PathClass {
    Zero,
    One,
    TwoPlus,
}

impl fmt::Display for PathClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PathClass::Zero => "0",
            PathClass::One => "1",
            PathClass::TwoPlus => "2+",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathEntry {
    pub neighbor: VertexId,
    pub class: PathClass,
    /// The 2-vertices walked through, at most two.
    pub internal: Vec<VertexId>,
    /// Far end of a 0- or 1-path; `None` for `2+`.
    pub end: Option<VertexId>,
}

/// Incident paths of one vertex, one entry per neighbor in id order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSignature {
    pub owner: VertexId,
    pub entries: Vec<PathEntry>,
}

impl PathSignature {
    pub fn degree(&self) -> usize {
        self.entries.len()
    }

    fn count(&self, class: PathClass) -> usize {
        self.entries.iter().filter(|e| e.class == class).count()
    }

    /// True for a `(1, ..., 1, 0, ..., 0)`-vertex with the given counts.
    pub fn is(&self, ones: usize, zeros: usize) -> bool {
        self.count(PathClass::TwoPlus) == 0
            && self.count(PathClass::One) == ones
            && self.count(PathClass::Zero) == zeros
    }

    pub fn ones(&self) -> impl Iterator<Item = &PathEntry> {
        self.entries.iter().filter(|e| e.class == PathClass::One)
    }

    pub fn zeros(&self) -> impl Iterator<Item = &PathEntry> {
        self.entries.iter().filter(|e| e.class == PathClass::Zero)
    }
}

impl fmt::Display for PathSignature {
    /// Classes in decreasing order, e.g. `(1,1,0)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut classes: Vec<PathClass> = self.entries.iter().map(|e| e.class).collect();
        classes.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<String> = classes.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Walks every path leaving `v`.
pub fn classify_vertex(g: &Graph, v: VertexId) -> PathSignature {
    let entries = g
        .neighbors(v)
        .iter()
        .map(|&a| {
            if g.degree(a) != 2 {
                return PathEntry { neighbor: a, class: PathClass::Zero, internal: vec![], end: Some(a) };
            }
            let next = other_neighbor(g, a, v);
            if g.degree(next) != 2 {
                PathEntry { neighbor: a, class: PathClass::One, internal: vec![a], end: Some(next) }
            } else {
                PathEntry { neighbor: a, class: PathClass::TwoPlus, internal: vec![a, next], end: None }
            }
        })
        .collect();
    PathSignature { owner: v, entries }
}

/// The neighbor of 2-vertex `mid` that is not `from`.
fn other_neighbor(g: &Graph, mid: VertexId, from: VertexId) -> VertexId {
    let ns = g.neighbors(mid);
    if ns[0] == from {
        ns[1]
    } else {
        ns[0]
    }
}

/// Reducible configurations, in the order they are searched.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConfigKind {
    /// A vertex `v` of degree at most 1.
    MinDegree1,
    /// Two adjacent 2-vertices `v`, `w` on a walk `u v w x`.
    LongPath,
    /// A (1,1,1)-vertex `u` with 2-neighbors `u1`, `u2`, `u3`.
    V111,
    /// A 3-vertex `u` with a 2-neighbor `v` and a (1,1,0)-neighbor `w`
    /// whose 2-neighbors are `w1`, `w2`.
    V110TwoNeighbor,
    /// A 3-vertex `u` with two (1,1,0)-neighbors `v`, `w` and a further
    /// 3-neighbor `t`.
    TwoV110ThreeNeighbor,
    /// A (1,1,0)-vertex `u` with 2-neighbors `v`, `w`, where the 1-path
    /// `u w x` ends at a vertex of degree at most Δ-1.
    V110LowEnd,
    /// A (1,1,0)-vertex `u` whose 3+-neighbor `t` has degree at most Δ-2.
    V110LowNeighbor,
    /// A (1,0,0)-vertex `u` with 2-neighbor `v` and two 3-neighbors.
    V100TwoThreeNeighbors,
    /// A (1,0,0)-vertex `u` with a 3-neighbor, a 4-neighbor, and 1-path
    /// `u v x` ending at degree at most Δ-1.
    V100MixedLowEnd,
    /// A (1,1,1,1)-vertex `u` whose 1-path `u v4 x` ends at degree at most
    /// Δ-1.
    V1111LowEnd,
    /// A (1,1,1,0)-vertex `u` with a 3-neighbor `t` whose 1-path `u v3 x`
    /// ends at degree at most Δ-2.
    V1110LowEnd,
}

impl ConfigKind {
    pub const T1: [ConfigKind; 5] = [
        ConfigKind::MinDegree1,
        ConfigKind::LongPath,
        ConfigKind::V111,
        ConfigKind::V110TwoNeighbor,
        ConfigKind::TwoV110ThreeNeighbor,
    ];
    pub const T2: [ConfigKind; 9] = [
        ConfigKind::MinDegree1,
        ConfigKind::LongPath,
        ConfigKind::V111,
        ConfigKind::V110LowEnd,
        ConfigKind::V110LowNeighbor,
        ConfigKind::V100TwoThreeNeighbors,
        ConfigKind::V100MixedLowEnd,
        ConfigKind::V1111LowEnd,
        ConfigKind::V1110LowEnd,
    ];

    pub fn for_variant(variant: Variant) -> &'static [ConfigKind] {
        match variant {
            Variant::T1 => &Self::T1,
            Variant::T2 => &Self::T2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ConfigKind::MinDegree1 => "min-degree-1",
            ConfigKind::LongPath => "2+-path",
            ConfigKind::V111 => "(1,1,1)-vertex",
            ConfigKind::V110TwoNeighbor => "3-vertex with 2-neighbor and (1,1,0)-neighbor",
            ConfigKind::TwoV110ThreeNeighbor => "3-vertex with two (1,1,0)-neighbors and a 3-neighbor",
            ConfigKind::V110LowEnd => "(1,1,0)-vertex with a (D-1)^- endvertex",
            ConfigKind::V110LowNeighbor => "(1,1,0)-vertex with a (D-2)^- neighbor",
            ConfigKind::V100TwoThreeNeighbors => "(1,0,0)-vertex with two 3-neighbors",
            ConfigKind::V100MixedLowEnd => "(1,0,0)-vertex with 3- and 4-neighbor and a (D-1)^- endvertex",
            ConfigKind::V1111LowEnd => "(1,1,1,1)-vertex with a (D-1)^- endvertex",
            ConfigKind::V1110LowEnd => "(1,1,1,0)-vertex with a 3-neighbor and a (D-2)^- endvertex",
        }
    }
}

impl fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One occurrence of a configuration with its named vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub kind: ConfigKind,
    /// Named vertices in a fixed per-kind order. Names may share a vertex
    /// when `shared` is set.
    pub witnesses: Vec<(&'static str, VertexId)>,
    /// For the two (1,1,0) kinds of the first theorem: a 2-vertex is
    /// common to the two named 3-vertices (`w1` for [`ConfigKind::V110TwoNeighbor`],
    /// `v1 = w1` for [`ConfigKind::TwoV110ThreeNeighbor`]).
    pub shared: bool,
}

impl Configuration {
    fn new(kind: ConfigKind, witnesses: Vec<(&'static str, VertexId)>) -> Self {
        Configuration { kind, witnesses, shared: false }
    }

    /// Vertex bound to `name`. Panics on a name the kind does not use.
    pub fn get(&self, name: &str) -> VertexId {
        self.witnesses
            .iter()
            .find(|(n, _)| *n == name)
            .map(|&(_, v)| v)
            .unwrap_or_else(|| panic!("{:?} has no witness `{name}`", self.kind))
    }

    fn key(&self) -> Vec<VertexId> {
        self.witnesses.iter().map(|&(_, v)| v).collect()
    }

    /// Renames every witness through `map` (e.g. back to a host graph).
    pub fn remap(&self, map: &[VertexId]) -> Configuration {
        Configuration {
            kind: self.kind,
            witnesses: self.witnesses.iter().map(|&(n, v)| (n, map[v])).collect(),
            shared: self.shared,
        }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        for (n, v) in &self.witnesses {
            write!(f, " {n}={v}")?;
        }
        if self.shared {
            write!(f, " (shared 2-neighbor)")?;
        }
        Ok(())
    }
}

/// Signatures of all vertices plus the Δ used for thresholds.
struct Scan<'a> {
    g: &'a Graph,
    sig: Vec<PathSignature>,
    delta: i64,
}

impl<'a> Scan<'a> {
    fn new(g: &'a Graph, delta: usize) -> Self {
        let sig = g.vertices().map(|v| classify_vertex(g, v)).collect();
        Scan { g, sig, delta: delta as i64 }
    }

    fn deg(&self, v: VertexId) -> i64 {
        self.g.degree(v) as i64
    }

    fn two_neighbors(&self, v: VertexId) -> Vec<VertexId> {
        self.sig[v].ones().map(|e| e.neighbor).collect()
    }

    fn matches(&self, kind: ConfigKind) -> Vec<Configuration> {
        let g = self.g;
        let mut out = Vec::new();
        match kind {
            ConfigKind::MinDegree1 => {
                out.extend(
                    g.vertices().filter(|&v| g.degree(v) <= 1).map(|v| Configuration::new(kind, vec![("v", v)])),
                );
            }
            ConfigKind::LongPath => {
                for v in g.vertices().filter(|&v| g.degree(v) == 2) {
                    for &w in g.neighbors(v).iter().filter(|&&w| g.degree(w) == 2) {
                        let u = other_neighbor(g, v, w);
                        let x = other_neighbor(g, w, v);
                        out.push(Configuration::new(kind, vec![("u", u), ("v", v), ("w", w), ("x", x)]));
                    }
                }
            }
            ConfigKind::V111 => {
                for u in g.vertices().filter(|&u| self.sig[u].is(3, 0)) {
                    let n = g.neighbors(u);
                    out.push(Configuration::new(kind, vec![("u", u), ("u1", n[0]), ("u2", n[1]), ("u3", n[2])]));
                }
            }
            ConfigKind::V110TwoNeighbor => {
                for u in g.vertices().filter(|&u| g.degree(u) == 3) {
                    for &v in g.neighbors(u).iter().filter(|&&v| g.degree(v) == 2) {
                        for &w in g.neighbors(u).iter().filter(|&&w| w != v && self.sig[w].is(2, 1)) {
                            let mut ws = self.two_neighbors(w);
                            let shared = ws.iter().any(|&x| g.has_edge(u, x));
                            if shared && !g.has_edge(u, ws[0]) {
                                ws.swap(0, 1);
                            }
                            let mut c = Configuration::new(
                                kind,
                                vec![("u", u), ("v", v), ("w", w), ("w1", ws[0]), ("w2", ws[1])],
                            );
                            c.shared = shared;
                            out.push(c);
                        }
                    }
                }
            }
            ConfigKind::TwoV110ThreeNeighbor => {
                for u in g.vertices().filter(|&u| g.degree(u) == 3) {
                    let n = g.neighbors(u);
                    for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
                        let (v, w, t) = (n[i], n[j], n[k]);
                        if !(self.sig[v].is(2, 1) && self.sig[w].is(2, 1) && g.degree(t) == 3) {
                            continue;
                        }
                        let mut vs = self.two_neighbors(v);
                        let mut ws = self.two_neighbors(w);
                        let common = vs.iter().copied().filter(|x| ws.contains(x)).min();
                        if let Some(c) = common {
                            if vs[0] != c {
                                vs.swap(0, 1);
                            }
                            if ws[0] != c {
                                ws.swap(0, 1);
                            }
                        }
                        let mut cfg = Configuration::new(
                            kind,
                            vec![
                                ("u", u),
                                ("v", v),
                                ("w", w),
                                ("t", t),
                                ("v1", vs[0]),
                                ("v2", vs[1]),
                                ("w1", ws[0]),
                                ("w2", ws[1]),
                            ],
                        );
                        cfg.shared = common.is_some();
                        out.push(cfg);
                    }
                }
            }
            ConfigKind::V110LowEnd => {
                for u in g.vertices().filter(|&u| self.sig[u].is(2, 1)) {
                    let ones: Vec<&PathEntry> = self.sig[u].ones().collect();
                    let t = self.sig[u].zeros().next().expect("one 0-entry").neighbor;
                    for (a, b) in [(0, 1), (1, 0)] {
                        let x = ones[b].end.expect("1-path end");
                        if self.deg(x) <= self.delta - 1 {
                            out.push(Configuration::new(
                                kind,
                                vec![("u", u), ("v", ones[a].neighbor), ("w", ones[b].neighbor), ("x", x), ("t", t)],
                            ));
                        }
                    }
                }
            }
            ConfigKind::V110LowNeighbor => {
                for u in g.vertices().filter(|&u| self.sig[u].is(2, 1)) {
                    let t = self.sig[u].zeros().next().expect("one 0-entry").neighbor;
                    if self.deg(t) <= self.delta - 2 {
                        let vw = self.two_neighbors(u);
                        out.push(Configuration::new(kind, vec![("u", u), ("v", vw[0]), ("w", vw[1]), ("t", t)]));
                    }
                }
            }
            ConfigKind::V100TwoThreeNeighbors => {
                for u in g.vertices().filter(|&u| self.sig[u].is(1, 2)) {
                    let one = self.sig[u].ones().next().expect("one 1-entry");
                    let ts: Vec<VertexId> = self.sig[u].zeros().map(|e| e.neighbor).collect();
                    if ts.iter().all(|&t| g.degree(t) == 3) {
                        out.push(Configuration::new(
                            kind,
                            vec![
                                ("u", u),
                                ("v", one.neighbor),
                                ("x", one.end.expect("1-path end")),
                                ("t1", ts[0]),
                                ("t2", ts[1]),
                            ],
                        ));
                    }
                }
            }
            ConfigKind::V100MixedLowEnd => {
                for u in g.vertices().filter(|&u| self.sig[u].is(1, 2)) {
                    let one = self.sig[u].ones().next().expect("one 1-entry");
                    let x = one.end.expect("1-path end");
                    let mut ts: Vec<VertexId> = self.sig[u].zeros().map(|e| e.neighbor).collect();
                    ts.sort_by_key(|&t| g.degree(t));
                    if g.degree(ts[0]) == 3 && g.degree(ts[1]) == 4 && self.deg(x) <= self.delta - 1 {
                        out.push(Configuration::new(
                            kind,
                            vec![("u", u), ("v", one.neighbor), ("x", x), ("t3", ts[0]), ("t4", ts[1])],
                        ));
                    }
                }
            }
            ConfigKind::V1111LowEnd => {
                for u in g.vertices().filter(|&u| self.sig[u].is(4, 0)) {
                    let ones: Vec<&PathEntry> = self.sig[u].ones().collect();
                    for (i, last) in ones.iter().enumerate() {
                        let x = last.end.expect("1-path end");
                        if self.deg(x) > self.delta - 1 {
                            continue;
                        }
                        let rest: Vec<VertexId> =
                            ones.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, e)| e.neighbor).collect();
                        out.push(Configuration::new(
                            kind,
                            vec![
                                ("u", u),
                                ("v1", rest[0]),
                                ("v2", rest[1]),
                                ("v3", rest[2]),
                                ("v4", last.neighbor),
                                ("x", x),
                            ],
                        ));
                    }
                }
            }
            ConfigKind::V1110LowEnd => {
                for u in g.vertices().filter(|&u| self.sig[u].is(3, 1)) {
                    let t = self.sig[u].zeros().next().expect("one 0-entry").neighbor;
                    if g.degree(t) != 3 {
                        continue;
                    }
                    let ones: Vec<&PathEntry> = self.sig[u].ones().collect();
                    for (i, last) in ones.iter().enumerate() {
                        let x = last.end.expect("1-path end");
                        if self.deg(x) > self.delta - 2 {
                            continue;
                        }
                        let rest: Vec<VertexId> =
                            ones.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, e)| e.neighbor).collect();
                        out.push(Configuration::new(
                            kind,
                            vec![("u", u), ("v1", rest[0]), ("v2", rest[1]), ("v3", last.neighbor), ("t", t), ("x", x)],
                        ));
                    }
                }
            }
        }
        out
    }

    fn first(&self, kind: ConfigKind) -> Option<Configuration> {
        self.matches(kind).into_iter().min_by_key(Configuration::key)
    }
}

/// First configuration of `variant` present in `g`, scanning kinds in
/// order and, within a kind, taking the lexicographically smallest tuple of
/// witness ids. `delta` is the maximum degree of the original input graph.
pub fn find_configuration(g: &Graph, variant: Variant, delta: usize) -> Option<Configuration> {
    let scan = Scan::new(g, delta);
    ConfigKind::for_variant(variant).iter().find_map(|&k| scan.first(k))
}

/// First occurrence of every kind of `variant` present in `g`.
pub fn find_all(g: &Graph, variant: Variant, delta: usize) -> Vec<Configuration> {
    let scan = Scan::new(g, delta);
    ConfigKind::for_variant(variant).iter().filter_map(|&k| scan.first(k)).collect()
}

/// Occurrence of one particular kind.
pub fn find_kind(g: &Graph, kind: ConfigKind, delta: usize) -> Option<Configuration> {
    Scan::new(g, delta).first(kind)
}

/// Message when `delta` is below the maximum degree of `g`.
pub fn delta_warning(g: &Graph, delta: usize) -> Option<String> {
    let actual = g.max_degree().unwrap_or(0);
    (actual > delta).then(|| format!("warning: Δ = {delta} is below the maximum degree {actual} of the graph"))
}

/// Re-checks a configuration against `g` from its witnesses alone.
pub fn verify_configuration(g: &Graph, delta: usize, c: &Configuration) -> bool {
    let d = |v: VertexId| g.degree(v) as i64;
    let delta = delta as i64;
    let adj = |a: VertexId, b: VertexId| g.has_edge(a, b);
    let w = |n: &str| c.get(n);
    // `mid` is a 2-vertex on the path `a mid end` and `end` is not a 2-vertex.
    let one_path = |a: VertexId, mid: VertexId, end: VertexId| {
        d(mid) == 2 && adj(a, mid) && adj(mid, end) && end != a && d(end) != 2
    };
    let distinct = |vs: &[VertexId]| {
        let mut s = vs.to_vec();
        s.sort_unstable();
        s.windows(2).all(|p| p[0] != p[1])
    };
    let end_of = |a: VertexId, mid: VertexId| -> Option<VertexId> {
        (d(mid) == 2 && adj(a, mid)).then(|| other_neighbor(g, mid, a))
    };
    // (1,...,1,0,...,0) with the given named 2-neighbors; the rest of the
    // neighbors must not be 2-vertices.
    let shape = |u: VertexId, twos: &[VertexId], deg: i64| {
        d(u) == deg
            && distinct(twos)
            && twos.iter().all(|&m| end_of(u, m).is_some_and(|e| one_path(u, m, e)))
            && g.neighbors(u).iter().filter(|x| !twos.contains(x)).all(|&x| d(x) != 2)
    };
    match c.kind {
        ConfigKind::MinDegree1 => d(w("v")) <= 1,
        ConfigKind::LongPath => {
            let (u, v, x, y) = (w("u"), w("v"), w("w"), w("x"));
            d(v) == 2 && d(x) == 2 && adj(u, v) && adj(v, x) && adj(x, y) && u != x && y != v
        }
        ConfigKind::V111 => shape(w("u"), &[w("u1"), w("u2"), w("u3")], 3),
        ConfigKind::V110TwoNeighbor => {
            let (u, v, x, x1, x2) = (w("u"), w("v"), w("w"), w("w1"), w("w2"));
            let shared = adj(u, x1) || adj(u, x2);
            d(u) == 3
                && d(v) == 2
                && adj(u, v)
                && adj(u, x)
                && x != v
                && shape(x, &[x1, x2], 3)
                && shared == c.shared
                && (!c.shared || adj(u, x1))
        }
        ConfigKind::TwoV110ThreeNeighbor => {
            let (u, v, x, t) = (w("u"), w("v"), w("w"), w("t"));
            let (v1, v2, x1, x2) = (w("v1"), w("v2"), w("w1"), w("w2"));
            d(u) == 3
                && distinct(&[v, x, t])
                && adj(u, v)
                && adj(u, x)
                && adj(u, t)
                && d(t) == 3
                && shape(v, &[v1, v2], 3)
                && shape(x, &[x1, x2], 3)
                && (c.shared == (v1 == x1))
                && (c.shared || (v1 != x2 && v2 != x1 && v2 != x2))
        }
        ConfigKind::V110LowEnd => {
            let (u, v, x, e, t) = (w("u"), w("v"), w("w"), w("x"), w("t"));
            shape(u, &[v, x], 3) && adj(u, t) && end_of(u, x) == Some(e) && d(e) <= delta - 1
        }
        ConfigKind::V110LowNeighbor => {
            let (u, v, x, t) = (w("u"), w("v"), w("w"), w("t"));
            shape(u, &[v, x], 3) && adj(u, t) && t != v && t != x && d(t) <= delta - 2
        }
        ConfigKind::V100TwoThreeNeighbors => {
            let (u, v, e, t1, t2) = (w("u"), w("v"), w("x"), w("t1"), w("t2"));
            shape(u, &[v], 3)
                && end_of(u, v) == Some(e)
                && distinct(&[v, t1, t2])
                && adj(u, t1)
                && adj(u, t2)
                && d(t1) == 3
                && d(t2) == 3
        }
        ConfigKind::V100MixedLowEnd => {
            let (u, v, e, t3, t4) = (w("u"), w("v"), w("x"), w("t3"), w("t4"));
            shape(u, &[v], 3)
                && end_of(u, v) == Some(e)
                && d(e) <= delta - 1
                && adj(u, t3)
                && adj(u, t4)
                && d(t3) == 3
                && d(t4) == 4
        }
        ConfigKind::V1111LowEnd => {
            let (u, e) = (w("u"), w("x"));
            let vs = [w("v1"), w("v2"), w("v3"), w("v4")];
            shape(u, &vs, 4) && end_of(u, vs[3]) == Some(e) && d(e) <= delta - 1
        }
        ConfigKind::V1110LowEnd => {
            let (u, t, e) = (w("u"), w("t"), w("x"));
            let vs = [w("v1"), w("v2"), w("v3")];
            shape(u, &vs, 4) && adj(u, t) && d(t) == 3 && end_of(u, vs[2]) == Some(e) && d(e) <= delta - 2
        }
    }
}
