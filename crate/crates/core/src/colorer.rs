//! Recursive 2-distance list coloring by reducible configurations.
//!
//! Each level works on the subgraph `G[A]` induced by the live vertex set
//! `A`:
//!
//! 1. split `G[A]` into connected components and color each on its own;
//! 2. a component with at most `base_threshold` vertices goes to the exact
//!    oracle;
//! 3. otherwise find a configuration, delete its vertex set `S`, color
//!    `G[A - S]` recursively, then extend to `S` vertex by vertex. Colors
//!    forbidden for an extension vertex are those of colored vertices at
//!    distance at most 2 in `G[A]`.
//!
//! Δ, and with it the list size and every degree threshold, always refers
//! to the input graph: deleting vertices may lower the maximum degree of
//! `G[A]` but never the number of colors available.

use std::fmt;

use thiserror::Error;

use crate::density::{mad_exact, Rational};
use crate::graph::{Color, Coloring, Graph, ListAssignment, VertexId, VertexMask};
use crate::oracle::{color_conflict_graph, DEFAULT_CAP};
use crate::structure::{find_configuration, ConfigKind, Configuration};
use crate::Variant;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColorError {
    #[error("{lists} lists for a graph on {n} vertices")]
    ListCount { n: usize, lists: usize },
    #[error("list of vertex {vertex} has {size} colors, Δ+3 = {need} required")]
    ListTooSmall { vertex: VertexId, size: usize, need: usize },
    #[error("no reducible configuration in a component of {size} vertices (oracle cap {cap})")]
    NoConfiguration { size: usize, cap: usize },
    #[error("no color left for vertex {vertex} while extending {kind:?}")]
    Stuck { vertex: VertexId, kind: Option<ConfigKind> },
    #[error("{kind:?} is not a configuration of variant {variant}")]
    UnknownKind { kind: ConfigKind, variant: Variant },
    #[error("vertex {vertex} has {have} available colors, the (1,1,0) case split needs {need}")]
    Precondition { vertex: VertexId, have: usize, need: usize },
}

/// Tuning knobs for [`color_two_distance`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColorerConfig {
    /// Components with at most this many vertices are colored exactly.
    pub base_threshold: usize,
    /// Largest component handed to the oracle when no configuration exists.
    pub oracle_cap: usize,
}

impl Default for ColorerConfig {
    fn default() -> Self {
        ColorerConfig { base_threshold: 12, oracle_cap: DEFAULT_CAP }
    }
}

/// Named vertices of the (1,1,0) case split: `u` is a 3-vertex adjacent to
/// `v` and to the (1,1,0)-vertex `w`, whose 2-neighbors are `w1`, `w2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Case110 {
    pub u: VertexId,
    pub v: VertexId,
    pub w: VertexId,
    pub w1: VertexId,
    pub w2: VertexId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    /// Smallest available color.
    Greedy(VertexId),
    /// Colors all five vertices by the two-branch argument.
    CaseSplit110(Case110),
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Greedy(v) => write!(f, "greedy({v})"),
            Step::CaseSplit110(c) => {
                write!(f, "case-split-110(u={}, v={}, w={}, w1={}, w2={})", c.u, c.v, c.w, c.w1, c.w2)
            }
        }
    }
}

/// How a configuration is removed and put back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionPlan {
    pub config: Configuration,
    /// Vertices removed before recursing.
    pub deleted: Vec<VertexId>,
    /// Vertices colored by the recursion whose color is erased and chosen
    /// again during extension.
    pub uncolor: Vec<VertexId>,
    pub extension: Vec<Step>,
}

fn dedup_keep_order(vs: &[VertexId]) -> Vec<VertexId> {
    let mut out: Vec<VertexId> = Vec::with_capacity(vs.len());
    for &v in vs {
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

fn greedy_plan(config: &Configuration, deleted: &[&str], order: &[&str]) -> ReductionPlan {
    let get = |names: &[&str]| dedup_keep_order(&names.iter().map(|n| config.get(n)).collect::<Vec<_>>());
    ReductionPlan {
        config: config.clone(),
        deleted: get(deleted),
        uncolor: Vec::new(),
        extension: get(order).into_iter().map(Step::Greedy).collect(),
    }
}

/// Deletion set and extension order for a configuration.
pub fn build_plan(config: &Configuration, variant: Variant) -> Result<ReductionPlan, ColorError> {
    let kind = config.kind;
    if !ConfigKind::for_variant(variant).contains(&kind) {
        return Err(ColorError::UnknownKind { kind, variant });
    }
    let plan = match kind {
        ConfigKind::MinDegree1 => greedy_plan(config, &["v"], &["v"]),
        ConfigKind::LongPath => greedy_plan(config, &["v", "w"], &["v", "w"]),
        ConfigKind::V111 => greedy_plan(config, &["u", "u1", "u2", "u3"], &["u1", "u2", "u3", "u"]),
        ConfigKind::V110TwoNeighbor if config.shared => greedy_plan(config, &["u", "w", "w1"], &["u", "w", "w1"]),
        ConfigKind::V110TwoNeighbor => {
            let mut p = greedy_plan(config, &["u", "v", "w", "w1", "w2"], &[]);
            p.extension = vec![Step::CaseSplit110(Case110 {
                u: config.get("u"),
                v: config.get("v"),
                w: config.get("w"),
                w1: config.get("w1"),
                w2: config.get("w2"),
            })];
            p
        }
        ConfigKind::TwoV110ThreeNeighbor if config.shared => {
            greedy_plan(config, &["u", "v", "w", "v1", "v2", "w2"], &["u", "v", "w", "v2", "w2", "v1"])
        }
        ConfigKind::TwoV110ThreeNeighbor => {
            // v stays deleted while v1 and v2 are kept, so the recursion
            // may give v1 and v2 one color; v1 is recolored first.
            let mut p = greedy_plan(config, &["u", "v", "w", "w1", "w2"], &["v1"]);
            p.uncolor = vec![config.get("v1")];
            p.extension.push(Step::CaseSplit110(Case110 {
                u: config.get("u"),
                v: config.get("v"),
                w: config.get("w"),
                w1: config.get("w1"),
                w2: config.get("w2"),
            }));
            p
        }
        ConfigKind::V110LowEnd => greedy_plan(config, &["u", "v", "w"], &["u", "v", "w"]),
        ConfigKind::V110LowNeighbor => greedy_plan(config, &["u", "v", "w"], &["v", "w", "u"]),
        ConfigKind::V100TwoThreeNeighbors => {
            let mut p = greedy_plan(config, &["v"], &["v", "u"]);
            p.uncolor = vec![config.get("u")];
            p
        }
        ConfigKind::V100MixedLowEnd => {
            let mut p = greedy_plan(config, &["v"], &["u", "v"]);
            p.uncolor = vec![config.get("u")];
            p
        }
        ConfigKind::V1111LowEnd => greedy_plan(config, &["u", "v1", "v2", "v3", "v4"], &["v1", "v2", "v3", "v4", "u"]),
        ConfigKind::V1110LowEnd => greedy_plan(config, &["u", "v1", "v2", "v3"], &["v1", "v2", "u", "v3"]),
    };
    Ok(plan)
}

/// The graph seen through a live-vertex mask.
struct View<'a> {
    g: &'a Graph,
    alive: &'a VertexMask,
}

impl View<'_> {
    /// Colors of colored live vertices within distance 2 of `v`, sorted.
    fn seen(&self, v: VertexId, coloring: &Coloring) -> Vec<Color> {
        let mut out = Vec::new();
        for &a in self.g.neighbors(v).iter().filter(|&&a| self.alive.contains(a)) {
            out.extend(coloring.get(a));
            for &b in self.g.neighbors(a) {
                if b != v && self.alive.contains(b) {
                    out.extend(coloring.get(b));
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    fn within_two(&self, a: VertexId, b: VertexId) -> bool {
        let alive_nbrs = |x: VertexId| self.g.neighbors(x).iter().copied().filter(|&y| self.alive.contains(y));
        alive_nbrs(a).any(|y| y == b || self.g.has_edge(y, b))
    }

    fn available(&self, v: VertexId, lists: &ListAssignment, coloring: &Coloring) -> Vec<Color> {
        let seen = self.seen(v, coloring);
        lists.list(v).iter().copied().filter(|c| seen.binary_search(c).is_err()).collect()
    }
}

/// Colors `v` with the smallest entry of `allowed` not seen at distance 2.
fn color_from(
    view: &View<'_>,
    allowed: &[Color],
    v: VertexId,
    coloring: &mut Coloring,
    kind: Option<ConfigKind>,
) -> Result<Color, ColorError> {
    let seen = view.seen(v, coloring);
    let c = allowed
        .iter()
        .copied()
        .find(|c| seen.binary_search(c).is_err())
        .ok_or(ColorError::Stuck { vertex: v, kind })?;
    coloring.set(v, c);
    Ok(c)
}

fn case_110(
    view: &View<'_>,
    lists: &ListAssignment,
    coloring: &mut Coloring,
    w: &Case110,
    kind: Option<ConfigKind>,
) -> Result<Vec<(VertexId, Color)>, ColorError> {
    let names = [w.u, w.v, w.w, w.w1, w.w2];
    let need = [2, 2, 4, 3, 3];
    let mut avail: Vec<Vec<Color>> = Vec::with_capacity(5);
    for (&x, &k) in names.iter().zip(&need) {
        let a = view.available(x, lists, coloring);
        if a.len() < k {
            return Err(ColorError::Precondition { vertex: x, have: a.len(), need: k });
        }
        avail.push(a);
    }
    if view.within_two(w.v, w.w1) || view.within_two(w.v, w.w2) {
        return search_five(view, &names, &avail, coloring, kind);
    }
    avail.iter_mut().zip(&need).for_each(|(a, &k)| a.truncate(k));
    let [lu, lv, lw, lw1, lw2] = [&avail[0], &avail[1], &avail[2], &avail[3], &avail[4]];
    let mut out = Vec::with_capacity(5);
    if lu != lv {
        let c = *lu.iter().find(|c| !lv.contains(c)).expect("lists differ and have equal size");
        coloring.set(w.u, c);
        out.push((w.u, c));
        for (x, l) in [(w.w1, lw1), (w.w2, lw2), (w.w, lw), (w.v, lv)] {
            out.push((x, color_from(view, l, x, coloring, kind)?));
        }
    } else {
        let c = *lw1.iter().find(|c| !lu.contains(c)).expect("|L(w1)| = 3 > |L(u)| = 2");
        coloring.set(w.w1, c);
        out.push((w.w1, c));
        let d = *lw.iter().find(|&&d| d != c && !lu.contains(&d)).expect("|L(w)| = 4 > |L(u) + {c}| = 3");
        coloring.set(w.w, d);
        out.push((w.w, d));
        for (x, l) in [(w.w2, lw2), (w.u, lu), (w.v, lv)] {
            out.push((x, color_from(view, l, x, coloring, kind)?));
        }
    }
    Ok(out)
}

/// Backtracking over the five vertices in the order given, colors
/// ascending. Used when `v` shares a far end with `w1` or `w2`: the extra
/// conflict breaks the counting behind the case split, but the untrimmed
/// lists are larger by the same amount.
fn search_five(
    view: &View<'_>,
    names: &[VertexId; 5],
    avail: &[Vec<Color>],
    coloring: &mut Coloring,
    kind: Option<ConfigKind>,
) -> Result<Vec<(VertexId, Color)>, ColorError> {
    fn go(view: &View<'_>, names: &[VertexId; 5], avail: &[Vec<Color>], i: usize, chosen: &mut Vec<Color>) -> bool {
        if i == names.len() {
            return true;
        }
        for &c in &avail[i] {
            if (0..i).any(|j| chosen[j] == c && view.within_two(names[i], names[j])) {
                continue;
            }
            chosen.push(c);
            if go(view, names, avail, i + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::with_capacity(5);
    if !go(view, names, avail, 0, &mut chosen) {
        return Err(ColorError::Stuck { vertex: names[chosen.len()], kind });
    }
    Ok(names
        .iter()
        .zip(chosen)
        .map(|(&x, c)| {
            coloring.set(x, c);
            (x, c)
        })
        .collect())
}

/// Colors the five vertices of a (1,1,0) configuration against `g`.
///
/// Every colored vertex of `partial` within distance 2 counts as a
/// constraint. Available lists are trimmed to sizes 2, 2, 4, 3, 3 for
/// `u, v, w, w1, w2`, keeping the smallest colors. If `L(u) != L(v)`, `u`
/// takes a color outside `L(v)` and the rest follow in the order
/// `w1, w2, w, v`; otherwise `w1` takes a color outside `L(u)`, `w` one
/// outside `L(u)` and that color, then `w2, u, v`.
///
/// If `v` is within distance 2 of `w1` or `w2` (a shared far end), the
/// five vertices are instead colored by exhaustive search over their
/// untrimmed lists.
pub fn extend_case_110(
    g: &Graph,
    lists: &ListAssignment,
    partial: &Coloring,
    witnesses: &Case110,
) -> Result<Coloring, ColorError> {
    let alive = VertexMask::full(g.n());
    let view = View { g, alive: &alive };
    let mut coloring = partial.clone();
    case_110(&view, lists, &mut coloring, witnesses, None)?;
    Ok(coloring)
}

fn extend(
    view: &View<'_>,
    lists: &ListAssignment,
    plan: &ReductionPlan,
    coloring: &mut Coloring,
) -> Result<Vec<(VertexId, Color)>, ColorError> {
    plan.uncolor.iter().for_each(|&v| coloring.clear(v));
    let kind = Some(plan.config.kind);
    let mut colors = Vec::new();
    for step in &plan.extension {
        match step {
            Step::Greedy(v) => colors.push((*v, color_from(view, lists.list(*v), *v, coloring, kind)?)),
            Step::CaseSplit110(w) => colors.extend(case_110(view, lists, coloring, w, kind)?),
        }
    }
    Ok(colors)
}

/// Puts a configuration back into a coloring of `g - plan.deleted`: erases
/// `plan.uncolor`, then runs the extension steps against every colored
/// vertex of `g`.
pub fn extend_plan(
    g: &Graph,
    lists: &ListAssignment,
    plan: &ReductionPlan,
    partial: &Coloring,
) -> Result<Coloring, ColorError> {
    let alive = VertexMask::full(g.n());
    let mut coloring = partial.clone();
    extend(&View { g, alive: &alive }, lists, plan, &mut coloring)?;
    Ok(coloring)
}

/// Why a set of vertices was colored by the oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseReason {
    /// Component at or below the base threshold.
    Small,
    /// No configuration found; the oracle was used as a fallback.
    NoConfiguration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceEvent {
    Base { vertices: Vec<VertexId>, colors: Vec<Color>, reason: BaseReason },
    Reduction { plan: ReductionPlan, colors: Vec<(VertexId, Color)> },
}

/// Coloring events in the order they happened.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ColorerTrace {
    pub events: Vec<TraceEvent>,
}

impl ColorerTrace {
    /// Rebuilds the final coloring from the events alone.
    pub fn replay(&self, n: usize) -> Coloring {
        let mut c = Coloring::uncolored(n);
        for e in &self.events {
            match e {
                TraceEvent::Base { vertices, colors, .. } => {
                    vertices.iter().zip(colors).for_each(|(&v, &col)| c.set(v, col));
                }
                TraceEvent::Reduction { plan, colors } => {
                    plan.uncolor.iter().for_each(|&v| c.clear(v));
                    colors.iter().for_each(|&(v, col)| c.set(v, col));
                }
            }
        }
        c
    }

    pub fn reductions(&self) -> impl Iterator<Item = &ReductionPlan> {
        self.events.iter().filter_map(|e| match e {
            TraceEvent::Reduction { plan, .. } => Some(plan),
            _ => None,
        })
    }
}

/// Whether the input meets the hypotheses of its variant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisReport {
    pub variant: Variant,
    pub mad: Rational,
    pub delta: usize,
    pub mad_ok: bool,
    pub delta_ok: bool,
}

impl HypothesisReport {
    pub fn check(g: &Graph, variant: Variant) -> Self {
        let delta = g.max_degree().unwrap_or(0);
        let mad = if g.is_empty() { Rational::default() } else { mad_exact(g).expect("nonempty").value };
        HypothesisReport {
            variant,
            mad_ok: mad < variant.mad_threshold(),
            delta_ok: delta >= variant.min_delta(),
            mad,
            delta,
        }
    }

    pub fn holds(&self) -> bool {
        self.mad_ok && self.delta_ok
    }
}

#[derive(Clone, Debug)]
pub struct ColorOutcome {
    pub coloring: Coloring,
    pub trace: ColorerTrace,
    pub hypotheses: HypothesisReport,
}

struct Colorer<'a> {
    g: &'a Graph,
    lists: &'a ListAssignment,
    variant: Variant,
    delta: usize,
    config: ColorerConfig,
    coloring: Coloring,
    trace: ColorerTrace,
}

impl Colorer<'_> {
    fn solve(&mut self, alive: VertexMask) -> Result<(), ColorError> {
        let comps = self.g.components_within(&alive);
        if comps.len() > 1 {
            for comp in comps {
                self.solve(VertexMask::from_vertices(self.g.n(), &comp))?;
            }
            return Ok(());
        }
        if alive.is_empty() {
            return Ok(());
        }
        if alive.len() <= self.config.base_threshold {
            return self.base(&alive, BaseReason::Small);
        }
        let (sub, back) = self.g.induced(&alive);
        let Some(found) = find_configuration(&sub, self.variant, self.delta) else {
            if alive.len() <= self.config.oracle_cap {
                return self.base(&alive, BaseReason::NoConfiguration);
            }
            return Err(ColorError::NoConfiguration { size: alive.len(), cap: self.config.oracle_cap });
        };
        let plan = build_plan(&found.remap(&back), self.variant)?;
        let mut rest = alive.clone();
        plan.deleted.iter().for_each(|&v| rest.remove(v));
        self.solve(rest)?;

        let view = View { g: self.g, alive: &alive };
        let colors = extend(&view, self.lists, &plan, &mut self.coloring)?;
        self.trace.events.push(TraceEvent::Reduction { plan, colors });
        Ok(())
    }

    fn base(&mut self, alive: &VertexMask, reason: BaseReason) -> Result<(), ColorError> {
        let (sub, back) = self.g.induced(alive);
        let lists: Vec<Vec<Color>> = back.iter().map(|&v| self.lists.list(v).to_vec()).collect();
        let colors =
            color_conflict_graph(&sub.square(), &lists).ok_or(ColorError::Stuck { vertex: back[0], kind: None })?;
        for (&v, &c) in back.iter().zip(&colors) {
            self.coloring.set(v, c);
        }
        self.trace.events.push(TraceEvent::Base { vertices: back, colors, reason });
        Ok(())
    }
}

/// Colors `g` from `lists` so that vertices at distance at most 2 differ.
///
/// Every list must hold at least Δ(g)+3 colors. The hypotheses of
/// `variant` are evaluated and reported but not enforced; on inputs that
/// violate them the colorer falls back to the oracle for components of at
/// most `config.oracle_cap` vertices and fails with
/// [`ColorError::NoConfiguration`] beyond that.
pub fn color_two_distance(
    g: &Graph,
    lists: &ListAssignment,
    variant: Variant,
    config: ColorerConfig,
) -> Result<ColorOutcome, ColorError> {
    if lists.len() != g.n() {
        return Err(ColorError::ListCount { n: g.n(), lists: lists.len() });
    }
    let delta = g.max_degree().unwrap_or(0);
    let need = delta + 3;
    if let Some(v) = g.vertices().find(|&v| lists.list(v).len() < need) {
        return Err(ColorError::ListTooSmall { vertex: v, size: lists.list(v).len(), need });
    }
    let hypotheses = HypothesisReport::check(g, variant);
    let mut run = Colorer {
        g,
        lists,
        variant,
        delta,
        config,
        coloring: Coloring::uncolored(g.n()),
        trace: ColorerTrace::default(),
    };
    run.solve(VertexMask::full(g.n()))?;
    Ok(ColorOutcome { coloring: run.coloring, trace: run.trace, hypotheses })
}
