//! The detector against a brute-force matcher that tries every vertex tuple
//! and checks each pattern from degrees and adjacency alone. Exhaustive over
//! connected graphs up to 8 vertices, sampled at 9.

#![allow(clippy::int_plus_one)]

use std::collections::BTreeSet;

use twodist::structure::{find_all, verify_configuration, ConfigKind};
use twodist::testkit::{connected_graphs, random_graph};
use twodist::{Graph, Variant};

struct Brute<'a> {
    g: &'a Graph,
    delta: usize,
}

impl Brute<'_> {
    fn adj(&self, a: usize, b: usize) -> bool {
        self.g.has_edge(a, b)
    }

    fn d(&self, v: usize) -> usize {
        self.g.degree(v)
    }

    fn all(&self) -> std::ops::Range<usize> {
        0..self.g.n()
    }

    /// `u a x` is a 1-path: `a` is a 2-vertex between `u` and a non-2 vertex `x`.
    fn one_path(&self, u: usize, a: usize, x: usize) -> bool {
        x != u && self.adj(u, a) && self.adj(a, x) && self.d(a) == 2 && self.d(x) != 2
    }

    /// Neighbors of `u` starting a 1-path, and neighbors of degree not 2.
    fn counts(&self, u: usize) -> (usize, usize, usize) {
        let (mut ones, mut zeros, mut long) = (0, 0, 0);
        for a in self.all().filter(|&a| self.adj(u, a)) {
            if self.d(a) != 2 {
                zeros += 1;
            } else if self.all().any(|x| self.one_path(u, a, x)) {
                ones += 1;
            } else {
                long += 1;
            }
        }
        (ones, zeros, long)
    }

    fn is(&self, u: usize, ones: usize, zeros: usize) -> bool {
        self.counts(u) == (ones, zeros, 0)
    }

    fn occurs(&self, kind: ConfigKind) -> bool {
        let all = || self.all();
        let delta = self.delta;
        match kind {
            ConfigKind::MinDegree1 => all().any(|v| self.d(v) <= 1),
            ConfigKind::LongPath => all().any(|v| all().any(|w| self.adj(v, w) && self.d(v) == 2 && self.d(w) == 2)),
            ConfigKind::V111 => all().any(|u| self.d(u) == 3 && self.is(u, 3, 0)),
            ConfigKind::V110TwoNeighbor => all().any(|u| {
                self.d(u) == 3
                    && all().any(|v| {
                        self.adj(u, v)
                            && self.d(v) == 2
                            && all().any(|w| w != v && self.adj(u, w) && self.d(w) == 3 && self.is(w, 2, 1))
                    })
            }),
            ConfigKind::TwoV110ThreeNeighbor => all().any(|u| {
                self.d(u) == 3
                    && all().any(|v| {
                        all().any(|w| {
                            all().any(|t| {
                                v < w
                                    && t != v
                                    && t != w
                                    && [v, w, t].iter().all(|&x| self.adj(u, x))
                                    && self.d(t) == 3
                                    && [v, w].iter().all(|&x| self.d(x) == 3 && self.is(x, 2, 1))
                            })
                        })
                    })
            }),
            ConfigKind::V110LowEnd => all().any(|u| {
                self.d(u) == 3
                    && self.is(u, 2, 1)
                    && all().any(|a| all().any(|x| self.one_path(u, a, x) && self.d(x) + 1 <= delta))
            }),
            ConfigKind::V110LowNeighbor => all().any(|u| {
                self.d(u) == 3
                    && self.is(u, 2, 1)
                    && all().any(|t| self.adj(u, t) && self.d(t) != 2 && self.d(t) + 2 <= delta)
            }),
            ConfigKind::V100TwoThreeNeighbors => all().any(|u| {
                self.d(u) == 3 && self.is(u, 1, 2) && all().filter(|&t| self.adj(u, t) && self.d(t) == 3).count() == 2
            }),
            ConfigKind::V100MixedLowEnd => all().any(|u| {
                self.d(u) == 3
                    && self.is(u, 1, 2)
                    && all().any(|t| self.adj(u, t) && self.d(t) == 3)
                    && all().any(|t| self.adj(u, t) && self.d(t) == 4)
                    && all().any(|a| all().any(|x| self.one_path(u, a, x) && self.d(x) + 1 <= delta))
            }),
            ConfigKind::V1111LowEnd => all().any(|u| {
                self.d(u) == 4
                    && self.is(u, 4, 0)
                    && all().any(|a| all().any(|x| self.one_path(u, a, x) && self.d(x) + 1 <= delta))
            }),
            ConfigKind::V1110LowEnd => all().any(|u| {
                self.d(u) == 4
                    && self.is(u, 3, 1)
                    && all().any(|t| self.adj(u, t) && self.d(t) == 3)
                    && all().any(|a| all().any(|x| self.one_path(u, a, x) && self.d(x) + 2 <= delta))
            }),
        }
    }
}

/// Mismatches between the detector and the brute matcher on `g`, plus a
/// soundness check of every returned configuration.
fn compare(g: &Graph, variant: Variant, delta: usize, seen: &mut BTreeSet<ConfigKind>) -> Vec<String> {
    let found = find_all(g, variant, delta);
    seen.extend(found.iter().map(|c| c.kind));
    let brute = Brute { g, delta };
    let mut bad = Vec::new();
    for c in &found {
        if !verify_configuration(g, delta, c) {
            bad.push(format!("unsound {c} in {:?}", g.edges()));
        }
    }
    for &kind in ConfigKind::for_variant(variant) {
        let fast = found.iter().any(|c| c.kind == kind);
        if fast != brute.occurs(kind) {
            bad.push(format!("{kind}: detector {fast}, brute {} in {:?} (D={delta})", !fast, g.edges()));
        }
    }
    bad
}

fn check_all(graphs: impl Iterator<Item = Graph>) -> (usize, Vec<String>) {
    let mut bad = Vec::new();
    let mut seen = BTreeSet::new();
    let mut count = 0;
    for g in graphs {
        count += 1;
        let d = g.max_degree().unwrap();
        for variant in [Variant::T1, Variant::T2] {
            for delta in [d, d + 1, d + 2] {
                bad.extend(compare(&g, variant, delta, &mut seen));
            }
        }
    }
    if let Some(k) = ConfigKind::T1.iter().chain(&ConfigKind::T2).find(|k| !seen.contains(k)) {
        bad.push(format!("{k} never occurs"));
    }
    (count, bad)
}

#[test]
fn agrees_with_brute_force_on_all_small_connected_graphs() {
    let (count, bad) = check_all((2..=8).flat_map(connected_graphs));
    assert!(count > 12000, "only {count} graphs");
    assert!(bad.is_empty(), "{} mismatches, first: {}", bad.len(), bad[0]);
}

#[test]
fn agrees_with_brute_force_on_sampled_nine_vertex_graphs() {
    let graphs = (0..3000u64).map(|seed| random_graph(9, 0.2 + (seed % 5) as f64 * 0.05, seed));
    let (_, bad) = check_all(graphs);
    assert!(bad.is_empty(), "{} mismatches, first: {}", bad.len(), bad[0]);
}
