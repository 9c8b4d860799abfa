//! Discharging with exact rationals.
//!
//! Each vertex starts with `3d - 8` (first variant) or `5d - 14` (second
//! variant), whose sum is negative exactly when the average degree is below
//! 8/3 or 14/5. The rules move charge locally without changing the total.
//! On a graph containing none of the variant's configurations every final
//! charge is non-negative, so such a graph has average degree at least the
//! bound. [`audit`] runs the rules and reports any vertex that ends
//! negative together with a configuration explaining it.
//!
//! Rules of the first variant:
//! - `R0`: a 3⁺-vertex gives 1 to each 2-neighbor;
//! - `R1`: a 4⁺-vertex gives 1 to each 3-neighbor;
//! - `R2`: a (0,0,0)-vertex gives 1 to each (1,1,0)-neighbor.
//!
//! Rules of the second variant:
//! - `R0`: a 3⁺-vertex gives 2 to each 2-neighbor;
//! - `R1(i)`: a 4-vertex gives 1/2 to each 3-neighbor;
//! - `R1(ii)`: a 5⁺-vertex gives 2 to each 3-neighbor;
//! - `R2(i)`, `R2(ii)`: along a 1-path `u v w`, if `d(w) <= 4` then `u`
//!   gives 1/5 when `d(u) = 5` and 2/3 when `d(u) >= 6`.
//!
//! The ends of a 1-path are the vertices of degree other than 2 on either
//! side of a 2-vertex.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::density::{format_rational, ratio, Rational};
use crate::graph::{Graph, VertexId};
use crate::structure::{classify_vertex, find_configuration, Configuration, PathClass};
use crate::Variant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    R0,
    R1,
    R1i,
    R1ii,
    R2,
    R2i,
    R2ii,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::R0 => "R0",
            Rule::R1 => "R1",
            Rule::R1i => "R1(i)",
            Rule::R1ii => "R1(ii)",
            Rule::R2 => "R2",
            Rule::R2i => "R2(i)",
            Rule::R2ii => "R2(ii)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transfer {
    pub rule: Rule,
    pub from: VertexId,
    pub to: VertexId,
    pub amount: Rational,
}

/// Initial and final charges plus every transfer, sorted by rule then ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeLedger {
    pub variant: Variant,
    pub mu: Vec<Rational>,
    pub mu_star: Vec<Rational>,
    pub transfers: Vec<Transfer>,
}

impl ChargeLedger {
    pub fn sum_before(&self) -> Rational {
        self.mu.iter().sum()
    }

    pub fn sum_after(&self) -> Rational {
        self.mu_star.iter().sum()
    }

    /// One `v <id> mu <p/q> mu* <p/q>` line per vertex, then one
    /// `t <rule> <from> <to> <amount>` line per transfer.
    pub fn lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .mu
            .iter()
            .zip(&self.mu_star)
            .enumerate()
            .map(|(v, (a, b))| format!("v {v} mu {} mu* {}", format_rational(a), format_rational(b)))
            .collect();
        out.extend(
            self.transfers.iter().map(|t| format!("t {} {} {} {}", t.rule, t.from, t.to, format_rational(&t.amount))),
        );
        out
    }
}

/// `3d - 8` or `5d - 14`.
pub fn initial_charge(d: usize, variant: Variant) -> Rational {
    let d = d as i64;
    match variant {
        Variant::T1 => ratio(3 * d - 8, 1),
        Variant::T2 => ratio(5 * d - 14, 1),
    }
}

fn rules_t1(g: &Graph) -> Vec<Transfer> {
    let one = ratio(1, 1);
    let sigs: Vec<_> = g.vertices().map(|v| classify_vertex(g, v)).collect();
    let mut out = Vec::new();
    for u in g.vertices() {
        let du = g.degree(u);
        for &v in g.neighbors(u) {
            let dv = g.degree(v);
            if du >= 3 && dv == 2 {
                out.push(Transfer { rule: Rule::R0, from: u, to: v, amount: one.clone() });
            }
            if du >= 4 && dv == 3 {
                out.push(Transfer { rule: Rule::R1, from: u, to: v, amount: one.clone() });
            }
            if sigs[u].is(0, 3) && sigs[v].is(2, 1) {
                out.push(Transfer { rule: Rule::R2, from: u, to: v, amount: one.clone() });
            }
        }
    }
    out
}

fn rules_t2(g: &Graph) -> Vec<Transfer> {
    let mut out = Vec::new();
    for u in g.vertices() {
        let du = g.degree(u);
        for &v in g.neighbors(u) {
            let dv = g.degree(v);
            if du >= 3 && dv == 2 {
                out.push(Transfer { rule: Rule::R0, from: u, to: v, amount: ratio(2, 1) });
            }
            if du == 4 && dv == 3 {
                out.push(Transfer { rule: Rule::R1i, from: u, to: v, amount: ratio(1, 2) });
            }
            if du >= 5 && dv == 3 {
                out.push(Transfer { rule: Rule::R1ii, from: u, to: v, amount: ratio(2, 1) });
            }
        }
        if du < 5 {
            continue;
        }
        for e in classify_vertex(g, u).entries {
            let Some(w) = e.end.filter(|&w| e.class == PathClass::One && w != u) else { continue };
            if g.degree(w) <= 4 {
                let (rule, amount) = if du == 5 { (Rule::R2i, ratio(1, 5)) } else { (Rule::R2ii, ratio(2, 3)) };
                out.push(Transfer { rule, from: u, to: w, amount });
            }
        }
    }
    out
}

/// Runs every rule of `variant` once per matching pattern, all against the
/// unmodified graph.
pub fn apply_rules(g: &Graph, variant: Variant) -> ChargeLedger {
    let mu: Vec<Rational> = g.vertices().map(|v| initial_charge(g.degree(v), variant)).collect();
    let mut transfers = match variant {
        Variant::T1 => rules_t1(g),
        Variant::T2 => rules_t2(g),
    };
    transfers.sort_by_key(|t| (t.rule, t.from, t.to));
    let mut mu_star = mu.clone();
    for t in &transfers {
        mu_star[t.from] -= &t.amount;
        mu_star[t.to] += &t.amount;
    }
    ChargeLedger { variant, mu, mu_star, transfers }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub ledger: ChargeLedger,
    pub sum_before: Rational,
    pub sum_after: Rational,
    /// Vertices with negative final charge, in id order.
    pub negative: Vec<VertexId>,
    /// A configuration of the variant, looked up only when `negative` is
    /// nonempty.
    pub explanation: Option<Configuration>,
}

impl AuditReport {
    pub fn all_nonnegative(&self) -> bool {
        self.negative.is_empty()
    }
}

/// Applies the rules and checks every final charge.
///
/// Panics if the transfers do not conserve the total charge.
pub fn audit(g: &Graph, variant: Variant, delta: usize) -> AuditReport {
    let ledger = apply_rules(g, variant);
    let sum_before = ledger.sum_before();
    let sum_after = ledger.sum_after();
    assert!((&sum_after - &sum_before).is_zero(), "discharging changed the total charge");
    let negative: Vec<VertexId> = g.vertices().filter(|&v| ledger.mu_star[v].is_negative()).collect();
    let explanation = if negative.is_empty() { None } else { find_configuration(g, variant, delta) };
    AuditReport { ledger, sum_before, sum_after, negative, explanation }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::structure::ConfigKind;

    #[test]
    fn initial_charges() {
        assert_eq!(initial_charge(2, Variant::T1), ratio(-2, 1));
        assert_eq!(initial_charge(3, Variant::T1), ratio(1, 1));
        assert_eq!(initial_charge(4, Variant::T2), ratio(6, 1));
        assert_eq!(initial_charge(0, Variant::T2), ratio(-14, 1));
    }

    /// Theta-like graph: two 3-vertices joined by three 1-paths.
    fn theta() -> Graph {
        Graph::from_edges(5, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]).unwrap()
    }

    #[test]
    fn two_vertex_on_a_one_path() {
        let l = apply_rules(&theta(), Variant::T1);
        assert_eq!(l.mu_star[2], ratio(0, 1));
        let l = apply_rules(&theta(), Variant::T2);
        assert_eq!(l.mu_star[2], ratio(0, 1));
    }

    #[test]
    fn r2i_transfer_logged() {
        // u=0 of degree 5, 1-path 0-1-2 to a 3-vertex 2; padding leaves.
        let mut e = vec![(0, 1), (1, 2), (0, 3), (0, 4), (0, 5), (0, 6), (2, 7), (2, 8)];
        e.sort_unstable();
        let g = Graph::from_edges(9, &e).unwrap();
        let l = apply_rules(&g, Variant::T2);
        assert!(l.transfers.contains(&Transfer { rule: Rule::R2i, from: 0, to: 2, amount: ratio(1, 5) }));
        assert!(!l.transfers.iter().any(|t| t.rule == Rule::R2i && t.from == 2));
    }

    #[test]
    fn spider_is_negative_and_explained() {
        // A (1,1,1)-vertex: center 0, three 1-paths to 4-vertices padded
        // with leaves.
        let mut e = Vec::new();
        let mut next = 7;
        for i in 0..3 {
            let (mid, end) = (1 + 2 * i, 2 + 2 * i);
            e.extend([(0, mid), (mid, end)]);
            for _ in 0..3 {
                e.push((end, next));
                next += 1;
            }
        }
        let g = Graph::from_edges(next, &e).unwrap();
        let r = audit(&g, Variant::T1, 4);
        assert_eq!(r.ledger.mu_star[0], ratio(-2, 1));
        assert!(r.negative.contains(&0));
        assert_eq!(r.explanation.map(|c| c.kind), Some(ConfigKind::MinDegree1));
        assert_eq!(r.sum_before, r.sum_after);
    }

    #[test]
    fn petersen_is_balanced() {
        let r = audit(&petersen(), Variant::T1, 3);
        assert!(r.all_nonnegative());
        assert!(r.ledger.transfers.is_empty());
        assert_eq!(r.sum_before, ratio(10, 1));
    }

    #[test]
    fn ledger_lines() {
        let l = apply_rules(&cycle(3), Variant::T2);
        assert_eq!(l.lines(), vec!["v 0 mu -4 mu* -4", "v 1 mu -4 mu* -4", "v 2 mu -4 mu* -4"]);
        let l = apply_rules(&star(3), Variant::T1);
        assert_eq!(l.lines()[0], "v 0 mu 1 mu* 1");
    }
}
