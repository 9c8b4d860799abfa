//! Exact average degree and maximum average degree.
//!
//! `mad(G) = 2 * max |E(H)| / |V(H)|` over nonempty subgraphs `H`. The
//! maximum is attained on an induced subgraph, so both solvers here search
//! over vertex sets. [`mad_exact`] bisects on the density with a
//! Goldberg-style min-cut test; [`mad_brute`] enumerates every subset and is
//! kept as an oracle for small graphs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::flow::FlowNetwork;
use crate::graph::{Graph, VertexId};

/// Exact rational in lowest terms.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DensityError {
    #[error("graph has no vertices")]
    Empty,
    #[error("brute force limited to {limit} vertices, graph has {n}")]
    TooLarge { n: usize, limit: usize },
    #[error("flow capacities overflow 64-bit integers")]
    Overflow,
}

/// A maximum average degree together with a vertex set attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mad {
    pub value: Rational,
    /// Sorted vertex set whose induced subgraph has average degree `value`.
    pub witness: Vec<VertexId>,
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn average_degree(g: &Graph) -> Result<Rational, DensityError> {
    if g.is_empty() {
        return Err(DensityError::Empty);
    }
    Ok(ratio(2 * g.m() as i64, g.n() as i64))
}

/// Number of edges of `g` with both ends in `set`.
pub fn induced_edge_count(g: &Graph, set: &[VertexId]) -> usize {
    let mut inside = vec![false; g.n()];
    set.iter().for_each(|&v| inside[v] = true);
    set.iter().map(|&v| g.neighbors(v).iter().filter(|&&w| inside[w]).count()).sum::<usize>() / 2
}

/// Average degree of the subgraph induced by a nonempty `set`.
pub fn induced_average_degree(g: &Graph, set: &[VertexId]) -> Rational {
    ratio(2 * induced_edge_count(g, set) as i64, set.len() as i64)
}

/// Looks for a vertex set of density strictly above `num / den`.
///
/// The network gives every vertex capacity `den*m` from the source and
/// `den*m + 2*num - den*d(v)` to the sink, and every edge capacity `den` in
/// both directions. A cut with source side `S` costs
/// `den*m*n + 2*(num*|S| - den*|E(S)|)`, so the minimal min-cut side is
/// nonempty exactly when some `S` beats the guess.
fn denser_than(g: &Graph, num: i64, den: i64) -> Result<Option<Vec<VertexId>>, DensityError> {
    let n = g.n();
    let (s, t) = (n, n + 1);
    let base = den.checked_mul(g.m() as i64).ok_or(DensityError::Overflow)?;
    let two_num = num.checked_mul(2).ok_or(DensityError::Overflow)?;
    let mut net = FlowNetwork::new(n + 2);
    for v in g.vertices() {
        net.add_edge(s, v, base);
        let to_sink = base
            .checked_add(two_num)
            .and_then(|x| x.checked_sub(den * g.degree(v) as i64))
            .ok_or(DensityError::Overflow)?;
        net.add_edge(v, t, to_sink);
        for &w in g.neighbors(v) {
            if w > v {
                net.add_edge(v, w, den);
                net.add_edge(w, v, den);
            }
        }
    }
    base.checked_mul(n as i64).ok_or(DensityError::Overflow)?;
    net.max_flow(s, t);
    let side = net.source_side(s);
    let set: Vec<VertexId> = g.vertices().filter(|&v| side[v]).collect();
    if set.is_empty() {
        return Ok(None);
    }
    debug_assert!((induced_edge_count(g, &set) as i64) * den > num * set.len() as i64);
    Ok(Some(set))
}

/// Exact mad with a witness, via bisection on the density.
///
/// Distinct densities `a/b`, `c/d` with `b, d <= n` differ by at least
/// `1/(n(n-1))`, so once the bracket is narrower than that the best set
/// found so far is optimal. Guesses are snapped to the grid `1/(2n(n-1))`,
/// which keeps flow capacities small.
pub fn mad_exact(g: &Graph) -> Result<Mad, DensityError> {
    let n = g.n();
    if n == 0 {
        return Err(DensityError::Empty);
    }
    let all: Vec<VertexId> = g.vertices().collect();
    if g.m() == 0 {
        return Ok(Mad { value: Rational::zero(), witness: all });
    }
    let mut witness = all;
    let mut lo = ratio(g.m() as i64, n as i64);
    let mut hi = ratio(g.max_degree().expect("nonempty") as i64, 2);
    let gap = ratio(1, (n * (n - 1)) as i64);
    let grid = 2 * (n * (n - 1)) as i64;
    let grid_big = BigInt::from(grid);
    while &hi - &lo >= gap {
        let mid = (&lo + &hi) / BigInt::from(2);
        let k = (mid * &grid_big).round().to_integer().to_i64().ok_or(DensityError::Overflow)?;
        match denser_than(g, k, grid)? {
            Some(set) => {
                lo = ratio(induced_edge_count(g, &set) as i64, set.len() as i64);
                witness = set;
            }
            None => hi = ratio(k, grid),
        }
    }
    Ok(Mad { value: lo * BigInt::from(2), witness })
}

/// Default vertex limit for [`mad_brute`].
pub const BRUTE_LIMIT: usize = 20;

/// Exhaustive mad over all nonempty vertex subsets. Ties keep the subset
/// with the smallest bitmask.
pub fn mad_brute(g: &Graph, limit: usize) -> Result<Mad, DensityError> {
    let n = g.n();
    if n == 0 {
        return Err(DensityError::Empty);
    }
    if n > limit || n > 30 {
        return Err(DensityError::TooLarge { n, limit: limit.min(30) });
    }
    let adj: Vec<u32> = g.vertices().map(|v| g.neighbors(v).iter().fold(0u32, |acc, &w| acc | 1 << w)).collect();
    let (mut best_e, mut best_s, mut best_mask) = (0u64, 1u64, 1u32);
    for mask in 1u32..(1u32 << n) {
        let mut twice = 0u64;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            twice += (adj[v] & mask).count_ones() as u64;
        }
        let (e, s) = (twice / 2, mask.count_ones() as u64);
        if e * best_s > best_e * s {
            (best_e, best_s, best_mask) = (e, s, mask);
        }
    }
    let witness = (0..n).filter(|&v| best_mask >> v & 1 == 1).collect();
    Ok(Mad { value: ratio(2 * best_e as i64, best_s as i64), witness })
}

/// `(mad - 2)(girth - 2) < 4`, the inequality every planar graph satisfies.
pub fn check_planar_girth_bound(mad: &Rational, girth: usize) -> bool {
    debug_assert!(girth >= 3, "girth is at least 3");
    let two = Rational::from_integer(BigInt::from(2));
    let lhs = (mad - &two) * Rational::from_integer(BigInt::from(girth as i64 - 2));
    lhs < Rational::from_integer(BigInt::from(4))
}

/// `p/q` with the sign on the numerator.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal approximation for display only.
pub fn approx(r: &Rational) -> f64 {
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    let num = r.numer().abs().to_f64().unwrap_or(f64::INFINITY);
    let den = r.denom().to_f64().unwrap_or(f64::INFINITY);
    sign * num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn average_degrees() {
        assert_eq!(average_degree(&complete(4)), Ok(ratio(3, 1)));
        assert_eq!(average_degree(&path(3)), Ok(ratio(4, 3)));
        assert_eq!(average_degree(&path(2)), Ok(ratio(1, 1)));
        assert_eq!(average_degree(&Graph::empty(0)), Err(DensityError::Empty));
    }

    #[test]
    fn trees_are_densest_whole() {
        for k in 2..9 {
            let r = mad_exact(&path(k)).unwrap();
            assert_eq!(r.value, ratio(2 * (k as i64 - 1), k as i64));
            assert_eq!(r.witness.len(), k);
        }
        assert_eq!(mad_exact(&star(6)).unwrap().value, ratio(12, 7));
    }

    #[test]
    fn petersen_and_complete() {
        assert_eq!(mad_exact(&petersen()).unwrap().value, ratio(3, 1));
        assert_eq!(mad_brute(&complete(4), BRUTE_LIMIT).unwrap().value, ratio(3, 1));
    }

    #[test]
    fn c5_with_chord() {
        // Brute force over all 32 subsets: the whole graph (6 edges on 5
        // vertices) beats the triangle and the 4-cycle it contains.
        let mut e: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        e.push((0, 2));
        let g = Graph::from_edges(5, &e).unwrap();
        let exact = mad_exact(&g).unwrap();
        assert_eq!(exact.value, ratio(12, 5));
        assert_eq!(exact.witness, vec![0, 1, 2, 3, 4]);
        assert_eq!(mad_brute(&g, BRUTE_LIMIT).unwrap().value, ratio(12, 5));
    }

    #[test]
    fn densest_part_wins() {
        let g = complete(4).disjoint_union(&path(12));
        let exact = mad_exact(&g).unwrap();
        assert_eq!(exact.value, ratio(3, 1));
        assert_eq!(exact.witness, vec![0, 1, 2, 3]);
        assert_eq!(mad_brute(&g, BRUTE_LIMIT).unwrap().value, ratio(3, 1));
        let k33 =
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3), (1, 4), (2, 5)]).unwrap();
        assert_eq!(mad_brute(&k33, BRUTE_LIMIT).unwrap().value, ratio(3, 1));
    }

    #[test]
    fn edgeless_and_limits() {
        assert_eq!(mad_exact(&Graph::empty(3)).unwrap().value, ratio(0, 1));
        assert_eq!(mad_exact(&Graph::empty(0)), Err(DensityError::Empty));
        assert_eq!(mad_brute(&path(21), 20), Err(DensityError::TooLarge { n: 21, limit: 20 }));
    }

    #[test]
    fn girth_bound_is_strict() {
        assert!(!check_planar_girth_bound(&ratio(8, 3), 8));
        assert!(check_planar_girth_bound(&ratio(5, 2), 8));
        assert!(!check_planar_girth_bound(&ratio(14, 5), 7));
    }

    #[test]
    fn formatting() {
        assert_eq!(format_rational(&ratio(8, 5)), "8/5");
        assert_eq!(format_rational(&ratio(6, 2)), "3");
        assert_eq!(format_rational(&ratio(-1, 10)), "-1/10");
        assert!((approx(&ratio(8, 3)) - 2.6667).abs() < 1e-3);
    }
}
