//! 2-distance list coloring of sparse graphs.
//!
//! Graphs with maximum average degree below 8/3 and Δ ≥ 4, or below 14/5
//! and Δ ≥ 6, can be 2-distance colored from any lists of size Δ+3. This
//! crate makes that result executable:
//!
//! - [`density`]: exact maximum average degree with a witness subgraph.
//! - [`structure`]: path signatures and detection of reducible
//!   configurations.
//! - [`colorer`]: the recursive reduce-and-extend coloring algorithm.
//! - [`discharge`]: charge redistribution with exact rationals and an
//!   auditor for non-negative final charges.
//! - [`oracle`]: exact backtracking solvers for verification.
//! - [`testkit`]: seeded generators for sparse graphs and list assignments.

// Thresholds read as written in the theorems: `d <= delta - 1`.
#![allow(clippy::int_plus_one)]

pub mod cli;
pub mod colorer;
pub mod density;
pub mod discharge;
pub mod flow;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod structure;
pub mod testkit;

use std::fmt;
use std::str::FromStr;

pub use colorer::{color_two_distance, ColorError, ColorOutcome, ColorerConfig};
pub use density::{mad_exact, Mad, Rational};
pub use graph::{validate_coloring, Color, Coloring, Graph, GraphError, ListAssignment, VertexId, VertexMask};
pub use structure::{find_configuration, ConfigKind, Configuration};

/// Which of the two sparsity regimes is in force.
///
/// `T1`: mad < 8/3 and Δ ≥ 4. `T2`: mad < 14/5 and Δ ≥ 6. Both promise a
/// 2-distance coloring from lists of size Δ+3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    T1,
    T2,
}

impl Variant {
    /// Strict upper bound on mad, as `(numerator, denominator)`.
    pub fn mad_bound(self) -> (i64, i64) {
        match self {
            Variant::T1 => (8, 3),
            Variant::T2 => (14, 5),
        }
    }

    pub fn mad_threshold(self) -> Rational {
        let (p, q) = self.mad_bound();
        density::ratio(p, q)
    }

    pub fn min_delta(self) -> usize {
        match self {
            Variant::T1 => 4,
            Variant::T2 => 6,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::T1 => "t1",
            Variant::T2 => "t2",
        })
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "t1" => Ok(Variant::T1),
            "t2" => Ok(Variant::T2),
            _ => Err(format!("unknown variant `{s}` (expected t1 or t2)")),
        }
    }
}
