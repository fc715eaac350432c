//! Exact brute-force ground truth for small instances.
//!
//! Every search here is deterministic and counts node expansions against an
//! optional budget, so a run either finishes with the same answer every time
//! or stops with [`OracleError::BudgetExceeded`].

mod coloring;
mod sat;
mod twinwidth;

pub use coloring::{chromatic_number, clique_lower_bound, greedy_coloring, is_k_colorable, is_proper, Coloring};
pub use sat::{solve_nae, solve_sat};
pub use twinwidth::{exact_twinwidth, find_d_sequence, TwinWidth, MAX_EXACT_TWW_VERTICES};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("the graph has red edges; colorings are only defined on plain graphs")]
    RedEdge,
    #[error("coloring covers {got} vertices, graph has {expected}")]
    Uncolored { expected: usize, got: usize },
    #[error("vertex {vertex} has color {color}, outside 1..={k}")]
    ColorRange { vertex: usize, color: usize, k: usize },
    #[error("gave up after {nodes} node expansions, over budget (best bounds: {lower}..={upper})")]
    BudgetExceeded { nodes: u64, lower: usize, upper: usize },
    #[error("{n} vertices is beyond the exact search limit of {max}")]
    TooLarge { n: usize, max: usize },
}

/// Node-expansion counter shared by the searches.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Meter {
    pub nodes: u64,
    pub limit: Option<u64>,
}

impl Meter {
    pub fn new(limit: Option<u64>) -> Self {
        Meter { nodes: 0, limit }
    }

    /// Counts one expansion; false once the budget is spent.
    pub fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.limit.is_none_or(|l| self.nodes <= l)
    }
}
