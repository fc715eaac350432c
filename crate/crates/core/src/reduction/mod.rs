//! Hardness reductions from satisfiability to coloring, each paired with a
//! contraction sequence certifying a twin-width bound of its output.

mod mincol;
mod threecol;

pub use mincol::MinColInstance;
pub use threecol::{subdivision_positions, ThreeColInstance};

use thiserror::Error;

use crate::cnf::Dialect;
use crate::contraction::PartitionSequence;
use crate::oracles::OracleError;
use crate::trigraph::Trigraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("expected a {expected} formula, got {found}")]
    Dialect { expected: Dialect, found: Dialect },
    #[error("the construction needs at least 2 variables, got {0}")]
    TooFewVariables(usize),
    #[error("clause {0} contains a variable and its negation; drop it before reducing")]
    Tautology(usize),
    #[error("the formula has no clauses")]
    EmptyFormula,
    #[error("the assignment does not satisfy the formula")]
    NotSatisfying,
    #[error("the assignment leaves some clause with all literals equal")]
    NotNaeSatisfying,
    #[error("the coloring is not proper")]
    NotProper,
    #[error("the coloring uses color {max_color}, only {allowed} allowed")]
    TooManyColors { max_color: usize, allowed: usize },
    #[error("coloring contradicts the gadget structure: {0}")]
    Structure(String),
    #[error("k must be at least 3, got {0}")]
    KTooSmall(usize),
    #[error(transparent)]
    Coloring(#[from] OracleError),
}

/// Output of a reduction: the graph (with vertex roles attached), a
/// contraction sequence for it, and the width that sequence is meant to
/// certify.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionArtifact {
    pub graph: Trigraph,
    pub sequence: PartitionSequence,
    pub width_bound: usize,
}
