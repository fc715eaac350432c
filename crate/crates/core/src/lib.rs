//! Twin-width toolkit: trigraphs, contraction sequences, exact small-instance
//! oracles, and two hardness reductions for coloring on graphs of bounded
//! twin-width (3-SAT to min-coloring at width 3, NAE-3-SAT to 3-coloring at
//! width 4), each emitted together with a checkable contraction sequence.

pub mod cnf;
pub mod contraction;
pub mod formats;
pub mod generate;
pub mod oracles;
pub mod reduction;
pub mod trigraph;

pub use cnf::{Assignment, CnfError, CnfFormula, Dialect, Literal};
pub use contraction::{
    replay, verify_d_sequence, Contractor, MergeStep, PartitionSequence, SequenceError, Verification,
    WidthProfile,
};
pub use oracles::{Coloring, OracleError};
pub use reduction::{ReductionArtifact, ReductionError};
pub use trigraph::{EdgeKind, Partition, Trigraph, TrigraphError, VertexId, VertexRole};
