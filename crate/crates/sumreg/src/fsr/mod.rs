//! Feedback shift register core: states, feedback functions, cycles, and the
//! adjacency structure used by cycle joining.

mod cycle;
mod feedback;
mod graph;
mod state;

pub use cycle::{
    cycle_of, decompose, decompose_with_cap, join_cycles, CycleRep, PairKind,
    DEFAULT_ENUMERATION_CAP,
};
pub use feedback::{FeedbackSpec, RegisterKind, TruthTable, MAX_SPEC_ORDER, MAX_TABLE_VARS};
pub use graph::{adjacency_graph, AdjacencyGraph};
pub use state::{State, MAX_ORDER, MIN_ORDER};
