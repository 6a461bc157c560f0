//! Cycle structure of summing feedback shift registers.
//!
//! The pure summing register feeds back the parity of its stages; the
//! complemented summing register feeds back the complement of that parity.
//! Both split the state space into cycles whose lengths divide n+1, and this
//! crate provides:
//!
//! * cycle decomposition, conjugate/companion adjacency and cycle joining
//!   ([`fsr`]),
//! * closed-form cycle censuses matching brute-force enumeration ([`census`]),
//! * de Bruijn sequence generation by joining the complemented summing
//!   register's cycles, with constant work per output bit ([`debruijn`]),
//! * the classification showing these two registers are exactly the feedback
//!   functions with the divisibility property above ([`omega`]), and
//! * value-vector/coefficient-vector algebra for symmetric boolean functions
//!   ([`symfn`]).

pub mod census;
pub mod debruijn;
mod error;
pub mod fsr;
pub mod omega;
pub mod symfn;

pub use error::{Error, Result};
pub use fsr::{CycleRep, FeedbackSpec, RegisterKind, State, TruthTable};
