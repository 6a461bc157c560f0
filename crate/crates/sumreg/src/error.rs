//! Error type shared across the crate.

use thiserror::Error;

/// Errors reported by register construction, enumeration and generation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A state or table was used with a register of a different order.
    #[error("order mismatch: expected n={expected}, got n={actual}")]
    OrderMismatch { expected: usize, actual: usize },

    /// Register order outside the supported range for the requested operation.
    #[error("order n={n} out of range [{min}, {max}]")]
    OrderOutOfRange { n: usize, min: usize, max: usize },

    /// Register order below the supported minimum.
    #[error("order n={n} must be at least {min}")]
    OrderTooSmall { n: usize, min: usize },

    /// Full state enumeration was requested above the configured cap.
    #[error("enumeration of 2^{n} states exceeds cap n<={cap}")]
    EnumerationCapExceeded { n: usize, cap: usize },

    /// Truth table arity outside the supported range.
    #[error("truth table over {vars} variables out of range [{min}, {max}]")]
    VarsOutOfRange { vars: usize, min: usize, max: usize },

    /// Cycle length censuses are defined for the two summing registers only.
    #[error("census formulas require a pure or complemented summing register")]
    UnsupportedRegister,

    /// Census was queried at a length that cannot occur.
    #[error("d={d} does not divide {modulus}")]
    NotADivisor { d: u64, modulus: u64 },

    /// A closed-form count did not come out as an integer; indicates a bug.
    #[error("internal: count formula non-integral at n={n}, d={d}")]
    NonIntegralCount { n: usize, d: u64 },

    /// Preferred states exist only for complemented summing register cycles.
    #[error("operation requires the complemented summing register")]
    NotComplementedParity,

    /// Weight-class index outside 0..=n/2.
    #[error("weight class k={k} out of range 0..={max}")]
    WeightClassOutOfRange { k: usize, max: usize },

    /// The state handed to join_cycles does not lie on the first cycle.
    #[error("shared state {state} does not lie on the first cycle")]
    StateNotOnCycle { state: String },

    /// The partner of the shared state does not lie on the second cycle.
    #[error("partner state {state} does not lie on the second cycle")]
    PartnerNotOnCycle { state: String },

    /// join_cycles needs two different cycles.
    #[error("cannot join a cycle with itself")]
    CyclesNotDistinct,

    /// A bridge-state table failed validation.
    #[error("invalid bridge-state table: {0}")]
    InvalidUTable(String),

    /// The generated stream did not close after exactly 2^n steps.
    #[error("generation failed to close the full cycle (stopped after {steps} steps)")]
    GenerationFailure { steps: u64 },

    /// Exhaustive search over all feedback functions is limited to tiny orders.
    #[error("exhaustive search at n={n} refused; use symmetric-only scope above n={max}")]
    ScopeTooLarge { n: usize, max: usize },

    /// A bit-vector argument had the wrong length.
    #[error("expected {expected} bits, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    /// A bit string contained a character other than '0' or '1'.
    #[error("invalid bit character {found:?} at position {position}")]
    InvalidBit { position: usize, found: char },

    /// An internal invariant failed; indicates a bug in this crate.
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
