//! Streaming generation of full-period sequences.
//!
//! The generator walks the complemented summing register but swaps successors
//! at the class-merging states, so the walk threads through all 2^n windows.
//! Swap sites are recognized locally: a candidate window is compared either
//! against a configured bridge state (one per weight class) or against the
//! preferred rotation of its own extended vector. No cycle is ever stored.

use super::{cyclic_ones_runs, preferred_rotation};
use crate::error::{Error, Result};
use crate::fsr::{State, MAX_ORDER, MIN_ORDER};
use num_bigint::BigUint;
use num_traits::One;
use std::collections::HashMap;
use std::fmt;

/// Largest order accepted by [`generate`]; the output holds 2^n bits.
pub const MAX_GENERATE_ORDER: usize = 30;

/// Bridge states, one per weight class k = 1..=n/2.
///
/// Entry k carries the state that links the class of extended weight 2k+1
/// down to the class below it. A valid entry has weight 2k and final bit 1;
/// [`validate_utable`] reports offenders, and [`generate`] refuses tables
/// with violations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UTable {
    n: usize,
    entries: Vec<u32>,
}

impl UTable {
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of configurable classes, ⌊n/2⌋.
    pub fn class_count(&self) -> usize {
        self.entries.len()
    }

    /// Entry for class k (1-indexed); None outside 1..=class_count.
    pub fn get(&self, k: usize) -> Option<State> {
        if k == 0 || k > self.entries.len() {
            None
        } else {
            Some(State::new(self.n, self.entries[k - 1]).expect("stored bits fit the order"))
        }
    }

    /// Replaces the entry for class k. The state is stored as given;
    /// weight and final-bit requirements are checked by [`validate_utable`].
    pub fn set(&mut self, k: usize, s: State) -> Result<()> {
        if s.order() != self.n {
            return Err(Error::OrderMismatch { expected: self.n, actual: s.order() });
        }
        if k == 0 || k > self.entries.len() {
            return Err(Error::WeightClassOutOfRange { k, max: self.entries.len() });
        }
        self.entries[k - 1] = s.value();
        Ok(())
    }

    pub fn states(&self) -> Vec<State> {
        (1..=self.entries.len()).map(|k| self.get(k).unwrap()).collect()
    }

    #[inline]
    pub(crate) fn raw(&self, k: usize) -> u32 {
        self.entries[k - 1]
    }
}

/// The canonical table: entry k is 1^(2k-1) 0^(n-2k) 1.
pub fn default_utable(n: usize) -> Result<UTable> {
    if !(MIN_ORDER..=MAX_ORDER).contains(&n) {
        return Err(Error::OrderOutOfRange { n, min: MIN_ORDER, max: MAX_ORDER });
    }
    let entries = (1..=n / 2)
        .map(|k| (((1u32 << (2 * k - 1)) - 1) << (n - 2 * k + 1)) | 1)
        .collect();
    Ok(UTable { n, entries })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UTableProblem {
    Weight { expected: u32, actual: u32 },
    FinalBitZero,
}

/// A table entry that cannot serve as a bridge state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UTableViolation {
    pub k: usize,
    pub state: State,
    pub problem: UTableProblem,
}

impl fmt::Display for UTableViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.problem {
            UTableProblem::Weight { expected, actual } => write!(
                f,
                "entry k={} ({}): weight {actual}, expected {expected}",
                self.k, self.state
            ),
            UTableProblem::FinalBitZero => {
                write!(f, "entry k={} ({}): final bit must be 1", self.k, self.state)
            }
        }
    }
}

/// Validation outcome plus the number of admissible choices per class.
#[derive(Clone, Debug)]
pub struct UTableReport {
    pub order: usize,
    pub violations: Vec<UTableViolation>,
    /// (k, number of valid entries for class k) = (k, C(n-1, 2k-1)).
    pub choices: Vec<(usize, BigUint)>,
}

impl UTableReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every entry: class k needs weight 2k and final bit 1.
pub fn validate_utable(u: &UTable) -> UTableReport {
    let n = u.n;
    let mut violations = Vec::new();
    let mut choices = Vec::with_capacity(u.entries.len());
    for k in 1..=u.entries.len() {
        let state = u.get(k).unwrap();
        let expected = 2 * k as u32;
        if state.weight() != expected {
            violations.push(UTableViolation {
                k,
                state,
                problem: UTableProblem::Weight { expected, actual: state.weight() },
            });
        }
        if state.value() & 1 == 0 {
            violations.push(UTableViolation { k, state, problem: UTableProblem::FinalBitZero });
        }
        choices.push((
            k,
            num_integer::binomial(BigUint::from(n as u64 - 1), BigUint::from(2 * k as u64 - 1)),
        ));
    }
    UTableReport { order: n, violations, choices }
}

/// Number of distinct valid bridge tables, Π_k C(n-1, 2k-1).
pub fn count_utables(n: usize) -> Result<BigUint> {
    if n < MIN_ORDER {
        return Err(Error::OrderTooSmall { n, min: MIN_ORDER });
    }
    let mut count = BigUint::one();
    for k in 1..=n / 2 {
        count *= num_integer::binomial(BigUint::from(n as u64 - 1), BigUint::from(2 * k as u64 - 1));
    }
    Ok(count)
}

/// The generator's whole working memory: the current window plus two
/// incrementally maintained statistics of it.
#[derive(Clone, Debug)]
pub struct GeneratorState {
    n: usize,
    window: u32,
    parity: u8,
    weight: u32,
    steps: u64,
}

impl GeneratorState {
    pub fn new(seed: &State) -> Self {
        GeneratorState {
            n: seed.order(),
            window: seed.value(),
            parity: seed.parity(),
            weight: seed.weight(),
            steps: 0,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn window(&self) -> State {
        State::new(self.n, self.window).expect("window bits fit the order")
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Emits the leading bit of the current window and advances.
    ///
    /// The successor is the register's own unless the window sits just
    /// before a swap site: either the candidate bridge state of its class
    /// (checked against the table) or a class-merging preferred state
    /// (checked by rotating the candidate's extended vector).
    pub fn step(&mut self, u: &UTable) -> u8 {
        debug_assert_eq!(u.order(), self.n);
        debug_assert_eq!(self.weight, self.window.count_ones());
        debug_assert_eq!(self.parity, (self.window.count_ones() & 1) as u8);
        let n = self.n;
        let mask: u32 = (1 << n) - 1;
        let a = ((self.window >> (n - 1)) & 1) as u8;
        let suffix = self.window & (mask >> 1);
        let interchange = if self.parity ^ a == 1 {
            // Candidate successor with final bit 1 has even weight: compare
            // against its class's bridge entry.
            let candidate = (suffix << 1) | 1;
            let k = ((self.weight - u32::from(a) + 1) / 2) as usize;
            debug_assert!((1..=u.class_count()).contains(&k));
            candidate == u.raw(k)
        } else {
            // Candidate successor with final bit 1 has odd weight; its
            // extended vector is (suffix, 1, 0). Swap iff that vector is the
            // preferred rotation of its cycle.
            let star = (suffix << 2) | 0b10;
            let m = n + 1;
            if cyclic_ones_runs(star, m) <= 1 {
                false
            } else {
                matches!(preferred_rotation(star, m), Some((best, _)) if best == star)
            }
        };
        let bit = if interchange { self.parity } else { self.parity ^ 1 };
        self.parity = if interchange { a } else { a ^ 1 };
        self.weight = self.weight - u32::from(a) + u32::from(bit);
        self.window = ((self.window << 1) & mask) | u32::from(bit);
        self.steps += 1;
        bit
    }
}

/// Generates the full-period sequence of order n from the given bridge
/// table and seed window: 2^n bits whose cyclic n-windows are all distinct.
///
/// The sequence is reported from the seed; the walk must return to the seed
/// after exactly 2^n steps, otherwise [`Error::GenerationFailure`] reports
/// how many bits were produced.
pub fn generate(u: &UTable, seed: &State) -> Result<Vec<u8>> {
    let n = seed.order();
    if u.order() != n {
        return Err(Error::OrderMismatch { expected: n, actual: u.order() });
    }
    if n > MAX_GENERATE_ORDER {
        return Err(Error::OrderOutOfRange { n, min: MIN_ORDER, max: MAX_GENERATE_ORDER });
    }
    let report = validate_utable(u);
    if !report.is_ok() {
        let msg = report
            .violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("; ");
        return Err(Error::InvalidUTable(msg));
    }
    let target = 1u64 << n;
    let seed_value = seed.value();
    let mut gs = GeneratorState::new(seed);
    let mut out = Vec::with_capacity(target as usize);
    loop {
        out.push(gs.step(u));
        if gs.window == seed_value {
            break;
        }
        if gs.steps >= target {
            return Err(Error::GenerationFailure { steps: gs.steps });
        }
    }
    if out.len() as u64 != target {
        return Err(Error::GenerationFailure { steps: out.len() as u64 });
    }
    Ok(out)
}

/// True iff the stream has length 2^n and all cyclic n-windows are distinct.
pub fn verify_debruijn(seq: &[u8], n: usize) -> bool {
    matches!(check_debruijn(seq, n), Ok(DebruijnVerdict::Pass))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DebruijnVerdict {
    Pass,
    WrongLength { expected: u64, actual: u64 },
    /// The first window seen twice, with both starting positions.
    RepeatedWindow { window: State, first: usize, second: usize },
}

/// Full verdict for a candidate stream; errors only on malformed input.
pub fn check_debruijn(seq: &[u8], n: usize) -> Result<DebruijnVerdict> {
    if !(MIN_ORDER..=MAX_ORDER).contains(&n) {
        return Err(Error::OrderOutOfRange { n, min: MIN_ORDER, max: MAX_ORDER });
    }
    for (position, &b) in seq.iter().enumerate() {
        if b > 1 {
            return Err(Error::InvalidBit { position, found: (b'0' + b.min(9)) as char });
        }
    }
    let expected = 1u64 << n;
    if seq.len() as u64 != expected {
        return Ok(DebruijnVerdict::WrongLength { expected, actual: seq.len() as u64 });
    }
    let mask: u32 = (1 << n) - 1;
    let mut window: u32 = seq[..n].iter().fold(0, |w, &b| (w << 1) | u32::from(b));
    let mut first_seen: HashMap<u32, usize> = HashMap::with_capacity(seq.len());
    for i in 0..seq.len() {
        if i > 0 {
            window = ((window << 1) & mask) | u32::from(seq[(i + n - 1) % seq.len()]);
        }
        if let Some(&first) = first_seen.get(&window) {
            return Ok(DebruijnVerdict::RepeatedWindow {
                window: State::new(n, window).expect("window bits fit the order"),
                first,
                second: i,
            });
        }
        first_seen.insert(window, i);
    }
    Ok(DebruijnVerdict::Pass)
}
