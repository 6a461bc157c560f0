//! De Bruijn sequences from the complemented summing register.
//!
//! Every cycle of the complemented summing register keeps a constant odd
//! weight on its extended representation (the window plus its feedback bit).
//! Cycles of equal extended weight are merged into one "main cycle" per
//! weight class through canonical preferred states, and the main cycles are
//! then chained through chosen bridge states. [`build_main_cycle`] performs
//! the merge explicitly; [`generate`] produces the same full-period sequence
//! bit by bit without ever materializing a cycle.

mod generator;
mod joining;

pub use generator::{
    check_debruijn, count_utables, default_utable, generate, validate_utable, verify_debruijn,
    DebruijnVerdict, GeneratorState, UTable, UTableProblem, UTableReport, UTableViolation,
    MAX_GENERATE_ORDER,
};
pub use joining::{build_main_cycle, MainCycle};

use crate::error::{Error, Result};
use crate::fsr::{CycleRep, FeedbackSpec, RegisterKind, State, MAX_ORDER, MIN_ORDER};
use std::fmt;

/// A window extended by its feedback bit: the (n+1)-bit vector
/// (a1, ..., an, f(a1..an)).
///
/// Walking a cycle rotates this vector, so its weight is shared by the whole
/// cycle whenever the cycle length divides n+1; for the complemented summing
/// register that weight is always odd.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExtRep {
    n: usize,
    bits: u32,
}

impl ExtRep {
    /// Builds an extended vector from raw bits, first coordinate first.
    ///
    /// No feedback function is consulted; use [`extended_rep`] to derive the
    /// vector belonging to a state.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if bits.len() < MIN_ORDER + 1 || bits.len() > MAX_ORDER + 1 {
            return Err(Error::OrderOutOfRange {
                n: bits.len().saturating_sub(1),
                min: MIN_ORDER,
                max: MAX_ORDER,
            });
        }
        let mut value = 0u32;
        for (i, &b) in bits.iter().enumerate() {
            if b > 1 {
                return Err(Error::InvalidBit { position: i, found: (b'0' + b) as char });
            }
            value = (value << 1) | u32::from(b);
        }
        Ok(ExtRep { n: bits.len() - 1, bits: value })
    }

    /// Parses a bit string such as `"11000010"`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => bits.push(0),
                '1' => bits.push(1),
                _ => return Err(Error::InvalidBit { position: i, found: ch }),
            }
        }
        Self::from_bits(&bits)
    }

    /// Register order n; the vector holds n+1 bits.
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn width(&self) -> usize {
        self.n + 1
    }

    /// Packed bits, first coordinate most significant.
    pub fn value(&self) -> u32 {
        self.bits
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Coordinate x_i, 1-indexed.
    pub fn bit(&self, i: usize) -> u8 {
        debug_assert!((1..=self.width()).contains(&i));
        ((self.bits >> (self.width() - i)) & 1) as u8
    }

    /// The window part: the first n coordinates.
    pub fn state(&self) -> State {
        State::new(self.n, self.bits >> 1).expect("window bits in range")
    }

    /// The final coordinate x_{n+1}.
    pub fn feedback_bit(&self) -> u8 {
        (self.bits & 1) as u8
    }
}

impl fmt::Display for ExtRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.width() {
            write!(f, "{}", self.bit(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for ExtRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtRep({self})")
    }
}

/// The extended vector of s under f: s followed by f(s).
pub fn extended_rep(f: &FeedbackSpec, s: &State) -> Result<ExtRep> {
    if s.order() != f.order() {
        return Err(Error::OrderMismatch { expected: f.order(), actual: s.order() });
    }
    Ok(ExtRep { n: f.order(), bits: (s.value() << 1) | f.eval_value(s.value()) })
}

/// Weight of the extended vector, constant along any cycle of the
/// complemented summing register.
pub fn extended_weight(f: &FeedbackSpec, c: &CycleRep) -> Result<u32> {
    if f.kind() != RegisterKind::Csr {
        return Err(Error::NotComplementedParity);
    }
    if c.order() != f.order() {
        return Err(Error::OrderMismatch { expected: f.order(), actual: c.order() });
    }
    Ok(extended_rep(f, &c.state_at(0))?.weight())
}

/// True iff the ones of the vector form at most one cyclic run.
///
/// The all-ones and all-zero vectors count as runs.
pub fn is_run_cycle(e: &ExtRep) -> bool {
    cyclic_ones_runs(e.value(), e.width()) <= 1
}

/// The canonical joining state of a cycle, with its shape parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PreferredState {
    pub state: State,
    /// Leading zeros of the chosen extended rotation (0 for run cycles).
    pub r: usize,
    /// Longest cyclic run of ones in the extended vector.
    pub t: usize,
    pub run_cycle: bool,
}

/// Picks the preferred state of a complemented-summing-register cycle.
///
/// A run cycle of extended weight w prefers the state (1^w 0^(n-w)). Any
/// other cycle prefers the numerically largest of its extended rotations
/// shaped `0^r 1^t 0 ... 1 0`, where t is the longest cyclic run of ones;
/// the preferred state is that rotation's window part.
pub fn preferred_state(f: &FeedbackSpec, c: &CycleRep) -> Result<PreferredState> {
    if f.kind() != RegisterKind::Csr {
        return Err(Error::NotComplementedParity);
    }
    if c.order() != f.order() {
        return Err(Error::OrderMismatch { expected: f.order(), actual: c.order() });
    }
    let n = f.order();
    let m = n + 1;
    let e0 = extended_rep(f, &c.state_at(0))?;
    let w = e0.weight() as usize;
    debug_assert_eq!(w % 2, 1, "complemented summing cycles have odd extended weight");
    if is_run_cycle(&e0) {
        let value = if w == m { (1u32 << n) - 1 } else { ((1u32 << w) - 1) << (n - w) };
        let state = State::new(n, value).expect("in range");
        debug_assert!(c.contains(&state));
        return Ok(PreferredState { state, r: 0, t: w, run_cycle: true });
    }
    let t = longest_cyclic_ones_run(e0.value(), m);
    let mut best: Option<(u32, usize)> = None;
    for s in c.states() {
        let e = extended_rep(f, &s)?;
        if let Some(r) = matches_preferred_form(e.value(), m, t) {
            if best.map_or(true, |(bv, _)| e.value() > bv) {
                best = Some((e.value(), r));
            }
        }
    }
    // A non-run cycle always admits a matching rotation: start right after
    // the "10" boundary that precedes a longest run.
    let (ev, r) = best.ok_or(Error::Internal("non-run cycle admits no preferred rotation"))?;
    let state = State::new(n, ev >> 1).expect("in range");
    Ok(PreferredState { state, r, t, run_cycle: false })
}

#[inline]
pub(crate) fn width_mask(width: usize) -> u32 {
    debug_assert!((1..=32).contains(&width));
    if width == 32 {
        u32::MAX
    } else {
        (1u32 << width) - 1
    }
}

#[inline]
pub(crate) fn rotl(bits: u32, width: usize, k: usize) -> u32 {
    let mask = width_mask(width);
    let k = k % width;
    if k == 0 {
        bits & mask
    } else {
        ((bits << k) | ((bits & mask) >> (width - k))) & mask
    }
}

/// Number of cyclic runs of ones in an m-bit vector.
pub(crate) fn cyclic_ones_runs(bits: u32, width: usize) -> u32 {
    let bits = bits & width_mask(width);
    // A run starts wherever a one sits right of a cyclic zero.
    let left_neighbor = rotl(bits, width, width - 1);
    (bits & !left_neighbor).count_ones()
}

/// Length of the longest cyclic run of ones in an m-bit vector.
pub(crate) fn longest_cyclic_ones_run(bits: u32, width: usize) -> usize {
    let mask = width_mask(width);
    let bits = bits & mask;
    if bits == mask {
        return width;
    }
    let mut y = bits;
    let mut len = 0;
    while y != 0 {
        y &= rotl(y, width, 1);
        len += 1;
    }
    len
}

/// Checks the shape `0^r 1^t 0 ... 1 0` and returns r on a match.
///
/// The caller supplies t as the longest cyclic run of ones of the vector, so
/// the leading run can never exceed it.
pub(crate) fn matches_preferred_form(bits: u32, width: usize, t: usize) -> Option<usize> {
    let bit = |i: usize| (bits >> (width - i)) & 1;
    if bit(width) != 0 || bit(width - 1) != 1 {
        return None;
    }
    let mut r = 0;
    while bit(r + 1) == 0 {
        r += 1;
    }
    if r + t + 3 > width {
        return None;
    }
    if (1..=t).any(|j| bit(r + j) != 1) {
        return None;
    }
    if bit(r + t + 1) != 0 {
        return None;
    }
    Some(r)
}

/// Largest rotation of the vector matching the preferred shape, with its r.
pub(crate) fn preferred_rotation(bits: u32, width: usize) -> Option<(u32, usize)> {
    let t = longest_cyclic_ones_run(bits, width);
    let mut best: Option<(u32, usize)> = None;
    for j in 0..width {
        let rot = rotl(bits, width, j);
        if let Some(r) = matches_preferred_form(rot, width, t) {
            if best.map_or(true, |(bv, _)| rot > bv) {
                best = Some((rot, r));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fsr::{cycle_of, decompose};

    fn st(s: &str) -> State {
        State::parse(s).unwrap()
    }

    #[test]
    fn extended_rep_appends_feedback_bit() {
        let csr7 = FeedbackSpec::csr(7).unwrap();
        let e = extended_rep(&csr7, &st("1000000")).unwrap();
        assert_eq!(e.to_string(), "10000000");
        assert_eq!(e.weight(), 1);
        let e = extended_rep(&csr7, &st("1111111")).unwrap();
        assert_eq!(e.to_string(), "11111110");
        assert_eq!(e.weight(), 7);
        let e = extended_rep(&csr7, &st("1100001")).unwrap();
        assert_eq!(e.to_string(), "11000010");
        assert_eq!(e.weight(), 3);
        assert_eq!(e.state(), st("1100001"));
        assert_eq!(e.feedback_bit(), 0);
    }

    #[test]
    fn run_detection_handles_wraparound() {
        assert!(is_run_cycle(&ExtRep::parse("00111000").unwrap()));
        assert!(is_run_cycle(&ExtRep::parse("10000001").unwrap()));
        assert!(!is_run_cycle(&ExtRep::parse("11000010").unwrap()));
        assert!(is_run_cycle(&ExtRep::parse("11111111").unwrap()));
        assert!(is_run_cycle(&ExtRep::parse("00000000").unwrap()));
    }

    #[test]
    fn cyclic_run_helpers_match_hand_counts() {
        assert_eq!(cyclic_ones_runs(0b11000010, 8), 2);
        assert_eq!(cyclic_ones_runs(0b10000001, 8), 1);
        assert_eq!(cyclic_ones_runs(0b01010101, 8), 4);
        assert_eq!(longest_cyclic_ones_run(0b1101101, 7), 3);
        assert_eq!(longest_cyclic_ones_run(0b1111001, 7), 5);
        assert_eq!(longest_cyclic_ones_run(0b1110101, 7), 4);
        assert_eq!(longest_cyclic_ones_run(0x7f, 7), 7);
        assert_eq!(longest_cyclic_ones_run(0, 7), 0);
    }

    #[test]
    fn preferred_form_matcher() {
        assert_eq!(matches_preferred_form(0b11000010, 8, 2), Some(0));
        assert_eq!(matches_preferred_form(0b01100010, 8, 2), Some(1));
        assert_eq!(matches_preferred_form(0b11110010, 8, 4), Some(0));
        assert_eq!(matches_preferred_form(0b10100010, 8, 1), Some(0));
        // last coordinate must be 0, the one before it 1
        assert_eq!(matches_preferred_form(0b11000101, 8, 2), None);
        assert_eq!(matches_preferred_form(0b11001000, 8, 2), None);
        // leading run shorter than t
        assert_eq!(matches_preferred_form(0b10110010, 8, 2), None);
        // no room for the closing "1 0" after the run block
        assert_eq!(matches_preferred_form(0b0111110, 7, 5), None);
    }

    #[test]
    fn preferred_state_of_run_cycles() {
        let csr7 = FeedbackSpec::csr(7).unwrap();
        let c = cycle_of(&csr7, &st("1110000")).unwrap();
        let p = preferred_state(&csr7, &c).unwrap();
        assert_eq!(p.state, st("1110000"));
        assert_eq!(p.state.decimal_label(), 113);
        assert!(p.run_cycle);
        assert_eq!(p.t, 3);

        // all-ones fixed point of the even-order register
        let csr4 = FeedbackSpec::csr(4).unwrap();
        let c = cycle_of(&csr4, &st("1111")).unwrap();
        assert_eq!(c.len(), 1);
        let p = preferred_state(&csr4, &c).unwrap();
        assert!(p.run_cycle);
        assert_eq!(p.state, st("1111"));
        assert_eq!(p.t, 5);
    }

    #[test]
    fn preferred_state_of_block_cycles() {
        let csr7 = FeedbackSpec::csr(7).unwrap();
        let c = cycle_of(&csr7, &st("1100001")).unwrap();
        let p = preferred_state(&csr7, &c).unwrap();
        assert_eq!(p.state.decimal_label(), 98);
        assert_eq!((p.r, p.t, p.run_cycle), (0, 2, false));

        let c = cycle_of(&csr7, &st("1111001")).unwrap();
        let p = preferred_state(&csr7, &c).unwrap();
        assert_eq!(p.state.decimal_label(), 122);
        assert_eq!((p.r, p.t, p.run_cycle), (0, 4, false));
    }

    #[test]
    fn preferred_state_requires_complemented_register() {
        let psr3 = FeedbackSpec::psr(3).unwrap();
        let c = cycle_of(&psr3, &st("001")).unwrap();
        assert_eq!(preferred_state(&psr3, &c), Err(Error::NotComplementedParity));
    }

    #[test]
    fn extended_weight_is_a_cycle_invariant() {
        let csr7 = FeedbackSpec::csr(7).unwrap();
        for c in decompose(&csr7).unwrap() {
            let w = extended_weight(&csr7, &c).unwrap();
            assert!(w % 2 == 1);
            for s in c.states() {
                assert_eq!(extended_rep(&csr7, &s).unwrap().weight(), w);
            }
        }
    }

    // The streaming generator searches rotations of a single extended vector;
    // the cycle walk in preferred_state enumerates extended vectors along the
    // cycle. Both must land on the same rotation.
    #[test]
    fn walk_and_rotation_search_agree() {
        for n in [5usize, 7, 9] {
            let f = FeedbackSpec::csr(n).unwrap();
            for c in decompose(&f).unwrap() {
                let e0 = extended_rep(&f, &c.state_at(0)).unwrap();
                if is_run_cycle(&e0) {
                    continue;
                }
                let p = preferred_state(&f, &c).unwrap();
                let (best, r) = preferred_rotation(e0.value(), n + 1).unwrap();
                assert_eq!(best >> 1, p.state.value());
                assert_eq!(r, p.r);
            }
        }
    }

    #[test]
    fn ext_rep_parsing_rejects_bad_input() {
        assert!(ExtRep::parse("01").is_err());
        assert!(ExtRep::parse("01x10011").is_err());
        assert!(ExtRep::from_bits(&[0, 1, 2, 0]).is_err());
    }
}
