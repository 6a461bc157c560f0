//! Cycle decomposition and cycle joining.
//!
//! A cycle is stored through its sequence of first digits: writing down a1 of
//! every state along the cycle gives a cyclic bit string of the cycle length,
//! and sliding an n-bit window over that string recovers the states. The
//! stored rotation is the lexicographically least one, which is unique
//! because the digit string of an l-cycle is always aperiodic.

use crate::error::{Error, Result};
use crate::fsr::feedback::FeedbackSpec;
use crate::fsr::state::State;
use std::collections::HashMap;

/// Default bound on full state enumeration (2^22 states).
pub const DEFAULT_ENUMERATION_CAP: usize = 22;

/// One cycle of a feedback spec, in canonical (least-rotation) digit form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycleRep {
    n: usize,
    digits: Vec<u8>,
}

impl CycleRep {
    /// Canonicalizes a digit sequence recorded along a cycle walk.
    pub(crate) fn from_walk(n: usize, mut digits: Vec<u8>) -> Self {
        let start = least_rotation(&digits);
        digits.rotate_left(start);
        CycleRep { n, digits }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn digit_string(&self) -> String {
        self.digits.iter().map(|&d| if d == 1 { '1' } else { '0' }).collect()
    }

    /// State whose window starts at digit position j.
    pub fn state_at(&self, j: usize) -> State {
        let l = self.digits.len();
        let mut v = 0u32;
        for i in 0..self.n {
            v = (v << 1) | u32::from(self.digits[(j + i) % l]);
        }
        State::new(self.n, v).expect("window in range")
    }

    /// All states in successor order, starting at the canonical rotation.
    pub fn states(&self) -> Vec<State> {
        (0..self.len()).map(|j| self.state_at(j)).collect()
    }

    pub fn contains(&self, s: &State) -> bool {
        s.order() == self.n && (0..self.len()).any(|j| self.state_at(j) == *s)
    }

    pub fn min_state(&self) -> State {
        self.states().into_iter().min().expect("cycle is nonempty")
    }

    /// All states in successor order, starting at the smallest value.
    pub fn states_from_min(&self) -> Vec<State> {
        let states = self.states();
        let at = states
            .iter()
            .enumerate()
            .min_by_key(|(_, s)| s.value())
            .map(|(j, _)| j)
            .expect("cycle is nonempty");
        let mut out = states;
        out.rotate_left(at);
        out
    }

    /// True iff stepping under f walks exactly this cycle.
    pub fn is_valid_for(&self, f: &FeedbackSpec) -> bool {
        if f.order() != self.n {
            return false;
        }
        let l = self.len();
        (0..l).all(|j| {
            f.step_value(self.state_at(j).value()) == self.state_at((j + 1) % l).value()
        })
    }
}

impl std::fmt::Debug for CycleRep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CycleRep(n={}, [{}])", self.n, self.digit_string())
    }
}

/// Index of the lexicographically least rotation (Booth-style two-pointer).
fn least_rotation(s: &[u8]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = s[(i + k) % n];
        let b = s[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

/// Splits the whole state space of f into its cycles.
///
/// Cycles come back sorted by (length, digit string).
pub fn decompose(f: &FeedbackSpec) -> Result<Vec<CycleRep>> {
    decompose_with_cap(f, DEFAULT_ENUMERATION_CAP)
}

/// decompose with an explicit bound on the enumerated order.
pub fn decompose_with_cap(f: &FeedbackSpec, cap: usize) -> Result<Vec<CycleRep>> {
    let n = f.order();
    if n > cap {
        return Err(Error::EnumerationCapExceeded { n, cap });
    }
    let total = 1usize << n;
    let mut visited = vec![0u64; (total + 63) / 64];
    let mut cycles = Vec::new();
    for start in 0..total as u32 {
        if visited[start as usize >> 6] >> (start & 63) & 1 == 1 {
            continue;
        }
        let mut digits = Vec::new();
        let mut v = start;
        loop {
            visited[v as usize >> 6] |= 1u64 << (v & 63);
            digits.push((v >> (n - 1)) as u8);
            v = f.step_value(v);
            if v == start {
                break;
            }
        }
        cycles.push(CycleRep::from_walk(n, digits));
    }
    cycles.sort_by(|a, b| (a.len(), a.digits()).cmp(&(b.len(), b.digits())));
    Ok(cycles)
}

/// The cycle through s under f.
pub fn cycle_of(f: &FeedbackSpec, s: &State) -> Result<CycleRep> {
    if s.order() != f.order() {
        return Err(Error::OrderMismatch { expected: f.order(), actual: s.order() });
    }
    let n = f.order();
    let start = s.value();
    let mut digits = Vec::new();
    let mut v = start;
    loop {
        digits.push((v >> (n - 1)) as u8);
        v = f.step_value(v);
        if v == start {
            break;
        }
    }
    Ok(CycleRep::from_walk(n, digits))
}

/// Which cross-cycle state pair anchors a join.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    /// shared and conjugate(shared): successors of the pair itself are swapped.
    Conjugate,
    /// shared and companion(shared): successors of the pair's predecessors are
    /// swapped, which is the same surgery one step earlier.
    Companion,
}

/// Merges two cycles that share a conjugate or companion pair.
///
/// `shared` must lie on c1 and its partner on c2. Each cycle contributes the
/// successor relation recorded in its digit walk, so already-merged cycles
/// (whose successors deviate from f at earlier swap sites) join correctly.
/// The two swap-site successors are interchanged and the combined orbit is
/// returned; its length is c1.len() + c2.len().
pub fn join_cycles(
    f: &FeedbackSpec,
    c1: &CycleRep,
    c2: &CycleRep,
    shared: &State,
    pair: PairKind,
) -> Result<CycleRep> {
    let n = f.order();
    if shared.order() != n {
        return Err(Error::OrderMismatch { expected: n, actual: shared.order() });
    }
    if c1.order() != n || c2.order() != n {
        return Err(Error::OrderMismatch {
            expected: n,
            actual: if c1.order() != n { c1.order() } else { c2.order() },
        });
    }
    if c1 == c2 {
        return Err(Error::CyclesNotDistinct);
    }
    let partner = match pair {
        PairKind::Conjugate => shared.conjugate(),
        PairKind::Companion => shared.companion(),
    };
    let values1: Vec<u32> = (0..c1.len()).map(|j| c1.state_at(j).value()).collect();
    let values2: Vec<u32> = (0..c2.len()).map(|j| c2.state_at(j).value()).collect();
    let pos1 = values1
        .iter()
        .position(|&v| v == shared.value())
        .ok_or_else(|| Error::StateNotOnCycle { state: shared.to_string() })?;
    let pos2 = values2
        .iter()
        .position(|&v| v == partner.value())
        .ok_or_else(|| Error::PartnerNotOnCycle { state: partner.to_string() })?;
    // Reduce both variants to one conjugate swap site: for a companion pair
    // the in-cycle predecessors of the pair are conjugates.
    let (q, qc) = match pair {
        PairKind::Conjugate => (shared.value(), partner.value()),
        PairKind::Companion => (
            values1[(pos1 + values1.len() - 1) % values1.len()],
            values2[(pos2 + values2.len() - 1) % values2.len()],
        ),
    };
    debug_assert_eq!(q ^ (1 << (n - 1)), qc, "swap sites must be conjugates");
    let target = values1.len() + values2.len();
    let mut succ: HashMap<u32, u32> = HashMap::with_capacity(target);
    for (j, &v) in values1.iter().enumerate() {
        succ.insert(v, values1[(j + 1) % values1.len()]);
    }
    for (j, &v) in values2.iter().enumerate() {
        succ.insert(v, values2[(j + 1) % values2.len()]);
    }
    let swapped_q = succ[&qc];
    let swapped_qc = succ[&q];
    succ.insert(q, swapped_q);
    succ.insert(qc, swapped_qc);
    let start = values1[0];
    let mut digits = Vec::with_capacity(target);
    let mut v = start;
    for _ in 0..target {
        digits.push((v >> (n - 1)) as u8);
        v = succ[&v];
        if v == start {
            break;
        }
    }
    if digits.len() != target || v != start {
        return Err(Error::Internal("joined walk did not close at the expected length"));
    }
    Ok(CycleRep::from_walk(n, digits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fsr::feedback::TruthTable;

    fn st(s: &str) -> State {
        State::parse(s).unwrap()
    }

    fn digit_strings(cycles: &[CycleRep]) -> Vec<String> {
        cycles.iter().map(|c| c.digit_string()).collect()
    }

    // Hand-walked: 000 and 111 are fixed, 010<->101, and
    // 001 -> 011 -> 110 -> 100 -> 001.
    #[test]
    fn psr3_decomposes_into_known_cycles() {
        let f = FeedbackSpec::psr(3).unwrap();
        let cycles = decompose(&f).unwrap();
        assert_eq!(digit_strings(&cycles), ["0", "1", "01", "0011"]);
        let lengths: Vec<usize> = cycles.iter().map(|c| c.len()).collect();
        assert_eq!(lengths, [1, 1, 2, 4]);
    }

    // Hand-walked: 000 -> 001 -> 010 -> 100 -> 000 and
    // 011 -> 111 -> 110 -> 101 -> 011.
    #[test]
    fn csr3_decomposes_into_two_four_cycles() {
        let f = FeedbackSpec::csr(3).unwrap();
        let cycles = decompose(&f).unwrap();
        assert_eq!(digit_strings(&cycles), ["0001", "0111"]);
    }

    #[test]
    fn csr7_has_sixteen_cycles_of_length_eight() {
        let f = FeedbackSpec::csr(7).unwrap();
        let cycles = decompose(&f).unwrap();
        assert_eq!(cycles.len(), 16);
        assert!(cycles.iter().all(|c| c.len() == 8));
    }

    #[test]
    fn cycle_of_matches_decompose() {
        let f = FeedbackSpec::csr(7).unwrap();
        let c = cycle_of(&f, &st("0000000")).unwrap();
        assert_eq!(c.digit_string(), "00000001");
        let labels: Vec<u64> = c.states_from_min().iter().map(|s| s.decimal_label()).collect();
        assert_eq!(labels, [1, 2, 3, 5, 9, 17, 33, 65]);

        let psr3 = FeedbackSpec::psr(3).unwrap();
        assert_eq!(cycle_of(&psr3, &st("000")).unwrap().digit_string(), "0");

        // 11 is fixed under the order-2 complemented summing register.
        let csr2 = FeedbackSpec::csr(2).unwrap();
        assert_eq!(cycle_of(&csr2, &st("11")).unwrap().digit_string(), "1");
    }

    #[test]
    fn decompose_partitions_the_state_space() {
        let table = TruthTable::from_fn(5, |i| ((i ^ (i >> 2)) & 1) as u8).unwrap();
        let specs = [
            FeedbackSpec::psr(6).unwrap(),
            FeedbackSpec::csr(6).unwrap(),
            FeedbackSpec::from_g_table(6, table).unwrap(),
        ];
        for f in specs {
            let cycles = decompose(&f).unwrap();
            let mut seen = vec![false; 64];
            for c in &cycles {
                assert!(c.is_valid_for(&f));
                for s in c.states() {
                    assert!(!seen[s.value() as usize]);
                    seen[s.value() as usize] = true;
                }
            }
            assert!(seen.iter().all(|&b| b));
            assert_eq!(cycles.iter().map(|c| c.len()).sum::<usize>(), 64);
        }
    }

    #[test]
    fn decompose_respects_cap() {
        let f = FeedbackSpec::csr(8).unwrap();
        assert_eq!(
            decompose_with_cap(&f, 6),
            Err(Error::EnumerationCapExceeded { n: 8, cap: 6 })
        );
    }

    #[test]
    fn join_csr3_yields_full_cycle() {
        let f = FeedbackSpec::csr(3).unwrap();
        let cycles = decompose(&f).unwrap();
        // 010 lies on the first cycle, its companion 011 on the second.
        let joined =
            join_cycles(&f, &cycles[0], &cycles[1], &st("010"), PairKind::Companion).unwrap();
        assert_eq!(joined.len(), 8);
        assert_eq!(joined.digit_string(), "00011101");
    }

    #[test]
    fn join_fixed_point_via_conjugate() {
        // Order-2 pure summing register: fixed point 00 plus a 3-cycle; the
        // conjugate pair (00, 10) glues them into the full 4-cycle.
        let f = FeedbackSpec::psr(2).unwrap();
        let cycles = decompose(&f).unwrap();
        assert_eq!(digit_strings(&cycles), ["0", "011"]);
        let joined =
            join_cycles(&f, &cycles[0], &cycles[1], &st("00"), PairKind::Conjugate).unwrap();
        assert_eq!(joined.digit_string(), "0011");
    }

    #[test]
    fn join_rejects_bad_pairs() {
        let f = FeedbackSpec::csr(3).unwrap();
        let cycles = decompose(&f).unwrap();
        assert_eq!(
            join_cycles(&f, &cycles[0], &cycles[1], &st("011"), PairKind::Companion),
            Err(Error::StateNotOnCycle { state: "011".into() })
        );
        // 000's companion 001 is on the same cycle, not on the second.
        assert_eq!(
            join_cycles(&f, &cycles[0], &cycles[1], &st("000"), PairKind::Companion),
            Err(Error::PartnerNotOnCycle { state: "001".into() })
        );
        assert_eq!(
            join_cycles(&f, &cycles[0], &cycles[0], &st("000"), PairKind::Companion),
            Err(Error::CyclesNotDistinct)
        );
    }

    #[test]
    fn canonical_rotation_is_least() {
        assert_eq!(least_rotation(&[1, 0, 0, 1, 0]), 1);
        assert_eq!(least_rotation(&[1, 1, 1]), 0);
        assert_eq!(least_rotation(&[1, 0]), 1);
        let c = CycleRep::from_walk(3, vec![1, 1, 0, 0]);
        assert_eq!(c.digit_string(), "0011");
    }
}
