//! Feedback functions whose cycle lengths all divide n+1.
//!
//! The pure and complemented summing registers both have this divisibility
//! property, and an exhaustive scan over small orders shows they are the only
//! nonsingular feedbacks that do. The property is equivalent to every cycle
//! carrying a constant extended weight, which [`extended_weight_constant`]
//! checks directly.

use crate::debruijn::extended_rep;
use crate::error::{Error, Result};
use crate::fsr::{
    decompose, CycleRep, FeedbackSpec, TruthTable, DEFAULT_ENUMERATION_CAP, MIN_ORDER,
};

/// Largest order for which all 2^(2^(n-1)) feedbacks are scanned.
pub const MAX_EXHAUSTIVE_ORDER: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OmegaMembership {
    Member,
    /// A cycle whose length does not divide n+1.
    NonMember { witness: CycleRep },
}

impl OmegaMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, OmegaMembership::Member)
    }
}

/// Do all cycle lengths of f divide n+1?
pub fn in_omega(f: &FeedbackSpec) -> Result<OmegaMembership> {
    let modulus = f.order() as u64 + 1;
    for c in decompose(f)? {
        if modulus % c.len() as u64 != 0 {
            return Ok(OmegaMembership::NonMember { witness: c });
        }
    }
    Ok(OmegaMembership::Member)
}

/// Does every state of the cycle carry the same extended weight?
///
/// Holds exactly when the cycle's length divides n+1, for any nonsingular
/// feedback.
pub fn extended_weight_constant(f: &FeedbackSpec, c: &CycleRep) -> Result<bool> {
    if c.order() != f.order() {
        return Err(Error::OrderMismatch { expected: f.order(), actual: c.order() });
    }
    let w = extended_rep(f, &c.state_at(0))?.weight();
    for s in c.states() {
        if extended_rep(f, &s)?.weight() != w {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchScope {
    /// Every nonsingular feedback of the order; bounded by
    /// [`MAX_EXHAUSTIVE_ORDER`].
    Exhaustive,
    /// Only feedbacks whose g depends on its arguments through their weight.
    SymmetricOnly,
}

/// One candidate's outcome.
///
/// `g_bits` packs the candidate: under [`SearchScope::Exhaustive`] bit i is
/// g on input i; under [`SearchScope::SymmetricOnly`] bit w is g on the
/// inputs of weight w.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OmegaVerdict {
    pub g_bits: u64,
    pub in_omega: bool,
    pub offending_length: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct OmegaReport {
    pub n: usize,
    pub scope: SearchScope,
    pub verdicts: Vec<OmegaVerdict>,
}

impl OmegaReport {
    pub fn member_count(&self) -> usize {
        self.verdicts.iter().filter(|v| v.in_omega).count()
    }

    /// Reconstructs the member feedbacks from their packed verdicts.
    pub fn members(&self) -> Result<Vec<FeedbackSpec>> {
        let vars = self.n - 1;
        let mut out = Vec::new();
        for v in self.verdicts.iter().filter(|v| v.in_omega) {
            let table = match self.scope {
                SearchScope::Exhaustive => TruthTable::from_packed(vars, v.g_bits)?,
                SearchScope::SymmetricOnly => {
                    let values: Vec<u8> =
                        (0..=vars).map(|w| ((v.g_bits >> w) & 1) as u8).collect();
                    TruthTable::symmetric(vars, &values)?
                }
            };
            out.push(FeedbackSpec::from_g_table(self.n, table)?);
        }
        Ok(out)
    }
}

// Walks the state graph of f = x1 XOR g(x2..xn) and reports whether all
// orbit lengths divide n+1, with the first offending length.
fn orbit_lengths_divide(n: usize, g: impl Fn(u32) -> u32) -> (bool, Option<u64>) {
    let total: usize = 1 << n;
    let mask = (total - 1) as u32;
    let suffix_mask = mask >> 1;
    let modulus = n as u64 + 1;
    let mut visited = vec![false; total];
    for start in 0..total as u32 {
        if visited[start as usize] {
            continue;
        }
        let mut v = start;
        let mut len = 0u64;
        loop {
            visited[v as usize] = true;
            len += 1;
            let feedback = ((v >> (n - 1)) ^ g(v & suffix_mask)) & 1;
            v = ((v << 1) & mask) | feedback;
            if v == start {
                break;
            }
        }
        if modulus % len != 0 {
            return (false, Some(len));
        }
    }
    (true, None)
}

/// Scans candidate feedbacks of order n and records who keeps all cycle
/// lengths dividing n+1.
pub fn enumerate_omega(n: usize, scope: SearchScope) -> Result<OmegaReport> {
    if n < MIN_ORDER {
        return Err(Error::OrderTooSmall { n, min: MIN_ORDER });
    }
    let mut verdicts = Vec::new();
    match scope {
        SearchScope::Exhaustive => {
            if n > MAX_EXHAUSTIVE_ORDER {
                return Err(Error::ScopeTooLarge { n, max: MAX_EXHAUSTIVE_ORDER });
            }
            let table_bits = 1usize << (n - 1);
            for g_bits in 0..(1u64 << table_bits) {
                let (ok, bad) = orbit_lengths_divide(n, |i| ((g_bits >> i) & 1) as u32);
                verdicts.push(OmegaVerdict { g_bits, in_omega: ok, offending_length: bad });
            }
        }
        SearchScope::SymmetricOnly => {
            if n > DEFAULT_ENUMERATION_CAP {
                return Err(Error::EnumerationCapExceeded { n, cap: DEFAULT_ENUMERATION_CAP });
            }
            for g_bits in 0..(1u64 << n) {
                let (ok, bad) =
                    orbit_lengths_divide(n, |i| ((g_bits >> i.count_ones()) & 1) as u32);
                verdicts.push(OmegaVerdict { g_bits, in_omega: ok, offending_length: bad });
            }
        }
    }
    Ok(OmegaReport { n, scope, verdicts })
}
