//! Symmetric Boolean functions in two coordinate systems.
//!
//! A symmetric function of n variables is fixed by its value vector
//! (v_0, ..., v_n), the output per input weight. The same function expands
//! uniquely over the elementary symmetric monomial sums X_0, ..., X_n; the
//! coefficient vector is tied to the value vector by an XOR over 2-adically
//! dominated indices, and that transform is its own inverse. Evaluation by
//! coefficients reduces to binomial parities, so both routes run in time
//! linear in n.

use crate::error::{Error, Result};
use crate::fsr::TruthTable;

/// 2-adic dominance: every binary digit of a is also set in b.
///
/// Equivalent to C(b, a) being odd.
pub fn dominated_by(a: u64, b: u64) -> bool {
    a & b == a
}

fn check_bits(bits: &[u8]) -> Result<()> {
    if bits.is_empty() {
        return Err(Error::LengthMismatch { expected: 1, actual: 0 });
    }
    for (position, &b) in bits.iter().enumerate() {
        if b > 1 {
            return Err(Error::InvalidBit { position, found: (b'0' + b.min(9)) as char });
        }
    }
    Ok(())
}

// out[i] = XOR of in[k] over all k dominated by i; the (k-1) & i walk
// enumerates exactly those k.
fn dominance_transform(v: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(v.len());
    for i in 0..v.len() {
        let mut acc = 0u8;
        let mut k = i;
        loop {
            acc ^= v[k];
            if k == 0 {
                break;
            }
            k = (k - 1) & i;
        }
        out.push(acc);
    }
    out
}

/// Value vector to monomial coefficients. Involution: applying it twice
/// returns the input.
pub fn value_to_anf(values: &[u8]) -> Result<Vec<u8>> {
    check_bits(values)?;
    Ok(dominance_transform(values))
}

/// Monomial coefficients to value vector; the same transform.
pub fn anf_to_value(coeffs: &[u8]) -> Result<Vec<u8>> {
    check_bits(coeffs)?;
    Ok(dominance_transform(coeffs))
}

/// A symmetric function of n variables held in both coordinate systems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymFn {
    n: usize,
    values: Vec<u8>,
    coeffs: Vec<u8>,
}

impl SymFn {
    /// From the value vector (v_0, ..., v_n); n is one less than its length.
    pub fn from_value_vector(values: &[u8]) -> Result<Self> {
        check_bits(values)?;
        let coeffs = dominance_transform(values);
        Ok(SymFn { n: values.len() - 1, values: values.to_vec(), coeffs })
    }

    /// From the monomial coefficient vector (λ_0, ..., λ_n).
    pub fn from_anf_vector(coeffs: &[u8]) -> Result<Self> {
        check_bits(coeffs)?;
        let values = dominance_transform(coeffs);
        Ok(SymFn { n: coeffs.len() - 1, values, coeffs: coeffs.to_vec() })
    }

    /// Number of variables.
    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn value_vector(&self) -> &[u8] {
        &self.values
    }

    pub fn anf_vector(&self) -> &[u8] {
        &self.coeffs
    }

    /// Looks the output up by input weight.
    pub fn eval(&self, x: &[u8]) -> Result<u8> {
        check_input(x, self.n)?;
        let w = x.iter().filter(|&&b| b == 1).count();
        Ok(self.values[w])
    }

    /// Sums the monomial contributions instead: X_i is odd on x exactly
    /// when i is dominated by the weight of x.
    pub fn eval_anf_route(&self, x: &[u8]) -> Result<u8> {
        check_input(x, self.n)?;
        let w = x.iter().filter(|&&b| b == 1).count() as u64;
        let mut acc = 0u8;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 1 && dominated_by(i as u64, w) {
                acc ^= 1;
            }
        }
        Ok(acc)
    }
}

fn check_input(x: &[u8], n: usize) -> Result<()> {
    if x.len() != n {
        return Err(Error::LengthMismatch { expected: n, actual: x.len() });
    }
    for (position, &b) in x.iter().enumerate() {
        if b > 1 {
            return Err(Error::InvalidBit { position, found: (b'0' + b.min(9)) as char });
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelVerdict {
    AllZero,
    AllOne,
    Mixed,
}

/// Collapses a truth table by input weight: one verdict per weight level.
pub fn restriction_profile(g: &TruthTable) -> Vec<LevelVerdict> {
    let vars = g.vars();
    let mut levels: Vec<Option<(u8, bool)>> = vec![None; vars + 1];
    for i in 0..g.len() as u32 {
        let w = i.count_ones() as usize;
        let b = g.get(i);
        match &mut levels[w] {
            slot @ None => *slot = Some((b, false)),
            Some((first, mixed)) => {
                if *first != b {
                    *mixed = true;
                }
            }
        }
    }
    levels
        .into_iter()
        .map(|slot| match slot.expect("every weight level is populated") {
            (_, true) => LevelVerdict::Mixed,
            (0, false) => LevelVerdict::AllZero,
            _ => LevelVerdict::AllOne,
        })
        .collect()
}

/// Is the table constant on every weight level?
pub fn is_symmetric(g: &TruthTable) -> bool {
    !restriction_profile(g).contains(&LevelVerdict::Mixed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlternatingPhase {
    /// One on even weights, zero on odd: complemented parity.
    EvensOne,
    /// One on odd weights, zero on even: parity.
    OddsOne,
}

/// Detects a strictly alternating profile with no mixed level.
pub fn alternating_phase(profile: &[LevelVerdict]) -> Option<AlternatingPhase> {
    let matches_phase = |even: LevelVerdict, odd: LevelVerdict| {
        profile
            .iter()
            .enumerate()
            .all(|(w, v)| *v == if w % 2 == 0 { even } else { odd })
    };
    if profile.is_empty() {
        None
    } else if matches_phase(LevelVerdict::AllOne, LevelVerdict::AllZero) {
        Some(AlternatingPhase::EvensOne)
    } else if matches_phase(LevelVerdict::AllZero, LevelVerdict::AllOne) {
        Some(AlternatingPhase::OddsOne)
    } else {
        None
    }
}
