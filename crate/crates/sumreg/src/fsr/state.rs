//! Register states as fixed-width bit windows.

use crate::error::{Error, Result};
use std::fmt;

/// Smallest supported register order.
pub const MIN_ORDER: usize = 2;
/// Largest order for which a state fits the packed representation.
pub const MAX_ORDER: usize = 31;

/// One state of an n-stage register: the window (a1, ..., an), a1 oldest.
///
/// Packed into a `u32` with a1 as the most significant of the n bits, so
/// shifting the register left by one and appending the feedback bit at the
/// bottom advances the window.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    n: usize,
    value: u32,
}

impl State {
    pub fn new(n: usize, value: u32) -> Result<Self> {
        if !(MIN_ORDER..=MAX_ORDER).contains(&n) {
            return Err(Error::OrderOutOfRange { n, min: MIN_ORDER, max: MAX_ORDER });
        }
        if u64::from(value) >= 1u64 << n {
            return Err(Error::LengthMismatch { expected: n, actual: 32 - value.leading_zeros() as usize });
        }
        Ok(State { n, value })
    }

    /// Builds a state from bits in register order, a1 first.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let mut value = 0u32;
        for (i, &b) in bits.iter().enumerate() {
            if b > 1 {
                return Err(Error::InvalidBit { position: i, found: (b'0' + b) as char });
            }
            value = (value << 1) | u32::from(b);
        }
        State::new(bits.len(), value)
    }

    /// Parses a bit string such as `"0111111"`, a1 first.
    pub fn parse(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => bits.push(0),
                '1' => bits.push(1),
                _ => return Err(Error::InvalidBit { position: i, found: ch }),
            }
        }
        State::from_bits(&bits)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    /// The window bit a_i, 1-indexed from the oldest stage.
    pub fn bit(&self, i: usize) -> u8 {
        debug_assert!((1..=self.n).contains(&i));
        ((self.value >> (self.n - i)) & 1) as u8
    }

    pub fn bits(&self) -> Vec<u8> {
        (1..=self.n).map(|i| self.bit(i)).collect()
    }

    pub fn weight(&self) -> u32 {
        self.value.count_ones()
    }

    pub fn parity(&self) -> u8 {
        (self.value.count_ones() & 1) as u8
    }

    /// Same window with the first bit flipped.
    pub fn conjugate(&self) -> State {
        State { n: self.n, value: self.value ^ (1 << (self.n - 1)) }
    }

    /// Same window with the last bit flipped.
    pub fn companion(&self) -> State {
        State { n: self.n, value: self.value ^ 1 }
    }

    /// One-based decimal label used in printed cycle listings.
    pub fn decimal_label(&self) -> u64 {
        u64::from(self.value) + 1
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.n {
            write!(f, "{}", self.bit(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "State({self})")
    }
}
