//! Nonsingular feedback functions f(x1, ..., xn) = x1 xor g(x2, ..., xn).
//!
//! Keeping the leading variable linear makes the next-state map a bijection,
//! so the state graph is a disjoint union of pure cycles. The two registers
//! of interest take g to be the parity of the remaining stages (pure summing
//! register) or its complement (complemented summing register).

use crate::error::{Error, Result};
use crate::fsr::state::{State, MAX_ORDER, MIN_ORDER};

/// Largest truth-table arity we materialize (2^25 bits = 4 MiB).
pub const MAX_TABLE_VARS: usize = 25;
/// Largest register order for which a feedback spec can be built.
pub const MAX_SPEC_ORDER: usize = MAX_TABLE_VARS + 1;

/// Dense truth table of a boolean function of `vars` inputs.
///
/// Entry `i` is the value on the input whose bits are read from the integer
/// `i`, first argument most significant.
#[derive(Clone, PartialEq, Eq)]
pub struct TruthTable {
    vars: usize,
    blocks: Vec<u64>,
}

impl TruthTable {
    fn check_vars(vars: usize) -> Result<()> {
        if !(1..=MAX_TABLE_VARS).contains(&vars) {
            return Err(Error::VarsOutOfRange { vars, min: 1, max: MAX_TABLE_VARS });
        }
        Ok(())
    }

    pub fn zeros(vars: usize) -> Result<Self> {
        Self::check_vars(vars)?;
        let words = ((1usize << vars) + 63) / 64;
        Ok(TruthTable { vars, blocks: vec![0; words] })
    }

    pub fn from_fn(vars: usize, f: impl Fn(u32) -> u8) -> Result<Self> {
        let mut t = Self::zeros(vars)?;
        for i in 0..(1u32 << vars) {
            if f(i) & 1 == 1 {
                t.set(i, 1);
            }
        }
        Ok(t)
    }

    /// Table given as the low 2^vars bits of a word, entry 0 at bit 0.
    pub fn from_packed(vars: usize, bits: u64) -> Result<Self> {
        Self::check_vars(vars)?;
        if vars > 6 {
            return Err(Error::VarsOutOfRange { vars, min: 1, max: 6 });
        }
        let len = 1u64 << vars;
        let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
        Ok(TruthTable { vars, blocks: vec![bits & mask] })
    }

    /// Parity of all inputs.
    pub fn parity(vars: usize) -> Result<Self> {
        Self::from_fn(vars, |i| (i.count_ones() & 1) as u8)
    }

    /// Complemented parity of all inputs.
    pub fn complemented_parity(vars: usize) -> Result<Self> {
        Self::from_fn(vars, |i| (i.count_ones() & 1) as u8 ^ 1)
    }

    /// Symmetric function with the given value on each input weight.
    pub fn symmetric(vars: usize, values_by_weight: &[u8]) -> Result<Self> {
        if values_by_weight.len() != vars + 1 {
            return Err(Error::LengthMismatch { expected: vars + 1, actual: values_by_weight.len() });
        }
        Self::from_fn(vars, |i| values_by_weight[i.count_ones() as usize])
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn len(&self) -> usize {
        1 << self.vars
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn get(&self, i: u32) -> u8 {
        let i = i as usize;
        debug_assert!(i < self.len());
        ((self.blocks[i >> 6] >> (i & 63)) & 1) as u8
    }

    pub(crate) fn set(&mut self, i: u32, b: u8) {
        let i = i as usize;
        debug_assert!(i < self.len());
        if b & 1 == 1 {
            self.blocks[i >> 6] |= 1u64 << (i & 63);
        } else {
            self.blocks[i >> 6] &= !(1u64 << (i & 63));
        }
    }

    pub fn bit_string(&self) -> String {
        (0..self.len() as u32).map(|i| if self.get(i) == 1 { '1' } else { '0' }).collect()
    }
}

impl std::fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.vars <= 6 {
            write!(f, "TruthTable({} vars, {})", self.vars, self.bit_string())
        } else {
            write!(f, "TruthTable({} vars)", self.vars)
        }
    }
}

/// Shape of the feedback function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegisterKind {
    /// g is the parity of the remaining stages.
    Psr,
    /// g is the complemented parity of the remaining stages.
    Csr,
    /// Any other g.
    General,
}

/// A concrete nonsingular feedback function of order n.
#[derive(Clone, PartialEq, Eq)]
pub struct FeedbackSpec {
    n: usize,
    kind: RegisterKind,
    g_table: TruthTable,
}

impl FeedbackSpec {
    /// Pure summing register: f = x1 xor ... xor xn.
    pub fn psr(n: usize) -> Result<Self> {
        check_spec_order(n)?;
        Ok(FeedbackSpec { n, kind: RegisterKind::Psr, g_table: TruthTable::parity(n - 1)? })
    }

    /// Complemented summing register: f = x1 xor ... xor xn xor 1.
    pub fn csr(n: usize) -> Result<Self> {
        check_spec_order(n)?;
        Ok(FeedbackSpec { n, kind: RegisterKind::Csr, g_table: TruthTable::complemented_parity(n - 1)? })
    }

    /// Wraps an arbitrary g, classifying the summing registers by content.
    pub fn from_g_table(n: usize, g_table: TruthTable) -> Result<Self> {
        check_spec_order(n)?;
        if g_table.vars() != n - 1 {
            return Err(Error::VarsOutOfRange { vars: g_table.vars(), min: n - 1, max: n - 1 });
        }
        let mut all_parity = true;
        let mut all_complement = true;
        for i in 0..(1u32 << (n - 1)) {
            let p = (i.count_ones() & 1) as u8;
            if g_table.get(i) == p {
                all_complement = false;
            } else {
                all_parity = false;
            }
            if !all_parity && !all_complement {
                break;
            }
        }
        let kind = if all_parity {
            RegisterKind::Psr
        } else if all_complement {
            RegisterKind::Csr
        } else {
            RegisterKind::General
        };
        Ok(FeedbackSpec { n, kind, g_table })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> RegisterKind {
        self.kind
    }

    pub fn g_table(&self) -> &TruthTable {
        &self.g_table
    }

    fn check_state(&self, s: &State) -> Result<()> {
        if s.order() != self.n {
            return Err(Error::OrderMismatch { expected: self.n, actual: s.order() });
        }
        Ok(())
    }

    /// Feedback bit f(s).
    pub fn eval(&self, s: &State) -> Result<u8> {
        self.check_state(s)?;
        Ok(self.eval_value(s.value()) as u8)
    }

    /// Next window: drop a1, shift, append f(s).
    pub fn next_state(&self, s: &State) -> Result<State> {
        self.check_state(s)?;
        Ok(State::new(self.n, self.step_value(s.value())).expect("stepped value in range"))
    }

    /// The unique state mapped onto s by next_state.
    pub fn predecessor(&self, s: &State) -> Result<State> {
        self.check_state(s)?;
        Ok(State::new(self.n, self.pred_value(s.value())).expect("pred value in range"))
    }

    #[inline]
    pub(crate) fn mask(&self) -> u32 {
        if self.n == 32 { u32::MAX } else { (1u32 << self.n) - 1 }
    }

    #[inline]
    pub(crate) fn eval_value(&self, v: u32) -> u32 {
        let a1 = v >> (self.n - 1);
        let rest = v & (self.mask() >> 1);
        let g = match self.kind {
            RegisterKind::Psr => rest.count_ones() & 1,
            RegisterKind::Csr => (rest.count_ones() & 1) ^ 1,
            RegisterKind::General => u32::from(self.g_table.get(rest)),
        };
        (a1 ^ g) & 1
    }

    #[inline]
    pub(crate) fn step_value(&self, v: u32) -> u32 {
        ((v << 1) & self.mask()) | self.eval_value(v)
    }

    #[inline]
    pub(crate) fn pred_value(&self, v: u32) -> u32 {
        // The predecessor is (x, a1, ..., a_{n-1}) with x xor g(a1..a_{n-1}) = an.
        let head = v >> 1;
        let g = match self.kind {
            RegisterKind::Psr => head.count_ones() & 1,
            RegisterKind::Csr => (head.count_ones() & 1) ^ 1,
            RegisterKind::General => u32::from(self.g_table.get(head)),
        };
        let x = (v & 1) ^ g;
        head | (x << (self.n - 1))
    }
}

fn check_spec_order(n: usize) -> Result<()> {
    if !(MIN_ORDER..=MAX_SPEC_ORDER.min(MAX_ORDER)).contains(&n) {
        return Err(Error::OrderOutOfRange { n, min: MIN_ORDER, max: MAX_SPEC_ORDER });
    }
    Ok(())
}

impl std::fmt::Debug for FeedbackSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FeedbackSpec(n={}, {:?})", self.n, self.kind)
    }
}
