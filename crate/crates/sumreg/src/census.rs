//! Closed-form cycle censuses for the two summing registers.
//!
//! Every cycle length of an order-n summing register divides n+1, so a census
//! is a map from divisors d of n+1 to cycle counts. The counts follow from
//! Moebius inversion over the period-d digit strings compatible with the
//! feedback rule; totals follow from the matching Euler-phi sums. All
//! arithmetic runs in big integers and every division is checked to be exact.
//!
//! Counts here are indexed by the register order n, with d running over the
//! divisors of n+1.

use crate::error::{Error, Result};
use crate::fsr::{decompose, FeedbackSpec, RegisterKind, MIN_ORDER};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};

/// Memoized Moebius/totient/divisor lookups.
///
/// Construct one per computation; the census functions below do so
/// internally, which keeps them safe to call from multiple threads.
#[derive(Default, Debug)]
pub struct NumberTheoryCache {
    mobius: HashMap<u64, i8>,
    phi: HashMap<u64, u64>,
    divisors: HashMap<u64, Vec<u64>>,
}

fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    assert!(m >= 1);
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

impl NumberTheoryCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn mobius(&mut self, m: u64) -> i8 {
        if let Some(&v) = self.mobius.get(&m) {
            return v;
        }
        let factors = factorize(m);
        let v = if factors.iter().any(|&(_, e)| e > 1) {
            0
        } else if factors.len() % 2 == 0 {
            1
        } else {
            -1
        };
        self.mobius.insert(m, v);
        v
    }

    pub fn phi(&mut self, m: u64) -> u64 {
        if let Some(&v) = self.phi.get(&m) {
            return v;
        }
        let mut v = m;
        for (p, _) in factorize(m) {
            v = v / p * (p - 1);
        }
        self.phi.insert(m, v);
        v
    }

    /// Divisors of m in ascending order.
    pub fn divisors(&mut self, m: u64) -> Vec<u64> {
        if let Some(v) = self.divisors.get(&m) {
            return v.clone();
        }
        let mut out = vec![1u64];
        for (p, e) in factorize(m) {
            let prev = out.clone();
            let mut pe = 1u64;
            for _ in 0..e {
                pe *= p;
                out.extend(prev.iter().map(|&d| d * pe));
            }
        }
        out.sort_unstable();
        self.divisors.insert(m, out.clone());
        out
    }
}

fn check_census_args(n: usize, d: u64) -> Result<()> {
    if n < MIN_ORDER {
        return Err(Error::OrderTooSmall { n, min: MIN_ORDER });
    }
    let modulus = n as u64 + 1;
    if d == 0 || modulus % d != 0 {
        return Err(Error::NotADivisor { d, modulus });
    }
    Ok(())
}

/// Sum of mu(d') * 2^(d/d') over the divisors d' of d passing the filter.
fn mobius_pow_sum(nt: &mut NumberTheoryCache, d: u64, keep: impl Fn(u64) -> bool) -> BigInt {
    let mut acc = BigInt::zero();
    for dp in nt.divisors(d) {
        if !keep(dp) {
            continue;
        }
        match nt.mobius(dp) {
            0 => {}
            1 => acc += BigInt::one() << (d / dp) as usize,
            _ => acc -= BigInt::one() << (d / dp) as usize,
        }
    }
    acc
}

/// Sum of phi(d) * 2^(m/d) over the divisors d of m passing the filter.
fn phi_pow_sum(nt: &mut NumberTheoryCache, m: u64, keep: impl Fn(u64) -> bool) -> BigInt {
    let mut acc = BigInt::zero();
    for d in nt.divisors(m) {
        if !keep(d) {
            continue;
        }
        acc += BigInt::from(nt.phi(d)) << (m / d) as usize;
    }
    acc
}

fn exact_div(num: BigInt, den: u64, n: usize, d: u64) -> Result<BigUint> {
    let (q, r) = num.div_rem(&BigInt::from(den));
    if !r.is_zero() || q.is_negative() {
        return Err(Error::NonIntegralCount { n, d });
    }
    Ok(q.to_biguint().expect("non-negative"))
}

/// Number of cycles of length d in the order-n pure summing register.
pub fn psr_count(n: usize, d: u64) -> Result<BigUint> {
    check_census_args(n, d)?;
    let mut nt = NumberTheoryCache::new();
    let ratio = (n as u64 + 1) / d;
    if n % 2 == 0 || ratio % 2 == 1 {
        let all = mobius_pow_sum(&mut nt, d, |_| true);
        let even = mobius_pow_sum(&mut nt, d, |dp| dp % 2 == 0);
        exact_div(all + even, 2 * d, n, d)
    } else {
        let all = mobius_pow_sum(&mut nt, d, |_| true);
        exact_div(all, d, n, d)
    }
}

/// Number of cycles of length d in the order-n complemented summing register.
pub fn csr_count(n: usize, d: u64) -> Result<BigUint> {
    check_census_args(n, d)?;
    let mut nt = NumberTheoryCache::new();
    if n % 2 == 0 {
        let all = mobius_pow_sum(&mut nt, d, |_| true);
        exact_div(all, 2 * d, n, d)
    } else if ((n as u64 + 1) / d) % 2 == 0 {
        Ok(BigUint::zero())
    } else {
        let odd = mobius_pow_sum(&mut nt, d, |dp| dp % 2 == 1);
        exact_div(odd, 2 * d, n, d)
    }
}

/// Total cycle counts (pure, complemented) of the order-n registers.
pub fn register_totals(n: usize) -> Result<(BigUint, BigUint)> {
    if n < MIN_ORDER {
        return Err(Error::OrderTooSmall { n, min: MIN_ORDER });
    }
    let m = n as u64 + 1;
    let mut nt = NumberTheoryCache::new();
    let all = phi_pow_sum(&mut nt, m, |_| true);
    let even = phi_pow_sum(&mut nt, m, |d| d % 2 == 0);
    let odd = phi_pow_sum(&mut nt, m, |d| d % 2 == 1);
    let pure = exact_div(all + even, 2 * m, n, m)?;
    let complemented = exact_div(odd, 2 * m, n, m)?;
    Ok((pure, complemented))
}

/// How a census was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusSource {
    Formula,
    Enumeration,
}

/// Cycle counts of one register, keyed by cycle length.
///
/// Zero counts are omitted, so iteration yields exactly the lengths that
/// occur, in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusTable {
    pub kind: RegisterKind,
    pub n: usize,
    pub source: CensusSource,
    pub entries: BTreeMap<u64, BigUint>,
}

impl CensusTable {
    pub fn total_cycles(&self) -> BigUint {
        self.entries.values().sum()
    }

    pub fn total_states(&self) -> BigUint {
        self.entries.iter().map(|(d, c)| c * BigUint::from(*d)).sum()
    }

    /// Checks mass conservation and the total against the closed form.
    pub fn verify_invariants(&self) -> Result<()> {
        if self.total_states() != BigUint::one() << self.n {
            return Err(Error::Internal("census does not cover the state space"));
        }
        let (pure, complemented) = register_totals(self.n)?;
        let expected = match self.kind {
            RegisterKind::Psr => pure,
            RegisterKind::Csr => complemented,
            RegisterKind::General => return Err(Error::UnsupportedRegister),
        };
        if self.total_cycles() != expected {
            return Err(Error::Internal("census total disagrees with the closed form"));
        }
        Ok(())
    }
}

/// Census of the order-n register of the given kind.
///
/// The formula source works for any n; enumeration is bounded by the
/// decomposition cap.
pub fn census(kind: RegisterKind, n: usize, source: CensusSource) -> Result<CensusTable> {
    let mut entries = BTreeMap::new();
    match (kind, source) {
        (RegisterKind::General, _) => return Err(Error::UnsupportedRegister),
        (_, CensusSource::Formula) => {
            if n < MIN_ORDER {
                return Err(Error::OrderTooSmall { n, min: MIN_ORDER });
            }
            let mut nt = NumberTheoryCache::new();
            for d in nt.divisors(n as u64 + 1) {
                let count = match kind {
                    RegisterKind::Psr => psr_count(n, d)?,
                    RegisterKind::Csr => csr_count(n, d)?,
                    RegisterKind::General => unreachable!(),
                };
                if !count.is_zero() {
                    entries.insert(d, count);
                }
            }
        }
        (_, CensusSource::Enumeration) => {
            let f = match kind {
                RegisterKind::Psr => FeedbackSpec::psr(n)?,
                RegisterKind::Csr => FeedbackSpec::csr(n)?,
                RegisterKind::General => unreachable!(),
            };
            for c in decompose(&f)? {
                *entries.entry(c.len() as u64).or_insert_with(BigUint::zero) += 1u32;
            }
        }
    }
    Ok(CensusTable { kind, n, source, entries })
}

/// Cycle counts of the complemented summing register grouped by the constant
/// weight of the extended representation (window plus feedback bit).
pub fn weight_census(n: usize) -> Result<BTreeMap<u64, u64>> {
    let f = FeedbackSpec::csr(n)?;
    let mut out: BTreeMap<u64, u64> = BTreeMap::new();
    for c in decompose(&f)? {
        let s = c.state_at(0);
        let w = u64::from(s.weight()) + u64::from(f.eval(&s)?);
        *out.entry(w).or_insert(0) += 1;
    }
    Ok(out)
}
