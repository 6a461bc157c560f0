//! Merging equal-weight cycles of the complemented summing register.

use super::{extended_rep, extended_weight, is_run_cycle, longest_cyclic_ones_run, preferred_state};
use crate::error::{Error, Result};
use crate::fsr::{decompose, join_cycles, CycleRep, FeedbackSpec, PairKind, RegisterKind, State};

/// One extended-weight class of the complemented summing register merged
/// into a single cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MainCycle {
    class: usize,
    weight: u32,
    cycle: CycleRep,
    joins: Vec<(State, State)>,
}

impl MainCycle {
    /// Class index k; the class holds the cycles of extended weight 2k+1.
    pub fn class(&self) -> usize {
        self.class
    }

    /// Extended weight 2k+1 shared by the merged cycles.
    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn cycle(&self) -> &CycleRep {
        &self.cycle
    }

    /// Companion pairs (preferred state, its companion) in join order.
    pub fn joins(&self) -> &[(State, State)] {
        &self.joins
    }

    /// Join pairs as decimal state labels.
    pub fn join_labels(&self) -> Vec<(u64, u64)> {
        self.joins.iter().map(|(p, q)| (p.decimal_label(), q.decimal_label())).collect()
    }
}

/// Merges every cycle of extended weight 2k+1 into one cycle.
///
/// The class's unique run cycle seeds the merge. Each remaining cycle is
/// absorbed at its preferred state P by swapping successors with the
/// companion pair (P, P'). Cycles are absorbed in descending order of
/// (extended run length t, longest cyclic ones-run of P, value of P), which
/// guarantees the companion lands on the partly built main cycle.
pub fn build_main_cycle(f: &FeedbackSpec, k: usize) -> Result<MainCycle> {
    if f.kind() != RegisterKind::Csr {
        return Err(Error::NotComplementedParity);
    }
    let n = f.order();
    let max = n / 2;
    if k > max {
        return Err(Error::WeightClassOutOfRange { k, max });
    }
    let target = 2 * k as u32 + 1;
    let mut run_cycle = None;
    let mut satellites = Vec::new();
    for c in decompose(f)? {
        if extended_weight(f, &c)? != target {
            continue;
        }
        if is_run_cycle(&extended_rep(f, &c.state_at(0))?) {
            if run_cycle.replace(c).is_some() {
                return Err(Error::Internal("weight class with two run cycles"));
            }
        } else {
            let p = preferred_state(f, &c)?;
            let window_run = longest_cyclic_ones_run(p.state.value(), n);
            satellites.push((p.t, window_run, p.state.value(), p.state, c));
        }
    }
    let mut main = run_cycle.ok_or(Error::Internal("weight class without a run cycle"))?;
    satellites.sort_by(|a, b| (b.0, b.1, b.2).cmp(&(a.0, a.1, a.2)));
    let mut joins = Vec::with_capacity(satellites.len());
    for (_, _, _, p, c) in satellites {
        let partner = p.companion();
        main = join_cycles(f, &main, &c, &partner, PairKind::Companion)?;
        joins.push((p, partner));
    }
    Ok(MainCycle { class: k, weight: target, cycle: main, joins })
}
