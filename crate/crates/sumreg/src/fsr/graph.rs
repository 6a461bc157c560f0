//! Adjacency between cycles through conjugate and companion pairs.

use crate::error::Result;
use crate::fsr::cycle::{decompose, CycleRep};
use crate::fsr::feedback::FeedbackSpec;
use std::collections::{BTreeMap, BTreeSet};

/// Undirected graph on the cycles of a feedback spec.
///
/// Two cycles are adjacent when some state on one has its conjugate or
/// companion on the other. Each edge carries the weights of the n-1 bits the
/// pair agrees on (the suffix for a conjugate pair, the prefix for a
/// companion pair).
#[derive(Clone, Debug)]
pub struct AdjacencyGraph {
    n: usize,
    cycles: Vec<CycleRep>,
    edges: BTreeMap<(usize, usize), BTreeSet<u32>>,
}

impl AdjacencyGraph {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn cycles(&self) -> &[CycleRep] {
        &self.cycles
    }

    pub fn vertex_count(&self) -> usize {
        self.cycles.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as (cycle index, cycle index, shared-part weights).
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &BTreeSet<u32>)> {
        self.edges.iter().map(|(&(i, j), w)| (i, j, w))
    }

    pub fn is_connected(&self) -> bool {
        let m = self.cycles.len();
        if m <= 1 {
            return true;
        }
        let mut adj = vec![Vec::new(); m];
        for &(i, j) in self.edges.keys() {
            adj[i].push(j);
            adj[j].push(i);
        }
        let mut seen = vec![false; m];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        count == m
    }
}

/// Builds the cycle adjacency graph of f.
pub fn adjacency_graph(f: &FeedbackSpec) -> Result<AdjacencyGraph> {
    let n = f.order();
    let cycles = decompose(f)?;
    let mut owner = vec![0u32; 1 << n];
    for (idx, c) in cycles.iter().enumerate() {
        for s in c.states() {
            owner[s.value() as usize] = idx as u32;
        }
    }
    let mut edges: BTreeMap<(usize, usize), BTreeSet<u32>> = BTreeMap::new();
    let msb = 1u32 << (n - 1);
    for v in 0..(1u32 << n) {
        let i = owner[v as usize] as usize;
        // Conjugate partner: shared suffix is the last n-1 bits.
        let j = owner[(v ^ msb) as usize] as usize;
        if i != j {
            let key = (i.min(j), i.max(j));
            edges.entry(key).or_default().insert((v & (msb - 1)).count_ones());
        }
        // Companion partner: shared prefix is the first n-1 bits.
        let j = owner[(v ^ 1) as usize] as usize;
        if i != j {
            let key = (i.min(j), i.max(j));
            edges.entry(key).or_default().insert((v >> 1).count_ones());
        }
    }
    Ok(AdjacencyGraph { n, cycles, edges })
}
